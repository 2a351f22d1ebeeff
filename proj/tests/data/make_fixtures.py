#!/usr/bin/env python3
"""Regenerates the synthetic portrait fixtures used by the test suites.

Outputs (next to this script):
  portrait.ppm                 colour portrait, 240x300
  portrait_landmarks.json      68 landmarks, roll from the eyes
  portrait_tilted.ppm          same portrait turned by 15 degrees
  portrait_tilted_landmarks.json
  portrait_depth.pgm           16-bit depth map (larger = nearer)
  gray16.png                   2x1 16-bit gray PNG {65535, 32896}
  rgba.png                     2x1 RGBA PNG (alpha must be dropped)
  palette.png                  2x1 palette PNG

Everything is analytic, so reruns are byte-identical.
"""
import json
import math
import pathlib

import numpy as np

HERE = pathlib.Path(__file__).resolve().parent
W, H = 240, 300
CX, CY = 120.0, 150.0  # face centre (eye line is at CY - 20)
A, B = 62.0, 88.0      # face half width / half height


def landmarks():
    pts = []
    eye_y = CY - 20.0
    # jaw 0-16: lower half ellipse from the left temple through the chin
    for i in range(17):
        t = math.pi * i / 16.0
        pts.append((CX - A * math.cos(t), eye_y + 10.0 + (B + 10.0) * math.sin(t) * 0.92))
    # brows 17-21 (image left) and 22-26
    for side in (-1, 1):
        for j in range(5):
            u = j / 4.0
            x = CX - 46.0 + 34.0 * u if side < 0 else CX + 12.0 + 34.0 * u
            y = eye_y - 16.0 - 5.0 * math.sin(math.pi * u)
            pts.append((x, y))
    # nose bridge 27-30
    for j in range(4):
        pts.append((CX, eye_y + 4.0 + 12.0 * j))
    # nose base 31-35
    for j in range(5):
        pts.append((CX - 12.0 + 6.0 * j, eye_y + 46.0 + (2.0 if j in (0, 4) else 4.0 if j == 2 else 3.0)))
    # eyes 36-41 and 42-47, hexagons around the eye centres
    for ex in (CX - 26.0, CX + 26.0):
        for j in range(6):
            t = math.pi * j / 3.0
            pts.append((ex - 11.0 * math.cos(t), eye_y - 4.0 * math.sin(t)))
    # mouth: outer 48-59, inner 60-67
    my = eye_y + 72.0
    for j in range(12):
        t = 2.0 * math.pi * j / 12.0
        pts.append((CX - 24.0 * math.cos(t), my - 9.0 * math.sin(t)))
    for j in range(8):
        t = 2.0 * math.pi * j / 8.0
        pts.append((CX - 16.0 * math.cos(t), my - 3.0 * math.sin(t)))
    assert len(pts) == 68
    return pts


def render():
    yy, xx = np.mgrid[0:H, 0:W].astype(np.float64)
    img = np.zeros((H, W, 3))
    # background: cool vertical gradient
    img[..., 0] = 60 + 80 * yy / H
    img[..., 1] = 90 + 60 * yy / H
    img[..., 2] = 150 + 60 * yy / H
    # shoulders
    sh = ((xx - CX) / 115.0) ** 2 + ((yy - (H + 40)) / 110.0) ** 2 < 1.0
    img[sh] = (70, 50, 90)
    # neck
    neck = (np.abs(xx - CX) < 28) & (yy > CY + 60) & (yy < H - 40)
    img[neck] = (200, 160, 135)
    # face: shaded ellipse, lit from the front
    r2 = ((xx - CX) / A) ** 2 + ((yy - CY) / (B + 8.0)) ** 2
    face = r2 < 1.0
    lum = np.sqrt(np.clip(1.0 - r2, 0.0, 1.0))
    for c, base in enumerate((225, 180, 150)):
        img[..., c] = np.where(face, base * (0.55 + 0.45 * lum), img[..., c])
    # hair cap
    hair = (((xx - CX) / (A + 8.0)) ** 2 + ((yy - (CY - 40.0)) / 70.0) ** 2 < 1.0) & (yy < CY - 52.0)
    img[hair] = (70, 45, 30)
    eye_y = CY - 20.0
    for ex in (CX - 26.0, CX + 26.0):
        eye = ((xx - ex) / 11.0) ** 2 + ((yy - eye_y) / 4.5) ** 2 < 1.0
        img[eye] = (245, 245, 240)
        iris = (xx - ex) ** 2 + (yy - eye_y) ** 2 < 3.5 ** 2
        img[iris] = (50, 90, 60)
        brow = (np.abs(xx - ex) < 16) & (np.abs(yy - (eye_y - 18.0)) < 2.0)
        img[brow] = (80, 55, 40)
    nose = (np.abs(xx - CX) < 3.0) & (yy > eye_y + 5) & (yy < eye_y + 44)
    img[nose] *= 0.85
    mouth = ((xx - CX) / 24.0) ** 2 + ((yy - (eye_y + 72.0)) / 6.0) ** 2 < 1.0
    img[mouth] = (170, 70, 75)
    return np.clip(np.round(img), 0, 255).astype(np.uint8)


def depth_map():
    yy, xx = np.mgrid[0:H, 0:W].astype(np.float64)
    r2 = ((xx - CX) / A) ** 2 + ((yy - CY) / (B + 8.0)) ** 2
    d = np.sqrt(np.clip(1.0 - r2, 0.0, 1.0))
    nose = np.exp(-(((xx - CX) / 6.0) ** 2 + ((yy - (CY + 5.0)) / 20.0) ** 2))
    d = np.clip(d + 0.15 * nose * (r2 < 1.0), 0.0, None)
    d = d / d.max()
    return np.round(d * 65535).astype(np.uint16)


def rotate_image(img, deg, centre):
    """Bilinear rotation of the content by +deg (x toward y), white fill."""
    a = math.radians(deg)
    c, s = math.cos(a), math.sin(a)
    yy, xx = np.mgrid[0:H, 0:W].astype(np.float64)
    dx, dy = xx - centre[0], yy - centre[1]
    sx = centre[0] + c * dx + s * dy
    sy = centre[1] - s * dx + c * dy
    inside = (sx >= 0) & (sy >= 0) & (sx <= W - 1) & (sy <= H - 1)
    sx = np.clip(sx, 0, W - 1)
    sy = np.clip(sy, 0, H - 1)
    x0 = np.floor(sx).astype(int)
    y0 = np.floor(sy).astype(int)
    x1 = np.minimum(x0 + 1, W - 1)
    y1 = np.minimum(y0 + 1, H - 1)
    fx = (sx - x0)[..., None]
    fy = (sy - y0)[..., None]
    f = img.astype(np.float64)
    top = (1 - fx) * f[y0, x0] + fx * f[y0, x1]
    bot = (1 - fx) * f[y1, x0] + fx * f[y1, x1]
    out = (1 - fy) * top + fy * bot
    out[~inside] = 255
    return np.clip(np.round(out), 0, 255).astype(np.uint8)


def rotate_points(pts, deg, centre):
    a = math.radians(deg)
    c, s = math.cos(a), math.sin(a)
    return [(centre[0] + c * (x - centre[0]) - s * (y - centre[1]),
             centre[1] + s * (x - centre[0]) + c * (y - centre[1])) for x, y in pts]


def write_ppm(path, img):
    with open(path, "wb") as f:
        f.write(b"P6\n%d %d\n255\n" % (img.shape[1], img.shape[0]))
        f.write(img.tobytes())


def write_pgm16(path, img):
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n65535\n" % (img.shape[1], img.shape[0]))
        f.write(img.astype(">u2").tobytes())


def write_landmarks(path, pts):
    doc = {"points": [[round(x, 3), round(y, 3)] for x, y in pts]}
    path.write_text(json.dumps(doc) + "\n")


def main():
    pts = landmarks()
    img = render()
    write_ppm(HERE / "portrait.ppm", img)
    write_landmarks(HERE / "portrait_landmarks.json", pts)

    centre = (CX, CY)
    write_ppm(HERE / "portrait_tilted.ppm", rotate_image(img, 15.0, centre))
    write_landmarks(HERE / "portrait_tilted_landmarks.json", rotate_points(pts, 15.0, centre))

    write_pgm16(HERE / "portrait_depth.pgm", depth_map())

    from PIL import Image
    Image.fromarray(np.array([[65535, 32896]], dtype=np.uint16)).save(HERE / "gray16.png")
    Image.fromarray(np.array([[[10, 20, 30, 0], [200, 100, 50, 255]]], dtype=np.uint8), "RGBA").save(HERE / "rgba.png")
    pal = Image.new("P", (2, 1))
    pal.putpalette([0, 0, 0, 255, 128, 7] + [0] * (256 * 3 - 6))
    pal.putpixel((0, 0), 1)
    pal.putpixel((1, 0), 0)
    pal.save(HERE / "palette.png")


if __name__ == "__main__":
    main()
