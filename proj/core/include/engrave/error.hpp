#pragma once

#include <stdexcept>
#include <string>

namespace engrave {

// Bad input from the outside world: unreadable files, malformed landmark
// JSON, out-of-range parameters. The command line tool maps this to exit 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A post-condition the library itself should have guaranteed did not hold.
// The command line tool maps this to exit 3.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace engrave
