#ifndef BENT_ERRORS_HPP
#define BENT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bent {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameter : Error {
    using Error::Error;
};

struct NonHermitian : Error {
    using Error::Error;
};

struct EmptyInput : Error {
    using Error::Error;
};

struct ZeroTrace : Error {
    using Error::Error;
};

struct CutoffExceeded : Error {
    using Error::Error;
};

// Filter weights would leave the double range at the requested cutoff.
struct Overflow : Error {
    Overflow(const std::string& msg, int max_admissible)
        : Error(msg), max_admissible_n(max_admissible) {}
    int max_admissible_n;
};

struct DegenerateAngle : Error {
    using Error::Error;
};

struct InvalidScaling : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace bent

#endif
