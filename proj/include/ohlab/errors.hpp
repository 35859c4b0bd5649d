#pragma once

#include <stdexcept>
#include <string>

namespace ohlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidGrid : Error { using Error::Error; };
struct NonZeroMean : Error { using Error::Error; };
struct InvalidProfile : Error { using Error::Error; };
struct InsufficientSampling : Error { using Error::Error; };
struct IncompatibleWindows : Error { using Error::Error; };
struct MissingData : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

// Numerical failure of a time integration; carries the time of failure.
struct BlowUp : Error {
    double t;
    BlowUp(double time, const std::string& msg) : Error(msg), t(time) {}
};

// Run refused by the spectral-tail resolution guard.
struct ResolutionInadequate : Error {
    double t;
    double tail_fraction;
    ResolutionInadequate(double time, double frac, const std::string& msg)
        : Error(msg), t(time), tail_fraction(frac) {}
};

}  // namespace ohlab
