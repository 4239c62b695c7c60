#pragma once

#include <stdexcept>
#include <string>

namespace qes {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// poly
struct ZeroPolynomialError : Error {
    ZeroPolynomialError() : Error("operation undefined for the zero polynomial") {}
};
struct NoSignChangeError : Error {
    using Error::Error;
};

// euler_engine
struct IrrationalIndicialRootError : Error {
    using Error::Error;
};
struct ResonanceError : Error {
    int order;
    explicit ResonanceError(int k)
        : Error("series recursion hits F(lambda + k*step) = 0 at k = " + std::to_string(k)),
          order(k) {}
};
struct OrderTooLowError : Error {
    using Error::Error;
};

// qes models
struct UnsupportedModelError : Error {
    using Error::Error;
};
struct ConditionViolatedError : Error {
    using Error::Error;
};
struct OddSectorUnavailableError : Error {
    OddSectorUnavailableError()
        : Error("the odd (lambda = 1) sector of the barrier-free sextic has no "
                "terminating series; no closed-form eigenstates exist there") {}
};

// variational
struct MomentOverflowError : Error {
    using Error::Error;
};
struct EmptyWindowError : Error {
    using Error::Error;
};

// reference solver
struct ConvergenceFailureError : Error {
    using Error::Error;
};
struct GridMismatchError : Error {
    using Error::Error;
};

// cli
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace qes
