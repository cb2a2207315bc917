#ifndef PPTBOUNDS_ERRORS_HPP
#define PPTBOUNDS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pptbounds {

// Base for every error this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string &what_arg) : std::runtime_error(what_arg) {}
};

struct NotHermitianError : Error {
    using Error::Error;
};
struct NoConvergenceError : Error {
    using Error::Error;
};
struct DimensionMismatchError : Error {
    using Error::Error;
};
struct ZeroStateError : Error {
    using Error::Error;
};
struct ZeroVectorError : Error {
    using Error::Error;
};
struct BadParameterError : Error {
    using Error::Error;
};
struct SolverFailedError : Error {
    using Error::Error;
};
struct InfeasibleInputError : Error {
    using Error::Error;
};
struct DimensionGuardError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    // `field` names the offending part of the input ("trace", "hermitian", ...).
    ValidationError(const std::string &field_arg, const std::string &what_arg)
        : Error(what_arg), field(field_arg) {}
    std::string field;
};

} // namespace pptbounds

#endif
