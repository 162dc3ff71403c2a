#pragma once

#include <stdexcept>
#include <string>

namespace heunlab {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : Error {
    using Error::Error;
};
struct PoleError : Error {
    using Error::Error;
};
struct NonConvergence : Error {
    using Error::Error;
};
struct DivergentMoment : Error {
    using Error::Error;
};
struct PrecisionExhausted : Error {
    using Error::Error;
};
struct SingularConfiguration : Error {
    using Error::Error;
};
struct RegimeError : Error {
    using Error::Error;
};
struct ResonantExponent : Error {
    using Error::Error;
};
struct SingularPoint : Error {
    using Error::Error;
};
struct WrongRoot : Error {
    using Error::Error;
};
struct NotBracketed : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};
struct SingularityApproached : Error {
    using Error::Error;
};
struct ToleranceFailure : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace heunlab
