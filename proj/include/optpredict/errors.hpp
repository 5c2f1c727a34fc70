#pragma once

#include <stdexcept>

namespace optpredict {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };
struct ToleranceNotMet : Error { using Error::Error; };
struct RankDeficient : Error { using Error::Error; };
struct InvarianceViolated : Error { using Error::Error; };
struct SingularM : Error { using Error::Error; };
struct BlocksDiffer : Error { using Error::Error; };
struct HypothesisViolated : Error { using Error::Error; };
struct ShrinkNotAllowed : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace optpredict
