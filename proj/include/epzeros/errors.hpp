#pragma once

#include <stdexcept>
#include <string>

namespace epz {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPositiveDefinite : Error { using Error::Error; };
struct InvalidDiscriminant : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct PoleError : Error { using Error::Error; };
struct BranchTrackingFailure : Error { using Error::Error; };
struct CutoffExceeded : Error { using Error::Error; };
struct DegenerateConfig : Error { using Error::Error; };
struct EstimatorDisagreement : Error { using Error::Error; };
struct BoundaryZero : Error { using Error::Error; };
struct NonIntegralWinding : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct TooManySkips : Error { using Error::Error; };
struct NegativeDensity : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace epz
