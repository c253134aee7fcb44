#pragma once

#include <stdexcept>
#include <string>

namespace anosov {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotUnimodular : Error { using Error::Error; };
struct NotHyperbolic : Error { using Error::Error; };
struct AmbiguousLift : Error { using Error::Error; };

struct WindowTooSmall : Error { using Error::Error; };
struct DefectTooLarge : Error { using Error::Error; };

struct TooFar : Error { using Error::Error; };
struct EpsilonExceeded : Error { using Error::Error; };
struct BudgetInfeasible : Error { using Error::Error; };

struct NotInRectangle : Error { using Error::Error; };
struct ChartConflict : Error { using Error::Error; };

struct CoverageGap : Error { using Error::Error; };
struct DegenerateCell : Error { using Error::Error; };

struct EmptyCylinder : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct Reducible : Error { using Error::Error; };

}  // namespace anosov
