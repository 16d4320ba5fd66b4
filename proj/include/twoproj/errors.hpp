#pragma once
//
// Exception taxonomy shared by all modules. Every failure raised by this
// library derives from twoproj::Error, which itself is a std::runtime_error.
//

#include <stdexcept>

namespace twoproj {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// construction / validation
struct DimensionMismatch : Error { using Error::Error; };
struct NotSymmetric : Error { using Error::Error; };
struct NotProjection : Error { using Error::Error; };
struct NotEffect : Error { using Error::Error; };
struct NotSymmetryElement : Error { using Error::Error; };

// numerical kernel
struct NonConvergence : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };

// decomposition preconditions
struct NotGeneric : Error { using Error::Error; };
struct RankMismatch : Error { using Error::Error; };
struct EquivalenceViolation : Error { using Error::Error; };
struct BadGenerator : Error { using Error::Error; };
struct NotInCommutant : Error { using Error::Error; };

// instance generation and file ingestion
struct GenerationFailure : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace twoproj
