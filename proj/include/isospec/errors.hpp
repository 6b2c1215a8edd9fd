#pragma once

#include <stdexcept>
#include <string>

namespace isospec {

// Validation failures carry a stable kind tag so the CLI can map them to
// exit codes without string matching.
struct ValidationError : std::runtime_error {
    std::string kind;
    ValidationError(std::string k, const std::string& msg)
        : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

#define ISOSPEC_ERROR(NAME)                                                          \
    struct NAME : ValidationError {                                                  \
        explicit NAME(const std::string& msg) : ValidationError(#NAME, msg) {}       \
    }

ISOSPEC_ERROR(NotSkew);
ISOSPEC_ERROR(DependentGenerators);
ISOSPEC_ERROR(DimensionMismatch);
ISOSPEC_ERROR(DegenerateA);
ISOSPEC_ERROR(NotImaginary);
ISOSPEC_ERROR(NotPerpendicular);
ISOSPEC_ERROR(NotSymmetric);
ISOSPEC_ERROR(NotInvariant);
ISOSPEC_ERROR(NotAnticommutator);
ISOSPEC_ERROR(NotUnitRescalable);
ISOSPEC_ERROR(NotConjugate);
ISOSPEC_ERROR(NotAnticommutatorWithComplement);
ISOSPEC_ERROR(NotUnit);
ISOSPEC_ERROR(NotHomogeneous);
ISOSPEC_ERROR(SingularSubstitution);
ISOSPEC_ERROR(ZeroProjection);
ISOSPEC_ERROR(TruncationTooSmall);
ISOSPEC_ERROR(NotPositiveDefinite);
ISOSPEC_ERROR(TruncationMismatch);

#undef ISOSPEC_ERROR

}  // namespace isospec
