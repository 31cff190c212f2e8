#pragma once

#include <stdexcept>
#include <string>

namespace rankin {

struct Error : std::runtime_error {
    explicit Error(const std::string& m) : std::runtime_error(m) {}
};

#define RANKIN_ERROR(NAME)                                        \
    struct NAME : Error {                                         \
        explicit NAME(const std::string& m = #NAME) : Error(m) {} \
    }

RANKIN_ERROR(PoleAtOne);
RANKIN_ERROR(TrivialCharacter);
RANKIN_ERROR(NotAbsolutelyConvergent);
RANKIN_ERROR(NotHolomorphic);
RANKIN_ERROR(NotFound);
RANKIN_ERROR(NetworkUnavailable);
RANKIN_ERROR(SchemaMismatch);
RANKIN_ERROR(PoleEncountered);
RANKIN_ERROR(UnsupportedContinuationPoint);
RANKIN_ERROR(OutsideConvergence);
RANKIN_ERROR(PoleWarning);
RANKIN_ERROR(BadPrime);
RANKIN_ERROR(InsufficientCoefficients);
RANKIN_ERROR(NotEnoughCoefficients);
RANKIN_ERROR(FunctionalEquationInvalid);
RANKIN_ERROR(CrossCheckFailed);
RANKIN_ERROR(InvarianceCheckFailed);
RANKIN_ERROR(TruncationDominates);
RANKIN_ERROR(AutomorphicFactorVanishes);
RANKIN_ERROR(DegenerateInput);

#undef RANKIN_ERROR

} // namespace rankin
