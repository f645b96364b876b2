#pragma once

#include <stdexcept>
#include <string>

namespace jacobi {

// Common base so callers can catch everything this library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

#define JACOBI_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what_arg)                             \
            : Error(std::string(#Name) + ": " + what_arg) {}                   \
    };

// arith
JACOBI_DEFINE_ERROR(ParseError)
JACOBI_DEFINE_ERROR(DomainError)
JACOBI_DEFINE_ERROR(NonSquarefree)
JACOBI_DEFINE_ERROR(NoSignChange)
// measure
JACOBI_DEFINE_ERROR(NeedsPositiveSupport)
JACOBI_DEFINE_ERROR(TooFewAtoms)
// stieltjes
JACOBI_DEFINE_ERROR(DegreeTooSmall)
JACOBI_DEFINE_ERROR(PrecisionExhausted)
// forward
JACOBI_DEFINE_ERROR(EmptyParameterWindow)
// canonical
JACOBI_DEFINE_ERROR(ParallelDirections)
JACOBI_DEFINE_ERROR(DegenerateRatio)
JACOBI_DEFINE_ERROR(NonSquarefreeA)
JACOBI_DEFINE_ERROR(NoSpectrum)
// focktype
JACOBI_DEFINE_ERROR(HypothesesUnsatisfied)

#undef JACOBI_DEFINE_ERROR

}  // namespace jacobi
