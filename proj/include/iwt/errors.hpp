#pragma once

#include <stdexcept>
#include <string>

namespace iwt {

// Base of every error raised by the library. kind() is a stable name used in
// CLI error reports.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define IWT_DEFINE_ERROR(Name, Base)                                      \
    class Name : public Base {                                            \
    public:                                                               \
        using Base::Base;                                                 \
        const char* kind() const noexcept override { return #Name; }      \
    };

IWT_DEFINE_ERROR(MixedPrime, Error)
IWT_DEFINE_ERROR(NotAUnit, Error)
IWT_DEFINE_ERROR(NotCoprime, Error)
IWT_DEFINE_ERROR(PrecisionExhausted, Error)
IWT_DEFINE_ERROR(ZeroInput, PrecisionExhausted)
IWT_DEFINE_ERROR(LevelMismatch, Error)
IWT_DEFINE_ERROR(OutOfRange, Error)
IWT_DEFINE_ERROR(RingMismatch, Error)
IWT_DEFINE_ERROR(InvalidK, Error)
IWT_DEFINE_ERROR(InvalidParams, Error)
IWT_DEFINE_ERROR(SchemaError, Error)
IWT_DEFINE_ERROR(MissingSymbol, Error)
IWT_DEFINE_ERROR(NonIntegralDenominator, Error)
IWT_DEFINE_ERROR(Unstable, Error)
IWT_DEFINE_ERROR(SporadicCase, Error)
IWT_DEFINE_ERROR(TieCase, Error)
IWT_DEFINE_ERROR(ExcludedCase, Error)

#undef IWT_DEFINE_ERROR

// Raised by exact division when the remainder is nonzero modulo p^M.
// index is the cyclotomic index i of the failing divisor (the peel index
// when raised from decompose), or -1 when not applicable.
class NotDivisible : public Error {
public:
    NotDivisible(const std::string& what, int index) : Error(what), index_(index) {}
    const char* kind() const noexcept override { return "NotDivisible"; }
    int index() const noexcept { return index_; }

private:
    int index_;
};

}  // namespace iwt
