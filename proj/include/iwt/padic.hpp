#pragma once

#include <cstdint>
#include <string>

#include "iwt/errors.hpp"
#include "iwt/ext_rational.hpp"

namespace iwt {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

bool is_prime(u64 n);
// p^e; throws OutOfRange if the result does not fit below 2^63.
u64 ipow(u64 p, int e);

// Arithmetic context for Z/p^M. All residues handled by the library are
// reduced into [0, p^M) and p^M < 2^63.
class Zp {
public:
    Zp() = default;
    Zp(u64 p, int M);

    u64 p() const { return p_; }
    int precision() const { return M_; }
    u64 modulus() const { return mod_; }

    u64 reduce(i64 v) const;
    u64 reduce_big(const BigInt& v) const;
    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= mod_ ? s - mod_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + mod_ - b; }
    u64 neg(u64 a) const { return a == 0 ? 0 : mod_ - a; }
    u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % mod_); }
    u64 pow(u64 a, u64 e) const;
    // Inverse of a unit; throws NotAUnit.
    u64 inv(u64 a) const;
    // p-adic valuation of a residue; returns M for zero.
    int val(u64 a) const;
    // Signed representative in (-p^M/2, p^M/2].
    i64 centered(u64 a) const;
    // Converts an exact rational with p-unit denominator; throws
    // NonIntegralDenominator otherwise.
    u64 from_rational(const Rational& q) const;

    friend bool operator==(const Zp& a, const Zp& b) { return a.p_ == b.p_ && a.M_ == b.M_; }

private:
    u64 p_ = 2;
    int M_ = 1;
    u64 mod_ = 2;
};

// An element of Z_p known modulo p^M.
class PadicInt {
public:
    PadicInt() = default;
    PadicInt(u64 p, int M, i64 value) : ctx_(p, M), r_(ctx_.reduce(value)) {}
    PadicInt(const Zp& ctx, i64 value) : ctx_(ctx), r_(ctx.reduce(value)) {}
    static PadicInt from_residue(const Zp& ctx, u64 residue);
    static PadicInt from_rational(const Zp& ctx, const Rational& q);

    u64 p() const { return ctx_.p(); }
    int precision() const { return ctx_.precision(); }
    u64 residue() const { return r_; }
    const Zp& ctx() const { return ctx_; }

    bool is_zero() const { return r_ == 0; }
    bool is_unit() const { return r_ % ctx_.p() != 0; }
    // Finite valuation, or ">= M" for a zero residue.
    ExtRational valuation() const;
    int valuation_int() const { return ctx_.val(r_); }
    i64 centered() const { return ctx_.centered(r_); }

    PadicInt inverse() const;
    PadicInt pow(u64 e) const { return from_residue(ctx_, ctx_.pow(r_, e)); }
    // Same residue read at a lower precision.
    PadicInt reduced_to(int M) const;

    friend PadicInt operator+(const PadicInt& a, const PadicInt& b);
    friend PadicInt operator-(const PadicInt& a, const PadicInt& b);
    friend PadicInt operator*(const PadicInt& a, const PadicInt& b);
    PadicInt operator-() const { return from_residue(ctx_, ctx_.neg(r_)); }
    friend bool operator==(const PadicInt& a, const PadicInt& b) {
        return a.ctx_ == b.ctx_ && a.r_ == b.r_;
    }

    std::string str() const { return std::to_string(r_); }

private:
    Zp ctx_;
    u64 r_ = 0;
};

// Teichmuller lift of a mod p^M; for p = 2 the sign lift on (Z/4)^x.
PadicInt teichmuller(i64 a, u64 p, int M);

// log_gamma(a) for gamma = 1 + 2p at level N (N = n + 1 for odd p, n + 2 for
// p = 2): the t in [0, p^n) with gamma^t = a / omega(a) mod p^N.
u64 log_gamma(i64 a, u64 p, int N);

// Offset between the level exponent N and the tower level n.
inline int level_offset(u64 p) { return p == 2 ? 2 : 1; }

}  // namespace iwt
