#pragma once

#include <vector>

#include "iwt/padic.hpp"

namespace iwt {

struct IwasawaInvariants {
    Rational mu;
    int lambda = 0;
    bool stable = false;
};

// Element of Lambda_n = Z_p[T]/((1+T)^{p^n} - 1) at precision M.
//
// Storage is in the group-ring basis X^t (X = 1+T, 0 <= t < p^n), where the
// ring is Z/p^M[X]/(X^{p^n} - 1). The canonical representative is the same
// polynomial in either variable; t_coeffs() returns it in powers of T.
class LambdaElement {
public:
    LambdaElement() = default;
    LambdaElement(const Zp& ctx, int n);  // zero

    static LambdaElement constant(const Zp& ctx, int n, const PadicInt& c);
    static LambdaElement constant(const Zp& ctx, int n, i64 c);
    // Coefficients of T^i (length <= p^n; missing entries are zero).
    static LambdaElement from_t_coeffs(const Zp& ctx, int n, const std::vector<i64>& c);
    static LambdaElement from_t_residues(const Zp& ctx, int n, const std::vector<u64>& c);
    // Coefficients of X^t; indices are reduced modulo p^n.
    static LambdaElement from_x_residues(const Zp& ctx, int n, const std::vector<u64>& g);
    // (1+T)^e for any integer e.
    static LambdaElement x_power(const Zp& ctx, int n, i64 e);
    static LambdaElement t(const Zp& ctx, int n);

    const Zp& ctx() const { return ctx_; }
    u64 p() const { return ctx_.p(); }
    int precision() const { return ctx_.precision(); }
    int level() const { return n_; }
    std::size_t size() const { return g_.size(); }

    const std::vector<u64>& x_coeffs() const { return g_; }
    std::vector<u64> t_coeffs() const;
    PadicInt coeff(std::size_t i) const;  // coefficient of T^i

    bool is_zero() const;
    // Value at T = 0.
    PadicInt at_zero() const;
    // Minimum coefficient valuation (basis independent); ">= M" for zero.
    ExtRational content_valuation() const;

    LambdaElement operator+(const LambdaElement& o) const;
    LambdaElement operator-(const LambdaElement& o) const;
    LambdaElement operator-() const;
    LambdaElement operator*(const LambdaElement& o) const;
    LambdaElement operator*(const PadicInt& c) const;
    LambdaElement scaled(u64 residue) const;
    // Multiplication by (1+T)^e.
    LambdaElement shifted(i64 e) const;
    // Multiplication by Phi_{p^i}(1+T) (or its hatted completion).
    LambdaElement mul_phi(int i, bool hatted) const;

    friend bool operator==(const LambdaElement& a, const LambdaElement& b);

private:
    void check_compatible(const LambdaElement& o) const;

    Zp ctx_;
    int n_ = 0;
    std::vector<u64> g_;
};

// Exponent e = p^{i-1}(p-1)/2 of the hat twist (0 for p = 2, i = 1).
u64 hat_exponent(u64 p, int i);

LambdaElement project_pi(const LambdaElement& x);
LambdaElement lift_nu(const LambdaElement& x);
// Natural inclusion of the canonical representative into a higher level.
LambdaElement lift_canonical(const LambdaElement& x, int n);

LambdaElement cyclotomic_phi(const Zp& ctx, int i, int n, bool hatted);
LambdaElement exact_divide_by_phi(const LambdaElement& x, int i, bool hatted);
int vanishing_order(const LambdaElement& x, int m);
IwasawaInvariants iwasawa_invariants(const LambdaElement& x);
ExtRational newton_vr(const LambdaElement& x, const Rational& s);
LambdaElement substitute_inverse(const LambdaElement& x);

// Polynomial helpers in the X = 1+T variable over Z/p^M; coefficient
// vectors are low-degree first.
namespace xpoly {
// Taylor shift: coefficients of f(1+T) from those of f(X) (inverse = true
// maps back).
std::vector<u64> taylor_shift(const Zp& c, std::vector<u64> f, bool inverse = false);
// Quotient of f by Phi_{p^i}(X); throws NotDivisible(index i) on a nonzero
// remainder.
std::vector<u64> divide_by_phi(const Zp& c, const std::vector<u64>& f, int i);
// Quotient of f by (X - 1); throws NotDivisible(index 0) on a nonzero remainder.
std::vector<u64> divide_by_x_minus_one(const Zp& c, const std::vector<u64>& f);
void trim(std::vector<u64>& f);
}  // namespace xpoly

}  // namespace iwt
