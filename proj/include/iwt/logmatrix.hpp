#pragma once

#include <array>
#include <utility>

#include "iwt/lambda.hpp"

namespace iwt {

// Coefficient data shared by the matrix families: a_p, eps_p in Z_p (eps_p
// a unit), and the level n of the ambient Lambda_n.
struct MatrixParams {
    Zp ctx;
    int n = 1;
    PadicInt ap;
    PadicInt eps;

    MatrixParams() = default;
    MatrixParams(const Zp& c, int level, i64 a, i64 e) : ctx(c), n(level), ap(c, a), eps(c, e) {}
    MatrixParams(const Zp& c, int level, const PadicInt& a, const PadicInt& e) : ctx(c), n(level), ap(a), eps(e) {}
};

enum class Family {
    CCC,          // [[a, 1], [-eps Phi_{p^i}, 0]]
    CCC_HAT,      // [[a, 1], [-eps PhiHat_{p^i}, 0]]
    CC_HAT,       // [[a, PhiHat_{p^i}], [-eps, 0]]
    C,            // [[a, 1], [-eps p, 0]]
    A,            // [[a, p], [-eps, 0]]
    A_TILDE,      // [[a, 1], [-eps, 0]]
    A_TILDE_INV,  // [[0, -1/eps], [1, a/eps]]
    PRODUCT,
};

const char* family_name(Family f);

struct LambdaMatrix {
    std::array<LambdaElement, 4> e;
    Family tag = Family::PRODUCT;

    const LambdaElement& operator()(int i, int j) const { return e[2 * i + j]; }
    LambdaElement& operator()(int i, int j) { return e[2 * i + j]; }
    friend bool operator==(const LambdaMatrix& a, const LambdaMatrix& b) { return a.e == b.e; }
};

using LambdaPair = std::pair<LambdaElement, LambdaElement>;

LambdaMatrix make_matrix(Family family, int i, const MatrixParams& params);
LambdaMatrix identity_matrix(const Zp& ctx, int n);
LambdaMatrix operator*(const LambdaMatrix& a, const LambdaMatrix& b);
LambdaPair operator*(const LambdaPair& v, const LambdaMatrix& m);
LambdaElement det(const LambdaMatrix& m);
// Entrywise substitute_inverse.
LambdaMatrix substitute_inverse(const LambdaMatrix& m);

// Row vector times C_i (hatted selects CCC_HAT), via cheap Phi multiplication.
LambdaPair mul_ccc(const LambdaPair& v, int i, const MatrixParams& params, bool hatted);

// C_1 ... C_n (hatted: CCC_HAT factors) in Lambda_{params.n}, left to right.
LambdaMatrix log_truncation(const MatrixParams& params, int n, bool hatted = false);

// det(C_1...C_n) * T == eps^n ((1+T)^{p^n} - 1), checked as a polynomial
// identity (computed one level up so that nothing wraps).
bool det_identity_holds(const MatrixParams& params, int n);

struct FunctionalEquationReport {
    bool exact = false;
    int mismatched_entries = 0;
    // Minimum valuation over the entrywise differences (">= M" when exact).
    ExtRational min_diff_valuation;
};

// Compares substitute_inverse(P) with P (odd p) or diag(1, (1+T)^{-1}) P
// (p = 2), where P is the product of the given family over i = 1..n.
FunctionalEquationReport functional_equation_check(const MatrixParams& params, int n,
                                                   Family family = Family::CCC_HAT);

// Truncated half-logarithms for a_p = 0: log^pm = num / p^den_exp.
struct HalfLogs {
    LambdaElement plus_num, minus_num;
    int plus_den_exp = 0, minus_den_exp = 0;
    LambdaElement u_plus, u_minus;  // hatted / un-hatted ratios
    LambdaElement w_plus, w_minus;
    int even_factors = 0, odd_factors = 0;
};

HalfLogs half_logs(const Zp& ctx, int n, const PadicInt& eps);
// log^pm * W^pm == log^pm o inversion, on numerators.
bool half_log_identity_holds(const HalfLogs& h);

// Entrywise Newton valuations at radius exponent s; identically zero
// entries map to infinity.
ValMatrix valuation_matrix(const LambdaMatrix& m, const Rational& s);

// a_p = 0 (odd p): the valuation form of C_1...C_n C^{-(N+1)} [[-1,-1],[beta,alpha]]
// agrees with that of (1/eps)[[log+, log+], [log- alpha, log- beta]], where
// ord(alpha) = ord(beta) = 1/2. Returns both matrices.
std::pair<ValMatrix, ValMatrix> half_log_valuation_form(const Zp& ctx, int n, const PadicInt& eps,
                                                        const Rational& s);

}  // namespace iwt
