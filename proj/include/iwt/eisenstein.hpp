#pragma once

#include <memory>
#include <vector>

#include "iwt/lambda.hpp"

namespace iwt {

// The ring Z_p[zeta_{p^j}] = Z_p[pi]/(E(pi)), E(X) = Phi_{p^j}(1+X), at
// precision M. Elements are stored in the basis pi^0..pi^{d-1},
// d = p^{j-1}(p-1).
class EisensteinRing : public std::enable_shared_from_this<EisensteinRing> {
public:
    static std::shared_ptr<const EisensteinRing> make(const Zp& ctx, int j);

    const Zp& ctx() const { return ctx_; }
    u64 p() const { return ctx_.p(); }
    int j() const { return j_; }
    std::size_t degree() const { return d_; }
    u64 root_order() const { return order_; }  // p^j
    // Coefficients e_0..e_{d-1} of E (leading coefficient 1 omitted).
    const std::vector<u64>& eisenstein_poly() const { return e_; }

    EisensteinRing(const Zp& ctx, int j);  // use make()

private:
    Zp ctx_;
    int j_;
    std::size_t d_;
    u64 order_;
    std::vector<u64> e_;
};

using RingPtr = std::shared_ptr<const EisensteinRing>;

class EisensteinElement {
public:
    EisensteinElement() = default;
    explicit EisensteinElement(RingPtr ring);  // zero

    static EisensteinElement from_int(RingPtr ring, i64 v);
    static EisensteinElement from_padic(RingPtr ring, const PadicInt& v);
    static EisensteinElement from_pi_coeffs(RingPtr ring, const std::vector<u64>& c);
    static EisensteinElement pi(RingPtr ring);
    static EisensteinElement zeta(RingPtr ring);

    const RingPtr& ring() const { return ring_; }
    const std::vector<u64>& coeffs() const { return c_; }
    bool is_zero() const;

    // Exact valuation in (1/d)Z, or ">= M" when every coefficient vanishes.
    ExtRational valuation() const;
    // As valuation(), but throws PrecisionExhausted instead of a lower bound.
    Rational valuation_exact() const;

    EisensteinElement operator+(const EisensteinElement& o) const;
    EisensteinElement operator-(const EisensteinElement& o) const;
    EisensteinElement operator-() const;
    EisensteinElement operator*(const EisensteinElement& o) const;
    EisensteinElement scaled(u64 residue) const;
    EisensteinElement pow(u64 e) const;

    friend bool operator==(const EisensteinElement& a, const EisensteinElement& b);

private:
    void check(const EisensteinElement& o) const;
    RingPtr ring_;
    std::vector<u64> c_;
};

// Evaluates a polynomial given in powers of X = 1+T at X = zeta_{p^j}.
EisensteinElement eval_x_poly_at_zeta(const RingPtr& ring, const std::vector<u64>& g);
// Ring homomorphism Lambda_n -> Z_p[zeta_{p^j}], T -> zeta - 1; needs j <= n.
EisensteinElement eval_lambda_at_zeta(const LambdaElement& x, const RingPtr& ring);
// Phi_{p^i}(zeta_{p^j}) for any i >= 1.
EisensteinElement phi_at_zeta(const RingPtr& ring, int i);
// Image of x under Z_p[zeta_{p^j}] -> Z_p[zeta_{p^J}], zeta_{p^j} -> zeta_{p^J}^{p^{J-j}}.
EisensteinElement embed(const EisensteinElement& x, const RingPtr& target);

// Multiplicity of the root zeta^c of a polynomial in X (coefficients in
// Z_p, given in powers of X), by repeated synthetic division over the ring.
// For ring == nullptr the root is X = 1 over Z_p.
int root_multiplicity(const Zp& ctx, const std::vector<u64>& g, const RingPtr& ring, u64 c);

// 2x2 matrix over the Eisenstein ring with structural-zero tracking, so
// entries that vanish identically report valuation infinity.
struct EisensteinMatrix {
    EisensteinElement e[4];
    bool zero[4] = {false, false, false, false};
};

EisensteinMatrix h_matrix(const EisensteinElement& a, int m, i64 eps = 1);
// Exact valuations of H_a^m = C_1(a)...C_m(a) at T = zeta_{p^j} - 1, where
// j is the level of a's ring.
ValMatrix h_matrix_valuations(const EisensteinElement& a, int m, i64 eps = 1);
// Per-factor valuation matrices multiplied tropically (a lower bound).
ValMatrix h_matrix_tropical_bound(const EisensteinElement& a, int m, i64 eps = 1);

// Smallest k >= 1 with v >= p^{-k}/2; throws InvalidK for v = 0 or infinity.
int minimal_k(u64 p, const ExtRational& v);
// v2 = ord(a^2 - eps * Phi_{p^2}(zeta_{p^{k+2}})), computed in Z_p[zeta_{p^{k+2}}].
ExtRational v2_invariant(const EisensteinElement& a, int k, i64 eps = 1);
ExtRational v2_invariant(const PadicInt& a, int k, i64 eps = 1);
// v_m: upper-left entry of the valuation matrix of H_a^m(zeta_{p^{k+2}} - 1).
ExtRational vm_invariant(const EisensteinElement& a, int m, int k, i64 eps = 1);

}  // namespace iwt
