#include "iwt/eisenstein.hpp"

#include <algorithm>

namespace iwt {

EisensteinRing::EisensteinRing(const Zp& ctx, int j) : ctx_(ctx), j_(j) {
    if (j < 1) throw OutOfRange("Eisenstein ring needs j >= 1");
    const u64 s = ipow(ctx.p(), j - 1);
    order_ = s * ctx.p();
    d_ = static_cast<std::size_t>(s * (ctx.p() - 1));
    std::vector<u64> phi(d_ + 1, 0);
    for (u64 k = 0; k < ctx.p(); ++k) phi[k * s] = 1 % ctx.modulus();
    auto shifted = xpoly::taylor_shift(ctx, phi, false);
    e_.assign(shifted.begin(), shifted.begin() + static_cast<std::ptrdiff_t>(d_));
}

std::shared_ptr<const EisensteinRing> EisensteinRing::make(const Zp& ctx, int j) {
    return std::make_shared<const EisensteinRing>(ctx, j);
}

EisensteinElement::EisensteinElement(RingPtr ring) : ring_(std::move(ring)) { c_.assign(ring_->degree(), 0); }

EisensteinElement EisensteinElement::from_int(RingPtr ring, i64 v) {
    EisensteinElement x(ring);
    x.c_[0] = ring->ctx().reduce(v);
    return x;
}

EisensteinElement EisensteinElement::from_padic(RingPtr ring, const PadicInt& v) {
    if (v.p() != ring->p()) throw MixedPrime("embedding a p-adic integer over another prime");
    EisensteinElement x(ring);
    x.c_[0] = v.residue() % ring->ctx().modulus();
    return x;
}

EisensteinElement EisensteinElement::from_pi_coeffs(RingPtr ring, const std::vector<u64>& c) {
    // Reduce an arbitrary-length pi-polynomial: build by Horner in the ring.
    EisensteinElement x(ring);
    if (c.size() <= ring->degree()) {
        for (std::size_t i = 0; i < c.size(); ++i) x.c_[i] = c[i] % ring->ctx().modulus();
        return x;
    }
    EisensteinElement p = pi(ring);
    for (std::size_t i = c.size(); i-- > 0;) x = x * p + from_padic(ring, PadicInt::from_residue(ring->ctx(), c[i]));
    return x;
}

EisensteinElement EisensteinElement::pi(RingPtr ring) {
    EisensteinElement x(ring);
    if (ring->degree() == 1) {
        x.c_[0] = ring->ctx().neg(ring->eisenstein_poly()[0]);
    } else {
        x.c_[1] = 1;
    }
    return x;
}

EisensteinElement EisensteinElement::zeta(RingPtr ring) { return pi(ring) + from_int(ring, 1); }

bool EisensteinElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](u64 v) { return v == 0; });
}

ExtRational EisensteinElement::valuation() const {
    const Zp& c = ring_->ctx();
    const i64 d = static_cast<i64>(ring_->degree());
    i64 best = -1;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        i64 v = static_cast<i64>(c.val(c_[i])) * d + static_cast<i64>(i);
        if (best < 0 || v < best) best = v;
    }
    if (best < 0) return ExtRational::at_least(c.precision());
    return ExtRational(make_rational(best, d));
}

Rational EisensteinElement::valuation_exact() const {
    ExtRational v = valuation();
    if (!v.is_finite()) throw PrecisionExhausted("Eisenstein element vanishes at working precision");
    return v.value();
}

void EisensteinElement::check(const EisensteinElement& o) const {
    if (ring_.get() == o.ring_.get()) return;
    if (ring_->p() != o.ring_->p() || ring_->j() != o.ring_->j() || !(ring_->ctx() == o.ring_->ctx()))
        throw RingMismatch("Eisenstein elements from different rings");
}

EisensteinElement EisensteinElement::operator+(const EisensteinElement& o) const {
    check(o);
    EisensteinElement r(*this);
    const Zp& c = ring_->ctx();
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c.add(c_[i], o.c_[i]);
    return r;
}

EisensteinElement EisensteinElement::operator-(const EisensteinElement& o) const {
    check(o);
    EisensteinElement r(*this);
    const Zp& c = ring_->ctx();
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c.sub(c_[i], o.c_[i]);
    return r;
}

EisensteinElement EisensteinElement::operator-() const {
    EisensteinElement r(*this);
    for (auto& v : r.c_) v = ring_->ctx().neg(v);
    return r;
}

EisensteinElement EisensteinElement::operator*(const EisensteinElement& o) const {
    check(o);
    const Zp& c = ring_->ctx();
    const std::size_t d = ring_->degree();
    std::vector<u64> prod(2 * d - 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t k = 0; k < d; ++k) prod[i + k] = c.add(prod[i + k], c.mul(c_[i], o.c_[k]));
    }
    const auto& e = ring_->eisenstein_poly();
    for (std::size_t t = prod.size(); t-- > d;) {
        const u64 lead = prod[t];
        if (lead == 0) continue;
        for (std::size_t k = 0; k < d; ++k) prod[t - d + k] = c.sub(prod[t - d + k], c.mul(lead, e[k]));
        prod[t] = 0;
    }
    EisensteinElement r(ring_);
    std::copy(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(d), r.c_.begin());
    return r;
}

EisensteinElement EisensteinElement::scaled(u64 residue) const {
    EisensteinElement r(*this);
    for (auto& v : r.c_) v = ring_->ctx().mul(v, residue);
    return r;
}

EisensteinElement EisensteinElement::pow(u64 e) const {
    EisensteinElement r = from_int(ring_, 1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

bool operator==(const EisensteinElement& a, const EisensteinElement& b) {
    return a.ring_->j() == b.ring_->j() && a.ring_->ctx() == b.ring_->ctx() && a.c_ == b.c_;
}

EisensteinElement eval_x_poly_at_zeta(const RingPtr& ring, const std::vector<u64>& g) {
    const Zp& c = ring->ctx();
    const u64 order = ring->root_order();
    const std::size_t d = ring->degree();
    const u64 s = order / c.p();
    std::vector<u64> f(order, 0);
    for (std::size_t t = 0; t < g.size(); ++t) f[t % order] = c.add(f[t % order], g[t] % c.modulus());
    // X^t = -sum_{k<p-1} X^{t-d+ks} modulo Phi_{p^j}(X) for t >= d.
    for (std::size_t t = order; t-- > d;) {
        const u64 lead = f[t];
        if (lead == 0) continue;
        for (u64 k = 0; k + 1 < c.p(); ++k) {
            const std::size_t idx = t - d + static_cast<std::size_t>(k * s);
            f[idx] = c.sub(f[idx], lead);
        }
        f[t] = 0;
    }
    f.resize(d);
    return EisensteinElement::from_pi_coeffs(ring, xpoly::taylor_shift(c, f, false));
}

EisensteinElement eval_lambda_at_zeta(const LambdaElement& x, const RingPtr& ring) {
    if (ring->j() > x.level()) throw OutOfRange("eval_lambda_at_zeta: need j <= n");
    if (!(ring->ctx() == x.ctx())) throw RingMismatch("evaluation ring has a different (p, M)");
    return eval_x_poly_at_zeta(ring, x.x_coeffs());
}

EisensteinElement phi_at_zeta(const RingPtr& ring, int i) {
    if (i < 1) throw OutOfRange("phi_at_zeta: need i >= 1");
    const Zp& c = ring->ctx();
    const u64 order = ring->root_order();
    u64 s = 1;
    for (int k = 0; k < i - 1 && s != 0; ++k) s = (s * c.p()) % order;
    std::vector<u64> g(order, 0);
    for (u64 k = 0; k < c.p(); ++k) {
        const std::size_t idx = static_cast<std::size_t>((k * s) % order);
        g[idx] = c.add(g[idx], 1);
    }
    return eval_x_poly_at_zeta(ring, g);
}

EisensteinElement embed(const EisensteinElement& x, const RingPtr& target) {
    const RingPtr& src = x.ring();
    if (src->p() != target->p() || !(src->ctx() == target->ctx()) || target->j() < src->j())
        throw RingMismatch("embed: target ring must contain the source ring");
    if (src->j() == target->j()) return EisensteinElement::from_pi_coeffs(target, x.coeffs());
    EisensteinElement img =
        EisensteinElement::zeta(target).pow(ipow(target->p(), target->j() - src->j())) -
        EisensteinElement::from_int(target, 1);
    EisensteinElement r(target);
    const auto& cf = x.coeffs();
    for (std::size_t i = cf.size(); i-- > 0;)
        r = r * img + EisensteinElement::from_padic(target, PadicInt::from_residue(target->ctx(), cf[i]));
    return r;
}

int root_multiplicity(const Zp& ctx, const std::vector<u64>& g, const RingPtr& ring, u64 c) {
    std::vector<u64> f(g);
    xpoly::trim(f);
    if (f.empty()) throw ZeroInput("root_multiplicity of zero");
    if (!ring) {
        int e = 0;
        for (;;) {
            try {
                f = xpoly::divide_by_x_minus_one(ctx, f);
            } catch (const NotDivisible&) {
                return e;
            }
            ++e;
        }
    }
    const EisensteinElement root = EisensteinElement::zeta(ring).pow(c);
    std::vector<EisensteinElement> poly;
    poly.reserve(f.size());
    for (u64 v : f) poly.push_back(EisensteinElement::from_padic(ring, PadicInt::from_residue(ctx, v)));
    int e = 0;
    while (poly.size() > 1) {
        std::vector<EisensteinElement> q(poly.size() - 1, EisensteinElement(ring));
        EisensteinElement carry(ring);
        for (std::size_t k = poly.size(); k-- > 1;) {
            carry = poly[k] + root * carry;
            q[k - 1] = carry;
        }
        if (!(poly[0] + root * carry).is_zero()) return e;
        ++e;
        poly = std::move(q);
    }
    return e;
}

namespace {

EisensteinMatrix mat_mul(const EisensteinMatrix& a, const EisensteinMatrix& b) {
    EisensteinMatrix r;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            bool first = true;
            bool all_zero = true;
            EisensteinElement acc;
            for (int j = 0; j < 2; ++j) {
                if (a.zero[2 * i + j] || b.zero[2 * j + k]) continue;
                EisensteinElement t = a.e[2 * i + j] * b.e[2 * j + k];
                acc = first ? t : acc + t;
                first = false;
                all_zero = false;
            }
            r.zero[2 * i + k] = all_zero;
            r.e[2 * i + k] = all_zero ? EisensteinElement(a.e[0].ring()) : acc;
        }
    return r;
}

EisensteinMatrix c_factor(const EisensteinElement& a, int i, i64 eps) {
    const RingPtr& ring = a.ring();
    EisensteinMatrix m;
    m.e[0] = a;
    m.zero[0] = a.is_zero();
    m.e[1] = EisensteinElement::from_int(ring, 1);
    m.e[2] = -phi_at_zeta(ring, i).scaled(ring->ctx().reduce(eps));
    m.zero[2] = (i == ring->j());
    m.e[3] = EisensteinElement(ring);
    m.zero[3] = true;
    return m;
}

ExtRational entry_val(const EisensteinMatrix& m, int idx) {
    if (m.zero[idx]) return ExtRational::infinity();
    ExtRational v = m.e[idx].valuation();
    if (!v.is_finite())
        throw PrecisionExhausted("matrix entry valuation cannot be separated from >= M");
    return v;
}

}  // namespace

EisensteinMatrix h_matrix(const EisensteinElement& a, int m, i64 eps) {
    if (m < 1) throw OutOfRange("h_matrix needs m >= 1");
    EisensteinMatrix r = c_factor(a, 1, eps);
    for (int i = 2; i <= m; ++i) r = mat_mul(r, c_factor(a, i, eps));
    return r;
}

ValMatrix h_matrix_valuations(const EisensteinElement& a, int m, i64 eps) {
    EisensteinMatrix h = h_matrix(a, m, eps);
    return ValMatrix(entry_val(h, 0), entry_val(h, 1), entry_val(h, 2), entry_val(h, 3));
}

ValMatrix h_matrix_tropical_bound(const EisensteinElement& a, int m, i64 eps) {
    ValMatrix acc = ValMatrix::identity();
    for (int i = 1; i <= m; ++i) {
        EisensteinMatrix f = c_factor(a, i, eps);
        acc = tropical_mul(acc, ValMatrix(entry_val(f, 0), entry_val(f, 1), entry_val(f, 2), entry_val(f, 3)));
    }
    return acc;
}

int minimal_k(u64 p, const ExtRational& v) {
    if (!v.is_finite() || v.value() <= 0) throw InvalidK("k is undefined for v = 0 or v = infinity");
    int k = 1;
    Rational bound = Rational(1) / Rational(2 * static_cast<long long>(p));
    while (v.value() < bound) {
        ++k;
        bound /= static_cast<long long>(p);
    }
    return k;
}

ExtRational v2_invariant(const EisensteinElement& a, int k, i64 eps) {
    const RingPtr& src = a.ring();
    ExtRational v = a.valuation();
    if (minimal_k(src->p(), v) != k) throw InvalidK("k is not minimal for v = " + v.str());
    RingPtr ring = EisensteinRing::make(src->ctx(), k + 2);
    EisensteinElement x = embed(a, ring);
    EisensteinElement d = x * x - phi_at_zeta(ring, 2).scaled(ring->ctx().reduce(eps));
    return d.valuation();
}

ExtRational v2_invariant(const PadicInt& a, int k, i64 eps) {
    RingPtr ring = EisensteinRing::make(a.ctx(), 1);
    return v2_invariant(EisensteinElement::from_padic(ring, a), k, eps);
}

ExtRational vm_invariant(const EisensteinElement& a, int m, int k, i64 eps) {
    RingPtr ring = EisensteinRing::make(a.ring()->ctx(), k + 2);
    return h_matrix_valuations(embed(a, ring), m, eps)(0, 0);
}

}  // namespace iwt
