#include "iwt/lambda.hpp"

#include <algorithm>
#include <optional>

namespace iwt {

namespace xpoly {

void trim(std::vector<u64>& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

std::vector<u64> taylor_shift(const Zp& c, std::vector<u64> a, bool inverse) {
    const std::size_t n = a.size();
    if (n < 2) return a;
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;)
            a[j] = inverse ? c.sub(a[j], a[j + 1]) : c.add(a[j], a[j + 1]);
    return a;
}

namespace {

std::optional<std::vector<u64>> try_divide_by_phi(const Zp& c, std::vector<u64> f, int i) {
    trim(f);
    const u64 s = ipow(c.p(), i - 1);
    const u64 m = s * c.p();
    if (f.empty()) return std::vector<u64>{};
    // y = f * (X^s - 1), then divide y by X^m - 1.
    std::vector<u64> y(f.size() + s, 0);
    for (std::size_t t = 0; t < f.size(); ++t) {
        y[t + s] = c.add(y[t + s], f[t]);
        y[t] = c.sub(y[t], f[t]);
    }
    if (y.size() <= m) return std::nullopt;  // deg f < deg Phi and f != 0
    std::vector<u64> q(y.size() - m, 0);
    for (std::size_t t = y.size(); t-- > m;) {
        const u64 lead = y[t];
        if (lead == 0) continue;
        q[t - m] = lead;
        y[t - m] = c.add(y[t - m], lead);
        y[t] = 0;
    }
    for (std::size_t t = 0; t < m; ++t)
        if (y[t] != 0) return std::nullopt;
    return q;
}

std::optional<std::vector<u64>> try_divide_by_x_minus_one(const Zp& c, std::vector<u64> f) {
    trim(f);
    if (f.empty()) return std::vector<u64>{};
    std::vector<u64> q(f.size() - 1, 0);
    u64 carry = 0;
    for (std::size_t k = f.size(); k-- > 1;) {
        carry = c.add(f[k], carry);
        q[k - 1] = carry;
    }
    if (c.add(f[0], carry) != 0) return std::nullopt;
    return q;
}

}  // namespace

std::vector<u64> divide_by_phi(const Zp& c, const std::vector<u64>& f, int i) {
    auto q = try_divide_by_phi(c, f, i);
    if (!q) throw NotDivisible("remainder modulo Phi_{p^" + std::to_string(i) + "} is nonzero", i);
    return *q;
}

std::vector<u64> divide_by_x_minus_one(const Zp& c, const std::vector<u64>& f) {
    auto q = try_divide_by_x_minus_one(c, f);
    if (!q) throw NotDivisible("remainder modulo T is nonzero", 0);
    return *q;
}

}  // namespace xpoly

LambdaElement::LambdaElement(const Zp& ctx, int n) : ctx_(ctx), n_(n) {
    if (n < 0) throw LevelMismatch("negative level");
    g_.assign(ipow(ctx.p(), n), 0);
}

LambdaElement LambdaElement::constant(const Zp& ctx, int n, const PadicInt& c) {
    if (c.p() != ctx.p()) throw MixedPrime("constant over a different prime");
    LambdaElement x(ctx, n);
    x.g_[0] = c.residue() % ctx.modulus();
    return x;
}

LambdaElement LambdaElement::constant(const Zp& ctx, int n, i64 c) {
    LambdaElement x(ctx, n);
    x.g_[0] = ctx.reduce(c);
    return x;
}

LambdaElement LambdaElement::from_t_coeffs(const Zp& ctx, int n, const std::vector<i64>& c) {
    std::vector<u64> r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) r[i] = ctx.reduce(c[i]);
    return from_t_residues(ctx, n, r);
}

LambdaElement LambdaElement::from_t_residues(const Zp& ctx, int n, const std::vector<u64>& c) {
    LambdaElement x(ctx, n);
    std::vector<u64> f(c.begin(), c.end());
    for (auto& v : f) v %= ctx.modulus();
    // f(T) = f(X - 1); reduce modulo X^{p^n} - 1 afterwards.
    f = xpoly::taylor_shift(ctx, std::move(f), true);
    for (std::size_t t = 0; t < f.size(); ++t) {
        auto& slot = x.g_[t % x.g_.size()];
        slot = ctx.add(slot, f[t]);
    }
    return x;
}

LambdaElement LambdaElement::from_x_residues(const Zp& ctx, int n, const std::vector<u64>& g) {
    LambdaElement x(ctx, n);
    for (std::size_t t = 0; t < g.size(); ++t) {
        auto& slot = x.g_[t % x.g_.size()];
        slot = ctx.add(slot, g[t] % ctx.modulus());
    }
    return x;
}

LambdaElement LambdaElement::x_power(const Zp& ctx, int n, i64 e) {
    LambdaElement x(ctx, n);
    const i64 d = static_cast<i64>(x.g_.size());
    x.g_[static_cast<std::size_t>(((e % d) + d) % d)] = 1 % ctx.modulus();
    return x;
}

LambdaElement LambdaElement::t(const Zp& ctx, int n) { return from_t_coeffs(ctx, n, {0, 1}); }

std::vector<u64> LambdaElement::t_coeffs() const { return xpoly::taylor_shift(ctx_, g_, false); }

PadicInt LambdaElement::coeff(std::size_t i) const {
    auto t = t_coeffs();
    return PadicInt::from_residue(ctx_, i < t.size() ? t[i] : 0);
}

bool LambdaElement::is_zero() const {
    return std::all_of(g_.begin(), g_.end(), [](u64 v) { return v == 0; });
}

PadicInt LambdaElement::at_zero() const {
    u64 s = 0;
    for (u64 v : g_) s = ctx_.add(s, v);
    return PadicInt::from_residue(ctx_, s);
}

ExtRational LambdaElement::content_valuation() const {
    int best = ctx_.precision();
    for (u64 v : g_)
        if (v != 0) best = std::min(best, ctx_.val(v));
    if (best == ctx_.precision()) return ExtRational::at_least(best);
    return ExtRational(best);
}

void LambdaElement::check_compatible(const LambdaElement& o) const {
    if (ctx_.p() != o.ctx_.p()) throw MixedPrime("Lambda elements over different primes");
    if (n_ != o.n_) throw LevelMismatch("Lambda elements at levels " + std::to_string(n_) + " and " +
                                        std::to_string(o.n_));
    if (ctx_.precision() != o.ctx_.precision())
        throw PrecisionExhausted("Lambda elements at different precisions");
}

LambdaElement LambdaElement::operator+(const LambdaElement& o) const {
    check_compatible(o);
    LambdaElement r(*this);
    for (std::size_t t = 0; t < g_.size(); ++t) r.g_[t] = ctx_.add(g_[t], o.g_[t]);
    return r;
}

LambdaElement LambdaElement::operator-(const LambdaElement& o) const {
    check_compatible(o);
    LambdaElement r(*this);
    for (std::size_t t = 0; t < g_.size(); ++t) r.g_[t] = ctx_.sub(g_[t], o.g_[t]);
    return r;
}

LambdaElement LambdaElement::operator-() const {
    LambdaElement r(*this);
    for (auto& v : r.g_) v = ctx_.neg(v);
    return r;
}

LambdaElement LambdaElement::operator*(const LambdaElement& o) const {
    check_compatible(o);
    const std::size_t d = g_.size();
    LambdaElement r(ctx_, n_);
    const u64 mod = ctx_.modulus();
    // Cyclic convolution modulo X^d - 1.
    if (mod < (u64{1} << 32)) {
        std::vector<u128> acc(d, 0);
        for (std::size_t i = 0; i < d; ++i) {
            const u64 a = g_[i];
            if (a == 0) continue;
            const u64* b = o.g_.data();
            u128* lo = acc.data() + i;
            const std::size_t split = d - i;
            for (std::size_t j = 0; j < split; ++j) lo[j] += static_cast<u128>(a * b[j]);
            u128* hi = acc.data();
            for (std::size_t j = split; j < d; ++j) hi[j - split] += static_cast<u128>(a * b[j]);
        }
        for (std::size_t k = 0; k < d; ++k) r.g_[k] = static_cast<u64>(acc[k] % mod);
    } else {
        for (std::size_t i = 0; i < d; ++i) {
            const u64 a = g_[i];
            if (a == 0) continue;
            for (std::size_t j = 0; j < d; ++j) {
                std::size_t k = i + j;
                if (k >= d) k -= d;
                r.g_[k] = ctx_.add(r.g_[k], ctx_.mul(a, o.g_[j]));
            }
        }
    }
    return r;
}

LambdaElement LambdaElement::operator*(const PadicInt& c) const {
    if (c.p() != p()) throw MixedPrime("scalar over a different prime");
    return scaled(c.residue() % ctx_.modulus());
}

LambdaElement LambdaElement::scaled(u64 residue) const {
    LambdaElement r(*this);
    for (auto& v : r.g_) v = ctx_.mul(v, residue);
    return r;
}

LambdaElement LambdaElement::shifted(i64 e) const {
    const i64 d = static_cast<i64>(g_.size());
    const std::size_t s = static_cast<std::size_t>(((e % d) + d) % d);
    LambdaElement r(ctx_, n_);
    for (std::size_t t = 0; t < g_.size(); ++t) {
        std::size_t k = t + s;
        if (k >= g_.size()) k -= g_.size();
        r.g_[k] = g_[t];
    }
    return r;
}

u64 hat_exponent(u64 p, int i) {
    if (i < 1) throw OutOfRange("cyclotomic index must be >= 1");
    if (p == 2 && i == 1) return 0;
    return ipow(p, i - 1) * (p - 1) / 2;
}

LambdaElement LambdaElement::mul_phi(int i, bool hatted) const {
    if (i < 1) throw OutOfRange("cyclotomic index must be >= 1");
    const std::size_t d = g_.size();
    const u64 s = static_cast<u64>(ipow(p(), i - 1) % d);
    LambdaElement r(ctx_, n_);
    for (u64 k = 0; k < p(); ++k) {
        const std::size_t off = static_cast<std::size_t>((k * s) % d);
        for (std::size_t t = 0; t < d; ++t) {
            std::size_t idx = t + off;
            if (idx >= d) idx -= d;
            r.g_[idx] = ctx_.add(r.g_[idx], g_[t]);
        }
    }
    if (hatted) return r.shifted(-static_cast<i64>(hat_exponent(p(), i) % d));
    return r;
}

bool operator==(const LambdaElement& a, const LambdaElement& b) {
    return a.ctx_ == b.ctx_ && a.n_ == b.n_ && a.g_ == b.g_;
}

LambdaElement project_pi(const LambdaElement& x) {
    if (x.level() == 0) throw LevelMismatch("project_pi from level 0");
    const auto& g = x.x_coeffs();
    std::vector<u64> r(g.begin(), g.end());
    return LambdaElement::from_x_residues(x.ctx(), x.level() - 1, r);
}

LambdaElement lift_nu(const LambdaElement& x) {
    const int n = x.level() + 1;
    const auto& g = x.x_coeffs();
    const std::size_t d = ipow(x.p(), n);
    std::vector<u64> r(d);
    for (std::size_t t = 0; t < d; ++t) r[t] = g[t % g.size()];
    return LambdaElement::from_x_residues(x.ctx(), n, r);
}

LambdaElement lift_canonical(const LambdaElement& x, int n) {
    if (n < x.level()) throw LevelMismatch("lift_canonical to a lower level");
    return LambdaElement::from_x_residues(x.ctx(), n, x.x_coeffs());
}

LambdaElement cyclotomic_phi(const Zp& ctx, int i, int n, bool hatted) {
    if (i < 1 || i > n) throw OutOfRange("cyclotomic_phi: need 1 <= i <= n");
    return LambdaElement::constant(ctx, n, 1).mul_phi(i, hatted);
}

LambdaElement exact_divide_by_phi(const LambdaElement& x, int i, bool hatted) {
    if (i < 1 || i > x.level()) throw OutOfRange("exact_divide_by_phi: need 1 <= i <= n");
    auto q = xpoly::divide_by_phi(x.ctx(), x.x_coeffs(), i);
    LambdaElement r = LambdaElement::from_x_residues(x.ctx(), x.level(), q);
    if (hatted) return r.shifted(static_cast<i64>(hat_exponent(x.p(), i)));
    return r;
}

int vanishing_order(const LambdaElement& x, int m) {
    if (m < 0 || m > x.level()) throw OutOfRange("vanishing_order: need 0 <= m <= n");
    if (x.is_zero()) throw ZeroInput("vanishing_order of an element that is zero mod p^M");
    std::vector<u64> f = x.x_coeffs();
    int e = 0;
    for (;;) {
        try {
            f = (m == 0) ? xpoly::divide_by_x_minus_one(x.ctx(), f) : xpoly::divide_by_phi(x.ctx(), f, m);
        } catch (const NotDivisible&) {
            return e;
        }
        ++e;
    }
}

IwasawaInvariants iwasawa_invariants(const LambdaElement& x) {
    auto t = x.t_coeffs();
    const Zp& c = x.ctx();
    int best = c.precision();
    int idx = -1;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] == 0) continue;
        int v = c.val(t[i]);
        if (v < best) {
            best = v;
            idx = static_cast<int>(i);
        }
    }
    if (idx < 0) throw ZeroInput("iwasawa_invariants: all coefficients vanish mod p^M");
    return IwasawaInvariants{Rational(best), idx, false};
}

ExtRational newton_vr(const LambdaElement& x, const Rational& s) {
    if (s <= 0) throw InvalidParams("newton_vr needs s > 0");
    if (x.is_zero()) throw ZeroInput("newton_vr of zero");
    auto t = x.t_coeffs();
    const Zp& c = x.ctx();
    ExtRational best = ExtRational::infinity();
    for (std::size_t i = 0; i < t.size(); ++i) {
        Rational shift = s * static_cast<long long>(i);
        ExtRational term = t[i] == 0 ? ExtRational::at_least(Rational(c.precision()) + shift)
                                     : ExtRational(Rational(c.val(t[i])) + shift);
        best = min(best, term);
    }
    return best;
}

LambdaElement substitute_inverse(const LambdaElement& x) {
    const auto& g = x.x_coeffs();
    const std::size_t d = g.size();
    std::vector<u64> r(d);
    for (std::size_t t = 0; t < d; ++t) r[(d - t) % d] = g[t];
    return LambdaElement::from_x_residues(x.ctx(), x.level(), r);
}

}  // namespace iwt
