#include "iwt/padic.hpp"

#include <algorithm>

namespace iwt {

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

u64 ipow(u64 p, int e) {
    if (e < 0) throw OutOfRange("negative exponent");
    u128 r = 1;
    for (int i = 0; i < e; ++i) {
        r *= p;
        if (r >= (static_cast<u128>(1) << 63)) throw OutOfRange("p^e exceeds 2^63");
    }
    return static_cast<u64>(r);
}

Zp::Zp(u64 p, int M) : p_(p), M_(M) {
    if (!is_prime(p)) throw InvalidParams("p = " + std::to_string(p) + " is not prime");
    if (M < 1) throw InvalidParams("precision must be positive");
    mod_ = ipow(p, M);
}

u64 Zp::reduce(i64 v) const {
    i64 m = static_cast<i64>(mod_);
    i64 r = v % m;
    return static_cast<u64>(r < 0 ? r + m : r);
}

u64 Zp::reduce_big(const BigInt& v) const {
    BigInt r = v % mod_;
    if (r < 0) r += mod_;
    return static_cast<u64>(r);
}

u64 Zp::pow(u64 a, u64 e) const {
    u64 r = 1 % mod_, b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

u64 Zp::inv(u64 a) const {
    if (a % p_ == 0) throw NotAUnit("residue " + std::to_string(a) + " is divisible by p");
    // extended Euclid on signed 128-bit values
    __int128 r0 = mod_, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        __int128 q = r0 / r1;
        __int128 t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    __int128 m = mod_;
    s0 %= m;
    if (s0 < 0) s0 += m;
    return static_cast<u64>(s0);
}

int Zp::val(u64 a) const {
    if (a == 0) return M_;
    int v = 0;
    while (a % p_ == 0) {
        a /= p_;
        ++v;
    }
    return v;
}

i64 Zp::centered(u64 a) const {
    return a > mod_ / 2 ? static_cast<i64>(a) - static_cast<i64>(mod_) : static_cast<i64>(a);
}

u64 Zp::from_rational(const Rational& q) const {
    BigInt den = denominator(q);
    if (den % p_ == 0)
        throw NonIntegralDenominator("rational " + to_string(q) + " is not p-integral for p = " +
                                     std::to_string(p_));
    return mul(reduce_big(numerator(q)), inv(reduce_big(den)));
}

PadicInt PadicInt::from_residue(const Zp& ctx, u64 residue) {
    PadicInt x;
    x.ctx_ = ctx;
    x.r_ = residue % ctx.modulus();
    return x;
}

PadicInt PadicInt::from_rational(const Zp& ctx, const Rational& q) {
    return from_residue(ctx, ctx.from_rational(q));
}

ExtRational PadicInt::valuation() const {
    if (r_ == 0) return ExtRational::at_least(ctx_.precision());
    return ExtRational(ctx_.val(r_));
}

PadicInt PadicInt::inverse() const { return from_residue(ctx_, ctx_.inv(r_)); }

PadicInt PadicInt::reduced_to(int M) const {
    if (M > precision()) throw PrecisionExhausted("cannot raise precision");
    Zp c(p(), M);
    return from_residue(c, r_ % c.modulus());
}

namespace {
Zp common(const PadicInt& a, const PadicInt& b) {
    if (a.p() != b.p())
        throw MixedPrime("operands over p = " + std::to_string(a.p()) + " and p = " + std::to_string(b.p()));
    return a.precision() <= b.precision() ? a.ctx() : b.ctx();
}
}  // namespace

PadicInt operator+(const PadicInt& a, const PadicInt& b) {
    Zp c = common(a, b);
    return PadicInt::from_residue(c, c.add(a.r_ % c.modulus(), b.r_ % c.modulus()));
}

PadicInt operator-(const PadicInt& a, const PadicInt& b) {
    Zp c = common(a, b);
    return PadicInt::from_residue(c, c.sub(a.r_ % c.modulus(), b.r_ % c.modulus()));
}

PadicInt operator*(const PadicInt& a, const PadicInt& b) {
    Zp c = common(a, b);
    return PadicInt::from_residue(c, c.mul(a.r_ % c.modulus(), b.r_ % c.modulus()));
}

PadicInt teichmuller(i64 a, u64 p, int M) {
    Zp c(p, M);
    if (a % static_cast<i64>(p) == 0) throw NotCoprime("teichmuller: p divides " + std::to_string(a));
    u64 x = c.reduce(a);
    if (p == 2) return PadicInt::from_residue(c, (x % 4 == 1) ? 1 % c.modulus() : c.neg(1 % c.modulus()));
    for (int it = 0; it <= M + 1; ++it) {
        u64 y = c.pow(x, p);
        if (y == x) break;
        x = y;
    }
    return PadicInt::from_residue(c, x);
}

u64 log_gamma(i64 a, u64 p, int N) {
    const int off = level_offset(p);
    const int n = N - off;
    if (n < 0) throw OutOfRange("log_gamma: level N too small for p");
    if (a % static_cast<i64>(p) == 0) throw NotCoprime("log_gamma: p divides " + std::to_string(a));
    Zp c(p, N);
    u64 target = c.mul(c.reduce(a), c.inv(teichmuller(a, p, N).residue()));
    const u64 gamma = 1 + 2 * p;
    u64 t = 0, step = 1;     // step = p^k
    u64 gstep = gamma;       // gamma^(p^k)
    u64 cur = 1;             // gamma^t
    for (int k = 0; k < n; ++k) {
        const u64 m = ipow(p, k + 1 + off);
        u64 trial = cur;
        u64 d = 0;
        for (; d < p; ++d) {
            if (trial % m == target % m) break;
            trial = c.mul(trial, gstep);
        }
        if (d == p) throw InvalidParams("log_gamma: digit search failed");
        t += d * step;
        cur = trial;
        step *= p;
        gstep = c.pow(gstep, p);
    }
    if (cur != target) throw InvalidParams("log_gamma: residual mismatch");
    return t;
}

}  // namespace iwt
