#include "iwt/logmatrix.hpp"

namespace iwt {

const char* family_name(Family f) {
    switch (f) {
        case Family::CCC: return "CCC";
        case Family::CCC_HAT: return "CCC-hat";
        case Family::CC_HAT: return "CC-hat";
        case Family::C: return "C";
        case Family::A: return "A";
        case Family::A_TILDE: return "A-tilde";
        case Family::A_TILDE_INV: return "A-tilde-inverse";
        default: return "product";
    }
}

namespace {

LambdaElement cst(const MatrixParams& q, const PadicInt& c) { return LambdaElement::constant(q.ctx, q.n, c); }
LambdaElement cst(const MatrixParams& q, i64 c) { return LambdaElement::constant(q.ctx, q.n, c); }

void check_params(const MatrixParams& q) {
    if (q.ap.p() != q.ctx.p() || q.eps.p() != q.ctx.p()) throw MixedPrime("matrix parameters over another prime");
    if (!q.eps.is_unit()) throw NotAUnit("eps_p must be a p-adic unit");
}

}  // namespace

LambdaMatrix make_matrix(Family family, int i, const MatrixParams& q) {
    check_params(q);
    const bool cyclotomic = family == Family::CCC || family == Family::CCC_HAT || family == Family::CC_HAT;
    if (cyclotomic && (i < 1 || i > q.n)) throw OutOfRange("make_matrix: need 1 <= i <= n");
    const PadicInt meps = -q.eps;
    const PadicInt p_padic(q.ctx, static_cast<i64>(q.ctx.p()));
    LambdaMatrix m;
    m.tag = family;
    switch (family) {
        case Family::CCC:
        case Family::CCC_HAT:
            m.e = {cst(q, q.ap), cst(q, 1), cyclotomic_phi(q.ctx, i, q.n, family == Family::CCC_HAT) * meps,
                   cst(q, 0)};
            break;
        case Family::CC_HAT:
            m.e = {cst(q, q.ap), cyclotomic_phi(q.ctx, i, q.n, true), cst(q, meps), cst(q, 0)};
            break;
        case Family::C: m.e = {cst(q, q.ap), cst(q, 1), cst(q, meps * p_padic), cst(q, 0)}; break;
        case Family::A: m.e = {cst(q, q.ap), cst(q, p_padic), cst(q, meps), cst(q, 0)}; break;
        case Family::A_TILDE: m.e = {cst(q, q.ap), cst(q, 1), cst(q, meps), cst(q, 0)}; break;
        case Family::A_TILDE_INV: {
            const PadicInt ie = q.eps.inverse();
            m.e = {cst(q, 0), cst(q, -ie), cst(q, 1), cst(q, q.ap * ie)};
            break;
        }
        default: throw InvalidParams("make_matrix: product is not a primitive family");
    }
    return m;
}

LambdaMatrix identity_matrix(const Zp& ctx, int n) {
    LambdaMatrix m;
    m.e = {LambdaElement::constant(ctx, n, 1), LambdaElement(ctx, n), LambdaElement(ctx, n),
           LambdaElement::constant(ctx, n, 1)};
    return m;
}

LambdaMatrix operator*(const LambdaMatrix& a, const LambdaMatrix& b) {
    LambdaMatrix r;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) r(i, k) = a(i, 0) * b(0, k) + a(i, 1) * b(1, k);
    return r;
}

LambdaPair operator*(const LambdaPair& v, const LambdaMatrix& m) {
    return {v.first * m(0, 0) + v.second * m(1, 0), v.first * m(0, 1) + v.second * m(1, 1)};
}

LambdaElement det(const LambdaMatrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

LambdaMatrix substitute_inverse(const LambdaMatrix& m) {
    LambdaMatrix r;
    r.tag = m.tag;
    for (int k = 0; k < 4; ++k) r.e[k] = substitute_inverse(m.e[k]);
    return r;
}

LambdaPair mul_ccc(const LambdaPair& v, int i, const MatrixParams& q, bool hatted) {
    // (x, y) [[a, 1], [-eps Phi, 0]] = (a x - eps Phi y, x)
    LambdaElement first = v.first * q.ap - v.second.mul_phi(i, hatted) * q.eps;
    return {first, v.first};
}

LambdaMatrix log_truncation(const MatrixParams& q, int n, bool hatted) {
    check_params(q);
    if (n < 1 || n > q.n) throw OutOfRange("log_truncation: need 1 <= n <= level");
    LambdaMatrix m = make_matrix(hatted ? Family::CCC_HAT : Family::CCC, 1, q);
    for (int i = 2; i <= n; ++i) {
        LambdaPair r0 = mul_ccc({m(0, 0), m(0, 1)}, i, q, hatted);
        LambdaPair r1 = mul_ccc({m(1, 0), m(1, 1)}, i, q, hatted);
        m.e = {r0.first, r0.second, r1.first, r1.second};
    }
    m.tag = Family::PRODUCT;
    return m;
}

bool det_identity_holds(const MatrixParams& q, int n) {
    MatrixParams up = q;
    up.n = n + 1;
    LambdaMatrix m = log_truncation(up, n, false);
    LambdaElement lhs = det(m) * LambdaElement::t(q.ctx, up.n);
    LambdaElement rhs = (LambdaElement::x_power(q.ctx, up.n, static_cast<i64>(ipow(q.ctx.p(), n))) -
                         LambdaElement::constant(q.ctx, up.n, 1)) *
                        q.eps.pow(static_cast<u64>(n));
    return lhs == rhs;
}

FunctionalEquationReport functional_equation_check(const MatrixParams& q, int n, Family family) {
    LambdaMatrix prod;
    if (family == Family::CCC || family == Family::CCC_HAT) {
        prod = log_truncation(q, n, family == Family::CCC_HAT);
    } else {
        prod = make_matrix(family, 1, q);
        for (int i = 2; i <= n; ++i) prod = prod * make_matrix(family, i, q);
    }
    LambdaMatrix expected = prod;
    if (q.ctx.p() == 2) {
        expected(1, 0) = prod(1, 0).shifted(-1);
        expected(1, 1) = prod(1, 1).shifted(-1);
    }
    LambdaMatrix got = substitute_inverse(prod);
    FunctionalEquationReport rep;
    rep.min_diff_valuation = ExtRational::at_least(q.ctx.precision());
    for (int k = 0; k < 4; ++k) {
        LambdaElement diff = got.e[k] - expected.e[k];
        if (!diff.is_zero()) ++rep.mismatched_entries;
        rep.min_diff_valuation = min(rep.min_diff_valuation, diff.content_valuation());
    }
    rep.exact = rep.mismatched_entries == 0;
    return rep;
}

HalfLogs half_logs(const Zp& ctx, int n, const PadicInt& eps) {
    if (n < 0) throw OutOfRange("half_logs: negative truncation index");
    if (!eps.is_unit()) throw NotAUnit("eps_p must be a unit");
    const u64 p = ctx.p();
    HalfLogs h;
    h.plus_num = LambdaElement::constant(ctx, n, 1);
    h.minus_num = LambdaElement::constant(ctx, n, 1);
    i64 u_plus = 0, u_minus = 0, w_plus = 0, w_minus = 0;
    for (int i = 1; i <= n; ++i) {
        const i64 e = static_cast<i64>(hat_exponent(p, i));
        const i64 w = static_cast<i64>(ipow(p, i - 1) * (p - 1));
        if (i % 2 == 0) {
            h.plus_num = h.plus_num.mul_phi(i, false);
            ++h.even_factors;
            u_plus += e;
            w_plus += w;  // p^{2j-1}(p-1) with i = 2j
        } else {
            h.minus_num = h.minus_num.mul_phi(i, false);
            ++h.odd_factors;
            u_minus += e;
            if (p == 2 && i == 1)
                w_minus += 1;  // the separate (1+T)^{-1} factor
            else
                w_minus += w;  // p^{2j-2}(p-1) with i = 2j-1
        }
    }
    h.plus_den_exp = 1 + h.even_factors;
    h.minus_den_exp = 1 + h.odd_factors;
    h.u_plus = LambdaElement::x_power(ctx, n, -u_plus);
    h.u_minus = LambdaElement::x_power(ctx, n, -u_minus);
    h.w_plus = LambdaElement::x_power(ctx, n, -w_plus);
    h.w_minus = LambdaElement::x_power(ctx, n, -w_minus);
    return h;
}

bool half_log_identity_holds(const HalfLogs& h) {
    return h.plus_num * h.w_plus == substitute_inverse(h.plus_num) &&
           h.minus_num * h.w_minus == substitute_inverse(h.minus_num);
}

ValMatrix valuation_matrix(const LambdaMatrix& m, const Rational& s) {
    ValMatrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r(i, j) = m(i, j).is_zero() ? ExtRational::infinity() : newton_vr(m(i, j), s);
    return r;
}

std::pair<ValMatrix, ValMatrix> half_log_valuation_form(const Zp& ctx, int n, const PadicInt& eps,
                                                        const Rational& s) {
    if (ctx.p() == 2) throw InvalidParams("half_log_valuation_form is stated for odd p");
    if (n < 1) throw OutOfRange("half_log_valuation_form: need n >= 1");
    MatrixParams q(ctx, n, PadicInt(ctx, 0), eps);
    const ValMatrix v1 = valuation_matrix(log_truncation(q, n, false), s);
    const int N = n + 1;
    const Rational half(1, 2);
    ValMatrix v2;
    if ((N + 1) % 2 == 0) {
        // C^{-(N+1)} = (-eps p)^{-(N+1)/2}
        const Rational c = Rational(-(N + 1)) / 2;
        v2 = ValMatrix(c, c, c + half, c + half);
    } else {
        // C^{-1}[[-1,-1],[beta,alpha]] = [[-beta/(eps p), -alpha/(eps p)], [-1, -1]]
        const Rational c = Rational(-N) / 2;
        v2 = ValMatrix(c - half, c - half, c, c);
    }
    const ValMatrix lhs = tropical_mul(v1, v2);
    HalfLogs h = half_logs(ctx, n, eps);
    const ExtRational vp = newton_vr(h.plus_num, s) - Rational(h.plus_den_exp);
    const ExtRational vm = newton_vr(h.minus_num, s) - Rational(h.minus_den_exp) + ExtRational(half);
    return {lhs, ValMatrix(vp, vp, vm, vm)};
}

}  // namespace iwt
