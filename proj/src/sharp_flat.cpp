#include "iwt/sharp_flat.hpp"

#include <algorithm>

namespace iwt {

SharpFlatApprox decompose_pair(const LambdaPair& pair, const MatrixParams& params, bool hatted, int tame) {
    const int n = pair.first.level();
    if (pair.second.level() != n || params.n != n) throw LevelMismatch("decompose: inconsistent levels");
    const int M_in = pair.first.precision();
    const PadicInt eps_inv = params.eps.inverse();
    // (x, y) = (Theta, nu Theta') A~ = (a Theta - eps nu Theta', Theta)
    LambdaElement x = pair.first * params.ap - pair.second * params.eps;
    LambdaElement y = pair.first;
    for (int i = n; i >= 1; --i) {
        LambdaElement num = (y * params.ap - x) * eps_inv;
        LambdaElement q;
        try {
            q = exact_divide_by_phi(num, i, hatted);
        } catch (const NotDivisible&) {
            throw NotDivisible("decompose: peel index " + std::to_string(i) + " is not exactly divisible", i);
        }
        x = std::move(y);
        y = std::move(q);
    }
    if (x.precision() != M_in || y.precision() != M_in) throw PrecisionExhausted("decompose lost precision");
    return SharpFlatApprox{n, tame, std::move(x), std::move(y), hatted, params};
}

LambdaPair theta_pair(const QueueSequence& q, int n) {
    if (n < 1 || n > q.top()) throw OutOfRange("theta_pair: level outside the queue");
    return {q.theta[n], lift_nu(q.theta[n - 1])};
}

SharpFlatApprox decompose(const LambdaElement& theta_n, const LambdaElement& theta_prev, const MatrixParams& params,
                          bool hatted, int tame) {
    if (theta_n.level() < 1) throw LevelMismatch("decompose needs n >= 1");
    if (theta_prev.level() + 1 != theta_n.level()) throw LevelMismatch("decompose: Theta_{n-1} at the wrong level");
    return decompose_pair({theta_n, lift_nu(theta_prev)}, params, hatted, tame);
}

SharpFlatApprox decompose_queue(const QueueSequence& q, int n, bool hatted) {
    MatrixParams params(q.ctx(), n, q.ap, q.eps);
    return decompose_pair(theta_pair(q, n), params, hatted, q.tame);
}

LambdaPair recompose(const SharpFlatApprox& a) {
    LambdaPair v{a.sharp, a.flat};
    for (int i = 1; i <= a.n; ++i) v = mul_ccc(v, i, a.params, a.hatted);
    // (x, y) A~^{-1} = (y, (a y - x) / eps)
    const PadicInt eps_inv = a.params.eps.inverse();
    return {v.second, (v.second * a.params.ap - v.first) * eps_inv};
}

StabilizedInvariants stabilized_invariants(const std::vector<SharpFlatApprox>& approxes) {
    if (approxes.size() < 2) throw Unstable("stabilized_invariants needs at least two consecutive levels");
    const SharpFlatApprox& top = approxes.back();
    const SharpFlatApprox& prev = approxes[approxes.size() - 2];
    if (prev.n + 1 != top.n) throw LevelMismatch("stabilized_invariants needs consecutive levels");
    StabilizedInvariants r;
    r.level = top.n;
    r.sharp = iwasawa_invariants(top.sharp);
    r.flat = iwasawa_invariants(top.flat);
    const IwasawaInvariants ps = iwasawa_invariants(prev.sharp);
    const IwasawaInvariants pf = iwasawa_invariants(prev.flat);
    const u64 p = top.sharp.p();
    const i64 bound = static_cast<i64>(ipow(p, top.n) - ipow(p, top.n - 1));
    r.sharp.stable = ps.mu == r.sharp.mu && ps.lambda == r.sharp.lambda && r.sharp.lambda < bound;
    r.flat.stable = pf.mu == r.flat.mu && pf.lambda == r.flat.lambda && r.flat.lambda < bound;
    r.ordinary = top.params.ap.is_unit();
    return r;
}

LambdaPair vanishing_vector(const SharpFlatApprox& a) {
    LambdaPair v{a.sharp, a.flat};
    for (int i = 1; i <= a.n; ++i) v = mul_ccc(v, i, a.params, false);
    return v;
}

VanishingReport vector_vanishing_orders(const SharpFlatApprox& a, int m_lo, int m_hi) {
    if (m_lo < 0 || m_hi > a.n || m_lo > m_hi) throw OutOfRange("vector_vanishing_orders: need 0 <= m <= n");
    const LambdaPair v = vanishing_vector(a);
    if (v.first.is_zero() && v.second.is_zero()) throw ZeroInput("vanishing vector is zero at working precision");
    VanishingReport rep;
    const u64 p = a.sharp.p();
    for (int m = m_lo; m <= m_hi; ++m) {
        int order = -1;
        for (const LambdaElement* e : {&v.first, &v.second}) {
            if (e->is_zero()) continue;
            const int o = vanishing_order(*e, m);
            order = order < 0 ? o : std::min(order, o);
        }
        rep.orders[m] = order;
        const i64 weight = m == 0 ? 1 : static_cast<i64>(ipow(p, m) - ipow(p, m - 1));
        rep.partial_rank += weight * order;
    }
    return rep;
}

SpecialValueCheck special_value_check(const SharpFlatApprox& a, const Rational& l_over_omega) {
    const Zp& ctx = a.sharp.ctx();
    if (ctx.p() == 2 || a.tame != 0) throw InvalidParams("special_value_check covers odd p and tame index 0");
    SpecialValueCheck c;
    c.sharp_at_zero = a.sharp.at_zero();
    c.flat_at_zero = a.flat.at_zero();
    const PadicInt ap = a.params.ap;
    const PadicInt one(ctx, 1), two(ctx, 2), pm1(ctx, static_cast<i64>(ctx.p()) - 1);
    const PadicInt l = PadicInt::from_rational(ctx, l_over_omega);
    c.table_sharp = (-(ap * ap) + two * ap + pm1) * l;
    c.table_flat = (two - ap) * l;
    if (c.sharp_at_zero == c.table_sharp && c.flat_at_zero == c.table_flat)
        c.sign = 1;
    else if (c.sharp_at_zero == -c.table_sharp && c.flat_at_zero == -c.table_flat)
        c.sign = -1;
    return c;
}

}  // namespace iwt
