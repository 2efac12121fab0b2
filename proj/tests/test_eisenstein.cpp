#include <random>

#include "doctest.h"
#include "iwt/eisenstein.hpp"
#include "iwt/mazur_tate.hpp"

using namespace iwt;

namespace {

Rational q(i64 a, i64 b = 1) { return Rational(a, b); }

EisensteinElement random_element(std::mt19937_64& rng, const RingPtr& r) {
    std::uniform_int_distribution<u64> d(0, r->ctx().modulus() - 1);
    std::vector<u64> c(r->degree());
    for (auto& v : c) v = d(rng);
    return EisensteinElement::from_pi_coeffs(r, c);
}

}  // namespace

TEST_CASE("uniformizer and defining relation") {
    for (u64 p : {2, 3, 5}) {
        const Zp z(p, 8);
        for (int j = 1; j <= 3; ++j) {
            const RingPtr r = EisensteinRing::make(z, j);
            const std::size_t d = r->degree();
            CHECK(d == ipow(p, j - 1) * (p - 1));
            const EisensteinElement pi = EisensteinElement::pi(r);
            CHECK(pi.valuation() == ExtRational(q(1, static_cast<i64>(d))));
            CHECK(EisensteinElement::from_int(r, static_cast<i64>(p)).valuation() == ExtRational(1));
            // pi^d + e_{d-1} pi^{d-1} + ... + e_0 = 0
            EisensteinElement acc = pi.pow(d);
            for (std::size_t i = 0; i < d; ++i) acc = acc + pi.pow(i).scaled(r->eisenstein_poly()[i]);
            CHECK(acc.is_zero());
            const EisensteinElement zeta = EisensteinElement::zeta(r);
            CHECK(zeta.pow(r->root_order()) == EisensteinElement::from_int(r, 1));
            CHECK_FALSE(zeta.pow(r->root_order() / p) == EisensteinElement::from_int(r, 1));
        }
    }
}

TEST_CASE("valuation of zero is a lower bound; exact valuation throws") {
    const RingPtr r = EisensteinRing::make(Zp(3, 6), 2);
    const EisensteinElement z(r);
    CHECK(z.valuation().is_lower_bound());
    CHECK_THROWS_AS(z.valuation_exact(), PrecisionExhausted);
    CHECK(EisensteinElement::from_int(r, 9).valuation_exact() == 2);
}

TEST_CASE("valuation is additive and multiplication is associative") {
    std::mt19937_64 rng(31);
    const RingPtr r = EisensteinRing::make(Zp(3, 8), 2);
    for (int t = 0; t < 200; ++t) {
        const EisensteinElement x = random_element(rng, r), y = random_element(rng, r), w = random_element(rng, r);
        CHECK((x * y) * w == x * (y * w));
        if (x.is_zero() || y.is_zero()) continue;
        const Rational vx = x.valuation_exact(), vy = y.valuation_exact();
        if (vx + vy < 7) CHECK((x * y).valuation_exact() == vx + vy);
    }
}

TEST_CASE("orders of cyclotomic values (oracle table)") {
    const Zp z(3, 10);
    const RingPtr r = EisensteinRing::make(z, 3);
    // exact sympy norms: ord Phi_{p^i}(zeta_{p^j}) for i < j
    CHECK(phi_at_zeta(r, 1).valuation() == ExtRational(q(1, 9)));
    CHECK(phi_at_zeta(r, 2).valuation() == ExtRational(q(1, 3)));
    CHECK(phi_at_zeta(r, 3).is_zero());
    CHECK(phi_at_zeta(r, 4).valuation() == ExtRational(1));
    CHECK(phi_at_zeta(r, 5) == EisensteinElement::from_int(r, 3));
    const RingPtr r5 = EisensteinRing::make(Zp(5, 6), 3);
    CHECK(phi_at_zeta(r5, 1).valuation() == ExtRational(q(1, 25)));
    CHECK(phi_at_zeta(r5, 2).valuation() == ExtRational(q(1, 5)));
    CHECK(phi_at_zeta(EisensteinRing::make(z, 2), 1).valuation() == ExtRational(q(1, 3)));
    CHECK(phi_at_zeta(EisensteinRing::make(Zp(5, 6), 2), 1).valuation() == ExtRational(q(1, 5)));
}

TEST_CASE("cyclotomic orders follow 1/(p^{j-i-1}(p-1)) - 1/(p^{j-i}(p-1))") {
    for (u64 p : {2, 3, 5}) {
        const Zp z(p, 8);
        for (int j = 2; j <= 3; ++j) {
            const RingPtr r = EisensteinRing::make(z, j);
            for (int i = 1; i < j; ++i) {
                const i64 a = static_cast<i64>(ipow(p, j - i - 1) * (p - 1));
                CHECK(phi_at_zeta(r, i).valuation() == ExtRational(q(1, a) - q(1, a * static_cast<i64>(p))));
            }
            for (int i = j + 1; i <= j + 2; ++i)
                CHECK(phi_at_zeta(r, i) == EisensteinElement::from_int(r, static_cast<i64>(p)));
        }
    }
}

TEST_CASE("evaluation at zeta is a ring homomorphism") {
    std::mt19937_64 rng(12);
    for (u64 p : {2, 3, 5}) {
        const Zp z(p, 8);
        const int n = 3;
        for (int j = 1; j <= n; ++j) {
            const RingPtr r = EisensteinRing::make(z, j);
            CHECK(eval_lambda_at_zeta(cyclotomic_phi(z, j, n, false), r).is_zero());
            for (int t = 0; t < 10; ++t) {
                const LambdaElement x = random_lambda(rng, z, n), y = random_lambda(rng, z, n);
                const EisensteinElement ex = eval_lambda_at_zeta(x, r), ey = eval_lambda_at_zeta(y, r);
                CHECK(eval_lambda_at_zeta(x * y, r) == ex * ey);
                CHECK(eval_lambda_at_zeta(x + y, r) == ex + ey);
            }
        }
        CHECK_THROWS_AS(eval_lambda_at_zeta(LambdaElement::t(z, 1), EisensteinRing::make(z, 2)), OutOfRange);
    }
}

TEST_CASE("embedding sends zeta_{p^j} to zeta_{p^J}^{p^{J-j}}") {
    const Zp z(3, 8);
    const RingPtr r2 = EisensteinRing::make(z, 2), r3 = EisensteinRing::make(z, 3);
    CHECK(embed(EisensteinElement::zeta(r2), r3) == EisensteinElement::zeta(r3).pow(3));
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        const EisensteinElement x = random_element(rng, r2), y = random_element(rng, r2);
        CHECK(embed(x * y, r3) == embed(x, r3) * embed(y, r3));
        if (!x.is_zero() && x.valuation_exact() < 5) CHECK(embed(x, r3).valuation() == x.valuation());
    }
}

TEST_CASE("root multiplicity is the same for every conjugate root") {
    const Zp z(3, 10);
    const RingPtr r = EisensteinRing::make(z, 2);
    // g = Phi_9(X)^2 (X - 1)^3 (X + 4), built in Lambda_3 where nothing wraps
    const LambdaElement phi = cyclotomic_phi(z, 2, 3, false);
    const LambdaElement t = LambdaElement::t(z, 3);
    const LambdaElement g = phi * phi * t * t * t * LambdaElement::from_t_coeffs(z, 3, {5, 1});
    for (u64 c : {1, 2, 4, 5, 7, 8}) CHECK(root_multiplicity(z, g.x_coeffs(), r, c) == 2);
    CHECK(root_multiplicity(z, g.x_coeffs(), nullptr, 0) == 3);
    CHECK(root_multiplicity(z, g.x_coeffs(), EisensteinRing::make(z, 1), 1) == 0);
}

TEST_CASE("v = 0: H^{n-1} at zeta_{p^n} has valuations [[0,0],[p^{1-n},p^{1-n}]]") {
    const Zp z(3, 12);
    for (int n : {3, 4}) {
        const RingPtr r = EisensteinRing::make(z, n);
        const Rational c = q(1, static_cast<i64>(ipow(3, n - 1)));
        for (i64 a : {1, 2, -1})
            CHECK(h_matrix_valuations(EisensteinElement::from_int(r, a), n - 1) == ValMatrix(0, 0, c, c));
    }
}

TEST_CASE("integer v: H^{n-3} at zeta_{p^n}, p = 3") {
    const Zp z(3, 12);
    const RingPtr r5 = EisensteinRing::make(z, 5), r6 = EisensteinRing::make(z, 6);
    for (i64 a : {3, -3}) {
        CHECK(h_matrix_valuations(EisensteinElement::from_int(r5, a), 2) ==
              ValMatrix(q(1, 27), 1, q(82, 81), q(1, 81)));
        CHECK(h_matrix_valuations(EisensteinElement::from_int(r6, a), 3) ==
              ValMatrix(q(82, 81), q(1, 81), q(10, 243), q(244, 243)));
    }
    CHECK(h_matrix_valuations(EisensteinElement::from_int(r5, 9), 2) == ValMatrix(q(1, 27), 2, q(163, 81), q(1, 81)));
    CHECK(h_matrix_valuations(EisensteinElement::from_int(r6, 9), 3) ==
          ValMatrix(q(163, 81), q(1, 81), q(10, 243), q(487, 243)));
}

TEST_CASE("tropical product bounds the exact valuations from below") {
    std::mt19937_64 rng(17);
    const Zp z(3, 10);
    const RingPtr r = EisensteinRing::make(z, 4);
    for (int t = 0; t < 30; ++t) {
        EisensteinElement a = random_element(rng, r);
        if (a.is_zero()) continue;
        for (int m : {1, 2, 3}) {
            const ValMatrix ex = h_matrix_valuations(a, m), lo = h_matrix_tropical_bound(a, m);
            for (int i = 0; i < 2; ++i)
                for (int k = 0; k < 2; ++k) CHECK_FALSE(certainly_less(ex(i, k), lo(i, k)));
        }
    }
}

TEST_CASE("minimal k") {
    CHECK(minimal_k(3, ExtRational(q(1, 6))) == 1);
    CHECK(minimal_k(3, ExtRational(q(1, 7))) == 2);
    CHECK(minimal_k(3, ExtRational(q(1, 18))) == 2);
    CHECK(minimal_k(5, ExtRational(1)) == 1);
    CHECK_THROWS_AS(minimal_k(3, ExtRational(0)), InvalidK);
    CHECK_THROWS_AS(minimal_k(3, ExtRational::infinity()), InvalidK);
}

TEST_CASE("v2 invariant (sympy oracle)") {
    const Zp z(3, 12);
    CHECK(v2_invariant(PadicInt(z, 3), 1) == ExtRational(q(1, 3)));
    const RingPtr r2 = EisensteinRing::make(z, 2);
    const EisensteinElement pi = EisensteinElement::pi(r2);
    CHECK(v2_invariant(pi, 1) == ExtRational(1));
    CHECK(v2_invariant(pi * EisensteinElement::zeta(r2), 1) == ExtRational(q(1, 2)));
}

TEST_CASE("v2 of a = pi_27^3 u") {
    const Zp z(3, 12);
    const RingPtr r = EisensteinRing::make(z, 3);
    const EisensteinElement pi = EisensteinElement::pi(r), one = EisensteinElement::from_int(r, 1);
    const EisensteinElement a = pi.pow(3);
    CHECK(a.valuation() == ExtRational(q(1, 6)));
    CHECK(v2_invariant(a, 1) == ExtRational(1));
    CHECK(v2_invariant(a * (one + pi), 1) == ExtRational(q(7, 18)));
    CHECK(v2_invariant(a * (one + pi.pow(2)), 1) == ExtRational(q(4, 9)));
    CHECK(v2_invariant(a * (one + pi.pow(5)), 1) == ExtRational(q(11, 18)));
    // v2 >= 2v always
    std::mt19937_64 rng(40);
    for (int t = 0; t < 30; ++t) {
        const EisensteinElement u = one + pi * random_element(rng, r);
        CHECK_FALSE(certainly_less(v2_invariant(a * u, 1), ExtRational(q(1, 3))));
    }
}

TEST_CASE("vm invariant is the upper-left entry of the valuation matrix") {
    const Zp z(3, 12);
    const RingPtr r = EisensteinRing::make(z, 3);
    const EisensteinElement a = EisensteinElement::pi(r).pow(3);
    const RingPtr r3 = EisensteinRing::make(z, 3);
    for (int m = 1; m <= 2; ++m) CHECK(vm_invariant(a, m, 1) == h_matrix_valuations(embed(a, r3), m)(0, 0));
}
