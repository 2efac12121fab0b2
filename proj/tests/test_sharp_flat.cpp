#include <random>

#include "doctest.h"
#include "iwt/sharp_flat.hpp"

using namespace iwt;

namespace {

std::string fixture(const std::string& name) { return std::string(IWT_FIXTURE_DIR) + "/" + name; }

QueueSequence fixture_queue(const std::string& name, int n, int M, int tame = 0) {
    return build_queue(ingest_modular_symbols_file(fixture(name)), n, tame, M);
}

SharpFlatApprox random_approx(std::mt19937_64& rng, const Zp& z, int n, bool hat) {
    std::uniform_int_distribution<i64> d(0, static_cast<i64>(z.modulus()) - 1);
    i64 e = d(rng);
    while (e % static_cast<i64>(z.p()) == 0) e = d(rng);
    return SharpFlatApprox{n, 0, random_lambda(rng, z, n), random_lambda(rng, z, n), hat, MatrixParams(z, n, d(rng), e)};
}

}  // namespace

TEST_CASE("recompose inverts decompose on pairs in the image") {
    std::mt19937_64 rng(7);
    for (u64 p : {2, 3, 5}) {
        const Zp z(p, 10);
        for (int n = 1; n <= 3; ++n)
            for (bool hat : {false, true})
                for (int t = 0; t < 5; ++t) {
                    const SharpFlatApprox a = random_approx(rng, z, n, hat);
                    const LambdaPair pair = recompose(a);
                    const SharpFlatApprox b = decompose_pair(pair, a.params, hat);
                    CHECK(recompose(b) == pair);
                    CHECK(b.n == n);
                    CHECK(b.hatted == hat);
                }
    }
}

TEST_CASE("level zero has no peeling step") {
    const Zp z(3, 8);
    const MatrixParams q(z, 0, 4, 2);
    const LambdaPair pair{LambdaElement::constant(z, 0, 5), LambdaElement::constant(z, 0, 7)};
    const SharpFlatApprox a = decompose_pair(pair, q, false);
    // (Theta, nu) A~ = (a Theta - eps nu, Theta)
    CHECK(a.sharp == LambdaElement::constant(z, 0, 4 * 5 - 2 * 7));
    CHECK(a.flat == LambdaElement::constant(z, 0, 5));
    CHECK(recompose(a) == pair);
}

TEST_CASE("decompose is linear") {
    std::mt19937_64 rng(8);
    for (u64 p : {3, 5}) {
        const Zp z(p, 10);
        const int n = 2;
        const SharpFlatApprox a = random_approx(rng, z, n, true);
        SharpFlatApprox b = random_approx(rng, z, n, true);
        b.params = a.params;
        const LambdaPair pa = recompose(a), pb = recompose(b);
        const PadicInt c(z, 7);
        const LambdaPair mix{pa.first + pb.first * c, pa.second + pb.second * c};
        const SharpFlatApprox da = decompose_pair(pa, a.params, true), db = decompose_pair(pb, a.params, true);
        const SharpFlatApprox dm = decompose_pair(mix, a.params, true);
        CHECK(dm.sharp == da.sharp + db.sharp * c);
        CHECK(dm.flat == da.flat + db.flat * c);
    }
}

TEST_CASE("level mismatches are rejected") {
    const Zp z(3, 8);
    const MatrixParams q(z, 2, 1, 1);
    CHECK_THROWS_AS(decompose_pair({LambdaElement(z, 2), LambdaElement(z, 1)}, q, false), LevelMismatch);
    CHECK_THROWS_AS(decompose_pair({LambdaElement(z, 1), LambdaElement(z, 1)}, q, false), LevelMismatch);
    CHECK_THROWS_AS(decompose(LambdaElement(z, 2), LambdaElement(z, 0), q, false), LevelMismatch);
    CHECK_THROWS_AS(decompose(LambdaElement(z, 0), LambdaElement(z, 0), q, false), LevelMismatch);
}

TEST_CASE("a pair outside the image reports the failing peel index") {
    const Zp z(3, 8);
    const MatrixParams q(z, 2, 0, 1);
    // a = 0: the first peel needs (-x)/eps = Theta_2-part divisible by Phi_9
    const LambdaPair pair{LambdaElement::constant(z, 2, 0), LambdaElement::constant(z, 2, 1)};
    try {
        decompose_pair(pair, q, false);
        FAIL("expected NotDivisible");
    } catch (const NotDivisible& e) {
        CHECK(e.index() == 2);
    }
}

TEST_CASE("E37A at p = 3: invariants and vanishing") {
    const QueueSequence q = fixture_queue("e37a_p3.json", 5, 13);
    REQUIRE(validate_queue(q).valid);
    for (bool hat : {false, true}) {
        std::vector<SharpFlatApprox> approxes;
        for (int n = 2; n <= 5; ++n) {
            const SharpFlatApprox a = decompose_queue(q, n, hat);
            CHECK(recompose(a) == theta_pair(q, n));
            const IwasawaInvariants s = iwasawa_invariants(a.sharp), f = iwasawa_invariants(a.flat);
            CHECK(s.mu == 0);
            CHECK(f.mu == 0);
            CHECK(s.lambda == 1);
            CHECK(f.lambda == 5);
            approxes.push_back(a);
        }
        const StabilizedInvariants st = stabilized_invariants(approxes);
        CHECK(st.level == 5);
        CHECK(st.sharp.stable);
        CHECK(st.flat.stable);
        CHECK_FALSE(st.ordinary);
    }
    for (int n = 2; n <= 5; ++n) {
        const VanishingReport r = vector_vanishing_orders(decompose_queue(q, n, false), 0, n);
        CHECK(r.orders.at(0) == 1);
        CHECK(r.orders.at(1) == 0);
        CHECK(r.orders.at(2) == 1);
        for (int m = 3; m <= n; ++m) CHECK(r.orders.at(m) == 0);
        CHECK(r.partial_rank == 7);
    }
    // at n = 1 only the order at T = 0 is visible
    const SharpFlatApprox a1 = decompose_queue(q, 1, false);
    CHECK(a1.flat.is_zero());
    CHECK(vector_vanishing_orders(a1, 0, 1).partial_rank == 1);
    const Zp z(3, 8);
    CHECK_THROWS_AS(vector_vanishing_orders(SharpFlatApprox{1, 0, LambdaElement(z, 1), LambdaElement(z, 1), false,
                                                            MatrixParams(z, 1, 0, 1)},
                                            0, 1),
                    ZeroInput);
    CHECK_THROWS_AS(vector_vanishing_orders(decompose_queue(q, 2, false), 0, 3), OutOfRange);
}

TEST_CASE("supersingular approximations are compatible modulo the level-n ambiguity") {
    // pi(Theta_{n+1}, nu Theta_n) = (Theta_n, nu Theta_{n-1}) A and C_{n+1} A~^{-1} = A~^{-1} A = diag(1, p)
    // in Lambda_n, so d = pi(hi) - lo satisfies d C_1...C_n diag(1, p) = 0.
    const QueueSequence q = fixture_queue("e37a_p3.json", 5, 13);
    for (bool hat : {false, true})
        for (int n = 2; n <= 4; ++n) {
            const SharpFlatApprox lo = decompose_queue(q, n, hat), hi = decompose_queue(q, n + 1, hat);
            const LambdaPair d{project_pi(hi.sharp) - lo.sharp, project_pi(hi.flat) - lo.flat};
            const LambdaPair img = d * log_truncation(lo.params, n, hat);
            CHECK(img.first.is_zero());
            CHECK((img.second * PadicInt(lo.params.ctx, 3)).is_zero());
            CHECK(iwasawa_invariants(project_pi(hi.sharp)).lambda == iwasawa_invariants(lo.sharp).lambda);
            CHECK(iwasawa_invariants(project_pi(hi.flat)).lambda == iwasawa_invariants(lo.flat).lambda);
        }
}

TEST_CASE("E37A at p = 2: un-hatted peeling only") {
    const QueueSequence q = fixture_queue("e37a_p2.json", 5, 13);
    REQUIRE(validate_queue(q).valid);
    for (int n = 2; n <= 5; ++n) {
        const SharpFlatApprox a = decompose_queue(q, n, false);
        CHECK(recompose(a) == theta_pair(q, n));
        CHECK(iwasawa_invariants(a.sharp).mu == 1);
        CHECK(iwasawa_invariants(a.flat).mu == 1);
        CHECK(iwasawa_invariants(a.sharp).lambda == 1);
        CHECK(iwasawa_invariants(a.flat).lambda == 2);
        CHECK(vector_vanishing_orders(a, 0, n).partial_rank == 3);
        // the hatted peel has no solution on this data
        CHECK_THROWS_AS(decompose_queue(q, n, true), NotDivisible);
    }
}

TEST_CASE("stabilization bookkeeping") {
    const QueueSequence q = fixture_queue("e11a_p3.json", 4, 12);
    std::vector<SharpFlatApprox> one{decompose_queue(q, 3, true)};
    CHECK_THROWS_AS(stabilized_invariants(one), Unstable);
    std::vector<SharpFlatApprox> gap{decompose_queue(q, 2, true), decompose_queue(q, 4, true)};
    CHECK_THROWS_AS(stabilized_invariants(gap), LevelMismatch);
    std::vector<SharpFlatApprox> ok{decompose_queue(q, 3, true), decompose_queue(q, 4, true)};
    const StabilizedInvariants st = stabilized_invariants(ok);
    CHECK(st.ordinary);
    CHECK(st.sharp.lambda == 0);
    CHECK(st.flat.lambda == 1);
    CHECK(st.sharp.stable);
}

TEST_CASE("injected cyclotomic factors raise the vanishing order") {
    std::mt19937_64 rng(10);
    const Zp z(3, 12);
    const int n = 3;
    for (int m = 0; m <= n; ++m)
        for (int t = 0; t < 5; ++t) {
            SharpFlatApprox a = random_approx(rng, z, n, false);
            const VanishingReport base = vector_vanishing_orders(a, 0, n);
            const LambdaElement f = m == 0 ? LambdaElement::t(z, n) : cyclotomic_phi(z, m, n, false);
            a.sharp = a.sharp * f;
            a.flat = a.flat * f;
            const VanishingReport r = vector_vanishing_orders(a, 0, n);
            CHECK(r.orders.at(m) == base.orders.at(m) + 1);
            const i64 w = m == 0 ? 1 : static_cast<i64>(ipow(3, m) - ipow(3, m - 1));
            CHECK(r.partial_rank - base.partial_rank >= w);
        }
}

TEST_CASE("E11A at p = 3: T = 0 values against the special-value table") {
    const ModularSymbolTable t = ingest_modular_symbols_file(fixture("e11a_p3.json"));
    const QueueSequence q = build_queue(t, 4, 0, 12);
    for (int n = 1; n <= 4; ++n)
        for (bool hat : {false, true}) {
            const SpecialValueCheck c = special_value_check(decompose_queue(q, n, hat), *t.plus_at_zero);
            CHECK(c.sharp_at_zero.centered() == -2);
            CHECK(c.flat_at_zero.centered() == 6);
            // matches the table up to an overall sign -1
            CHECK(c.sign == -1);
        }
    CHECK_THROWS_AS(special_value_check(decompose_queue(fixture_queue("e37a_p2.json", 2, 8), 2, false), 1),
                    InvalidParams);
}

TEST_CASE("peeling and the forward product are dual (1000 trials per p, n)") {
    std::mt19937_64 rng(77);
    for (u64 p : {2, 3, 5}) {
        const Zp z(p, 8);
        for (int n = 1; n <= 4; ++n) {
            int failures = 0;
            for (int t = 0; t < 1000; ++t) {
                const SharpFlatApprox a = random_approx(rng, z, n, t % 2 == 1);
                const LambdaPair pair = recompose(a);
                const SharpFlatApprox b = decompose_pair(pair, a.params, a.hatted);
                if (!(recompose(b) == pair)) ++failures;
            }
            CHECK_MESSAGE(failures == 0, "p = " << p << ", n = " << n);
        }
    }
}

TEST_CASE("the first row of C_1...C_n is a unit at every zeta") {
    // (sharp, flat) = (1, 0): the (1,1) entry a C_2... has an entry that is a unit at each zeta_{p^m}
    for (u64 p : {3, 5}) {
        const Zp z(p, 10);
        for (int n = 1; n <= 3; ++n) {
            const SharpFlatApprox a{n, 0, LambdaElement::constant(z, n, 1), LambdaElement(z, n), false,
                                    MatrixParams(z, n, 1, 1)};
            const VanishingReport r = vector_vanishing_orders(a, 0, n);
            for (int m = 0; m <= n; ++m) CHECK(r.orders.at(m) == 0);
            CHECK(r.partial_rank == 0);
        }
    }
}

TEST_CASE("hatted and un-hatted decompositions share mu and lambda") {
    for (const char* f : {"e37a_p3.json", "e11a_p3.json", "e37a_p5.json"}) {
        const ModularSymbolTable t = ingest_modular_symbols_file(fixture(f));
        const int top = t.maxN - level_offset(t.p);
        const QueueSequence q = build_queue(t, top, 0, top + 8);
        const SharpFlatApprox h = decompose_queue(q, top, true), u = decompose_queue(q, top, false);
        CHECK_MESSAGE(iwasawa_invariants(h.sharp).mu == iwasawa_invariants(u.sharp).mu, f);
        CHECK_MESSAGE(iwasawa_invariants(h.sharp).lambda == iwasawa_invariants(u.sharp).lambda, f);
        CHECK_MESSAGE(iwasawa_invariants(h.flat).mu == iwasawa_invariants(u.flat).mu, f);
        CHECK_MESSAGE(iwasawa_invariants(h.flat).lambda == iwasawa_invariants(u.flat).lambda, f);
    }
}

TEST_CASE("a_p = 0: the peel splits into the half-log parity pattern at p = 3, n = 3") {
    // Theta_3 = -eps Phi_9 s and nu Theta_2 = -eps Phi_3 Phi_27 f when a_p = 0
    std::mt19937_64 rng(5);
    const Zp z(3, 10);
    const int n = 3;
    const PadicInt eps(z, 2);
    const MatrixParams q(z, n, PadicInt(z, 0), eps);
    const HalfLogs h = half_logs(z, n, eps);
    for (int t = 0; t < 20; ++t) {
        const SharpFlatApprox a{n, 0, random_lambda(rng, z, n), random_lambda(rng, z, n), false, q};
        const LambdaPair pair = recompose(a);
        CHECK(pair.first == a.sharp * h.plus_num * -eps);
        CHECK(pair.second == a.flat * h.minus_num * -eps);
        const SharpFlatApprox b = decompose_pair(pair, q, false);
        CHECK(b.sharp * h.plus_num == a.sharp * h.plus_num);
        CHECK(b.flat * h.minus_num == a.flat * h.minus_num);
    }
}
