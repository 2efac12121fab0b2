#include <fstream>
#include <sstream>

#include "doctest.h"
#include "iwt/mazur_tate.hpp"
#include "json.hpp"

using namespace iwt;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) { return std::string(IWT_FIXTURE_DIR) + "/" + name; }

json load(const std::string& name) {
    std::ifstream in(fixture(name));
    return json::parse(in);
}

// Table with every symbol equal to 1 (plus and minus) for a prime p up to maxN.
json all_ones(u64 p, int maxN) {
    json d = {{"p", p}, {"conductor", 11}, {"ap", 1}, {"eps_p", 1}, {"maxN", maxN}, {"period_convention", "test"}};
    d["symbols"] = json::array();
    for (int N = 1; N <= maxN; ++N) {
        const u64 m = ipow(p, N);
        for (u64 a = 1; a < m; ++a)
            if (a % p != 0) d["symbols"].push_back({{"a", a}, {"N", N}, {"plus", "1"}, {"minus", "1"}});
    }
    return d;
}

json& entry(json& d, u64 a, int N) {
    for (auto& e : d["symbols"])
        if (e["a"] == a && e["N"] == N) return e;
    throw std::runtime_error("fixture entry missing");
}

}  // namespace

TEST_CASE("fixture ingestion") {
    const ModularSymbolTable t = ingest_modular_symbols_file(fixture("e37a_p3.json"));
    CHECK(t.p == 3);
    CHECK(t.conductor == 37);
    CHECK(t.ap == -3);
    CHECK(t.maxN == 6);
    CHECK(t.symbol(1, 1, 1) == 0);
    CHECK(t.symbol(1, 1, -1) == 1);
    CHECK(t.symbol(2, 2, 1) == -1);
    // a is read modulo p^N
    CHECK(t.symbol(2, 2 + 9, 1) == -1);
    CHECK(t.plus_at_zero.has_value());
    CHECK(ingest_modular_symbols_file(fixture("e11a_p3.json")).plus_at_zero == Rational(-2));
}

TEST_CASE("schema violations") {
    const json base = load("e37a_p3.json");
    auto expect_schema = [](const json& d) { CHECK_THROWS_AS(ingest_modular_symbols(d.dump()), SchemaError); };
    {
        json d = base;
        d.erase("ap");
        expect_schema(d);
    }
    {
        json d = base;
        d["p"] = 4;
        expect_schema(d);
    }
    {
        json d = base;
        d["conductor"] = 33;
        expect_schema(d);
    }
    {
        json d = base;
        d["eps_p"] = 3;
        expect_schema(d);
    }
    {
        json d = base;
        entry(d, 1, 1)["plus"] = "one";
        expect_schema(d);
    }
    {
        json d = base;
        d["symbols"].push_back({{"a", 1}, {"N", 7}, {"plus", "0"}, {"minus", "0"}});
        expect_schema(d);
    }
    {
        json d = base;
        d["symbols"].push_back({{"a", 1}, {"N", 1}, {"plus", "5"}, {"minus", "1"}});
        expect_schema(d);
    }
    CHECK_THROWS_AS(ingest_modular_symbols("{not json"), SchemaError);
    CHECK_THROWS_AS(ingest_modular_symbols_file(fixture("does_not_exist.json")), SchemaError);
}

TEST_CASE("missing symbols are reported") {
    json d = load("e37a_p3.json");
    auto& syms = d["symbols"];
    for (auto it = syms.begin(); it != syms.end(); ++it)
        if ((*it)["a"] == 4 && (*it)["N"] == 2) {
            syms.erase(it);
            break;
        }
    CHECK_THROWS_AS(ingest_modular_symbols(d.dump()), MissingSymbol);
    const ModularSymbolTable t = ingest_modular_symbols_file(fixture("e37a_p3.json"));
    CHECK_THROWS_AS(t.symbol(7, 1, 1), MissingSymbol);
}

TEST_CASE("denominators divisible by p need an explicit bound") {
    json d = load("e37a_p3.json");
    entry(d, 1, 1)["plus"] = "1/3";
    CHECK_THROWS_AS(ingest_modular_symbols(d.dump()), NonIntegralDenominator);
    const ModularSymbolTable t = ingest_modular_symbols(d.dump(), 3);
    CHECK(t.denominator_bound == 3);
    CHECK(t.symbol(1, 1, 1) == Rational(1, 3));
    // theta is built from b * symbols, so it stays integral
    CHECK_NOTHROW(build_theta(t, 0, 0, 6));
    // prime-to-p denominators are fine without a bound
    json e = load("e37a_p3.json");
    entry(e, 1, 1)["plus"] = "1/2";
    CHECK_NOTHROW(ingest_modular_symbols(e.dump()));
}

TEST_CASE("p = 2 tables must respect the sign symmetry") {
    CHECK_NOTHROW(ingest_modular_symbols_file(fixture("e37a_p2.json")));
    json d = load("e37a_p2.json");
    auto& e = entry(d, 1, 2);
    e["minus"] = e["minus"] == "0/1" ? "1/1" : "0/1";
    CHECK_THROWS_AS(ingest_modular_symbols(d.dump()), SchemaError);
}

TEST_CASE("theta with all symbols equal to one") {
    // brute-force oracle: each of the p^n fibres of (Z/p^N)^x -> Gamma collects p-1 ones
    const ModularSymbolTable t = ingest_modular_symbols(all_ones(3, 2).dump());
    const LambdaElement th = build_theta(t, 1, 0, 6);
    CHECK(th.x_coeffs() == std::vector<u64>{2, 2, 2});
    const ModularSymbolTable t5 = ingest_modular_symbols(all_ones(5, 3).dump());
    CHECK(build_theta(t5, 2, 0, 6).x_coeffs() == std::vector<u64>(25, 4));
    CHECK_THROWS_AS(build_theta(t, 2, 0, 6), OutOfRange);
}

TEST_CASE("fixture queues satisfy the three-term relation") {
    for (const char* f : {"e37a_p3.json", "e37a_p2.json", "e11a_p3.json", "e37a_p5.json"}) {
        const ModularSymbolTable t = ingest_modular_symbols_file(fixture(f));
        const int top = t.maxN - level_offset(t.p);
        for (int M : {8, 12}) {
            const QueueReport r = validate_queue(build_queue(t, top, 0, M));
            CHECK_MESSAGE(r.valid, f);
            CHECK(r.first_failing_level == -1);
        }
    }
}

TEST_CASE("a corrupted symbol breaks the relation at its level") {
    json d = load("e37a_p3.json");
    auto& e = entry(d, 1, 3);  // N = 3 is level n = 2
    e["plus"] = to_string(parse_rational(e["plus"].get<std::string>()) + 1);
    const ModularSymbolTable t = ingest_modular_symbols(d.dump());
    const QueueReport r = validate_queue(build_queue(t, 4, 0, 10));
    CHECK_FALSE(r.valid);
    CHECK(r.first_failing_level == 2);
    CHECK(r.residual_valuation == ExtRational(0));
}

TEST_CASE("validate_queue rejects misplaced levels") {
    const Zp z(3, 6);
    QueueSequence q = synthesize_queue(1, z, PadicInt(z, 1), PadicInt(z, 1), 3);
    std::swap(q.theta[1], q.theta[2]);
    CHECK_THROWS_AS(validate_queue(q), LevelMismatch);
}

TEST_CASE("synthesized queues are valid and deterministic in the seed") {
    for (u64 p : {2, 3, 5}) {
        const Zp z(p, 10);
        for (std::uint64_t seed : {0ULL, 1ULL, 12345ULL}) {
            const QueueSequence a = synthesize_queue(seed, z, PadicInt(z, 2), PadicInt(z, 1), 4);
            const QueueSequence b = synthesize_queue(seed, z, PadicInt(z, 2), PadicInt(z, 1), 4);
            CHECK(validate_queue(a).valid);
            CHECK(a.theta == b.theta);
            const QueueSequence c = synthesize_queue(seed ^ 1, z, PadicInt(z, 2), PadicInt(z, 1), 4);
            CHECK_FALSE(a.theta == c.theta);
        }
    }
}

TEST_CASE("tame twists of the fixture queues") {
    const ModularSymbolTable t = ingest_modular_symbols_file(fixture("e37a_p5.json"));
    for (int tame = 0; tame < 4; ++tame) CHECK(validate_queue(build_queue(t, 3, tame, 8)).valid);
    const ModularSymbolTable t3 = ingest_modular_symbols_file(fixture("e37a_p3.json"));
    CHECK(build_queue(t3, 2, 1, 8).tame == 1);
    CHECK(validate_queue(build_queue(t3, 4, 1, 8)).valid);
}
