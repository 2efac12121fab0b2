#include "iwt/mazur_tate.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace iwt {

using nlohmann::json;

const Rational& ModularSymbolTable::symbol(int N, u64 a, int sign) const {
    const u64 m = ipow(p, N);
    auto it = values.find({N, a % m});
    if (it == values.end())
        throw MissingSymbol("no symbol for a = " + std::to_string(a % m) + ", N = " + std::to_string(N));
    return sign >= 0 ? it->second.first : it->second.second;
}

namespace {

std::string where(u64 a, int N, const char* sign) {
    return "(a = " + std::to_string(a) + ", N = " + std::to_string(N) + ", sign = " + sign + ")";
}

i64 get_int(const json& doc, const char* key) {
    if (!doc.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
    const json& v = doc.at(key);
    if (!v.is_number_integer()) throw SchemaError(std::string("field '") + key + "' must be an integer");
    return v.get<i64>();
}

Rational get_value(const json& entry, const char* key, u64 a, int N) {
    const json& v = entry.at(key);
    try {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<i64>());
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("unparsable rational at ") + where(a, N, key) + ": " + e.what());
    }
    throw SchemaError(std::string("rational must be a \"num/den\" string at ") + where(a, N, key));
}

bool p_integral_times(const Rational& q, i64 b, u64 p) {
    Rational s = q * b;
    return denominator(s) % p != 0;
}

}  // namespace

ModularSymbolTable ingest_modular_symbols(const std::string& text, i64 allow_denominator) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("document must be a JSON object");
    if (allow_denominator < 1) throw InvalidParams("denominator bound must be positive");

    ModularSymbolTable t;
    const i64 p = get_int(doc, "p");
    if (p < 2 || !is_prime(static_cast<u64>(p))) throw SchemaError("field 'p' must be a prime");
    t.p = static_cast<u64>(p);
    t.conductor = get_int(doc, "conductor");
    if (t.conductor < 1) throw SchemaError("field 'conductor' must be positive");
    if (t.conductor % p == 0) throw SchemaError("p divides the conductor (bad prime)");
    t.ap = get_int(doc, "ap");
    t.eps = get_int(doc, "eps_p");
    if (t.eps % p == 0) throw SchemaError("eps_p must be a p-adic unit");
    t.maxN = static_cast<int>(get_int(doc, "maxN"));
    if (t.maxN < 1) throw SchemaError("field 'maxN' must be >= 1");
    ipow(t.p, t.maxN);  // range check
    t.period_convention = doc.value("period_convention", std::string("unspecified"));
    t.denominator_bound = allow_denominator;
    if (!doc.contains("symbols") || !doc.at("symbols").is_array()) throw SchemaError("field 'symbols' must be an array");

    std::map<std::pair<int, u64>, std::pair<std::optional<Rational>, std::optional<Rational>>> raw;
    for (const json& e : doc.at("symbols")) {
        if (!e.is_object()) throw SchemaError("symbol entries must be objects");
        const i64 a_raw = get_int(e, "a");
        const i64 N = get_int(e, "N");
        if (N < 0 || N > t.maxN) throw SchemaError("symbol level N = " + std::to_string(N) + " outside [0, maxN]");
        const i64 m = static_cast<i64>(ipow(t.p, static_cast<int>(N)));
        const u64 a = static_cast<u64>(((a_raw % m) + m) % m);
        auto& slot = raw[{static_cast<int>(N), a}];
        for (const char* key : {"plus", "minus"}) {
            if (!e.contains(key)) continue;
            Rational v = get_value(e, key, a, static_cast<int>(N));
            if (!p_integral_times(v, allow_denominator, t.p))
                throw NonIntegralDenominator("value " + to_string(v) + " at " + where(a, static_cast<int>(N), key) +
                                             " is not p-integral" +
                                             (allow_denominator > 1 ? " within the allowed denominator bound" : ""));
            auto& dst = key[0] == 'p' ? slot.first : slot.second;
            if (dst && *dst != v) throw SchemaError("conflicting duplicate entry at " + where(a, static_cast<int>(N), key));
            dst = v;
        }
    }

    for (int N = 1; N <= t.maxN; ++N) {
        const u64 m = ipow(t.p, N);
        for (u64 a = 1; a < m; ++a) {
            if (a % t.p == 0) continue;
            auto it = raw.find({N, a});
            if (it == raw.end() || !it->second.first) throw MissingSymbol("missing symbol " + where(a, N, "+"));
            if (!it->second.second) throw MissingSymbol("missing symbol " + where(a, N, "-"));
            t.values[{N, a}] = {*it->second.first, *it->second.second};
        }
    }
    if (auto it = raw.find({0, 0}); it != raw.end() && it->second.first) t.plus_at_zero = *it->second.first;

    if (t.p == 2) {
        // [-a/m]^pm = pm [a/m]^pm
        for (const auto& [key, val] : t.values) {
            const u64 m = ipow(t.p, key.first);
            const auto& other = t.values.at({key.first, m - key.second});
            if (other.first != val.first || other.second != -val.second)
                throw SchemaError("sign symmetry violated at " + where(key.second, key.first, "+/-"));
        }
    }
    return t;
}

ModularSymbolTable ingest_modular_symbols_file(const std::string& path, i64 allow_denominator) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open modular-symbol file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ingest_modular_symbols(ss.str(), allow_denominator);
}

LambdaElement build_theta(const ModularSymbolTable& table, int n, int tame, int M) {
    if (n < 0) throw OutOfRange("build_theta: negative level");
    const u64 p = table.p;
    const int N = n + level_offset(p);
    if (N > table.maxN)
        throw OutOfRange("build_theta: level N = " + std::to_string(N) + " exceeds maxN = " + std::to_string(table.maxN));
    const Zp ctx(p, M);
    const Zp lev(p, N);
    const u64 pn = ipow(p, n);
    const int order = p == 2 ? 2 : static_cast<int>(p - 1);
    const int i = ((tame % order) + order) % order;
    const int sign = (i % 2 == 0) ? 1 : -1;

    // Teichmuller representatives modulo p^N and their i-th powers mod p^M.
    std::vector<u64> reps_N, chars;
    if (p == 2) {
        reps_N = {1 % lev.modulus(), lev.neg(1 % lev.modulus())};
        chars = {1 % ctx.modulus(), i == 0 ? 1 % ctx.modulus() : ctx.neg(1 % ctx.modulus())};
    } else {
        for (u64 j = 1; j < p; ++j) {
            reps_N.push_back(teichmuller(static_cast<i64>(j), p, N).residue());
            chars.push_back(teichmuller(static_cast<i64>(j), p, M).pow(static_cast<u64>(i)).residue());
        }
    }
    const Rational scale(table.denominator_bound);
    std::vector<u64> g(pn, 0);
    const u64 gamma = 1 + 2 * p;
    u64 cur = 1 % lev.modulus();  // gamma^t mod p^N
    for (u64 t = 0; t < pn; ++t) {
        for (std::size_t r = 0; r < reps_N.size(); ++r) {
            const u64 a = lev.mul(reps_N[r], cur);
            const u64 val = ctx.from_rational(table.symbol(N, a, sign) * scale);
            g[t] = ctx.add(g[t], ctx.mul(val, chars[r]));
        }
        cur = lev.mul(cur, gamma % lev.modulus());
    }
    return LambdaElement::from_x_residues(ctx, n, g);
}

QueueSequence build_queue(const ModularSymbolTable& table, int n, int tame, int M) {
    const Zp ctx(table.p, M);
    QueueSequence q{{}, PadicInt(ctx, table.ap), PadicInt(ctx, table.eps), tame};
    for (int m = 0; m <= n; ++m) q.theta.push_back(build_theta(table, m, tame, M));
    return q;
}

QueueReport validate_queue(const QueueSequence& q) {
    QueueReport rep;
    for (int m = 0; m <= q.top(); ++m)
        if (q.theta[m].level() != m) throw LevelMismatch("queue element " + std::to_string(m) + " at wrong level");
    for (int m = 2; m <= q.top(); ++m) {
        LambdaElement residual = project_pi(q.theta[m]) - (q.theta[m - 1] * q.ap - lift_nu(q.theta[m - 2]) * q.eps);
        if (!residual.is_zero()) {
            rep.valid = false;
            rep.first_failing_level = m;
            rep.residual_valuation = residual.content_valuation();
            break;
        }
    }
    return rep;
}

LambdaElement random_lambda(std::mt19937_64& rng, const Zp& ctx, int n) {
    std::uniform_int_distribution<u64> dist(0, ctx.modulus() - 1);
    std::vector<u64> g(ipow(ctx.p(), n));
    for (auto& v : g) v = dist(rng);
    return LambdaElement::from_x_residues(ctx, n, g);
}

QueueSequence synthesize_queue(std::uint64_t seed, const Zp& ctx, const PadicInt& ap, const PadicInt& eps, int n,
                               int tame) {
    if (n < 0) throw OutOfRange("synthesize_queue: negative level");
    std::mt19937_64 rng(seed);
    QueueSequence q{{}, ap, eps, tame};
    q.theta.push_back(random_lambda(rng, ctx, 0));
    if (n >= 1) q.theta.push_back(random_lambda(rng, ctx, 1));
    for (int m = 2; m <= n; ++m) {
        LambdaElement target = q.theta[m - 1] * ap - lift_nu(q.theta[m - 2]) * eps;
        LambdaElement r = random_lambda(rng, ctx, m);
        LambdaElement kernel = r.shifted(static_cast<i64>(ipow(ctx.p(), m - 1))) - r;
        q.theta.push_back(lift_canonical(target, m) + kernel);
    }
    return q;
}

}  // namespace iwt
