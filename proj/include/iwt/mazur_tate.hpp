#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "iwt/lambda.hpp"

namespace iwt {

// Modular symbols [a/p^N]^pm for a coprime to p, 1 <= N <= maxN.
struct ModularSymbolTable {
    u64 p = 0;
    i64 conductor = 0;
    i64 ap = 0;
    i64 eps = 1;
    int maxN = 0;
    std::string period_convention;
    // (N, a) -> (plus, minus), a normalized into [1, p^N).
    std::map<std::pair<int, u64>, std::pair<Rational, Rational>> values;
    // [0]^+ when the document carries an N = 0 entry; equals L(f,1)/Omega^+.
    std::optional<Rational> plus_at_zero;
    // Global denominator bound b accepted at ingestion (1 = p-integral data).
    i64 denominator_bound = 1;

    const Rational& symbol(int N, u64 a, int sign) const;
};

// Parses and validates a modular-symbol document. allow_denominator = b
// accepts values whose product with b is p-integral.
ModularSymbolTable ingest_modular_symbols(const std::string& json_text, i64 allow_denominator = 1);
ModularSymbolTable ingest_modular_symbols_file(const std::string& path, i64 allow_denominator = 1);

// theta_n(omega^i, T) = sum_a [a/p^N]^{sign} omega^i(a) (1+T)^{log_gamma(a)},
// scaled by the table's denominator bound.
LambdaElement build_theta(const ModularSymbolTable& table, int n, int tame, int M);

struct QueueSequence {
    std::vector<LambdaElement> theta;  // theta[m] at level m
    PadicInt ap;
    PadicInt eps;
    int tame = 0;

    const Zp& ctx() const { return theta.front().ctx(); }
    int top() const { return static_cast<int>(theta.size()) - 1; }
};

QueueSequence build_queue(const ModularSymbolTable& table, int n, int tame, int M);

struct QueueReport {
    bool valid = true;
    int first_failing_level = -1;
    ExtRational residual_valuation = ExtRational::infinity();
};

QueueReport validate_queue(const QueueSequence& q);

QueueSequence synthesize_queue(std::uint64_t seed, const Zp& ctx, const PadicInt& ap, const PadicInt& eps, int n,
                               int tame = 0);

// Uniform pseudorandom Lambda_n element drawn from the given engine state.
LambdaElement random_lambda(std::mt19937_64& rng, const Zp& ctx, int n);

}  // namespace iwt
