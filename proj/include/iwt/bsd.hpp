#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iwt/ext_rational.hpp"
#include "iwt/padic.hpp"

namespace iwt {

enum class Star { Sharp, Flat, Tie, Sporadic, Natural };
const char* star_name(Star s);

// Kurihara terms q_n^sharp / q_n^flat (floor form).
i64 kurihara_simple(int n, u64 p, Star star);
// Same terms via the closed alternating p-power sums.
i64 kurihara_alternating(int n, u64 p, Star star);

struct NuThresholds {
    int nu_sharp = 0;
    int nu_flat = 0;
    int nu_tilde_sharp = 0;
    int nu_tilde_flat = 1;
};

NuThresholds nu_thresholds(u64 p, i64 lambda_sharp, i64 lambda_flat);

struct RankBoundReport {
    int case_index = 0;  // 1: |mu# - mub| <= v, 2: mu# > mub + v, 3: mub > mu# + v
    NuThresholds nus;
    int nu = 0;
    i64 term_a = 0;  // the two quantities whose minimum is the bound
    i64 term_b = 0;
    i64 bound = 0;
    std::optional<i64> lambda_sum_bound;  // v = infinity only
    i64 final_bound = 0;
};

RankBoundReport rank_bound(u64 p, const Rational& mu_sharp, const Rational& mu_flat, i64 lambda_sharp,
                           i64 lambda_flat, const ExtRational& v);

struct KuriharaParams {
    u64 p = 0;
    ExtRational v;
    std::optional<int> k;  // none for v in {0, infinity}
    ExtRational v2;
    Rational delta;

    // v2 defaults to the generic value 2v.
    static KuriharaParams make(u64 p, const ExtRational& v, std::optional<ExtRational> v2 = std::nullopt);
};

// Smallest k >= 1 with v >= p^{-k}/2, for 0 < v < infinity.
int kurihara_k(u64 p, const Rational& v);

ExtRational kurihara_general(int n, const KuriharaParams& params, Star star);

bool sporadic_check(u64 p, int k, const ExtRational& v, const ExtRational& v2, int n, const Rational& mu_sharp,
                    const Rational& mu_flat, i64 lambda_sharp, i64 lambda_flat);

struct ModestyDecision {
    Star star = Star::Tie;
    ExtRational score_sharp;
    ExtRational score_flat;
    int n = 0;
    std::optional<int> k;
};

ModestyDecision modesty_choose(int n, const KuriharaParams& params, const Rational& mu_sharp, const Rational& mu_flat,
                               i64 lambda_sharp, i64 lambda_flat);

// Elliptic-curve decision table; throws ExcludedCase on its excluded cell.
ModestyDecision elliptic_table_choose(const ExtRational& v, int n, const Rational& mu_sharp, const Rational& mu_flat,
                                      i64 lambda_sharp, i64 lambda_flat, u64 p);

struct ShaRecord {
    bool ordinary = false;
    Rational mu_natural;  // ordinary invariants (also the v = 0 sporadic fallback)
    i64 lambda_natural = 0;
    bool has_natural = false;
    Rational mu_sharp, mu_flat;
    i64 lambda_sharp = 0, lambda_flat = 0;
    ExtRational v = ExtRational(0);
    std::optional<ExtRational> v2;
};

struct ShaGrowthStep {
    int n = 0;
    std::vector<Star> stars;  // per record
    std::vector<ExtRational> terms;
    ExtRational increment;  // e_n - e_{n-1}
};

struct ShaGrowthReport {
    u64 p = 0;
    i64 r_inf = 0;
    std::vector<ShaGrowthStep> steps;
};

// Throws SporadicCase / TieCase where the modesty choice is undefined.
ShaGrowthReport sha_growth(u64 p, int n_lo, int n_hi, const std::vector<ShaRecord>& records, i64 r_inf);

// Elliptic specialization: mu_*(p^n - p^{n-1}) + lambda_* - r + min(1, v) q_n^*.
ShaGrowthReport sha_growth_elliptic(u64 p, int n_lo, int n_hi, const ExtRational& v, const Rational& mu_sharp,
                                    const Rational& mu_flat, i64 lambda_sharp, i64 lambda_flat, i64 r_inf);

struct ModestyGrid {
    std::vector<ExtRational> v_values;
    std::vector<Rational> mu_gaps;  // mu_sharp - mu_flat
    i64 lambda_sharp = 0;
    i64 lambda_flat = 0;
    int n_odd = 7;
    int n_even = 8;
    std::optional<ExtRational> v2;  // generic 2v when unset
};

struct ModestyRecord {
    ExtRational v;
    Rational mu_gap;
    int n_parity = 0;
    Star star = Star::Tie;
};

std::vector<ModestyRecord> modesty_map(const ModestyGrid& grid, u64 p);
std::string modesty_csv(const std::vector<ModestyRecord>& records);

}  // namespace iwt
