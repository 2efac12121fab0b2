#include "iwt/bsd.hpp"

#include <algorithm>
#include <sstream>

#include "iwt/errors.hpp"

namespace iwt {

const char* star_name(Star s) {
    switch (s) {
        case Star::Sharp: return "sharp";
        case Star::Flat: return "flat";
        case Star::Tie: return "tie";
        case Star::Sporadic: return "sporadic";
        default: return "natural";
    }
}

namespace {

i64 pw(u64 p, int e) { return static_cast<i64>(ipow(p, e)); }

// floor(p^m / (p+1))
i64 fl(u64 p, int m) { return pw(p, m) / static_cast<i64>(p + 1); }

i64 level_weight(u64 p, int n) { return n == 0 ? 1 : pw(p, n) - pw(p, n - 1); }

bool is_sharp_or_flat(Star s) { return s == Star::Sharp || s == Star::Flat; }

// Largest n >= n0 with n = n0 (mod 2) and lambda >= threshold(n); fallback otherwise.
template <class F>
int largest_with_parity(int n0, i64 lambda, int fallback, u64 p, F threshold) {
    int best = fallback;
    // threshold(n) grows like p^{n-1}(p^2-p-1)/(p+1); stop well past lambda.
    for (int n = n0;; n += 2) {
        if (threshold(n) <= lambda) best = n;
        if (pw(p, n - 1) > 3 * (lambda + static_cast<i64>(p * p)) + 3) break;
    }
    return best;
}

}  // namespace

i64 kurihara_simple(int n, u64 p, Star star) {
    if (n < 0) throw OutOfRange("kurihara_simple: negative n");
    if (!is_sharp_or_flat(star)) throw InvalidParams("kurihara_simple: star must be sharp or flat");
    const bool odd = n % 2 == 1;
    if (star == Star::Sharp) return odd ? fl(p, n) : fl(p, n + 1);
    return odd ? fl(p, n + 1) : fl(p, n);
}

i64 kurihara_alternating(int n, u64 p, Star star) {
    if (n < 0) throw OutOfRange("kurihara_alternating: negative n");
    if (!is_sharp_or_flat(star)) throw InvalidParams("kurihara_alternating: star must be sharp or flat");
    // Effective index m with the parity of the star (odd for sharp, even for flat).
    const int m = (star == Star::Sharp) == (n % 2 == 1) ? n : n + 1;
    const int lo = star == Star::Sharp ? 1 : 0;
    i64 s = 0;
    for (int j = lo; j <= m - 1; ++j) s += ((m - 1 - j) % 2 == 0 ? 1 : -1) * pw(p, j);
    return s;
}

NuThresholds nu_thresholds(u64 p, i64 ls, i64 lf) {
    NuThresholds t;
    const i64 pm1 = static_cast<i64>(p) - 1;
    t.nu_sharp = largest_with_parity(1, ls, 0, p, [&](int n) {
        return level_weight(p, n) - kurihara_simple(n, p, Star::Sharp);
    });
    t.nu_flat = largest_with_parity(2, lf, 0, p, [&](int n) {
        return level_weight(p, n) - kurihara_simple(n, p, Star::Flat);
    });
    t.nu_tilde_flat = largest_with_parity(3, lf, 1, p, [&](int n) {
        return level_weight(p, n) - static_cast<i64>(p) * kurihara_simple(n - 1, p, Star::Flat) - pm1 * pm1;
    });
    t.nu_tilde_sharp = largest_with_parity(2, ls, 0, p, [&](int n) {
        return level_weight(p, n) - static_cast<i64>(p) * kurihara_simple(n - 1, p, Star::Sharp);
    });
    return t;
}

RankBoundReport rank_bound(u64 p, const Rational& mu_s, const Rational& mu_f, i64 ls, i64 lf, const ExtRational& v) {
    if (v.is_lower_bound()) throw InvalidParams("rank_bound needs an exact ord_p(a_p)");
    RankBoundReport r;
    r.nus = nu_thresholds(p, ls, lf);
    const i64 pi = static_cast<i64>(p);
    const Rational gap = mu_s - mu_f;
    const auto exceeds = [&](const Rational& d) { return !v.is_infinite() && d > v.value(); };
    if (exceeds(gap)) {
        r.case_index = 2;
        r.nu = std::max(r.nus.nu_flat, r.nus.nu_tilde_flat);
        if (r.nu == 1) {
            r.term_a = kurihara_simple(1, p, Star::Flat) + lf;
            r.term_b = kurihara_simple(1, p, Star::Sharp) + ls;
        } else {
            r.term_a = kurihara_simple(r.nu, p, Star::Flat) + lf;
            r.term_b = pi * kurihara_simple(r.nu - 1, p, Star::Flat) - (pi - 1) * (pi - 1) + lf;
        }
    } else if (exceeds(-gap)) {
        r.case_index = 3;
        r.nu = std::max(r.nus.nu_sharp, r.nus.nu_tilde_sharp);
        r.term_b = kurihara_simple(r.nu, p, Star::Sharp) + ls;
        r.term_a = r.nu == 0 ? r.term_b : pi * kurihara_simple(r.nu - 1, p, Star::Sharp) + ls;
    } else {
        r.case_index = 1;
        r.nu = std::max(r.nus.nu_sharp, r.nus.nu_flat);
        r.term_a = kurihara_simple(r.nu, p, Star::Flat) + lf;
        r.term_b = kurihara_simple(r.nu, p, Star::Sharp) + ls;
    }
    r.bound = std::min(r.term_a, r.term_b);
    r.final_bound = r.bound;
    if (v.is_infinite()) {
        r.lambda_sum_bound = ls + lf;
        r.final_bound = std::min(r.bound, ls + lf);
    }
    return r;
}

int kurihara_k(u64 p, const Rational& v) {
    if (v <= 0) throw InvalidK("k is undefined for v <= 0");
    int k = 1;
    Rational bound = Rational(1, 2 * static_cast<i64>(p));
    while (v < bound) {
        ++k;
        bound /= static_cast<i64>(p);
    }
    return k;
}

KuriharaParams KuriharaParams::make(u64 p, const ExtRational& v, std::optional<ExtRational> v2) {
    if (!is_prime(p)) throw InvalidParams("p must be prime");
    if (v.is_lower_bound()) throw InvalidParams("v must be exact");
    if (v.is_finite() && v.value() < 0) throw InvalidParams("v must be nonnegative");
    KuriharaParams k;
    k.p = p;
    k.v = v;
    const ExtRational two_v = v.is_infinite() ? ExtRational::infinity() : ExtRational(v.value() * 2);
    k.v2 = v2.value_or(two_v);
    if (k.v2.is_lower_bound()) throw InvalidParams("v2 must be exact");
    if (v.is_finite() && k.v2.is_finite() && k.v2.value() < two_v.value())
        throw InvalidParams("v2 must lie in [2v, infinity]");
    if (v.is_infinite() && !k.v2.is_infinite()) throw InvalidParams("v2 must be infinite when v is");
    k.delta = 0;
    if (v.is_finite() && v.value() > 0) {
        k.k = kurihara_k(p, v.value());
        const Rational boundary = Rational(1, 2) / Rational(pw(p, *k.k));
        if (v.value() == boundary) {
            const Rational cap = Rational(static_cast<i64>(p) - 1) / Rational(pw(p, *k.k + 2));
            k.delta = k.v2.is_infinite() ? cap : std::min(Rational(k.v2.value() - two_v.value()), cap);
        }
    }
    return k;
}

ExtRational kurihara_general(int n, const KuriharaParams& q, Star star) {
    if (!is_sharp_or_flat(star)) throw InvalidParams("kurihara_general: star must be sharp or flat");
    if (n < 1) throw OutOfRange("kurihara_general: need n >= 1");
    const u64 p = q.p;
    const i64 pm1 = static_cast<i64>(p) - 1;
    if (q.v.is_finite() && q.v.value() == 0) return star == Star::Sharp ? ExtRational(0) : ExtRational(pm1);
    if (q.v.is_infinite()) {
        // k = 1 and delta = 0; the kv-slope branch diverges.
        const bool matches = n % 2 == 1 ? star == Star::Sharp : star == Star::Flat;
        if (!matches) return ExtRational::infinity();
        return star == Star::Sharp ? ExtRational(fl(p, n)) : ExtRational(static_cast<i64>(p) * fl(p, n - 1) + pm1);
    }
    if (!q.k || *q.k != kurihara_k(p, q.v.value())) throw InvalidParams("k is inconsistent with v");
    const int k = *q.k;
    if (n <= k) throw InvalidParams("kurihara_general needs n > k");
    const Rational w(level_weight(p, n));
    const Rational& v = q.v.value();
    const bool same = (n - k) % 2 == 0;
    const i64 pi = static_cast<i64>(p);
    if (star == Star::Sharp) {
        if (!same) return ExtRational(w * k * v + fl(p, n - k));
        return ExtRational(w * ((k - 1) * v + q.delta) + fl(p, n + 1 - k));
    }
    if (!same) return ExtRational(w * ((k - 1) * v + q.delta) + pi * fl(p, n - k) + pm1);
    return ExtRational(w * k * v + pi * fl(p, n - 1 - k) + pm1);
}

bool sporadic_check(u64 p, int k, const ExtRational& v, const ExtRational& v2, int n, const Rational& mu_s,
                    const Rational& mu_f, i64 ls, i64 lf) {
    if (!v.is_finite()) return false;
    if (v.value() == 0) return mu_s == mu_f && ls == lf + static_cast<i64>(p) - 1;
    if (k < 1 || v.value() != Rational(1, 2) / Rational(pw(p, k))) return false;
    const Rational pr(static_cast<i64>(p));
    const Rational& vv = v.value();
    if (!v2.is_finite() || v2.value() != 2 * vv * (1 + 1 / pr - 1 / (pr * pr))) return false;
    const Rational t = vv - 2 * vv / (pr * pr * pr + pr * pr);
    const Rational d = mu_s - mu_f;
    if ((n - k) % 2 != 0) return d > t || (d == t && ls > lf);
    return d < -t || (d == -t && ls <= lf);
}

namespace {

ExtRational score(u64 p, int n, const Rational& mu, i64 lambda, const ExtRational& q) {
    return q + ExtRational(Rational(level_weight(p, n)) * mu + lambda);
}

Star compare(const ExtRational& s, const ExtRational& f) {
    if (certainly_less(s, f)) return Star::Sharp;
    if (certainly_less(f, s)) return Star::Flat;
    return Star::Tie;
}

}  // namespace

ModestyDecision modesty_choose(int n, const KuriharaParams& q, const Rational& mu_s, const Rational& mu_f, i64 ls,
                               i64 lf) {
    ModestyDecision d;
    d.n = n;
    d.k = q.k;
    d.score_sharp = score(q.p, n, mu_s, ls, kurihara_general(n, q, Star::Sharp));
    d.score_flat = score(q.p, n, mu_f, lf, kurihara_general(n, q, Star::Flat));
    if (sporadic_check(q.p, q.k.value_or(0), q.v, q.v2, n, mu_s, mu_f, ls, lf)) {
        d.star = Star::Sporadic;
        return d;
    }
    d.star = compare(d.score_sharp, d.score_flat);
    return d;
}

namespace {

ExtRational elliptic_q(const ExtRational& v, int n, u64 p, Star star) {
    const i64 q = kurihara_simple(n, p, star);
    if (v.is_infinite() || v.value() >= 1) return ExtRational(q);
    return ExtRational(v.value() * q);
}

}  // namespace

ModestyDecision elliptic_table_choose(const ExtRational& v, int n, const Rational& mu_s, const Rational& mu_f, i64 ls,
                                      i64 lf, u64 p) {
    if (v.is_lower_bound() || (v.is_finite() && v.value() < 0)) throw InvalidParams("v must be exact and >= 0");
    ModestyDecision d;
    d.n = n;
    d.score_sharp = score(p, n, mu_s, ls, elliptic_q(v, n, p, Star::Sharp));
    d.score_flat = score(p, n, mu_f, lf, elliptic_q(v, n, p, Star::Flat));
    const Star by_parity = n % 2 == 1 ? Star::Sharp : Star::Flat;
    if (v.is_infinite()) {
        d.star = by_parity;
    } else if (mu_s < mu_f) {
        d.star = Star::Sharp;
    } else if (mu_f < mu_s) {
        d.star = Star::Flat;
    } else if (v.value() > 0) {
        d.star = by_parity;
    } else {
        const i64 lf_prime = lf + static_cast<i64>(p) - 1;
        if (ls == lf_prime) throw ExcludedCase("v = 0, equal mu and lambda_sharp = lambda_flat + p - 1");
        d.star = ls < lf_prime ? Star::Sharp : Star::Flat;
    }
    return d;
}

ShaGrowthReport sha_growth(u64 p, int n_lo, int n_hi, const std::vector<ShaRecord>& records, i64 r_inf) {
    if (n_lo < 1 || n_hi < n_lo) throw OutOfRange("sha_growth: need 1 <= n_lo <= n_hi");
    ShaGrowthReport rep;
    rep.p = p;
    rep.r_inf = r_inf;
    for (int n = n_lo; n <= n_hi; ++n) {
        ShaGrowthStep step;
        step.n = n;
        ExtRational total(0);
        for (std::size_t idx = 0; idx < records.size(); ++idx) {
            const ShaRecord& rec = records[idx];
            ExtRational term;
            Star star;
            if (rec.ordinary) {
                star = Star::Natural;
                term = score(p, n, rec.mu_natural, rec.lambda_natural, ExtRational(0));
            } else {
                const KuriharaParams q = KuriharaParams::make(p, rec.v, rec.v2);
                const ModestyDecision d = modesty_choose(n, q, rec.mu_sharp, rec.mu_flat, rec.lambda_sharp,
                                                         rec.lambda_flat);
                star = d.star;
                const std::string at = " at n = " + std::to_string(n) + " for record " + std::to_string(idx);
                if (star == Star::Sporadic) {
                    const bool ordinary_fallback = rec.v.is_finite() && rec.v.value() == 0 && rec.has_natural;
                    if (!ordinary_fallback) throw SporadicCase("sporadic case" + at);
                    star = Star::Natural;
                    term = score(p, n, rec.mu_natural, rec.lambda_natural, ExtRational(0));
                } else if (star == Star::Tie) {
                    throw TieCase("modesty tie" + at);
                } else {
                    term = star == Star::Sharp ? d.score_sharp : d.score_flat;
                }
            }
            step.stars.push_back(star);
            step.terms.push_back(term);
            total = total + term;
        }
        step.increment = total + ExtRational(-r_inf);
        rep.steps.push_back(std::move(step));
    }
    return rep;
}

ShaGrowthReport sha_growth_elliptic(u64 p, int n_lo, int n_hi, const ExtRational& v, const Rational& mu_s,
                                    const Rational& mu_f, i64 ls, i64 lf, i64 r_inf) {
    if (n_lo < 1 || n_hi < n_lo) throw OutOfRange("sha_growth_elliptic: need 1 <= n_lo <= n_hi");
    ShaGrowthReport rep;
    rep.p = p;
    rep.r_inf = r_inf;
    for (int n = n_lo; n <= n_hi; ++n) {
        const ModestyDecision d = elliptic_table_choose(v, n, mu_s, mu_f, ls, lf, p);
        ShaGrowthStep step;
        step.n = n;
        step.stars.push_back(d.star);
        const ExtRational term = d.star == Star::Sharp ? d.score_sharp : d.score_flat;
        step.terms.push_back(term);
        step.increment = term + ExtRational(-r_inf);
        rep.steps.push_back(std::move(step));
    }
    return rep;
}

std::vector<ModestyRecord> modesty_map(const ModestyGrid& grid, u64 p) {
    std::vector<ModestyRecord> out;
    for (const ExtRational& v : grid.v_values) {
        const KuriharaParams q = KuriharaParams::make(p, v, grid.v2 ? grid.v2 : std::nullopt);
        const int k = q.k.value_or(0);
        for (const Rational& gap : grid.mu_gaps) {
            const Rational mu_s = gap > 0 ? gap : Rational(0);
            const Rational mu_f = gap < 0 ? Rational(-gap) : Rational(0);
            for (int base : {grid.n_odd, grid.n_even}) {
                int n = base;
                while (n <= k) n += 2;  // kurihara_general needs n > k
                const ModestyDecision d = modesty_choose(n, q, mu_s, mu_f, grid.lambda_sharp, grid.lambda_flat);
                out.push_back({v, gap, n % 2, d.star});
            }
        }
    }
    return out;
}

std::string modesty_csv(const std::vector<ModestyRecord>& records) {
    std::ostringstream os;
    os << "v,mu_gap,n_parity,star\n";
    for (const ModestyRecord& r : records)
        os << r.v.str() << ',' << to_string(r.mu_gap) << ',' << (r.n_parity ? "odd" : "even") << ','
           << star_name(r.star) << '\n';
    return os.str();
}

}  // namespace iwt
