#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "iwt/logmatrix.hpp"
#include "iwt/mazur_tate.hpp"

namespace iwt {

// Level-n approximation (sharp, flat) with
// (Theta_n, nu Theta_{n-1}) = (sharp, flat) C_1...C_n A~^{-1}
// (C_i hatted or not).
struct SharpFlatApprox {
    int n = 0;
    int tame = 0;
    LambdaElement sharp;
    LambdaElement flat;
    bool hatted = false;
    MatrixParams params;
};

SharpFlatApprox decompose_pair(const LambdaPair& pair, const MatrixParams& params, bool hatted, int tame = 0);
// Needs n >= 1; nu Theta_{n-1} is formed with lift_nu.
SharpFlatApprox decompose(const LambdaElement& theta_n, const LambdaElement& theta_prev, const MatrixParams& params,
                          bool hatted, int tame = 0);
SharpFlatApprox decompose_queue(const QueueSequence& q, int n, bool hatted);

LambdaPair recompose(const SharpFlatApprox& approx);

// (Theta_n, nu Theta_{n-1}) for a queue at level n >= 1.
LambdaPair theta_pair(const QueueSequence& q, int n);

struct StabilizedInvariants {
    IwasawaInvariants sharp;
    IwasawaInvariants flat;
    int level = 0;
    // Set when ord_p(a_p) = 0: only the class modulo the kernel is intrinsic.
    bool ordinary = false;
};

// Invariants at the top level; stable iff the top two levels agree and
// lambda < p^n - p^{n-1}. Throws Unstable for fewer than two levels.
StabilizedInvariants stabilized_invariants(const std::vector<SharpFlatApprox>& approxes);

struct VanishingReport {
    std::map<int, int> orders;  // m -> common vanishing order at zeta_{p^m}
    i64 partial_rank = 0;       // sum_m (p^m - p^{m-1}) * order (weight 1 at m = 0)
};

VanishingReport vector_vanishing_orders(const SharpFlatApprox& approx, int m_lo, int m_hi);

// (sharp, flat) C_1 ... C_n with un-hatted factors.
LambdaPair vanishing_vector(const SharpFlatApprox& approx);

struct SpecialValueCheck {
    PadicInt sharp_at_zero, flat_at_zero;
    PadicInt table_sharp, table_flat;  // table entries times L(f,1)/Omega^+
    int sign = 0;                      // +1 / -1 when the pair matches +/- the table, 0 otherwise
};

// T = 0 comparison for odd p, tame index 0, against (-a^2+2a+p-1) L/Omega and
// (2-a) L/Omega.
SpecialValueCheck special_value_check(const SharpFlatApprox& approx, const Rational& l_over_omega);

}  // namespace iwt
