#pragma once

// The valuation lower-bound functions of the two main theorems and the
// endpoint proposition, the exhaustive cell verifier, and the F = Q
// level-group / global-assembly computations.

#include "wnf/whittaker.hpp"

#include <map>

namespace wnf {

// Endpoint bound (l in {0, c(pi)}); nu_abs = |val_p(q^{c1})| (Type 3 only).
Rat bound_endpoint(const RepDescriptor& pi, const Rat& nu_abs);

// Interior bound (1 <= l <= c(pi)-1).  nu_signed feeds both |nu| and the
// sign test on val_p(eps(1/2,pi)) in the corrected Type 3a clauses.
Rat bound_theorem(const RepDescriptor& pi, long t, int l, const Rat& nu_signed,
                  int iso = 0);

enum class SweepMode { exact, formal };

struct SweepConfig {
    long p = 3;
    int f = 1;
    std::vector<RepType> types{RepType::Supercuspidal, RepType::SteinbergTwist,
                               RepType::PrincipalSeries3a, RepType::PrincipalSeries3b};
    int cond_min = 2;
    int cond_max = 2;
    long t_margin = 6;   // t in [-(c(pi)+t_margin), t_max]
    long t_max = 4;
    int reps_per_family = 2;
    SweepMode mode = SweepMode::exact;
    long spec_r = 1;     // exact mode: X -> zeta_r
    Rat nu = 0;          // formal mode: signed val_p(X)
    long char_cap = 100000;
    int iso = 0;
    int jobs = 1;  // accepted and validated; evaluation is deterministic
};

struct CellResult {
    std::string type;
    long p;
    int f;
    int cpi;
    int rep_index;
    long t;
    int l;
    long v_index;
    ValRat valuation;    // exact, or certified lower bound in formal mode
    bool val_is_exact;
    Rat bound;
    bool violated;
    bool endpoint;       // bound taken from the endpoint proposition
};

struct VerificationReport {
    SweepConfig config;
    std::vector<CellResult> rows;
    long cells = 0;
    long nonzero_cells = 0;
    long violations = 0;
    std::map<std::string, Rat> min_gap_by_clause;  // finite-valuation cells only
    std::string csv() const;
    std::string json(bool include_rows = false) const;
};

VerificationReport verify_bounds(const SweepConfig& cfg);

// ---- F = Q specialisation (level groups, cusps, global assembly) -------

// N' with Q(f)(zeta_{N'}) containing the coefficients at the cusp: N/(cd, N).
long cusp_field_conductor(long N, long c, long d);

// sigma a(alpha) sigma^{-1} in K_p(p^{n_p}) for sigma = (a, b; L, d) in SL_2(Z):
// decided by the (2,1)-entry congruence d L (alpha - 1) = 0 mod p^{n_p}.
bool twist_in_level_group(long a, long b, long L, long d, const Int& alpha,
                          long p, int n_p);

struct GlobalBound {
    bool applicable = false;  // p | N
    Rat value = 0;
    long minimizer_u = 0;
    Rat delta_val = 0;        // val_p(N L M / gcd(N, LM, L^2))
};

// -(k/2) val_p(delta(c)) + min_u { k u / 2 + local bound at
//   t = u - max{val_p N, val_p L + val_p M, 2 val_p L}, l = val_p L }.
// Assumes the prime-to-level coefficient val_p(a(n_0)) >= 0 (integrality of
// newform coefficients); the assembly never verifies that input assumption.
GlobalBound global_cusp_valuation_bound(long k, long N, long L, long M, long p,
                                        const RepDescriptor& pi,
                                        const Rat& nu_signed, int iso = 0,
                                        long u_max = 20);

}  // namespace wnf
