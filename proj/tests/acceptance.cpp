// Acceptance suite: one pass/fail line per criterion, exact arithmetic
// throughout, desk scale.  Exit status is the number of failed criteria.

#include "wnf/bounds.hpp"

#include <chrono>
#include <iostream>
#include <sstream>
#include <vector>

using namespace wnf;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    long seconds() const {
        return std::chrono::duration_cast<std::chrono::seconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

int failures = 0;

void verdict(int idx, const std::string& name, bool ok, const std::string& detail,
             long secs) {
    std::cout << "criterion " << idx << " [" << name << "]: "
              << (ok ? "PASS" : "FAIL") << " -- " << detail << " (" << secs << " s)"
              << std::endl;
    if (!ok) ++failures;
}

const std::vector<std::pair<long, int>> kFields{{3, 1}, {5, 1}, {7, 1}, {3, 2}};

std::vector<RepDescriptor> sample_family(const std::shared_ptr<const LocalField>& F,
                                         int cpi, RepType type, int take) {
    auto family = RepDescriptor::enumerate(F, cpi, type, 1000000);
    if ((int)family.size() > take)
        family.erase(family.begin() + take, family.end());
    return family;
}

int family_budget(long p, int f, int cpi) {
    if (f == 2 && cpi >= 4) return 1;  // the quartic-extension epsilon table is costly
    if (p == 7 && cpi >= 4) return 1;
    return 2;
}

// ---- criterion 1: closed-form/brute-force Gauss sum equivalence ----------

void criterion1() {
    Timer tm;
    long checked = 0, mismatches = 0;
    for (auto [p, f] : kFields) {
        auto F = LocalField::get(p, f);
        for (auto& chi : MultChar::enumerate(F, 3, 1000000)) {
            for (long v = -4; v <= 1; ++v) {
                auto x = frac_one(F, v, (int)std::max<long>(1, -v));
                ++checked;
                if (!(gauss_closed(chi, x) == gauss_bruteforce(chi, x, 1000000)))
                    ++mismatches;
            }
            // one non-trivial unit part exercises the chi(x^{-1}) factor
            if (chi.conductor() >= 1) {
                auto xu = frac(F, -chi.conductor(),
                               F->unit_from_int(2, chi.conductor()));
                ++checked;
                if (!(gauss_closed(chi, xu) == gauss_bruteforce(chi, xu, 1000000)))
                    ++mismatches;
            }
        }
    }
    std::ostringstream d;
    d << checked << " (chi, x) pairs over p in {3,5,7} f=1 and (3,2), "
      << mismatches << " mismatches";
    verdict(1, "gauss oracle equivalence", mismatches == 0, d.str(), tm.seconds());
}

// ---- criterion 2: epsilon identities --------------------------------------

void criterion2() {
    Timer tm;
    long checked = 0, bad = 0, digits = 0;
    for (auto [p, f] : kFields) {
        auto F = LocalField::get(p, f);
        auto minus1 = F->uneg(F->unit_one(3));
        for (auto& chi : MultChar::enumerate(F, 3, 1000000)) {
            if (chi.conductor() == 0) continue;
            ++checked;
            const auto& e = epsilon_gl1(chi);
            const auto& ei = epsilon_gl1(chi.inverse());
            if (!(e.value * ei.value == chi.eval(minus1))) ++bad;
            if (!check_l1(chi).ok) ++bad;
            if (!check_l1(chi, 1).ok) ++bad;  // second pinned isomorphism
            if (f == 1 && chi.conductor() == 1) {
                ++digits;
                if (!e.s_invariant || *e.s_invariant != digit_oracle_s(chi)) ++bad;
                if (digit_oracle_s(chi, 1) !=
                    (epsilon_gl1(chi, 1).s_invariant ? *epsilon_gl1(chi, 1).s_invariant
                                                     : -1))
                    ++bad;
            }
        }
    }
    std::ostringstream d;
    d << checked << " ramified characters (product identity, valuation law for "
      << "both pinned isomorphisms, " << digits << " digit-oracle cross-checks), "
      << bad << " failures";
    verdict(2, "epsilon identities", bad == 0, d.str(), tm.seconds());
}

// ---- criterion 3: Atkin-Lehner -------------------------------------------

void criterion3() {
    Timer tm;
    long exact_cells = 0, type1_cells = 0, bad = 0, spec_checks = 0;
    for (auto [p, f] : kFields) {
        auto F = LocalField::get(p, f);
        for (int cpi = 2; cpi <= 4; ++cpi) {
            for (auto type : {RepType::SteinbergTwist, RepType::PrincipalSeries3a,
                              RepType::PrincipalSeries3b, RepType::Supercuspidal}) {
                for (auto& pi :
                     sample_family(F, cpi, type, family_budget(p, f, cpi))) {
                    int n = pi.conductor();
                    int lvl = n + 12;
                    for (int l = 0; l <= n; ++l) {
                        auto tr = F->transversal(std::max(1, std::min(l, n - l)), lvl);
                        for (long t = -(n + 6); t <= 4; ++t) {
                            for (size_t vi = 0; vi < tr.size(); ++vi) {
                                auto rep = atkin_lehner_check(
                                    pi, make_cell(pi, t, l, tr[vi]));
                                if (type == RepType::Supercuspidal) {
                                    ++type1_cells;
                                    if (rep.exact) ++bad;  // must use conjugate-pair mode
                                } else {
                                    ++exact_cells;
                                    if (!rep.exact) ++bad;
                                }
                                if (!rep.ok) ++bad;
                                // specialisations are implied by Laurent equality;
                                // spot-check them explicitly on a thin subsample
                                if (!rep.exact || vi != 0 || t % 3 != 0) continue;
                                for (long r : {1L, 2L, 4L}) {
                                    ++spec_checks;
                                    auto zr = CycloNumber::root_of_unity(r, 1);
                                    auto lhs = whittaker_value(pi.contragredient(),
                                                               make_cell(pi, t, l, tr[vi]))
                                                   .specialize(zr);
                                    CellPoint partner{t + 2 * l - n, n - l,
                                                      F->uneg(tr[vi]), n};
                                    AdditiveChar psi{F};
                                    auto phase = psi_eval(
                                        psi, frac(F, t + l, F->uneg(F->uinv(tr[vi]))));
                                    auto rhs = (pi.eps() * whittaker_value(pi, partner))
                                                   .scaled(pi.omega().eval(tr[vi]) * phase)
                                                   .specialize(zr);
                                    if (!(lhs == rhs)) ++bad;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    std::ostringstream d;
    d << exact_cells << " exact Laurent cells (types 2a/3a/3b, c(pi) <= 4), "
      << spec_checks << " zeta_r specialisation spot-checks, " << type1_cells
      << " Type 1 conjugate-pair cells, " << bad << " failures";
    verdict(3, "atkin-lehner relation", bad == 0, d.str(), tm.seconds());
}

// ---- criterion 4: bound verification (headline) ---------------------------

Rat type1_corrected_bound(const RepDescriptor& pi, int l) {
    // proof-derived Type 1 clause for c(pi) > 2: the stated clause drops the
    // chi-trivial case at l = 1 and the conductor-drop case at l = c(pi)/2
    long f = pi.field()->f();
    long p = pi.field()->p();
    int cp = pi.conductor();
    if (l <= 1) return Rat(0);
    Rat b = Rat(2 - l, 2) * f;
    if (2 * l == cp) b += -Rat(f) + Rat(1, p - 1);
    return b;
}

// The bound the generalised functional relation transports from the mirror
// cell: val W_pi(T, L) >= bound_{contragredient}(T + 2L - n, n - L) minus
// val eps(1/2, pi).  The stated clause collapses this incorrectly for the
// asymmetric principal-series families.
Rat reflected_bound(const RepDescriptor& pi, long T, int L, const Rat& nu_signed,
                    int iso) {
    int n = pi.conductor();
    long Tt = T + 2 * L - n;
    int Lt = n - L;
    auto pit = pi.contragredient();
    Rat nu_abs = nu_signed < 0 ? -nu_signed : nu_signed;
    Rat b = (Lt == 0 || Lt == n) ? bound_endpoint(pit, nu_abs)
                                 : bound_theorem(pit, Tt, Lt, nu_signed, iso);
    return b - pi.eps_valuation(nu_signed, iso);
}

void criterion4() {
    Timer tm;
    long cells = 0, other_violations = 0;
    long t1_defect = 0, ps_defect = 0;       // stated-clause defects, classified
    long t1_corr_bad = 0, ps_corr_bad = 0;   // corrected-clause failures
    long formal_cells = 0, formal_defect = 0, formal_other = 0;
    bool tightness = false;

    for (auto [p, f] : kFields) {
        auto F = LocalField::get(p, f);
        for (int cpi = 2; cpi <= 4; ++cpi) {
            SweepConfig cfg;
            cfg.p = p;
            cfg.f = f;
            cfg.cond_min = cfg.cond_max = cpi;
            cfg.reps_per_family = family_budget(p, f, cpi);

            std::map<std::string, std::vector<RepDescriptor>> fam;
            for (auto ty : cfg.types) {
                auto fs = sample_family(F, cpi, ty, cfg.reps_per_family);
                if (!fs.empty()) fam[fs.front().name()] = fs;
            }
            auto pi_of = [&](const CellResult& row) -> const RepDescriptor& {
                return fam.at(row.type)[row.rep_index];
            };

            auto report = verify_bounds(cfg);
            cells += report.cells;
            for (auto& row : report.rows) {
                bool interior = !row.endpoint;
                bool ps = row.type == "3a" || row.type == "3b";
                Rat refl = 0;
                if (interior && cpi > 2 && (ps || row.type == "1"))
                    refl = reflected_bound(pi_of(row), row.t, row.l, Rat(0), 0);
                if (row.violated) {
                    if (row.type == "1" && interior && cpi > 2)
                        ++t1_defect;
                    else if (ps && interior && cpi > 2 && !row.valuation.infinite &&
                             row.valuation.value >= refl)
                        ++ps_defect;
                    else
                        ++other_violations;
                }
                if (!row.valuation.infinite && interior && cpi > 2) {
                    if (row.type == "1" &&
                        row.valuation.value < type1_corrected_bound(pi_of(row), row.l))
                        ++t1_corr_bad;
                    if (ps) {
                        Rat corrected = row.bound < refl ? row.bound : refl;
                        if (row.valuation.value < corrected) ++ps_corr_bad;
                    }
                }
            }
            if (p == 3 && f == 1 && cpi == 2) {
                auto it = report.min_gap_by_clause.find("2a/c2/interior");
                tightness = (it != report.min_gap_by_clause.end() && it->second == 0);
            }

            // formal-nu lower-bound sweeps for the principal-series types
            for (const char* nus : {"0", "1/4", "-1/4", "1/2", "-1/2", "3/2", "-3/2"}) {
                SweepConfig fc = cfg;
                fc.types = {RepType::PrincipalSeries3a, RepType::PrincipalSeries3b};
                fc.reps_per_family = 1;
                fc.mode = SweepMode::formal;
                fc.nu = rat_parse(nus);
                auto fr = verify_bounds(fc);
                formal_cells += fr.cells;
                for (auto& row : fr.rows) {
                    if (!row.violated) continue;
                    bool rescued = false;
                    if (!row.endpoint && cpi > 2 && !row.valuation.infinite) {
                        Rat refl =
                            reflected_bound(pi_of(row), row.t, row.l, fc.nu, 0);
                        rescued = row.valuation.value >= refl;
                    }
                    if (rescued)
                        ++formal_defect;
                    else
                        ++formal_other;
                }
            }
        }
    }

    std::ostringstream d;
    d << cells << " exact cells + " << formal_cells << " formal-nu cells; "
      << other_violations + formal_other
      << " violations outside the two defective stated clauses; tightness gap 0 at "
         "(2a, Q_3, c=2, t=-2): "
      << (tightness ? "yes" : "NO") << "; stated-clause defects found: Type 1 c>2 "
      << t1_defect << " cells, asymmetric principal series c>2 " << ps_defect
      << " exact + " << formal_defect
      << " formal cells (each rescued by the functional-equation-transported "
         "bound); corrected-clause failures: "
      << t1_corr_bad + ps_corr_bad;
    bool clean = other_violations == 0 && formal_other == 0 && tightness &&
                 t1_corr_bad == 0 && ps_corr_bad == 0;
    bool stated_ok = t1_defect == 0 && ps_defect == 0 && formal_defect == 0;
    verdict(4, "valuation bounds", clean && stated_ok, d.str(), tm.seconds());
    if (clean && !stated_ok)
        std::cout << "    note: every violation is an exact counterexample to the "
                     "stated form of two clauses (supercuspidal c>2; asymmetric "
                     "principal series c>2 at the mirror cells), reproducing what "
                     "the case analyses actually establish; all other clauses and "
                     "both corrected clauses verify with zero counterexamples"
                  << std::endl;
}

// ---- criterion 5: Fourier inversion ---------------------------------------

void criterion5() {
    Timer tm;
    long recovered = 0, bad = 0;
    for (auto [p, f] : kFields) {
        auto F = LocalField::get(p, f);
        for (int cpi = 2; cpi <= 3; ++cpi) {
            for (auto type : {RepType::SteinbergTwist, RepType::PrincipalSeries3a,
                              RepType::PrincipalSeries3b, RepType::Supercuspidal}) {
                for (auto& pi : sample_family(F, cpi, type, 1)) {
                    int n = pi.conductor();
                    for (int l = 1; l <= std::min(n - 1, 2); ++l) {
                        auto units = F->all_units(l);
                        for (long t = -(n + 4); t <= 2; ++t) {
                            std::vector<CycloLaurent> Ws;
                            Ws.reserve(units.size());
                            for (auto& u : units)
                                Ws.push_back(whittaker_value(
                                    pi, make_cell(pi, t, l, F->ulift(u, n + 6))));
                            for (auto& chi : MultChar::enumerate(F, l)) {
                                CycloLaurent rec;
                                for (size_t ui = 0; ui < units.size(); ++ui)
                                    rec = rec +
                                          Ws[ui].scaled(chi.inverse().eval(units[ui]));
                                rec = rec.scaled(CycloNumber::rational(
                                    Rat(1, (long)units.size())));
                                ++recovered;
                                if (!(rec == c_tl(pi, chi, t, l))) ++bad;
                            }
                        }
                    }
                }
            }
        }
    }
    std::ostringstream d;
    d << recovered << " coefficients recovered from synthesised values, " << bad
      << " mismatches";
    verdict(5, "fourier inversion", bad == 0, d.str(), tm.seconds());
}

// ---- criterion 6: Galois equivariance --------------------------------------

void criterion6() {
    Timer tm;
    long checks = 0, bad = 0, fixed_checks = 0;
    for (long p : {3L, 5L}) {
        auto F = LocalField::get(p, 1);
        auto v = F->unit_from_int(2, 12);
        for (auto type : {RepType::Supercuspidal, RepType::SteinbergTwist,
                          RepType::PrincipalSeries3a, RepType::PrincipalSeries3b}) {
            for (auto& pi : sample_family(F, 2, type, 2)) {
                for (long a : {1L, 2L, -1L})
                    for (long t = -6; t <= 2; ++t)
                        for (int l = 0; l <= 2; ++l) {
                            ++checks;
                            if (!galois_act_check(pi, make_cell(pi, t, l, v), a)) ++bad;
                        }
                // the fixed-field mechanism: alpha = 1 mod p^n fixes the value
                long m_tame =
                    lcm_long(lcm_long(F->q() - 1, F->q() * F->q() - 1), 4);
                long pS = 1;
                for (int i = 0; i < 12; ++i) pS *= p;
                long pn = 1;
                for (int i = 0; i < pi.conductor(); ++i) pn *= p;
                Int M = Int(m_tame) * pS;
                Int b = Int(1 + pn) * m_tame % M * inv_mod(mod_pos(m_tame, pS), pS) % M;
                b = (b + Int(pS) * inv_mod(mod_pos(pS, m_tame), m_tame)) % M;
                long bl = b.convert_to<long>();
                for (long t = -5; t <= 0; ++t)
                    for (int l = 0; l <= 2; ++l) {
                        auto W = whittaker_value(pi, make_cell(pi, t, l, v));
                        ++fixed_checks;
                        if (!(galois_apply(bl, W) == W)) ++bad;
                    }
            }
        }
    }
    std::ostringstream d;
    d << checks << " equivariance checks (a in {1,2,-1}, all four types, c(pi)=2) and "
      << fixed_checks << " fixed-value checks for alpha = 1 mod p^n, " << bad
      << " failures";
    verdict(6, "galois equivariance", bad == 0, d.str(), tm.seconds());
}

// ---- criterion 7: cell decomposition ---------------------------------------

struct Rng {
    unsigned long s = 0x853c49e6748fea9bull;
    long next(long n) {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return (long)(s % (unsigned long)n);
    }
};

void criterion7() {
    Timer tm;
    auto F = LocalField::get(3, 1);
    int n = 2, lvl = 12;
    Rng rng;
    long bad = 0, built = 0, grid = 0;

    auto random_k = [&](void) {
        Mat2 low{PElt{false, 0, F->unit_one(lvl)}, PElt::zero_elt(),
                 PElt{false, n + rng.next(3), F->unit_from_int(1 + rng.next(2), lvl)},
                 PElt{false, 0, F->unit_one(lvl)}};
        Mat2 up{PElt{false, 0, F->unit_one(lvl)},
                PElt{false, rng.next(4), F->unit_from_int(1 + rng.next(2), lvl)},
                PElt::zero_elt(), PElt{false, 0, F->unit_one(lvl)}};
        Mat2 di{padd(F, PElt{false, 0, F->unit_one(lvl)},
                     PElt{false, n + rng.next(2), F->unit_from_int(1 + rng.next(2), lvl)}),
                PElt::zero_elt(), PElt::zero_elt(),
                PElt{false, 0, F->unit_from_int(1 + rng.next(2), lvl)}};
        return mat_mul(F, mat_mul(F, low, up), di);
    };

    // 500 pseudo-random matrices from random cells and witnesses
    for (int trial = 0; trial < 500; ++trial) {
        long t = rng.next(9) - 5;
        int l = (int)rng.next(n + 1);
        auto tr = F->transversal(std::max(1, std::min(l, n - l)), lvl);
        auto v = tr[rng.next((long)tr.size())];
        PElt z{false, rng.next(7) - 3, F->unit_from_int(1 + rng.next(2), lvl)};
        PElt x = rng.next(4) == 0 ? PElt::zero_elt()
                                  : PElt{false, rng.next(8) - 4,
                                         F->unit_from_int(1 + rng.next(2), lvl)};
        Mat2 zn{z, pmul(F, z, x), PElt::zero_elt(), z};
        Mat2 g = mat_mul(F, mat_mul(F, zn, cell_matrix(F, t, l, v)), random_k());
        ++built;
        auto d = decompose_gl2(F, g, n);
        bool ok = d.t == t && d.l == l && in_cell(F, g, d, n);
        int j = std::min(l, n - l);
        if (ok && j >= 1) ok = F->ureduce(d.v, j) == F->ureduce(v, j);
        if (!ok) ++bad;
    }

    // exhaustive grid: the candidate set (t, l, v-class) maps injectively
    for (long t = -5; t <= 4; ++t)
        for (int l = 0; l <= n; ++l) {
            auto tr = F->transversal(std::max(1, std::min(l, n - l)), lvl);
            for (auto& v : tr)
                for (int rep = 0; rep < 3; ++rep) {
                    ++grid;
                    Mat2 g = mat_mul(F, cell_matrix(F, t, l, v), random_k());
                    auto d = decompose_gl2(F, g, n);
                    int j = std::min(l, n - l);
                    bool ok = d.t == t && d.l == l && in_cell(F, g, d, n) &&
                              (j < 1 || F->ureduce(d.v, j) == F->ureduce(v, j));
                    if (!ok) ++bad;
                }
        }

    std::ostringstream d;
    d << built << " random matrices and " << grid
      << " grid round-trips over Q_3 at n = 2, " << bad << " failures";
    verdict(7, "cell decomposition", bad == 0, d.str(), tm.seconds());
}

// ---- criterion 8: global assembly ------------------------------------------

void criterion8() {
    Timer tm;
    long bad = 0;
    auto F = LocalField::get(3, 1);
    MultChar mu(F, 1, {1});
    auto st = RepDescriptor::steinberg_twist(mu);
    for (long k : {4L, 6L, 8L, 12L}) {
        auto gb = global_cusp_valuation_bound(k, 9, 3, 3, 3, st, Rat(0));
        if (!gb.applicable || gb.minimizer_u != 0) ++bad;
        if (gb.value != -Rat(k, 2) * gb.delta_val - 1 + Rat(1, 2)) ++bad;
    }
    if (global_cusp_valuation_bound(4, 25, 5, 5, 3, st, Rat(0)).applicable) ++bad;

    // ten (N, c, d) triples for N' = N/(cd, N)
    struct Row {
        long N, c, d, expect;
    };
    const Row rows[] = {{12, 2, 1, 6},  {9, 3, 1, 3},    {9, 3, 2, 3},
                        {16, 4, 2, 2},  {15, 15, 2, 1},  {7, 1, 1, 7},
                        {45, 6, 1, 15}, {100, 10, 3, 10}, {36, 4, 3, 3},
                        {11, 22, 1, 1}};
    for (auto& r : rows)
        if (cusp_field_conductor(r.N, r.c, r.d) != r.expect) ++bad;

    // level-group membership mechanics
    if (!twist_in_level_group(1, 0, 3, 1, Int(10), 3, 2)) ++bad;   // alpha = 1 mod 9
    if (!twist_in_level_group(1, 0, 3, 1, Int(4), 3, 2)) ++bad;    // dL(alpha-1) = 9
    if (twist_in_level_group(1, 0, 3, 1, Int(2), 3, 2)) ++bad;     // val_3 = 1 only
    if (!twist_in_level_group(2, 1, 3, 2, Int(1), 3, 2)) ++bad;    // alpha = 1

    std::ostringstream d;
    d << "worked Type 2a assembly bound for k in {4,6,8,12}, ten cusp-field "
         "conductors, level-group membership; "
      << bad << " failures";
    verdict(8, "global assembly", bad == 0, d.str(), tm.seconds());
}

}  // namespace

int main() {
    Timer total;
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : "CRITERIA FAILED") << " ("
              << failures << " failed, total " << total.seconds() << " s)"
              << std::endl;
    return failures;
}
