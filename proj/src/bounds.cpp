#include "wnf/bounds.hpp"

#include <algorithm>
#include <sstream>

namespace wnf {

namespace {

Rat rmin(const Rat& a, const Rat& b) { return a < b ? a : b; }

}  // namespace

Rat bound_endpoint(const RepDescriptor& pi, const Rat& nu_abs) {
    long f = pi.field()->f();
    int cp = pi.conductor();
    if (cp == 2) return Rat(-f);
    switch (pi.type()) {
        case RepType::Supercuspidal:
        case RepType::SteinbergTwist:
        case RepType::PrincipalSeries3b:
            return Rat(0);
        case RepType::PrincipalSeries3a: {
            int c1 = pi.beta1().conductor(), c2 = pi.beta2().conductor();
            if (c1 > 1 && c2 > 1) return -Rat(std::abs(c1 - c2)) * nu_abs;
            int cj = std::max(c1, c2);  // the factor with conductor > 1
            return -Rat(std::abs(cj - 1)) * nu_abs - Rat(f, 2);
        }
    }
    return Rat(0);
}

Rat bound_theorem(const RepDescriptor& pi, long t, int l, const Rat& nu_signed,
                  int iso) {
    long f = pi.field()->f();
    long p = pi.field()->p();
    int cp = pi.conductor();
    Rat nu_abs = nu_signed < 0 ? -nu_signed : nu_signed;
    Rat inv_p1 = Rat(1, p - 1);

    if (cp == 2) {
        switch (pi.type()) {
            case RepType::Supercuspidal:
                return Rat(-f);
            case RepType::SteinbergTwist:
                return -Rat(t + 3) * f + inv_p1;
            case RepType::PrincipalSeries3a:
                return -Rat(t + 4, 2) * f + 2 * inv_p1 - Rat(t + 2) * nu_abs;
            case RepType::PrincipalSeries3b:
                return -Rat(t + 4, 2) * f + inv_p1 - Rat(t + 2) * nu_abs;
        }
    }
    switch (pi.type()) {
        case RepType::Supercuspidal:
            return Rat(2 - l, 2) * f;
        case RepType::SteinbergTwist: {
            long cmu = pi.mu().conductor();
            return rmin(-Rat(cp, 2) * f + 2 * inv_p1,
                        -(Rat(2 + t) + Rat(cmu, 2)) * f);
        }
        case RepType::PrincipalSeries3a: {
            int c1 = pi.beta1().conductor(), c2 = pi.beta2().conductor();
            int cij = (pi.beta1().inverse() * pi.beta2()).conductor();
            Rat eps_v = pi.eps_valuation(nu_signed, iso);
            if (c1 > 1 && c2 > 1) {
                Rat A = -Rat(cp, 2) * f + rmin(inv_p1, Rat(f) - Rat(cp) * nu_abs);
                Rat B = -Rat(t + c1 + 1 + cij, 2) * f + inv_p1 -
                        Rat(t + cij + 1) * nu_abs;
                Rat corr = (eps_v > 0) ? -Rat(std::abs(c1 - c2)) * nu_abs : Rat(0);
                return rmin(A, B) + corr;
            }
            Rat A = -Rat(cp, 2) * f + 2 * inv_p1;
            Rat B = -Rat(f, 2) + inv_p1 - Rat(cp - 2) * nu_abs;
            Rat C = -Rat(t + 3 + cij, 2) * f + 2 * inv_p1 - Rat(t + cij + 1) * nu_abs;
            Rat corr = (eps_v > 0) ? (-Rat(cp - 2) * nu_abs - Rat(f, 2)) : Rat(0);
            return rmin(rmin(A, B), C) + corr;
        }
        case RepType::PrincipalSeries3b: {
            int cb = pi.beta1().conductor();
            return rmin(-Rat(cp) * Rat(f) / 2 + 2 * inv_p1,
                        -Rat(t + cb + 2, 2) * f - Rat(t + 2) * nu_abs);
        }
    }
    throw std::logic_error("bound_theorem: unhandled type");
}

VerificationReport verify_bounds(const SweepConfig& cfg) {
    if (cfg.jobs < 1) throw std::invalid_argument("verify_bounds: jobs must be >= 1");
    if (cfg.cond_max > 8) throw std::invalid_argument("verify_bounds: conductor cap is 8");
    VerificationReport rep;
    rep.config = cfg;
    auto F = LocalField::get(cfg.p, cfg.f);
    CycloNumber zr = CycloNumber::root_of_unity(cfg.spec_r, 1);
    bool exact_mode = cfg.mode == SweepMode::exact;
    Rat nu_signed = exact_mode ? Rat(0) : cfg.nu;
    Rat nu_abs = nu_signed < 0 ? -nu_signed : nu_signed;

    for (RepType type : cfg.types) {
        for (int cpi = std::max(2, cfg.cond_min); cpi <= cfg.cond_max; ++cpi) {
            auto family = RepDescriptor::enumerate(F, cpi, type, cfg.char_cap);
            int taken = 0;
            for (size_t ri = 0; ri < family.size() && taken < cfg.reps_per_family;
                 ++ri, ++taken) {
                const RepDescriptor& pi = family[ri];
                int n = pi.conductor();
                int vlevel = n + (int)cfg.t_margin + 2;
                for (int l = 0; l <= n; ++l) {
                    int j = std::max(1, std::min(l, n - l));
                    auto tr = F->transversal(j, vlevel);
                    for (long t = -(n + cfg.t_margin); t <= cfg.t_max; ++t) {
                        for (size_t vi = 0; vi < tr.size(); ++vi) {
                            CellPoint pt = make_cell(pi, t, l, tr[vi]);
                            CycloLaurent W = whittaker_value(pi, pt);

                            CellResult row;
                            row.type = pi.name();
                            row.p = cfg.p;
                            row.f = cfg.f;
                            row.cpi = cpi;
                            row.rep_index = (int)ri;
                            row.t = t;
                            row.l = l;
                            row.v_index = (long)vi;
                            row.endpoint = (l == 0 || l == n);
                            row.bound = row.endpoint
                                            ? bound_endpoint(pi, nu_abs)
                                            : bound_theorem(pi, t, l, nu_signed, cfg.iso);

                            if (exact_mode) {
                                row.valuation = val_p_cyclo(W.specialize(zr), cfg.p, cfg.iso);
                                row.val_is_exact = true;
                                row.violated = !row.valuation.infinite &&
                                               row.valuation.value < row.bound;
                            } else {
                                auto lv = val_p_laurent(W, cfg.p, nu_signed, cfg.iso);
                                row.valuation = lv.value;
                                row.val_is_exact = lv.certainty == ValCertainty::exact;
                                bool clears = row.valuation.infinite ||
                                              row.valuation.value >= row.bound;
                                if (!clears && nu_signed == 0) {
                                    // cancellation can only raise valuations;
                                    // specialisations decide soundly at nu = 0
                                    clears = true;
                                    for (long r : {1L, 2L, 3L, 4L, 6L}) {
                                        auto vv = val_p_cyclo(
                                            W.specialize(CycloNumber::root_of_unity(r, 1)),
                                            cfg.p, cfg.iso);
                                        if (!vv.infinite && vv.value < row.bound) {
                                            clears = false;
                                            break;
                                        }
                                    }
                                }
                                row.violated = !clears;
                            }

                            ++rep.cells;
                            if (!row.valuation.infinite) {
                                ++rep.nonzero_cells;
                                Rat gap = row.valuation.value - row.bound;
                                std::string clause = row.type + "/c" +
                                                     std::to_string(cpi) +
                                                     (row.endpoint ? "/endpoint" : "/interior");
                                auto it = rep.min_gap_by_clause.find(clause);
                                if (it == rep.min_gap_by_clause.end() || gap < it->second)
                                    rep.min_gap_by_clause[clause] = gap;
                            }
                            if (row.violated) ++rep.violations;
                            rep.rows.push_back(std::move(row));
                        }
                    }
                }
            }
        }
    }
    return rep;
}

std::string VerificationReport::csv() const {
    std::ostringstream os;
    os << "type,p,f,cpi,t,l,v,valuation,bound,gap,mode\n";
    for (auto& r : rows) {
        os << r.type << "," << r.p << "," << r.f << "," << r.cpi << "," << r.t << ","
           << r.l << "," << r.v_index << "," << r.valuation.str() << ","
           << rat_str(r.bound) << ",";
        if (r.valuation.infinite)
            os << "inf";
        else
            os << rat_str(r.valuation.value - r.bound);
        os << "," << (config.mode == SweepMode::exact ? "exact" : "formal") << "\n";
    }
    return os.str();
}

std::string VerificationReport::json(bool include_rows) const {
    std::ostringstream os;
    os << "{\"p\": " << config.p << ", \"f\": " << config.f
       << ", \"cond_min\": " << config.cond_min << ", \"cond_max\": " << config.cond_max
       << ", \"t_margin\": " << config.t_margin << ", \"t_max\": " << config.t_max
       << ", \"reps_per_family\": " << config.reps_per_family
       << ", \"char_cap\": " << config.char_cap << ", \"iso\": " << config.iso
       << ", \"jobs\": " << config.jobs
       << ", \"mode\": \"" << (config.mode == SweepMode::exact ? "exact" : "formal")
       << "\", \"spec_r\": " << config.spec_r << ", \"nu\": \"" << rat_str(config.nu)
       << "\", \"cells\": " << cells << ", \"nonzero_cells\": " << nonzero_cells
       << ", \"violations\": " << violations << ", \"counterexamples\": [";
    {
        bool first_ce = true;
        for (auto& r : rows) {
            if (!r.violated) continue;
            if (!first_ce) os << ", ";
            first_ce = false;
            os << "{\"type\": \"" << r.type << "\", \"cpi\": " << r.cpi
               << ", \"t\": " << r.t << ", \"l\": " << r.l << ", \"v\": " << r.v_index
               << ", \"valuation\": \"" << r.valuation.str() << "\", \"bound\": \""
               << rat_str(r.bound) << "\"}";
        }
    }
    os << "], \"min_gap_by_clause\": {";
    bool first = true;
    for (auto& [k, v] : min_gap_by_clause) {
        if (!first) os << ", ";
        first = false;
        os << "\"" << k << "\": \"" << rat_str(v) << "\"";
    }
    os << "}";
    if (include_rows) {
        os << ", \"rows\": [";
        for (size_t i = 0; i < rows.size(); ++i) {
            auto& r = rows[i];
            if (i) os << ", ";
            os << "{\"type\": \"" << r.type << "\", \"cpi\": " << r.cpi
               << ", \"t\": " << r.t << ", \"l\": " << r.l << ", \"v\": " << r.v_index
               << ", \"valuation\": \"" << r.valuation.str() << "\", \"bound\": \""
               << rat_str(r.bound) << "\", \"violated\": " << (r.violated ? "true" : "false")
               << "}";
        }
        os << "]";
    }
    os << "}";
    return os.str();
}

long cusp_field_conductor(long N, long c, long d) {
    if (N < 1) throw std::invalid_argument("cusp_field_conductor: N < 1");
    long g = gcd_long(c * d, N);
    return N / g;
}

bool twist_in_level_group(long a, long b, long L, long d, const Int& alpha,
                          long p, int n_p) {
    if (a * d - b * L != 1)
        throw std::invalid_argument("twist_in_level_group: det sigma != 1");
    // conjugate matrix (a d alpha - b L, a b (1-alpha); d L (alpha - 1), a d - b L alpha)
    Int e21 = Int(d) * L * (alpha - 1);
    Int e11 = Int(a) * d * alpha - Int(b) * L;
    if (e11 % p == 0) return false;  // upper-left must be a unit
    if (e21 == 0) return true;
    return val_p(e21, p) >= n_p;
}

GlobalBound global_cusp_valuation_bound(long k, long N, long L, long M, long p,
                                        const RepDescriptor& pi,
                                        const Rat& nu_signed, int iso, long u_max) {
    GlobalBound out;
    if (N % p != 0) return out;  // the "val >= 0 regime" marker
    out.applicable = true;

    long vpN = val_p(Int(N), p);
    long vpL = (L % p == 0) ? val_p(Int(L), p) : 0;
    long vpM = (M % p == 0) ? val_p(Int(M), p) : 0;
    long tshift = std::max({vpN, vpL + vpM, 2 * vpL});
    int l = (int)vpL;

    Int g = gcd(gcd(Int(N), Int(L) * M), Int(L) * L);
    Int delta_num = Int(N) * L * M;
    out.delta_val = Rat(val_p(delta_num, p) - val_p(g, p));

    Rat nu_abs = nu_signed < 0 ? -nu_signed : nu_signed;
    bool endpoint = (l == 0 || l == pi.conductor());
    bool have = false;
    Rat best = 0;
    long best_u = 0;
    for (long u = 0; u <= u_max; ++u) {
        long t = u - tshift;
        Rat local = endpoint ? bound_endpoint(pi, nu_abs)
                             : bound_theorem(pi, t, l, nu_signed, iso);
        Rat cand = Rat(k * u, 2) + local;
        if (!have || cand < best) {
            best = cand;
            best_u = u;
            have = true;
        }
    }
    out.value = -Rat(k, 2) * out.delta_val + best;
    out.minimizer_u = best_u;
    return out;
}

}  // namespace wnf
