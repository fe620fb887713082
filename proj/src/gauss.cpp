#include "wnf/gauss.hpp"

#include <map>
#include <mutex>

namespace wnf {

Rat zeta_F(const std::shared_ptr<const LocalField>& F, int s) {
    Rat q(F->q());
    if (s == 1) return q / (q - 1);
    if (s == 2) return q * q / (q * q - 1);
    throw std::invalid_argument("zeta_F: only s = 1, 2 are kept");
}

CycloNumber gauss_bruteforce(const MultChar& chi, const FracElement& x, long cap) {
    const auto& F = chi.field();
    if (F.get() != x.F.get()) throw std::invalid_argument("gauss: field mismatch");
    long j = -x.valuation;
    int L = (int)std::max<long>({(long)chi.conductor(), j, 1});
    if (j > 0 && x.unit.level < j)
        throw std::invalid_argument("gauss: x unit precision below -val(x)");

    const auto& g = F->unit_group(L);
    if (g.total_order > cap) throw std::length_error("gauss: unit group exceeds cap");

    // chi values are roots of unity of order dividing Lchi; psi of order p^j
    long Lchi = chi.value_order();
    long pj = 1;
    for (long i = 0; i < j; ++i) pj *= F->p();
    long M = lcm_long(std::max(Lchi, 1L), pj);

    // exponent of chi(gen_i) as a power of zeta_M
    std::vector<long> gen_exp(g.gens.size());
    for (size_t i = 0; i < g.gens.size(); ++i)
        gen_exp[i] = root_exponent(chi.eval(g.gens[i]), Lchi) * (M / Lchi);

    std::map<long, Rat> acc;

    // The sum runs over every unit of (O/m^j)^x once per coset; all inner
    // arithmetic fits machine words (p^j is tiny), so iterate with longs:
    // the unit value (for psi, mod p^j) and the chi exponent both update
    // incrementally along the mixed-radix odometer.
    int f = F->f();
    if (f > 4) throw std::length_error("gauss: residue degree above the supported range");
    long pjl = pj;
    std::vector<long> trace_form(f, 0);  // traces of the basis elements mod p^j
    if (j > 0) {
        for (int i = 0; i < f; ++i) {
            LocalField::Elt b = F->zero();
            b[i] = 1;
            trace_form[i] = (long)((F->trace_abs(b, (int)j) % pjl + pjl) % pjl);
        }
    }
    // multiplication tables mod p^j: y^i * y^k reduced by the defining poly
    std::vector<std::vector<long>> red;  // y^{f}..y^{2f-2} in the basis
    if (j > 0 && f > 1) {
        red.assign(f - 1, std::vector<long>(f, 0));
        LocalField::Elt y = F->zero();
        y[1] = 1;
        LocalField::Elt cur = F->zero();
        cur[f - 1] = 1;
        for (int k = 0; k < f - 1; ++k) {
            cur = F->mul(cur, y, (int)j);  // y^{f+k}
            for (int i = 0; i < f; ++i)
                red[k][i] = (long)((cur[i] % pjl + pjl) % pjl);
        }
    }
    auto mul_mod = [&](const std::vector<long>& a, const std::vector<long>& b,
                       std::vector<long>& out) {
        if (f == 1) {
            out[0] = (long)((__int128)a[0] * b[0] % pjl);
            return;
        }
        long prod[8] = {0};
        for (int i = 0; i < f; ++i) {
            if (!a[i]) continue;
            for (int k = 0; k < f; ++k)
                prod[i + k] = (long)((prod[i + k] + (__int128)a[i] * b[k]) % pjl);
        }
        for (int i = 0; i < f; ++i) out[i] = prod[i];
        for (int k = 0; k < f - 1; ++k) {
            long c = prod[f + k];
            if (!c) continue;
            for (int i = 0; i < f; ++i)
                out[i] = (long)((out[i] + (__int128)c * red[k][i]) % pjl);
        }
    };

    std::vector<std::vector<long>> gens_l(g.gens.size(), std::vector<long>(f, 0));
    std::vector<long> xu_l(f, 0), cur_l(f, 0), tmp(f, 0);
    if (j > 0) {
        for (size_t i = 0; i < g.gens.size(); ++i) {
            auto r = F->reduce(g.gens[i].c, (int)j);
            for (int k = 0; k < f; ++k) gens_l[i][k] = (long)r[k];
        }
        auto r = F->reduce(x.unit.c, (int)j);
        for (int k = 0; k < f; ++k) xu_l[k] = (long)r[k];
        cur_l = xu_l;  // running value of x * u, starting at u = 1
    }

    std::vector<long> e(g.gens.size(), 0);
    long chi_exp = 0;
    while (true) {
        long exp_total = chi_exp;
        if (j > 0) {
            long tr = 0;
            for (int i = 0; i < f; ++i)
                tr = (long)((tr + (__int128)trace_form[i] * cur_l[i]) % pjl);
            exp_total = mod_pos(exp_total + tr * (M / pj), M);
        }
        acc[exp_total] += 1;

        size_t i = 0;
        for (; i < e.size(); ++i) {
            bool carry = (++e[i] == g.orders[i]);
            if (j > 0) {
                mul_mod(cur_l, gens_l[i], tmp);
                cur_l.swap(tmp);
            }
            chi_exp = mod_pos(chi_exp + gen_exp[i], M);
            if (!carry) break;
            e[i] = 0;
        }
        if (i == e.size()) break;
    }
    CycloNumber sum = CycloNumber::from_terms(M, acc);
    return sum.scaled(Rat(1) / Rat(g.total_order));
}

const EpsFactor& epsilon_gl1(const MultChar& chi, int iso) {
    static std::map<std::string, EpsFactor> cache;
    static std::mutex mu;
    int c = chi.conductor();
    if (c < 1) throw std::invalid_argument("epsilon_gl1: unramified character");
    std::string key = chi.key() + "#" + std::to_string(iso);
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const auto& F = chi.field();
    FracElement x = frac_one(F, -c, c);
    CycloNumber G = gauss_bruteforce(chi.inverse(), x);
    CycloNumber value =
        (G * q_half_pow(F->p(), F->f(), c - 2)).scaled(Rat(F->q() - 1));
    EpsFactor eps;
    eps.value = value;
    eps.valuation = val_p_cyclo(value, F->p(), iso);
    if (c == 1) {
        Rat s = (eps.valuation.value + Rat(F->f(), 2)) * (F->p() - 1);
        if (denominator(s) == 1) eps.s_invariant = (long)numerator(s);
    }
    std::lock_guard<std::mutex> lk(mu);
    return cache.emplace(key, std::move(eps)).first->second;
}

CycloNumber gauss_closed(const MultChar& chi, const FracElement& x, int iso) {
    int c = chi.conductor();
    long v = x.valuation;
    long q = chi.field()->q();
    if (c == 0) {
        if (v >= 0) return CycloNumber::rational(1);
        if (v == -1) return CycloNumber::rational(Rat(-1, q - 1));
        return CycloNumber();
    }
    if (v != -c) return CycloNumber();
    const auto& F = chi.field();
    const EpsFactor& eps = epsilon_gl1(chi.inverse(), iso);
    CycloNumber chix_inv = chi.eval(x).inverse();
    return (eps.value * chix_inv * q_half_pow(F->p(), F->f(), 2 - c))
        .scaled(Rat(1, q - 1));
}

L1Report check_l1(const MultChar& chi, int iso) {
    if (chi.conductor() < 1) throw std::invalid_argument("check_l1: unramified");
    const EpsFactor& eps = epsilon_gl1(chi, iso);
    L1Report rep;
    rep.valuation = eps.valuation;
    const auto& F = chi.field();
    if (chi.conductor() == 1) {
        rep.s = eps.s_invariant;
        rep.in_range = eps.s_invariant && *eps.s_invariant >= 1 &&
                       *eps.s_invariant <= (F->p() - 1) * F->f();
        rep.ok = rep.in_range;
    } else {
        rep.ok = (eps.valuation == ValRat::of(0));
        rep.in_range = rep.ok;
    }
    return rep;
}

long digit_oracle_s(const MultChar& chi, int iso) {
    const auto& F = chi.field();
    if (F->f() != 1) throw std::invalid_argument("digit_oracle_s: needs f = 1");
    if (chi.conductor() != 1) throw std::invalid_argument("digit_oracle_s: needs c = 1");
    long p = F->p();

    // Write iota(chi(u)) = u^b mod p: chi "is" omega^b for the Teichmueller
    // character omega of the pinned embedding.  Then Stickelberger gives
    // val_p of the classical Gauss sum of chi^{-1} = omega^{-b} as b/(p-1),
    // and the operational eps(1/2, chi) equals that Gauss sum times q^{-1/2},
    // so s(chi^{-1}) = b.
    long g0 = F->encode_residue(F->primitive_root_residue());
    CycloNumber z = chi.eval(F->unit_from_int(g0, 1));
    long L = chi.value_order();
    long je = root_exponent(z, L);
    long omega = pinned_tame_root_code(p, p - 1, iso);
    long target = 1;
    {
        long e = mod_pos(je * ((p - 1) / L), p - 1);
        for (long i = 0; i < e; ++i) target = target * omega % p;
    }
    for (long b = 0; b <= p - 2; ++b) {
        long r = 1;
        for (long i = 0; i < b; ++i) r = r * g0 % p;
        if (r == target) return b;
    }
    throw std::logic_error("digit_oracle_s: discrete log failed");
}

}  // namespace wnf
