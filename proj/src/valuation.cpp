#include "wnf/valuation.hpp"

#include "wnf/local_field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace wnf {

namespace {

// Arithmetic in W = (Z/p^B)[x]/(g(x)) with g monic irreducible mod p.
struct WCtx {
    long p;
    int d;
    int B;
    Int pB;
    std::vector<long> g;  // size d+1, monic

    using E = std::vector<Int>;

    E zero() const { return E(d, Int(0)); }
    E one() const {
        E e(d, Int(0));
        e[0] = 1;
        return e;
    }
    E from_code(long code) const {
        E e(d, Int(0));
        for (int i = 0; i < d; ++i) { e[i] = code % p; code /= p; }
        return e;
    }
    E add(const E& a, const E& b) const {
        E r(d);
        for (int i = 0; i < d; ++i) r[i] = (a[i] + b[i]) % pB;
        return r;
    }
    void add_scaled(E& acc, const E& a, const Int& s) const {
        for (int i = 0; i < d; ++i) acc[i] = (acc[i] + a[i] * s) % pB;
    }
    E mul(const E& a, const E& b) const {
        std::vector<Int> prod(2 * d - 1, Int(0));
        for (int i = 0; i < d; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < d; ++j) prod[i + j] += a[i] * b[j];
        }
        for (int k = 2 * d - 2; k >= d; --k) {
            if (prod[k] == 0) continue;
            Int c = prod[k];
            for (int i = 0; i < d; ++i) prod[k - d + i] -= c * g[i];
            prod[k] = 0;
        }
        E r(d);
        for (int i = 0; i < d; ++i) r[i] = ((prod[i] % pB) + pB) % pB;
        return r;
    }
    E pow(E a, Int e) const {
        E r = one();
        while (e > 0) {
            if ((e & 1) != 0) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    bool is_one(const E& a) const {
        if (a[0] % pB != 1) return false;
        for (int i = 1; i < d; ++i)
            if (a[i] % pB != 0) return false;
        return true;
    }
    // min p-valuation over coordinates, capped at B
    int vmin(const E& a) const {
        int best = B;
        for (int i = 0; i < d; ++i) {
            if (a[i] == 0) continue;
            int v = (int)val_p(a[i], p);
            if (v < best) best = v;
        }
        return best;
    }
};

// lexicographically least monic irreducible polynomial of degree d over F_p
std::vector<long> least_irreducible(long p, int d) {
    if (d == 1) return {0, 1};
    long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long code = 0; code < count; ++code) {
        std::vector<long> g(d + 1, 0);
        long c = code;
        for (int i = 0; i < d; ++i) { g[i] = c % p; c /= p; }
        g[d] = 1;
        if (poly_irreducible_mod_p(g, p)) return g;
    }
    throw std::logic_error("least_irreducible: none found");
}

std::vector<long> prime_divisors(long n) {
    std::vector<long> ps;
    for (long q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        ps.push_back(q);
        while (n % q == 0) n /= q;
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

struct EmbedCtx {
    WCtx W;
    long m_tame = 1;                 // m'
    WCtx::E tau;                     // image of zeta_{m'}
    std::map<long, WCtx::E> tau_pows;

    const WCtx::E& tau_pow(long e) {
        e = mod_pos(e, m_tame);
        auto it = tau_pows.find(e);
        if (it != tau_pows.end()) return it->second;
        auto r = W.pow(tau, Int(e));
        return tau_pows.emplace(e, std::move(r)).first->second;
    }
};

int tame_degree(long p, long m_tame) {
    int d = 1;
    if (m_tame > 1) {
        long t = p % m_tame;
        d = 1;
        while (t != 1) { t = (t * p) % m_tame; ++d; }
    }
    return d;
}

long select_tame_root_code(long p, long m_tame, int iso_choice) {
    int d = tame_degree(p, m_tame);
    WCtx residue{p, d, 1, Int(p), least_irreducible(p, d)};
    auto primes = prime_divisors(m_tame);
    long qd = 1;
    for (int i = 0; i < d; ++i) qd *= p;
    int skip = iso_choice;
    long chosen = -1;
    for (long code = 1; code < qd; ++code) {
        WCtx::E c1 = residue.from_code(code);
        if (!residue.is_one(residue.pow(c1, Int(m_tame)))) continue;
        bool exact = true;
        for (long ell : primes)
            if (residue.is_one(residue.pow(c1, Int(m_tame / ell)))) { exact = false; break; }
        if (!exact) continue;
        if (skip-- == 0) { chosen = code; break; }
        chosen = code;  // fall back to the last seen if fewer than requested
    }
    if (chosen < 0) throw std::logic_error("select_tame_root_code: no element of order m'");
    return chosen;
}

EmbedCtx build_embedding(long p, long m_tame, int B, int iso_choice) {
    EmbedCtx ctx;
    int d = tame_degree(p, m_tame);
    ctx.W = WCtx{p, d, B, pow_int(Int(p), B), least_irreducible(p, d)};
    ctx.m_tame = m_tame;
    if (m_tame == 1) {
        ctx.tau = ctx.W.one();
        return ctx;
    }
    long chosen = select_tame_root_code(p, m_tame, iso_choice);
    // Teichmueller lift: iterate x -> x^{p^d}
    WCtx::E t = ctx.W.from_code(chosen);
    Int qd_big = pow_int(Int(p), d);
    for (int i = 0; i <= B + 1; ++i) {
        WCtx::E next = ctx.W.pow(t, qd_big);
        if (next == t) break;
        t = next;
    }
    ctx.tau = t;
    return ctx;
}

}  // namespace

long pinned_tame_root_code(long p, long m_tame, int iso_choice) {
    if (tame_degree(p, m_tame) != 1)
        throw std::invalid_argument("pinned_tame_root_code: root not in the prime field");
    return select_tame_root_code(p, m_tame, iso_choice);
}

ValRat val_p_cyclo(const CycloNumber& zin, long p, int iso_choice, int B_start) {
    if (zin.is_zero()) return ValRat::inf();
    CycloNumber z = zin.reduced();
    long m = z.order();

    long pa = 1;
    int a = 0;
    {
        long mm = m;
        while (mm % p == 0) { mm /= p; pa *= p; ++a; }
    }
    long m_tame = m / pa;
    long e_ram = (a == 0) ? 1 : (pa - pa / p);  // phi(p^a)
    long sub = (a == 0) ? 1 : pa / p;           // p^{a-1}

    // factor the global p-shift out of the coefficients
    long shift = 0;
    bool first = true;
    for (auto& [e, c] : z.terms()) {
        long v = val_p(c, p);
        if (first || v < shift) { shift = v; first = false; }
    }

    // Hadamard-style cap: clearing p-free denominators leaves integer
    // coefficients whose conjugate products bound the norm, hence val_p.
    Int H = 0;
    {
        Int den_lcm = 1;
        for (auto& [e, c] : z.terms()) {
            Rat c2 = c / pow_rat(Rat(p), shift);
            den_lcm = lcm(den_lcm, denominator(c2));
        }
        for (auto& [e, c] : z.terms()) {
            Rat c2 = c / pow_rat(Rat(p), shift) * den_lcm;
            H += abs(numerator(c2));
        }
    }
    long phi_m = e_ram;
    {
        long mm = m_tame;
        for (long q = 2; q * q <= mm; ++q) {
            if (mm % q) continue;
            long qa = 1;
            while (mm % q == 0) { mm /= q; qa *= q; }
            phi_m *= qa - qa / q;
        }
        if (mm > 1) phi_m *= mm - 1;
    }
    double logpH = H <= 1 ? 0.0 : boost::multiprecision::msb(H) / std::log2((double)p);
    long B_cap = (long)(phi_m * (logpH + 1)) + 6;

    // CRT exponents: zeta_m^e = (zeta_m^{m'})^{x} (zeta_m^{p^a})^{y}
    long inv_tame_mod_pa = (a == 0) ? 0 : inv_mod(mod_pos(m_tame, pa), pa);
    long inv_pa_mod_tame = (m_tame == 1) ? 0 : inv_mod(mod_pos(pa, m_tame), m_tame);

    static std::map<std::tuple<long, long, int, int>, EmbedCtx> cache;
    static std::mutex cache_mu;

    for (int B = std::max(B_start, 4); B <= B_cap + B_start; B *= 2) {
        EmbedCtx* ctx;
        {
            std::lock_guard<std::mutex> lk(cache_mu);
            auto key = std::make_tuple(p, m_tame, B, iso_choice);
            auto it = cache.find(key);
            if (it == cache.end())
                it = cache.emplace(key, build_embedding(p, m_tame, B, iso_choice)).first;
            ctx = &it->second;
        }
        const WCtx& W = ctx->W;

        // accumulate coefficients of y^j, 0 <= j < e_ram
        std::vector<WCtx::E> cj(e_ram, W.zero());
        bool bad = false;
        for (auto& [e, c] : z.terms()) {
            Rat c2 = c / pow_rat(Rat(p), shift);
            Int num = numerator(c2) % W.pB;
            Int den = denominator(c2) % W.pB;
            // invert den mod p^B (p-free by construction)
            Int dinv = Int(inv_mod((long)(den % p), p));
            {
                Int mod = p;
                while (mod < W.pB) {
                    mod *= mod;
                    if (mod > W.pB) mod = W.pB;
                    dinv = ((dinv * (2 - den * dinv % mod)) % mod + mod) % mod;
                }
            }
            Int scal = ((num * dinv) % W.pB + W.pB) % W.pB;
            long x_exp = (a == 0) ? 0 : mod_pos(e % pa * inv_tame_mod_pa, pa);
            long y_exp = (m_tame == 1) ? 0 : mod_pos(e % m_tame * inv_pa_mod_tame, m_tame);
            const WCtx::E& tp = ctx->tau_pow(y_exp);
            if (a == 0 || x_exp / sub < p - 1) {
                long j = (a == 0) ? 0 : x_exp;
                if (j >= e_ram) throw std::logic_error("val_p_cyclo: exponent not canonical");
                W.add_scaled(cj[j], tp, scal);
            } else {
                long r = x_exp % sub;
                for (long jj = 0; jj < p - 1; ++jj)
                    W.add_scaled(cj[r + jj * sub], tp, W.pB - scal);
            }
        }
        (void)bad;

        if (a > 0) {
            // Taylor shift by 1: coefficients of P(1 + pi) in powers of pi
            for (long i = 0; i < e_ram; ++i)
                for (long j = e_ram - 2; j >= i; --j)
                    cj[j] = W.add(cj[j], cj[j + 1]);
        }

        long best_num = -1;  // valuation in units of 1/e_ram
        for (long i = 0; i < e_ram; ++i) {
            int wv = W.vmin(cj[i]);
            if (wv >= W.B) continue;
            long cand = i + e_ram * (long)wv;
            if (best_num < 0 || cand < best_num) best_num = cand;
        }
        if (best_num >= 0 && best_num <= e_ram * (long)(W.B - 2))
            return ValRat::of(Rat(shift) + Rat(best_num) / e_ram);
        // otherwise escalate B
    }
    throw std::logic_error("val_p_cyclo: precision cap exceeded for nonzero input");
}

LaurentValuation val_p_laurent(const CycloLaurent& z, long p, const Rat& nu,
                               int iso_choice) {
    if (z.is_zero()) return {ValRat::inf(), ValCertainty::exact};
    bool first = true, unique = true;
    Rat best = 0;
    for (auto& [k, c] : z.terms()) {
        ValRat v = val_p_cyclo(c, p, iso_choice);
        if (v.infinite) continue;  // cannot happen: coefficients are nonzero
        Rat cand = Rat(k) * nu + v.value;
        if (first) {
            best = cand;
            first = false;
        } else if (cand < best) {
            best = cand;
            unique = true;
        } else if (cand == best) {
            unique = false;
        }
    }
    if (first) return {ValRat::inf(), ValCertainty::exact};
    bool single = z.terms().size() == 1;
    return {ValRat::of(best),
            (single || unique) ? ValCertainty::exact : ValCertainty::lower_bound};
}

}  // namespace wnf
