#include "wnf/cyclo.hpp"

#include <algorithm>
#include <sstream>

namespace wnf {

namespace {

std::vector<std::pair<long, long>> factorize(long m) {
    std::vector<std::pair<long, long>> fac;  // (p, p^a)
    for (long d = 2; d * d <= m; ++d) {
        if (m % d) continue;
        long pa = 1;
        while (m % d == 0) { m /= d; pa *= d; }
        fac.push_back({d, pa});
    }
    if (m > 1) fac.push_back({m, m});
    return fac;
}

}  // namespace

CycloNumber CycloNumber::rational(const Rat& r) {
    CycloNumber z;
    if (r != 0) z.t_[0] = r;
    return z;
}

CycloNumber CycloNumber::root_of_unity(long m, long e, const Rat& coeff) {
    if (m < 1) throw std::invalid_argument("root_of_unity: m < 1");
    CycloNumber z;
    z.m_ = m;
    if (coeff != 0) z.t_[mod_pos(e, m)] = coeff;
    z.canonicalize();
    return z;
}

CycloNumber CycloNumber::from_terms(long m, const std::map<long, Rat>& raw) {
    CycloNumber z;
    z.m_ = m;
    for (auto& [e, c] : raw)
        if (c != 0) z.t_[mod_pos(e, m)] += c;
    z.canonicalize();
    return z;
}

void CycloNumber::canonicalize() {
    for (auto [P, pa] : factorize(m_)) {
        long sub = pa / P;        // p^{a-1}
        long delta = m_ / P;      // shifts the P-digit by a unit
        bool any = false;
        for (auto& [e, c] : t_) {
            if ((e % pa) / sub == P - 1) { any = true; break; }
        }
        if (!any) continue;
        std::map<long, Rat> out;
        for (auto& [e, c] : t_) {
            if (c == 0) continue;
            if ((e % pa) / sub != P - 1) {
                out[e] += c;
            } else {
                for (long j = 1; j < P; ++j) {
                    long e2 = (e + j * delta) % m_;
                    out[e2] -= c;
                }
            }
        }
        t_ = std::move(out);
    }
    for (auto it = t_.begin(); it != t_.end();)
        it = (it->second == 0) ? t_.erase(it) : std::next(it);
}

bool CycloNumber::is_rational() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first == 0);
}

Rat CycloNumber::rational_value() const {
    if (t_.empty()) return 0;
    if (!is_rational()) throw std::domain_error("rational_value: not rational");
    return t_.begin()->second;
}

CycloNumber CycloNumber::lifted(long M) const {
    if (M == m_) return *this;
    if (M % m_) throw std::invalid_argument("lifted: order does not divide M");
    CycloNumber z;
    z.m_ = M;
    long s = M / m_;
    for (auto& [e, c] : t_) z.t_[e * s] = c;
    z.canonicalize();
    return z;
}

CycloNumber CycloNumber::reduced() const {
    if (t_.empty()) {
        CycloNumber z;
        return z;
    }
    long g = m_;
    for (auto& [e, c] : t_) g = gcd_long(g, e);
    if (g <= 1) return *this;
    CycloNumber z;
    z.m_ = m_ / g;
    for (auto& [e, c] : t_) z.t_[e / g] = c;
    z.canonicalize();
    return z;
}

CycloNumber CycloNumber::operator+(const CycloNumber& o) const {
    long M = lcm_long(m_, o.m_);
    CycloNumber a = lifted(M), b = o.lifted(M);
    for (auto& [e, c] : b.t_) a.t_[e] += c;
    a.canonicalize();
    return a;
}

CycloNumber CycloNumber::operator-(const CycloNumber& o) const {
    return *this + (-o);
}

CycloNumber CycloNumber::operator-() const {
    CycloNumber z = *this;
    for (auto& [e, c] : z.t_) c = -c;
    return z;
}

CycloNumber CycloNumber::scaled(const Rat& r) const {
    if (r == 0) return CycloNumber();
    CycloNumber z = *this;
    for (auto& [e, c] : z.t_) c *= r;
    return z;
}

CycloNumber CycloNumber::operator*(const CycloNumber& o) const {
    long M = lcm_long(m_, o.m_);
    CycloNumber a = lifted(M), b = o.lifted(M);
    CycloNumber z;
    z.m_ = M;
    for (auto& [e1, c1] : a.t_)
        for (auto& [e2, c2] : b.t_) z.t_[(e1 + e2) % M] += c1 * c2;
    z.canonicalize();
    return z;
}

bool CycloNumber::operator==(const CycloNumber& o) const {
    long M = lcm_long(m_, o.m_);
    return lifted(M).t_ == o.lifted(M).t_;
}

CycloNumber CycloNumber::inverse() const {
    if (t_.empty()) throw std::domain_error("inverse of zero");
    if (is_rational()) return rational(1 / rational_value());
    if (t_.size() == 1) {  // monomial: invert the root directly
        auto [e, c] = *t_.begin();
        return root_of_unity(m_, -e, 1 / c);
    }
    CycloNumber conj_prod = rational(1);
    for (long a = 2; a <= m_; ++a) {
        if (gcd_long(a, m_) != 1) continue;
        conj_prod = conj_prod * galois_apply(a, *this);
    }
    CycloNumber norm = *this * conj_prod;
    if (!norm.is_rational()) throw std::logic_error("inverse: norm not rational");
    return conj_prod.scaled(1 / norm.rational_value());
}

CycloNumber galois_apply(long a, const CycloNumber& z) {
    long m = z.order();
    long am = mod_pos(a, m);
    if (gcd_long(am, m) != 1) throw std::invalid_argument("galois_apply: a not coprime to m");
    CycloNumber r;
    r.m_ = m;
    for (auto& [e, c] : z.terms()) r.t_[(e * am) % m] += c;
    r.canonicalize();
    return r;
}

long root_exponent(const CycloNumber& z, long L) {
    if (z.is_rational()) {
        Rat v = z.rational_value();
        if (v == 1) return 0;
        if (v == -1 && L % 2 == 0) return L / 2;
        throw std::domain_error("root_exponent: not a root of unity");
    }
    for (long cand = 1; cand < L; ++cand)
        if (z == CycloNumber::root_of_unity(L, cand)) return cand;
    throw std::domain_error("root_exponent: not an L-th root of unity");
}

CycloNumber sqrt_q(long p, int f) {
    if (f % 2 == 0) return CycloNumber::rational(pow_int(Int(p), f / 2));
    // quadratic Gauss sum g = sum_a (a|p) zeta_p^a; g = sqrt(p) or i*sqrt(p)
    std::vector<int> legendre(p, -1);
    legendre[0] = 0;
    for (long a = 1; a < p; ++a) legendre[(a * a) % p] = 1;
    CycloNumber g;
    if (p % 4 == 1) {
        for (long a = 1; a < p; ++a)
            g = g + CycloNumber::root_of_unity(p, a, legendre[a]);
    } else {
        // sqrt(p) = -zeta_4 * g, assembled directly in Q(zeta_{4p})
        for (long a = 1; a < p; ++a)
            g = g + CycloNumber::root_of_unity(4 * p, p + 4 * a, -legendre[a]);
    }
    if (f > 1) g = g.scaled(pow_int(Int(p), (f - 1) / 2));
    return g;
}

CycloNumber q_half_pow(long p, int f, long h) {
    long e = (long)f * h;  // power of p^{1/2}
    long fl = (e >= 0) ? e / 2 : -((-e + 1) / 2);  // floor(e/2)
    CycloNumber r = CycloNumber::rational(pow_rat(Rat(p), fl));
    if (e % 2 != 0) r = r * sqrt_q(p, 1);
    return r;
}

std::string CycloNumber::json() const {
    std::ostringstream os;
    os << "{\"m\": " << m_ << ", \"terms\": [";
    bool first = true;
    for (auto& [e, c] : t_) {
        if (!first) os << ", ";
        first = false;
        os << "[" << e << ", \"" << rat_str(c) << "\"]";
    }
    os << "]}";
    return os.str();
}

std::string CycloNumber::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << rat_str(c);
        if (e != 0) os << "*z" << m_ << "^" << e;
    }
    return os.str();
}

// ---------------------------------------------------------------- Laurent

CycloLaurent CycloLaurent::of(const CycloNumber& c, long xpow) {
    CycloLaurent l;
    if (!c.is_zero()) l.t_[xpow] = c;
    return l;
}

void CycloLaurent::prune() {
    for (auto it = t_.begin(); it != t_.end();)
        it = it->second.is_zero() ? t_.erase(it) : std::next(it);
}

bool CycloLaurent::is_zero() const { return t_.empty(); }

CycloLaurent CycloLaurent::operator+(const CycloLaurent& o) const {
    CycloLaurent r = *this;
    for (auto& [k, c] : o.t_) {
        auto it = r.t_.find(k);
        if (it == r.t_.end())
            r.t_[k] = c;
        else
            it->second = it->second + c;
    }
    r.prune();
    return r;
}

CycloLaurent CycloLaurent::operator-(const CycloLaurent& o) const {
    CycloLaurent neg;
    for (auto& [k, c] : o.t_) neg.t_[k] = -c;
    return *this + neg;
}

CycloLaurent CycloLaurent::operator*(const CycloLaurent& o) const {
    CycloLaurent r;
    for (auto& [k1, c1] : t_)
        for (auto& [k2, c2] : o.t_) {
            auto it = r.t_.find(k1 + k2);
            if (it == r.t_.end())
                r.t_[k1 + k2] = c1 * c2;
            else
                it->second = it->second + c1 * c2;
        }
    r.prune();
    return r;
}

CycloLaurent CycloLaurent::scaled(const CycloNumber& c) const {
    CycloLaurent r;
    if (c.is_zero()) return r;
    for (auto& [k, v] : t_) r.t_[k] = v * c;
    r.prune();
    return r;
}

CycloLaurent CycloLaurent::shifted(long dx) const {
    CycloLaurent r;
    for (auto& [k, v] : t_) r.t_[k + dx] = v;
    return r;
}

bool CycloLaurent::operator==(const CycloLaurent& o) const {
    if (t_.size() != o.t_.size()) return false;
    auto it = t_.begin(), jt = o.t_.begin();
    for (; it != t_.end(); ++it, ++jt)
        if (it->first != jt->first || !(it->second == jt->second)) return false;
    return true;
}

CycloNumber CycloLaurent::specialize(const CycloNumber& x_value) const {
    CycloNumber acc;
    CycloNumber xinv;  // computed on demand
    bool have_inv = false;
    for (auto& [k, c] : t_) {
        CycloNumber xp = CycloNumber::rational(1);
        if (k >= 0) {
            for (long i = 0; i < k; ++i) xp = xp * x_value;
        } else {
            if (!have_inv) { xinv = x_value.inverse(); have_inv = true; }
            for (long i = 0; i < -k; ++i) xp = xp * xinv;
        }
        acc = acc + c * xp;
    }
    return acc;
}

CycloNumber CycloLaurent::constant_term() const {
    if (t_.empty()) return CycloNumber();
    if (!x_free()) throw std::domain_error("constant_term: X present");
    return t_.begin()->second;
}

bool CycloLaurent::x_free() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first == 0);
}

std::string CycloLaurent::json() const {
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (auto& [k, c] : t_) {
        if (!first) os << ", ";
        first = false;
        os << "{\"xpow\": " << k << ", \"coeff\": " << c.json() << "}";
    }
    os << "]";
    return os.str();
}

CycloLaurent galois_apply(long a, const CycloLaurent& z) {
    CycloLaurent r;
    for (auto& [k, c] : z.terms()) r = r + CycloLaurent::of(galois_apply(a, c), k);
    return r;
}

}  // namespace wnf
