#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace wnf {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Exact p-adic valuation of a nonzero integer.
inline long val_p(const Int& n, long p) {
    if (n == 0) throw std::domain_error("val_p of zero integer");
    Int m = abs(n);
    long v = 0;
    while (m % p == 0) { m /= p; ++v; }
    return v;
}

inline long val_p(const Rat& r, long p) {
    if (r == 0) throw std::domain_error("val_p of zero rational");
    return val_p(numerator(r), p) - val_p(denominator(r), p);
}

inline Int pow_int(Int base, long e) {
    if (e < 0) throw std::domain_error("pow_int: negative exponent");
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Rat pow_rat(const Rat& base, long e) {
    if (e >= 0) {
        Rat r = 1;
        for (long i = 0; i < e; ++i) r *= base;
        return r;
    }
    if (base == 0) throw std::domain_error("pow_rat: 0^negative");
    return 1 / pow_rat(base, -e);
}

// Rationals are printed "num/den" (or just "num" when integral) so that
// report files never contain a floating representation.
inline std::string rat_str(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline Rat rat_parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash))) / Rat(Int(s.substr(slash + 1)));
}

// Extended value Q ∪ {+∞}; +∞ encodes the valuation of 0.
struct ValRat {
    bool infinite = false;
    Rat value = 0;

    static ValRat inf() { return ValRat{true, 0}; }
    static ValRat of(Rat v) { return ValRat{false, std::move(v)}; }

    bool operator==(const ValRat& o) const {
        if (infinite || o.infinite) return infinite == o.infinite;
        return value == o.value;
    }
    bool operator>=(const ValRat& o) const {
        if (infinite) return true;
        if (o.infinite) return false;
        return value >= o.value;
    }
    std::string str() const { return infinite ? "inf" : rat_str(value); }
};

inline long lcm_long(long a, long b) {
    Int g = gcd(Int(a), Int(b));
    Int l = Int(a) / g * Int(b);
    if (l > 2000000000L) throw std::overflow_error("lcm_long overflow");
    return (long)l;
}

inline long gcd_long(long a, long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { long t = a % b; a = b; b = t; }
    return a;
}

// a^{-1} mod m for gcd(a, m) = 1.
inline long inv_mod(long a, long m) {
    long t = 0, newt = 1, r = m, newr = ((a % m) + m) % m;
    while (newr != 0) {
        long q = r / newr;
        long tmp = t - q * newt; t = newt; newt = tmp;
        tmp = r - q * newr; r = newr; newr = tmp;
    }
    if (r != 1) throw std::domain_error("inv_mod: not invertible");
    return ((t % m) + m) % m;
}

inline long mod_pos(long a, long m) { return ((a % m) + m) % m; }

}  // namespace wnf
