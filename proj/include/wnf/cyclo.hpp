#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_m), plus a Laurent extension
// by one formal unit X (standing for q^{c_1} in principal-series values).
//
// Elements are kept in the tensor-product power basis: for m = prod p^a the
// exponent e is admissible when each p-component digit floor((e mod p^a) /
// p^{a-1}) is at most p-2; the relation sum_{j<p} zeta^{e + j m/p} = 0
// rewrites everything else.  Canonical forms make equality structural.

#include "wnf/rat.hpp"

#include <map>
#include <string>
#include <vector>

namespace wnf {

class CycloNumber {
public:
    CycloNumber() : m_(1) {}  // zero

    static CycloNumber rational(const Rat& r);
    static CycloNumber root_of_unity(long m, long e, const Rat& coeff = 1);
    // bulk constructor from raw exponent/coefficient pairs (canonicalised)
    static CycloNumber from_terms(long m, const std::map<long, Rat>& raw);

    long order() const { return m_; }
    const std::map<long, Rat>& terms() const { return t_; }

    bool is_zero() const { return t_.empty(); }
    bool is_rational() const;
    Rat rational_value() const;  // throws unless is_rational()

    CycloNumber lifted(long M) const;     // m_ must divide M
    CycloNumber reduced() const;          // shrink order by the support gcd

    CycloNumber operator+(const CycloNumber& o) const;
    CycloNumber operator-(const CycloNumber& o) const;
    CycloNumber operator*(const CycloNumber& o) const;
    CycloNumber operator-() const;
    CycloNumber scaled(const Rat& r) const;
    CycloNumber inverse() const;          // throws on zero
    bool operator==(const CycloNumber& o) const;
    bool operator!=(const CycloNumber& o) const { return !(*this == o); }

    std::string json() const;
    std::string str() const;

private:
    long m_;
    std::map<long, Rat> t_;  // exponent -> coefficient, canonical

    void canonicalize();
    friend CycloNumber galois_apply(long a, const CycloNumber& z);
};

// The automorphism zeta_m -> zeta_m^a, gcd(a, m) = 1 (a may be negative).
CycloNumber galois_apply(long a, const CycloNumber& z);

// The exponent e with z = zeta_L^e; z must be a root of unity of order
// dividing L (canonical forms can spread a root over the power basis, so
// this matches rather than reads a term).
long root_exponent(const CycloNumber& z, long L);

// Exact cyclotomic square root of q = p^f (positive real one under the
// standard embedding), via the quadratic Gauss sum for odd f.
CycloNumber sqrt_q(long p, int f);
// q^{h/2} for any integer h (h may be negative).
CycloNumber q_half_pow(long p, int f, long h);

class CycloLaurent {
public:
    CycloLaurent() = default;
    static CycloLaurent of(const CycloNumber& c, long xpow = 0);

    bool is_zero() const;
    const std::map<long, CycloNumber>& terms() const { return t_; }

    CycloLaurent operator+(const CycloLaurent& o) const;
    CycloLaurent operator-(const CycloLaurent& o) const;
    CycloLaurent operator*(const CycloLaurent& o) const;
    CycloLaurent scaled(const CycloNumber& c) const;
    CycloLaurent shifted(long dx) const;  // multiply by X^dx
    bool operator==(const CycloLaurent& o) const;
    bool operator!=(const CycloLaurent& o) const { return !(*this == o); }

    // X -> value (a root of unity; any invertible CycloNumber works).
    CycloNumber specialize(const CycloNumber& x_value) const;
    // Constant term when no X appears at all.
    CycloNumber constant_term() const;
    bool x_free() const;

    std::string json() const;

private:
    std::map<long, CycloNumber> t_;  // X-power -> coefficient, no zeros
    void prune();
};

CycloLaurent galois_apply(long a, const CycloLaurent& z);

}  // namespace wnf
