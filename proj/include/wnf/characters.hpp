#pragma once

// Multiplicative characters chi of F^x with chi(pi) = 1, identified with
// characters of the finite unit groups (O/m^k)^x via an exponent vector on
// the canonical generators, and the additive character psi with c(psi) = 0.

#include "wnf/cyclo.hpp"
#include "wnf/local_field.hpp"

#include <vector>

namespace wnf {

class MultChar {
public:
    MultChar(std::shared_ptr<const LocalField> F, int level,
             std::vector<long> exps);
    static MultChar trivial(std::shared_ptr<const LocalField> F, int level = 1);

    const std::shared_ptr<const LocalField>& field() const { return F_; }
    int level() const { return level_; }
    const std::vector<long>& exps() const { return exps_; }

    int conductor() const;  // cached after first computation
    bool is_trivial() const { return conductor() == 0; }
    long value_order() const;

    // chi(u); u may live at any level >= c(chi) (lifting is exact, values
    // are never truncated below the conductor).
    CycloNumber eval(const UnitClass& u) const;
    // chi(x) = chi(unit part) since chi(pi) = 1.
    CycloNumber eval(const FracElement& x) const;

    MultChar operator*(const MultChar& o) const;
    MultChar inverse() const;
    MultChar power(long n) const;
    MultChar at_level(int k) const;  // k >= max(c(chi), 1)
    // Galois twist: values raised to the b-th power.
    MultChar galois_scaled(long b) const;

    bool operator==(const MultChar& o) const;
    bool operator!=(const MultChar& o) const { return !(*this == o); }
    // deterministic identification key (conductor-normalised)
    std::string key() const;

    // All characters of conductor <= k, deterministic order.
    static std::vector<MultChar> enumerate(std::shared_ptr<const LocalField> F,
                                           int k, long cap = 100000);

private:
    std::shared_ptr<const LocalField> F_;
    int level_;
    std::vector<long> exps_;
    mutable int cond_ = -1;
};

// The standard additive character (c(psi) = 0); for an extension E the same
// construction computes psi composed with the trace, which again has
// conductor 0 because E/F is unramified.
struct AdditiveChar {
    std::shared_ptr<const LocalField> F;
};

// psi(x) for val(x) = -j; requires x's unit to be known at level >= j.
CycloNumber psi_eval(const AdditiveChar& psi, const FracElement& x);

}  // namespace wnf
