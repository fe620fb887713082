#pragma once

// Local-field Gauss sums G_psi(x, chi) by brute force over the unit group
// and by the closed form, GL(1) epsilon factors pinned operationally by the
// relation eps(1/2, chi) = G(pi^{-c}, chi^{-1}) (q-1) q^{c/2-1}, the product
// identity eps(1/2,chi) eps(1/2,chi^{-1}) = chi(-1), and the valuation law
// with its s-invariant.

#include "wnf/characters.hpp"
#include "wnf/valuation.hpp"

#include <optional>

namespace wnf {

Rat zeta_F(const std::shared_ptr<const LocalField>& F, int s);  // s in {1,2}

// (1/#U_L) sum_{y in (O/m^L)^x} chi(y) psi(x y), L = max(c(chi), -val(x), 1).
CycloNumber gauss_bruteforce(const MultChar& chi, const FracElement& x,
                             long cap = 2000000);

// Closed form per the four-case evaluation (the "0, otherwise" included).
CycloNumber gauss_closed(const MultChar& chi, const FracElement& x,
                         int iso = 0);

struct EpsFactor {
    CycloNumber value;
    ValRat valuation;
    std::optional<long> s_invariant;  // set when c(chi) == 1
};

// eps(1/2, chi) for ramified chi; memoised per character and iso choice.
const EpsFactor& epsilon_gl1(const MultChar& chi, int iso = 0);

struct L1Report {
    ValRat valuation;
    std::optional<long> s;
    bool in_range = false;
    bool ok = false;
};

// Verifies the two-case valuation law for eps(1/2, chi).
L1Report check_l1(const MultChar& chi, int iso = 0);

// Independent digit oracle for s when F = Q_p (f = 1, c(chi) = 1):
// Stickelberger valuation of the classical Gauss sum of chi^{-1}.
long digit_oracle_s(const MultChar& chi, int iso = 0);

}  // namespace wnf
