#pragma once

// Representation descriptors for the four families handled here:
//   Type 1   dihedral supercuspidal, from a character xi of the unramified
//            quadratic extension E/F, nontrivial on the norm-one kernel,
//            with xi(pi_E) = -1 so that the central character lies in X;
//   Type 2a  mu St with mu ramified;
//   Type 3a  beta1 |.|^{c1} + beta2 |.|^{-c1}, both ramified, beta1 != beta2;
//   Type 3b  the same with beta1 = beta2.
// Types 2b and 3c are rejected at construction.  Formal powers of q^{c1}
// are carried by the Laurent symbol X with c2 = -c1 built in.

#include "wnf/gauss.hpp"

namespace wnf {

enum class RepType { Supercuspidal, SteinbergTwist, PrincipalSeries3a, PrincipalSeries3b };

struct RepExcluded : std::domain_error {
    using std::domain_error::domain_error;
};

class RepDescriptor {
public:
    static RepDescriptor supercuspidal(const MultChar& xi_on_E);
    static RepDescriptor steinberg_twist(const MultChar& mu);
    static RepDescriptor principal_series(const MultChar& beta1, const MultChar& beta2);

    RepType type() const { return type_; }
    std::string name() const;
    const std::shared_ptr<const LocalField>& field() const { return F_; }

    int conductor() const { return cpi_; }
    int conductor_twisted(const MultChar& chi) const;
    MultChar omega() const;  // central character as an element of X
    RepDescriptor contragredient() const;

    // eps(1/2, pi); the S^1 factors gamma (Type 1) and lambda (twists) are
    // normalised to 1, which the valuation layer never sees.
    CycloLaurent eps() const;
    // eps(1/2, chi pi)
    CycloLaurent eps_twisted(const MultChar& chi) const;
    Rat eps_valuation(const Rat& nu, int iso = 0) const;

    const MultChar& xi() const;
    const MultChar& mu() const;
    const MultChar& beta1() const;
    const MultChar& beta2() const;

    // Type 1 helpers
    MultChar xi_prime() const;                          // parameter of the contragredient
    MultChar xi_twisted(const MultChar& chi_on_F) const;  // xi * (chi o N)

    std::string json() const;
    std::string key() const;

    // Galois-twisted descriptor: all character data raised to the b-th power.
    RepDescriptor galois_twisted(long b) const;

    static std::vector<RepDescriptor> enumerate(std::shared_ptr<const LocalField> F,
                                                int cpi, RepType type,
                                                long cap = 100000);

    // character of E's units from an F-character composed with the norm
    static MultChar norm_pullback(const MultChar& chi_on_F,
                                  const std::shared_ptr<const LocalField>& E);
    // restriction of an E-character to the image of F's units
    static MultChar restrict_to_base(const MultChar& xi_on_E);

private:
    RepDescriptor(RepType t, std::shared_ptr<const LocalField> F,
                  std::vector<MultChar> data, int cpi)
        : type_(t), F_(std::move(F)), data_(std::move(data)), cpi_(cpi) {}

    RepType type_;
    std::shared_ptr<const LocalField> F_;
    std::vector<MultChar> data_;  // [xi] or [mu] or [beta1, beta2]
    int cpi_;
};

// Exhaustive norm-one-kernel test (test oracle for the Hilbert-90 shortcut
// used inside the descriptor constructor).
bool xi_nontrivial_on_kernel_exhaustive(const MultChar& xi);

}  // namespace wnf
