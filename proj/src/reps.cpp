#include "wnf/reps.hpp"

#include <algorithm>
#include <sstream>

namespace wnf {

namespace {

// character with prescribed values on the canonical generators
MultChar char_from_values(const std::shared_ptr<const LocalField>& F, int level,
                          const std::vector<CycloNumber>& values) {
    const auto& g = F->unit_group(level);
    if (values.size() != g.gens.size())
        throw std::invalid_argument("char_from_values: arity");
    std::vector<long> exps(values.size());
    for (size_t i = 0; i < values.size(); ++i)
        exps[i] = root_exponent(values[i], g.orders[i]);
    return MultChar(F, level, std::move(exps));
}

// xi composed with the Frobenius of E/F (the Galois-conjugate character)
MultChar frobenius_conjugate(const MultChar& xi) {
    const auto& E = xi.field();
    int level = xi.level();
    const auto& g = E->unit_group(level);
    std::vector<CycloNumber> values;
    values.reserve(g.gens.size());
    for (auto& gen : g.gens)
        values.push_back(xi.eval(E->unit(E->conj_base(gen.c, level), level)));
    return char_from_values(E, level, values);
}

// By Hilbert 90 the norm-one kernel of the unramified quadratic extension
// is {u sigma(u)^{-1}}, so xi is trivial on it iff xi is Frobenius-invariant.
bool nontrivial_on_norm_one_kernel(const MultChar& xi) {
    return !(frobenius_conjugate(xi) == xi);
}

}  // namespace

// exhaustive version, kept as an independent oracle for the tests
bool xi_nontrivial_on_kernel_exhaustive(const MultChar& xi) {
    const auto& E = xi.field();
    auto F = E->base();
    int level = std::max(xi.conductor(), 1);
    for (auto& u : E->all_units(level)) {
        if (!(E->norm_to_base(u) == F->unit_one(level))) continue;
        CycloNumber v = xi.eval(u);
        if (!(v.is_rational() && v.rational_value() == 1)) return true;
    }
    return false;
}

RepDescriptor RepDescriptor::supercuspidal(const MultChar& xi_on_E) {
    const auto& E = xi_on_E.field();
    if (!E->base())
        throw std::invalid_argument("supercuspidal: xi must live on a quadratic extension");
    if (!nontrivial_on_norm_one_kernel(xi_on_E))
        throw RepExcluded("supercuspidal: xi trivial on the norm-one kernel (not dihedral data)");
    int c = xi_on_E.conductor();
    return RepDescriptor(RepType::Supercuspidal, E->base(), {xi_on_E}, 2 * c);
}

RepDescriptor RepDescriptor::steinberg_twist(const MultChar& mu) {
    if (mu.conductor() < 1)
        throw RepExcluded("steinberg_twist: unramified mu (Type 2b) is out of scope");
    return RepDescriptor(RepType::SteinbergTwist, mu.field(), {mu}, 2 * mu.conductor());
}

RepDescriptor RepDescriptor::principal_series(const MultChar& beta1,
                                              const MultChar& beta2) {
    if (beta1.field().get() != beta2.field().get())
        throw std::invalid_argument("principal_series: field mismatch");
    if (beta1.conductor() < 1 || beta2.conductor() < 1)
        throw RepExcluded("principal_series: an unramified factor (Type 3c) is out of scope");
    RepType t = (beta1 == beta2) ? RepType::PrincipalSeries3b : RepType::PrincipalSeries3a;
    return RepDescriptor(t, beta1.field(), {beta1, beta2},
                         beta1.conductor() + beta2.conductor());
}

std::string RepDescriptor::name() const {
    switch (type_) {
        case RepType::Supercuspidal: return "1";
        case RepType::SteinbergTwist: return "2a";
        case RepType::PrincipalSeries3a: return "3a";
        case RepType::PrincipalSeries3b: return "3b";
    }
    return "?";
}

const MultChar& RepDescriptor::xi() const {
    if (type_ != RepType::Supercuspidal) throw std::logic_error("xi: wrong type");
    return data_[0];
}
const MultChar& RepDescriptor::mu() const {
    if (type_ != RepType::SteinbergTwist) throw std::logic_error("mu: wrong type");
    return data_[0];
}
const MultChar& RepDescriptor::beta1() const {
    if (data_.size() != 2) throw std::logic_error("beta1: wrong type");
    return data_[0];
}
const MultChar& RepDescriptor::beta2() const {
    if (data_.size() != 2) throw std::logic_error("beta2: wrong type");
    return data_[1];
}

MultChar RepDescriptor::norm_pullback(const MultChar& chi_on_F,
                                      const std::shared_ptr<const LocalField>& E) {
    int level = std::max(chi_on_F.conductor(), 1);
    const auto& g = E->unit_group(level);
    std::vector<CycloNumber> values;
    values.reserve(g.gens.size());
    for (auto& gen : g.gens) values.push_back(chi_on_F.eval(E->norm_to_base(gen)));
    return char_from_values(E, level, values);
}

MultChar RepDescriptor::restrict_to_base(const MultChar& xi_on_E) {
    const auto& E = xi_on_E.field();
    auto F = E->base();
    if (!F) throw std::invalid_argument("restrict_to_base: no base field");
    int level = std::max(xi_on_E.conductor(), 1);
    const auto& g = F->unit_group(level);
    std::vector<CycloNumber> values;
    values.reserve(g.gens.size());
    for (auto& gen : g.gens)
        values.push_back(xi_on_E.eval(E->embed_base_unit(F->ulift(gen, level), level)));
    return char_from_values(F, level, values);
}

int RepDescriptor::conductor_twisted(const MultChar& chi) const {
    switch (type_) {
        case RepType::Supercuspidal:
            return 2 * xi_twisted(chi).conductor();
        case RepType::SteinbergTwist:
            return std::max(1, 2 * (chi * mu()).conductor());
        default:
            return (chi * beta1()).conductor() + (chi * beta2()).conductor();
    }
}

MultChar RepDescriptor::omega() const {
    switch (type_) {
        case RepType::Supercuspidal:
            // chi_{E/F} is unramified, so on units omega = xi restricted
            return restrict_to_base(xi());
        case RepType::SteinbergTwist:
            return mu() * mu();
        default:
            return beta1() * beta2();
    }
}

RepDescriptor RepDescriptor::contragredient() const {
    switch (type_) {
        case RepType::Supercuspidal: {
            RepDescriptor r = supercuspidal(xi_prime());
            if (r.conductor() != conductor())
                throw std::logic_error("contragredient: conductor changed");
            return r;
        }
        case RepType::SteinbergTwist:
            return steinberg_twist(mu().inverse());
        default:
            // beta1 + beta2 -> beta2^{-1} + beta1^{-1}, keeping the X slot
            return principal_series(beta2().inverse(), beta1().inverse());
    }
}

MultChar RepDescriptor::xi_prime() const {
    MultChar r = restrict_to_base(xi());
    return xi() * norm_pullback(r.inverse(), xi().field());
}

MultChar RepDescriptor::xi_twisted(const MultChar& chi_on_F) const {
    return xi() * norm_pullback(chi_on_F, xi().field());
}

CycloLaurent RepDescriptor::eps() const {
    switch (type_) {
        case RepType::Supercuspidal:
            return CycloLaurent::of(epsilon_gl1(xi()).value);
        case RepType::SteinbergTwist: {
            const auto& e = epsilon_gl1(mu()).value;
            return CycloLaurent::of(e * e);
        }
        default: {
            const auto& e1 = epsilon_gl1(beta1()).value;
            const auto& e2 = epsilon_gl1(beta2()).value;
            return CycloLaurent::of(e1 * e2, beta2().conductor() - beta1().conductor());
        }
    }
}

CycloLaurent RepDescriptor::eps_twisted(const MultChar& chi) const {
    switch (type_) {
        case RepType::Supercuspidal:
            return CycloLaurent::of(epsilon_gl1(xi_twisted(chi)).value);
        case RepType::SteinbergTwist: {
            MultChar t = chi * mu();
            if (t.conductor() == 0) return CycloLaurent::of(CycloNumber::rational(-1));
            const auto& e = epsilon_gl1(t).value;
            return CycloLaurent::of(e * e);
        }
        default: {
            MultChar t1 = chi * beta1(), t2 = chi * beta2();
            CycloNumber e1 = t1.conductor() ? epsilon_gl1(t1).value : CycloNumber::rational(1);
            CycloNumber e2 = t2.conductor() ? epsilon_gl1(t2).value : CycloNumber::rational(1);
            return CycloLaurent::of(e1 * e2, t2.conductor() - t1.conductor());
        }
    }
}

Rat RepDescriptor::eps_valuation(const Rat& nu, int iso) const {
    auto lv = val_p_laurent(eps(), F_->p(), nu, iso);
    if (lv.certainty != ValCertainty::exact || lv.value.infinite)
        throw std::logic_error("eps_valuation: unexpected non-exact reading");
    return lv.value.value;
}

std::string RepDescriptor::json() const {
    std::ostringstream os;
    os << "{\"type\": \"" << name() << "\", \"p\": " << F_->p()
       << ", \"f\": " << F_->f() << ", \"conductor\": " << cpi_ << ", \"chars\": [";
    for (size_t i = 0; i < data_.size(); ++i) {
        if (i) os << ", ";
        os << "{\"conductor\": " << data_[i].conductor() << ", \"exps\": [";
        for (size_t j = 0; j < data_[i].exps().size(); ++j) {
            if (j) os << ", ";
            os << data_[i].exps()[j];
        }
        os << "]}";
    }
    os << "]}";
    return os.str();
}

std::string RepDescriptor::key() const {
    std::string k = name();
    for (auto& c : data_) k += "|" + c.key();
    return k;
}

RepDescriptor RepDescriptor::galois_twisted(long b) const {
    switch (type_) {
        case RepType::Supercuspidal:
            return supercuspidal(xi().galois_scaled(b));
        case RepType::SteinbergTwist:
            return steinberg_twist(mu().galois_scaled(b));
        default:
            return principal_series(beta1().galois_scaled(b), beta2().galois_scaled(b));
    }
}

std::vector<RepDescriptor> RepDescriptor::enumerate(
    std::shared_ptr<const LocalField> F, int cpi, RepType type, long cap) {
    std::vector<RepDescriptor> out;
    switch (type) {
        case RepType::Supercuspidal: {
            if (cpi % 2) return out;
            int cxi = cpi / 2;
            auto E = F->quadratic_extension();
            for (auto& xi : MultChar::enumerate(E, cxi, cap)) {
                if (xi.conductor() != cxi) continue;
                if (!nontrivial_on_norm_one_kernel(xi)) continue;
                // xi and its Frobenius conjugate induce the same pi
                MultChar conj = frobenius_conjugate(xi);
                if (conj.key() < xi.key()) continue;
                out.push_back(supercuspidal(xi));
            }
            break;
        }
        case RepType::SteinbergTwist: {
            if (cpi % 2) return out;
            for (auto& mu : MultChar::enumerate(F, cpi / 2, cap))
                if (mu.conductor() == cpi / 2) out.push_back(steinberg_twist(mu));
            break;
        }
        case RepType::PrincipalSeries3b: {
            if (cpi % 2) return out;
            for (auto& b : MultChar::enumerate(F, cpi / 2, cap))
                if (b.conductor() == cpi / 2) out.push_back(principal_series(b, b));
            break;
        }
        case RepType::PrincipalSeries3a: {
            int kmax = cpi - 1;
            auto chars = MultChar::enumerate(F, kmax, cap);
            for (auto& b1 : chars) {
                if (b1.conductor() < 1) continue;
                for (auto& b2 : chars) {
                    if (b2.conductor() < 1) continue;
                    if (b1.conductor() + b2.conductor() != cpi) continue;
                    if (b1 == b2) continue;
                    if (!(b1.key() < b2.key())) continue;  // unordered pair once
                    out.push_back(principal_series(b1, b2));
                }
            }
            break;
        }
    }
    return out;
}

}  // namespace wnf
