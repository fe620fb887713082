#pragma once

// The p-adic valuation oracle for exact cyclotomic numbers, normalised by
// val_p(p) = 1.
//
// An isomorphism between the value field and a p-adic field is pinned per
// (p, m, iso_choice): split m = p^a m', embed zeta_{m'} as a Teichmueller
// root in the unramified extension of degree ord_{m'}(p) computed mod p^B,
// and treat zeta_{p^a} as the generic root of the p^a-th cyclotomic
// polynomial in the Eisenstein tower with uniformiser (zeta_{p^a}-1) of
// valuation 1/phi(p^a).  Zero detection is exact and happens before any
// embedding; precision B escalates under a norm-derived cap, so the reading
// always terminates.

#include "wnf/cyclo.hpp"
#include "wnf/rat.hpp"

namespace wnf {

// iso_choice selects between two deterministic embeddings (0 = default,
// 1 = alternate Teichmueller root), used to confirm results do not depend
// on the choice of isomorphism.  B_start is the initial working precision;
// answers are independent of it (escalation never changes a reading), which
// the regression suite pins by starting at several values.
ValRat val_p_cyclo(const CycloNumber& z, long p, int iso_choice = 0,
                   int B_start = 12);

enum class ValCertainty { exact, lower_bound };

struct LaurentValuation {
    ValRat value;
    ValCertainty certainty;
};

// Term-wise valuation of a Laurent value given nu = val_p(X) (signed).
// Exact when the minimum is attained by a unique term; otherwise a sound
// ultrametric lower bound.
LaurentValuation val_p_laurent(const CycloLaurent& z, long p, const Rat& nu,
                               int iso_choice = 0);

// Residue code of the pinned image of zeta_{m_tame} (the deterministic
// Teichmueller-root choice realising the isomorphism); exposed so that
// independent oracles can speak about the same embedding.
long pinned_tame_root_code(long p, long m_tame, int iso_choice = 0);

}  // namespace wnf
