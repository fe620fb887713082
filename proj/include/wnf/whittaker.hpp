#pragma once

// Explicit Fourier coefficients c_{t,l}(chi) of local Whittaker newforms,
// Fourier synthesis of W_pi(g_{t,l,v}), the generalised Atkin-Lehner
// relation, the cell decomposition of GL_2(F), and Galois equivariance.
//
// Cells are indexed by g_{t,l,v} = (0, pi^t; -1, -v pi^{-l}) with 0 <= l <= n
// and v in O^x/(1 + m^{min{l, n-l}}).  The coefficient tables apply for
// 1 <= l <= n-1; the endpoints l in {0, n} are reduced to the normalised
// a(.)-values, which gives
//   W_pi(g_{t,0,v}) = eps(1/2, contragredient) [t = -n],
//   W_pi(g_{t,n,v}) = omega(-v)^{-1} psi(-v^{-1} pi^{-n}) [t = -2n].

#include "wnf/reps.hpp"

namespace wnf {

struct CellPoint {
    long t = 0;
    int l = 0;
    UnitClass v;
    int n = 0;  // level; equals c(pi) when attached to a representation
};

CellPoint make_cell(const RepDescriptor& pi, long t, int l, const UnitClass& v);

// Fourier coefficient for 1 <= l <= c(pi) - 1 (0 outside the case lists).
CycloLaurent c_tl(const RepDescriptor& pi, const MultChar& chi, long t, int l);

// Exact value at a cell representative, any 0 <= l <= c(pi).
CycloLaurent whittaker_value(const RepDescriptor& pi, const CellPoint& pt);

// W_{contra}(g_{t,l,v}) = eps(1/2,pi) omega(v) psi(-v^{-1} pi^{t+l})
//                         * W_pi(g_{t+2l-n, n-l, -v}).
// Exact Laurent comparison for Types 2a/3a/3b; for Type 1 the phase of
// eps(1/2, pi) is unresolved, so |.|^2-style data (z times its complex
// conjugate) and valuations are compared instead.
struct ALReport {
    bool ok = false;
    bool exact = false;  // exact comparison (vs Type 1 conjugate-pair data)
};
ALReport atkin_lehner_check(const RepDescriptor& pi, const CellPoint& pt);

// Galois equivariance of Whittaker values.  For b congruent to a on the
// p-power tower and to 1 on every tame order (so alpha = a as a p-adic
// unit), the exact identity is
//
//   tau_b(W_pi(g_{t,l,v}))
//     = omega_{tpi}(alpha)^{-1} (b|p)^{f t} W_{tpi}(g_{t,l,alpha^{-1} v}),
//
// with X-specialisations related by zeta_r -> zeta_r^b.  The first factor
// is the psi^alpha-newform renormalisation (trivial for unramified central
// character); the quadratic sign appears for principal series only, where
// delta^{1/2} inside the normalised induction picks up the unramified
// quadratic character under conjugation.  r = 1 checks the plain
// specialisation (types 1/2a are unaffected by r).
bool galois_act_check(const RepDescriptor& pi, const CellPoint& pt, long a,
                      long r = 1);

// ---- matrices over F at finite precision -------------------------------

// zero, or p^val times a tracked unit.  A zero produced by cancellation is
// only known to vanish modulo p^val (its threshold); exact zeros carry a
// huge threshold.  Equality tests compare at the common known precision.
struct PElt {
    bool zero = true;
    long val = kExactZeroThreshold;
    UnitClass u;

    static constexpr long kExactZeroThreshold = 1L << 40;
    static PElt zero_elt() { return PElt{}; }
    static PElt zero_known_mod(long threshold) { return PElt{true, threshold, {}}; }
    static PElt of(const FracElement& x) { return PElt{false, x.valuation, x.unit}; }
};

struct Mat2 {
    PElt a, b, c, d;  // row major
};

PElt padd(const std::shared_ptr<const LocalField>& F, const PElt& x, const PElt& y);
PElt pmul(const std::shared_ptr<const LocalField>& F, const PElt& x, const PElt& y);
PElt pneg(const std::shared_ptr<const LocalField>& F, const PElt& x);
PElt pinv(const std::shared_ptr<const LocalField>& F, const PElt& x);
bool pelt_eq(const std::shared_ptr<const LocalField>& F, const PElt& x, const PElt& y);
Mat2 mat_mul(const std::shared_ptr<const LocalField>& F, const Mat2& A, const Mat2& B);

struct CellWitness {
    PElt z;   // central scalar
    PElt x;   // unipotent parameter n(x)
    Mat2 k;   // element of K_1(n)
};

struct CellDecomp {
    long t = 0;
    int l = 0;
    UnitClass v;        // exact unit coordinate
    UnitClass v_class;  // canonical representative mod 1 + m^{min{l, n-l}}
    CellWitness w;      // g = z n(x) g_{t,l,v} k
};

// Decompose an invertible matrix into its Z U g_{t,l,v} K_1(n) cell.
CellDecomp decompose_gl2(const std::shared_ptr<const LocalField>& F, const Mat2& g,
                         int n);
// Verify the witness equation and k in K_1(n) at available precision.
bool in_cell(const std::shared_ptr<const LocalField>& F, const Mat2& g,
             const CellDecomp& d, int n);
// The cell representative as a matrix.
Mat2 cell_matrix(const std::shared_ptr<const LocalField>& F, long t, int l,
                 const UnitClass& v);

}  // namespace wnf
