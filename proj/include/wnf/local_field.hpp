#pragma once

// Arithmetic in unramified extensions F/Q_p truncated modulo p^k.
//
// A field is described by (p, f) and a monic degree-f defining polynomial
// that is irreducible modulo p; elements of O_F/m^k are polynomials in the
// defining root with integer coefficients reduced mod p^k.  Only e = 1 is
// representable: the uniformiser is always p itself.

#include "wnf/rat.hpp"

#include <memory>
#include <vector>

namespace wnf {

class LocalField;

// A unit of (O_F/m^k)^x.  coeffs[i] is the coefficient of y^i, 0 <= i < f,
// each reduced into [0, p^k); the reduction mod p must be nonzero.
struct UnitClass {
    std::shared_ptr<const LocalField> F;
    int level = 0;
    std::vector<Int> c;

    bool operator==(const UnitClass& o) const;
};

// A nonzero element of F^x known to finite precision: p^valuation * unit.
struct FracElement {
    std::shared_ptr<const LocalField> F;
    long valuation = 0;
    UnitClass unit;
};

struct UnitGroupDesc {
    // gens[0] has order q-1 (Teichmueller lift of the least primitive root);
    // gens[1..f] have order p^(level-1) and generate the one-units.
    std::vector<UnitClass> gens;
    std::vector<long> orders;
    Int total_order;
};

class LocalField : public std::enable_shared_from_this<LocalField> {
public:
    // Registry backed by the fields.txt data file (see data/fields.txt and
    // the WHITTAKER_FIELDS_PATH environment variable).
    static std::shared_ptr<const LocalField> get(long p, int f);

    // The unramified quadratic extension (p, 2f), with embedding data built.
    std::shared_ptr<const LocalField> quadratic_extension() const;

    long p() const { return p_; }
    int f() const { return f_; }
    long q() const { return q_; }
    const std::vector<long>& defining_poly() const { return poly_; }

    // ---- element arithmetic at a given level (all inputs same field) ----
    using Elt = std::vector<Int>;  // size f, coefficients mod p^level

    Int modulus(int level) const;             // p^level
    Elt zero() const { return Elt(f_, Int(0)); }
    Elt one() const;
    Elt from_int(const Int& n, int level) const;
    Elt add(const Elt& a, const Elt& b, int level) const;
    Elt sub(const Elt& a, const Elt& b, int level) const;
    Elt mul(const Elt& a, const Elt& b, int level) const;
    Elt pow(Elt a, Int e, int level) const;
    Elt inv(const Elt& a, int level) const;   // a must be a unit
    bool is_zero(const Elt& a) const;
    bool is_unit(const Elt& a) const;         // nonzero mod p
    Elt reduce(const Elt& a, int level) const;

    // Frobenius lift x -> x^p (the canonical generator of Gal(F/Q_p)).
    Elt frobenius(const Elt& a, int level) const;
    // Absolute trace down to Z/p^level.
    Int trace_abs(const Elt& a, int level) const;

    // ---- units ----
    UnitClass unit(const Elt& a, int level) const;
    UnitClass unit_one(int level) const;
    UnitClass unit_from_int(long n, int level) const;
    UnitClass umul(const UnitClass& a, const UnitClass& b) const;
    UnitClass uinv(const UnitClass& a) const;
    UnitClass upow(const UnitClass& a, const Int& e) const;
    UnitClass uneg(const UnitClass& a) const;
    UnitClass ureduce(const UnitClass& a, int level) const;
    UnitClass ulift(const UnitClass& a, int level) const;  // integer-lift section

    // Teichmueller lift of a nonzero residue-field element.
    UnitClass teichmuller(const Elt& residue, int level) const;

    // Structure of (O/m^level)^x; memoised per level.
    const UnitGroupDesc& unit_group(int level) const;

    // Exponent vector of u with respect to unit_group(level).gens.
    std::vector<long> dlog(const UnitClass& u) const;
    UnitClass from_exps(const std::vector<long>& e, int level) const;

    // Representatives of O^x/(1+m^j) inside level `level`, j >= 1.
    std::vector<UnitClass> transversal(int j, int level) const;

    // All units at `level`; refused above `cap` elements.
    std::vector<UnitClass> all_units(int level, long cap = 2000000) const;

    // Least primitive root of the residue field (encoded form), its lift.
    const Elt& primitive_root_residue() const;
    long residue_dlog(const Elt& a) const;    // dlog base primitive root
    long encode_residue(const Elt& a) const;  // sum c_i p^i with c_i mod p

    // ---- quadratic extension support (valid on E = F.quadratic_extension()) ----
    // Base field of which this field is the quadratic extension (or null).
    std::shared_ptr<const LocalField> base() const { return base_; }
    // Embedding of the base field: image in *this* of the base's root.
    Elt embed_base(const Elt& a_of_base, int level) const;
    UnitClass embed_base_unit(const UnitClass& u, int level) const;
    // Galois conjugation over the base field (Frobenius^f_base).
    Elt conj_base(const Elt& a, int level) const;
    // Express an element of the image of the base field in base coordinates.
    Elt project_base(const Elt& a, int level) const;
    // Relative norm and trace to the base field.
    UnitClass norm_to_base(const UnitClass& u) const;
    Elt trace_to_base(const Elt& a, int level) const;

private:
    LocalField(long p, int f, std::vector<long> poly);

    long p_, q_;
    int f_;
    std::vector<long> poly_;  // monic, size f_+1, constant first

    std::shared_ptr<const LocalField> base_;  // set on quadratic extensions

    // lazy caches (built on first use; logically immutable after)
    mutable std::vector<UnitGroupDesc> groups_;          // per level
    mutable std::vector<long> residue_dlog_table_;       // index: encoded residue
    mutable Elt prim_root_;
    mutable std::vector<std::vector<Elt>> frob_pows_;    // per level: powers of phi(y)
    mutable std::vector<std::vector<Elt>> embed_pows_;   // per level: powers of iota(y_base)
    mutable std::shared_ptr<const LocalField> quad_ext_;

    void build_residue_tables() const;
    const std::vector<Elt>& frob_images(int level) const;
    const std::vector<Elt>& embed_images(int level) const;

    friend std::shared_ptr<const LocalField> make_extension_(
        std::shared_ptr<const LocalField> base);
};

// Irreducibility test over F_p by trial division (small degrees only).
bool poly_irreducible_mod_p(const std::vector<long>& poly, long p);

// Convenience constructors for FracElement.
FracElement frac(std::shared_ptr<const LocalField> F, long valuation,
                 UnitClass unit);
FracElement frac_one(std::shared_ptr<const LocalField> F, long valuation,
                     int level);
FracElement fmul(const FracElement& a, const FracElement& b);
FracElement finv(const FracElement& a);

}  // namespace wnf
