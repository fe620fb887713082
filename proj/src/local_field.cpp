#include "wnf/local_field.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

namespace wnf {

namespace {

// Trial division over F_p; enough for the small degrees shipped in fields.txt.
using PolyP = std::vector<long>;

PolyP poly_mod_p(const std::vector<long>& poly, long p) {
    PolyP r(poly.size());
    for (size_t i = 0; i < poly.size(); ++i) r[i] = mod_pos(poly[i], p);
    while (r.size() > 1 && r.back() == 0) r.pop_back();
    return r;
}

PolyP poly_rem(PolyP a, const PolyP& b, long p) {
    long lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size() && !(a.size() == 1 && a[0] == 0)) {
        long c = mod_pos(a.back() * lead_inv, p);
        size_t k = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i)
            a[k + i] = mod_pos(a[k + i] - c * b[i], p);
        while (a.size() > 1 && a.back() == 0) a.pop_back();
        if (a.size() < b.size()) break;
    }
    return a;
}

}  // namespace

bool poly_irreducible_mod_p(const std::vector<long>& poly, long p) {
    PolyP f = poly_mod_p(poly, p);
    int deg = (int)f.size() - 1;
    if (deg < 1 || f.back() % p == 0) return false;
    if (deg == 1) return true;
    // all monic divisor candidates of degree 1..deg/2
    for (int d = 1; d <= deg / 2; ++d) {
        long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long code = 0; code < count; ++code) {
            PolyP g(d + 1, 0);
            long c = code;
            for (int i = 0; i < d; ++i) { g[i] = c % p; c /= p; }
            g[d] = 1;
            PolyP r = poly_rem(f, g, p);
            if (r.size() == 1 && r[0] == 0) return false;
        }
    }
    return true;
}

namespace {

std::string fields_path() {
    if (const char* env = std::getenv("WHITTAKER_FIELDS_PATH")) return env;
    for (const char* c : {"data/fields.txt", "../data/fields.txt"}) {
        std::ifstream in(c);
        if (in.good()) return c;
    }
    return "data/fields.txt";
}

}  // namespace

LocalField::LocalField(long p, int f, std::vector<long> poly)
    : p_(p), f_(f), poly_(std::move(poly)) {
    if (p < 3) throw std::invalid_argument("LocalField: p must be an odd prime");
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("LocalField: p not prime");
    if ((int)poly_.size() != f_ + 1 || poly_.back() != 1)
        throw std::invalid_argument("LocalField: defining poly must be monic of degree f");
    if (!poly_irreducible_mod_p(poly_, p_))
        throw std::invalid_argument("LocalField: defining poly reducible mod p");
    q_ = 1;
    for (int i = 0; i < f_; ++i) {
        q_ *= p_;
        if (q_ > 1000000) throw std::invalid_argument("LocalField: q too large");
    }
}

std::shared_ptr<const LocalField> LocalField::get(long p, int f) {
    static std::map<std::pair<long, int>, std::shared_ptr<const LocalField>> reg;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(p, f);
    auto it = reg.find(key);
    if (it != reg.end()) return it->second;

    std::ifstream in(fields_path());
    if (!in.good())
        throw std::runtime_error("cannot open fields data file: " + fields_path());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        long lp;
        int lf;
        if (!(ss >> lp >> lf)) continue;
        std::vector<long> poly(lf + 1);
        for (int i = 0; i <= lf; ++i)
            if (!(ss >> poly[i]))
                throw std::runtime_error("fields.txt: truncated line: " + line);
        if (lp == p && lf == f) {
            auto F = std::shared_ptr<const LocalField>(new LocalField(p, f, poly));
            reg[key] = F;
            return F;
        }
    }
    throw std::runtime_error("fields.txt: no entry for p=" + std::to_string(p) +
                             " f=" + std::to_string(f));
}

std::shared_ptr<const LocalField> make_extension_(
    std::shared_ptr<const LocalField> base) {
    auto plain = LocalField::get(base->p(), 2 * base->f());
    auto E = std::shared_ptr<LocalField>(
        new LocalField(plain->p(), plain->f(), plain->defining_poly()));
    E->base_ = std::move(base);
    return E;
}

std::shared_ptr<const LocalField> LocalField::quadratic_extension() const {
    if (!quad_ext_) quad_ext_ = make_extension_(shared_from_this());
    return quad_ext_;
}

// ---------------------------------------------------------------- elements

Int LocalField::modulus(int level) const { return pow_int(Int(p_), level); }

LocalField::Elt LocalField::one() const {
    Elt e(f_, Int(0));
    e[0] = 1;
    return e;
}

LocalField::Elt LocalField::from_int(const Int& n, int level) const {
    Elt e(f_, Int(0));
    Int m = modulus(level);
    e[0] = ((n % m) + m) % m;
    return e;
}

LocalField::Elt LocalField::reduce(const Elt& a, int level) const {
    Int m = modulus(level);
    Elt r(f_, Int(0));
    for (int i = 0; i < f_; ++i) r[i] = ((a[i] % m) + m) % m;
    return r;
}

LocalField::Elt LocalField::add(const Elt& a, const Elt& b, int level) const {
    Int m = modulus(level);
    Elt r(f_);
    for (int i = 0; i < f_; ++i) r[i] = (a[i] + b[i]) % m;
    return r;
}

LocalField::Elt LocalField::sub(const Elt& a, const Elt& b, int level) const {
    Int m = modulus(level);
    Elt r(f_);
    for (int i = 0; i < f_; ++i) r[i] = ((a[i] - b[i]) % m + m) % m;
    return r;
}

LocalField::Elt LocalField::mul(const Elt& a, const Elt& b, int level) const {
    Int m = modulus(level);
    std::vector<Int> prod(2 * f_ - 1, Int(0));
    for (int i = 0; i < f_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < f_; ++j) prod[i + j] += a[i] * b[j];
    }
    // reduce by the monic defining polynomial
    for (int k = 2 * f_ - 2; k >= f_; --k) {
        if (prod[k] == 0) continue;
        Int c = prod[k];
        for (int i = 0; i < f_; ++i) prod[k - f_ + i] -= c * poly_[i];
        prod[k] = 0;
    }
    Elt r(f_);
    for (int i = 0; i < f_; ++i) r[i] = ((prod[i] % m) + m) % m;
    return r;
}

LocalField::Elt LocalField::pow(Elt a, Int e, int level) const {
    if (e < 0) return pow(inv(a, level), -e, level);
    Elt r = one();
    while (e > 0) {
        if ((e & 1) != 0) r = mul(r, a, level);
        a = mul(a, a, level);
        e >>= 1;
    }
    return r;
}

bool LocalField::is_zero(const Elt& a) const {
    for (auto& c : a)
        if (c != 0) return false;
    return true;
}

bool LocalField::is_unit(const Elt& a) const {
    for (auto& c : a)
        if (c % p_ != 0) return true;
    return false;
}

LocalField::Elt LocalField::inv(const Elt& a, int level) const {
    if (!is_unit(a)) throw std::domain_error("inv: not a unit");
    // residue inverse, then Newton lifting x <- x(2 - ax)
    Elt x = pow(reduce(a, 1), Int(q_ - 2), 1);
    int prec = 1;
    while (prec < level) {
        prec = std::min(2 * prec, level);
        Elt ax = mul(a, x, prec);
        Elt two = from_int(2, prec);
        x = mul(x, sub(two, ax, prec), prec);
    }
    return x;
}

// -------------------------------------------------------------- frobenius

const std::vector<LocalField::Elt>& LocalField::frob_images(int level) const {
    if ((int)frob_pows_.size() <= level) frob_pows_.resize(level + 1);
    auto& slot = frob_pows_[level];
    if (!slot.empty()) return slot;

    // r = the root of the defining poly congruent to y^p mod p (Newton lift)
    Elt r;
    if (f_ == 1) {
        r = Elt(1, Int(0));  // irrelevant: frobenius is the identity
    } else {
        Elt y(f_, Int(0));
        y[1] = 1;
        r = pow(y, Int(p_), 1);
        int prec = 1;
        while (prec < level) {
            prec = std::min(2 * prec, level);
            Elt g = from_int(poly_[f_], prec);
            Elt gp = zero();
            for (int i = f_ - 1; i >= 0; --i) {
                gp = add(mul(gp, r, prec), g, prec);
                g = add(mul(g, r, prec), from_int(poly_[i], prec), prec);
            }
            r = sub(r, mul(g, inv(gp, prec), prec), prec);
        }
    }
    slot.resize(f_);
    slot[0] = one();
    for (int i = 1; i < f_; ++i) slot[i] = mul(slot[i - 1], r, level);
    return slot;
}

LocalField::Elt LocalField::frobenius(const Elt& a, int level) const {
    if (f_ == 1) return reduce(a, level);
    const auto& img = frob_images(level);
    Elt r = zero();
    for (int i = 0; i < f_; ++i) {
        if (a[i] == 0) continue;
        Elt term = img[i];
        for (auto& c : term) c = c * a[i];
        r = add(r, reduce(term, level), level);
    }
    return r;
}

Int LocalField::trace_abs(const Elt& a, int level) const {
    Elt s = reduce(a, level);
    Elt t = s;
    for (int i = 1; i < f_; ++i) {
        t = frobenius(t, level);
        s = add(s, t, level);
    }
    for (int i = 1; i < f_; ++i)
        if (s[i] != 0) throw std::logic_error("trace_abs: non-rational trace");
    return s[0];
}

// ------------------------------------------------------------------ units

UnitClass LocalField::unit(const Elt& a, int level) const {
    Elt r = reduce(a, level);
    if (!is_unit(r)) throw std::domain_error("unit: element not a unit");
    return UnitClass{shared_from_this(), level, std::move(r)};
}

UnitClass LocalField::unit_one(int level) const { return unit(one(), level); }

UnitClass LocalField::unit_from_int(long n, int level) const {
    return unit(from_int(Int(n), level), level);
}

UnitClass LocalField::umul(const UnitClass& a, const UnitClass& b) const {
    if (a.level != b.level) throw std::invalid_argument("umul: level mismatch");
    return unit(mul(a.c, b.c, a.level), a.level);
}

UnitClass LocalField::uinv(const UnitClass& a) const {
    return unit(inv(a.c, a.level), a.level);
}

UnitClass LocalField::upow(const UnitClass& a, const Int& e) const {
    return unit(pow(a.c, e, a.level), a.level);
}

UnitClass LocalField::uneg(const UnitClass& a) const {
    return unit(sub(zero(), a.c, a.level), a.level);
}

UnitClass LocalField::ureduce(const UnitClass& a, int level) const {
    if (level > a.level) throw std::invalid_argument("ureduce: cannot raise level");
    return unit(reduce(a.c, level), level);
}

UnitClass LocalField::ulift(const UnitClass& a, int level) const {
    if (level < a.level) return ureduce(a, level);
    return unit(a.c, level);  // integer-lift section of the reduction map
}

bool UnitClass::operator==(const UnitClass& o) const {
    return F.get() == o.F.get() && level == o.level && c == o.c;
}

UnitClass LocalField::teichmuller(const Elt& residue, int level) const {
    Elt r = reduce(residue, 1);
    if (!is_unit(r)) throw std::domain_error("teichmuller: zero residue");
    Elt t = reduce(r, level);
    for (int i = 0; i <= level + 1; ++i) {
        Elt next = pow(t, Int(q_), level);
        if (next == t) break;
        t = next;
    }
    if (pow(t, Int(q_), level) != t)
        throw std::logic_error("teichmuller: iteration did not stabilise");
    return unit(t, level);
}

// -------------------------------------------------- residue field tables

void LocalField::build_residue_tables() const {
    if (!residue_dlog_table_.empty()) return;
    long qq = q_;
    // least primitive root in encoded order
    for (long code = 1; code < qq; ++code) {
        Elt cand(f_, Int(0));
        long c = code;
        for (int i = 0; i < f_; ++i) { cand[i] = c % p_; c /= p_; }
        // multiplicative order
        Elt t = cand;
        long ord = 1;
        while (!(is_unit(t) && t == one())) {
            t = mul(t, cand, 1);
            ++ord;
            if (ord > qq) throw std::logic_error("order computation ran away");
        }
        if (ord == qq - 1) {
            prim_root_ = cand;
            break;
        }
    }
    residue_dlog_table_.assign(qq, -1);
    Elt t = one();
    for (long e = 0; e < qq - 1; ++e) {
        residue_dlog_table_[encode_residue(t)] = e;
        t = mul(t, prim_root_, 1);
    }
}

const LocalField::Elt& LocalField::primitive_root_residue() const {
    build_residue_tables();
    return prim_root_;
}

long LocalField::encode_residue(const Elt& a) const {
    long code = 0, mul = 1;
    for (int i = 0; i < f_; ++i) {
        code += (long)(a[i] % p_) * mul;
        mul *= p_;
    }
    return code;
}

long LocalField::residue_dlog(const Elt& a) const {
    build_residue_tables();
    long code = encode_residue(reduce(a, 1));
    long d = residue_dlog_table_[code];
    if (d < 0) throw std::domain_error("residue_dlog: zero element");
    return d;
}

// ------------------------------------------------------------ unit group

const UnitGroupDesc& LocalField::unit_group(int level) const {
    if (level < 1) throw std::invalid_argument("unit_group: level must be >= 1");
    if ((int)groups_.size() <= level) groups_.resize(level + 1);
    auto& g = groups_[level];
    if (!g.gens.empty()) return g;

    build_residue_tables();
    g.gens.push_back(teichmuller(prim_root_, level));
    g.orders.push_back(q_ - 1);
    if (level >= 2) {
        long p_ord = 1;
        for (int i = 0; i < level - 1; ++i) p_ord *= p_;
        for (int i = 0; i < f_; ++i) {
            Elt gen = zero();
            gen[i] = p_;
            gen = add(gen, one(), level);  // 1 + p*y^i
            g.gens.push_back(unit(gen, level));
            g.orders.push_back(p_ord);
        }
    }
    g.total_order = 1;
    for (long o : g.orders) g.total_order *= o;
    return g;
}

std::vector<long> LocalField::dlog(const UnitClass& u) const {
    const auto& g = unit_group(u.level);
    std::vector<long> exps(g.gens.size(), 0);
    exps[0] = residue_dlog(u.c);
    UnitClass w = umul(u, upow(uinv(g.gens[0]), Int(exps[0])));
    // peel one-unit layers
    for (int j = 1; j < u.level; ++j) {
        // w = 1 + p^j * y mod p^{j+1}
        Int pj = pow_int(Int(p_), j);
        Elt diff = sub(w.c, one(), u.level);
        for (int i = 0; i < f_; ++i) {
            Int coeff = (diff[i] / pj) % p_;
            long a = (long)coeff;
            if (a != 0) {
                long step = 1;
                for (int s = 1; s < j; ++s) step *= p_;
                exps[1 + i] = (exps[1 + i] + a * step) % g.orders[1 + i];
                w = umul(w, upow(uinv(g.gens[1 + i]), Int(a) * Int(step)));
            }
        }
    }
    if (!(w == unit_one(u.level))) throw std::logic_error("dlog: did not reach 1");
    return exps;
}

UnitClass LocalField::from_exps(const std::vector<long>& e, int level) const {
    const auto& g = unit_group(level);
    if (e.size() != g.gens.size()) throw std::invalid_argument("from_exps: arity");
    UnitClass u = unit_one(level);
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) u = umul(u, upow(g.gens[i], Int(e[i])));
    return u;
}

std::vector<UnitClass> LocalField::transversal(int j, int level) const {
    if (j < 1 || j > level) throw std::invalid_argument("transversal: bad j");
    const auto& g = unit_group(level);
    long sub = 1;
    for (int s = 1; s < j; ++s) sub *= p_;
    std::vector<UnitClass> out;
    std::vector<long> e(g.gens.size(), 0);
    while (true) {
        out.push_back(from_exps(e, level));
        size_t i = 0;
        for (; i < e.size(); ++i) {
            long lim = (i == 0) ? (q_ - 1) : sub;
            if (++e[i] < lim) break;
            e[i] = 0;
        }
        if (i == e.size()) break;
    }
    return out;
}

std::vector<UnitClass> LocalField::all_units(int level, long cap) const {
    const auto& g = unit_group(level);
    if (g.total_order > cap)
        throw std::length_error("all_units: group larger than cap");
    std::vector<UnitClass> elems{unit_one(level)};
    for (size_t i = 0; i < g.gens.size(); ++i) {
        std::vector<UnitClass> next;
        next.reserve(elems.size() * g.orders[i]);
        UnitClass step = g.gens[i];
        for (auto& e : elems) {
            UnitClass cur = e;
            for (long j = 0; j < g.orders[i]; ++j) {
                next.push_back(cur);
                if (j + 1 < g.orders[i]) cur = umul(cur, step);
            }
        }
        elems = std::move(next);
    }
    return elems;
}

// ----------------------------------------------- quadratic extension data

const std::vector<LocalField::Elt>& LocalField::embed_images(int level) const {
    if (!base_) throw std::logic_error("embed_images: field has no base");
    if ((int)embed_pows_.size() <= level) embed_pows_.resize(level + 1);
    auto& slot = embed_pows_[level];
    if (!slot.empty()) return slot;

    const auto& bpoly = base_->defining_poly();
    int bf = base_->f();
    // residue-field root of the base polynomial, least in encoded order
    Elt root;
    bool found = false;
    for (long code = 0; code < q_ && !found; ++code) {
        Elt cand(f_, Int(0));
        long c = code;
        for (int i = 0; i < f_; ++i) { cand[i] = c % p_; c /= p_; }
        Elt val = from_int(bpoly[bf], 1);
        for (int i = bf - 1; i >= 0; --i)
            val = add(mul(val, cand, 1), from_int(bpoly[i], 1), 1);
        if (is_zero(val)) {
            root = cand;
            found = true;
        }
    }
    if (!found) throw std::logic_error("embed_images: no residue root of base poly");
    // Newton lift
    int prec = 1;
    while (prec < level) {
        prec = std::min(2 * prec, level);
        Elt gv = from_int(bpoly[bf], prec), gp = zero();
        for (int i = bf - 1; i >= 0; --i) {
            gp = add(mul(gp, root, prec), gv, prec);
            gv = add(mul(gv, root, prec), from_int(bpoly[i], prec), prec);
        }
        root = sub(root, mul(gv, inv(gp, prec), prec), prec);
    }
    slot.resize(bf);
    slot[0] = one();
    for (int i = 1; i < bf; ++i) slot[i] = mul(slot[i - 1], root, level);
    return slot;
}

LocalField::Elt LocalField::embed_base(const Elt& a, int level) const {
    const auto& img = embed_images(level);
    Elt r = zero();
    for (size_t i = 0; i < img.size(); ++i) {
        if (a[i] == 0) continue;
        Elt term = img[i];
        for (auto& c : term) c = c * a[i];
        r = add(r, reduce(term, level), level);
    }
    return r;
}

UnitClass LocalField::embed_base_unit(const UnitClass& u, int level) const {
    if (u.F.get() != base_.get())
        throw std::invalid_argument("embed_base_unit: wrong base field");
    if (u.level < level) throw std::invalid_argument("embed_base_unit: base level too low");
    return unit(embed_base(base_->reduce(u.c, level), level), level);
}

LocalField::Elt LocalField::conj_base(const Elt& a, int level) const {
    if (!base_) throw std::logic_error("conj_base: field has no base");
    Elt r = reduce(a, level);
    for (int i = 0; i < base_->f(); ++i) r = frobenius(r, level);
    return r;
}

LocalField::Elt LocalField::project_base(const Elt& a, int level) const {
    if (!base_) throw std::logic_error("project_base: field has no base");
    int bf = base_->f();
    const auto& img = embed_images(level);
    Int m = modulus(level);
    // solve sum_j b_j img[j] = a over Z/p^level (f_ equations, bf unknowns)
    std::vector<std::vector<Int>> M(f_, std::vector<Int>(bf + 1, Int(0)));
    for (int i = 0; i < f_; ++i) {
        for (int j = 0; j < bf; ++j) M[i][j] = img[j][i];
        M[i][bf] = a[i] % m;
    }
    std::vector<int> pivot_row(bf, -1);
    std::vector<bool> used(f_, false);
    for (int col = 0; col < bf; ++col) {
        int pr = -1;
        for (int r = 0; r < f_; ++r)
            if (!used[r] && M[r][col] % p_ != 0) { pr = r; break; }
        if (pr < 0) throw std::logic_error("project_base: singular system");
        used[pr] = true;
        pivot_row[col] = pr;
        // normalise pivot row
        Int inv_piv = 1;
        {   // inverse of M[pr][col] mod p^level by Newton on integers
            Int x = Int(inv_mod((long)(M[pr][col] % p_), p_));
            Int mod = p_;
            while (mod < m) {
                mod = mod * mod;
                if (mod > m) mod = m;
                x = (x * (2 - M[pr][col] * x % mod) % mod + mod) % mod;
            }
            inv_piv = ((x % m) + m) % m;
        }
        for (int j = 0; j <= bf; ++j) M[pr][j] = M[pr][j] * inv_piv % m;
        for (int r = 0; r < f_; ++r) {
            if (r == pr || M[r][col] == 0) continue;
            Int c = M[r][col];
            for (int j = 0; j <= bf; ++j)
                M[r][j] = ((M[r][j] - c * M[pr][j]) % m + m) % m;
        }
    }
    for (int r = 0; r < f_; ++r)
        if (!used[r] && M[r][bf] != 0)
            throw std::logic_error("project_base: element not in base field image");
    Elt b(bf, Int(0));
    for (int col = 0; col < bf; ++col) b[col] = M[pivot_row[col]][bf];
    return b;
}

UnitClass LocalField::norm_to_base(const UnitClass& u) const {
    Elt w = mul(u.c, conj_base(u.c, u.level), u.level);
    return base_->unit(project_base(w, u.level), u.level);
}

LocalField::Elt LocalField::trace_to_base(const Elt& a, int level) const {
    Elt w = add(reduce(a, level), conj_base(a, level), level);
    return project_base(w, level);
}

// -------------------------------------------------------------- fractions

FracElement frac(std::shared_ptr<const LocalField> F, long valuation, UnitClass u) {
    return FracElement{std::move(F), valuation, std::move(u)};
}

FracElement frac_one(std::shared_ptr<const LocalField> F, long valuation, int level) {
    auto u = F->unit_one(level);
    return FracElement{std::move(F), valuation, std::move(u)};
}

FracElement fmul(const FracElement& a, const FracElement& b) {
    int lv = std::min(a.unit.level, b.unit.level);
    auto F = a.F;
    return FracElement{F, a.valuation + b.valuation,
                       F->umul(F->ureduce(a.unit, lv), F->ureduce(b.unit, lv))};
}

FracElement finv(const FracElement& a) {
    return FracElement{a.F, -a.valuation, a.F->uinv(a.unit)};
}

}  // namespace wnf
