#include "wnf/characters.hpp"

#include <sstream>

namespace wnf {

MultChar::MultChar(std::shared_ptr<const LocalField> F, int level,
                   std::vector<long> exps)
    : F_(std::move(F)), level_(level), exps_(std::move(exps)) {
    const auto& g = F_->unit_group(level_);
    if (exps_.size() != g.gens.size())
        throw std::invalid_argument("MultChar: exponent arity mismatch");
    for (size_t i = 0; i < exps_.size(); ++i) exps_[i] = mod_pos(exps_[i], g.orders[i]);
}

MultChar MultChar::trivial(std::shared_ptr<const LocalField> F, int level) {
    size_t n = F->unit_group(level).gens.size();
    return MultChar(std::move(F), level, std::vector<long>(n, 0));
}

long MultChar::value_order() const {
    const auto& g = F_->unit_group(level_);
    long L = 1;
    for (size_t i = 0; i < exps_.size(); ++i) {
        long o = g.orders[i] / gcd_long(g.orders[i], exps_[i]);
        L = lcm_long(L, o);
    }
    return L;
}

CycloNumber MultChar::eval(const UnitClass& u) const {
    if (u.F.get() != F_.get()) throw std::invalid_argument("MultChar::eval: wrong field");
    UnitClass v = u;
    if (u.level < level_) {
        if (u.level < std::max(conductor(), 1))
            throw std::invalid_argument("MultChar::eval: argument level below conductor");
        v = F_->ulift(u, level_);
    } else if (u.level > level_) {
        v = F_->ureduce(u, level_);
    }
    const auto& g = F_->unit_group(level_);
    auto d = F_->dlog(v);
    long L = value_order();
    long e = 0;
    for (size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] == 0) continue;
        long gi = gcd_long(g.orders[i], exps_[i]);
        long oi = g.orders[i] / gi;  // order of chi(gen_i)
        long contrib = mod_pos((exps_[i] / gi) % oi * (d[i] % oi), oi);
        e = mod_pos(e + (L / oi) * contrib, L);
    }
    return CycloNumber::root_of_unity(L, e);
}

CycloNumber MultChar::eval(const FracElement& x) const { return eval(x.unit); }

int MultChar::conductor() const {
    if (cond_ >= 0) return cond_;
    int c = 0;
    for (long e : exps_)
        if (e != 0) { c = 1; break; }
    if (c == 1 && level_ >= 2) {
        for (int j = level_ - 1; j >= 1; --j) {
            bool detects = false;
            for (int i = 0; i < F_->f() && !detects; ++i) {
                LocalField::Elt g = F_->zero();
                g[i] = pow_int(Int(F_->p()), j);
                g = F_->add(g, F_->one(), level_);
                if (!eval(F_->unit(g, level_)).is_rational()) detects = true;
                else if (eval(F_->unit(g, level_)).rational_value() != 1) detects = true;
            }
            if (detects) { c = j + 1; break; }
        }
    }
    cond_ = c;
    return cond_;
}

MultChar MultChar::at_level(int k) const {
    if (k == level_) return *this;
    const auto& gk = F_->unit_group(k);
    std::vector<long> e(gk.gens.size(), 0);
    e[0] = exps_[0];
    if (k > level_) {
        long scale = 1;
        for (int i = 0; i < k - level_; ++i) scale *= F_->p();
        for (size_t i = 1; i < exps_.size(); ++i) e[i] = exps_[i] * scale;
        // level-1 characters have no wild part to carry
    } else {
        if (k < std::max(conductor(), 1))
            throw std::invalid_argument("at_level: cannot truncate below conductor");
        long scale = 1;
        for (int i = 0; i < level_ - k; ++i) scale *= F_->p();
        for (size_t i = 1; i < exps_.size(); ++i) {
            if (exps_[i] % scale != 0)
                throw std::logic_error("at_level: exponent not divisible (conductor bug)");
            if (i < e.size()) e[i] = exps_[i] / scale;
        }
        if (k == 1)
            for (size_t i = 1; i < exps_.size(); ++i)
                if (exps_[i] != 0) throw std::logic_error("at_level: wild part at level 1");
    }
    MultChar r(F_, k, std::move(e));
    r.cond_ = cond_;
    return r;
}

MultChar MultChar::operator*(const MultChar& o) const {
    if (F_.get() != o.F_.get()) throw std::invalid_argument("MultChar*: field mismatch");
    int k = std::max(level_, o.level_);
    MultChar a = at_level(k), b = o.at_level(k);
    const auto& g = F_->unit_group(k);
    std::vector<long> e(a.exps_.size());
    for (size_t i = 0; i < e.size(); ++i)
        e[i] = mod_pos(a.exps_[i] + b.exps_[i], g.orders[i]);
    return MultChar(F_, k, std::move(e));
}

MultChar MultChar::inverse() const {
    const auto& g = F_->unit_group(level_);
    std::vector<long> e(exps_.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = mod_pos(-exps_[i], g.orders[i]);
    MultChar r(F_, level_, std::move(e));
    r.cond_ = cond_;  // inversion preserves the conductor
    return r;
}

MultChar MultChar::power(long n) const {
    const auto& g = F_->unit_group(level_);
    std::vector<long> e(exps_.size());
    for (size_t i = 0; i < e.size(); ++i)
        e[i] = mod_pos(exps_[i] % g.orders[i] * mod_pos(n, g.orders[i]), g.orders[i]);
    return MultChar(F_, level_, std::move(e));
}

MultChar MultChar::galois_scaled(long b) const { return power(b); }

bool MultChar::operator==(const MultChar& o) const {
    if (F_.get() != o.F_.get()) return false;
    int k = std::max(std::max(level_, o.level_), 1);
    return at_level(k).exps_ == o.at_level(k).exps_;
}

std::string MultChar::key() const {
    MultChar n = at_level(std::max(conductor(), 1));
    std::ostringstream os;
    os << F_.get() << ":" << n.level_;
    for (long e : n.exps_) os << ":" << e;
    return os.str();
}

std::vector<MultChar> MultChar::enumerate(std::shared_ptr<const LocalField> F,
                                          int k, long cap) {
    if (k == 0) return {trivial(F)};
    const auto& g = F->unit_group(k);
    if (g.total_order > cap)
        throw std::length_error("MultChar::enumerate: count exceeds cap");
    std::vector<MultChar> out;
    std::vector<long> e(g.gens.size(), 0);
    while (true) {
        out.emplace_back(F, k, e);
        size_t i = 0;
        for (; i < e.size(); ++i) {
            if (++e[i] < g.orders[i]) break;
            e[i] = 0;
        }
        if (i == e.size()) break;
    }
    return out;
}

CycloNumber psi_eval(const AdditiveChar& psi, const FracElement& x) {
    long j = -x.valuation;
    if (j <= 0) return CycloNumber::rational(1);
    if (x.unit.level < j)
        throw std::invalid_argument("psi_eval: unit precision below -val(x)");
    const auto& F = psi.F;
    if (F.get() != x.F.get()) throw std::invalid_argument("psi_eval: field mismatch");
    Int t = F->trace_abs(F->reduce(x.unit.c, (int)j), (int)j);
    Int pj = pow_int(Int(F->p()), j);
    long e = (long)(((t % pj) + pj) % pj);
    long m = 1;
    for (long i = 0; i < j; ++i) m *= F->p();
    return CycloNumber::root_of_unity(m, e);
}

}  // namespace wnf
