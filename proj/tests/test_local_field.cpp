#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wnf/local_field.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

using namespace wnf;

TEST_CASE("unit group structure over Q_3") {
    auto F = LocalField::get(3, 1);
    const auto& g1 = F->unit_group(1);
    CHECK(g1.gens.size() == 1);
    CHECK(g1.orders[0] == 2);
    CHECK(g1.total_order == 2);

    const auto& g2 = F->unit_group(2);
    std::multiset<long> orders(g2.orders.begin(), g2.orders.end());
    CHECK(orders == std::multiset<long>{2, 3});
    CHECK(g2.total_order == 6);
}

TEST_CASE("residue units of the quadratic extension of Q_3 are cyclic of order 8") {
    auto F = LocalField::get(3, 1);
    auto E = F->quadratic_extension();
    auto units = E->all_units(1);
    CHECK(units.size() == 8);
    // exhaustive multiplication-table oracle: some element has order 8
    int with_order_8 = 0;
    for (auto& u : units) {
        UnitClass t = u;
        int ord = 1;
        while (!(t == E->unit_one(1))) {
            t = E->umul(t, u);
            ++ord;
            REQUIRE(ord <= 9);
        }
        if (ord == 8) ++with_order_8;
    }
    CHECK(with_order_8 == 4);  // phi(8) generators in a cyclic group of order 8
}

TEST_CASE("teichmuller lifts") {
    auto F5 = LocalField::get(5, 1);
    CHECK(F5->teichmuller(F5->from_int(1, 1), 3) == F5->unit_one(3));

    // unique solution of x^4 = 1, x = 2 mod 5, found by search mod 25
    long expect = -1;
    for (long x = 0; x < 25; ++x) {
        if (x % 5 != 2) continue;
        if ((x * x * x * x) % 25 == 1) {
            CHECK(expect == -1);
            expect = x;
        }
    }
    REQUIRE(expect == 7);
    auto t = F5->teichmuller(F5->from_int(2, 1), 2);
    CHECK(t.c[0] == 7);

    auto F3 = LocalField::get(3, 1);
    auto t3 = F3->teichmuller(F3->from_int(2, 1), 2);
    CHECK(t3.c[0] == 8);  // -1 is its own lift

    // multiplicativity across the whole residue field, several levels
    for (int k = 1; k <= 3; ++k) {
        for (long a = 1; a < 5; ++a)
            for (long b = 1; b < 5; ++b) {
                auto ta = F5->teichmuller(F5->from_int(a, 1), k);
                auto tb = F5->teichmuller(F5->from_int(b, 1), k);
                auto tab = F5->teichmuller(F5->from_int(a * b, 1), k);
                CHECK(F5->umul(ta, tb) == tab);
            }
    }
}

TEST_CASE("norm and trace for the unramified quadratic extension") {
    auto F = LocalField::get(3, 1);
    auto E = F->quadratic_extension();
    int k = 2;

    auto one = E->unit_one(k);
    CHECK(E->norm_to_base(one) == F->unit_one(k));
    CHECK(E->trace_to_base(one.c, k) == F->from_int(2, k));

    // an element of F inside E: norm u^2, trace 2u
    auto uF = F->unit_from_int(2, k);
    auto uE = E->embed_base_unit(uF, k);
    CHECK(E->norm_to_base(uE) == F->umul(uF, uF));
    CHECK(E->trace_to_base(uE.c, k) == F->add(uF.c, uF.c, k));

    // alpha with alpha^2 = -1: norm 1, trace 0
    LocalField::Elt alpha = E->zero();
    alpha[1] = 1;
    auto a = E->unit(alpha, 1);
    CHECK(E->norm_to_base(a) == F->unit_one(1));
    CHECK(F->is_zero(E->trace_to_base(a.c, 1)));
}

TEST_CASE("norm multiplicative and trace additive, exhaustive at q = 9") {
    auto F = LocalField::get(3, 1);
    auto E = F->quadratic_extension();
    for (int k = 1; k <= 3; ++k) {
        auto units = E->all_units(k);
        int stride = k == 3 ? 7 : 1;  // thin the largest level's pair set
        for (size_t i = 0; i < units.size(); i += stride)
            for (size_t j = i; j < units.size(); j += stride) {
                auto& u = units[i];
                auto& v = units[j];
                CHECK(E->norm_to_base(E->umul(u, v)) ==
                      F->umul(E->norm_to_base(u), E->norm_to_base(v)));
                CHECK(E->trace_to_base(E->add(u.c, v.c, k), k) ==
                      F->add(E->trace_to_base(u.c, k), E->trace_to_base(v.c, k), k));
            }
    }
}

TEST_CASE("units invert at every level") {
    for (auto [p, f] : {std::pair<long, int>{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
        auto F = LocalField::get(p, f);
        for (int k = 1; k <= 3; ++k) {
            auto tr = F->transversal(k, k);
            for (auto& u : tr)
                CHECK(F->umul(u, F->uinv(u)) == F->unit_one(k));
        }
    }
}

TEST_CASE("dlog round trip") {
    auto F = LocalField::get(3, 2);
    int level = 3;
    const auto& g = F->unit_group(level);
    std::vector<long> e(g.gens.size());
    unsigned long seed = 12345;
    for (int trial = 0; trial < 50; ++trial) {
        for (size_t i = 0; i < e.size(); ++i) {
            seed = seed * 6364136223846793005ull + 1442695040888963407ull;
            e[i] = (long)(seed >> 33) % g.orders[i];
        }
        auto u = F->from_exps(e, level);
        CHECK(F->dlog(u) == e);
    }
    CHECK(g.total_order == Int(8) * 81);
}

TEST_CASE("reducible defining polynomial is rejected") {
    CHECK(poly_irreducible_mod_p({1, 0, 1}, 3));    // x^2 + 1
    CHECK(!poly_irreducible_mod_p({2, 0, 1}, 3));   // x^2 - 1 = (x-1)(x+1)
    CHECK(!poly_irreducible_mod_p({0, 1, 1}, 5));   // x(x+1)

    std::string tmp = "/tmp/wnf_bad_fields.txt";
    {
        std::ofstream out(tmp);
        out << "11 2 10 0 1\n";  // x^2 - 1 mod 11: reducible
    }
    std::string saved = std::getenv("WHITTAKER_FIELDS_PATH")
                            ? std::getenv("WHITTAKER_FIELDS_PATH")
                            : "";
    setenv("WHITTAKER_FIELDS_PATH", tmp.c_str(), 1);
    CHECK_THROWS_AS((void)LocalField::get(11, 2), std::invalid_argument);
    if (!saved.empty())
        setenv("WHITTAKER_FIELDS_PATH", saved.c_str(), 1);
}

TEST_CASE("frobenius fixes the base field and squares to identity on E") {
    auto F = LocalField::get(5, 1);
    auto E = F->quadratic_extension();
    int k = 3;
    auto units = E->all_units(2);
    for (size_t i = 0; i < units.size(); i += 5) {
        auto u = E->ulift(units[i], k);
        auto c = E->conj_base(u.c, k);
        CHECK(E->conj_base(c, k) == E->reduce(u.c, k));
    }
    auto uF = E->embed_base(F->from_int(7, k), k);
    CHECK(E->conj_base(uF, k) == uF);
}
