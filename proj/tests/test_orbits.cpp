#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbitforms/orbits.hpp"
#include "orbitforms/qseries.hpp"

using namespace orbitforms;

static const OrbitData& data() {
    static OrbitData d = OrbitData::load(ORBITFORMS_TEST_DATA_DIR);
    return d;
}

TEST_CASE("registry lookups") {
    const auto& reg = data().registry;
    const OrbitSymbol& s6b = reg.lookup("6b");
    CHECK(s6b.type == 6);
    CHECK(s6b.size == Int(6900) * 65520);
    CHECK(s6b.size == 452088000);

    CHECK(reg.lookup("0").size == 1);
    CHECK(reg.lookup("0").type == 0);

    const OrbitSymbol& s8a = reg.lookup("8a");
    CHECK(s8a.core == "2");
    CHECK(s8a.multiplier == 2);
    CHECK(s8a.type == 8);
    CHECK(s8a.size == reg.lookup("2").size);

    CHECK_THROWS_AS(reg.lookup("99x"), UnknownOrbit);

    CHECK(reg.lookup("17'").pseudo);
    CHECK(reg.lookup("18b'").pseudo);
    CHECK_FALSE(reg.lookup("18a").pseudo);

    // 44 orbits of type <= 16, plus 18a and the two pseudo-orbits
    int below17 = 0;
    for (const auto& s : reg.all())
        if (s.type <= 16) ++below17;
    CHECK(below17 == 44);
    CHECK(reg.count() == 47);
}

TEST_CASE("scale_orbit") {
    const auto& reg = data().registry;
    CHECK(reg.scale_orbit("2", 2).name == "8a");
    CHECK(reg.scale_orbit("2", 3).name == "18a");
    CHECK(reg.scale_orbit("3", 2).name == "12a");
    CHECK(reg.scale_orbit("4", 2).name == "16a");
    CHECK(reg.scale_orbit("3", 1).name == "3");
    CHECK(reg.scale_orbit("0", 5).name == "0");
    CHECK_THROWS_AS(reg.scale_orbit("5", 2), UnregisteredScaledOrbit);
}

TEST_CASE("registry totals match the theta series") {
    const auto& reg = data().registry;
    QSeries theta = qs::theta_leech_scalar(19);
    for (long x = 0; x <= 18; ++x) {
        Int total = 0;
        for (OrbitId id : reg.of_type(x)) total += reg.symbol(id).size;
        Rat expect = theta.coeff_q(x);
        CHECK(Rat(total) == expect);
    }
}

TEST_CASE("conjugacy lookup") {
    const auto& reg = data().registry;
    CHECK(reg.conjugacy_lookup("6b", 2) == "2");
    CHECK(reg.conjugacy_lookup("12f", 3) == "9b");
    CHECK(reg.conjugacy_lookup("2", 2) == "2");
    CHECK(reg.conjugacy_lookup("15a", 2) == "3");
    CHECK(reg.conjugacy_lookup("8a", 3) == "2");
    CHECK_THROWS_AS(reg.conjugacy_lookup("2", 5), UnsupportedModulus);
    CHECK_THROWS_AS(reg.conjugacy_lookup("18a", 2), UnknownOrbit);

    // every orbit of type <= 16 is assigned to exactly one class
    for (int t : {2, 3}) {
        int members = 0;
        for (const auto& [rep, mem] : reg.conjugacy_classes(t)) members += 1 + static_cast<int>(mem.size());
        CHECK(members == 44);
    }
}

TEST_CASE("exact product rows satisfy the size identity and pqbound") {
    const auto& reg = data().registry;
    for (const auto& [key, row] : data().products.exact()) {
        const OrbitSymbol& a = reg.symbol(key.a);
        const OrbitSymbol& b = reg.symbol(key.b);
        CHECK(combo_size(row, reg) == Rat(a.size) * Rat(b.size));
        for (const auto& [id, c] : row.terms()) {
            CHECK(pqbound_admits(a.type, b.type, reg.symbol(id).type));
            // exact-table coefficients are non-negative integers
            CHECK(c.get_den() == 1);
            CHECK(c >= 0);
        }
    }
    CHECK(data().products.exact().size() == 9);
}

TEST_CASE("combined rows satisfy the size identity") {
    const auto& reg = data().registry;
    for (const auto& row : data().products.combined()) {
        Rat lhs_size = 0;
        for (const auto& [pair, c] : row.lhs)
            lhs_size += c * Rat(reg.symbol(pair.a).size) * Rat(reg.symbol(pair.b).size);
        CHECK(combo_size(row.rhs, reg) == lhs_size);
    }
    CHECK(data().products.combined().size() == 8);
}

TEST_CASE("combo products") {
    const auto& reg = data().registry;
    const auto& table = data().products;
    OrbitCombo o2, o9b, zero_orbit;
    o2.add(reg.id_of("2"), 1);
    o9b.add(reg.id_of("9b"), 1);
    zero_orbit.add(reg.id_of("0"), 1);

    OrbitCombo sq = combo_product(o2, o2, table, reg);
    CHECK(sq.coeff(reg.id_of("0")) == 196560);
    CHECK(sq.coeff(reg.id_of("2")) == 4600);
    CHECK(sq.coeff(reg.id_of("3")) == 552);
    CHECK(sq.coeff(reg.id_of("4")) == 46);
    CHECK(sq.coeff(reg.id_of("5")) == 2);
    CHECK(sq.coeff(reg.id_of("6b")) == 2);
    CHECK(sq.coeff(reg.id_of("8a")) == 1);
    CHECK(sq.terms().size() == 7);

    CHECK(combo_product(zero_orbit, o9b, table, reg) == o9b);

    OrbitCombo o7;
    o7.add(reg.id_of("7"), 1);
    CHECK_THROWS_AS(combo_product(o2, o7, table, reg), UnknownProduct);

    // 2*8a reaches O_18a, which is rigorous without pseudo-orbit mode
    OrbitCombo o8a;
    o8a.add(reg.id_of("8a"), 1);
    OrbitCombo full = combo_product(o2, o8a, table, reg);
    CHECK(full.coeff(reg.id_of("18a")) == 1);
    CHECK(full.coeff(reg.id_of("14c")) == 1);

    // commutativity and bilinearity where defined
    OrbitCombo o3;
    o3.add(reg.id_of("3"), 1);
    OrbitCombo mix = o2 + rat(3, 2) * o3;
    OrbitCombo lhs = combo_product(mix, o2, table, reg);
    OrbitCombo rhs = combo_product(o2, o2, table, reg) + rat(3, 2) * combo_product(o2, o3, table, reg);
    CHECK(lhs == rhs);
}

TEST_CASE("combo size") {
    const auto& reg = data().registry;
    OrbitCombo o2;
    o2.add(reg.id_of("2"), 1);
    OrbitCombo sq = combo_product(o2, o2, data().products, reg);
    CHECK(combo_size(sq, reg) == Rat(196560) * 196560);
    CHECK(combo_size(OrbitCombo{}, reg) == 0);
    // exact division check used in the A_2 reduction
    OrbitCombo frac = rat(1, 2049) * o2;
    CHECK(combo_size(frac, reg) == rat(196560, 2049));
    CHECK(combo_size(frac, reg) == rat(65520, 683));
}

TEST_CASE("combined resolution of pending pairs") {
    const auto& reg = data().registry;
    const auto& table = data().products;
    // O_4*O_4 + O_3*O_6a + O_3*O_6b + O_2*O_8b + O_2*O_8c resolves through
    // two combined rows
    FormalCombo fc;
    auto pend = [&](const char* a, const char* b, Rat c) {
        fc.pending[PairKey(reg.id_of(a), reg.id_of(b))] = c;
    };
    pend("4", "4", 1);
    pend("3", "6a", 1);
    pend("3", "6b", 1);
    pend("2", "8b", 1);
    pend("2", "8c", 1);
    auto fail = resolve_with_combined(fc, table, reg);
    CHECK_FALSE(fail.has_value());
    CHECK(fc.pending.empty());
    // total size must match the sum of pair size products
    Rat expect = 0;
    for (auto [a, b] : std::vector<std::pair<const char*, const char*>>{
             {"4", "4"}, {"3", "6a"}, {"3", "6b"}, {"2", "8b"}, {"2", "8c"}})
        expect += Rat(reg.lookup(a).size) * Rat(reg.lookup(b).size);
    CHECK(combo_size(fc.resolved, reg) == expect);

    // an isolated unknown pair is not resolvable
    FormalCombo bad;
    bad.pending[PairKey(reg.id_of("2"), reg.id_of("7"))] = 1;
    auto miss = resolve_with_combined(bad, table, reg);
    CHECK(miss.has_value());
}

TEST_CASE("pqbound") {
    CHECK(pqbound_admits(2, 2, 0));
    CHECK(pqbound_admits(2, 2, 8));
    CHECK_FALSE(pqbound_admits(2, 2, 9));
    CHECK_FALSE(pqbound_admits(2, 4, 0));
    CHECK(pqbound_admits(2, 4, 1));
    CHECK(pqbound_admits(2, 4, 11));
    CHECK_FALSE(pqbound_admits(2, 4, 12));
    CHECK(pqbound_admits(0, 5, 5));
    CHECK_FALSE(pqbound_admits(0, 5, 4));
}
