#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbitforms/lattice.hpp"
#include "orbitforms/qseries.hpp"

using namespace orbitforms;

namespace {

struct Fixture {
    OrbitData data;
    IntersectionTable inter;
    Lattice lat;
    Fixture()
        : data(OrbitData::load(ORBITFORMS_TEST_DATA_DIR)),
          inter(IntersectionTable::load(std::string(ORBITFORMS_TEST_DATA_DIR) + "/intersections.tbl",
                                        data.registry)),
          lat(ORBITFORMS_TEST_DATA_DIR, data.registry, inter) {}
};

Fixture& fx() {
    static Fixture f;
    return f;
}

Vec24 vec(std::initializer_list<int> coords) {
    Vec24 v{};
    int i = 0;
    for (int c : coords) v[i++] = static_cast<std::int16_t>(c);
    return v;
}

}  // namespace

TEST_CASE("golay code invariants") {
    const auto& g = fx().lat.golay();
    CHECK(g.codewords().size() == 4096);
    auto hist = g.weight_histogram();
    CHECK(hist[0] == 1);
    CHECK(hist[8] == 759);
    CHECK(hist[12] == 2576);
    CHECK(hist[16] == 759);
    CHECK(hist[24] == 1);
    // linear: closed under xor on a few random pairs
    const auto& w = g.codewords();
    for (std::size_t i = 0; i < 40; ++i)
        CHECK(g.contains(w[(i * 37) % w.size()] ^ w[(i * 101) % w.size()]));
    CHECK(g.contains(0));
}

TEST_CASE("leech membership") {
    const auto& lat = fx().lat;
    CHECK(lat.member(Vec24{}));
    CHECK(lat.member(vec({4, 4})));
    CHECK_FALSE(lat.member(vec({1})));
    CHECK(lat.member(Lattice::reference_vector(3)));
    CHECK(lat.member(Lattice::reference_vector(4)));
    CHECK(vec_type(vec({4, 4})) == 2);
    CHECK(vec_type(Lattice::reference_vector(3)) == 3);
    CHECK(vec_type(Lattice::reference_vector(4)) == 4);
}

TEST_CASE("shell censuses") {
    const auto& lat = fx().lat;
    CHECK(lat.shell(2).size() == 196560);
    CHECK(lat.shell2_half().size() == 98280);
    CHECK(lat.shell_count(3) == 16773120);
}

TEST_CASE("classification") {
    const auto& lat = fx().lat;
    CHECK(lat.classify(vec({4, 4})) == "2");
    CHECK(lat.classify(vec({8, 8})) == "8a");
    CHECK(lat.classify(Lattice::reference_vector(3)) == "3");
    CHECK(lat.classify(Lattice::reference_vector(4)) == "4");

    // representatives land in their own orbit
    for (const char* name :
         {"2", "3", "4", "5", "6a", "6b", "7", "8a", "8b", "8c", "9a", "9b", "12a", "16a", "18a"}) {
        Vec24 v = lat.representative_of(name, 1);
        CHECK(lat.classify(v) == name);
    }
}

TEST_CASE("classification is constant on oracle-generated sums") {
    const auto& lat = fx().lat;
    // random sums u+u' of shell-2 vectors of type 6 split 6a/6b; aggregated
    // counts over a fixed w reproduce the O_2 x O_2 row coefficients
    Vec24 w = lat.representative_of("6b", 7);
    CHECK(lat.product_oracle(2, "2", w) == 2);
    Vec24 w4 = lat.representative_of("4", 3);
    CHECK(lat.product_oracle(2, "2", w4) == 46);
}

TEST_CASE("product oracle spot values") {
    const auto& lat = fx().lat;
    // a=2, b=2, w=0: all u pair with -u
    CHECK(lat.product_oracle(2, "2", Vec24{}) == 196560);
    Vec24 w3 = lat.representative_of("3", 11);
    CHECK(lat.product_oracle(2, "2", w3) == 552);
    Vec24 w7 = lat.representative_of("7", 11);
    CHECK(lat.product_oracle(2, "3", w7) == 1);
}

TEST_CASE("profile oracle matches stored rows") {
    const auto& lat = fx().lat;
    const auto& inter = fx().inter;
    IntersectionProfile p22 = lat.profile_oracle(2, 2);
    CHECK(p22 == *inter.row("2", 2));
    IntersectionProfile p24 = lat.profile_oracle(2, 4);
    CHECK(p24 == *inter.row("2", 4));
}

TEST_CASE("profile second moment identity") {
    const auto& reg = fx().data.registry;
    for (const auto& [key, row] : fx().inter.rows()) {
        const auto& [orbit, ref] = key;
        const OrbitSymbol& s = reg.lookup(orbit);
        CHECK(row.total() == s.size);
        CHECK(row.second_moment() == s.size * (2 * s.type) * (2 * ref) / 24);
    }
}

TEST_CASE("reciprocity between stored rows") {
    const auto& reg = fx().data.registry;
    const auto& inter = fx().inter;
    // |orb(u)| * orb(v)(zu) = |orb(v)| * orb(u)(zv) for rows stored both ways
    for (int a : {2, 3, 4}) {
        for (int b : {2, 3, 4}) {
            if (a == b) continue;
            const auto* ra = inter.row(std::to_string(b), a);
            const auto* rb = inter.row(std::to_string(a), b);
            REQUIRE(ra);
            REQUIRE(rb);
            const Int sa = reg.lookup(std::to_string(a)).size;
            const Int sb = reg.lookup(std::to_string(b)).size;
            for (const auto& [k, c] : ra->counts) CHECK(sa * c == sb * rb->counts.at(k));
        }
    }
}

TEST_CASE("non-primitive rows are doubled primitive rows") {
    const auto& inter = fx().inter;
    for (int ref : {2, 3, 4}) {
        const auto* r2 = inter.row("2", ref);
        const auto* r8a = inter.row("8a", ref);
        REQUIRE(r2);
        REQUIRE(r8a);
        IntersectionProfile doubled;
        for (const auto& [k, c] : r2->counts) doubled.counts[2 * k] = c;
        CHECK(doubled == *r8a);
    }
}

TEST_CASE("mod lattice conjugation") {
    const auto& lat = fx().lat;
    Vec24 v = lat.representative_of("2", 5);
    CHECK(lat.mod_lattice_conjugate(v, v, 2));
    CHECK(lat.mod_lattice_conjugate(v, v, 3));

    // w in O_6b has a type-2 partner mod 2Lambda
    Vec24 w = lat.representative_of("6b", 9);
    bool found = false;
    for (const Vec24& u : lat.shell(2)) {
        if (lat.mod_lattice_conjugate(w, u, 2)) {
            found = true;
            break;
        }
    }
    CHECK(found);

    // types of different parity are never conjugate mod 2Lambda
    Vec24 v3 = lat.representative_of("3", 2);
    bool any = false;
    for (const Vec24& u : lat.shell(2))
        if (lat.mod_lattice_conjugate(v3, u, 2)) any = true;
    CHECK_FALSE(any);
}

TEST_CASE("weighted equalities") {
    const auto& lat = fx().lat;
    for (int t : {2, 3, 4}) {
        auto rep = lat.weighted_equality(t);
        CHECK(rep.ok);
        CHECK(rep.total == rep.expected);
    }
}
