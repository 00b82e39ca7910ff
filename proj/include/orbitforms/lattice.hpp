#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "orbitforms/golay.hpp"
#include "orbitforms/intersections.hpp"
#include "orbitforms/orbits.hpp"

namespace orbitforms {

// Integer coordinates in the scaled standard frame; (x,y) = sum x_i y_i / 8,
// so a vector of type t has sum of squares 16t.
using Vec24 = std::array<std::int16_t, 24>;

inline long raw_dot(const Vec24& a, const Vec24& b) {
    long s = 0;
    for (int i = 0; i < 24; ++i) s += long(a[i]) * b[i];
    return s;
}
inline long raw_norm(const Vec24& v) { return raw_dot(v, v); }
// half-norm (the "type") of a lattice vector
inline long vec_type(const Vec24& v) { return raw_norm(v) / 16; }
inline long inner8(const Vec24& a, const Vec24& b) { return raw_dot(a, b) / 8; }

class Lattice {
  public:
    Lattice(const std::string& data_dir, const OrbitRegistry& reg, const IntersectionTable& inter);

    const GolayCode& golay() const { return golay_; }

    bool member(const Vec24& v) const;

    // all vectors of the given type (2 or 3 materialized; 4 refused: stream it)
    const std::vector<Vec24>& shell(int type) const;
    // one representative of shell2 per +- pair
    const std::vector<Vec24>& shell2_half() const;

    // streams every vector of the shell across `jobs` workers; fn(thread, v)
    void stream_shell(int type, int jobs, const std::function<void(int, const Vec24&)>& fn) const;
    Int shell_count(int type, int jobs = 0) const;

    // profile of v against shell 2 (inner products, +- folded)
    IntersectionProfile profile_against_shell2(const Vec24& v) const;

    // orbit id of the vector; profile-based with v3/v4 fallback
    std::string classify(const Vec24& v) const;

    // #{u in O_a : w - u in O_b}; a in {2,3}
    Int product_oracle(int a, const std::string& b, const Vec24& w, int jobs = 0) const;

    // histogram of (u, v_ref) over u in shell x (x in {2,3}), ref type in {2,3,4}
    IntersectionProfile profile_oracle(int x, int ref_type, int jobs = 0) const;

    // true iff (v-u)/t is a lattice vector
    bool mod_lattice_conjugate(const Vec24& v, const Vec24& u, long t) const;

    // weighted class count against t^24 (t in {2,3,4}); exact
    struct WeightedReport {
        Rat total;
        Rat expected;
        bool ok;
    };
    WeightedReport weighted_equality(int t) const;

    // deterministic labeled representative of the orbit (seeded recipes)
    Vec24 representative_of(const std::string& orbit, std::uint64_t seed = 0) const;

    // fixed reference vectors of types 2, 3, 4
    static Vec24 reference_vector(int type);

    const OrbitRegistry& registry() const { return reg_; }

  private:
    GolayCode golay_;
    const OrbitRegistry& reg_;
    const IntersectionTable& inter_;
    mutable std::vector<Vec24> shell2_, shell3_, shell2_half_;
    void enumerate(int type, int jobs, const std::function<void(int, const Vec24&)>& fn) const;
    Vec24 random_of_shell(int type, std::mt19937_64& rng) const;
};

// 4-weight data for the mod-4 weighted equality (solver's scan fills these)
Rat weighted_sum_mod4(const OrbitRegistry& reg,
                      const std::map<std::string, Rat>& weights);

}  // namespace orbitforms
