#pragma once

#include <map>
#include <string>
#include <vector>

#include "orbitforms/orbits.hpp"
#include "orbitforms/qseries.hpp"

namespace orbitforms {

// Fourier expansion of a Conway invariant Jacobi form: q-exponent -> formal
// orbit combination, plus weight/index metadata and the validity bound.
class JacobiSeries {
  public:
    JacobiSeries() : weight_(0), index_(0), char_shift_(0), valid_to_(0), pseudo_(false) {}
    JacobiSeries(int weight, int index, Exp24 valid_to, Exp24 char_shift = 0, bool pseudo = false)
        : weight_(weight), index_(index), char_shift_(char_shift), valid_to_(valid_to), pseudo_(pseudo) {}

    int weight() const { return weight_; }
    int index() const { return index_; }
    Exp24 char_shift() const { return char_shift_; }
    Exp24 valid_to() const { return valid_to_; }
    bool pseudo() const { return pseudo_; }
    void set_pseudo(bool p) { pseudo_ = p; }

    const std::map<Exp24, OrbitCombo>& terms() const { return terms_; }
    Exp24 low() const { return terms_.empty() ? valid_to_ : terms_.begin()->first; }

    OrbitCombo coeff(Exp24 e24) const;
    OrbitCombo coeff_q(long n) const { return coeff(static_cast<Exp24>(n) * 24); }

    void set(Exp24 e24, const OrbitCombo& c);
    void add_to(Exp24 e24, OrbitId id, const Rat& r);
    void add_combo(Exp24 e24, const OrbitCombo& c, const Rat& scale = 1);

    JacobiSeries truncated(Exp24 new_valid) const;
    bool is_zero_to(Exp24 order) const;

    friend JacobiSeries operator+(const JacobiSeries& a, const JacobiSeries& b);
    friend JacobiSeries operator-(const JacobiSeries& a, const JacobiSeries& b);
    friend JacobiSeries operator*(const Rat& c, const JacobiSeries& a);
    // scalar (index 0) series times a Jacobi series
    friend JacobiSeries operator*(const QSeries& f, const JacobiSeries& a);

    bool operator==(const JacobiSeries& o) const {
        return weight_ == o.weight_ && index_ == o.index_ && char_shift_ == o.char_shift_ && terms_ == o.terms_;
    }

  private:
    int weight_, index_;
    Exp24 char_shift_;
    std::map<Exp24, OrbitCombo> terms_;
    Exp24 valid_to_;
    bool pseudo_;
    friend class JacobiOps;
};

enum class ProductMode {
    Exact,     // only exact table rows resolve
    Combined,  // unresolved pairs may resolve through combined rows as a whole
};

// operations bound to an orbit registry and product table
class JacobiOps {
  public:
    JacobiOps(const OrbitRegistry& reg, const ProductTable& table) : reg_(reg), table_(table) {}

    const OrbitRegistry& registry() const { return reg_; }
    const ProductTable& table() const { return table_; }

    // Jacobi theta series of the lattice: weight 12, index 1
    JacobiSeries theta_series(long order, bool pseudo = false) const;

    // index-raising Hecke operator T_-(m)
    JacobiSeries hecke(const JacobiSeries& phi, long m) const;

    // weight-raising heat operator H_k
    JacobiSeries heat(const JacobiSeries& phi) const;

    // product; valid_to is the largest bound provable from the tables.
    // required_order > 0 demands validity through that bound and throws
    // UnknownProduct otherwise.
    JacobiSeries jmul(const JacobiSeries& a, const JacobiSeries& b, ProductMode mode = ProductMode::Exact,
                      Exp24 required_order = 0) const;

    // division by a scalar q-series; every resulting exponent must be >= min_exp
    JacobiSeries jdiv_q(const JacobiSeries& f, const QSeries& g,
                        Exp24 min_exp = std::numeric_limits<Exp24>::min()) const;

    // reduction to z=0: orbits replaced by their sizes
    QSeries jreduce(const JacobiSeries& phi) const;

    // phi(t*tau, t*z): exponents and orbits both scaled by t
    JacobiSeries expand_scale(const JacobiSeries& phi, long t) const;
    // (1/t) sum_j phi((tau+j)/t, z)
    JacobiSeries fold_down(const JacobiSeries& phi, long t) const;

    // A_t = Theta | T_-(t) / sigma_11(t); singular weight 12, index t
    JacobiSeries make_A(long t, long order, bool pseudo = false) const;
    // B_t for prime t; weight 14, index t, reduction E4^2 E6
    JacobiSeries make_B(long t, long order, bool pseudo = false) const;

    // m-th coefficient of the Borcherds form along the exponential formula
    JacobiSeries phi12_exp(long m, long order) const;
    // the same form recovered by constrained coefficient solving
    JacobiSeries phi12_solve(long m, long order, bool pseudo = false) const;

    // all coefficient vectors solving the restricted system at one q-order
    std::vector<OrbitCombo> phi12_solve_candidates(long m, long n, bool pseudo = false) const;

  private:
    const OrbitRegistry& reg_;
    const ProductTable& table_;
};

}  // namespace orbitforms
