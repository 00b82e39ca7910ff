#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "orbitforms/jacobi.hpp"

namespace orbitforms {

// One additive term of a form identity: coeff * E4^a E6^b Delta^c * H^h(form)
struct IdentityTerm {
    Rat coeff;
    int e4 = 0, e6 = 0, delta = 0;
    int heat = 0;
    std::string form;
};

struct IdentityReport {
    bool holds;
    Exp24 checked_to;
    Exp24 first_failure;       // exponent of the first nonzero term
    std::string failing_orbit;
};

// Memoized catalog of all named forms, built from the paper's recipes with
// the product tables behind them.
class FormEngine {
  public:
    FormEngine(const OrbitData& data, bool pseudo = false);

    const OrbitRegistry& registry() const { return data_.registry; }
    const ProductTable& table() const { return data_.products; }
    const JacobiOps& ops() const { return ops_; }
    bool pseudo() const { return pseudo_; }

    // named catalog form at its certified order; accepts A_t, B_t (prime t),
    // Phi12_m, Phi12_m_exp, Psi12_3, Psi14_3, Psi16_3, psi24_3, F16_3,
    // Phi12_3x3, phi_m4_2, phi_m2_2, phi_0_2, psi_0_2, phi_m14_3, phi_m12_3,
    // psi_m12_3 and the basic products A1A2, A1B2, A1HB2, A1Phi12_2
    const JacobiSeries& form(const std::string& name);

    // H^h applied to a catalog form (memoized)
    const JacobiSeries& heated(const std::string& name, int h);

    // evaluates "name" or "H^i(name)" or "H(name)"
    const JacobiSeries& eval(const std::string& expr);

    // sum of terms; weight/index of the result supplied by the caller
    JacobiSeries assemble(const std::vector<IdentityTerm>& terms, int weight, int index);

    IdentityReport check_identity(const std::vector<IdentityTerm>& terms, Exp24 order);

    // reduction extended to the given order through the weight-k modular form
    // space (exactness guard: the fit must reproduce every known coefficient)
    QSeries reduction_extended(const std::string& name, int weight, long order);

    // built-in named identities for the verify surface
    static const std::map<std::string, std::vector<IdentityTerm>>& builtin_identities();

    static std::vector<std::string> catalog_names();

  private:
    const OrbitData& data_;
    JacobiOps ops_;
    bool pseudo_;
    std::map<std::string, JacobiSeries> cache_;
    std::map<std::pair<std::string, int>, JacobiSeries> heat_cache_;
    JacobiSeries build(const std::string& name);
};

// fit a q-series as a polynomial in E4, E6 of the given weight and evaluate
// to the requested order; throws InconsistentSystem when impossible
QSeries extend_as_modular_form(const QSeries& f, int weight, long order);

// parse relations.tbl: name : coeff*E4^a*E6^b*Delta^c*H^h(form) + ...
std::map<std::string, std::vector<IdentityTerm>> load_relations(const std::string& path);

}  // namespace orbitforms
