#pragma once

#include <string>

#include "orbitforms/jacobi.hpp"
#include "orbitforms/orbits.hpp"
#include "orbitforms/qseries.hpp"

namespace orbitforms {

// "c1*n1 + c2*n2 + ..." in (type, name) orbit order; "0" for the empty combo
std::string combo_to_string(const OrbitCombo& c, const OrbitRegistry& reg);
OrbitCombo parse_combo_text(const std::string& text, const OrbitRegistry& reg);

// header line plus one "q^<rational> : <combo>" line per stored exponent
std::string jacobi_to_string(const JacobiSeries& f, const OrbitRegistry& reg);
JacobiSeries parse_jacobi_text(const std::string& text, const OrbitRegistry& reg);

std::string qseries_to_string(const QSeries& f);

}  // namespace orbitforms
