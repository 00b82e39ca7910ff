#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace orbitforms {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Exponents live on the 1/24 grid: an exponent e is stored as e24 = 24*e.
using Exp24 = std::int64_t;

inline Exp24 exp24_from(long num, long den) {
    if (den <= 0 || 24 % den != 0)
        throw std::invalid_argument("exponent denominator must divide 24");
    return static_cast<Exp24>(num) * (24 / den);
}

inline Rat exp24_to_rat(Exp24 e) { return rat(static_cast<long>(e), 24); }

std::string rat_to_string(const Rat& r);

// Strict parser: optional '-', digits, optional '/digits' with nonzero
// denominator. Anything else (leading '+', spaces, empty fields) is rejected.
Rat parse_rat_strict(const std::string& s);

std::string exp24_to_string(Exp24 e);
Exp24 parse_exp24(const std::string& s);

}  // namespace orbitforms
