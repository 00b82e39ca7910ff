#pragma once

#include <map>
#include <numeric>
#include <string>

#include "orbitforms/errors.hpp"
#include "orbitforms/numbers.hpp"

namespace orbitforms {

// Exact rational Laurent series in q with exponents on the 1/24 grid.
// Every series carries a validity bound: coefficients are trusted strictly
// below valid_to and reads at or beyond it throw ValidityExhausted.
class QSeries {
  public:
    QSeries() : denom_(1), valid_to_(0) {}
    QSeries(int denom, Exp24 valid_to) : denom_(denom), valid_to_(valid_to) {
        if (denom <= 0 || 24 % denom != 0) throw std::invalid_argument("denom must divide 24");
    }

    static QSeries zero(Exp24 valid_to) { return QSeries(1, valid_to); }
    static QSeries constant(const Rat& c, Exp24 valid_to);
    // single term c*q^(e24/24)
    static QSeries monomial(const Rat& c, Exp24 e24, Exp24 valid_to);

    int denom() const { return denom_; }
    Exp24 valid_to() const { return valid_to_; }
    const std::map<Exp24, Rat>& terms() const { return coeffs_; }

    bool known_zero() const { return coeffs_.empty(); }
    // infimum of the support: first stored exponent, or valid_to for a series
    // with no known term
    Exp24 low() const { return coeffs_.empty() ? valid_to_ : coeffs_.begin()->first; }

    // coefficient of q^(e24/24); throws ValidityExhausted for e24 >= valid_to
    Rat coeff(Exp24 e24) const;
    Rat coeff_q(long n) const { return coeff(static_cast<Exp24>(n) * 24); }

    void set(Exp24 e24, const Rat& c);
    void add_to(Exp24 e24, const Rat& c);

    QSeries truncated(Exp24 new_valid) const;
    bool is_zero_to(Exp24 order) const;

    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a);
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const Rat& c, const QSeries& a);
    friend QSeries operator/(const QSeries& a, const QSeries& b);
    QSeries pow(long e) const;  // e >= 0, or e < 0 via inversion

    bool operator==(const QSeries& o) const {
        return coeffs_ == o.coeffs_ && valid_to_ == o.valid_to_;
    }

  private:
    int denom_;
    std::map<Exp24, Rat> coeffs_;
    Exp24 valid_to_;
};

// coefficient of q^(n/t) in f is the coefficient of q^n composed with tau -> t*tau
QSeries expand_scale(const QSeries& f, long t);
// inverse direction: keeps exponents divisible by t and divides them by t,
// i.e. (1/t) * sum_j f((tau+j)/t)
QSeries fold_down(const QSeries& f, long t);

namespace qs {

// divisor power sum sigma_k(n)
Int sigma(int k, long n);
// Ramanujan tau(n), from the Delta product expansion (memoized)
Int tau(long n);
// p24(n): Delta^{-1} = sum p24(n) q^{n-1}
Int p24(long n);

QSeries one(Exp24 valid_to);
QSeries eisenstein(int k, long order);  // E2, E4, E6, E12
QSeries E2(long order);
QSeries E4(long order);
QSeries E6(long order);
QSeries E12(long order);
QSeries delta(long order);
QSeries delta_inv(long order);
QSeries eta_pow(int d, long order);
QSeries theta_leech_scalar(long order);
QSeries f2_level(int t, long order);

}  // namespace qs

// string dispatcher used by the CLI: E2|E4|E6|E12|delta|eta^d|theta|f2(t)
QSeries named_series(const std::string& name, long order);

}  // namespace orbitforms
