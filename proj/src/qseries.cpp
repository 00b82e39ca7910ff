#include "orbitforms/qseries.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace orbitforms {

std::string rat_to_string(const Rat& r) {
    std::string s = r.get_num().get_str();
    if (r.get_den() != 1) s += "/" + r.get_den().get_str();
    return s;
}

Rat parse_rat_strict(const std::string& s) {
    auto bad = [&]() -> Rat { throw ParseError("malformed rational '" + s + "'"); };
    if (s.empty()) return bad();
    std::size_t i = 0;
    if (s[i] == '-') ++i;
    std::size_t num_start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == num_start) return bad();
    Int num(s.substr(0, i));
    Int den(1);
    if (i < s.size()) {
        if (s[i] != '/') return bad();
        ++i;
        std::size_t den_start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == den_start || i != s.size()) return bad();
        den = Int(s.substr(den_start));
        if (den == 0) return bad();
    }
    return rat(num, den);
}

std::string exp24_to_string(Exp24 e) {
    return rat_to_string(exp24_to_rat(e));
}

Exp24 parse_exp24(const std::string& s) {
    Rat r = parse_rat_strict(s);
    Rat scaled = r * 24;
    if (scaled.get_den() != 1) throw ParseError("exponent '" + s + "' is not on the 1/24 grid");
    if (!scaled.get_num().fits_slong_p()) throw ParseError("exponent '" + s + "' out of range");
    return scaled.get_num().get_si();
}

QSeries QSeries::constant(const Rat& c, Exp24 valid_to) {
    QSeries f(1, valid_to);
    f.set(0, c);
    return f;
}

QSeries QSeries::monomial(const Rat& c, Exp24 e24, Exp24 valid_to) {
    int denom = 24 / static_cast<int>(std::gcd<Exp24>(24, e24 % 24 == 0 ? 24 : std::abs(e24 % 24)));
    QSeries f(denom == 0 ? 1 : denom, valid_to);
    f.set(e24, c);
    return f;
}

Rat QSeries::coeff(Exp24 e24) const {
    if (e24 >= valid_to_)
        throw ValidityExhausted("q^" + exp24_to_string(e24) + " requested, series valid below q^" +
                                exp24_to_string(valid_to_));
    auto it = coeffs_.find(e24);
    return it == coeffs_.end() ? Rat(0) : it->second;
}

void QSeries::set(Exp24 e24, const Rat& c) {
    if (e24 >= valid_to_) return;
    if (c == 0)
        coeffs_.erase(e24);
    else
        coeffs_[e24] = c;
}

void QSeries::add_to(Exp24 e24, const Rat& c) {
    if (e24 >= valid_to_ || c == 0) return;
    Rat& slot = coeffs_[e24];
    slot += c;
    if (slot == 0) coeffs_.erase(e24);
}

QSeries QSeries::truncated(Exp24 new_valid) const {
    QSeries out(denom_, std::min(valid_to_, new_valid));
    for (const auto& [e, c] : coeffs_) {
        if (e >= out.valid_to_) break;
        out.coeffs_.emplace(e, c);
    }
    return out;
}

bool QSeries::is_zero_to(Exp24 order) const {
    if (order > valid_to_)
        throw ValidityExhausted("zero check to q^" + exp24_to_string(order) + " beyond validity q^" +
                                exp24_to_string(valid_to_));
    for (const auto& [e, c] : coeffs_)
        if (e < order && c != 0) return false;
    return true;
}

static int lcm_denom(int a, int b) { return std::lcm(a, b); }

QSeries operator+(const QSeries& a, const QSeries& b) {
    QSeries out(lcm_denom(a.denom_, b.denom_), std::min(a.valid_to_, b.valid_to_));
    for (const auto& [e, c] : a.coeffs_) out.add_to(e, c);
    for (const auto& [e, c] : b.coeffs_) out.add_to(e, c);
    return out;
}

QSeries operator-(const QSeries& a, const QSeries& b) {
    QSeries out(lcm_denom(a.denom_, b.denom_), std::min(a.valid_to_, b.valid_to_));
    for (const auto& [e, c] : a.coeffs_) out.add_to(e, c);
    for (const auto& [e, c] : b.coeffs_) out.add_to(e, -c);
    return out;
}

QSeries operator-(const QSeries& a) {
    QSeries out(a.denom_, a.valid_to_);
    for (const auto& [e, c] : a.coeffs_) out.coeffs_.emplace(e, -c);
    return out;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
    // sound bound: below min(valid_a + low_b, valid_b + low_a) every
    // contributing pair is inside both validity ranges
    Exp24 valid = std::min(a.valid_to_ + b.low(), b.valid_to_ + a.low());
    QSeries out(lcm_denom(a.denom_, b.denom_), valid);
    for (const auto& [ea, ca] : a.coeffs_) {
        for (const auto& [eb, cb] : b.coeffs_) {
            Exp24 e = ea + eb;
            if (e >= valid) break;
            out.add_to(e, ca * cb);
        }
    }
    return out;
}

QSeries operator*(const Rat& c, const QSeries& a) {
    QSeries out(a.denom_, a.valid_to_);
    if (c == 0) return out;
    for (const auto& [e, co] : a.coeffs_) out.coeffs_.emplace(e, c * co);
    return out;
}

QSeries operator/(const QSeries& f, const QSeries& g) {
    if (g.known_zero()) throw DivisionByZeroSeries();
    const Exp24 e0 = g.low();
    const Rat c0 = g.coeffs_.begin()->second;
    const Exp24 low_r = f.low() - e0;
    const Exp24 valid = std::min(f.valid_to_, g.valid_to_ + low_r) - e0;
    QSeries out(lcm_denom(f.denom_, g.denom_), valid);
    if (valid <= low_r && f.known_zero()) return out;
    // long division on the common grid
    int step = 24 / out.denom_;
    std::map<Exp24, Rat> r;
    for (Exp24 e = low_r; e < valid; e += step) {
        Rat acc = 0;
        auto itf = f.coeffs_.find(e + e0);
        if (itf != f.coeffs_.end()) acc = itf->second;
        for (const auto& [er, cr] : r) {
            auto itg = g.coeffs_.find(e + e0 - er);
            if (itg != g.coeffs_.end()) acc -= cr * itg->second;
        }
        if (acc != 0) {
            Rat v = acc / c0;
            r.emplace(e, v);
            out.coeffs_.emplace(e, v);
        }
    }
    return out;
}

QSeries QSeries::pow(long e) const {
    if (e < 0) {
        QSeries inv = QSeries::constant(1, valid_to_ + 2 * std::max<Exp24>(0, -low())) / *this;
        return inv.pow(-e);
    }
    if (e == 0) return QSeries::constant(1, valid_to_);
    QSeries acc = *this;
    for (long i = 1; i < e; ++i) acc = acc * *this;
    return acc;
}

QSeries expand_scale(const QSeries& f, long t) {
    if (t < 1) throw std::invalid_argument("expand_scale: t must be >= 1");
    QSeries out(f.denom(), f.valid_to() * t);
    for (const auto& [e, c] : f.terms()) out.set(e * t, c);
    return out;
}

QSeries fold_down(const QSeries& f, long t) {
    if (t < 1) throw std::invalid_argument("fold_down: t must be >= 1");
    Exp24 valid = (f.valid_to() >= 0) ? (f.valid_to() + t - 1) / t
                                      : -((-f.valid_to()) / t);
    QSeries out(f.denom(), valid);
    for (const auto& [e, c] : f.terms())
        if (e % t == 0) out.set(e / t, c);
    return out;
}

namespace qs {

Int sigma(int k, long n) {
    Int s = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        Int dk, ek;
        mpz_ui_pow_ui(dk.get_mpz_t(), d, k);
        s += dk;
        long e = n / d;
        if (e != d) {
            mpz_ui_pow_ui(ek.get_mpz_t(), e, k);
            s += ek;
        }
    }
    return s;
}

// Euler product prod (1-q^n) to the given q order
static QSeries euler_product(long order) {
    Exp24 valid = order * 24;
    QSeries p = QSeries::constant(1, valid);
    for (long n = 1; n <= order; ++n) {
        QSeries next(1, valid);
        for (const auto& [e, c] : p.terms()) {
            next.add_to(e, c);
            next.add_to(e + n * 24, -c);
        }
        p = next;
    }
    return p;
}

QSeries one(Exp24 valid_to) { return QSeries::constant(1, valid_to); }

QSeries eisenstein(int k, long order) {
    Rat factor;
    switch (k) {
        case 2: factor = rat(-24); break;
        case 4: factor = rat(240); break;
        case 6: factor = rat(-504); break;
        case 12: factor = rat(65520, 691); break;
        default: throw UnknownSeriesName("E" + std::to_string(k));
    }
    QSeries f(1, order * 24);
    f.set(0, 1);
    for (long n = 1; n < order; ++n) f.set(n * 24, factor * Rat(sigma(k - 1, n)));
    return f;
}

QSeries E2(long order) { return eisenstein(2, order); }
QSeries E4(long order) { return eisenstein(4, order); }
QSeries E6(long order) { return eisenstein(6, order); }
QSeries E12(long order) { return eisenstein(12, order); }

QSeries delta(long order) { return eta_pow(24, order); }

QSeries delta_inv(long order) { return eta_pow(-24, order); }

QSeries eta_pow(int d, long order) {
    // eta^d = q^(d/24) * prod (1-q^n)^d
    long prod_order = order + std::max(0, -d / 24) + 2;
    QSeries p = euler_product(prod_order);
    QSeries pd = p.pow(d);
    QSeries out(24 / std::gcd(24, std::abs(d) % 24 == 0 ? 24 : std::abs(d) % 24), order * 24);
    for (const auto& [e, c] : pd.terms()) {
        Exp24 shifted = e + d;
        if (shifted < out.valid_to()) out.set(shifted, c);
    }
    return out;
}

static std::vector<Int>& tau_cache() {
    static std::vector<Int> cache;  // cache[n] = tau(n), cache[0] unused
    return cache;
}

Int tau(long n) {
    auto& cache = tau_cache();
    if (n <= 0) return 0;
    if (static_cast<long>(cache.size()) <= n) {
        long order = std::max<long>(n + 1, 32);
        QSeries d = delta(order);
        cache.assign(order, 0);
        for (const auto& [e, c] : d.terms()) {
            if (e % 24 == 0 && e / 24 < order) cache[e / 24] = c.get_num();
        }
    }
    return cache[n];
}

Int p24(long n) {
    static std::vector<Int> cache;
    if (n < 0) return 0;
    if (static_cast<long>(cache.size()) <= n) {
        long order = std::max<long>(n + 2, 32);
        QSeries di = delta_inv(order);
        cache.assign(order + 1, 0);
        for (const auto& [e, c] : di.terms()) {
            if ((e + 24) % 24 == 0 && (e + 24) / 24 <= order && e + 24 >= 0) cache[(e + 24) / 24] = c.get_num();
        }
    }
    return cache[n];
}

QSeries theta_leech_scalar(long order) {
    return E12(order) - rat(65520, 691) * delta(order);
}

QSeries f2_level(int t, long order) {
    if (t < 2) throw std::invalid_argument("f2_level needs t >= 2");
    QSeries e2 = E2(order);
    QSeries scaled = expand_scale(E2((order + t - 1) / t + 1), t).truncated(order * 24);
    return rat(1, t - 1) * (rat(t) * scaled - e2);
}

}  // namespace qs

QSeries named_series(const std::string& name, long order) {
    if (name == "E2") return qs::E2(order);
    if (name == "E4") return qs::E4(order);
    if (name == "E6") return qs::E6(order);
    if (name == "E12") return qs::E12(order);
    if (name == "delta") return qs::delta(order);
    if (name == "theta") return qs::theta_leech_scalar(order);
    if (name.rfind("eta^", 0) == 0) {
        Rat d = parse_rat_strict(name.substr(4));
        if (d.get_den() != 1 || !d.get_num().fits_sint_p()) throw UnknownSeriesName(name);
        return qs::eta_pow(static_cast<int>(d.get_num().get_si()), order);
    }
    if (name.rfind("f2(", 0) == 0 && name.back() == ')') {
        Rat t = parse_rat_strict(name.substr(3, name.size() - 4));
        if (t.get_den() != 1 || !t.get_num().fits_sint_p()) throw UnknownSeriesName(name);
        return qs::f2_level(static_cast<int>(t.get_num().get_si()), order);
    }
    throw UnknownSeriesName(name);
}

}  // namespace orbitforms
