#include "orbitforms/jacobi.hpp"

#include <algorithm>
#include <numeric>

namespace orbitforms {

OrbitCombo JacobiSeries::coeff(Exp24 e24) const {
    if (e24 >= valid_to_)
        throw ValidityExhausted("q^" + exp24_to_string(e24) + " requested, form valid below q^" +
                                exp24_to_string(valid_to_));
    auto it = terms_.find(e24);
    return it == terms_.end() ? OrbitCombo{} : it->second;
}

void JacobiSeries::set(Exp24 e24, const OrbitCombo& c) {
    if (e24 >= valid_to_) return;
    if (c.empty())
        terms_.erase(e24);
    else
        terms_[e24] = c;
}

void JacobiSeries::add_to(Exp24 e24, OrbitId id, const Rat& r) {
    if (e24 >= valid_to_ || r == 0) return;
    OrbitCombo& slot = terms_[e24];
    slot.add(id, r);
    if (slot.empty()) terms_.erase(e24);
}

void JacobiSeries::add_combo(Exp24 e24, const OrbitCombo& c, const Rat& scale) {
    if (e24 >= valid_to_ || scale == 0) return;
    OrbitCombo& slot = terms_[e24];
    for (const auto& [id, r] : c.terms()) slot.add(id, scale * r);
    if (slot.empty()) terms_.erase(e24);
}

JacobiSeries JacobiSeries::truncated(Exp24 new_valid) const {
    JacobiSeries out(weight_, index_, std::min(valid_to_, new_valid), char_shift_, pseudo_);
    for (const auto& [e, c] : terms_) {
        if (e >= out.valid_to_) break;
        out.terms_.emplace(e, c);
    }
    return out;
}

bool JacobiSeries::is_zero_to(Exp24 order) const {
    if (order > valid_to_)
        throw ValidityExhausted("zero check to q^" + exp24_to_string(order) + " beyond validity q^" +
                                exp24_to_string(valid_to_));
    for (const auto& [e, c] : terms_)
        if (e < order && !c.empty()) return false;
    return true;
}

JacobiSeries operator+(const JacobiSeries& a, const JacobiSeries& b) {
    if (a.weight_ != b.weight_ || a.index_ != b.index_ || a.char_shift_ != b.char_shift_)
        throw Error("adding Jacobi forms of different weight, index or character");
    JacobiSeries out(a.weight_, a.index_, std::min(a.valid_to_, b.valid_to_), a.char_shift_,
                     a.pseudo_ || b.pseudo_);
    for (const auto& [e, c] : a.terms_) out.add_combo(e, c);
    for (const auto& [e, c] : b.terms_) out.add_combo(e, c);
    return out;
}

JacobiSeries operator-(const JacobiSeries& a, const JacobiSeries& b) { return a + Rat(-1) * b; }

JacobiSeries operator*(const Rat& c, const JacobiSeries& a) {
    JacobiSeries out(a.weight_, a.index_, a.valid_to_, a.char_shift_, a.pseudo_);
    if (c == 0) return out;
    for (const auto& [e, combo] : a.terms_) out.add_combo(e, combo, c);
    return out;
}

JacobiSeries operator*(const QSeries& f, const JacobiSeries& a) {
    Exp24 valid = std::min(f.valid_to() + a.low(), a.valid_to() + f.low());
    JacobiSeries out(a.weight_, a.index_, valid, a.char_shift_, a.pseudo_);
    for (const auto& [ef, cf] : f.terms()) {
        for (const auto& [ea, ca] : a.terms_) {
            if (ef + ea >= valid) break;
            out.add_combo(ef + ea, ca, cf);
        }
    }
    return out;
}

namespace {

Rat d_power(long d, int k) {
    // d^(k-1), exact for negative weights too
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d),
                  static_cast<unsigned long>(std::abs(k - 1)));
    return (k - 1 >= 0) ? Rat(p) : Rat(1) / Rat(p);
}

}  // namespace

JacobiSeries JacobiOps::theta_series(long order, bool pseudo) const {
    const long max_type = pseudo ? 18 : 16;
    if (order > max_type + 1)
        throw RegistryExhausted("theta series beyond q^" + std::to_string(max_type + 1) +
                                (pseudo ? "" : " without pseudo-orbit mode"));
    JacobiSeries out(12, 1, order * 24, 0, pseudo);
    for (long n = 0; n < order; ++n)
        for (OrbitId id : reg_.of_type(n)) {
            if (!pseudo && reg_.symbol(id).pseudo) continue;
            out.add_to(n * 24, id, 1);
        }
    return out;
}

JacobiSeries JacobiOps::hecke(const JacobiSeries& phi, long m) const {
    if (phi.char_shift() != 0) throw Error("Hecke operator needs trivial character");
    if (m < 1) throw std::invalid_argument("hecke: m must be positive");
    if (m == 1) return phi;
    const int k = phi.weight();
    const Exp24 in_valid = phi.valid_to();
    const Exp24 out_valid = in_valid / m;  // e*m < in_valid for all e < out_valid
    JacobiSeries out(k, phi.index() * static_cast<int>(m), out_valid, 0, phi.pseudo());

    const long n_lo = std::min<Exp24>(phi.low() / 24 * m, phi.low() / 24) - 1;
    for (long n = n_lo; n * 24 < out_valid; ++n) {
        OrbitCombo acc;
        for (long d = 1; d <= m; ++d) {
            if (m % d != 0) continue;
            if (n % d != 0) continue;  // d | n (any d divides n = 0)
            const long src = (n / d) * (m / d);
            const Exp24 src24 = src * 24;
            if (src24 >= phi.valid_to()) continue;
            auto it = phi.terms().find(src24);
            if (it == phi.terms().end()) continue;
            const Rat scale = d_power(d, k);
            for (const auto& [id, c] : it->second.terms()) {
                const OrbitSymbol& s = reg_.symbol(id);
                if (s.name == "0") {
                    acc.add(id, scale * c);
                    continue;
                }
                // ell/d must be a lattice vector: d*r is registered iff the
                // scaled symbol exists
                auto up = reg_.with_core(s.core, s.multiplier * static_cast<int>(d));
                if (!up) continue;
                acc.add(*up, scale * c);
            }
        }
        out.set(n * 24, acc);
    }
    return out;
}

JacobiSeries JacobiOps::heat(const JacobiSeries& phi) const {
    const int k = phi.weight();
    const int t = phi.index();
    if (t < 1) throw Error("heat operator needs index >= 1");
    JacobiSeries out(k + 2, t, phi.valid_to(), phi.char_shift(), phi.pseudo());
    for (const auto& [e, combo] : phi.terms()) {
        for (const auto& [id, c] : combo.terms()) {
            Rat factor = rat(e, 24) - Rat(reg_.symbol(id).type) / Rat(2 * t);
            out.add_to(e, id, factor * c);
        }
    }
    if (k != 12) {
        long e2_order = phi.valid_to() / 24 - std::min<Exp24>(phi.low(), 0) / 24 + 2;
        JacobiSeries mixed = qs::E2(e2_order) * phi;
        JacobiSeries scaled = rat(12 - k, 12) * mixed;
        // match metadata for the addition
        JacobiSeries fixup(k + 2, t, scaled.valid_to(), phi.char_shift(), phi.pseudo());
        for (const auto& [e, c] : scaled.terms()) fixup.set(e, c);
        out = out + fixup;
    }
    return out;
}

JacobiSeries JacobiOps::jmul(const JacobiSeries& a, const JacobiSeries& b, ProductMode mode,
                             Exp24 required_order) const {
    const bool pseudo = a.pseudo() || b.pseudo();
    Exp24 valid = std::min(a.valid_to() + b.low(), b.valid_to() + a.low());
    std::map<Exp24, FormalCombo> acc;
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            if (ea + eb >= valid) break;
            FormalCombo fc = combo_product_formal(ca, cb, table_, reg_);
            acc[ea + eb] += fc;
        }
    }
    JacobiSeries out(a.weight() + b.weight(), a.index() + b.index(), valid,
                     a.char_shift() + b.char_shift(), pseudo);
    for (auto& [e, fc] : acc) {
        if (e >= out.valid_to()) break;
        if (!fc.pending.empty() && mode == ProductMode::Combined) {
            resolve_with_combined(fc, table_, reg_);
        }
        std::optional<PairKey> failure;
        if (!fc.pending.empty()) failure = fc.pending.begin()->first;
        if (!failure && !pseudo && fc.resolved.touches_pseudo(reg_)) {
            // aggregated 17'/18b' coefficients demand pseudo-orbit mode
            for (const auto& [id, c] : fc.resolved.terms())
                if (reg_.symbol(id).pseudo) failure = PairKey(id, id);
        }
        if (failure) {
            if (required_order > e)
                throw UnknownProduct(reg_.symbol(failure->a).name, reg_.symbol(failure->b).name, e);
            out = out.truncated(e);
            return out;
        }
        out.set(e, fc.resolved);
    }
    if (out.valid_to() < required_order)
        throw UnknownProduct("", "", out.valid_to());
    return out;
}

JacobiSeries JacobiOps::jdiv_q(const JacobiSeries& f, const QSeries& g, Exp24 min_exp) const {
    if (g.known_zero()) throw DivisionByZeroSeries();
    const Exp24 e0 = g.low();
    const Rat c0 = g.terms().begin()->second;
    const Exp24 low_r = f.low() - e0;
    const Exp24 valid = std::min(f.valid_to(), g.valid_to() + low_r) - e0;
    JacobiSeries out(f.weight(), f.index(), valid, f.char_shift(), f.pseudo());
    if (f.terms().empty()) return out;
    std::map<Exp24, OrbitCombo> r;
    for (Exp24 e = low_r; e < valid; e += 24) {
        OrbitCombo acc;
        auto itf = f.terms().find(e + e0);
        if (itf != f.terms().end()) acc = itf->second;
        for (const auto& [er, cr] : r) {
            auto itg = g.terms().find(e + e0 - er);
            if (itg == g.terms().end()) continue;
            for (const auto& [id, c] : cr.terms()) acc.add(id, -itg->second * c);
        }
        if (!acc.empty()) {
            acc *= 1 / c0;
            if (e < min_exp)
                throw NonCancellingPole("division leaves q^" + exp24_to_string(e) + " below q^" +
                                        exp24_to_string(min_exp));
            r.emplace(e, acc);
            out.set(e, acc);
        }
    }
    return out;
}

QSeries JacobiOps::jreduce(const JacobiSeries& phi) const {
    int denom = 1;
    if (phi.char_shift() % 24 != 0) {
        long rem = ((phi.char_shift() % 24) + 24) % 24;
        denom = static_cast<int>(24 / std::gcd<long>(24, rem));
    }
    QSeries out(denom, phi.valid_to());
    for (const auto& [e, c] : phi.terms()) out.set(e, combo_size(c, reg_));
    return out;
}

JacobiSeries JacobiOps::expand_scale(const JacobiSeries& phi, long t) const {
    if (t < 1) throw std::invalid_argument("expand_scale: t must be >= 1");
    JacobiSeries out(phi.weight(), phi.index() * static_cast<int>(t), phi.valid_to() * t,
                     phi.char_shift() * t, phi.pseudo());
    for (const auto& [e, combo] : phi.terms()) {
        OrbitCombo scaled;
        for (const auto& [id, c] : combo.terms())
            scaled.add(reg_.id_of(reg_.scale_orbit(reg_.symbol(id).name, static_cast<int>(t)).name), c);
        out.set(e * t, scaled);
    }
    return out;
}

JacobiSeries JacobiOps::fold_down(const JacobiSeries& phi, long t) const {
    if (t < 1) throw std::invalid_argument("fold_down: t must be >= 1");
    Exp24 valid = (phi.valid_to() >= 0) ? (phi.valid_to() + t - 1) / t : -((-phi.valid_to()) / t);
    JacobiSeries out(phi.weight(), phi.index(), valid, phi.char_shift(), phi.pseudo());
    for (const auto& [e, combo] : phi.terms())
        if (e % t == 0) out.set(e / t, combo);
    return out;
}

JacobiSeries JacobiOps::make_A(long t, long order, bool pseudo) const {
    if (t < 1) throw std::invalid_argument("make_A: t must be positive");
    const long theta_cap = (pseudo ? 19 : 17);
    const long theta_order = std::min(theta_cap, order * t);
    JacobiSeries a1 = theta_series(theta_order, pseudo);
    if (t == 1) return a1.truncated(order * 24);
    Int s11 = qs::sigma(11, t);
    return (Rat(1) / Rat(s11) * hecke(a1, t)).truncated(order * 24);
}

JacobiSeries JacobiOps::make_B(long t, long order, bool pseudo) const {
    bool prime = t >= 2;
    for (long d = 2; d * d <= t; ++d)
        if (t % d == 0) prime = false;
    if (!prime) throw NonPrimeIndex(static_cast<int>(t));

    const long theta_cap = (pseudo ? 19 : 17);
    const long big = std::min(theta_cap, order * t);
    JacobiSeries a1_big = theta_series(big, pseudo);
    QSeries f2 = qs::f2_level(static_cast<int>(t), big);

    JacobiSeries folded = fold_down(f2 * a1_big, t);

    const long small = (order + t - 1) / t;
    JacobiSeries a1_scaled = expand_scale(theta_series(small, pseudo), t);
    QSeries f2_out = qs::f2_level(static_cast<int>(t), order);
    JacobiSeries term1 = f2_out * a1_scaled;

    Int t12;
    mpz_ui_pow_ui(t12.get_mpz_t(), static_cast<unsigned long>(t), 12);
    // both pieces are index-t weight-14 data; align metadata before combining
    auto with_meta = [&](const JacobiSeries& s) {
        JacobiSeries fixed(14, static_cast<int>(t), s.valid_to(), 0, s.pseudo());
        for (const auto& [e, c] : s.terms()) fixed.set(e, c);
        return fixed;
    };
    JacobiSeries diff = with_meta(term1) - Rat(1) / Rat(t12) * with_meta(folded);
    return (Rat(t12) / Rat(t12 - 1) * diff).truncated(order * 24);
}

JacobiSeries JacobiOps::phi12_exp(long m, long order) const {
    // weak weight-0 index-1 seed: Theta / Delta
    const long theta_order = 17;
    JacobiSeries a1 = theta_series(theta_order, false);
    QSeries delta = qs::delta(theta_order + 4);
    JacobiSeries seed = jdiv_q(a1, delta);

    std::vector<JacobiSeries> g(m + 1);  // g[j] = seed | T_-(j)
    for (long j = 1; j <= m; ++j) g[j] = hecke(seed, j);

    // coefficient of x^m in exp(-sum_j g_j x^j): sum over partitions of m
    std::vector<std::pair<std::vector<long>, Rat>> contributions;
    std::vector<long> parts;
    auto gen = [&](auto&& self, long rest, long max_part) -> void {
        if (rest == 0) {
            std::map<long, int> mult;
            for (long p : parts) ++mult[p];
            Rat coeff = 1;
            int total = 0;
            for (const auto& [p, k] : mult) {
                total += k;
                Int fact = 1;
                for (int i = 2; i <= k; ++i) fact *= i;
                coeff /= Rat(fact);
            }
            if (total % 2 == 1) coeff = -coeff;
            contributions.emplace_back(parts, coeff);
            return;
        }
        for (long p = std::min(rest, max_part); p >= 1; --p) {
            parts.push_back(p);
            self(self, rest - p, p);
            parts.pop_back();
        }
    };
    gen(gen, m, m);

    JacobiSeries bracket(0, static_cast<int>(m), std::numeric_limits<Exp24>::max() / 4, 0, false);
    bool first = true;
    for (const auto& [partition, coeff] : contributions) {
        JacobiSeries prod = g[partition[0]];
        for (std::size_t i = 1; i < partition.size(); ++i)
            prod = jmul(prod, g[partition[i]], ProductMode::Combined);
        JacobiSeries term = coeff * prod;
        if (first) {
            bracket = term;
            first = false;
        } else {
            bracket = bracket + term;
        }
    }
    JacobiSeries result = delta * bracket;
    JacobiSeries out(12, static_cast<int>(m), std::min<Exp24>(result.valid_to(), order * 24), 0, false);
    for (const auto& [e, c] : result.terms()) out.set(e, c);
    if (out.valid_to() < order * 24)
        throw UnknownProduct("", "", out.valid_to());
    return out;
}

std::vector<OrbitCombo> JacobiOps::phi12_solve_candidates(long m, long n, bool pseudo) const {
    const long type = n * m;
    const long max_type = pseudo ? 18 : 16;
    if (type > max_type)
        throw RegistryExhausted("q^" + std::to_string(n) + " of the index-" + std::to_string(m) +
                                " coefficient needs orbits of type " + std::to_string(type));
    // reduction coefficient: -tau(m) E12 + (65520/691) sigma_11(m) Delta
    Rat target;
    if (n == 0) {
        target = -Rat(qs::tau(m));
    } else {
        target = rat(65520, 691) * (Rat(qs::sigma(11, m)) * Rat(qs::tau(n)) -
                                    Rat(qs::tau(m)) * Rat(qs::sigma(11, n)));
    }

    std::vector<OrbitId> support;
    for (OrbitId id : reg_.of_type(type))
        if (pseudo || !reg_.symbol(id).pseudo) support.push_back(id);

    std::vector<std::vector<Rat>> choices;
    for (OrbitId id : support) {
        const OrbitSymbol& s = reg_.symbol(id);
        long d = (s.name == "0") ? std::gcd(n, m) : std::gcd(std::gcd(n, m), static_cast<long>(s.multiplier));
        if (d == 0) d = m;  // n = 0, zero orbit
        Rat tau_d = Rat(qs::tau(d));
        std::vector<Rat> c = {Rat(0), tau_d, -tau_d};
        if (tau_d == 0) c = {Rat(0)};
        choices.push_back(c);
    }

    std::vector<OrbitCombo> solutions;
    std::vector<int> pick(support.size(), 0);
    auto rec = [&](auto&& self, std::size_t i, Rat sum) -> void {
        if (i == support.size()) {
            if (sum == target) {
                OrbitCombo combo;
                for (std::size_t j = 0; j < support.size(); ++j)
                    combo.add(support[j], choices[j][pick[j]]);
                solutions.push_back(combo);
            }
            return;
        }
        for (std::size_t k = 0; k < choices[i].size(); ++k) {
            pick[i] = static_cast<int>(k);
            self(self, i + 1, sum + choices[i][k] * Rat(reg_.symbol(support[i]).size));
        }
    };
    rec(rec, 0, Rat(0));
    return solutions;
}

JacobiSeries JacobiOps::phi12_solve(long m, long order, bool pseudo) const {
    JacobiSeries out(12, static_cast<int>(m), order * 24, 0, pseudo);
    for (long n = 0; n < order; ++n) {
        auto candidates = phi12_solve_candidates(m, n, pseudo);
        if (candidates.empty())
            throw Infeasible("no restricted coefficient vector at q^" + std::to_string(n) +
                             " of the index-" + std::to_string(m) + " form");
        if (candidates.size() > 1)
            throw AmbiguousSolution("q^" + std::to_string(n) + " of the index-" + std::to_string(m) + " form",
                                    static_cast<int>(candidates.size()));
        out.set(n * 24, candidates[0]);
    }
    return out;
}

}  // namespace orbitforms
