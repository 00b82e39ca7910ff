#include "orbitforms/orbits.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "orbitforms/linalg.hpp"
#include "orbitforms/qseries.hpp"

namespace orbitforms {

namespace {

std::vector<std::string> data_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open data file " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) line.pop_back();
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string field;
    while (std::getline(ss, field, sep)) out.push_back(field);
    return out;
}

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

}  // namespace

OrbitRegistry OrbitRegistry::load(const std::string& path) {
    OrbitRegistry reg;
    struct Raw {
        std::string name, core;
        long type;
        Int y;
        int multiplier;
    };
    std::vector<Raw> raw;
    for (const auto& line : data_lines(path)) {
        auto f = split(line, '\t');
        if (f.size() != 5) throw ParseError("orbits.tbl line needs 5 tab-separated fields: " + line);
        Raw r;
        r.name = strip(f[0]);
        Rat type = parse_rat_strict(strip(f[1]));
        Rat y = parse_rat_strict(strip(f[2]));
        Rat mult = parse_rat_strict(strip(f[4]));
        if (type.get_den() != 1 || y.get_den() != 1 || mult.get_den() != 1)
            throw ParseError("orbits.tbl fields must be integers: " + line);
        r.type = type.get_num().get_si();
        r.y = y.get_num();
        r.core = strip(f[3]);
        r.multiplier = static_cast<int>(mult.get_num().get_si());
        raw.push_back(std::move(r));
    }
    std::stable_sort(raw.begin(), raw.end(),
                     [](const Raw& a, const Raw& b) { return std::tie(a.type, a.name) < std::tie(b.type, b.name); });
    for (const auto& r : raw) {
        OrbitSymbol s;
        s.name = r.name;
        s.type = r.type;
        s.y = r.y;
        s.core = r.core;
        s.multiplier = r.multiplier;
        s.pseudo = !r.name.empty() && r.name.back() == '\'';
        s.size = (r.name == "0") ? Int(1) : Int(r.y * kOrbitSizeUnit);
        OrbitId id = static_cast<OrbitId>(reg.symbols_.size());
        if (!reg.by_name_.emplace(s.name, id).second) throw ParseError("duplicate orbit " + s.name);
        reg.by_type_[s.type].push_back(id);
        reg.by_core_[{s.core, s.multiplier}] = id;
        if (s.name == "0") reg.zero_id_ = id;
        reg.symbols_.push_back(std::move(s));
    }
    if (reg.zero_id_ < 0) throw ParseError("orbits.tbl is missing the zero orbit");
    for (const auto& s : reg.symbols_) {
        if (s.name == "0") continue;
        const OrbitSymbol& core = reg.lookup(s.core);
        if (s.type != core.type * s.multiplier * s.multiplier)
            throw ParseError("orbit " + s.name + " violates type = multiplier^2 * type(core)");
    }
    reg.build_conjugacy();
    return reg;
}

const OrbitSymbol& OrbitRegistry::lookup(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw UnknownOrbit(name);
    return symbols_[it->second];
}

OrbitId OrbitRegistry::id_of(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw UnknownOrbit(name);
    return it->second;
}

const std::vector<OrbitId>& OrbitRegistry::of_type(long type) const {
    auto it = by_type_.find(type);
    return it == by_type_.end() ? empty_ : it->second;
}

const OrbitSymbol& OrbitRegistry::scale_orbit(const std::string& name, int c) const {
    const OrbitSymbol& s = lookup(name);
    if (c < 1) throw std::invalid_argument("scale_orbit: multiplier must be positive");
    if (s.name == "0" || c == 1) return s;
    auto it = by_core_.find({s.core, s.multiplier * c});
    if (it == by_core_.end())
        throw UnregisteredScaledOrbit(std::to_string(c) + "*" + name);
    return symbols_[it->second];
}

std::optional<OrbitId> OrbitRegistry::with_core(const std::string& core, int multiplier) const {
    auto it = by_core_.find({core, multiplier});
    if (it == by_core_.end()) return std::nullopt;
    return it->second;
}

void OrbitRegistry::build_conjugacy() {
    // conjugate classes modulo 2L: even types split by the Fourier
    // coefficients of Phi_{12,2}; every odd type is in the class of O_3
    const std::vector<std::pair<std::string, std::vector<std::string>>> mod2 = {
        {"0", {"8a", "12a", "16a"}},
        {"2", {"6b", "8c", "10b", "10c", "12b", "12c", "14c", "14d", "14e", "16b", "16c"}},
        {"3", {"5", "7", "9a", "9b", "11a", "11b", "13a", "13b", "13c", "15a", "15b", "15c", "15d", "15e"}},
        {"4", {"6a", "8b", "10a", "12d", "12e", "12f", "14a", "14b", "16d", "16e", "16f", "16g"}},
    };
    const std::vector<std::pair<std::string, std::vector<std::string>>> mod3 = {
        {"0", {}},
        {"2", {"8a", "14c"}},
        {"3", {"12a", "12b", "15a"}},
        {"4", {"10b", "13a", "16a", "16b", "16d"}},
        {"5", {"8c", "11a", "14a", "14d"}},
        {"6a", {"9a", "12c", "12e", "15b", "15e"}},
        {"6b", {"12d", "15c"}},
        {"7", {"10a", "10c", "13b", "13c", "16c", "16e", "16f", "16g"}},
        {"8b", {"11b", "14b", "14e"}},
        {"9b", {"12f", "15d"}},
    };
    classes2_ = mod2;
    classes3_ = mod3;
    for (const auto& [rep, members] : mod2) {
        rep2_[rep] = rep;
        for (const auto& m : members) rep2_[m] = rep;
    }
    for (const auto& [rep, members] : mod3) {
        rep3_[rep] = rep;
        for (const auto& m : members) rep3_[m] = rep;
    }
}

const std::string& OrbitRegistry::conjugacy_lookup(const std::string& name, int t) const {
    const OrbitSymbol& s = lookup(name);
    if (s.type > 16) throw UnknownOrbit(name + " (no conjugacy data above type 16)");
    if (t == 2) return rep2_.at(name);
    if (t == 3) return rep3_.at(name);
    throw UnsupportedModulus(t);
}

const std::vector<std::pair<std::string, std::vector<std::string>>>& OrbitRegistry::conjugacy_classes(int t) const {
    if (t == 2) return classes2_;
    if (t == 3) return classes3_;
    throw UnsupportedModulus(t);
}

OrbitCombo& OrbitCombo::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [id, co] : terms_) co *= c;
    return *this;
}

long OrbitCombo::max_type(const OrbitRegistry& reg) const {
    long m = -1;
    for (const auto& [id, c] : terms_) m = std::max(m, reg.symbol(id).type);
    return m;
}

bool OrbitCombo::touches_pseudo(const OrbitRegistry& reg) const {
    for (const auto& [id, c] : terms_)
        if (reg.symbol(id).pseudo) return true;
    return false;
}

Rat combo_size(const OrbitCombo& c, const OrbitRegistry& reg) {
    Rat s = 0;
    for (const auto& [id, co] : c.terms()) s += co * Rat(reg.symbol(id).size);
    return s;
}

bool pqbound_admits(long p, long q, long n) {
    // |n - p - q| <= 2 sqrt(pq), squared to stay exact
    long d = n - p - q;
    return d * d <= 4 * p * q;
}

namespace {

OrbitCombo parse_combo(const std::string& text, const OrbitRegistry& reg) {
    OrbitCombo combo;
    std::string s = text;
    std::size_t i = 0;
    int sign = 1;
    auto skip_ws = [&]() { while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i; };
    skip_ws();
    while (i < s.size()) {
        if (s[i] == '+') { sign = 1; ++i; skip_ws(); }
        else if (s[i] == '-') { sign = -1; ++i; skip_ws(); }
        std::size_t star = s.find('*', i);
        if (star == std::string::npos) throw ParseError("combo term missing '*': " + text);
        Rat coeff = parse_rat_strict(strip(s.substr(i, star - i)));
        std::size_t end = star + 1;
        while (end < s.size() && s[end] != ' ' && s[end] != '+' && s[end] != '-' && s[end] != '\t') ++end;
        std::string name = strip(s.substr(star + 1, end - star - 1));
        combo.add(reg.id_of(name), Rat(sign) * coeff);
        i = end;
        sign = 1;
        skip_ws();
    }
    return combo;
}

}  // namespace

ProductTable ProductTable::load(const std::string& products_path, const std::string& combined_path,
                                const OrbitRegistry& reg) {
    ProductTable t;
    for (const auto& line : data_lines(products_path)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("products.tbl line missing '=': " + line);
        std::string lhs = strip(line.substr(0, eq));
        auto star = lhs.find('*');
        if (star == std::string::npos) throw ParseError("products.tbl pair missing '*': " + line);
        OrbitId a = reg.id_of(strip(lhs.substr(0, star)));
        OrbitId b = reg.id_of(strip(lhs.substr(star + 1)));
        t.exact_[PairKey(a, b)] = parse_combo(strip(line.substr(eq + 1)), reg);
    }
    for (const auto& line : data_lines(combined_path)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("combined.tbl line missing '=': " + line);
        CombinedRow row;
        std::string lhs = strip(line.substr(0, eq));
        std::size_t i = 0;
        int sign = 1;
        auto skip_ws = [&]() { while (i < lhs.size() && (lhs[i] == ' ' || lhs[i] == '\t')) ++i; };
        skip_ws();
        while (i < lhs.size()) {
            if (lhs[i] == '+') { sign = 1; ++i; skip_ws(); }
            else if (lhs[i] == '-') { sign = -1; ++i; skip_ws(); }
            Rat coeff = 1;
            if (lhs[i] != '(') {
                std::size_t star = lhs.find('*', i);
                if (star == std::string::npos || lhs[star + 1] != '(')
                    throw ParseError("combined.tbl pair term must be coeff*(a*b): " + line);
                coeff = parse_rat_strict(strip(lhs.substr(i, star - i)));
                i = star + 1;
            }
            std::size_t close = lhs.find(')', i);
            if (close == std::string::npos) throw ParseError("combined.tbl unbalanced parenthesis: " + line);
            std::string pair = lhs.substr(i + 1, close - i - 1);
            auto star = pair.find('*');
            if (star == std::string::npos) throw ParseError("combined.tbl pair missing '*': " + line);
            OrbitId a = reg.id_of(strip(pair.substr(0, star)));
            OrbitId b = reg.id_of(strip(pair.substr(star + 1)));
            Rat& slot = row.lhs[PairKey(a, b)];
            slot += Rat(sign) * coeff;
            if (slot == 0) row.lhs.erase(PairKey(a, b));
            i = close + 1;
            sign = 1;
            skip_ws();
        }
        row.rhs = parse_combo(strip(line.substr(eq + 1)), reg);
        t.combined_.push_back(std::move(row));
    }
    return t;
}

const OrbitCombo* ProductTable::exact_row(PairKey key) const {
    auto it = exact_.find(key);
    return it == exact_.end() ? nullptr : &it->second;
}

FormalCombo& FormalCombo::operator+=(const FormalCombo& o) {
    resolved += o.resolved;
    for (const auto& [k, c] : o.pending) {
        Rat& slot = pending[k];
        slot += c;
        if (slot == 0) pending.erase(k);
    }
    return *this;
}

FormalCombo& FormalCombo::operator*=(const Rat& c) {
    resolved *= c;
    if (c == 0) {
        pending.clear();
        return *this;
    }
    for (auto& [k, co] : pending) co *= c;
    return *this;
}

FormalCombo combo_product_formal(const OrbitCombo& a, const OrbitCombo& b, const ProductTable& table,
                                 const OrbitRegistry& reg) {
    FormalCombo out;
    const OrbitId zero = reg.zero_id();
    for (const auto& [ia, ca] : a.terms()) {
        for (const auto& [ib, cb] : b.terms()) {
            Rat c = ca * cb;
            if (ia == zero) {
                out.resolved.add(ib, c);
                continue;
            }
            if (ib == zero) {
                out.resolved.add(ia, c);
                continue;
            }
            PairKey key(ia, ib);
            if (const OrbitCombo* row = table.exact_row(key)) {
                for (const auto& [id, rc] : row->terms()) out.resolved.add(id, c * rc);
            } else {
                Rat& slot = out.pending[key];
                slot += c;
                if (slot == 0) out.pending.erase(key);
            }
        }
    }
    return out;
}

OrbitCombo combo_product(const OrbitCombo& a, const OrbitCombo& b, const ProductTable& table,
                         const OrbitRegistry& reg, bool allow_pseudo) {
    FormalCombo fc = combo_product_formal(a, b, table, reg);
    if (!fc.pending.empty()) {
        PairKey k = fc.pending.begin()->first;
        throw UnknownProduct(reg.symbol(k.a).name, reg.symbol(k.b).name, 0);
    }
    if (!allow_pseudo && fc.resolved.touches_pseudo(reg)) {
        // O_18a is rigorous; only the aggregated 17'/18b' stand-ins need the
        // pseudo-orbit opt-in
        for (const auto& [ia, ca] : a.terms())
            for (const auto& [ib, cb] : b.terms()) {
                if (ia == reg.zero_id() || ib == reg.zero_id()) continue;
                const OrbitCombo* row = table.exact_row(PairKey(ia, ib));
                if (row && row->touches_pseudo(reg))
                    throw UnknownProduct(reg.symbol(ia).name, reg.symbol(ib).name, 0);
            }
    }
    return fc.resolved;
}

std::optional<PairKey> resolve_with_combined(FormalCombo& fc, const ProductTable& table,
                                             const OrbitRegistry& reg) {
    (void)reg;
    if (fc.pending.empty()) return std::nullopt;
    const auto& rows = table.combined();
    // coordinates: all pairs seen in the pending part or any combined row
    std::map<PairKey, int> coord;
    auto coord_of = [&](PairKey k) {
        auto [it, fresh] = coord.emplace(k, static_cast<int>(coord.size()));
        return it->second;
    };
    for (const auto& [k, c] : fc.pending) coord_of(k);
    for (const auto& row : rows)
        for (const auto& [k, c] : row.lhs) coord_of(k);
    RatMat a(coord.size(), RatVec(rows.size(), 0));
    RatVec b(coord.size(), 0);
    for (std::size_t j = 0; j < rows.size(); ++j)
        for (const auto& [k, c] : rows[j].lhs) a[coord[k]][j] = c;
    for (const auto& [k, c] : fc.pending) b[coord[k]] = c;
    auto sol = solve_linear(a, b);
    if (!sol) return fc.pending.begin()->first;
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if ((*sol)[j] == 0) continue;
        OrbitCombo scaled = rows[j].rhs;
        scaled *= (*sol)[j];
        fc.resolved += scaled;
    }
    fc.pending.clear();
    return std::nullopt;
}

OrbitData OrbitData::load(const std::string& data_dir) {
    OrbitData d{OrbitRegistry::load(data_dir + "/orbits.tbl"), ProductTable{}};
    d.products = ProductTable::load(data_dir + "/products.tbl", data_dir + "/combined.tbl", d.registry);
    return d;
}

std::string default_data_dir(const std::string& cli_override) {
    if (!cli_override.empty()) return cli_override;
    if (const char* env = std::getenv("ORBITFORMS_DATA"); env && *env) return env;
#ifdef ORBITFORMS_DEFAULT_DATA_DIR
    return ORBITFORMS_DEFAULT_DATA_DIR;
#else
    return "data";
#endif
}

}  // namespace orbitforms
