#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitforms/errors.hpp"
#include "orbitforms/numbers.hpp"

namespace orbitforms {

// p = 65520: every nonzero Conway orbit has size divisible by p
inline const Int kOrbitSizeUnit = 65520;

using OrbitId = int;

struct OrbitSymbol {
    std::string name;   // "0", "2", "6a", "8a", "17'", ...
    long type;          // half-norm of the vectors in the orbit
    Int y;              // size = y * 65520 (size 1 for the zero orbit)
    std::string core;   // name of the primitive orbit underneath
    int multiplier;     // symbol = multiplier * core
    bool pseudo;        // aggregated stand-in for unclassified orbits
    Int size;
};

class OrbitRegistry {
  public:
    static OrbitRegistry load(const std::string& path);

    const OrbitSymbol& lookup(const std::string& name) const;
    const OrbitSymbol& symbol(OrbitId id) const { return symbols_[id]; }
    OrbitId id_of(const std::string& name) const;
    bool has(const std::string& name) const { return by_name_.count(name) != 0; }
    int count() const { return static_cast<int>(symbols_.size()); }

    // ids are assigned in (type, name) order, which is also the canonical
    // serialization order
    const std::vector<OrbitSymbol>& all() const { return symbols_; }
    const std::vector<OrbitId>& of_type(long type) const;

    // multiplier * symbol, e.g. scale("2", 2) = "8a"
    const OrbitSymbol& scale_orbit(const std::string& name, int c) const;
    // inverse: symbol whose (core, multiplier) matches, if registered
    std::optional<OrbitId> with_core(const std::string& core, int multiplier) const;

    // minimal-norm class representative modulo t*Lambda, t in {2,3}
    const std::string& conjugacy_lookup(const std::string& name, int t) const;
    // full partition: representative -> members (type <= 16, excluding the rep)
    const std::vector<std::pair<std::string, std::vector<std::string>>>& conjugacy_classes(int t) const;

    OrbitId zero_id() const { return zero_id_; }

  private:
    std::vector<OrbitSymbol> symbols_;
    std::map<std::string, OrbitId> by_name_;
    std::map<long, std::vector<OrbitId>> by_type_;
    std::map<std::pair<std::string, int>, OrbitId> by_core_;
    OrbitId zero_id_ = -1;
    std::vector<OrbitId> empty_;
    void build_conjugacy();
    std::vector<std::pair<std::string, std::vector<std::string>>> classes2_, classes3_;
    std::map<std::string, std::string> rep2_, rep3_;
};

// formal rational linear combination of orbit symbols
class OrbitCombo {
  public:
    OrbitCombo() = default;

    const std::map<OrbitId, Rat>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    Rat coeff(OrbitId id) const {
        auto it = terms_.find(id);
        return it == terms_.end() ? Rat(0) : it->second;
    }
    void add(OrbitId id, const Rat& c) {
        if (c == 0) return;
        Rat& slot = terms_[id];
        slot += c;
        if (slot == 0) terms_.erase(id);
    }
    OrbitCombo& operator+=(const OrbitCombo& o) {
        for (const auto& [id, c] : o.terms_) add(id, c);
        return *this;
    }
    OrbitCombo& operator-=(const OrbitCombo& o) {
        for (const auto& [id, c] : o.terms_) add(id, -c);
        return *this;
    }
    OrbitCombo& operator*=(const Rat& c);
    friend OrbitCombo operator*(const Rat& c, const OrbitCombo& a) {
        OrbitCombo out = a;
        out *= c;
        return out;
    }
    friend OrbitCombo operator+(OrbitCombo a, const OrbitCombo& b) { a += b; return a; }
    friend OrbitCombo operator-(OrbitCombo a, const OrbitCombo& b) { a -= b; return a; }
    bool operator==(const OrbitCombo& o) const { return terms_ == o.terms_; }

    long max_type(const OrbitRegistry& reg) const;
    bool touches_pseudo(const OrbitRegistry& reg) const;

  private:
    std::map<OrbitId, Rat> terms_;
};

// evaluation at z=0: sum of coeff * orbit size
Rat combo_size(const OrbitCombo& c, const OrbitRegistry& reg);

// unordered pair of orbit ids
struct PairKey {
    OrbitId a, b;
    PairKey(OrbitId x, OrbitId y) : a(std::min(x, y)), b(std::max(x, y)) {}
    auto operator<=>(const PairKey&) const = default;
};

struct CombinedRow {
    std::map<PairKey, Rat> lhs;
    OrbitCombo rhs;
};

class ProductTable {
  public:
    static ProductTable load(const std::string& products_path, const std::string& combined_path,
                             const OrbitRegistry& reg);

    // nullptr when the pair is not in the exact table (zero orbit handled by caller)
    const OrbitCombo* exact_row(PairKey key) const;
    const std::map<PairKey, OrbitCombo>& exact() const { return exact_; }
    const std::vector<CombinedRow>& combined() const { return combined_; }

  private:
    std::map<PairKey, OrbitCombo> exact_;
    std::vector<CombinedRow> combined_;
};

// combo with unresolved formal pair products; produced by formal multiplication
struct FormalCombo {
    OrbitCombo resolved;
    std::map<PairKey, Rat> pending;

    bool fully_resolved() const { return pending.empty(); }
    FormalCombo& operator+=(const FormalCombo& o);
    FormalCombo& operator*=(const Rat& c);
};

// bilinear extension of the exact table; unknown pairs are kept formal
FormalCombo combo_product_formal(const OrbitCombo& a, const OrbitCombo& b, const ProductTable& table,
                                 const OrbitRegistry& reg);

// strict product: every pair must be exact-table resolvable
OrbitCombo combo_product(const OrbitCombo& a, const OrbitCombo& b, const ProductTable& table,
                         const OrbitRegistry& reg, bool allow_pseudo = false);

// try to express the pending pairs as an exact rational combination of
// combined-table left sides; on success folds their right sides into the
// resolved part. Returns the first unresolvable pair otherwise.
std::optional<PairKey> resolve_with_combined(FormalCombo& fc, const ProductTable& table,
                                             const OrbitRegistry& reg);

// triangle-inequality support bound: types n occurring in O_p * O_q satisfy
// (sqrt(2p)-sqrt(2q))^2/2 <= n <= (sqrt(2p)+sqrt(2q))^2/2
bool pqbound_admits(long p, long q, long n);

struct OrbitData {
    OrbitRegistry registry;
    ProductTable products;
    static OrbitData load(const std::string& data_dir);
};

// data directory resolution: explicit argument, then ORBITFORMS_DATA, then
// the compiled-in source-tree default
std::string default_data_dir(const std::string& cli_override = "");

}  // namespace orbitforms
