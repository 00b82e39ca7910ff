#include "orbitforms/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace orbitforms {

// ---------------------------------------------------------------- data files

IntersectionTable IntersectionTable::load(const std::string& path, const OrbitRegistry& reg) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open intersection table " + path);
    IntersectionTable t;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string orbit, ref, counts;
        if (!std::getline(ss, orbit, '\t') || !std::getline(ss, ref, '\t') || !std::getline(ss, counts))
            throw ParseError("intersections.tbl line needs 3 tab-separated fields: " + line);
        reg.lookup(orbit);
        Rat ref_rat = parse_rat_strict(ref);
        if (ref_rat.get_den() != 1) throw ParseError("intersections.tbl reference type must be an integer");
        int ref_type = static_cast<int>(ref_rat.get_num().get_si());
        IntersectionProfile profile;
        std::stringstream cs(counts);
        std::string item;
        while (std::getline(cs, item, ',')) {
            auto colon = item.find(':');
            if (colon == std::string::npos) throw ParseError("intersections.tbl entry needs k:count: " + item);
            Rat k = parse_rat_strict(item.substr(0, colon));
            Rat c = parse_rat_strict(item.substr(colon + 1));
            if (k.get_den() != 1 || c.get_den() != 1)
                throw ParseError("intersections.tbl entries must be integers: " + item);
            profile.counts[static_cast<int>(k.get_num().get_si())] = c.get_num();
        }
        t.rows_[{orbit, ref_type}] = std::move(profile);
    }
    return t;
}

const IntersectionProfile* IntersectionTable::row(const std::string& orbit, int ref_type) const {
    auto it = rows_.find({orbit, ref_type});
    return it == rows_.end() ? nullptr : &it->second;
}

// ------------------------------------------------------------------- lattice

Lattice::Lattice(const std::string& data_dir, const OrbitRegistry& reg, const IntersectionTable& inter)
    : golay_(GolayCode::load(data_dir + "/golay.gen")), reg_(reg), inter_(inter) {}

bool Lattice::member(const Vec24& v) const {
    const int m = v[0] & 1;
    std::uint32_t support = 0;
    long sum = 0;
    for (int i = 0; i < 24; ++i) {
        int x = v[i];
        if ((x & 1) != m) return false;
        // coordinates congruent to m+2 mod 4 form the support set
        if (((x - m - 2) & 3) == 0) support |= 1u << i;
        sum += x;
    }
    if (!golay_.contains(support)) return false;
    return ((sum - 4 * m) & 7) == 0;
}

void Lattice::enumerate(int type, int jobs, const std::function<void(int, const Vec24&)>& fn) const {
    const long target = 16L * type;
    if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const auto& words = golay_.codewords();

    auto worker = [&](int tid) {
        Vec24 v{};
        int residue[24];
        long min_tail[25];
        for (std::size_t ci = tid; ci < 2 * words.size(); ci += jobs) {
            const int m = static_cast<int>(ci / words.size());
            const std::uint32_t c = words[ci % words.size()];
            for (int i = 0; i < 24; ++i) residue[i] = m + 2 * ((c >> i) & 1);
            min_tail[24] = 0;
            for (int i = 23; i >= 0; --i) {
                const int r = residue[i] & 3;
                const long ms = (r == 0) ? 0 : (r == 2 ? 4 : 1);
                min_tail[i] = min_tail[i + 1] + ms;
            }
            if (min_tail[0] > target) continue;

            // depth-first over coordinates; sum condition checked at the leaf
            auto rec = [&](auto&& self, int i, long rem, long sum) -> void {
                if (i == 23) {
                    // last coordinate must close the norm exactly
                    long root = static_cast<long>(std::lround(std::sqrt(static_cast<double>(rem))));
                    while (root * root > rem) --root;
                    while ((root + 1) * (root + 1) <= rem) ++root;
                    if (root * root != rem) return;
                    for (long s : {root, -root}) {
                        if (((s - residue[23]) & 3) != 0) continue;
                        if (((sum + s - 4 * m) & 7) != 0) continue;
                        v[23] = static_cast<std::int16_t>(s);
                        fn(tid, v);
                        if (root == 0) break;
                    }
                    return;
                }
                const long cap = rem - min_tail[i + 1];
                const int r = residue[i] & 3;
                for (long val = ((r == 0) ? 0 : (r == 2 ? 2 : 1));; val += (r & 1) ? 2 : 4) {
                    // for odd residues both val and -val alternate classes mod 4
                    if (val * val > cap) break;
                    for (long s : {val, -val}) {
                        if (((s - r) & 3) != 0) continue;
                        v[i] = static_cast<std::int16_t>(s);
                        self(self, i + 1, rem - s * s, sum + s);
                        if (val == 0) break;
                    }
                }
            };
            rec(rec, 0, target, 0);
        }
    };

    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
}

void Lattice::stream_shell(int type, int jobs, const std::function<void(int, const Vec24&)>& fn) const {
    if (type < 2 || type > 4) throw BudgetExceeded("shell enumeration supports types 2..4");
    enumerate(type, jobs, fn);
}

Int Lattice::shell_count(int type, int jobs) const {
    if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::vector<long> counts(jobs, 0);
    stream_shell(type, jobs, [&](int tid, const Vec24&) { ++counts[tid]; });
    Int total = 0;
    for (long c : counts) total += c;
    return total;
}

const std::vector<Vec24>& Lattice::shell(int type) const {
    if (type != 2) throw BudgetExceeded("only the type-2 shell is materialized; stream the others");
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (shell2_.empty()) {
        const int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
        std::vector<std::vector<Vec24>> parts(jobs);
        enumerate(2, jobs, [&](int tid, const Vec24& v) { parts[tid].push_back(v); });
        for (auto& p : parts) shell2_.insert(shell2_.end(), p.begin(), p.end());
        std::sort(shell2_.begin(), shell2_.end());
    }
    return shell2_;
}

const std::vector<Vec24>& Lattice::shell2_half() const {
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (shell2_half_.empty()) {
        const auto& full = shell(2);
        shell2_half_.reserve(full.size() / 2);
        for (const Vec24& v : full) {
            Vec24 neg;
            for (int i = 0; i < 24; ++i) neg[i] = static_cast<std::int16_t>(-v[i]);
            if (v < neg) shell2_half_.push_back(v);
        }
    }
    return shell2_half_;
}

IntersectionProfile Lattice::profile_against_shell2(const Vec24& v) const {
    const auto& half = shell2_half();
    long hist[64] = {0};
    const std::int16_t* base = half.front().data();
    const std::size_t n = half.size();
    for (std::size_t j = 0; j < n; ++j) {
        const std::int16_t* u = base + 24 * j;
        long d = 0;
        for (int i = 0; i < 24; ++i) d += long(u[i]) * v[i];
        d = (d < 0 ? -d : d) >> 3;
        ++hist[d];
    }
    IntersectionProfile p;
    for (int k = 0; k < 64; ++k) {
        if (!hist[k]) continue;
        p.counts[k] = (k == 0) ? Int(2 * hist[k]) : Int(hist[k]);
    }
    return p;
}

namespace {

bool divides_vector(const Vec24& v, int d, Vec24& out) {
    for (int i = 0; i < 24; ++i) {
        if (v[i] % d != 0) return false;
        out[i] = static_cast<std::int16_t>(v[i] / d);
    }
    return true;
}

}  // namespace

std::string Lattice::classify(const Vec24& v) const {
    const long t = vec_type(v);
    if (raw_norm(v) % 16 != 0) throw NoMatch("norm not divisible by 16; not a lattice vector");
    if (t == 0) return "0";

    // non-primitive vectors are exactly d * (primitive member); d*O_x is
    // registered only for 8a, 12a, 16a, 18a
    for (int d : {3, 2}) {
        Vec24 w;
        if (t % (d * d) == 0 && divides_vector(v, d, w) && member(w)) {
            std::string inner = classify(w);
            return reg_.scale_orbit(inner, d).name;
        }
    }

    std::vector<OrbitId> candidates;
    for (OrbitId id : reg_.of_type(t))
        if (!reg_.symbol(id).pseudo) candidates.push_back(id);
    if (candidates.empty()) throw RegistryExhausted("no registered orbit of type " + std::to_string(t));
    if (candidates.size() == 1) return reg_.symbol(candidates[0]).name;

    IntersectionProfile prof = profile_against_shell2(v);
    const Int shell2_size = reg_.lookup("2").size;

    std::vector<OrbitId> matches, missing;
    for (OrbitId id : candidates) {
        const OrbitSymbol& s = reg_.symbol(id);
        const IntersectionProfile* row = inter_.row(s.name, 2);
        if (!row) {
            missing.push_back(id);
            continue;
        }
        // reciprocity: profile of v against shell 2 = (|O_2|/|O|) * stored row
        bool ok = true;
        auto it = prof.counts.begin();
        for (const auto& [k, c] : row->counts) {
            Rat expect = Rat(c) * Rat(shell2_size) / Rat(s.size);
            if (it == prof.counts.end() || it->first != k || Rat(it->second) != expect) {
                ok = false;
                break;
            }
            ++it;
        }
        if (ok && it == prof.counts.end()) matches.push_back(id);
    }
    if (matches.size() == 1) return reg_.symbol(matches[0]).name;
    if (matches.empty() && missing.empty())
        throw NoMatch("type-" + std::to_string(t) + " vector matches no stored profile");
    throw AmbiguousProfile("type-" + std::to_string(t) +
                           " vector not separated by the type-2 reference profiles");
}

Int Lattice::product_oracle(int a, const std::string& b, const Vec24& w, int jobs) const {
    if (a != 2 && a != 3) throw BudgetExceeded("product oracle scans shells of type 2 or 3 only");
    const OrbitSymbol& target = reg_.lookup(b);
    const long want_norm = 16 * target.type;
    int same_type = 0;
    for (OrbitId id : reg_.of_type(target.type))
        if (!reg_.symbol(id).pseudo) ++same_type;
    const bool needs_classify = same_type > 1;

    auto check = [&](const Vec24& u) -> bool {
        Vec24 x;
        long norm = 0;
        for (int i = 0; i < 24; ++i) {
            x[i] = static_cast<std::int16_t>(w[i] - u[i]);
            norm += long(x[i]) * x[i];
        }
        if (norm != want_norm) return false;
        if (!needs_classify) return true;
        return classify(x) == b;
    };

    if (a == 2) {
        Int count = 0;
        for (const Vec24& u : shell(2))
            if (check(u)) ++count;
        return count;
    }
    if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    shell2_half();  // build before threading; classify reads it
    std::vector<long> counts(jobs, 0);
    stream_shell(3, jobs, [&](int tid, const Vec24& u) {
        if (check(u)) ++counts[tid];
    });
    Int total = 0;
    for (long c : counts) total += c;
    return total;
}

IntersectionProfile Lattice::profile_oracle(int x, int ref_type, int jobs) const {
    if (x != 2 && x != 3) throw BudgetExceeded("profile oracle scans shells of type 2 or 3 only");
    const Vec24 ref = reference_vector(ref_type);
    if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::array<long, 64>> hists(jobs);
    for (auto& h : hists) h.fill(0);
    stream_shell(x, jobs, [&](int tid, const Vec24& u) {
        long d = raw_dot(u, ref);
        d = (d < 0 ? -d : d) >> 3;
        ++hists[tid][d];
    });
    IntersectionProfile p;
    for (int k = 0; k < 64; ++k) {
        long total = 0;
        for (const auto& h : hists) total += h[k];
        if (!total) continue;
        // each +-pair was seen twice; k=0 stays as counted
        p.counts[k] = (k == 0) ? Int(total) : Int(total / 2);
    }
    return p;
}

bool Lattice::mod_lattice_conjugate(const Vec24& v, const Vec24& u, long t) const {
    Vec24 d;
    for (int i = 0; i < 24; ++i) {
        long diff = long(v[i]) - u[i];
        if (diff % t != 0) return false;
        d[i] = static_cast<std::int16_t>(diff / t);
    }
    return member(d);
}

Lattice::WeightedReport Lattice::weighted_equality(int t) const {
    std::map<std::string, Rat> w;
    switch (t) {
        case 2:
            w = {{"2", rat(1, 2)}, {"3", rat(1, 2)}, {"4", rat(1, 48)}};
            break;
        case 3:
            w = {{"2", 1}, {"3", 1}, {"4", 1}, {"5", 1}, {"6a", 1},
                 {"6b", rat(1, 3)}, {"7", rat(1, 2)}, {"8b", rat(1, 9)}, {"9b", rat(1, 36)}};
            break;
        case 4:
            w = {{"2", 1}, {"3", 1}, {"4", 1}, {"5", 1}, {"6a", 1}, {"6b", 1}, {"7", 1},
                 {"8a", rat(1, 2)}, {"8b", 1}, {"8c", 1}, {"9a", 1}, {"9b", 1},
                 {"10a", 1}, {"10b", rat(1, 2)}, {"10c", 1},
                 {"11a", rat(1, 2)}, {"11b", 1},
                 {"12a", rat(1, 2)}, {"12c", 1}, {"12d", rat(1, 4)}, {"12e", rat(1, 2)}, {"12f", 1},
                 {"13b", rat(1, 2)}, {"13c", rat(1, 3)},
                 {"14b", rat(1, 6)}, {"14d", rat(1, 4)}, {"14e", rat(1, 8)},
                 {"15b", rat(1, 14)}, {"15d", rat(1, 14)},
                 {"16a", rat(1, 48)}, {"16e", rat(1, 32)}};
            break;
        default:
            throw UnsupportedModulus(t);
    }
    Rat total = 1;  // the zero class
    for (const auto& [name, weight] : w) total += weight * Rat(reg_.lookup(name).size);
    Int expect;
    mpz_ui_pow_ui(expect.get_mpz_t(), t, 24);
    return {total, Rat(expect), total == Rat(expect)};
}

Vec24 Lattice::reference_vector(int type) {
    Vec24 v{};
    switch (type) {
        case 2: v[0] = 4; v[1] = 4; break;
        case 3: v[0] = 5; for (int i = 1; i < 24; ++i) v[i] = 1; break;
        case 4: v[0] = 8; break;
        default: throw Error("reference vectors exist for types 2, 3, 4");
    }
    return v;
}

Vec24 Lattice::random_of_shell(int type, std::mt19937_64& rng) const {
    if (type != 2) throw BudgetExceeded("random elements are drawn from the type-2 shell");
    const auto& s2 = shell(2);
    return s2[std::uniform_int_distribution<std::size_t>(0, s2.size() - 1)(rng)];
}

Vec24 Lattice::representative_of(const std::string& orbit, std::uint64_t seed) const {
    const OrbitSymbol& target = reg_.lookup(orbit);
    std::mt19937_64 rng(0x0f0e57a3ull ^ (seed * 0x9e3779b97f4a7c15ull) ^ std::hash<std::string>{}(orbit));

    if (orbit == "0") return Vec24{};
    if (orbit == "2") return random_of_shell(2, rng);

    auto scaled = [&](const std::string& core, int d) {
        Vec24 w = representative_of(core, seed);
        Vec24 out;
        for (int i = 0; i < 24; ++i) out[i] = static_cast<std::int16_t>(d * w[i]);
        return out;
    };
    if (target.multiplier > 1) return scaled(target.core, target.multiplier);

    // sum recipe: helper orbit + random type-2 vectors until the sum lands in
    // the target (unique at its type within the recipe row, or classified)
    struct Recipe {
        const char* helper;
        bool classify_needed;
    };
    static const std::map<std::string, Recipe> recipes = {
        {"3", {"2", false}},   {"4", {"2", false}},   {"5", {"3", false}},
        {"6a", {"4", true}},   {"6b", {"4", true}},   {"7", {"5", false}},
        {"8b", {"5", true}},   {"8c", {"5", true}},   {"9a", {"5", true}},
        {"9b", {"5", true}},   {"10a", {"5", false}}, {"10b", {"4", false}},
        {"11a", {"5", false}}, {"12b", {"5", false}}, {"12d", {"6b", false}},
        {"12e", {"6a", false}}, {"13a", {"6a", false}}, {"14c", {"6b", false}},
    };
    // recipes over a type-3 base instead of type-2
    static const std::map<std::string, const char*> recipes3 = {
        {"10c", "3"}, {"11b", "4"}, {"12c", "4"},
    };

    if (auto it = recipes.find(orbit); it != recipes.end()) {
        Vec24 helper = representative_of(it->second.helper, seed + 1);
        for (int tries = 0; tries < 4000000; ++tries) {
            Vec24 u = random_of_shell(2, rng);
            Vec24 x;
            long norm = 0;
            for (int i = 0; i < 24; ++i) {
                x[i] = static_cast<std::int16_t>(helper[i] + u[i]);
                norm += long(x[i]) * x[i];
            }
            if (norm != 16 * target.type) continue;
            if (!it->second.classify_needed || classify(x) == orbit) return x;
        }
    } else if (auto it3 = recipes3.find(orbit); it3 != recipes3.end()) {
        Vec24 helper = representative_of(it3->second, seed + 1);
        for (int tries = 0; tries < 4000000; ++tries) {
            Vec24 u = representative_of("3", seed + 2 + tries);
            Vec24 x;
            long norm = 0;
            for (int i = 0; i < 24; ++i) {
                x[i] = static_cast<std::int16_t>(helper[i] + u[i]);
                norm += long(x[i]) * x[i];
            }
            if (norm == 16 * target.type) return x;
        }
    } else {
        throw Error("no representative recipe for orbit " + orbit);
    }
    throw Error("representative search for orbit " + orbit + " did not terminate");
}

}  // namespace orbitforms
