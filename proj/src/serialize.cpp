#include "orbitforms/serialize.hpp"

#include <sstream>

namespace orbitforms {

std::string combo_to_string(const OrbitCombo& c, const OrbitRegistry& reg) {
    if (c.empty()) return "0";
    std::string out;
    for (const auto& [id, r] : c.terms()) {
        if (!out.empty()) out += " + ";
        out += rat_to_string(r) + "*" + reg.symbol(id).name;
    }
    return out;
}

OrbitCombo parse_combo_text(const std::string& text, const OrbitRegistry& reg) {
    OrbitCombo combo;
    if (text == "0") return combo;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '+')) ++i;
        if (i >= text.size()) break;
        std::size_t star = text.find('*', i);
        if (star == std::string::npos) throw ParseError("combo term missing '*': " + text);
        Rat coeff = parse_rat_strict(text.substr(i, star - i));
        std::size_t end = star + 1;
        while (end < text.size() && text[end] != ' ') ++end;
        combo.add(reg.id_of(text.substr(star + 1, end - star - 1)), coeff);
        i = end;
    }
    return combo;
}

std::string jacobi_to_string(const JacobiSeries& f, const OrbitRegistry& reg) {
    std::ostringstream out;
    out << "weight " << f.weight() << " index " << f.index() << " char " << exp24_to_string(f.char_shift())
        << " valid_to " << exp24_to_string(f.valid_to());
    if (f.pseudo()) out << " pseudo";
    out << "\n";
    for (const auto& [e, c] : f.terms()) out << "q^" << exp24_to_string(e) << " : " << combo_to_string(c, reg) << "\n";
    return out.str();
}

JacobiSeries parse_jacobi_text(const std::string& text, const OrbitRegistry& reg) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty jacobi series text");
    std::istringstream head(line);
    std::string kw;
    int weight, index;
    std::string char_s, valid_s;
    head >> kw >> weight;
    if (kw != "weight") throw ParseError("jacobi series header must start with 'weight'");
    head >> kw >> index;
    if (kw != "index") throw ParseError("jacobi series header missing 'index'");
    head >> kw >> char_s;
    if (kw != "char") throw ParseError("jacobi series header missing 'char'");
    head >> kw >> valid_s;
    if (kw != "valid_to") throw ParseError("jacobi series header missing 'valid_to'");
    bool pseudo = false;
    if (head >> kw) pseudo = (kw == "pseudo");
    JacobiSeries f(weight, index, parse_exp24(valid_s), parse_exp24(char_s), pseudo);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto colon = line.find(" : ");
        if (colon == std::string::npos || line.rfind("q^", 0) != 0)
            throw ParseError("jacobi series term line must be 'q^e : combo': " + line);
        Exp24 e = parse_exp24(line.substr(2, colon - 2));
        f.set(e, parse_combo_text(line.substr(colon + 3), reg));
    }
    return f;
}

std::string qseries_to_string(const QSeries& f) {
    std::ostringstream out;
    out << "valid_to " << exp24_to_string(f.valid_to()) << "\n";
    for (const auto& [e, c] : f.terms()) out << "q^" << exp24_to_string(e) << " : " << rat_to_string(c) << "\n";
    return out.str();
}

}  // namespace orbitforms
