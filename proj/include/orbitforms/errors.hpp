#pragma once

#include <stdexcept>
#include <string>

namespace orbitforms {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZeroSeries : Error {
    DivisionByZeroSeries() : Error("division by a series with no nonzero term below its validity bound") {}
};

struct ValidityExhausted : Error {
    explicit ValidityExhausted(const std::string& what) : Error("validity exhausted: " + what) {}
};

struct UnknownSeriesName : Error {
    explicit UnknownSeriesName(const std::string& name) : Error("unknown series name: " + name) {}
};

struct UnknownOrbit : Error {
    explicit UnknownOrbit(const std::string& name) : Error("unknown orbit: " + name) {}
};

struct UnregisteredScaledOrbit : Error {
    explicit UnregisteredScaledOrbit(const std::string& what) : Error("unregistered scaled orbit: " + what) {}
};

struct UnknownProduct : Error {
    std::string a, b;
    // exponent (in 1/24 units) of the first coefficient that could not be resolved
    long long at_exp24;
    UnknownProduct(std::string a_, std::string b_, long long e24)
        : Error("unknown orbit product " + a_ + "*" + b_), a(std::move(a_)), b(std::move(b_)), at_exp24(e24) {}
};

struct UnsupportedModulus : Error {
    explicit UnsupportedModulus(int t) : Error("unsupported modulus t=" + std::to_string(t)) {}
};

struct RegistryExhausted : Error {
    explicit RegistryExhausted(const std::string& what) : Error("orbit registry exhausted: " + what) {}
};

struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& what) : Error("budget exceeded: " + what) {}
};

struct AmbiguousProfile : Error {
    explicit AmbiguousProfile(const std::string& what) : Error("ambiguous profile: " + what) {}
};

struct NoMatch : Error {
    explicit NoMatch(const std::string& what) : Error("no matching orbit profile: " + what) {}
};

struct NonPrimeIndex : Error {
    explicit NonPrimeIndex(int t) : Error("index must be prime, got " + std::to_string(t)) {}
};

struct AmbiguousSolution : Error {
    int solutions;
    AmbiguousSolution(const std::string& what, int n)
        : Error("ambiguous solution: " + what), solutions(n) {}
};

struct NonCancellingPole : Error {
    explicit NonCancellingPole(const std::string& what) : Error("non-cancelling pole: " + what) {}
};

struct Infeasible : Error {
    explicit Infeasible(const std::string& what) : Error("infeasible system: " + what) {}
};

struct UnboundedFreeVariable : Error {
    explicit UnboundedFreeVariable(const std::string& what) : Error("unbounded free variable: " + what) {}
};

struct NoRelationFound : Error {
    explicit NoRelationFound(const std::string& what) : Error("no relation found: " + what) {}
};

struct InsufficientDiscrimination : Error {
    explicit InsufficientDiscrimination(const std::string& what) : Error("insufficient discrimination: " + what) {}
};

struct MissingIntersectionRow : Error {
    MissingIntersectionRow(const std::string& orbit, int ref)
        : Error("missing intersection row for orbit " + orbit + " against reference type " + std::to_string(ref)) {}
};

struct InconsistentSystem : Error {
    explicit InconsistentSystem(const std::string& what) : Error("inconsistent linear system: " + what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

struct UnsupportedIndex : Error {
    explicit UnsupportedIndex(int t) : Error("unsupported index t=" + std::to_string(t)) {}
};

}  // namespace orbitforms
