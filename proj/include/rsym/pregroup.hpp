#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rsym {

using Elem = int;
inline constexpr Elem kIdentity = 0;
inline constexpr Elem kUndef = -1;

using Word = std::vector<Elem>;

// Finite pregroup on elements 0..n-1, 0 the identity. Products outside the
// domain hold kUndef. Fields are public so tests can build malformed tables;
// validate_axioms is the gatekeeper.
struct PregroupTable {
    std::vector<std::string> names;
    std::vector<Elem> sig;
    std::vector<Elem> mul;  // row-major n*n

    int size() const { return static_cast<int>(names.size()); }
    Elem sigma(Elem p) const { return sig[p]; }
    Elem mult(Elem a, Elem b) const { return mul[static_cast<std::size_t>(a) * names.size() + b]; }
    bool defined(Elem a, Elem b) const { return mult(a, b) != kUndef; }
    Elem& at(Elem a, Elem b) { return mul[static_cast<std::size_t>(a) * names.size() + b]; }
    const std::string& name(Elem p) const { return names[p]; }
    std::optional<Elem> find(const std::string& nm) const;
    int domain_size() const;
};

struct AxiomViolation {
    std::string axiom;  // "P1".."P5", "inverse-uniqueness", "sigma-involution", "sigma-identity"
    std::vector<Elem> witness;
};

struct AxiomReport {
    std::string structural_error;  // nonempty when the table is malformed
    std::vector<AxiomViolation> violations;
    bool ok() const { return structural_error.empty() && violations.empty(); }
    std::string describe(const PregroupTable& t) const;
};

// Stops collecting after max_violations (0 = no limit).
AxiomReport validate_axioms(const PregroupTable& t, std::size_t max_violations = 0);

inline Elem partial_mult(const PregroupTable& t, Elem a, Elem b) { return t.mult(a, b); }

Word p_reduce(const PregroupTable& t, const Word& w);
Word cyclically_p_reduce(const PregroupTable& t, const Word& w);
bool is_p_reduced(const PregroupTable& t, const Word& w);
bool is_cyclically_p_reduced(const PregroupTable& t, const Word& w);
Word inverse_word(const PregroupTable& t, const Word& w);

// n*n flags; entry (a,b) set iff a intermults with b.
struct BoolMatrix {
    int n = 0;
    std::vector<char> v;
    BoolMatrix() = default;
    explicit BoolMatrix(int n_) : n(n_), v(static_cast<std::size_t>(n_) * n_, 0) {}
    bool operator()(int a, int b) const { return v[static_cast<std::size_t>(a) * n + b] != 0; }
    char& set(int a, int b) { return v[static_cast<std::size_t>(a) * n + b]; }
};

BoolMatrix intermult_table(const PregroupTable& t);

// A finite group given by its Cayley table; element 0 is the identity and
// names[k-1] names element k.
struct FiniteFactor {
    std::vector<std::string> names;
    std::vector<std::vector<int>> table;
};

FiniteFactor cyclic_factor(int m, std::vector<std::string> names);

struct FreeGenerator {
    std::string name;
    std::string inverse_name;  // unused when involution
    bool involution = false;
};

struct FreeProductSpec {
    std::vector<FiniteFactor> factors;
    std::vector<FreeGenerator> free;
};

// Throws std::invalid_argument when a factor is not a group or names clash.
PregroupTable construct_pregroup(const FreeProductSpec& spec);

std::string word_to_string(const PregroupTable& t, const Word& w, const std::string& sep = "");

} // namespace rsym
