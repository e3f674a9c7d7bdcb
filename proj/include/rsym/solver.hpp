#pragma once

#include "rsym/verifier.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rsym {

enum class SolverMode { Plain, TrivInt };

// Verifier tables extended by one terminal place per location on a relator
// of the list, and one-step entries that may end at them.
struct SolverTables {
    VerifierTables t;
    std::map<Location, int> terminal;              // location -> terminal place id
    std::vector<std::vector<OneStepEntry>> steps;  // OneStep plus terminal entries
};

// Maximum curvature a boundary red blob meeting f at an edge with letters
// (b^sigma, c) on the blob can give f, together with the boundary vertex.
Rational boundary_blob_bound(const PregroupTable& t, Elem sb, Elem c);

SolverTables build_solver_tables(const VerifierTables& t);
std::vector<OneStepEntry> terminal_one_step(const SolverTables& s, int place);

// Every intermult pair lies in the domain of the multiplication.
bool trivint_hypothesis(const PregroupPresentation& p);

struct SolverVerifyResult {
    bool ok = true;
    int start = -1;
    std::vector<TrailStep> trail;
    struct Entry {
        int place, l, t;
        Rational psi;
        bool start_blob;
    };
    std::vector<Entry> list;
};

SolverVerifyResult verify_solver_at_place(const SolverTables& s, int start, SolverMode mode);
// Throws UnsupportedInput in TrivInt mode when the hypothesis fails.
SolverVerifyResult verify_solver(const SolverTables& s, SolverMode mode);

struct RewriteRule {
    Word u, v;
    int need = 0;  // extra P-reductions the splice must produce (TrivInt additions)
};

class RewriteList {
public:
    std::vector<RewriteRule> rules;
    int max_u = 0;

    void add(RewriteRule r);
    // Trie over u: child(node, letter) or -1; node 0 is the root.
    int child(int node, Elem e) const;
    const std::vector<int>& rules_at(int node) const { return nodes_[node].rules; }
    const std::vector<int>& lengths() const { return lengths_; }

private:
    struct Node {
        std::map<Elem, int> next;
        std::vector<int> rules;
    };
    std::vector<Node> nodes_{Node{}};
    std::vector<int> lengths_;
    std::map<std::pair<Word, Word>, int> seen_;
};

RewriteList build_rewrite_list(const VerifierTables& t, SolverMode mode);

struct SolveStats {
    std::uint64_t letter_ops = 0;
    int rewrites = 0;
    std::size_t input_length = 0;
};

class RSymSolver {
public:
    RSymSolver(const PregroupPresentation& p, RewriteList list);
    bool solve(const Word& w, SolveStats* stats = nullptr) const;
    const RewriteList& list() const { return list_; }

private:
    PregroupPresentation pres_;
    RewriteList list_;
    InterleaveTable inter_;
};

struct DehnBoundReport {
    Rational eps;
    int r = 0;         // longest relator of the list
    int r_full = 0;    // longest relator of V_P and the list
    int r_i = 0;
    std::string part;  // "i", "ii" or "iii"
    Rational f_slope, f_const;    // part (i): f(n) = f_slope n + f_const
    Rational pd_slope, pd_const;  // applicable part
    std::optional<int> solver_pd_slope;  // 1 plain, 3 trivint
    Rational d_slope, d_const;    // D(n) <= r_I PD(n) + n/2 using the best PD bound
    Rational lambda0, lambda, gamma;
};

// pres: the presentation that passed rsym_verify with eps.
DehnBoundReport dehn_bounds(const PregroupPresentation& pres, const Rational& eps, std::optional<SolverMode> solver);

} // namespace rsym
