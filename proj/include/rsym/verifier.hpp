#pragma once

#include "rsym/presentation.hpp"
#include "rsym/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace rsym {

struct UnsupportedInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Colour : std::uint8_t { G, R };

// A relator of R^± written as period^power.
struct CyclicRelator {
    Word word;
    int period = 0;
    int power = 1;
    bool in_r = false;  // member of the relator list itself, not only an inverse
    int source = -1;    // index into the presentation's relator list
    int inverse = -1;   // index of the stored relator holding R^-1
    int inv_offset = 0; // stored[inverse][t] == sigma(word[n-1-((t+off)%n)])
    int size() const { return static_cast<int>(word.size()); }
    Elem at(long i) const {
        long n = static_cast<long>(word.size());
        return word[static_cast<std::size_t>(((i % n) + n) % n)];
    }
};

struct Location {
    int rel = -1;
    int pos = 0;  // 0 <= pos < period; letters (word[pos-1], word[pos])
    friend bool operator==(const Location&, const Location&) = default;
    friend auto operator<=>(const Location&, const Location&) = default;
};

struct Place {
    Location loc;
    Elem c = kUndef;  // kUndef for terminal places
    Colour colour = Colour::G;
    bool terminal = false;
    std::vector<Location> inst;  // green places: instantiating locations
};

struct OneStepEntry {
    int q = -1;  // place id
    int l = 0;
    Rational chi;
    bool blob_end = false;  // terminal entry whose last edge meets a boundary red blob
};

// Vertex-graph node (a, b, C).
struct GVertex {
    Elem a, b;
    Colour colour;
};

class VertexGraph {
public:
    static constexpr std::uint8_t kInf = 255;

    std::vector<GVertex> verts;
    std::vector<std::vector<int>> out;
    std::vector<std::vector<Location>> locs;  // per green vertex

    int id(Elem a, Elem b, Colour c) const;
    bool has_edge(int u, int v) const;
    int weight(int u) const { return verts[u].colour == Colour::G ? 1 : 0; }
    // Least weight of a path u -> v with at least one edge; kInf if none.
    std::uint8_t w(int u, int v) const { return dist_[static_cast<std::size_t>(u) * verts.size() + v]; }

    void add_vertex(Elem a, Elem b, Colour c, int n_elems);
    void finish();  // sorts adjacency and computes path weights

private:
    std::vector<int> index_;  // (a*n+b)*2+colour -> id
    int n_ = 0;
    std::vector<std::uint8_t> dist_;
    friend std::vector<std::uint8_t> min_path_weights(const VertexGraph&);
};

std::vector<std::uint8_t> min_path_weights(const VertexGraph& g);

struct BlobWordList {
    std::vector<Word> words;  // one representative per cyclic word
    std::map<std::tuple<Elem, Elem, Elem>, Rational> best;
};

// Everything the per-place searches need; immutable once built.
struct VerifierTables {
    PregroupPresentation pres;
    std::vector<CyclicRelator> rels;
    std::vector<Location> locations;
    std::vector<Place> places;
    std::map<Location, std::vector<int>> places_at;  // non-terminal places per location
    VertexGraph graph;
    BlobWordList blobs;
    std::vector<std::vector<OneStepEntry>> onestep;

    const CyclicRelator& rel(const Location& l) const { return rels[l.rel]; }
    Elem loc_a(const Location& l) const { return rels[l.rel].at(l.pos - 1); }
    Elem loc_b(const Location& l) const { return rels[l.rel].at(l.pos); }
    Location mirror(const Location& l) const;
    Location shift(const Location& l, long by) const;
    const std::vector<int>& places_at_loc(const Location& l) const;
    std::string place_str(int p) const;
};

std::vector<CyclicRelator> build_cyclic_relators(const PregroupPresentation& p);
std::vector<Location> enumerate_locations(const std::vector<CyclicRelator>& rels);
void enumerate_places(VerifierTables& t);
void build_vertex_graph(VerifierTables& t);

Rational vertex_bound(const VertexGraph& g, int nu1, int nu, int nu2);
BlobWordList blob_word_list(const PregroupPresentation& p);
Rational blob_bound(const PregroupPresentation& p, const BlobWordList& bl, Elem a, Elem b, Elem c);

std::vector<OneStepEntry> compute_one_step(const VerifierTables& t, int place);

// Adds (Q, l, chi) keeping the largest chi per (Q, l).
void include_step(std::vector<OneStepEntry>& list, const OneStepEntry& e);

// Consolidated edges leaving a green place: fn(l, nu1, nu, end) for each
// length l with the G-edge nu1 -> nu present, end being the location at
// distance l along the relator.
void walk_green(const VerifierTables& t, int place, const std::function<void(int, int, int, const Location&)>& fn);

// Throws UnsupportedInput when the untwisted gate fails or a relator is
// shorter than 3.
VerifierTables build_tables(const PregroupPresentation& p);

struct TrailStep {
    int place;
    int l;  // cumulative distance
    Rational chi;
    Rational psi;
};

struct VerifyResult {
    bool ok = true;
    int relator = -1;  // index into the presentation's relator list
    int start = -1;    // place id
    std::vector<TrailStep> trail;
    struct Entry {
        int place, l, k;
        Rational psi;
    };
    std::vector<Entry> list;
};

int zeta(const Rational& eps, int r);
VerifyResult verify_at_place(const VerifierTables& t, int start, const Rational& eps);
VerifyResult rsym_verify(const VerifierTables& t, const Rational& eps);
VerifyResult rsym_verify(const PregroupPresentation& p, const Rational& eps);

// 1-based rotation start with all cyclic partial sums >= 0, or none when the
// total is negative.
std::optional<int> gusu_start_index(const std::vector<Rational>& seq);

} // namespace rsym
