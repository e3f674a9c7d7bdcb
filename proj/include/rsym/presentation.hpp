#pragma once

#include "rsym/pregroup.hpp"

#include <string>
#include <utility>
#include <vector>

namespace rsym {

struct PregroupPresentation {
    PregroupTable table;
    std::vector<Word> relators;
    std::vector<Word> vp;
    int r = 0;                  // longest relator in V_P and the relator list
    std::vector<char> rletter;  // per element: occurs in some relator or its inverse
    BoolMatrix intermult;

    // Derives vp, r, rletter and the intermult table.
    static PregroupPresentation make(PregroupTable t, std::vector<Word> rels);

    bool is_rletter(Elem e) const { return rletter[e] != 0; }
};

std::vector<Word> build_vp(const PregroupTable& t);

struct InterleaveTable {
    int n = 0;
    std::vector<std::vector<Elem>> sets;
    const std::vector<Elem>& operator()(Elem a, Elem b) const { return sets[static_cast<std::size_t>(a) * n + b]; }
};

InterleaveTable interleave_table(const PregroupTable& t);

bool check_untwisted(const PregroupPresentation& p);

// R = w^k with k maximal.
std::pair<Word, int> power_decomposition(const Word& r);

// Smallest rotation of r or of its inverse; equal keys mean the relators
// define the same cyclic relator up to inversion.
Word cyclic_class_key(const PregroupTable& t, const Word& r);

enum class PreprocessStatus { Ok, NoRelators, Degenerate };

struct PreprocessResult {
    PreprocessStatus status = PreprocessStatus::Ok;
    std::string reason;
    FreeProductSpec spec;  // final constructor (free-product input only)
    PregroupPresentation pres;
    std::vector<std::string> log;
    std::vector<Word> letter_image;  // element of the input table -> word over pres.table
};

// Rewrites a word over the input table into the final table.
Word translate_word(const PreprocessResult& r, const Word& w);

// Relators are words over construct_pregroup(spec). Generators may be
// eliminated or made self-inverse, so the returned table can differ.
PreprocessResult preprocess(FreeProductSpec spec, std::vector<Word> relators);

// Explicit tables cannot lose generators: only cyclic reduction and the
// common-prefix shortening are applied.
PreprocessResult preprocess_table(PregroupTable t, std::vector<Word> relators);

} // namespace rsym
