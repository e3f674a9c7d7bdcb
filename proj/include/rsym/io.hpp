#pragma once

#include "rsym/presentation.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace rsym {

// Bad user input: parse errors, unknown generators, axiom failures.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Words are generator names, concatenated or space separated, with
// parenthesised groups and integer powers: "x y x Y", "(xy)^7", "a^-1 b".
// An upper-case letter whose lower-case form names a generator denotes
// its inverse when it is not itself a name. "1" is the identity.
Word parse_word(const PregroupTable& t, const std::string& s);

struct LoadedPresentation {
    std::string source;
    PregroupTable input_table;
    std::vector<std::string> relator_text;
    std::vector<Word> input_relators;
    PreprocessResult pre;
    bool untwisted = false;
};

// JSON document with "pregroup" ({"free_product": ...} or {"table": ...}),
// optional "generators" and "relators".
LoadedPresentation load_presentation_text(const std::string& text, const std::string& source = "<input>");
LoadedPresentation load_presentation_file(const std::string& path);

} // namespace rsym
