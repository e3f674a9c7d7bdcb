#include "rsym/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace rsym {

namespace {

using nlohmann::json;

struct WordParser {
    const PregroupTable& t;
    const std::string& s;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError(msg + " at column " + std::to_string(pos + 1) + " of \"" + s + "\"");
    }
    void skip() {
        while (pos < s.size() && (std::isspace(static_cast<unsigned char>(s[pos])) || s[pos] == '*' || s[pos] == '.')) ++pos;
    }
    long exponent() {
        skip();
        if (pos >= s.size() || s[pos] != '^') return 1;
        ++pos;
        skip();
        bool neg = false;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = s[pos++] == '-';
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) fail("expected an exponent");
        if (pos - start > 6) fail("exponent too large");
        long e = std::stol(s.substr(start, pos - start));
        return neg ? -e : e;
    }
    Word atom() {
        if (s[pos] == '(') {
            ++pos;
            Word w = seq();
            skip();
            if (pos >= s.size() || s[pos] != ')') fail("missing ')'");
            ++pos;
            return w;
        }
        // longest element name
        std::size_t best = 0;
        Elem be = kUndef;
        for (Elem e = 0; e < t.size(); ++e) {
            const std::string& nm = t.name(e);
            if (nm.size() > best && s.compare(pos, nm.size(), nm) == 0) {
                best = nm.size();
                be = e;
            }
        }
        if (be != kUndef) {
            pos += best;
            return be == kIdentity ? Word{} : Word{be};
        }
        const char c = s[pos];
        if (std::isupper(static_cast<unsigned char>(c))) {
            std::string low(1, static_cast<char>(std::tolower(c)));
            if (auto e = t.find(low); e && *e != kIdentity) {
                ++pos;
                return {t.sigma(*e)};
            }
        }
        std::size_t end = pos;
        while (end < s.size() && std::isalnum(static_cast<unsigned char>(s[end]))) ++end;
        std::string tok = s.substr(pos, std::max<std::size_t>(1, end - pos));
        fail("unknown generator \"" + tok + "\"");
    }
    Word seq() {
        Word out;
        for (;;) {
            skip();
            if (pos >= s.size() || s[pos] == ')') return out;
            Word a = atom();
            long e = exponent();
            Word piece = e < 0 ? inverse_word(t, a) : a;
            if (piece.size() * static_cast<std::size_t>(std::labs(e)) > 10'000'000) fail("word too long");
            for (long i = 0; i < std::labs(e); ++i) out.insert(out.end(), piece.begin(), piece.end());
        }
    }
};

int line_of(const std::string& text, const std::string& needle) {
    if (text.empty()) return 0;
    std::size_t at = text.find("\"" + needle + "\"");
    if (at == std::string::npos) return 0;
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(at), '\n'));
}

std::vector<std::string> string_list(const json& j, const std::string& what) {
    if (!j.is_array()) throw InputError(what + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& x : j) {
        if (!x.is_string()) throw InputError(what + " must be an array of strings");
        out.push_back(x.get<std::string>());
    }
    return out;
}

FreeProductSpec parse_free_product(const json& j) {
    FreeProductSpec spec;
    if (j.contains("factors")) {
        if (!j["factors"].is_array()) throw InputError("factors must be an array");
        for (const auto& f : j["factors"]) {
            std::vector<std::string> names = f.contains("names") ? string_list(f["names"], "factor names") : std::vector<std::string>{};
            if (f.contains("cyclic")) {
                if (!f["cyclic"].is_number_integer()) throw InputError("cyclic order must be an integer");
                const int m = f["cyclic"].get<int>();
                if (m < 2 || m > 1000) throw InputError("cyclic order out of range: " + std::to_string(m));
                try {
                    spec.factors.push_back(cyclic_factor(m, names));
                } catch (const std::invalid_argument& e) {
                    throw InputError(e.what());
                }
            } else if (f.contains("cayley")) {
                FiniteFactor ff;
                ff.names = names;
                try {
                    ff.table = f["cayley"].get<std::vector<std::vector<int>>>();
                } catch (const json::exception&) {
                    throw InputError("cayley table must be an array of integer rows");
                }
                spec.factors.push_back(std::move(ff));
            } else {
                throw InputError("factor needs \"cyclic\" or \"cayley\"");
            }
        }
    }
    if (j.contains("free")) {
        if (!j["free"].is_array()) throw InputError("free must be an array");
        for (const auto& g : j["free"]) {
            FreeGenerator fg;
            if (g.is_string()) {
                fg.name = g.get<std::string>();
            } else {
                if (!g.contains("name") || !g["name"].is_string()) throw InputError("free generator needs a name");
                fg.name = g["name"].get<std::string>();
                fg.involution = g.value("involution", false);
                if (g.contains("inverse")) fg.inverse_name = g["inverse"].get<std::string>();
            }
            if (!fg.involution && fg.inverse_name.empty()) {
                fg.inverse_name = fg.name;
                for (char& c : fg.inverse_name)
                    c = static_cast<char>(std::islower(static_cast<unsigned char>(c)) ? std::toupper(c) : std::tolower(c));
            }
            spec.free.push_back(std::move(fg));
        }
    }
    if (j.contains("free_rank")) {
        const int k = j["free_rank"].get<int>();
        if (k < 0 || k > 26) throw InputError("free_rank out of range");
        for (int i = 0; i < k; ++i) {
            const char c = static_cast<char>('a' + i);
            spec.free.push_back({std::string(1, c), std::string(1, static_cast<char>(std::toupper(c))), false});
        }
    }
    return spec;
}

PregroupTable parse_table(const json& j) {
    const auto elems = string_list(j.at("elements"), "table elements");
    const int n = static_cast<int>(elems.size());
    if (n < 1) throw InputError("table needs at least the identity");
    PregroupTable t;
    t.names = elems;
    auto idx = [&](const json& x, const std::string& where) -> Elem {
        if (x.is_null()) return kUndef;
        if (x.is_number_integer()) {
            int v = x.get<int>();
            if (v < 0 || v >= n) throw InputError(where + ": index out of range");
            return v;
        }
        if (x.is_string()) {
            auto e = t.find(x.get<std::string>());
            if (!e) throw InputError(where + ": unknown element \"" + x.get<std::string>() + "\"");
            return *e;
        }
        throw InputError(where + ": expected an element name, index or null");
    };
    const json& sig = j.at("sigma");
    if (!sig.is_array() || static_cast<int>(sig.size()) != n) throw InputError("sigma must list one inverse per element");
    for (int i = 0; i < n; ++i) {
        Elem e = idx(sig[i], "sigma[" + std::to_string(i) + "]");
        if (e == kUndef) throw InputError("sigma entries cannot be null");
        t.sig.push_back(e);
    }
    const json& mul = j.at("mult");
    if (!mul.is_array() || static_cast<int>(mul.size()) != n) throw InputError("mult must have one row per element");
    for (int a = 0; a < n; ++a) {
        if (!mul[a].is_array() || static_cast<int>(mul[a].size()) != n) throw InputError("mult row " + std::to_string(a) + " has the wrong length");
        for (int b = 0; b < n; ++b) t.mul.push_back(idx(mul[a][b], "mult[" + std::to_string(a) + "][" + std::to_string(b) + "]"));
    }
    std::vector<std::string> sorted = elems;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InputError("duplicate element names");
    return t;
}

} // namespace

Word parse_word(const PregroupTable& t, const std::string& s) {
    WordParser p{t, s};
    Word w = p.seq();
    p.skip();
    if (p.pos < s.size()) p.fail("unexpected ')'");
    return w;
}

LoadedPresentation load_presentation_text(const std::string& text, const std::string& source) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(source + ": JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("pregroup")) throw InputError(source + ": missing \"pregroup\"");
    LoadedPresentation lp;
    lp.source = source;
    const json& pg = j["pregroup"];
    bool from_spec = false;
    FreeProductSpec spec;
    try {
        if (pg.contains("free_product")) {
            spec = parse_free_product(pg["free_product"]);
            try {
                lp.input_table = construct_pregroup(spec);
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
            from_spec = true;
        } else if (pg.contains("table")) {
            lp.input_table = parse_table(pg["table"]);
            AxiomReport rep = validate_axioms(lp.input_table, 8);
            if (!rep.ok()) throw InputError("pregroup table fails the axioms: " + rep.describe(lp.input_table));
        } else {
            throw InputError("\"pregroup\" needs \"free_product\" or \"table\"");
        }
    } catch (const InputError& e) {
        throw InputError(source + ": " + e.what());
    } catch (const json::exception& e) {
        throw InputError(source + ": malformed pregroup: " + e.what());
    }

    if (j.contains("generators")) {
        for (const auto& g : string_list(j["generators"], "generators"))
            if (!lp.input_table.find(g)) throw InputError(source + ": generator \"" + g + "\" is not an element of the pregroup");
    }
    if (j.contains("relators")) {
        lp.relator_text = string_list(j["relators"], "relators");
        for (std::size_t i = 0; i < lp.relator_text.size(); ++i) {
            try {
                lp.input_relators.push_back(parse_word(lp.input_table, lp.relator_text[i]));
            } catch (const InputError& e) {
                const int line = line_of(text, lp.relator_text[i]);
                throw InputError(source + ":" + (line ? std::to_string(line) + ": " : " ") + "relator " + std::to_string(i + 1) + ": " + e.what());
            }
        }
    }
    lp.pre = from_spec ? preprocess(spec, lp.input_relators) : preprocess_table(lp.input_table, lp.input_relators);
    if (lp.pre.status == PreprocessStatus::Ok) lp.untwisted = check_untwisted(lp.pre.pres);
    return lp;
}

LoadedPresentation load_presentation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_presentation_text(ss.str(), path);
}

} // namespace rsym
