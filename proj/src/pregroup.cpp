#include "rsym/pregroup.hpp"

#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rsym {

std::optional<Elem> PregroupTable::find(const std::string& nm) const {
    for (int i = 0; i < size(); ++i)
        if (names[i] == nm) return i;
    return std::nullopt;
}

int PregroupTable::domain_size() const {
    int c = 0;
    for (Elem m : mul) c += m != kUndef;
    return c;
}

std::string AxiomReport::describe(const PregroupTable& t) const {
    if (!structural_error.empty()) return "malformed table: " + structural_error;
    if (violations.empty()) return "ok";
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i].axiom << " violated at (";
        for (std::size_t k = 0; k < violations[i].witness.size(); ++k) {
            Elem e = violations[i].witness[k];
            os << (k ? "," : "") << (e >= 0 && e < t.size() ? t.name(e) : std::to_string(e));
        }
        os << ")";
    }
    return os.str();
}

namespace {

std::string structural_check(const PregroupTable& t) {
    int n = t.size();
    if (n == 0) return "no elements";
    if (static_cast<int>(t.sig.size()) != n) return "sigma has wrong length";
    if (t.mul.size() != static_cast<std::size_t>(n) * n) return "multiplication table has wrong size";
    std::vector<char> hit(n, 0);
    for (int p = 0; p < n; ++p) {
        Elem s = t.sig[p];
        if (s < 0 || s >= n) return "sigma maps " + t.names[p] + " outside the carrier";
        if (hit[s]) return "sigma is not a permutation";
        hit[s] = 1;
    }
    for (Elem m : t.mul)
        if (m < kUndef || m >= n) return "product outside the carrier";
    return {};
}

} // namespace

AxiomReport validate_axioms(const PregroupTable& t, std::size_t max_violations) {
    AxiomReport rep;
    rep.structural_error = structural_check(t);
    if (!rep.structural_error.empty()) return rep;
    const int n = t.size();
    auto full = [&] { return max_violations && rep.violations.size() >= max_violations; };
    auto add = [&](const char* ax, std::vector<Elem> w) {
        if (!full()) rep.violations.push_back({ax, std::move(w)});
    };

    if (t.sigma(kIdentity) != kIdentity) add("sigma-identity", {kIdentity});
    for (Elem p = 0; p < n; ++p)
        if (t.sigma(t.sigma(p)) != p) add("sigma-involution", {p});

    for (Elem p = 0; p < n; ++p)
        if (t.mult(kIdentity, p) != p || t.mult(p, kIdentity) != p) add("P1", {p});

    for (Elem p = 0; p < n; ++p)
        if (t.mult(p, t.sigma(p)) != kIdentity || t.mult(t.sigma(p), p) != kIdentity) add("P2", {p});

    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            Elem xy = t.mult(x, y);
            if (xy == kUndef) continue;
            if (t.mult(t.sigma(y), t.sigma(x)) != t.sigma(xy)) add("P3", {x, y});
        }

    for (Elem x = 0; x < n && !full(); ++x)
        for (Elem y = 0; y < n; ++y) {
            Elem xy = t.mult(x, y);
            if (xy == kUndef) continue;
            for (Elem z = 0; z < n; ++z) {
                Elem yz = t.mult(y, z);
                if (yz == kUndef) continue;
                Elem l = t.mult(xy, z), r = t.mult(x, yz);
                if (l != r) add("P4", {x, y, z});
            }
        }

    for (Elem w = 0; w < n && !full(); ++w)
        for (Elem x = 0; x < n; ++x) {
            Elem wx = t.mult(w, x);
            if (wx == kUndef) continue;
            for (Elem y = 0; y < n; ++y) {
                Elem xy = t.mult(x, y);
                if (xy == kUndef) continue;
                for (Elem z = 0; z < n; ++z) {
                    if (!t.defined(y, z)) continue;
                    if (!t.defined(wx, y) && !t.defined(xy, z)) add("P5", {w, x, y, z});
                }
            }
        }

    for (Elem p = 0; p < n; ++p)
        for (Elem q = 0; q < n; ++q)
            if (t.mult(p, q) == kIdentity && q != t.sigma(p)) add("inverse-uniqueness", {p, q});

    return rep;
}

Word p_reduce(const PregroupTable& t, const Word& w) {
    Word st;
    st.reserve(w.size());
    for (Elem x : w) {
        if (x < 0 || x >= t.size()) throw std::invalid_argument("letter not in pregroup");
        if (x == kIdentity) continue;
        while (!st.empty() && x != kIdentity) {
            Elem p = t.mult(st.back(), x);
            if (p == kUndef) break;
            st.pop_back();
            x = p;
        }
        if (x != kIdentity) st.push_back(x);
    }
    return st;
}

Word cyclically_p_reduce(const PregroupTable& t, const Word& w) {
    Word u = p_reduce(t, w);
    std::size_t lo = 0, hi = u.size();
    while (hi - lo >= 2) {
        Elem p = t.mult(u[hi - 1], u[lo]);
        if (p == kUndef) break;
        --hi;
        if (p == kIdentity) {
            ++lo;
            continue;
        }
        u[lo] = p;
        // the merged first letter may now combine with its right neighbour
        while (hi - lo >= 2) {
            Elem q = t.mult(u[lo], u[lo + 1]);
            if (q == kUndef) break;
            ++lo;
            if (q == kIdentity) {
                ++lo;
                break;
            }
            u[lo] = q;
        }
    }
    return Word(u.begin() + static_cast<std::ptrdiff_t>(lo), u.begin() + static_cast<std::ptrdiff_t>(hi));
}

bool is_p_reduced(const PregroupTable& t, const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (t.defined(w[i], w[i + 1])) return false;
    for (Elem x : w)
        if (x == kIdentity) return false;
    return true;
}

bool is_cyclically_p_reduced(const PregroupTable& t, const Word& w) {
    if (!is_p_reduced(t, w)) return false;
    return w.size() < 2 || !t.defined(w.back(), w.front());
}

Word inverse_word(const PregroupTable& t, const Word& w) {
    Word r(w.rbegin(), w.rend());
    for (Elem& x : r) x = t.sigma(x);
    return r;
}

BoolMatrix intermult_table(const PregroupTable& t) {
    const int n = t.size();
    BoolMatrix m(n);
    for (Elem a = 1; a < n; ++a)
        for (Elem b = 1; b < n; ++b) {
            if (b == t.sigma(a)) continue;
            bool ok = t.defined(a, b);
            for (Elem x = 1; x < n && !ok; ++x) ok = t.defined(a, x) && t.defined(t.sigma(x), b);
            m.set(a, b) = ok;
        }
    return m;
}

FiniteFactor cyclic_factor(int m, std::vector<std::string> names) {
    if (m < 2) throw std::invalid_argument("cyclic factor order must be at least 2");
    FiniteFactor f;
    if (names.size() == 1 && m > 2) {
        // a single generator name g: g, g2, ..., g{m-2}, then G for g^-1
        std::string g = names[0];
        std::string inv = g;
        for (char& c : inv) c = static_cast<char>(std::islower(static_cast<unsigned char>(c)) ? std::toupper(c) : std::tolower(c));
        for (int k = 1; k < m; ++k) names.push_back(k == 1 ? g : (k == m - 1 ? inv : g + std::to_string(k)));
        names.erase(names.begin());
    }
    if (static_cast<int>(names.size()) != m - 1) throw std::invalid_argument("cyclic factor needs m-1 element names");
    f.names = std::move(names);
    f.table.assign(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) f.table[a][b] = (a + b) % m;
    return f;
}

namespace {

void check_group(const FiniteFactor& f) {
    const int k = static_cast<int>(f.table.size());
    if (k < 2 || static_cast<int>(f.names.size()) != k - 1) throw std::invalid_argument("factor table size does not match its names");
    for (const auto& row : f.table) {
        if (static_cast<int>(row.size()) != k) throw std::invalid_argument("factor table is not square");
        for (int v : row)
            if (v < 0 || v >= k) throw std::invalid_argument("factor table entry out of range");
    }
    for (int a = 0; a < k; ++a)
        if (f.table[0][a] != a || f.table[a][0] != a) throw std::invalid_argument("factor element 0 is not an identity");
    for (int a = 0; a < k; ++a) {
        bool inv = false;
        for (int b = 0; b < k; ++b) inv |= f.table[a][b] == 0 && f.table[b][a] == 0;
        if (!inv) throw std::invalid_argument("factor element has no inverse");
    }
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            for (int c = 0; c < k; ++c)
                if (f.table[f.table[a][b]][c] != f.table[a][f.table[b][c]]) throw std::invalid_argument("factor table is not associative");
}

} // namespace

PregroupTable construct_pregroup(const FreeProductSpec& spec) {
    PregroupTable t;
    t.names.push_back("1");
    std::vector<std::pair<int, std::vector<Elem>>> factor_elems;  // factor index -> element ids (0 stays identity)
    for (const auto& f : spec.factors) {
        check_group(f);
        std::vector<Elem> ids{kIdentity};
        for (const auto& nm : f.names) {
            ids.push_back(static_cast<Elem>(t.names.size()));
            t.names.push_back(nm);
        }
        factor_elems.push_back({0, std::move(ids)});
    }
    std::vector<std::pair<Elem, Elem>> free_pairs;
    for (const auto& g : spec.free) {
        Elem a = static_cast<Elem>(t.names.size());
        t.names.push_back(g.name);
        Elem b = a;
        if (!g.involution) {
            b = static_cast<Elem>(t.names.size());
            t.names.push_back(g.inverse_name);
        }
        free_pairs.push_back({a, b});
    }
    std::set<std::string> seen;
    for (const auto& nm : t.names) {
        if (nm.empty()) throw std::invalid_argument("empty element name");
        if (!seen.insert(nm).second) throw std::invalid_argument("duplicate element name '" + nm + "'");
    }

    const int n = t.size();
    t.sig.assign(n, kIdentity);
    t.mul.assign(static_cast<std::size_t>(n) * n, kUndef);
    for (Elem p = 0; p < n; ++p) {
        t.at(kIdentity, p) = p;
        t.at(p, kIdentity) = p;
    }
    for (std::size_t fi = 0; fi < spec.factors.size(); ++fi) {
        const auto& tab = spec.factors[fi].table;
        const auto& ids = factor_elems[fi].second;
        const int k = static_cast<int>(tab.size());
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                t.at(ids[a], ids[b]) = ids[tab[a][b]];
                if (tab[a][b] == 0) t.sig[ids[a]] = ids[b];
            }
    }
    for (auto [a, b] : free_pairs) {
        t.sig[a] = b;
        t.sig[b] = a;
        t.at(a, b) = kIdentity;
        t.at(b, a) = kIdentity;
    }
    return t;
}

std::string word_to_string(const PregroupTable& t, const Word& w, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += sep;
        s += t.name(w[i]);
    }
    return s;
}

} // namespace rsym
