#pragma once
// Independent reference implementations used to cross-check the library.

#include "rsym/pregroup.hpp"
#include "rsym/rational.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using rsym::Elem;
using rsym::kIdentity;
using rsym::kUndef;
using rsym::PregroupTable;
using rsym::Word;

inline bool D(const PregroupTable& t, Elem a, Elem b) { return t.mul[a * t.size() + b] != kUndef; }
inline Elem M(const PregroupTable& t, Elem a, Elem b) { return t.mul[a * t.size() + b]; }

// Literal reading of the axioms over all tuples.
inline bool axioms_hold(const PregroupTable& t) {
    const int n = t.size();
    auto s = [&](Elem p) { return t.sig[p]; };
    for (int p = 0; p < n; ++p)
        if (s(s(p)) != p) return false;
    if (s(0) != 0) return false;
    for (int x = 0; x < n; ++x) {
        if (!D(t, 0, x) || !D(t, x, 0) || M(t, 0, x) != x || M(t, x, 0) != x) return false;
        if (!D(t, x, s(x)) || !D(t, s(x), x) || M(t, x, s(x)) != 0 || M(t, s(x), x) != 0) return false;
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (!D(t, x, y)) continue;
            if (!D(t, s(y), s(x)) || M(t, s(y), s(x)) != s(M(t, x, y))) return false;
            if (M(t, x, y) == 0 && y != s(x)) return false;
        }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                if (!D(t, x, y) || !D(t, y, z)) continue;
                bool l = D(t, M(t, x, y), z), r = D(t, x, M(t, y, z));
                if (l != r) return false;
                if (l && M(t, M(t, x, y), z) != M(t, x, M(t, y, z))) return false;
                for (int u = 0; u < n; ++u)
                    if (D(t, z, u) && !D(t, M(t, x, y), z) && !D(t, M(t, y, z), u)) return false;
            }
    return true;
}

// Every word reachable from w by inserting or deleting x sigma(x), or
// splitting / merging a defined product, restricted to length <= cap.
// Used as a closure oracle on tiny words.
inline std::set<Word> rewrite_closure(const PregroupTable& t, const Word& w, std::size_t cap) {
    std::set<Word> seen{w};
    std::deque<Word> q{w};
    const int n = t.size();
    while (!q.empty()) {
        Word u = q.front();
        q.pop_front();
        auto push = [&](Word v) {
            if (v.size() <= cap && seen.insert(v).second) q.push_back(std::move(v));
        };
        for (std::size_t i = 0; i + 1 < u.size(); ++i) {
            Elem p = M(t, u[i], u[i + 1]);
            if (p == kUndef) continue;
            Word v(u.begin(), u.begin() + static_cast<long>(i));
            if (p != kIdentity) v.push_back(p);
            v.insert(v.end(), u.begin() + static_cast<long>(i) + 2, u.end());
            push(v);
        }
        for (std::size_t i = 0; i < u.size(); ++i)
            for (int a = 1; a < n; ++a)
                for (int b = 1; b < n; ++b)
                    if (M(t, a, b) == u[i]) {
                        Word v = u;
                        v[i] = a;
                        v.insert(v.begin() + static_cast<long>(i) + 1, b);
                        push(v);
                    }
    }
    return seen;
}

inline bool intermults(const PregroupTable& t, Elem a, Elem b) {
    if (b == t.sig[a]) return false;
    if (D(t, a, b)) return true;
    for (int x = 1; x < t.size(); ++x)
        if (D(t, a, x) && D(t, t.sig[x], b)) return true;
    return false;
}

inline Word rotate(const Word& w, std::size_t k) {
    Word r(w.begin() + static_cast<long>(k), w.end());
    r.insert(r.end(), w.begin(), w.begin() + static_cast<long>(k));
    return r;
}

inline bool has_adjacent_defined(const PregroupTable& t, const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (D(t, w[i], w[i + 1])) return true;
    return false;
}

// Rotations with all cyclic partial sums >= 0 (1-based).
inline std::vector<int> gusu_starts(const std::vector<rsym::Rational>& s) {
    std::vector<int> out;
    const std::size_t n = s.size();
    for (std::size_t j = 0; j < n; ++j) {
        rsym::Rational acc;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            acc += s[(j + i) % n];
            ok = acc >= 0;
        }
        if (ok) out.push_back(static_cast<int>(j) + 1);
    }
    return out;
}

// 2x2 matrices over F_7 modulo +-1.
struct PSL27 {
    int a = 1, b = 0, c = 0, d = 1;
    friend PSL27 operator*(const PSL27& x, const PSL27& y) {
        return {(x.a * y.a + x.b * y.c) % 7, (x.a * y.b + x.b * y.d) % 7, (x.c * y.a + x.d * y.c) % 7, (x.c * y.b + x.d * y.d) % 7};
    }
    bool is_identity() const { return (a == 1 && d == 1 && b == 0 && c == 0) || (a == 6 && d == 6 && b == 0 && c == 0); }
    bool operator==(const PSL27& o) const {
        auto neg = [](int v) { return (7 - v) % 7; };
        return (a == o.a && b == o.b && c == o.c && d == o.d) || (a == neg(o.a) && b == neg(o.b) && c == neg(o.c) && d == neg(o.d));
    }
};

inline PSL27 power(PSL27 m, int k) {
    PSL27 r;
    for (int i = 0; i < k; ++i) r = r * m;
    return r;
}

} // namespace oracle
