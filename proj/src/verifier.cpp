#include "rsym/verifier.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <sstream>

namespace rsym {

// ---- relators and locations ------------------------------------------------

std::vector<CyclicRelator> build_cyclic_relators(const PregroupPresentation& p) {
    const PregroupTable& t = p.table;
    std::vector<CyclicRelator> out;
    std::set<Word> seen;
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
        const Word& r = p.relators[i];
        if (!seen.insert(cyclic_class_key(t, r)).second) continue;
        CyclicRelator cr;
        cr.word = r;
        auto [w, k] = power_decomposition(r);
        cr.period = static_cast<int>(w.size());
        cr.power = k;
        cr.in_r = true;
        cr.source = static_cast<int>(i);
        const int idx = static_cast<int>(out.size());
        out.push_back(cr);

        Word inv = inverse_word(t, r);
        const std::size_t n = r.size();
        int self_off = -1;
        for (std::size_t off = 0; off < n && self_off < 0; ++off) {
            bool eq = true;
            for (std::size_t s = 0; s < n && eq; ++s) eq = r[s] == inv[(s + off) % n];
            if (eq) self_off = static_cast<int>(off);
        }
        if (self_off >= 0) {
            out[idx].inverse = idx;
            out[idx].inv_offset = self_off;
        } else {
            CyclicRelator ci = cr;
            ci.word = inv;
            ci.in_r = false;
            ci.inverse = idx;
            ci.inv_offset = 0;
            out[idx].inverse = static_cast<int>(out.size());
            out[idx].inv_offset = 0;
            out.push_back(ci);
        }
    }
    return out;
}

std::vector<Location> enumerate_locations(const std::vector<CyclicRelator>& rels) {
    std::vector<Location> out;
    for (int r = 0; r < static_cast<int>(rels.size()); ++r)
        for (int p = 0; p < rels[r].period; ++p) out.push_back({r, p});
    return out;
}

Location VerifierTables::mirror(const Location& l) const {
    const CyclicRelator& r = rels[l.rel];
    const int n = r.size();
    const CyclicRelator& s = rels[r.inverse];
    int tp = (n - l.pos) % n;
    int pos = ((tp - r.inv_offset) % n + n) % n;
    return {r.inverse, pos % s.period};
}

Location VerifierTables::shift(const Location& l, long by) const {
    const int per = rels[l.rel].period;
    return {l.rel, static_cast<int>(((l.pos + by) % per + per) % per)};
}

const std::vector<int>& VerifierTables::places_at_loc(const Location& l) const {
    static const std::vector<int> none;
    auto it = places_at.find(l);
    return it == places_at.end() ? none : it->second;
}

std::string VerifierTables::place_str(int p) const {
    const Place& pl = places[p];
    const PregroupTable& t = pres.table;
    std::ostringstream os;
    os << "(R" << pl.loc.rel << "(" << pl.loc.pos + 1 << "," << t.name(loc_a(pl.loc)) << "," << t.name(loc_b(pl.loc)) << "),";
    if (pl.terminal)
        os << "terminal";
    else
        os << t.name(pl.c);
    os << "," << (pl.colour == Colour::G ? "G" : "R") << ")";
    return os.str();
}

void enumerate_places(VerifierTables& t) {
    const PregroupTable& tab = t.pres.table;
    const int n = tab.size();
    std::map<std::pair<Elem, Elem>, std::vector<Location>> by_letters;
    for (const Location& l : t.locations) by_letters[{t.loc_a(l), t.loc_b(l)}].push_back(l);

    for (const Location& l : t.locations) {
        if (!t.rels[l.rel].in_r) continue;
        const Elem sb = tab.sigma(t.loc_b(l));
        const Location mir = t.mirror(l);
        for (Elem c = 1; c < n; ++c) {
            auto it = by_letters.find({sb, c});
            if (it != by_letters.end()) {
                Place p{l, c, Colour::G, false, {}};
                for (const Location& l2 : it->second)
                    if (l2 != mir) p.inst.push_back(l2);
                if (!p.inst.empty()) {
                    t.places_at[l].push_back(static_cast<int>(t.places.size()));
                    t.places.push_back(std::move(p));
                }
            }
            if (t.pres.intermult(sb, c)) {
                t.places_at[l].push_back(static_cast<int>(t.places.size()));
                t.places.push_back({l, c, Colour::R, false, {}});
            }
        }
    }
}

// ---- vertex graph ----------------------------------------------------------

int VertexGraph::id(Elem a, Elem b, Colour c) const {
    if (a < 0 || b < 0 || a >= n_ || b >= n_) return -1;
    return index_[(static_cast<std::size_t>(a) * n_ + b) * 2 + static_cast<int>(c)];
}

bool VertexGraph::has_edge(int u, int v) const {
    if (u < 0 || v < 0) return false;
    return std::binary_search(out[u].begin(), out[u].end(), v);
}

void VertexGraph::add_vertex(Elem a, Elem b, Colour c, int n_elems) {
    if (n_ == 0) {
        n_ = n_elems;
        index_.assign(static_cast<std::size_t>(n_) * n_ * 2, -1);
    }
    int& slot = index_[(static_cast<std::size_t>(a) * n_ + b) * 2 + static_cast<int>(c)];
    if (slot >= 0) return;
    slot = static_cast<int>(verts.size());
    verts.push_back({a, b, c});
    out.emplace_back();
    locs.emplace_back();
}

std::vector<std::uint8_t> min_path_weights(const VertexGraph& g) {
    const std::size_t V = g.verts.size();
    std::vector<std::uint8_t> res(V * V, VertexGraph::kInf);
    std::vector<int> dist(V);
    for (std::size_t s = 0; s < V; ++s) {
        std::fill(dist.begin(), dist.end(), std::numeric_limits<int>::max());
        std::deque<std::pair<int, int>> dq;
        const int ws = g.weight(static_cast<int>(s));
        for (int v : g.out[s])
            if (ws < dist[v]) {
                dist[v] = ws;
                if (ws == 0)
                    dq.push_front({v, ws});
                else
                    dq.push_back({v, ws});
            }
        while (!dq.empty()) {
            auto [u, d] = dq.front();
            dq.pop_front();
            if (d > dist[u]) continue;
            const int wu = g.weight(u);
            for (int v : g.out[u])
                if (d + wu < dist[v]) {
                    dist[v] = d + wu;
                    if (wu == 0)
                        dq.push_front({v, dist[v]});
                    else
                        dq.push_back({v, dist[v]});
                }
        }
        for (std::size_t v = 0; v < V; ++v)
            if (dist[v] != std::numeric_limits<int>::max()) res[s * V + v] = static_cast<std::uint8_t>(std::min(dist[v], 254));
    }
    return res;
}

void VertexGraph::finish() {
    for (auto& o : out) {
        std::sort(o.begin(), o.end());
        o.erase(std::unique(o.begin(), o.end()), o.end());
    }
    dist_ = min_path_weights(*this);
}

void build_vertex_graph(VerifierTables& t) {
    const PregroupTable& tab = t.pres.table;
    const int n = tab.size();
    VertexGraph& g = t.graph;
    g = VertexGraph{};
    for (const Location& l : t.locations) {
        g.add_vertex(t.loc_a(l), t.loc_b(l), Colour::G, n);
        g.locs[g.id(t.loc_a(l), t.loc_b(l), Colour::G)].push_back(l);
    }
    for (Elem a = 1; a < n; ++a)
        for (Elem b = 1; b < n; ++b)
            if (t.pres.intermult(a, b)) g.add_vertex(a, b, Colour::R, n);

    for (int u = 0; u < static_cast<int>(g.verts.size()); ++u) {
        const GVertex gu = g.verts[u];
        const Elem sb = tab.sigma(gu.b);
        for (Elem c = 1; c < n; ++c) {
            int vr = g.id(sb, c, Colour::R);
            int vg = g.id(sb, c, Colour::G);
            if (gu.colour == Colour::G) {
                if (vr >= 0) g.out[u].push_back(vr);
                if (vg >= 0) {
                    bool ok = false;
                    for (const Location& l1 : g.locs[u]) {
                        Location m = t.mirror(l1);
                        for (const Location& l2 : g.locs[vg])
                            if (l2 != m) {
                                ok = true;
                                break;
                            }
                        if (ok) break;
                    }
                    if (ok) g.out[u].push_back(vg);
                }
            } else if (vg >= 0) {
                g.out[u].push_back(vg);
            }
        }
    }
    g.finish();
}

Rational vertex_bound(const VertexGraph& g, int nu1, int nu, int nu2) {
    if (nu < 0 || g.verts[nu].colour != Colour::G || !g.has_edge(nu1, nu) || !g.has_edge(nu, nu2))
        throw std::logic_error("vertex_bound: not a path through a green vertex");
    const int w = g.w(nu2, nu1);
    const bool g1 = g.verts[nu1].colour == Colour::G, g2 = g.verts[nu2].colour == Colour::G;
    if (g1 && g2) {
        if (w == 1) return Rational(-1, 6);
        if (w == 2) return Rational(-1, 4);
        if (w == 3) return Rational(-3, 10);
        return Rational(-1, 3);
    }
    if (g1) {
        if (w == 0) return 0;
        if (w == 1) return Rational(-1, 6);
        return Rational(-1, 4);
    }
    if (g2) {
        if (w <= 1) return 0;
        if (w == 2) return Rational(-1, 6);
        return Rational(-1, 4);
    }
    return 0;
}

// ---- blobs -----------------------------------------------------------------

namespace {

Rational blob_table(int len, bool contact) {
    switch (len) {
    case 3: return contact ? Rational(-1, 4) : Rational(-1, 6);
    case 4: return contact ? Rational(-1, 3) : Rational(-1, 4);
    case 5: return Rational(-3, 10);
    default: return Rational(-1, 3);
    }
}

bool trivial(const PregroupTable& t, const Word& w) { return p_reduce(t, w).empty(); }

} // namespace

BlobWordList blob_word_list(const PregroupPresentation& p) {
    const PregroupTable& t = p.table;
    const int n = t.size();
    BlobWordList bl;
    std::set<Word> seen;
    Word w;

    auto accept = [&](const Word& cand) {
        const int len = static_cast<int>(cand.size());
        int non_r = 0;
        for (Elem e : cand) non_r += !p.is_rletter(e);
        if (non_r > 1 || (len > 4 && non_r > 0)) return;
        for (int i = 0; i < len; ++i)
            if (!p.intermult(cand[i], cand[(i + 1) % len])) return;
        if (!trivial(t, cand)) return;
        for (int s = 0; s < len; ++s)
            for (int k = 2; k < len; ++k) {
                Word sub;
                for (int m = 0; m < k; ++m) sub.push_back(cand[(s + m) % len]);
                if (trivial(t, sub)) return;
            }
        Word key = cand;
        Word cur = cand;
        for (int s = 1; s < len; ++s) {
            std::rotate(cur.begin(), cur.begin() + 1, cur.end());
            key = std::min(key, cur);
        }
        if (!seen.insert(key).second) return;
        bl.words.push_back(key);
        Rational v = blob_table(len, non_r > 0);
        for (int s = 0; s < len; ++s) {
            auto k3 = std::make_tuple(key[s], key[(s + 1) % len], key[(s + 2) % len]);
            auto it = bl.best.find(k3);
            if (it == bl.best.end() || it->second < v) bl.best[k3] = v;
        }
    };

    // Depth-first over prefixes of length len-1 whose consecutive letters
    // intermult; the closing letter is forced by the prefix product.
    std::function<void(int)> dfs = [&](int len) {
        if (static_cast<int>(w.size()) == len - 1) {
            Word red = p_reduce(t, w);
            if (red.size() != 1) return;
            Word cand = w;
            cand.push_back(t.sigma(red[0]));
            accept(cand);
            return;
        }
        for (Elem x = 1; x < n; ++x) {
            if (!w.empty() && !p.intermult(w.back(), x)) continue;
            w.push_back(x);
            dfs(len);
            w.pop_back();
        }
    };
    for (int len = 3; len <= 6; ++len) dfs(len);
    return bl;
}

Rational blob_bound(const PregroupPresentation& p, const BlobWordList& bl, Elem a, Elem b, Elem c) {
    if (!p.intermult(a, b) || !p.intermult(b, c)) throw std::logic_error("blob_bound: letters do not intermult");
    auto it = bl.best.find({a, b, c});
    if (it != bl.best.end()) return it->second;
    int non_r = !p.is_rletter(a) + !p.is_rletter(c);
    return non_r <= 1 ? Rational(-5, 14) : Rational(-1, 2);
}

// ---- one-step lists --------------------------------------------------------

void include_step(std::vector<OneStepEntry>& list, const OneStepEntry& e) {
    for (auto& x : list)
        if (x.q == e.q && x.l == e.l) {
            if (e.chi > x.chi) x = e;
            return;
        }
    list.push_back(e);
}

void walk_green(const VerifierTables& t, int place, const std::function<void(int, int, int, const Location&)>& fn) {
    const Place& P = t.places[place];
    const PregroupTable& tab = t.pres.table;
    const CyclicRelator& R = t.rel(P.loc);
    const int n = R.size();
    const long i = P.loc.pos;
    for (const Location& l2 : P.inst) {
        const CyclicRelator& R2 = t.rel(l2);
        const long k = l2.pos;
        const int maxl = std::min(n, R2.size()) - 1;
        for (int l = 1; l <= maxl; ++l) {
            if (R.at(i + l - 1) != tab.sigma(R2.at(k - l))) break;
            const Elem d = R.at(i + l - 1), e = R.at(i + l), y = R2.at(k - l - 1);
            const int nu1 = t.graph.id(y, tab.sigma(d), Colour::G);
            const int nu = t.graph.id(d, e, Colour::G);
            if (!t.graph.has_edge(nu1, nu)) continue;
            fn(l, nu1, nu, t.shift(P.loc, l));
        }
    }
}

namespace {

// The red edge leaving location `at` (letter b) into a blob whose next letter
// is c, followed by the vertex at the next location.
template <class F>
void red_tail(const VerifierTables& t, const Location& at, Elem c, F&& emit) {
    const PregroupTable& tab = t.pres.table;
    const Elem b = t.loc_b(at), sb = tab.sigma(b);
    const Location next = t.shift(at, 1);
    const Elem d = t.loc_b(next);
    const int nu = t.graph.id(b, d, Colour::G);
    for (int q : t.places_at_loc(next)) {
        const Place& Q = t.places[q];
        const int nu2 = t.graph.id(tab.sigma(d), Q.c, Q.colour);
        for (Elem y = 1; y < tab.size(); ++y) {
            if (!t.pres.intermult(y, sb)) continue;
            const int nu1 = t.graph.id(y, sb, Colour::R);
            if (!t.graph.has_edge(nu1, nu) || !t.graph.has_edge(nu, nu2)) continue;
            emit(q, blob_bound(t.pres, t.blobs, y, sb, c) + vertex_bound(t.graph, nu1, nu, nu2));
        }
    }
}

} // namespace

std::vector<OneStepEntry> compute_one_step(const VerifierTables& t, int place) {
    std::vector<OneStepEntry> out;
    const Place& P = t.places[place];
    if (P.terminal) return out;
    const PregroupTable& tab = t.pres.table;
    const int n = t.rel(P.loc).size();
    if (P.colour == Colour::R) {
        red_tail(t, P.loc, P.c, [&](int q, const Rational& chi) { include_step(out, {q, 1, chi}); });
    } else {
        walk_green(t, place, [&](int l, int nu1, int nu, const Location& end) {
            const Elem e = t.loc_b(end);
            for (int pp : t.places_at_loc(end)) {
                const Place& P2 = t.places[pp];
                const int nu2 = t.graph.id(tab.sigma(e), P2.c, P2.colour);
                if (!t.graph.has_edge(nu, nu2)) continue;
                const Rational chi1 = vertex_bound(t.graph, nu1, nu, nu2);
                if (P2.colour == Colour::G) {
                    include_step(out, {pp, l, chi1});
                } else if (l + 1 < n) {
                    red_tail(t, end, P2.c, [&](int q, const Rational& chi2) { include_step(out, {q, l + 1, chi1 + chi2}); });
                }
            }
        });
    }
    for (const auto& e : out)
        if (e.chi > Rational(-1, 6)) throw std::logic_error("one-step curvature above -1/6");
    return out;
}

VerifierTables build_tables(const PregroupPresentation& p) {
    for (const auto& r : p.relators)
        if (r.size() < 3) throw UnsupportedInput("relator shorter than 3: " + word_to_string(p.table, r));
    if (!check_untwisted(p)) throw UnsupportedInput("unsupported: interleaving required");
    VerifierTables t;
    t.pres = p;
    t.rels = build_cyclic_relators(t.pres);
    t.locations = enumerate_locations(t.rels);
    enumerate_places(t);
    build_vertex_graph(t);
    t.blobs = blob_word_list(t.pres);
    t.onestep.resize(t.places.size());
    for (int i = 0; i < static_cast<int>(t.places.size()); ++i) t.onestep[i] = compute_one_step(t, i);
    return t;
}

// ---- search ----------------------------------------------------------------

int zeta(const Rational& eps, int r) {
    Rational s = Rational(6) * (Rational(1) + eps);
    return static_cast<int>(std::min<std::int64_t>(s.ceil() - 1, r));
}

VerifyResult verify_at_place(const VerifierTables& t, int start, const Rational& eps) {
    struct Item {
        int place, l, k;
        Rational psi;
        std::vector<TrailStep> trail;
    };
    const Place& S = t.places[start];
    const int n = t.rel(S.loc).size();
    int rmax = 0;
    for (const auto& r : t.pres.relators) rmax = std::max<int>(rmax, static_cast<int>(r.size()));
    const int z = zeta(eps, rmax);
    const Rational one_eps = Rational(1) + eps;

    std::vector<Item> L{{start, 0, 0, Rational(0), {}}};
    std::map<std::pair<int, int>, std::size_t> idx{{{start, 0}, 0}};
    VerifyResult res;
    res.start = start;
    res.relator = t.rel(S.loc).source;

    auto dump = [&] {
        for (const auto& it : L) res.list.push_back({it.place, it.l, it.k, it.psi});
    };

    for (int i = 1; i <= z; ++i) {
        std::vector<Item> snap;
        for (const auto& it : L)
            if (it.k == i - 1) snap.push_back(it);
        if (snap.empty()) break;
        for (const Item& it : snap) {
            for (const OneStepEntry& os : t.onestep[it.place]) {
                const int nl = it.l + os.l;
                if (nl > n) continue;
                Rational psi = it.psi + os.chi + one_eps * Rational(os.l, n);
                if (psi < 0 || (nl == n && os.q != start)) continue;
                std::vector<TrailStep> trail = it.trail;
                trail.push_back({os.q, nl, os.chi, psi});
                if (psi > 0 && os.q == start && nl == n) {
                    res.ok = false;
                    res.trail = std::move(trail);
                    dump();
                    return res;
                }
                auto key = std::make_pair(os.q, nl);
                auto f = idx.find(key);
                if (f == idx.end()) {
                    idx[key] = L.size();
                    L.push_back({os.q, nl, i, psi, std::move(trail)});
                } else if (psi > L[f->second].psi) {
                    L[f->second] = {os.q, nl, i, psi, std::move(trail)};
                }
            }
        }
    }
    dump();
    return res;
}

VerifyResult rsym_verify(const VerifierTables& t, const Rational& eps) {
    if (eps <= 0) throw std::invalid_argument("epsilon must be positive");
    for (int p = 0; p < static_cast<int>(t.places.size()); ++p) {
        const Place& P = t.places[p];
        if (P.terminal || !t.rel(P.loc).in_r) continue;
        VerifyResult r = verify_at_place(t, p, eps);
        if (!r.ok) return r;
    }
    return {};
}

VerifyResult rsym_verify(const PregroupPresentation& p, const Rational& eps) { return rsym_verify(build_tables(p), eps); }

std::optional<int> gusu_start_index(const std::vector<Rational>& seq) {
    if (seq.empty()) return std::nullopt;
    std::vector<Rational> pre(seq.size());
    Rational s = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) pre[i] = s += seq[i];
    if (s < 0) return std::nullopt;
    std::size_t m = 0;
    for (std::size_t i = 1; i < pre.size(); ++i)
        if (pre[i] < pre[m]) m = i;
    if (s <= pre[m]) return 1;
    return static_cast<int>(m) + 2;
}

} // namespace rsym
