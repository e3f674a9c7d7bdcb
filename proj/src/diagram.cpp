#include "rsym/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rsym {

Word ColouredDiagram::face_word(int f) const {
    Word w;
    for (int h : face_edges[f]) w.push_back(label[h]);
    return w;
}

void ColouredDiagram::rebuild() {
    const int H = half_edges();
    prev.assign(H, -1);
    for (int h = 0; h < H; ++h) prev[next[h]] = h;
    face_edges.assign(faces(), {});
    std::vector<char> seen(H, 0);
    for (int h = 0; h < H; ++h) {
        if (seen[h] || face[h] < 0 || face[h] >= faces() || !face_edges[face[h]].empty()) continue;
        int c = h;
        do {
            seen[c] = 1;
            face_edges[face[h]].push_back(c);
            c = next[c];
        } while (c != h && c >= 0 && c < H && !seen[c]);
    }
    origin.assign(H, -1);
    n_vertices = 0;
    for (int h = 0; h < H; ++h) {
        if (origin[h] >= 0) continue;
        int c = h;
        do {
            origin[c] = n_vertices;
            c = next[twin[c]];
        } while (origin[c] < 0);
        ++n_vertices;
    }
}

ColouredDiagram single_face(const Word& w, FaceKind k, const PregroupTable& t) {
    const int L = static_cast<int>(w.size());
    ColouredDiagram d;
    d.kind = {FaceKind::External, k};
    d.label.resize(2 * L);
    d.twin.resize(2 * L);
    d.next.resize(2 * L);
    d.face.resize(2 * L);
    for (int i = 0; i < L; ++i) {
        d.label[i] = w[i];
        d.next[i] = (i + 1) % L;
        d.twin[i] = L + i;
        d.face[i] = 1;
        d.label[L + i] = t.sigma(w[i]);
        d.twin[L + i] = i;
        d.next[L + i] = L + (i + L - 1) % L;
        d.face[L + i] = 0;
    }
    d.rebuild();
    return d;
}

namespace {

bool is_green(FaceKind k) { return k != FaceKind::Red; }

} // namespace

ColouredDiagram attach_face(const ColouredDiagram& d, int h, int k, const Word& w, FaceKind kind, const PregroupTable& t) {
    const int L = static_cast<int>(w.size());
    const int m = L - k;
    const int bl = static_cast<int>(d.face_edges[0].size());
    if (k < 1 || m < 1 || k > bl || d.face[h] != 0) throw std::invalid_argument("attach_face: bad arc");
    std::vector<int> arc{h};
    for (int j = 1; j < k; ++j) arc.push_back(d.next[arc.back()]);
    for (int j = 0; j < k; ++j)
        if (d.label[arc[j]] != w[j]) throw std::invalid_argument("attach_face: labels differ");

    ColouredDiagram e = d;
    const int F = e.faces();
    e.kind.push_back(kind);
    const int before = d.prev[arc.front()], after = d.next[arc.back()];
    const bool whole = k == bl;
    for (int a : arc) e.face[a] = F;
    const int base = e.half_edges();
    auto nh = [&](int j) { return base + 2 * j; };      // new face side, j = 0..m-1
    auto th = [&](int j) { return base + 2 * j + 1; };  // external side
    e.label.resize(base + 2 * m);
    e.twin.resize(base + 2 * m);
    e.next.resize(base + 2 * m);
    e.face.resize(base + 2 * m);
    for (int j = 0; j < m; ++j) {
        e.label[nh(j)] = w[k + j];
        e.label[th(j)] = t.sigma(w[k + j]);
        e.twin[nh(j)] = th(j);
        e.twin[th(j)] = nh(j);
        e.face[nh(j)] = F;
        e.face[th(j)] = 0;
        e.next[nh(j)] = j + 1 < m ? nh(j + 1) : arc.front();
        e.next[th(j)] = j > 0 ? th(j - 1) : (whole ? th(m - 1) : after);
    }
    e.next[arc.back()] = nh(0);
    if (!whole) e.next[before] = th(m - 1);
    e.rebuild();
    return e;
}

std::string structural_error(const ColouredDiagram& d, const PregroupPresentation& pres) {
    const PregroupTable& t = pres.table;
    const int H = d.half_edges();
    if (d.twin.size() != static_cast<std::size_t>(H) || d.next.size() != static_cast<std::size_t>(H) ||
        d.face.size() != static_cast<std::size_t>(H))
        return "array sizes differ";
    if (H == 0 || d.kind.empty() || d.kind[0] != FaceKind::External) return "face 0 must be the external face";
    for (int f = 1; f < d.faces(); ++f)
        if (d.kind[f] == FaceKind::External) return "more than one external face";
    std::vector<int> indeg(H, 0);
    for (int h = 0; h < H; ++h) {
        if (d.twin[h] < 0 || d.twin[h] >= H || d.twin[h] == h || d.twin[d.twin[h]] != h) return "broken twin at " + std::to_string(h);
        if (d.next[h] < 0 || d.next[h] >= H) return "broken next at " + std::to_string(h);
        if (d.face[h] < 0 || d.face[h] >= d.faces()) return "bad face id at " + std::to_string(h);
        if (d.label[h] <= 0 || d.label[h] >= t.size()) return "bad label at " + std::to_string(h);
        if (d.label[d.twin[h]] != t.sigma(d.label[h])) return "twin labels not inverse at " + std::to_string(h);
        ++indeg[d.next[h]];
    }
    for (int h = 0; h < H; ++h)
        if (indeg[h] != 1) return "next is not a permutation";
    // each face id is exactly one next-orbit
    std::vector<char> seen(H, 0);
    std::vector<char> face_seen(d.faces(), 0);
    for (int h = 0; h < H; ++h) {
        if (seen[h]) continue;
        if (face_seen[d.face[h]]) return "face " + std::to_string(d.face[h]) + " is not a single cycle";
        face_seen[d.face[h]] = 1;
        int c = h;
        do {
            if (d.face[c] != d.face[h]) return "face ids differ along a cycle";
            seen[c] = 1;
            c = d.next[c];
        } while (c != h);
    }
    for (int f = 0; f < d.faces(); ++f)
        if (!face_seen[f]) return "empty face " + std::to_string(f);
    if (d.face_edges.size() != static_cast<std::size_t>(d.faces()) || d.origin.size() != static_cast<std::size_t>(H))
        return "derived data missing (call rebuild)";
    // connected
    std::vector<char> reach(H, 0);
    std::vector<int> st{0};
    reach[0] = 1;
    int cnt = 1;
    while (!st.empty()) {
        int h = st.back();
        st.pop_back();
        for (int nb : {d.next[h], d.twin[h]})
            if (!reach[nb]) {
                reach[nb] = 1;
                ++cnt;
                st.push_back(nb);
            }
    }
    if (cnt != H) return "map is not connected";
    if (d.n_vertices - d.edges() + d.faces() != 2) return "map is not planar";

    std::set<Word> green, red(pres.vp.begin(), pres.vp.end());
    for (const Word& r : pres.relators)
        for (const Word& s : {r, inverse_word(t, r)})
            for (std::size_t i = 0; i < s.size(); ++i) {
                Word rot(s.begin() + i, s.end());
                rot.insert(rot.end(), s.begin(), s.begin() + i);
                green.insert(rot);
            }
    for (int f = 1; f < d.faces(); ++f) {
        Word w = d.face_word(f);
        if (d.kind[f] == FaceKind::Red ? !red.count(w) : !green.count(w))
            return "face " + std::to_string(f) + " label " + word_to_string(t, w, " ") + " is not a relator";
    }
    return {};
}

const char* verdict_name(DiagramVerdict v) {
    switch (v) {
    case DiagramVerdict::Ok: return "ok";
    case DiagramVerdict::Structural: return "structural";
    case DiagramVerdict::BoundaryNotReduced: return "boundary not cyclically P-reduced";
    case DiagramVerdict::NotSigmaReduced: return "not sigma-reduced";
    case DiagramVerdict::NotSemiPReduced: return "not semi-P-reduced";
    case DiagramVerdict::NotGreenRich: return "not green-rich";
    case DiagramVerdict::BlobSubwordTrivial: return "red blob boundary has a trivial proper subword";
    }
    return "?";
}

DiagramVerdict pair_reduction(const ColouredDiagram& d, int f, int g, const PregroupTable& t) {
    if (f == 0 || g == 0) return DiagramVerdict::Ok;
    const bool greens = is_green(d.kind[f]) && is_green(d.kind[g]);
    if (is_green(d.kind[f]) != is_green(d.kind[g])) return DiagramVerdict::Ok;  // lengths differ
    const std::vector<int>& fe = d.face_edges[f];
    const int n = static_cast<int>(fe.size());
    auto shared = [&](int h) { return d.face[d.twin[h]] == g; };
    auto continues = [&](int h) {  // the common path runs from prev(h) into h
        int p = d.prev[h];
        return shared(p) && shared(h) && d.next[d.twin[h]] == d.twin[p];
    };
    for (int i = 0; i < n; ++i) {
        int h1 = fe[i];
        if (!shared(h1)) continue;
        int len = 1;
        int hr = h1;
        if (continues(h1)) {
            // only start at a run's first edge, unless the run is the whole face
            bool all = true;
            for (int x : fe) all = all && continues(x);
            if (!all || i != 0) continue;
            len = n;
            hr = d.prev[h1];
        } else {
            while (len < n && continues(d.next[hr])) {
                hr = d.next[hr];
                ++len;
            }
        }
        Word w2, w3inv;
        for (int c = d.next[hr]; c != h1 && len < n; c = d.next[c]) w2.push_back(d.label[c]);
        int g1 = d.twin[h1], gr = d.twin[hr];
        for (int c = d.next[g1]; c != gr; c = d.next[c]) w3inv.push_back(d.label[c]);
        if (len == n) w3inv.clear();
        if (w2 == inverse_word(t, w3inv)) return DiagramVerdict::NotSigmaReduced;
        if (greens && f != g) {
            Word s = w2;
            s.insert(s.end(), w3inv.begin(), w3inv.end());
            if (p_reduce(t, s).empty()) return DiagramVerdict::NotSemiPReduced;
        }
    }
    return DiagramVerdict::Ok;
}

std::vector<RedBlob> find_red_blobs(const ColouredDiagram& d) {
    const int F = d.faces();
    std::vector<int> parent(F);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto red = [&](int f) { return d.kind[f] == FaceKind::Red; };
    for (int h = 0; h < d.half_edges(); ++h) {
        int f = d.face[h], g = d.face[d.twin[h]];
        if (red(f) && red(g)) parent[find(f)] = find(g);
    }
    std::map<int, int> index;
    std::vector<RedBlob> out;
    std::vector<int> blob_of(F, -1);
    for (int f = 1; f < F; ++f) {
        if (!red(f)) continue;
        auto [it, fresh] = index.emplace(find(f), static_cast<int>(out.size()));
        if (fresh) out.push_back({});
        out[it->second].faces.push_back(f);
        blob_of[f] = it->second;
    }
    for (std::size_t b = 0; b < out.size(); ++b) {
        RedBlob& B = out[b];
        B.area = static_cast<int>(B.faces.size());
        int internal_half = 0;
        std::vector<int> bnd;
        for (int f : B.faces)
            for (int h : d.face_edges[f]) {
                if (blob_of[d.face[d.twin[h]]] == static_cast<int>(b)) {
                    ++internal_half;
                } else {
                    bnd.push_back(h);
                    if (d.face[d.twin[h]] != 0) ++B.internal_boundary;
                }
            }
        B.boundary_length = static_cast<int>(bnd.size());
        std::set<int> done;
        for (int s : bnd) {
            if (done.count(s)) continue;
            std::vector<int> walk;
            int c = s;
            do {
                walk.push_back(c);
                done.insert(c);
                int nx = d.next[c];
                while (blob_of[d.face[d.twin[nx]]] == static_cast<int>(b)) nx = d.next[d.twin[nx]];
                c = nx;
            } while (c != s);
            B.walks.push_back(std::move(walk));
        }
        // vertices with every corner inside the blob
        std::vector<int> corners(d.n_vertices, 0), inside(d.n_vertices, 0);
        for (int h = 0; h < d.half_edges(); ++h) {
            ++corners[d.origin[h]];
            if (blob_of[d.face[h]] == static_cast<int>(b)) ++inside[d.origin[h]];
        }
        int vint = 0;
        for (int v = 0; v < d.n_vertices; ++v) vint += corners[v] > 0 && corners[v] == inside[v];
        B.simply_connected = B.area - internal_half / 2 + vint == 1;
        B.all_vertices_on_boundary = vint == 0;
    }
    return out;
}

DiagramCheck validate_diagram(const ColouredDiagram& d, const PregroupPresentation& pres) {
    const PregroupTable& t = pres.table;
    if (std::string e = structural_error(d, pres); !e.empty()) return {DiagramVerdict::Structural, e};
    if (!is_cyclically_p_reduced(t, d.boundary_word()))
        return {DiagramVerdict::BoundaryNotReduced, word_to_string(t, d.boundary_word(), " ")};
    for (int f = 1; f < d.faces(); ++f)
        for (int g = 1; g < d.faces(); ++g) {
            DiagramVerdict v = pair_reduction(d, f, g, t);
            if (v != DiagramVerdict::Ok) return {v, "faces " + std::to_string(f) + " and " + std::to_string(g)};
        }
    std::vector<int> green(d.n_vertices, 0);
    for (int h = 0; h < d.half_edges(); ++h)
        if (is_green(d.kind[d.face[h]])) ++green[d.origin[h]];
    for (int v = 0; v < d.n_vertices; ++v)
        if (green[v] < 2) return {DiagramVerdict::NotGreenRich, "vertex " + std::to_string(v)};
    for (const RedBlob& B : find_red_blobs(d)) {
        if (!B.simply_connected) continue;
        Word w;
        for (int h : B.walks.front()) w.push_back(d.label[h]);
        const int l = static_cast<int>(w.size());
        for (int len = 1; len < l; ++len)
            for (int s = 0; s < l; ++s) {
                Word sub;
                for (int i = 0; i < len; ++i) sub.push_back(w[(s + i) % l]);
                if (p_reduce(t, sub).empty())
                    return {DiagramVerdict::BlobSubwordTrivial, word_to_string(t, sub, " ")};
            }
    }
    return {};
}

Rational CurvatureMap::total() const {
    Rational s;
    for (const auto& x : vertex) s += x;
    for (const auto& x : half_edge) s += x;
    for (const auto& x : face) s += x;
    return s;
}

CurvatureMap compute_rsym_curvature(const ColouredDiagram& d) {
    CurvatureMap k;
    const Rational half(1, 2);
    k.vertex.assign(d.n_vertices, Rational(1));
    k.half_edge.assign(d.half_edges(), -half);
    k.face.assign(d.faces(), Rational(1));
    k.face[0] = 0;

    for (int h = 0; h < d.half_edges(); ++h) {
        k.half_edge[h] += half;
        if (is_green(d.kind[d.face[h]]))
            k.vertex[d.origin[d.next[h]]] -= half;
        else
            k.face[d.face[h]] -= half;
    }

    std::vector<std::vector<int>> corners(d.n_vertices);
    std::vector<int> vg(d.n_vertices, 0), ext(d.n_vertices, 0);
    for (int h = 0; h < d.half_edges(); ++h) {
        const int v = d.origin[h];
        const FaceKind fk = d.kind[d.face[h]];
        if (fk == FaceKind::Green) corners[v].push_back(h);
        if (is_green(fk)) ++vg[v];
        if (fk == FaceKind::External) ++ext[v];
    }
    for (int v = 0; v < d.n_vertices; ++v) {
        if (corners[v].empty()) continue;
        const Rational share = k.vertex[v] / Rational(static_cast<std::int64_t>(corners[v].size()));
        for (int h : corners[v]) {
            k.face[d.face[h]] += share;
            k.vertex_donations.push_back({v, d.face[h], share, vg[v], ext[v]});
        }
        k.vertex[v] = 0;
    }

    std::vector<RedBlob> blobs = find_red_blobs(d);
    for (std::size_t b = 0; b < blobs.size(); ++b) {
        const RedBlob& B = blobs[b];
        Rational beta;
        for (int f : B.faces) beta += k.face[f];
        k.blob_curvature.push_back(beta);
        if (B.internal_boundary == 0) continue;
        for (int f : B.faces) k.face[f] = 0;
        const Rational each = beta / Rational(B.internal_boundary);
        std::set<int> mine(B.faces.begin(), B.faces.end());
        for (int f : B.faces)
            for (int h : d.face_edges[f]) {
                const int g = d.face[d.twin[h]];
                if (g == 0 || mine.count(g)) continue;
                k.face[g] += each;
                k.blob_donations.push_back({static_cast<int>(b), g, each});
            }
    }
    return k;
}

std::vector<char> boundary_faces(const ColouredDiagram& d) {
    std::vector<char> out(d.faces(), 0);
    for (int h : d.face_edges[0]) out[d.face[d.twin[h]]] = 1;
    out[0] = 0;
    return out;
}

DiagramAudit audit_diagram(const ColouredDiagram& d, const CurvatureMap& k, const Rational* eps) {
    DiagramAudit a;
    a.conserved = k.total() == Rational(1);

    std::vector<int> vg(d.n_vertices, 0);
    for (int h = 0; h < d.half_edges(); ++h)
        if (is_green(d.kind[d.face[h]])) ++vg[d.origin[h]];
    std::int64_t green_sides = 0, red_faces = 0, green_faces = 0, vsum = 0;
    for (int h = 0; h < d.half_edges(); ++h) green_sides += is_green(d.kind[d.face[h]]);
    for (int f = 1; f < d.faces(); ++f) (d.kind[f] == FaceKind::Red ? red_faces : green_faces) += 1;
    for (int v = 0; v < d.n_vertices; ++v) vsum += vg[v] - 1;
    a.graph_identity = green_sides == red_faces + 2 * (1 - green_faces + vsum);

    for (const RedBlob& B : find_red_blobs(d)) {
        if (B.simply_connected && B.all_vertices_on_boundary && B.boundary_length != B.area + 2) a.blob_lengths = false;
        if (B.simply_connected && B.boundary_length > B.area + 2) a.blob_lengths = false;
        if (!B.simply_connected && B.boundary_length > B.area) a.blob_lengths = false;
    }
    for (const VertexDonation& v : k.vertex_donations)
        if (v.vg == v.x || v.chi != Rational(2 - v.vg, 2 * (v.vg - v.x))) a.vertex_formula = false;

    const std::vector<char> bf = boundary_faces(d);
    for (int f = 1; f < d.faces(); ++f) {
        if (d.kind[f] != FaceKind::Green) continue;
        if (bf[f]) {
            if (d.internal_faces() > 1 && k.face[f] > Rational(1, 2)) ++a.boundary_face_excess;
            continue;
        }
        ++a.nonboundary_green;
        if (eps && k.face[f] > -*eps) ++a.curvature_violations;
    }
    return a;
}

std::vector<int> canonical_code(const ColouredDiagram& d) {
    const int H = d.half_edges();
    std::vector<int> best;
    std::vector<int> num(H), order;
    order.reserve(H);
    for (int root : d.face_edges[0]) {
        std::fill(num.begin(), num.end(), -1);
        order.clear();
        num[root] = 0;
        order.push_back(root);
        for (std::size_t i = 0; i < order.size(); ++i) {
            for (int nb : {d.next[order[i]], d.twin[order[i]]})
                if (num[nb] < 0) {
                    num[nb] = static_cast<int>(order.size());
                    order.push_back(nb);
                }
        }
        std::vector<int> code;
        code.reserve(4 * H);
        bool worse = false, better = best.empty();
        for (int h : order) {
            const int vals[4] = {d.label[h], static_cast<int>(d.kind[d.face[h]]), num[d.next[h]], num[d.twin[h]]};
            for (int x : vals) {
                if (!better) {
                    const int ref = best[code.size()];
                    if (x > ref) {
                        worse = true;
                        break;
                    }
                    if (x < ref) better = true;
                }
                code.push_back(x);
            }
            if (worse) break;
        }
        if (!worse && better) best = std::move(code);
    }
    return best;
}

namespace {

struct Catalogue {
    std::vector<Word> words;
    std::vector<FaceKind> kinds;
    int max_len = 0;
};

Catalogue face_catalogue(const PregroupPresentation& pres) {
    const PregroupTable& t = pres.table;
    Catalogue c;
    std::set<Word> seen;
    auto add = [&](const Word& w, FaceKind k) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            Word rot(w.begin() + i, w.end());
            rot.insert(rot.end(), w.begin(), w.begin() + i);
            if (seen.insert(rot).second) {
                c.words.push_back(rot);
                c.kinds.push_back(k);
                c.max_len = std::max<int>(c.max_len, static_cast<int>(rot.size()));
            }
        }
    };
    for (const Word& r : pres.relators) {
        add(r, FaceKind::Green);
        add(inverse_word(t, r), FaceKind::Green);
    }
    for (const Word& v : pres.vp) add(v, FaceKind::Red);
    return c;
}

} // namespace

std::vector<ColouredDiagram> enumerate_diagrams(const PregroupPresentation& pres, int max_faces, int max_boundary,
                                                const EnumerationLimits& lim) {
    if (max_faces > lim.ceiling_faces || max_boundary > lim.ceiling_boundary)
        throw std::invalid_argument("enumeration budget above the configured ceiling");
    std::vector<ColouredDiagram> out;
    if (max_faces <= 0) return out;
    const PregroupTable& t = pres.table;
    const Catalogue cat = face_catalogue(pres);

    std::map<std::vector<int>, ColouredDiagram> level;
    {
        for (std::size_t i = 0; i < cat.words.size(); ++i) {
            ColouredDiagram d = single_face(cat.words[i], cat.kinds[i], t);
            level.emplace(canonical_code(d), std::move(d));
        }
    }
    for (int faces = 1;; ++faces) {
        for (const auto& [code, d] : level) {
            if (static_cast<int>(d.face_edges[0].size()) > max_boundary) continue;
            if (validate_diagram(d, pres).ok()) out.push_back(d);
        }
        if (faces == max_faces) break;
        const int remaining = max_faces - faces - 1;  // faces still addable after the next one
        std::map<std::vector<int>, ColouredDiagram> nxt;
        for (const auto& [code, d] : level) {
            const int bl = static_cast<int>(d.face_edges[0].size());
            for (int h : d.face_edges[0])
                for (std::size_t wi = 0; wi < cat.words.size(); ++wi) {
                    const Word& w = cat.words[wi];
                    const int L = static_cast<int>(w.size());
                    int c = h;
                    for (int k = 1; k <= std::min(L - 1, bl); ++k, c = d.next[c]) {
                        if (d.label[c] != w[k - 1]) break;
                        const int nb = bl + L - 2 * k;
                        if (nb - remaining * (cat.max_len - 2) > max_boundary) continue;
                        ColouredDiagram e = attach_face(d, h, k, w, cat.kinds[wi], t);
                        const int F = e.faces() - 1;
                        bool bad = false;
                        std::set<int> nbrs;
                        for (int x : e.face_edges[F]) nbrs.insert(e.face[e.twin[x]]);
                        for (int g : nbrs)
                            if (g != 0 && (pair_reduction(e, F, g, t) != DiagramVerdict::Ok ||
                                           pair_reduction(e, g, F, t) != DiagramVerdict::Ok)) {
                                bad = true;
                                break;
                            }
                        if (bad) continue;
                        auto key = canonical_code(e);
                        nxt.try_emplace(std::move(key), std::move(e));
                    }
                }
        }
        level = std::move(nxt);
    }
    return out;
}

std::string dump_diagram(const ColouredDiagram& d, const PregroupTable& t) {
    std::ostringstream os;
    os << "id label twin next face colour\n";
    for (int h = 0; h < d.half_edges(); ++h) {
        const FaceKind k = d.kind[d.face[h]];
        os << h << ' ' << t.name(d.label[h]) << ' ' << d.twin[h] << ' ' << d.next[h] << ' ' << d.face[h] << ' '
           << (k == FaceKind::External ? "external" : k == FaceKind::Green ? "green" : "red") << '\n';
    }
    return os.str();
}

} // namespace rsym
