#include "rsym/solver.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace rsym {

Rational boundary_blob_bound(const PregroupTable& t, Elem sb, Elem c) {
    // a single triangle needs (sb, c) adjacent on it; anything larger with a
    // boundary edge gives at most -t/(2(t+1)) with t >= 2
    return t.defined(sb, c) ? Rational(-1, 4) : Rational(-1, 3);
}

namespace {

// Like include_step but terminal entries with and without a boundary blob
// are kept apart: they are judged against different thresholds.
void include_solver_step(std::vector<OneStepEntry>& list, const OneStepEntry& e) {
    for (auto& x : list)
        if (x.q == e.q && x.l == e.l && x.blob_end == e.blob_end) {
            if (e.chi > x.chi) x = e;
            return;
        }
    list.push_back(e);
}

} // namespace

std::vector<OneStepEntry> terminal_one_step(const SolverTables& s, int place) {
    const VerifierTables& t = s.t;
    const Place& P = t.places[place];
    std::vector<OneStepEntry> out;
    if (P.terminal) return out;
    const PregroupTable& tab = t.pres.table;
    const int n = t.rel(P.loc).size();
    auto term = [&](const Location& l) { return s.terminal.at(l); };

    if (P.colour == Colour::R) {
        const Elem sb = tab.sigma(t.loc_b(P.loc));
        include_solver_step(out, {term(t.shift(P.loc, 1)), 1, boundary_blob_bound(tab, sb, P.c), true});
        return out;
    }
    walk_green(t, place, [&](int l, int nu1, int nu, const Location& end) {
        include_solver_step(out, {term(end), l, Rational(-1, 4), false});
        if (l + 1 >= n) return;
        const Elem e = t.loc_b(end);
        for (int pp : t.places_at_loc(end)) {
            const Place& P2 = t.places[pp];
            if (P2.colour != Colour::R) continue;
            const int nu2 = t.graph.id(tab.sigma(e), P2.c, Colour::R);
            if (!t.graph.has_edge(nu, nu2)) continue;
            const Rational chi = vertex_bound(t.graph, nu1, nu, nu2) + boundary_blob_bound(tab, tab.sigma(e), P2.c);
            include_solver_step(out, {term(t.shift(end, 1)), l + 1, chi, true});
        }
    });
    return out;
}

SolverTables build_solver_tables(const VerifierTables& vt) {
    SolverTables s;
    s.t = vt;
    VerifierTables& t = s.t;
    const int nonterminal = static_cast<int>(t.places.size());
    for (const Location& l : t.locations) {
        if (!t.rels[l.rel].in_r) continue;
        s.terminal[l] = static_cast<int>(t.places.size());
        t.places.push_back({l, kUndef, Colour::G, true, {}});
    }
    s.steps.assign(t.places.size(), {});
    for (int p = 0; p < nonterminal; ++p) {
        for (const auto& e : t.onestep[p]) include_solver_step(s.steps[p], e);
        for (const auto& e : terminal_one_step(s, p)) include_solver_step(s.steps[p], e);
    }
    t.onestep.resize(t.places.size());
    return s;
}

bool trivint_hypothesis(const PregroupPresentation& p) {
    const PregroupTable& t = p.table;
    for (Elem a = 1; a < t.size(); ++a)
        for (Elem b = 1; b < t.size(); ++b)
            if (p.intermult(a, b) && !t.defined(a, b)) return false;
    return true;
}

SolverVerifyResult verify_solver_at_place(const SolverTables& s, int start, SolverMode mode) {
    struct Item {
        int place, l, t;
        Rational psi;
        bool start_blob;
        std::vector<TrailStep> trail;
    };
    const VerifierTables& t = s.t;
    const PregroupTable& tab = t.pres.table;
    const Place& Ps = t.places[start];
    const int n = t.rel(Ps.loc).size();
    const bool triv = mode == SolverMode::TrivInt;

    std::vector<Item> L;
    std::map<std::tuple<int, int, bool>, std::size_t> idx;
    auto include = [&](Item it) {
        auto key = std::make_tuple(it.place, it.l, it.start_blob);
        auto f = idx.find(key);
        if (f == idx.end()) {
            idx[key] = L.size();
            L.push_back(std::move(it));
        } else if (it.psi > L[f->second].psi) {
            L[f->second] = std::move(it);
        }
    };

    if (Ps.colour == Colour::G) {
        include({start, 0, 1, Rational(3, 4), false, {{start, 0, Rational(-1, 4), Rational(3, 4)}}});
    } else {
        const Elem b = t.loc_b(Ps.loc), sb = tab.sigma(b);
        const Location next = t.shift(Ps.loc, 1);
        const Elem d = t.loc_b(next);
        const int nu = t.graph.id(b, d, Colour::G);
        const Rational blob = boundary_blob_bound(tab, sb, Ps.c);
        for (int p1 : t.places_at_loc(next)) {
            const Place& P1 = t.places[p1];
            const int nu2 = t.graph.id(tab.sigma(d), P1.c, P1.colour);
            std::optional<Rational> best;
            for (Elem y = 1; y < tab.size(); ++y) {
                if (!t.pres.intermult(y, sb)) continue;
                const int nu1 = t.graph.id(y, sb, Colour::R);
                if (!t.graph.has_edge(nu1, nu) || !t.graph.has_edge(nu, nu2)) continue;
                Rational v = vertex_bound(t.graph, nu1, nu, nu2);
                if (!best || v > *best) best = v;
            }
            if (!best) continue;
            const Rational chi = blob + *best;
            include({p1, 1, 1, 1 + chi, triv, {{p1, 1, chi, 1 + chi}}});
        }
    }

    SolverVerifyResult res;
    res.start = start;
    auto dump = [&] {
        for (const auto& it : L) res.list.push_back({it.place, it.l, it.t, it.psi, it.start_blob});
    };
    for (int i = 1; i <= 3; ++i) {
        std::vector<Item> snap;
        for (const auto& it : L)
            if (it.t == i) snap.push_back(it);
        for (const Item& it : snap)
            for (const OneStepEntry& os : s.steps[it.place]) {
                const int nl = it.l + os.l;
                const bool qterm = t.places[os.q].terminal;
                const Rational psi = it.psi + os.chi;
                if (!qterm) {
                    const bool short_enough = triv ? 2 * nl < n + 2 : 2 * nl < n;
                    if (short_enough && psi > 0) {
                        auto trail = it.trail;
                        trail.push_back({os.q, nl, os.chi, psi});
                        include({os.q, nl, i + 1, psi, it.start_blob, std::move(trail)});
                    }
                    continue;
                }
                int slack = 0;  // threshold is (n + slack)/2
                if (triv) slack = static_cast<int>(it.start_blob) + static_cast<int>(os.blob_end);
                if (2 * nl >= n + slack && psi > 0) {
                    res.ok = false;
                    res.trail = it.trail;
                    res.trail.push_back({os.q, nl, os.chi, psi});
                    dump();
                    return res;
                }
            }
    }
    dump();
    return res;
}

SolverVerifyResult verify_solver(const SolverTables& s, SolverMode mode) {
    if (mode == SolverMode::TrivInt && !trivint_hypothesis(s.t.pres))
        throw UnsupportedInput("trivint solver needs every intermult pair to multiply");
    for (int p = 0; p < static_cast<int>(s.t.places.size()); ++p) {
        const Place& P = s.t.places[p];
        if (P.terminal || !s.t.rel(P.loc).in_r) continue;
        SolverVerifyResult r = verify_solver_at_place(s, p, mode);
        if (!r.ok) return r;
    }
    return {};
}

// ---- rewrite list ----------------------------------------------------------

void RewriteList::add(RewriteRule r) {
    auto key = std::make_pair(r.u, r.v);
    auto it = seen_.find(key);
    if (it != seen_.end()) {
        rules[it->second].need = std::min(rules[it->second].need, r.need);
        return;
    }
    int node = 0;
    for (Elem e : r.u) {
        auto f = nodes_[node].next.find(e);
        if (f == nodes_[node].next.end()) {
            nodes_.push_back({});
            f = nodes_[node].next.emplace(e, static_cast<int>(nodes_.size()) - 1).first;
        }
        node = f->second;
    }
    const int id = static_cast<int>(rules.size());
    nodes_[node].rules.push_back(id);
    seen_[key] = id;
    max_u = std::max<int>(max_u, static_cast<int>(r.u.size()));
    if (std::find(lengths_.begin(), lengths_.end(), static_cast<int>(r.u.size())) == lengths_.end()) {
        lengths_.push_back(static_cast<int>(r.u.size()));
        std::sort(lengths_.begin(), lengths_.end());
    }
    rules.push_back(std::move(r));
}

int RewriteList::child(int node, Elem e) const {
    auto f = nodes_[node].next.find(e);
    return f == nodes_[node].next.end() ? -1 : f->second;
}

RewriteList build_rewrite_list(const VerifierTables& t, SolverMode mode) {
    const PregroupTable& tab = t.pres.table;
    RewriteList out;
    for (const CyclicRelator& cr : t.rels) {
        const int n = cr.size();
        const int k = (n + 2) / 2;  // ceil((n+1)/2)
        // shortest u for the relaxed boundary of the trivint verifier
        const int lmax = (n + 3) / 2 - 1;  // ceil((n+2)/2) - 1 internal letters
        const int kmin = mode == SolverMode::TrivInt ? std::max(1, n - lmax) : k;
        for (int s = 0; s < n; ++s) {
            Word rot(n);
            for (int i = 0; i < n; ++i) rot[i] = cr.at(s + i);
            for (int len = kmin; len <= k; ++len) {
                Word u(rot.begin(), rot.begin() + len);
                Word v = inverse_word(tab, Word(rot.begin() + len, rot.end()));
                const int need = std::max(0, static_cast<int>(v.size()) - len + 1);
                out.add({std::move(u), std::move(v), need});
            }
        }
    }
    return out;
}

// ---- RSymSolve -------------------------------------------------------------

RSymSolver::RSymSolver(const PregroupPresentation& p, RewriteList list)
    : pres_(p), list_(std::move(list)), inter_(interleave_table(p.table)) {}

namespace {

// Cyclic word as a circular doubly-linked list.
struct Ring {
    std::vector<Elem> x;
    std::vector<int> prev, next;
    std::vector<char> alive;
    int head = -1;
    int size = 0;

    int add(Elem e) {
        x.push_back(e);
        prev.push_back(-1);
        next.push_back(-1);
        alive.push_back(1);
        return static_cast<int>(x.size()) - 1;
    }
    void link(int a, int b) {
        next[a] = b;
        prev[b] = a;
    }
    void kill(int a) {
        alive[a] = 0;
        --size;
        if (head == a) head = size > 0 ? next[a] : -1;
    }
    void assign(const Word& w) {
        x.clear();
        prev.clear();
        next.clear();
        alive.clear();
        size = static_cast<int>(w.size());
        head = size ? 0 : -1;
        for (Elem e : w) add(e);
        for (int i = 0; i < size; ++i) link(i, (i + 1) % size);
    }
    Word word() const {
        Word w;
        if (size == 0) return w;
        int p = head;
        for (int i = 0; i < size; ++i, p = next[p]) w.push_back(x[p]);
        return w;
    }
};

} // namespace

bool RSymSolver::solve(const Word& input, SolveStats* stats) const {
    const PregroupTable& t = pres_.table;
    SolveStats local;
    SolveStats& st = stats ? *stats : local;
    st = {};
    st.input_length = input.size();

    Word w = cyclically_p_reduce(t, input);
    st.letter_ops += input.size();
    Ring ring;
    ring.assign(w);

    std::deque<int> work;
    std::vector<char> queued(ring.x.size(), 1);
    for (int i = 0; i < ring.size; ++i) work.push_back(i);
    std::vector<int> touched;

    auto touch = [&](int node) { touched.push_back(node); };

    // Restore P-reducedness around the given nodes.
    auto reduce_local = [&](std::vector<int> chk) {
        while (!chk.empty()) {
            int a = chk.back();
            chk.pop_back();
            if (!ring.alive[a] || ring.size < 2) continue;
            int y = ring.prev[a];
            if (y == a) continue;
            ++st.letter_ops;
            Elem pr = t.mult(ring.x[y], ring.x[a]);
            if (pr == kUndef) continue;
            if (pr == kIdentity) {
                if (ring.size == 2) {
                    ring.kill(a);
                    ring.kill(y);
                    continue;
                }
                int yp = ring.prev[y], an = ring.next[a];
                ring.kill(a);
                ring.kill(y);
                ring.link(yp, an);
                if (ring.head < 0 || !ring.alive[ring.head]) ring.head = an;
                touch(yp);
                touch(an);
                chk.push_back(an);
            } else {
                ring.x[y] = pr;
                int an = ring.next[a];
                ring.kill(a);
                ring.link(y, an);
                if (!ring.alive[ring.head]) ring.head = y;
                touch(y);
                chk.push_back(y);
                chk.push_back(an);
            }
        }
    };

    auto push_affected = [&] {
        const int back = list_.max_u + 1;
        for (int node : touched) {
            if (!ring.alive[node]) continue;
            int p = node;
            for (int s = 0; s < back && s < ring.size; ++s) p = ring.prev[p];
            for (int s = 0; s <= back + 1 && s < ring.size; ++s, p = ring.next[p]) {
                ++st.letter_ops;
                if (queued.size() < ring.x.size()) queued.resize(ring.x.size(), 0);
                if (!queued[p]) {
                    queued[p] = 1;
                    work.push_front(p);
                }
            }
        }
        touched.clear();
    };

    // Replace the whole cyclic word, used when a window leaves no distinct flanks.
    auto replace_all = [&](const Word& nw) {
        Word red = cyclically_p_reduce(t, nw);
        st.letter_ops += nw.size();
        ring.assign(red);
        queued.assign(ring.x.size(), 1);
        work.clear();
        for (int i = 0; i < ring.size; ++i) work.push_back(i);
    };

    auto try_at = [&](int p) -> bool {
        const int S = ring.size;
        const int L = ring.prev[p];
        for (Elem a : inter_(ring.x[L], ring.x[p])) {
            Elem first = ring.x[p];
            if (a != kIdentity) first = t.mult(t.sigma(a), first);
            if (first == kUndef || first == kIdentity) continue;
            int node = 0;
            int q = p;
            for (int j = 0; j < list_.max_u && j < S; ++j, q = ring.next[q]) {
                ++st.letter_ops;
                const Elem base = j == 0 ? first : ring.x[q];
                const int m = j + 1;
                const int Rn = ring.next[q];
                for (Elem b : inter_(ring.x[q], ring.x[Rn])) {
                    Elem last = base;
                    if (b != kIdentity) last = t.mult(base, b);
                    if (last == kUndef || last == kIdentity) continue;
                    const int nd = list_.child(node, last);
                    if (nd < 0) continue;
                    for (int ri : list_.rules_at(nd)) {
                        const RewriteRule& rule = list_.rules[ri];
                        const bool flanks_free = m <= S - 2;
                        if (!flanks_free && (a != kIdentity || b != kIdentity)) continue;
                        if (!flanks_free) {
                            // window covers the word up to at most one letter
                            Word nw = rule.v;
                            if (m == S - 1) nw.insert(nw.begin(), ring.x[L]);
                            Word red = cyclically_p_reduce(t, nw);
                            if (static_cast<int>(red.size()) >= S) continue;
                            replace_all(nw);
                            ++st.rewrites;
                            return true;
                        }
                        const Elem newL = a == kIdentity ? ring.x[L] : t.mult(ring.x[L], a);
                        const Elem newR = b == kIdentity ? ring.x[Rn] : t.mult(t.sigma(b), ring.x[Rn]);
                        if (newL == kUndef || newR == kUndef || newL == kIdentity || newR == kIdentity) continue;
                        if (rule.need > 0) {
                            // tentative: the splice must shrink the word after reduction
                            const int rest = S - m;
                            const int ctx = std::min(rule.need + 1, rest / 2);
                            Word seg;
                            int c = L;
                            for (int s = 1; s < ctx; ++s) c = ring.prev[c];
                            for (int s = 1; s < ctx; ++s, c = ring.next[c]) seg.push_back(ring.x[c]);
                            seg.push_back(newL);
                            seg.insert(seg.end(), rule.v.begin(), rule.v.end());
                            seg.push_back(newR);
                            c = ring.next[Rn];
                            for (int s = 1; s < ctx; ++s, c = ring.next[c]) seg.push_back(ring.x[c]);
                            st.letter_ops += seg.size();
                            const int merges = static_cast<int>(seg.size() - p_reduce(t, seg).size());
                            if (2 * ctx >= rest) {
                                // context is the whole remainder: judge the cyclic result
                                Word whole;
                                int cc = Rn;
                                for (int s = 0; s < rest; ++s, cc = ring.next[cc]) whole.push_back(cc == L ? newL : cc == Rn ? newR : ring.x[cc]);
                                whole.insert(whole.end(), rule.v.begin(), rule.v.end());
                                if (static_cast<int>(cyclically_p_reduce(t, whole).size()) >= S) continue;
                            } else if (merges < rule.need) {
                                continue;
                            }
                        }
                        // splice v between the flanks
                        ring.x[L] = newL;
                        ring.x[Rn] = newR;
                        int c = p;
                        for (int s = 0; s < m; ++s) {
                            int nx = ring.next[c];
                            ring.kill(c);
                            c = nx;
                        }
                        int tail = L;
                        for (Elem e : rule.v) {
                            int nn = ring.add(e);
                            ring.link(tail, nn);
                            ++ring.size;
                            touch(nn);
                            tail = nn;
                        }
                        ring.link(tail, Rn);
                        if (ring.head < 0 || !ring.alive[ring.head]) ring.head = Rn;
                        st.letter_ops += rule.v.size() + 2;
                        touch(L);
                        touch(Rn);
                        std::vector<int> chk{L, ring.next[L], Rn, ring.next[Rn]};
                        reduce_local(std::move(chk));
                        ++st.rewrites;
                        push_affected();
                        return true;
                    }
                }
                node = list_.child(node, base);
                if (node < 0) break;
            }
        }
        return false;
    };

    while (ring.size > 0 && !work.empty()) {
        int p = work.front();
        work.pop_front();
        if (p >= static_cast<int>(queued.size())) queued.resize(ring.x.size(), 0);
        queued[p] = 0;
        if (!ring.alive[p]) continue;
        try_at(p);
    }
    return ring.size == 0;
}

// ---- Dehn bounds -----------------------------------------------------------

DehnBoundReport dehn_bounds(const PregroupPresentation& pres, const Rational& eps, std::optional<SolverMode> solver) {
    if (eps <= 0) throw std::invalid_argument("epsilon must be positive");
    const PregroupTable& t = pres.table;
    DehnBoundReport d;
    d.eps = eps;
    for (const auto& w : pres.relators) d.r = std::max<int>(d.r, static_cast<int>(w.size()));
    d.r_full = pres.r;
    auto involutions = [&](const Word& w) {
        int c = 0;
        for (Elem e : w) c += t.sigma(e) == e;
        return c;
    };
    for (const auto& w : pres.vp) d.r_i = std::max(d.r_i, involutions(w));
    for (const auto& w : pres.relators) d.r_i = std::max(d.r_i, involutions(w));

    const Rational r(d.r), three_r = Rational(3) + r;
    d.f_slope = Rational(6) + r + three_r / (Rational(2) * eps);
    d.f_const = -(three_r / eps);

    bool all_trivial = true;  // every non-multiplying pair has trivial interleave set
    {
        InterleaveTable it = interleave_table(t);
        for (Elem a = 1; a < t.size() && all_trivial; ++a)
            for (Elem b = 1; b < t.size() && all_trivial; ++b)
                if (!t.defined(a, b)) all_trivial = it(a, b).size() == 1;
    }
    if (pres.vp.empty()) {
        d.part = "ii";
        d.pd_slope = Rational(1) / (Rational(2) * eps) + 1;
        d.pd_const = -(Rational(1) / eps);
    } else if (all_trivial) {
        d.part = "iii";
        d.pd_slope = d.f_slope - 2;
        d.pd_const = d.f_const;
    } else {
        d.part = "i";
        d.pd_slope = d.f_slope;
        d.pd_const = d.f_const;
    }
    d.lambda0 = d.pd_slope;
    d.lambda = Rational(d.r_full) * d.lambda0 + Rational(1, 2);
    d.gamma = Rational(384) * d.lambda * Rational(d.r_full) * Rational(d.r_full - 1) + 64;

    Rational best_slope = d.pd_slope, best_const = d.pd_const;
    if (solver) {
        d.solver_pd_slope = *solver == SolverMode::Plain ? 1 : 3;
        if (Rational(*d.solver_pd_slope) < best_slope) {
            best_slope = *d.solver_pd_slope;
            best_const = 0;
        }
    }
    d.d_slope = Rational(d.r_i) * best_slope + Rational(1, 2);
    d.d_const = Rational(d.r_i) * best_const;
    return d;
}

} // namespace rsym
