#include "rsym/presentation.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace rsym {

std::vector<Word> build_vp(const PregroupTable& t) {
    std::vector<Word> out;
    std::set<Word> seen;
    for (Elem x = 1; x < t.size(); ++x)
        for (Elem y = 1; y < t.size(); ++y) {
            Elem xy = t.mult(x, y);
            if (xy == kUndef || xy == kIdentity) continue;
            Word w{x, y, t.sigma(xy)};
            if (seen.insert(w).second) out.push_back(w);
        }
    return out;
}

PregroupPresentation PregroupPresentation::make(PregroupTable t, std::vector<Word> rels) {
    PregroupPresentation p;
    p.vp = build_vp(t);
    p.intermult = intermult_table(t);
    p.rletter.assign(t.size(), 0);
    p.r = p.vp.empty() ? 0 : 3;
    for (const auto& w : rels) {
        p.r = std::max<int>(p.r, static_cast<int>(w.size()));
        for (Elem e : w) {
            p.rletter[e] = 1;
            p.rletter[t.sigma(e)] = 1;
        }
    }
    p.table = std::move(t);
    p.relators = std::move(rels);
    return p;
}

InterleaveTable interleave_table(const PregroupTable& t) {
    InterleaveTable it;
    it.n = t.size();
    it.sets.resize(static_cast<std::size_t>(it.n) * it.n);
    for (Elem a = 0; a < it.n; ++a)
        for (Elem b = 0; b < it.n; ++b)
            for (Elem s = 0; s < it.n; ++s)
                if (t.defined(a, s) && t.defined(t.sigma(s), b)) it.sets[static_cast<std::size_t>(a) * it.n + b].push_back(s);
    return it;
}

bool check_untwisted(const PregroupPresentation& p) {
    InterleaveTable it = interleave_table(p.table);
    for (const auto& w : p.relators) {
        const std::size_t n = w.size();
        for (std::size_t i = 0; i < n; ++i) {
            const auto& s = it(w[(i + n - 1) % n], w[i]);
            if (s.size() != 1 || s[0] != kIdentity) return false;
        }
    }
    return true;
}

std::pair<Word, int> power_decomposition(const Word& r) {
    const std::size_t n = r.size();
    for (std::size_t l = 1; l <= n / 2; ++l) {
        if (n % l) continue;
        bool ok = true;
        for (std::size_t i = l; i < n && ok; ++i) ok = r[i] == r[i - l];
        if (ok) return {Word(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(l)), static_cast<int>(n / l)};
    }
    return {r, 1};
}

namespace {

Word min_rotation(const Word& w) {
    Word best = w;
    Word cur = w;
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

Word rotate_word(const Word& w, std::size_t k) {
    Word r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r[i] = w[(i + k) % w.size()];
    return r;
}

Word concat(Word a, const Word& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// Cyclically reduce, drop empties and cyclic/inverse duplicates.
std::vector<Word> tidy(const PregroupTable& t, const std::vector<Word>& rels) {
    std::vector<Word> out;
    std::set<Word> keys;
    for (const auto& w : rels) {
        Word c = cyclically_p_reduce(t, w);
        if (c.empty()) continue;
        if (keys.insert(cyclic_class_key(t, c)).second) out.push_back(std::move(c));
    }
    return out;
}

// One application of the common-prefix shortening. Returns true if a
// relator was replaced.
bool shorten_common_prefix(const PregroupTable& t, std::vector<Word>& rels, std::vector<std::string>& log) {
    for (std::size_t i = 0; i < rels.size(); ++i)
        for (std::size_t j = 0; j < rels.size(); ++j) {
            if (i == j) continue;
            for (int s1 = 0; s1 < 2; ++s1) {
                Word r1 = s1 ? inverse_word(t, rels[i]) : rels[i];
                for (int s2 = 0; s2 < 2; ++s2) {
                    Word r2 = s2 ? inverse_word(t, rels[j]) : rels[j];
                    for (std::size_t a = 0; a < r1.size(); ++a)
                        for (std::size_t b = 0; b < r2.size(); ++b) {
                            std::size_t c = 0;
                            while (c < r1.size() && c < r2.size() && r1[(a + c) % r1.size()] == r2[(b + c) % r2.size()]) ++c;
                            if (2 * c <= r1.size()) continue;
                            Word S1 = rotate_word(r1, a), S2 = rotate_word(r2, b);
                            Word w1(S1.begin() + static_cast<std::ptrdiff_t>(c), S1.end());
                            Word w2(S2.begin() + static_cast<std::ptrdiff_t>(c), S2.end());
                            Word nr = concat(inverse_word(t, w1), w2);
                            log.push_back("replaced " + word_to_string(t, rels[j]) + " by " + word_to_string(t, nr) +
                                          " using " + word_to_string(t, rels[i]));
                            rels[j] = std::move(nr);
                            return true;
                        }
                }
            }
        }
    return false;
}

struct FreeLetter {
    int gen;
    bool inverse;
};

std::optional<FreeLetter> free_letter(const FreeProductSpec& spec, Elem e) {
    Elem id = 1;
    for (const auto& f : spec.factors) id += static_cast<Elem>(f.names.size());
    for (int g = 0; g < static_cast<int>(spec.free.size()); ++g) {
        if (e == id) return FreeLetter{g, false};
        ++id;
        if (!spec.free[g].involution) {
            if (e == id) return FreeLetter{g, true};
            ++id;
        }
    }
    return std::nullopt;
}

// Rebuild the pregroup for new_spec and carry the relators over by name,
// expanding elements listed in subst first.
std::vector<Word> remap(const PregroupTable& old_t, const PregroupTable& new_t, const std::vector<Word>& rels,
                        const std::map<Elem, Word>& subst, const std::map<Elem, Elem>& rename) {
    std::vector<Word> out;
    for (const auto& w : rels) {
        Word nw;
        for (Elem e : w) {
            auto it = subst.find(e);
            Word piece = it == subst.end() ? Word{e} : it->second;
            for (Elem x : piece) {
                auto rn = rename.find(x);
                if (rn != rename.end()) x = rn->second;
                nw.push_back(*new_t.find(old_t.name(x)));
            }
        }
        out.push_back(std::move(nw));
    }
    return out;
}

PreprocessResult finish(PregroupTable t, std::vector<Word> rels, PreprocessResult res) {
    for (const auto& w : rels)
        if (w.size() < 3) {
            res.status = PreprocessStatus::Degenerate;
            res.reason = "relator " + word_to_string(t, w) + " is shorter than 3 after preprocessing";
        }
    if (res.status == PreprocessStatus::Ok && t.size() <= 1) {
        res.status = PreprocessStatus::Degenerate;
        res.reason = "no generators remain";
    }
    if (res.status == PreprocessStatus::Ok && rels.empty()) {
        res.status = PreprocessStatus::NoRelators;
        res.reason = "no relators remain";
    }
    res.pres = PregroupPresentation::make(std::move(t), std::move(rels));
    return res;
}

} // namespace

Word translate_word(const PreprocessResult& r, const Word& w) {
    Word out;
    for (Elem e : w) {
        const Word& img = r.letter_image.at(e);
        out.insert(out.end(), img.begin(), img.end());
    }
    return out;
}

Word cyclic_class_key(const PregroupTable& t, const Word& r) {
    Word a = min_rotation(r), b = min_rotation(inverse_word(t, r));
    return std::min(a, b);
}

PreprocessResult preprocess(FreeProductSpec spec, std::vector<Word> relators) {
    PreprocessResult res;
    PregroupTable t = construct_pregroup(spec);
    std::vector<Word> rels = relators;
    res.letter_image.assign(t.size(), {});
    for (Elem e = 1; e < t.size(); ++e) res.letter_image[e] = {e};
    for (;;) {
        rels = tidy(t, rels);
        std::optional<std::size_t> shortest;
        for (std::size_t i = 0; i < rels.size(); ++i)
            if (rels[i].size() <= 2 && (!shortest || rels[i].size() < rels[*shortest].size())) shortest = i;

        if (shortest) {
            Word w = rels[*shortest];
            std::map<Elem, Word> subst;
            std::map<Elem, Elem> rename;
            FreeProductSpec ns = spec;
            int gen = -1;
            if (w.size() == 1) {
                auto fl = free_letter(spec, w[0]);
                if (!fl) {
                    res.status = PreprocessStatus::Degenerate;
                    res.reason = "relator " + t.name(w[0]) + " kills a finite-factor element";
                    res.spec = spec;
                    res.pres = PregroupPresentation::make(t, rels);
                    return res;
                }
                gen = fl->gen;
                subst[w[0]] = {};
                subst[t.sigma(w[0])] = {};
                res.log.push_back("eliminated " + spec.free[gen].name + " = 1");
            } else if (w[0] == w[1]) {
                // w is x^2 and x is not yet self-inverse, so x is a free letter
                auto fl = free_letter(spec, w[0]);
                gen = fl->gen;
                ns.free[gen].involution = true;
                Elem g = fl->inverse ? t.sigma(w[0]) : w[0];
                rename[t.sigma(g)] = g;
                res.log.push_back("made " + spec.free[gen].name + " self-inverse");
                gen = -1;
            } else {
                auto f0 = free_letter(spec, w[0]);
                auto f1 = free_letter(spec, w[1]);
                if (!f0 && !f1) {
                    res.status = PreprocessStatus::Degenerate;
                    res.reason = "relator " + word_to_string(t, w) + " identifies finite-factor elements";
                    res.spec = spec;
                    res.pres = PregroupPresentation::make(t, rels);
                    return res;
                }
                int pick = (!f1 || (f0 && f0->gen <= f1->gen)) ? 0 : 1;
                FreeLetter fl = pick == 0 ? *f0 : *f1;
                Elem other = w[1 - pick];
                gen = fl.gen;
                Elem g = fl.inverse ? t.sigma(w[pick]) : w[pick];
                // letter = sigma(other)
                Word gimg = fl.inverse ? Word{other} : Word{t.sigma(other)};
                subst[g] = gimg;
                subst[t.sigma(g)] = inverse_word(t, gimg);
                res.log.push_back("eliminated " + spec.free[gen].name + " = " + word_to_string(t, gimg));
            }
            if (gen >= 0) ns.free.erase(ns.free.begin() + gen);
            PregroupTable nt = construct_pregroup(ns);
            rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(*shortest));
            rels = remap(t, nt, rels, subst, rename);
            res.letter_image = remap(t, nt, res.letter_image, subst, rename);
            spec = std::move(ns);
            t = std::move(nt);
            continue;
        }
        if (shorten_common_prefix(t, rels, res.log)) continue;
        break;
    }
    res.spec = spec;
    return finish(std::move(t), std::move(rels), std::move(res));
}

PreprocessResult preprocess_table(PregroupTable t, std::vector<Word> relators) {
    PreprocessResult res;
    res.letter_image.assign(t.size(), {});
    for (Elem e = 1; e < t.size(); ++e) res.letter_image[e] = {e};
    std::vector<Word> rels = relators;
    for (;;) {
        rels = tidy(t, rels);
        bool short_rel = false;
        for (const auto& w : rels) short_rel |= w.size() <= 2;
        if (short_rel) break;
        if (!shorten_common_prefix(t, rels, res.log)) break;
    }
    return finish(std::move(t), std::move(rels), std::move(res));
}

} // namespace rsym
