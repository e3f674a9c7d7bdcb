#include "doctest.h"
#include "oracles.hpp"
#include "rsym/catalog.hpp"
#include "rsym/io.hpp"
#include "rsym/solver.hpp"

#include <random>

using namespace rsym;

namespace {

struct Setup {
    PreprocessResult pre;
    VerifierTables vt;
    SolverTables st;
};

Setup make(PreprocessResult pre) {
    REQUIRE(pre.status == PreprocessStatus::Ok);
    Setup s{pre, build_tables(pre.pres), {}};
    s.st = build_solver_tables(s.vt);
    return s;
}

oracle::PSL27 image(const PregroupTable& t, const Word& w) {
    const oracle::PSL27 X{0, 6, 1, 0}, Yl{0, 6, 1, 1};
    oracle::PSL27 m;
    for (Elem e : w) {
        const std::string& n = t.name(e);
        m = m * (n == "x" ? X : n == "y" ? Yl : oracle::power(Yl, 2));
    }
    return m;
}

Word random_word(const PregroupTable& t, std::mt19937_64& rng, int len) {
    Word w;
    std::uniform_int_distribution<int> d(1, t.size() - 1);
    for (int i = 0; i < len; ++i) w.push_back(d(rng));
    return w;
}

// product of up to five conjugates of relators and their inverses
Word conjugate_product(const PregroupPresentation& p, std::mt19937_64& rng) {
    Word w;
    const int k = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < k; ++i) {
        Word g = random_word(p.table, rng, static_cast<int>(rng() % 12));
        Word r = p.relators[rng() % p.relators.size()];
        if (rng() % 2) r = inverse_word(p.table, r);
        std::size_t rot = rng() % r.size();
        r = oracle::rotate(r, rot);
        Word gi = inverse_word(p.table, g);
        w.insert(w.end(), g.begin(), g.end());
        w.insert(w.end(), r.begin(), r.end());
        w.insert(w.end(), gi.begin(), gi.end());
    }
    return w;
}

} // namespace

TEST_CASE("terminal steps") {
    Setup s = make(triangle_group(3, 7));
    const PregroupTable& t = s.vt.pres.table;
    Elem x = *t.find("x"), y = *t.find("y"), Y = *t.find("Y");
    CHECK(boundary_blob_bound(t, Y, Y) == Rational(-1, 4));
    CHECK(boundary_blob_bound(t, y, x) == Rational(-1, 3));
    for (std::size_t p = 0; p < s.st.t.places.size(); ++p) {
        const Place& pl = s.st.t.places[p];
        if (pl.terminal) {
            CHECK(s.st.steps[p].empty());
            CHECK(terminal_one_step(s.st, static_cast<int>(p)).empty());
            continue;
        }
        for (const OneStepEntry& e : s.st.steps[p]) {
            CHECK(e.chi <= Rational(-1, 6));
            if (s.st.t.places[e.q].terminal && pl.colour == Colour::R) CHECK(e.chi <= Rational(-1, 4));
        }
    }
    CHECK(s.st.terminal.size() == 2);
}

TEST_CASE("solver verification grid") {
    Setup t37 = make(triangle_group(3, 7));
    CHECK_FALSE(verify_solver(t37.st, SolverMode::Plain).ok);
    CHECK(verify_solver(t37.st, SolverMode::TrivInt).ok);
    Setup t38 = make(triangle_group(3, 8));
    CHECK(verify_solver(t38.st, SolverMode::Plain).ok);
    CHECK(verify_solver(t38.st, SolverMode::TrivInt).ok);
    for (auto [m, n] : {std::pair{4, 5}, {5, 5}, {3, 10}}) {
        Setup s = make(triangle_group(m, n));
        CHECK(verify_solver(s.st, SolverMode::TrivInt).ok);
    }
}

TEST_CASE("trivint hypothesis") {
    CHECK(trivint_hypothesis(triangle_group(3, 7).pres));
    LoadedPresentation f = load_presentation_text(R"({"pregroup":{"free_product":{"free_rank":2}},"relators":["aabAbbaB"]})");
    CHECK(trivint_hypothesis(f.pre.pres));
    // amalgam: a1 and b1 intermult through i2 but do not multiply
    LoadedPresentation am = load_presentation_text(R"({"pregroup":{"table":{
        "elements":["1","a1","a3","a5","b1","b3","b5","i2","i4"],
        "sigma":["1","a5","a3","a1","b5","b3","b1","i4","i2"],
        "mult":[
          ["1","a1","a3","a5","b1","b3","b5","i2","i4"],
          ["a1","i2","i4","1",null,null,null,"a3","a5"],
          ["a3","i4","1","i2",null,null,null,"a5","a1"],
          ["a5","1","i2","i4",null,null,null,"a1","a3"],
          ["b1",null,null,null,"i2","i4","1","b3","b5"],
          ["b3",null,null,null,"i4","1","i2","b5","b1"],
          ["b5",null,null,null,"1","i2","i4","b1","b3"],
          ["i2","a3","a5","a1","b3","b5","b1","i4","1"],
          ["i4","a5","a1","a3","b5","b1","b3","1","i2"]]}},
        "relators":["a1 b1 a3 b1"]})");
    CHECK_FALSE(trivint_hypothesis(am.pre.pres));
}

TEST_CASE("rewrite list") {
    Setup s = make(triangle_group(3, 7));
    const PregroupTable& t = s.vt.pres.table;
    RewriteList plain = build_rewrite_list(s.vt, SolverMode::Plain);
    REQUIRE_FALSE(plain.rules.empty());
    bool found = false;
    for (const RewriteRule& r : plain.rules) {
        CHECK(r.u.size() == 8);
        CHECK(r.v.size() == 6);
        CHECK(r.need == 0);
        if (word_to_string(t, r.u) == "xyxyxyxy" && word_to_string(t, r.v) == "YxYxYx") found = true;
        Word full = r.u;
        Word vi = inverse_word(t, r.v);
        full.insert(full.end(), vi.begin(), vi.end());
        bool conj = false;
        for (const Word& rel : s.vt.pres.relators)
            for (const Word& cand : {rel, inverse_word(t, rel)})
                for (std::size_t k = 0; k < cand.size(); ++k) conj = conj || oracle::rotate(cand, k) == full;
        CHECK(conj);
    }
    CHECK(found);
    RewriteList ti = build_rewrite_list(s.vt, SolverMode::TrivInt);
    CHECK(ti.rules.size() > plain.rules.size());
    // additions may keep the length but must force enough reductions to shrink
    for (const RewriteRule& r : ti.rules) {
        CHECK(r.v.size() < r.u.size() + static_cast<std::size_t>(r.need));
        CHECK(r.need >= 0);
        if (r.need == 0) CHECK(r.u.size() > r.v.size());
    }

    // trie lookups reach every rule
    for (std::size_t i = 0; i < ti.rules.size(); ++i) {
        int node = 0;
        for (Elem e : ti.rules[i].u) {
            node = ti.child(node, e);
            REQUIRE(node >= 0);
        }
        const auto& at = ti.rules_at(node);
        CHECK(std::find(at.begin(), at.end(), static_cast<int>(i)) != at.end());
    }
}

TEST_CASE("solve examples on Tri(3,7)") {
    Setup s = make(triangle_group(3, 7));
    const PregroupTable& t = s.vt.pres.table;
    RSymSolver solver(s.vt.pres, build_rewrite_list(s.vt, SolverMode::TrivInt));
    CHECK(solver.solve(parse_word(t, "(xy)^7")));
    CHECK(solver.solve(parse_word(t, "x (xy)^7 x")));
    CHECK_FALSE(solver.solve(parse_word(t, "xy")));
    CHECK(solver.solve({}));
    CHECK(solver.solve(parse_word(t, "yyy")));
    CHECK(solver.solve(parse_word(t, "(Yx)^7 (xy)^7")));
    CHECK_FALSE(image(t, parse_word(t, "xy")).is_identity());
    CHECK(image(t, parse_word(t, "(xy)^7")).is_identity());
}

TEST_CASE("random words on Tri(3,7)") {
    Setup s = make(triangle_group(3, 7));
    const PregroupPresentation& p = s.vt.pres;
    RSymSolver solver(p, build_rewrite_list(s.vt, SolverMode::TrivInt));
    std::mt19937_64 rng(21);
    std::uint64_t worst = 0;
    for (int i = 0; i < 200; ++i) {
        Word w = conjugate_product(p, rng);
        REQUIRE(image(p.table, w).is_identity());
        SolveStats st;
        CHECK(solver.solve(w, &st));
        if (!w.empty()) worst = std::max<std::uint64_t>(worst, st.letter_ops / w.size());
    }
    CHECK(worst <= 40);
    int nontrivial = 0;
    for (int i = 0; i < 400; ++i) {
        Word w = random_word(p.table, rng, 1 + static_cast<int>(rng() % 60));
        bool triv = image(p.table, w).is_identity();
        bool got = solver.solve(w);
        if (!triv) {
            ++nontrivial;
            CHECK_FALSE(got);
        }
    }
    CHECK(nontrivial > 300);
}

TEST_CASE("random words on other solvable presentations") {
    for (auto [m, n, mode] : {std::tuple{3, 8, SolverMode::Plain}, {4, 5, SolverMode::TrivInt}, {3, 10, SolverMode::Plain}}) {
        Setup s = make(triangle_group(m, n));
        REQUIRE(verify_solver(s.st, mode).ok);
        const PregroupPresentation& p = s.vt.pres;
        RSymSolver solver(p, build_rewrite_list(s.vt, mode));
        std::mt19937_64 rng(static_cast<unsigned>(m * 100 + n));
        for (int i = 0; i < 100; ++i) CHECK(solver.solve(conjugate_product(p, rng)));
    }
    LoadedPresentation surf = load_presentation_text(R"({"pregroup":{"free_product":{"free_rank":4}},"relators":["a b A B c d C D"]})");
    Setup s = make(surf.pre);
    REQUIRE(verify_solver(s.st, SolverMode::Plain).ok);
    RSymSolver solver(s.vt.pres, build_rewrite_list(s.vt, SolverMode::Plain));
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) CHECK(solver.solve(conjugate_product(s.vt.pres, rng)));
    const PregroupTable& t = s.vt.pres.table;
    CHECK_FALSE(solver.solve(parse_word(t, "a b A B")));
    CHECK_FALSE(solver.solve(parse_word(t, "a")));
}

TEST_CASE("dehn bounds") {
    SUBCASE("Tri(3,7) at 1/6") {
        PreprocessResult pre = triangle_group(3, 7);
        const Rational eps(1, 6);
        DehnBoundReport d = dehn_bounds(pre.pres, eps, SolverMode::TrivInt);
        const int r = 14;
        CHECK(d.r == r);
        CHECK(d.f_slope == Rational(6 + r) + Rational(3 + r) / (2 * eps));
        CHECK(d.f_const == -Rational(3 + r) / eps);
        CHECK(d.f_slope == 71);
        CHECK(d.f_const == -102);
        CHECK(d.part == "iii");
        CHECK(d.pd_slope == 69);
        CHECK(d.pd_const == -102);
        REQUIRE(d.solver_pd_slope.has_value());
        CHECK(*d.solver_pd_slope == 3);
        CHECK(d.lambda == Rational(d.r_full) * d.lambda0 + Rational(1, 2));
        CHECK(d.gamma == 384 * d.lambda * Rational(d.r_full) * Rational(d.r_full - 1) + 64);
        CHECK(d.gamma > 0);
        CHECK(d.d_slope == Rational(d.r_i) * 3 + Rational(1, 2));
    }
    SUBCASE("free presentation at 1/10") {
        LoadedPresentation surf = load_presentation_text(R"({"pregroup":{"free_product":{"free_rank":4}},"relators":["a b A B c d C D"]})");
        DehnBoundReport d = dehn_bounds(surf.pre.pres, Rational(1, 10), SolverMode::Plain);
        CHECK(d.part == "ii");
        CHECK(d.pd_slope == 6);
        CHECK(d.pd_const == -10);
        CHECK(d.r_i == 0);
        CHECK(*d.solver_pd_slope == 1);
    }
    SUBCASE("no solver") {
        DehnBoundReport d = dehn_bounds(triangle_group(3, 7).pres, Rational(1, 10), std::nullopt);
        CHECK_FALSE(d.solver_pd_slope.has_value());
        CHECK(d.f_slope == 105);
        CHECK(d.f_const == -170);
        CHECK(d.pd_slope == 103);
    }
}
