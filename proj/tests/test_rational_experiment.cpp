#include "doctest.h"
#include "rsym/experiment.hpp"
#include "rsym/rational.hpp"

#include <limits>

using namespace rsym;

TEST_CASE("rational arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -3) == Rational(-1, 3));
    CHECK(Rational(1, 6) + Rational(1, 3) == Rational(1, 2));
    CHECK(Rational(1, 6) - Rational(1, 3) == Rational(-1, 6));
    CHECK(Rational(3, 4) * Rational(2, 9) == Rational(1, 6));
    CHECK(Rational(3, 4) / Rational(3, 8) == 2);
    CHECK(Rational(-5, 14) < Rational(-1, 3));
    CHECK(Rational(-3, 10) > Rational(-1, 3));
    CHECK(Rational(13, 2).ceil() == 7);
    CHECK(Rational(-13, 2).ceil() == -6);
    CHECK(Rational(-13, 2).floor() == -7);
    CHECK(Rational(6).ceil() == 6);
    CHECK(Rational::parse("1/10") == Rational(1, 10));
    CHECK(Rational::parse("-3") == -3);
    CHECK(Rational::parse("2/-4") == Rational(-1, 2));
    CHECK(Rational(-43, 2).str() == "-43/2");
    CHECK(Rational(4).str() == "4");
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK_THROWS(Rational::parse("x"));
    CHECK_THROWS(Rational::parse("1/2/3"));
    CHECK_THROWS(Rational(1) / Rational(0));
    const auto big = std::numeric_limits<std::int64_t>::max();
    CHECK_THROWS(Rational(big) * Rational(big));
    CHECK(Rational(big, 3) * Rational(3, big) == 1);
}

TEST_CASE("random relators") {
    std::mt19937_64 rng(1);
    for (const std::string& name : preset_names()) {
        ExperimentPreset p = experiment_preset(name, 1);
        PregroupTable t = construct_pregroup(p.spec);
        for (int i = 0; i < 50; ++i) {
            Word w = random_relator(p.spec, t, 12, rng);
            CHECK(w.size() == 12);
            CHECK(is_p_reduced(t, w));
            for (Elem e : w) CHECK(e != kIdentity);
        }
    }
    CHECK_THROWS(experiment_preset("free0", 1));
    CHECK_THROWS(experiment_preset("c5c7", 1));
}

TEST_CASE("experiments depend only on the seed") {
    ExperimentPreset p = experiment_preset("free2", 2);
    ExperimentResult a = run_experiment(p, 16, 6, 42, Rational(1, 10));
    ExperimentResult b = run_experiment(p, 16, 6, 42, Rational(1, 10));
    REQUIRE(a.trials.size() == 6);
    CHECK(a.successes == b.successes);
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
        CHECK(a.trials[i].relators == b.trials[i].relators);
        CHECK(a.trials[i].verified == b.trials[i].verified);
    }
    ExperimentResult c = run_experiment(p, 16, 6, 43, Rational(1, 10));
    bool differ = false;
    for (std::size_t i = 0; i < c.trials.size(); ++i) differ = differ || c.trials[i].relators != a.trials[i].relators;
    CHECK(differ);
}
