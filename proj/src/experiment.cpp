#include "rsym/experiment.hpp"

#include "rsym/catalog.hpp"
#include "rsym/verifier.hpp"

#include <future>
#include <stdexcept>

namespace rsym {

namespace {

struct FactorLetters {
    bool free = false;
    std::vector<Elem> letters;
};

// Elements grouped by free-product factor; all free generators form one factor.
std::vector<FactorLetters> factor_letters(const FreeProductSpec& spec, const PregroupTable& t) {
    std::vector<FactorLetters> out;
    Elem id = 1;
    for (const auto& f : spec.factors) {
        FactorLetters fl;
        for (std::size_t i = 0; i < f.names.size(); ++i) fl.letters.push_back(id++);
        out.push_back(std::move(fl));
    }
    if (!spec.free.empty()) {
        FactorLetters fl;
        fl.free = true;
        for (Elem e = id; e < t.size(); ++e) fl.letters.push_back(e);
        out.push_back(std::move(fl));
    }
    return out;
}

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

} // namespace

ExperimentPreset experiment_preset(const std::string& name, int relators) {
    ExperimentPreset p;
    p.name = name;
    p.relators = relators;
    if (name.rfind("free", 0) == 0) {
        const std::string digits = name.substr(4);
        if (digits.empty() || digits.size() > 3 || digits.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("unknown preset '" + name + "'");
        const int k = std::stoi(digits);
        if (k < 1 || k > 200) throw std::invalid_argument("free rank must be 1..200");
        p.spec = free_group_spec(k);
    } else if (name == "c2c3") {
        p.spec = c2_cm_spec(3);
    } else if (name == "c3c3" || name == "c3c3c3") {
        const char* gens[] = {"a", "b", "c"};
        for (int i = 0; i < (name == "c3c3" ? 2 : 3); ++i) p.spec.factors.push_back(cyclic_factor(3, {gens[i]}));
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return p;
}

std::vector<std::string> preset_names() { return {"free2", "free10", "free100", "c2c3", "c3c3", "c3c3c3"}; }

Word random_relator(const FreeProductSpec& spec, const PregroupTable& t, int length, std::mt19937_64& rng) {
    const auto groups = factor_letters(spec, t);
    if (groups.empty()) throw std::invalid_argument("empty constructor");
    const bool only_free = groups.size() == 1 && groups[0].free;
    if (groups.size() == 1 && !only_free && length > 1) throw std::invalid_argument("one finite factor cannot give reduced words");
    for (;;) {
        Word w;
        int prev = -1;
        while (static_cast<int>(w.size()) < length) {
            std::vector<int> allowed;
            for (int g = 0; g < static_cast<int>(groups.size()); ++g)
                if (g != prev || groups[g].free) allowed.push_back(g);
            int g = pick(allowed, rng);
            Elem e;
            do e = pick(groups[g].letters, rng);
            while (g == prev && e == t.sigma(w.back()));
            w.push_back(e);
            prev = g;
        }
        // free-group quotients use freely cyclically reduced words
        if (!only_free || is_cyclically_p_reduced(t, w)) return w;
    }
}

ExperimentResult run_experiment(const ExperimentPreset& p, int length, int trials, std::uint64_t seed, const Rational& eps) {
    const PregroupTable t = construct_pregroup(p.spec);
    std::mt19937_64 rng(seed);
    ExperimentResult res;
    res.trials.resize(trials);
    // words are drawn sequentially so the batch depends only on the seed
    for (auto& tr : res.trials)
        for (int i = 0; i < p.relators; ++i) tr.relators.push_back(random_relator(p.spec, t, length, rng));

    std::vector<std::future<void>> jobs;
    for (auto& tr : res.trials)
        jobs.push_back(std::async(std::launch::async, [&p, &eps, &tr] {
            PreprocessResult pr = preprocess(p.spec, tr.relators);
            tr.pre = pr.status;
            if (pr.status != PreprocessStatus::Ok) return;
            try {
                tr.verified = rsym_verify(pr.pres, eps).ok;
            } catch (const UnsupportedInput&) {
                tr.unsupported = true;
            }
        }));
    for (auto& j : jobs) j.get();
    for (const auto& tr : res.trials) res.successes += tr.verified;
    return res;
}

} // namespace rsym
