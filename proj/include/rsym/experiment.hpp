#pragma once

#include "rsym/presentation.hpp"
#include "rsym/rational.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace rsym {

struct ExperimentPreset {
    std::string name;
    FreeProductSpec spec;
    int relators = 1;  // relators per trial
};

// free2, free10, free100 (rank k), c2c3, c3c3, c3c3c3
ExperimentPreset experiment_preset(const std::string& name, int relators);
std::vector<std::string> preset_names();

// One random relator of the given length following the sampling rule for
// the preset's constructor.
Word random_relator(const FreeProductSpec& spec, const PregroupTable& t, int length, std::mt19937_64& rng);

struct TrialOutcome {
    std::vector<Word> relators;
    PreprocessStatus pre = PreprocessStatus::Ok;
    bool unsupported = false;
    bool verified = false;
};

struct ExperimentResult {
    std::vector<TrialOutcome> trials;
    int successes = 0;
};

ExperimentResult run_experiment(const ExperimentPreset& p, int length, int trials, std::uint64_t seed, const Rational& eps);

} // namespace rsym
