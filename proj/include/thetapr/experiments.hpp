#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thetapr/moebius.hpp"
#include "thetapr/prcore.hpp"

namespace thetapr::experiments {

using phases::PhaseSet;
using prcore::VectorSystem;

// Counter-based generator (splitmix64) with Box-Muller for Gaussians; the
// whole pipeline is spelled out here so reports reproduce across platforms,
// unlike std::normal_distribution. Per-trial streams are derived from
// (seed, trial index).
inline constexpr const char* kGeneratorId = "splitmix64+boxmuller-v1";

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    static Rng for_trial(std::uint64_t seed, std::uint64_t trial);

    std::uint64_t next_u64();
    double next_unit();       // uniform in (0, 1)
    double next_gaussian();   // standard normal
    Cx next_complex_gaussian(); // independent N(0,1) real and imaginary parts

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// d x m system with i.i.d. complex Gaussian entries; deterministic per seed.
VectorSystem random_system(int d, int m, std::uint64_t seed);

// Random circle automorphism (a, b; conj b, conj a) with |a|^2 - |b|^2 = 1.
moebius::MoebiusMap random_u11_map(std::uint64_t seed);

struct ExperimentConfig {
    int d = 2;
    int m = 0;
    std::string phase_spec;       // textual echo for the report
    int trials = 100;
    std::uint64_t seed = 0;
    prcore::EngineOptions engine; // per-decision options
    int threads = 1;              // trial-level parallelism
    bool record_outcomes = false; // keep per-trial outcomes in the report
};

struct ExperimentReport {
    std::string experiment;
    ExperimentConfig config;
    int pass_count = 0; // trials in which the system does Theta-PR
    int fail_count = 0; // trials in which it fails
    int mismatches = 0; // invariance study only
    std::optional<prcore::Witness> example_witness;
    std::vector<int> outcomes;               // per trial, when record_outcomes
    std::vector<int> empirical_counts_per_m; // minimality study only
    int empirical_minimal_m = -1;            // minimality study only
    int theoretical_minimal_m = -1;          // minimality study only
    std::uint64_t total_assignments_checked = 0;
    std::uint64_t max_assignments_checked = 0;
    double elapsed_seconds = 0.0; // informational; not serialized
};

// Every trial inside the stated failure regime must fail.
// regime "2d-2" needs |T| >= 2, regime "2d-1" needs |T| >= 3.
ExperimentReport run_threshold_study(int d, const std::string& regime,
                                     const PhaseSet& t, int trials,
                                     std::uint64_t seed,
                                     const ExperimentConfig& base = {});

// Fraction of random systems with m >= 2d columns doing Theta-PR
// (probability-one event, so the expected pass count equals trials).
ExperimentReport run_genericity_study(int d, int m, const PhaseSet& t, int trials,
                                      std::uint64_t seed,
                                      const ExperimentConfig& base = {});

// Empirical minimal number of vectors: smallest m <= 2d + 1 at which some
// random trial does Theta-PR, with an all-fail confirmation at m - 1. The
// report carries the theoretical value (d, 2d-1, or 2d by |T|) alongside.
ExperimentReport run_minimality_study(int d, const PhaseSet& t, int trials,
                                      std::uint64_t seed,
                                      const ExperimentConfig& base = {});

// Per trial, the decision for Theta must match the decision for M(Theta)
// under a fresh random circle automorphism; mismatches are counted.
ExperimentReport run_moebius_invariance_study(int d, int m, const PhaseSet& t,
                                              int trials, std::uint64_t seed,
                                              const ExperimentConfig& base = {});

// Image of a phase set under a circle automorphism (renormalized onto the
// circle to absorb roundoff).
PhaseSet map_phase_set(const moebius::MoebiusMap& map, const PhaseSet& t);

} // namespace thetapr::experiments
