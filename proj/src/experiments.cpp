#include "thetapr/experiments.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>

namespace thetapr::experiments {

namespace {

// splitmix64 step (Steele, Lea, Flood; public-domain constants).
std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Run `trials` independent jobs, optionally across threads. Job i writes
// only slot i of its output, so the result is thread-count independent.
void for_each_trial(int trials, int threads, const std::function<void(int)>& job) {
    const int nthreads = std::max(1, std::min<int>(
        threads, static_cast<int>(std::thread::hardware_concurrency())));
    if (nthreads <= 1 || trials < 2) {
        for (int i = 0; i < trials; ++i) job(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int w = 0; w < nthreads; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < trials; i += nthreads) job(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace

Rng Rng::for_trial(std::uint64_t seed, std::uint64_t trial) {
    // Two mixing rounds decorrelate (seed, trial) pairs.
    std::uint64_t s = seed;
    const std::uint64_t a = splitmix64(s);
    s = a ^ (trial * 0xD1342543DE82EF95ull + 0x2545F4914F6CDD1Dull);
    splitmix64(s);
    return Rng(s);
}

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::next_unit() {
    // 53 random bits into (0, 1); never returns 0.
    const std::uint64_t bits = next_u64() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double Rng::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

Cx Rng::next_complex_gaussian() {
    const double re = next_gaussian();
    const double im = next_gaussian();
    return Cx(re, im);
}

VectorSystem random_system(int d, int m, std::uint64_t seed) {
    if (d < 1 || m < 1)
        throw InvalidInput("random_system: d and m must be positive");
    Rng rng(seed);
    CMatrix f(d, m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < d; ++i)
            f(i, j) = rng.next_complex_gaussian();
    return VectorSystem(d, m, std::move(f));
}

moebius::MoebiusMap random_u11_map(std::uint64_t seed) {
    Rng rng(seed);
    const double r = 1.5 * rng.next_unit();
    const double phi_a = 2.0 * std::numbers::pi * rng.next_unit();
    const double phi_b = 2.0 * std::numbers::pi * rng.next_unit();
    const Cx a = std::polar(std::sqrt(1.0 + r * r), phi_a);
    const Cx b = std::polar(r, phi_b);
    return moebius::MoebiusMap(a, b, std::conj(b), std::conj(a));
}

PhaseSet map_phase_set(const moebius::MoebiusMap& map, const PhaseSet& t) {
    std::vector<Cx> out;
    out.reserve(static_cast<std::size_t>(t.size()));
    for (int i = 0; i < t.size(); ++i) {
        const moebius::ExtCx w = map(t[i]);
        if (w.is_infinity())
            throw DegenerateInput("map_phase_set: map sends a phase to infinity");
        out.push_back(w.value() / std::abs(w.value()));
    }
    return PhaseSet(std::move(out));
}

namespace {

void accumulate_stats(ExperimentReport& rep, const std::vector<char>& does,
                      const std::vector<std::uint64_t>& checked,
                      bool record_outcomes) {
    for (std::size_t i = 0; i < checked.size(); ++i) {
        rep.total_assignments_checked += checked[i];
        rep.max_assignments_checked = std::max(rep.max_assignments_checked, checked[i]);
    }
    if (record_outcomes) {
        rep.outcomes.reserve(does.size());
        for (char c : does) rep.outcomes.push_back(c ? 1 : 0);
    }
}

ExperimentReport init_report(std::string name, int d, int m,
                             const PhaseSet& t, int trials, std::uint64_t seed,
                             const ExperimentConfig& base) {
    ExperimentReport rep;
    rep.experiment = std::move(name);
    rep.config = base;
    rep.config.d = d;
    rep.config.m = m;
    rep.config.trials = trials;
    rep.config.seed = seed;
    if (rep.config.phase_spec.empty())
        rep.config.phase_spec = std::to_string(t.size()) + " phases";
    return rep;
}

} // namespace

ExperimentReport run_threshold_study(int d, const std::string& regime,
                                     const PhaseSet& t, int trials,
                                     std::uint64_t seed,
                                     const ExperimentConfig& base) {
    if (d < 2)
        throw InvalidInput("run_threshold_study: requires d >= 2");
    if (trials < 1)
        throw InvalidInput("run_threshold_study: trials must be >= 1");
    int m = 0;
    if (regime == "2d-2") {
        if (t.size() < 2)
            throw InvalidInput("run_threshold_study: regime 2d-2 needs |Theta| >= 2");
        m = 2 * d - 2;
    } else if (regime == "2d-1") {
        if (t.size() < 3)
            throw InvalidInput("run_threshold_study: regime 2d-1 needs |Theta| >= 3");
        m = 2 * d - 1;
    } else {
        throw InvalidInput("run_threshold_study: regime must be 2d-2 or 2d-1");
    }

    auto start = std::chrono::steady_clock::now();
    ExperimentReport rep = init_report("threshold", d, m, t, trials, seed, base);
    std::vector<char> does(static_cast<std::size_t>(trials), 0);
    std::vector<std::uint64_t> checked(static_cast<std::size_t>(trials), 0);
    std::vector<std::optional<prcore::Witness>> wit(static_cast<std::size_t>(trials));
    for_each_trial(trials, base.threads, [&](int i) {
        const VectorSystem g =
            random_system(d, m, Rng::for_trial(seed, static_cast<std::uint64_t>(i)).next_u64());
        const auto r = prcore::decide_theta_pr(g, t, base.engine);
        does[static_cast<std::size_t>(i)] = r.does_pr ? 1 : 0;
        checked[static_cast<std::size_t>(i)] = r.assignments_checked;
        wit[static_cast<std::size_t>(i)] = r.witness;
    });
    for (int i = 0; i < trials; ++i) {
        if (does[static_cast<std::size_t>(i)]) {
            ++rep.pass_count;
        } else {
            ++rep.fail_count;
            if (!rep.example_witness) rep.example_witness = wit[static_cast<std::size_t>(i)];
        }
    }
    accumulate_stats(rep, does, checked, base.record_outcomes);
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

ExperimentReport run_genericity_study(int d, int m, const PhaseSet& t, int trials,
                                      std::uint64_t seed,
                                      const ExperimentConfig& base) {
    if (d < 2 || m < 2 * d)
        throw InvalidInput("run_genericity_study: requires d >= 2 and m >= 2d");
    if (trials < 1)
        throw InvalidInput("run_genericity_study: trials must be >= 1");
    auto start = std::chrono::steady_clock::now();
    ExperimentReport rep = init_report("genericity", d, m, t, trials, seed, base);
    std::vector<char> does(static_cast<std::size_t>(trials), 0);
    std::vector<std::uint64_t> checked(static_cast<std::size_t>(trials), 0);
    for_each_trial(trials, base.threads, [&](int i) {
        const VectorSystem g =
            random_system(d, m, Rng::for_trial(seed, static_cast<std::uint64_t>(i)).next_u64());
        const auto r = prcore::decide_theta_pr(g, t, base.engine);
        does[static_cast<std::size_t>(i)] = r.does_pr ? 1 : 0;
        checked[static_cast<std::size_t>(i)] = r.assignments_checked;
    });
    for (char c : does) (c ? ++rep.pass_count : ++rep.fail_count);
    accumulate_stats(rep, does, checked, base.record_outcomes);
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

ExperimentReport run_minimality_study(int d, const PhaseSet& t, int trials,
                                      std::uint64_t seed,
                                      const ExperimentConfig& base) {
    if (d < 2)
        throw InvalidInput("run_minimality_study: requires d >= 2");
    if (trials < 1)
        throw InvalidInput("run_minimality_study: trials must be >= 1");
    auto start = std::chrono::steady_clock::now();
    ExperimentReport rep = init_report("minimality", d, 0, t, trials, seed, base);
    rep.theoretical_minimal_m = t.size() == 1 ? d : (t.size() == 2 ? 2 * d - 1 : 2 * d);

    for (int m = 1; m <= 2 * d + 1; ++m) {
        std::vector<char> does(static_cast<std::size_t>(trials), 0);
        std::vector<std::uint64_t> checked(static_cast<std::size_t>(trials), 0);
        for_each_trial(trials, base.threads, [&](int i) {
            // Trial streams depend on (seed, m, i) so that every m is an
            // independent batch.
            const std::uint64_t trial_tag =
                static_cast<std::uint64_t>(m) * 1000003ull + static_cast<std::uint64_t>(i);
            const VectorSystem g =
                random_system(d, m, Rng::for_trial(seed, trial_tag).next_u64());
            const auto r = prcore::decide_theta_pr(g, t, base.engine);
            does[static_cast<std::size_t>(i)] = r.does_pr ? 1 : 0;
            checked[static_cast<std::size_t>(i)] = r.assignments_checked;
        });
        accumulate_stats(rep, does, checked, /*record_outcomes=*/false);
        int successes = 0;
        for (char c : does) successes += c ? 1 : 0;
        rep.empirical_counts_per_m.push_back(successes);
        if (successes > 0 && rep.empirical_minimal_m < 0) {
            rep.empirical_minimal_m = m;
            rep.pass_count = successes;
            rep.fail_count = trials - successes;
            break;
        }
    }
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

ExperimentReport run_moebius_invariance_study(int d, int m, const PhaseSet& t,
                                              int trials, std::uint64_t seed,
                                              const ExperimentConfig& base) {
    if (d < 1 || m < 1)
        throw InvalidInput("run_moebius_invariance_study: bad dimensions");
    if (trials < 1)
        throw InvalidInput("run_moebius_invariance_study: trials must be >= 1");
    auto start = std::chrono::steady_clock::now();
    ExperimentReport rep = init_report("invariance", d, m, t, trials, seed, base);
    std::vector<char> mismatch(static_cast<std::size_t>(trials), 0);
    std::vector<char> does(static_cast<std::size_t>(trials), 0);
    std::vector<std::uint64_t> checked(static_cast<std::size_t>(trials), 0);
    for_each_trial(trials, base.threads, [&](int i) {
        Rng stream = Rng::for_trial(seed, static_cast<std::uint64_t>(i));
        const VectorSystem g = random_system(d, m, stream.next_u64());
        const moebius::MoebiusMap map = random_u11_map(stream.next_u64());
        const PhaseSet mapped = map_phase_set(map, t);
        const auto before = prcore::decide_theta_pr(g, t, base.engine);
        const auto after = prcore::decide_theta_pr(g, mapped, base.engine);
        does[static_cast<std::size_t>(i)] = before.does_pr ? 1 : 0;
        checked[static_cast<std::size_t>(i)] =
            before.assignments_checked + after.assignments_checked;
        mismatch[static_cast<std::size_t>(i)] = before.does_pr != after.does_pr ? 1 : 0;
    });
    for (int i = 0; i < trials; ++i) {
        (does[static_cast<std::size_t>(i)] ? ++rep.pass_count : ++rep.fail_count);
        rep.mismatches += mismatch[static_cast<std::size_t>(i)];
    }
    accumulate_stats(rep, does, checked, base.record_outcomes);
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

} // namespace thetapr::experiments
