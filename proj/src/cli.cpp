#include "thetapr/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "thetapr/json_io.hpp"

namespace thetapr::cli {

namespace {

using json_io::json;

json load_json_arg(const std::string& arg) {
    std::string text = arg;
    if (!arg.empty() && arg.front() != '{' && arg.front() != '[') {
        std::ifstream in(arg);
        if (!in)
            throw InvalidInput("cannot open file: " + arg);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("JSON parse error: ") + e.what());
    }
}

// "re" or "re,im".
Cx parse_complex_arg(const std::string& s) {
    std::istringstream in(s);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(in >> re))
        throw InvalidInput("expected a complex number as re or re,im: " + s);
    if (in >> comma) {
        if (comma != ',' || !(in >> im))
            throw InvalidInput("expected a complex number as re or re,im: " + s);
    }
    std::string rest;
    if (in >> rest)
        throw InvalidInput("trailing characters in complex number: " + s);
    return Cx(re, im);
}

struct GlobalOpts {
    double tol = Tolerance{}.rank_rel;
    std::uint64_t budget = prcore::EngineOptions{}.assignment_budget;
    int threads = 1;
    std::uint64_t seed = 1;

    prcore::EngineOptions engine() const {
        prcore::EngineOptions opts;
        opts.tol.rank_rel = tol;
        opts.assignment_budget = budget;
        opts.threads = threads;
        return opts;
    }
};

void add_global(CLI::App& app, GlobalOpts& g) {
    app.add_option("--tol", g.tol, "relative rank tolerance");
    app.add_option("--budget", g.budget, "assignment enumeration budget");
    app.add_option("--threads", g.threads, "worker threads");
    app.add_option("--seed", g.seed, "seed for randomized subcommands");
}

struct ArcArg {
    double start = 0.0;
    double length = 0.0;
};

ArcArg parse_arc_arg(const std::string& s) {
    std::istringstream in(s);
    ArcArg a;
    char comma = 0;
    if (!(in >> a.start >> comma >> a.length) || comma != ',')
        throw InvalidInput("expected an arc as start,length (radians): " + s);
    return a;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decision toolkit for phase retrieval with restricted phase sets"};
    app.require_subcommand(1);
    GlobalOpts g;
    add_global(app, g);

    // check
    std::string check_system, check_phases;
    auto* check = app.add_subcommand("check", "decide Theta-PR for a vector system");
    check->add_option("--system", check_system, "system JSON (file or inline)")->required();
    check->add_option("--phases", check_phases, "phase-set JSON (file or inline)")->required();

    // oracle-c2
    std::string c2a, c2b, c2c, c2_phases;
    bool c2_pr = false;
    auto* oracle = app.add_subcommand("oracle-c2",
                                      "closed-form decision for {(1,0),(a,1),(b,1),(c,1)}");
    oracle->add_option("--a", c2a, "parameter a as re or re,im")->required();
    oracle->add_option("--b", c2b, "parameter b")->required();
    oracle->add_option("--c", c2c, "parameter c")->required();
    oracle->add_option("--phases", c2_phases, "phase-set JSON with 2, 3 or 4 elements");
    oracle->add_flag("--pr", c2_pr, "decide classical PR (all phases) instead");

    // complement
    std::string comp_system;
    auto* comp = app.add_subcommand("complement", "complement property of a system");
    comp->add_option("--system", comp_system, "system JSON")->required();

    // spark
    std::string spark_system;
    auto* spark = app.add_subcommand("spark", "full-spark check");
    spark->add_option("--system", spark_system, "system JSON")->required();

    // moebius
    auto* moeb = app.add_subcommand("moebius", "circle-geometry helpers");
    moeb->require_subcommand(1);
    std::string mo_map, mo_z;
    auto* mo_apply = moeb->add_subcommand("apply", "apply a map to a point");
    mo_apply->add_option("--map", mo_map, "map JSON {\"matrix\": [[re,im] x 4]}")->required();
    mo_apply->add_option("--z", mo_z, "point as re or re,im")->required();
    std::string mo_arc_a, mo_arc_b;
    auto* mo_arc = moeb->add_subcommand("arc-map", "circle map carrying arc A onto arc B");
    mo_arc->add_option("--arc-a", mo_arc_a, "source arc start,length (radians)")->required();
    mo_arc->add_option("--arc-b", mo_arc_b, "target arc start,length (radians)")->required();
    std::string crz[4];
    auto* mo_cr = moeb->add_subcommand("cross-ratio", "cross ratio of four points");
    mo_cr->add_option("--z1", crz[0])->required();
    mo_cr->add_option("--z2", crz[1])->required();
    mo_cr->add_option("--z3", crz[2])->required();
    mo_cr->add_option("--z4", crz[3])->required();

    // expwitness
    int ew_n = 2;
    double ew_alpha = 3.0;
    int ew_points = 0;
    double ew_half_width = 0.0;
    int ew_count = 8;
    std::string ew_csv;
    auto* ew = app.add_subcommand("expwitness",
                                  "lattice witness functions and their residuals");
    ew->add_option("--n", ew_n, "number of phases (n-th roots of unity)")->required();
    ew->add_option("--alpha", ew_alpha, "lattice spacing alpha")->required();
    ew->add_option("--grid-points", ew_points, "grid sample count");
    ew->add_option("--grid-half-width", ew_half_width, "grid half width");
    ew->add_option("--count", ew_count, "lattice points per class in the vanishing check");
    ew->add_option("--csv", ew_csv, "write sampled witness functions to this CSV file");

    // experiment
    auto* exp = app.add_subcommand("experiment", "randomized seeded studies");
    exp->require_subcommand(1);
    int ex_d = 2, ex_m = 0, ex_trials = 100;
    bool ex_verbose = false;
    std::string ex_csv;
    std::string ex_phases = R"({"roots_of_unity":3})";
    std::string ex_regime = "2d-1";
    auto* ex_thr = exp->add_subcommand("threshold", "failure below the vector-count threshold");
    ex_thr->add_option("--d", ex_d)->required();
    ex_thr->add_option("--regime", ex_regime, "2d-2 or 2d-1");
    ex_thr->add_option("--phases", ex_phases);
    ex_thr->add_option("--trials", ex_trials);
    auto* ex_gen = exp->add_subcommand("genericity", "probability-one success at m >= 2d");
    ex_gen->add_option("--d", ex_d)->required();
    ex_gen->add_option("--m", ex_m, "vector count (default 2d)");
    ex_gen->add_option("--phases", ex_phases);
    ex_gen->add_option("--trials", ex_trials);
    auto* ex_min = exp->add_subcommand("minimality", "empirical minimal vector count");
    ex_min->add_option("--d", ex_d)->required();
    ex_min->add_option("--phases", ex_phases);
    ex_min->add_option("--trials", ex_trials);
    auto* ex_inv = exp->add_subcommand("invariance", "decisions agree under circle maps");
    ex_inv->add_option("--d", ex_d)->required();
    ex_inv->add_option("--m", ex_m, "vector count (default 2d)");
    ex_inv->add_option("--phases", ex_phases);
    ex_inv->add_option("--trials", ex_trials);
    for (CLI::App* leaf : {ex_thr, ex_gen, ex_min, ex_inv}) {
        leaf->add_flag("--verbose", ex_verbose, "record per-trial outcomes in the report");
        leaf->add_option("--csv", ex_csv, "write a one-row summary CSV to this file");
    }

    // bound
    int bound_d = 2;
    auto* bound = app.add_subcommand("bound", "lower bound for classical PR in C^d");
    bound->add_option("--d", bound_d, "dimension")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help() << std::flush;
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help() << std::flush;
        return 2;
    }

    try {
        if (*check) {
            const auto system = json_io::system_from_json(load_json_arg(check_system));
            const auto phase_set = json_io::phase_set_from_json(load_json_arg(check_phases));
            const auto opts = g.engine();
            const auto report = prcore::decide_theta_pr(system, phase_set, opts);
            out << json_io::decision_report_to_json(report, opts).dump(2) << "\n";
            err << "decided in " << report.elapsed_seconds << " s\n";
        } else if (*oracle) {
            const Cx a = parse_complex_arg(c2a);
            const Cx b = parse_complex_arg(c2b);
            const Cx c = parse_complex_arg(c2c);
            json rep;
            if (c2_pr) {
                rep = json{{"oracle", "c2-pr"}, {"does_pr", prcore::c2_pr_oracle(a, b, c)}};
            } else {
                if (c2_phases.empty())
                    throw InvalidInput("oracle-c2: need --phases or --pr");
                const auto t = json_io::phase_set_from_json(load_json_arg(c2_phases));
                rep = json{{"oracle", "c2"}, {"does_pr", prcore::c2_oracle(a, b, c, t)}};
            }
            out << rep.dump(2) << "\n";
        } else if (*comp) {
            const auto system = json_io::system_from_json(load_json_arg(comp_system));
            const bool cp = prcore::has_complement_property(system, g.engine().tol);
            out << json{{"has_complement_property", cp}, {"fails_2pr", !cp}}.dump(2) << "\n";
        } else if (*spark) {
            const auto system = json_io::system_from_json(load_json_arg(spark_system));
            out << json{{"is_full_spark", prcore::is_full_spark(system, g.engine().tol)}}
                       .dump(2)
                << "\n";
        } else if (*moeb) {
            if (*mo_apply) {
                const auto map = json_io::moebius_from_json(load_json_arg(mo_map));
                const auto w = map(parse_complex_arg(mo_z));
                json rep;
                if (w.is_infinity())
                    rep = json{{"result", "infinity"}};
                else
                    rep = json{{"result", json_io::complex_to_json(w.value())}};
                out << rep.dump(2) << "\n";
            } else if (*mo_arc) {
                const ArcArg a = parse_arc_arg(mo_arc_a);
                const ArcArg b = parse_arc_arg(mo_arc_b);
                const auto map = moebius::arc_to_arc(phases::Arc(a.start, a.length),
                                                     phases::Arc(b.start, b.length));
                out << json_io::moebius_to_json(map).dump(2) << "\n";
            } else {
                const Cx cr = phases::cross_ratio(
                    parse_complex_arg(crz[0]), parse_complex_arg(crz[1]),
                    parse_complex_arg(crz[2]), parse_complex_arg(crz[3]));
                out << json{{"cross_ratio", json_io::complex_to_json(cr)}}.dump(2) << "\n";
            }
        } else if (*ew) {
            const expwitness::GridSpec defaults = expwitness::default_grid(ew_n, ew_alpha);
            const expwitness::GridSpec grid(
                ew_half_width > 0.0 ? ew_half_width : defaults.half_width,
                ew_points > 0 ? ew_points : defaults.points);
            const auto bundle = expwitness::build_lattice_witnesses(ew_n, ew_alpha, grid);
            json rep;
            rep["n"] = bundle.n;
            rep["alpha"] = bundle.lattice.alpha;
            rep["xi"] = bundle.xi;
            rep["omega"] = json_io::complex_to_json(bundle.omega);
            rep["zeta"] = json_io::complex_to_json(bundle.zeta);
            rep["grid"] = json{{"half_width", grid.half_width}, {"points", grid.points}};
            rep["recurrence_residual"] = expwitness::verify_recurrence(bundle);
            rep["vanishing_residual"] = expwitness::verify_vanishing(bundle, ew_count);
            rep["vanishing_points_per_class"] = ew_count;
            rep["gram_det_x1_x2"] = bundle.gram_det_x1_x2;
            if (!bundle.warnings.empty()) rep["warnings"] = bundle.warnings;
            if (!ew_csv.empty()) {
                std::ofstream csv(ew_csv);
                if (!csv)
                    throw InvalidInput("cannot open CSV output file: " + ew_csv);
                json_io::write_grid_csv(csv, bundle.xs);
            }
            out << rep.dump(2) << "\n";
        } else if (*exp) {
            experiments::ExperimentConfig base;
            base.engine = g.engine();
            base.engine.threads = 1; // trials parallelize; decisions stay sequential
            base.threads = g.threads;
            base.record_outcomes = ex_verbose;
            experiments::ExperimentReport rep;
            const auto t = json_io::phase_set_from_json(load_json_arg(ex_phases));
            base.phase_spec = load_json_arg(ex_phases).dump();
            if (*ex_thr) {
                rep = experiments::run_threshold_study(ex_d, ex_regime, t, ex_trials,
                                                       g.seed, base);
            } else if (*ex_gen) {
                rep = experiments::run_genericity_study(ex_d, ex_m > 0 ? ex_m : 2 * ex_d, t,
                                                        ex_trials, g.seed, base);
            } else if (*ex_min) {
                rep = experiments::run_minimality_study(ex_d, t, ex_trials, g.seed, base);
            } else {
                rep = experiments::run_moebius_invariance_study(
                    ex_d, ex_m > 0 ? ex_m : 2 * ex_d, t, ex_trials, g.seed, base);
            }
            if (!ex_csv.empty()) {
                std::ofstream csv(ex_csv);
                if (!csv)
                    throw InvalidInput("cannot open CSV output file: " + ex_csv);
                json_io::write_experiment_csv(csv, rep);
            }
            out << json_io::experiment_report_to_json(rep).dump(2) << "\n";
            err << "study finished in " << rep.elapsed_seconds << " s\n";
        } else if (*bound) {
            out << prcore::heinosaari_lower_bound(bound_d) << "\n";
        }
    } catch (const ResourceLimit& e) {
        err << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        // InvalidInput, DegenerateInput and InfeasibleInput all derive from here.
        err << "invalid input: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace thetapr::cli
