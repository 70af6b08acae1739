#include "thetapr/json_io.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace thetapr::json_io {

namespace {

double number_from_json(const json& j, const char* what) {
    if (!j.is_number())
        throw InvalidInput(std::string(what) + ": expected a number");
    return j.get<double>();
}

} // namespace

json complex_to_json(const Cx& z) { return json::array({z.real(), z.imag()}); }

Cx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw InvalidInput("complex value: expected [re, im]");
    return Cx(number_from_json(j[0], "complex re"), number_from_json(j[1], "complex im"));
}

json vector_to_json(const CVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

CVector vector_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw InvalidInput("vector: expected a nonempty array of [re, im] pairs");
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return v;
}

json system_to_json(const prcore::VectorSystem& g) {
    json vectors = json::array();
    for (int j = 0; j < g.m; ++j) vectors.push_back(vector_to_json(g.F.col(j)));
    return json{{"d", g.d}, {"vectors", std::move(vectors)}};
}

prcore::VectorSystem system_from_json(const json& j) {
    if (!j.is_object() || !j.contains("d") || !j.contains("vectors"))
        throw InvalidInput("system: expected {\"d\": int, \"vectors\": [...]}");
    const int d = j["d"].get<int>();
    const json& vecs = j["vectors"];
    if (!vecs.is_array() || vecs.empty())
        throw InvalidInput("system: \"vectors\" must be a nonempty array");
    const int m = static_cast<int>(vecs.size());
    if (d < 1)
        throw InvalidInput("system: d must be positive");
    CMatrix f(d, m);
    for (int c = 0; c < m; ++c) {
        const CVector v = vector_from_json(vecs[static_cast<std::size_t>(c)]);
        if (v.size() != d)
            throw InvalidInput("system: vector length does not match d");
        f.col(c) = v;
    }
    return prcore::VectorSystem(d, m, std::move(f));
}

json phase_set_to_json(const phases::PhaseSet& t) {
    json values = json::array();
    for (int i = 0; i < t.size(); ++i) values.push_back(complex_to_json(t[i]));
    return json{{"phases", std::move(values)}};
}

phases::PhaseSet phase_set_from_json(const json& j) {
    if (!j.is_object())
        throw InvalidInput("phase set: expected an object");
    if (j.contains("roots_of_unity"))
        return phases::PhaseSet::roots_of_unity(j["roots_of_unity"].get<int>());
    if (j.contains("phases")) {
        const json& arr = j["phases"];
        if (!arr.is_array() || arr.empty())
            throw InvalidInput("phase set: \"phases\" must be a nonempty array");
        std::vector<Cx> values;
        values.reserve(arr.size());
        for (const json& e : arr) values.push_back(complex_from_json(e));
        return phases::PhaseSet(std::move(values));
    }
    for (const char* key : {"angles_degrees", "angles_radians"}) {
        if (!j.contains(key)) continue;
        const json& arr = j[key];
        if (!arr.is_array() || arr.empty())
            throw InvalidInput("phase set: angle list must be a nonempty array");
        const double to_rad =
            std::string(key) == "angles_degrees" ? std::numbers::pi / 180.0 : 1.0;
        std::vector<Cx> values;
        values.reserve(arr.size());
        for (const json& e : arr) {
            const double t = number_from_json(e, "angle") * to_rad;
            values.emplace_back(std::cos(t), std::sin(t));
        }
        return phases::PhaseSet(std::move(values));
    }
    throw InvalidInput("phase set: need \"phases\", \"roots_of_unity\", "
                       "\"angles_degrees\" or \"angles_radians\"");
}

json moebius_to_json(const moebius::MoebiusMap& m) {
    return json{{"matrix", json::array({complex_to_json(m.a()), complex_to_json(m.b()),
                                        complex_to_json(m.c()), complex_to_json(m.d())})}};
}

moebius::MoebiusMap moebius_from_json(const json& j) {
    if (!j.is_object() || !j.contains("matrix"))
        throw InvalidInput("moebius map: expected {\"matrix\": [[re,im] x 4]}");
    const json& m = j["matrix"];
    if (!m.is_array() || m.size() != 4)
        throw InvalidInput("moebius map: \"matrix\" must hold 4 complex entries");
    return moebius::MoebiusMap(complex_from_json(m[0]), complex_from_json(m[1]),
                               complex_from_json(m[2]), complex_from_json(m[3]));
}

json witness_to_json(const prcore::Witness& w) {
    json a = json::array();
    for (int i : w.assignment.indices) a.push_back(i);
    return json{{"f", vector_to_json(w.f)},
                {"h", vector_to_json(w.h)},
                {"assignment", std::move(a)},
                {"residual", w.residual}};
}

json decision_report_to_json(const prcore::DecisionReport& r,
                             const prcore::EngineOptions& opts) {
    json out;
    out["does_pr"] = r.does_pr;
    if (r.witness) out["witness"] = witness_to_json(*r.witness);
    out["assignments_checked"] = r.assignments_checked;
    if (!r.warnings.empty()) out["warnings"] = r.warnings;
    out["engine"] = json{{"tol_rank_rel", opts.tol.rank_rel},
                         {"budget", opts.assignment_budget},
                         {"threads", opts.threads}};
    return out;
}

json experiment_report_to_json(const experiments::ExperimentReport& r) {
    json out;
    out["experiment"] = r.experiment;
    // Thread counts and wall-clock times are execution details; leaving them
    // out keeps the report byte-identical across serial and parallel runs.
    out["config"] = json{{"d", r.config.d},
                         {"m", r.config.m},
                         {"phases", r.config.phase_spec},
                         {"trials", r.config.trials},
                         {"seed", r.config.seed},
                         {"engine", json{{"tol_rank_rel", r.config.engine.tol.rank_rel},
                                         {"budget", r.config.engine.assignment_budget}}}};
    out["generator"] = experiments::kGeneratorId;
    out["pass_count"] = r.pass_count;
    out["fail_count"] = r.fail_count;
    if (r.experiment == "invariance") out["mismatches"] = r.mismatches;
    if (r.experiment == "minimality") {
        out["empirical_N"] = r.empirical_minimal_m;
        out["theoretical_N"] = r.theoretical_minimal_m;
        out["successes_per_m"] = r.empirical_counts_per_m;
    }
    if (!r.outcomes.empty()) out["outcomes"] = r.outcomes;
    out["engine_stats"] = json{{"total_assignments_checked", r.total_assignments_checked},
                               {"max_assignments_checked", r.max_assignments_checked}};
    if (r.example_witness) out["example_witness"] = witness_to_json(*r.example_witness);
    return out;
}

void write_experiment_csv(std::ostream& out, const experiments::ExperimentReport& r) {
    out << "experiment,d,m,phases,trials,seed,pass_count,fail_count,mismatches,"
           "empirical_N,theoretical_N,successes_per_m\n";
    std::string per_m;
    for (std::size_t i = 0; i < r.empirical_counts_per_m.size(); ++i) {
        if (i) per_m += ';';
        per_m += std::to_string(r.empirical_counts_per_m[i]);
    }
    std::string phases_quoted = "\"";
    for (char c : r.config.phase_spec) {
        phases_quoted += c;
        if (c == '"') phases_quoted += c; // CSV quote doubling
    }
    phases_quoted += '"';
    out << r.experiment << ',' << r.config.d << ',' << r.config.m << ','
        << phases_quoted << ',' << r.config.trials << ',' << r.config.seed << ','
        << r.pass_count << ',' << r.fail_count << ',' << r.mismatches << ','
        << r.empirical_minimal_m << ',' << r.theoretical_minimal_m << ',' << per_m
        << "\n";
}

void write_grid_csv(std::ostream& out,
                    const std::vector<expwitness::GridFunction>& xs) {
    if (xs.empty()) return;
    out << "t";
    for (std::size_t j = 0; j < xs.size(); ++j)
        out << ",re_x" << j << ",im_x" << j;
    out << "\n";
    out.precision(17);
    for (int k = 0; k < xs.front().size(); ++k) {
        out << xs.front().t(k);
        for (const auto& x : xs) {
            const Cx z = x.samples[static_cast<std::size_t>(k)];
            out << "," << z.real() << "," << z.imag();
        }
        out << "\n";
    }
}

} // namespace thetapr::json_io
