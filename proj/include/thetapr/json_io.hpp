#pragma once

#include <json.hpp>

#include <iosfwd>

#include "thetapr/experiments.hpp"
#include "thetapr/expwitness.hpp"

namespace thetapr::json_io {

using json = nlohmann::ordered_json;

json complex_to_json(const Cx& z);
Cx complex_from_json(const json& j);

json vector_to_json(const CVector& v);
CVector vector_from_json(const json& j);

// {"d": int, "vectors": [[ [re,im] x d ] x m]}
json system_to_json(const prcore::VectorSystem& g);
prcore::VectorSystem system_from_json(const json& j);

// Accepts {"phases": [[re,im],...]}, {"roots_of_unity": n},
// {"angles_degrees": [...]} or {"angles_radians": [...]}.
json phase_set_to_json(const phases::PhaseSet& t);
phases::PhaseSet phase_set_from_json(const json& j);

// {"matrix": [[re,im] x 4]} in (a, b, c, d) order.
json moebius_to_json(const moebius::MoebiusMap& m);
moebius::MoebiusMap moebius_from_json(const json& j);

json witness_to_json(const prcore::Witness& w);
json decision_report_to_json(const prcore::DecisionReport& r,
                             const prcore::EngineOptions& opts);
json experiment_report_to_json(const experiments::ExperimentReport& r);

// One-row summary of an experiment report (header + data row).
void write_experiment_csv(std::ostream& out, const experiments::ExperimentReport& r);

// Header t,re_x0,im_x0,... followed by one row per grid point.
void write_grid_csv(std::ostream& out, const std::vector<expwitness::GridFunction>& xs);

} // namespace thetapr::json_io
