#pragma once

#include <json.hpp>

#include "ringex/analytic.hpp"
#include "ringex/degeneracy.hpp"
#include "ringex/disorder.hpp"
#include "ringex/fock.hpp"
#include "ringex/optics.hpp"
#include "ringex/ring_spec.hpp"
#include "ringex/verify.hpp"

namespace ringex {

using ojson = nlohmann::ordered_json;

// field names frozen in FORMATS.md
inline ojson spec_to_json(const RingSpec& spec) {
  return ojson{{"n_sites", spec.n_sites},
               {"site_energy", spec.site_energy},
               {"couplings", spec.couplings},
               {"site_disorder", spec.site_disorder}};
}

inline RingSpec spec_from_json(const ojson& j) {
  RingSpec spec;
  try {
    spec.n_sites = j.at("n_sites").get<int>();
    spec.site_energy = j.value("site_energy", 0.0);
    if (j.contains("couplings"))
      spec.couplings = j.at("couplings").get<std::vector<double>>();
    else
      spec.couplings.assign(static_cast<std::size_t>(std::max(spec.n_sites, 0)), 1.0);
    if (j.contains("site_disorder"))
      spec.site_disorder = j.at("site_disorder").get<std::vector<double>>();
    else
      spec.site_disorder.assign(static_cast<std::size_t>(std::max(spec.n_sites, 0)), 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw invalid_spec_error(std::string("malformed ring spec JSON: ") + e.what());
  }
  require_valid(spec);
  return spec;
}

inline ojson complex_to_json(const cplx& z) { return ojson::array({z.real(), z.imag()}); }

inline ojson state_to_json(const ManifoldState& state) {
  return ojson{{"labels", state.labels}, {"energy", state.energy}};
}

inline ojson level_to_json(const EnergyLevel& level, bool with_categories) {
  ojson j{{"energy", level.energy}, {"degeneracy", level.degeneracy}};
  if (with_categories) {
    j["bright_count"] = level.bright_count;
    j["dark_count"] = level.dark_count;
    j["mixed"] = level.mixed();
  }
  ojson states = ojson::array();
  for (const auto& s : level.states) states.push_back(s.labels);
  j["states"] = states;
  return j;
}

inline ojson transition_to_json(const TransitionRecord& rec) {
  ojson j{{"from_labels", rec.from_labels},
          {"to_labels", rec.to_labels},
          {"allowed", rec.allowed}};
  j["m"] = rec.winding ? ojson(*rec.winding) : ojson(nullptr);
  j["dipole_oracle"] = rec.dipole_oracle;
  j["dipole_closed_form"] = rec.dipole_closed_form ? ojson(*rec.dipole_closed_form) : ojson(nullptr);
  return j;
}

inline ojson triple_report_to_json(const TripleReport& report) {
  ojson triples = ojson::array();
  for (const auto& t : report.triples)
    triples.push_back(ojson{{"m1", t.m1}, {"m2", t.m2}, {"m3", t.m3},
                            {"condition_holds", t.condition_holds}});
  return ojson{{"n_sites", report.n_sites}, {"triples", triples}};
}

inline ojson diagram_to_json(const StateDiagram& diagram) {
  const auto points = [](const std::vector<DiagramPoint>& ps) {
    ojson arr = ojson::array();
    for (const auto& p : ps)
      arr.push_back(ojson{{"label", p.label}, {"re", p.re}, {"im", p.im}});
    return arr;
  };
  return ojson{{"n_sites", diagram.n_sites},
               {"single_excitation", points(diagram.single_excitation)},
               {"component", points(diagram.component)}};
}

inline ojson disorder_report_to_json(const DisorderReport& r) {
  // component-space first-order shifts (derived quantities, no separate oracle)
  const double b = std::abs(r.beta);
  return ojson{{"seed", r.seed},
               {"eta", r.eta},
               {"alpha", r.alpha},
               {"beta", complex_to_json(r.beta)},
               {"gamma", r.gamma},
               {"component_shifts_beta", {r.alpha + b, r.alpha - b}},
               {"component_shifts_gamma", {r.alpha + r.gamma, r.alpha - r.gamma}},
               {"predicted_first_order", r.predicted_first_order},
               {"predicted_center", r.predicted_center},
               {"cluster_center", r.cluster_center},
               {"observed_splitting", r.observed_splitting},
               {"cluster", r.cluster}};
}

inline ojson coupling_result_to_json(const CouplingDisorderResult& r) {
  return ojson{{"seed", r.seed},
               {"spread", r.spread},
               {"preserved", r.preserved},
               {"expected_multiplicity", r.expected_multiplicity},
               {"observed_multiplicity", r.zero_level.degeneracy},
               {"level_energy", r.zero_level.energy},
               {"couplings", r.couplings}};
}

inline ojson matrix_to_json(const HermitianMatrix& H) {
  ojson entries = ojson::array();
  for (const cplx& z : H.entries()) entries.push_back(complex_to_json(z));
  return ojson{{"dim", H.dim()}, {"entries", entries}};
}

inline ojson vector_to_json(const FockVector& v) {
  ojson amps = ojson::array();
  for (const cplx& z : v.amplitudes) amps.push_back(complex_to_json(z));
  return ojson{{"n_sites", v.n_sites}, {"n_excitations", v.n_excitations}, {"amplitudes", amps}};
}

inline ojson property_to_json(const PropertyResult& r) {
  return ojson{{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}};
}

}  // namespace ringex
