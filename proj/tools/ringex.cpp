// ringex — spectra, optical selection rules, accidental degeneracy and
// disorder experiments for coupled exciton rings. Every command prints one
// JSON document (or CSV with --format csv); schemas are frozen in FORMATS.md.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ringex/json_io.hpp"
#include "ringex/version.hpp"

namespace {

using ringex::ojson;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string join_labels(const std::vector<int>& labels) {
  std::string s;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(labels[i]);
  }
  return s;
}

struct SpecOptions {
  std::optional<int> n_sites;
  std::optional<double> omega;
  std::optional<double> coupling;
  std::string spec_file;
};

void add_spec_options(CLI::App* cmd, SpecOptions& opts) {
  cmd->add_option("-N,--n-sites", opts.n_sites, "ring size N");
  cmd->add_option("--omega", opts.omega, "site energy (default 0)");
  cmd->add_option("--coupling", opts.coupling, "uniform coupling S (default 1)");
  cmd->add_option("--spec-file", opts.spec_file, "ring spec JSON file (see FORMATS.md)");
}

ringex::RingSpec resolve_spec(const SpecOptions& opts) {
  if (!opts.spec_file.empty()) {
    std::ifstream in(opts.spec_file);
    if (!in) throw ringex::invalid_spec_error("cannot open spec file: " + opts.spec_file);
    ojson j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ringex::invalid_spec_error(std::string("spec file is not valid JSON: ") + e.what());
    }
    ringex::RingSpec spec = ringex::spec_from_json(j);
    if (opts.n_sites && *opts.n_sites != spec.n_sites) {
      if (!spec.is_uniform())
        throw ringex::invalid_spec_error("-N override needs a uniform spec file");
      spec = ringex::make_uniform_ring(*opts.n_sites, spec.site_energy, spec.couplings.front());
    }
    if (opts.coupling) spec.couplings.assign(spec.couplings.size(), *opts.coupling);
    if (opts.omega) spec.site_energy = *opts.omega;
    ringex::require_valid(spec);
    return spec;
  }
  if (!opts.n_sites)
    throw ringex::invalid_spec_error("either -N or --spec-file must be given");
  return ringex::make_uniform_ring(*opts.n_sites, opts.omega.value_or(0.0),
                                   opts.coupling.value_or(1.0));
}

ojson make_envelope(const std::string& command, const ojson& spec_echo, const ojson& payload,
                    std::optional<std::uint64_t> seed = std::nullopt) {
  ojson env;
  env["command"] = command;
  env["spec_echo"] = spec_echo;
  env["seed"] = seed ? ojson(*seed) : ojson(nullptr);
  env["tool_version"] = RINGEX_VERSION;
  env["payload"] = payload;
  return env;
}

void print_json(const ojson& doc) { std::cout << doc.dump(2) << "\n"; }

void print_csv(const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i)
    std::cout << header[i] << (i + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i)
      std::cout << row[i] << (i + 1 < row.size() ? "," : "\n");
}

std::string render_ascii_ladder(const std::vector<ringex::EnergyLevel>& levels,
                                bool with_categories) {
  std::ostringstream out;
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    char head[64];
    std::snprintf(head, sizeof(head), "%+12.6f  |", it->energy);
    out << head << std::string(std::min<std::size_t>(it->degeneracy, 40), '*') << " x"
        << it->degeneracy;
    if (with_categories && it->mixed())
      out << "  [mixed: " << it->bright_count << " bright + " << it->dark_count << " dark]";
    out << "\n";
  }
  return out.str();
}

int run_spectrum(const SpecOptions& sopts, int n, const std::string& method,
                 const std::string& format) {
  const ringex::RingSpec spec = resolve_spec(sopts);
  ojson payload;
  payload["n"] = n;
  payload["method"] = method;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header;
  if (method == "analytic") {
    auto states = ringex::manifold_states(spec, n);
    std::stable_sort(states.begin(), states.end(),
                     [](const ringex::ManifoldState& a, const ringex::ManifoldState& b) {
                       if (a.energy != b.energy) return a.energy < b.energy;
                       return a.labels < b.labels;
                     });
    ojson arr = ojson::array();
    for (const auto& s : states) {
      arr.push_back(ringex::state_to_json(s));
      rows.push_back({join_labels(s.labels), fmt17(s.energy)});
    }
    payload["states"] = arr;
    header = {"labels", "energy"};
  } else {
    const auto sys = ringex::eig_hermitian(ringex::build_hamiltonian(spec, n));
    payload["eigenvalues"] = sys.eigenvalues;
    for (std::size_t i = 0; i < sys.eigenvalues.size(); ++i)
      rows.push_back({std::to_string(i), fmt17(sys.eigenvalues[i])});
    header = {"index", "energy"};
  }
  if (format == "csv")
    print_csv(header, rows);
  else
    print_json(make_envelope("spectrum", ringex::spec_to_json(spec), payload));
  return 0;
}

int run_ladder(const SpecOptions& sopts, int n, const std::string& method, bool explore_mixed,
               const std::string& format) {
  const ringex::RingSpec spec = resolve_spec(sopts);
  const auto ladder_method =
      method == "oracle" ? ringex::LadderMethod::Oracle : ringex::LadderMethod::Analytic;
  const auto levels = ringex::energy_ladder(spec, n, ladder_method);
  const bool with_categories = (n == 2 && ladder_method == ringex::LadderMethod::Analytic);

  if (format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const auto& lv = levels[i];
      std::string states;
      for (std::size_t k = 0; k < lv.states.size(); ++k) {
        if (k) states += '|';
        states += join_labels(lv.states[k].labels);
      }
      rows.push_back({std::to_string(i), fmt17(lv.energy), std::to_string(lv.degeneracy),
                      std::to_string(lv.bright_count), std::to_string(lv.dark_count),
                      lv.mixed() ? "true" : "false", states});
    }
    print_csv({"level", "energy", "degeneracy", "bright_count", "dark_count", "mixed", "states"},
              rows);
    return 0;
  }

  ojson payload;
  payload["n"] = n;
  payload["method"] = method;
  ojson arr = ojson::array();
  for (const auto& lv : levels) arr.push_back(ringex::level_to_json(lv, with_categories));
  payload["levels"] = arr;
  payload["ascii"] = render_ascii_ladder(levels, with_categories);
  if (explore_mixed) {
    ojson mixed = ojson::array();
    for (const auto& pm : ringex::phase_mixed_levels(spec, n))
      mixed.push_back(ojson{{"energy", pm.energy}, {"matched", pm.matched},
                            {"unmatched", pm.unmatched}});
    payload["phase_mixed"] = mixed;
  }
  print_json(make_envelope("ladder", ringex::spec_to_json(spec), payload));
  return 0;
}

int run_transitions(const SpecOptions& sopts, int n, bool only_allowed,
                    const std::string& format) {
  const ringex::RingSpec spec = resolve_spec(sopts);
  auto table = ringex::transition_table(spec, n);
  if (only_allowed) {
    std::erase_if(table, [](const ringex::TransitionRecord& r) { return !r.allowed; });
  }
  if (format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& rec : table) {
      rows.push_back({join_labels(rec.from_labels), join_labels(rec.to_labels),
                      rec.allowed ? "true" : "false",
                      rec.winding ? std::to_string(*rec.winding) : "",
                      fmt17(rec.dipole_oracle),
                      rec.dipole_closed_form ? fmt17(*rec.dipole_closed_form) : ""});
    }
    print_csv({"from_labels", "to_labels", "allowed", "m", "dipole_oracle", "dipole_closed_form"},
              rows);
    return 0;
  }
  ojson payload;
  payload["n"] = n;
  ojson arr = ojson::array();
  for (const auto& rec : table) arr.push_back(ringex::transition_to_json(rec));
  payload["records"] = arr;
  print_json(make_envelope("transitions", ringex::spec_to_json(spec), payload));
  return 0;
}

int run_scan(int n_min, int n_max, bool triples_only, const std::string& format) {
  if (n_min < 3 || n_max < n_min || n_max > 64)
    throw ringex::invalid_spec_error("scan range must satisfy 3 <= n-min <= n-max <= 64");
  ojson rows_json = ojson::array();
  std::vector<std::vector<std::string>> rows;
  bool all_agree = true;
  for (int N = n_min; N <= n_max; ++N) {
    const bool predicts = ringex::predicts_accidental(N);
    const auto report = ringex::evenly_spaced_triples(N);
    const bool triples_found = !report.triples.empty();
    ojson row;
    row["n_sites"] = N;
    row["predicts"] = predicts;
    row["triples_found"] = triples_found;
    row["triple_count"] = report.triples.size();
    bool agree = predicts == triples_found;
    std::string observed_str = "";
    std::string mixed_deg = "";
    if (!triples_only) {
      const auto mixed = ringex::find_accidental(ringex::make_uniform_ring(N, 0.0, 1.0));
      const bool observed = !mixed.empty();
      row["observed_mixed"] = observed;
      row["mixed_degeneracy"] = observed ? ojson(mixed.front().degeneracy) : ojson(nullptr);
      agree = agree && (observed == predicts);
      observed_str = observed ? "true" : "false";
      mixed_deg = observed ? std::to_string(mixed.front().degeneracy) : "";
    }
    row["agree"] = agree;
    all_agree = all_agree && agree;
    rows_json.push_back(row);
    if (triples_only)
      rows.push_back({std::to_string(N), predicts ? "true" : "false",
                      triples_found ? "true" : "false", std::to_string(report.triples.size()),
                      agree ? "true" : "false"});
    else
      rows.push_back({std::to_string(N), predicts ? "true" : "false", observed_str, mixed_deg,
                      triples_found ? "true" : "false", std::to_string(report.triples.size()),
                      agree ? "true" : "false"});
  }
  if (format == "csv") {
    if (triples_only)
      print_csv({"n_sites", "predicts", "triples_found", "triple_count", "agree"}, rows);
    else
      print_csv({"n_sites", "predicts", "observed_mixed", "mixed_degeneracy", "triples_found",
                 "triple_count", "agree"},
                rows);
    return 0;
  }
  ojson payload;
  payload["n_min"] = n_min;
  payload["n_max"] = n_max;
  payload["triples_only"] = triples_only;
  payload["rows"] = rows_json;
  payload["all_agree"] = all_agree;
  print_json(make_envelope("scan", ojson(nullptr), payload));
  return 0;
}

int run_statediagram(int n_sites, const std::string& format) {
  const auto diagram = ringex::state_diagram(n_sites);
  if (format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : diagram.single_excitation)
      rows.push_back({"single", std::to_string(p.label), fmt17(p.re), fmt17(p.im)});
    for (const auto& p : diagram.component)
      rows.push_back({"component", std::to_string(p.label), fmt17(p.re), fmt17(p.im)});
    print_csv({"set", "label", "re", "im"}, rows);
    return 0;
  }
  print_json(make_envelope("statediagram", ojson(nullptr), ringex::diagram_to_json(diagram)));
  return 0;
}

int run_disorder(const SpecOptions& sopts, const std::string& mode, double eta, double spread,
                 int seeds, std::uint64_t seed_base, const std::string& format) {
  if (seeds < 1) throw ringex::invalid_spec_error("--seeds must be at least 1");
  const ringex::RingSpec spec = resolve_spec(sopts);
  ojson runs = ojson::array();
  std::vector<std::vector<std::string>> rows;
  if (mode == "site") {
    for (int i = 0; i < seeds; ++i) {
      const auto report = ringex::site_disorder_splitting(spec, eta, seed_base + static_cast<std::uint64_t>(i));
      runs.push_back(ringex::disorder_report_to_json(report));
      rows.push_back({std::to_string(report.seed), fmt17(report.eta), fmt17(report.alpha),
                      fmt17(report.beta.real()), fmt17(report.beta.imag()), fmt17(report.gamma),
                      fmt17(report.predicted_first_order), fmt17(report.predicted_center),
                      fmt17(report.cluster_center), fmt17(report.observed_splitting)});
    }
    if (format == "csv") {
      print_csv({"seed", "eta", "alpha", "beta_re", "beta_im", "gamma", "predicted_first_order",
                 "predicted_center", "cluster_center", "observed_splitting"},
                rows);
      return 0;
    }
  } else if (mode == "coupling") {
    for (int i = 0; i < seeds; ++i) {
      const auto result = ringex::coupling_disorder_check(spec.n_sites,
                                                          seed_base + static_cast<std::uint64_t>(i), spread);
      runs.push_back(ringex::coupling_result_to_json(result));
      rows.push_back({std::to_string(result.seed), fmt17(result.spread),
                      result.preserved ? "true" : "false",
                      std::to_string(result.expected_multiplicity),
                      std::to_string(result.zero_level.degeneracy),
                      fmt17(result.zero_level.energy)});
    }
    if (format == "csv") {
      print_csv({"seed", "spread", "preserved", "expected_multiplicity", "observed_multiplicity",
                 "level_energy"},
                rows);
      return 0;
    }
  } else {
    throw ringex::invalid_spec_error("--mode must be 'site' or 'coupling'");
  }
  if (format == "jsonl") {
    for (const auto& r : runs) std::cout << r.dump() << "\n";
    return 0;
  }
  ojson payload;
  payload["mode"] = mode;
  if (mode == "site")
    payload["eta"] = eta;
  else
    payload["spread"] = spread;
  payload["seeds"] = seeds;
  payload["runs"] = runs;
  print_json(make_envelope("disorder", ringex::spec_to_json(spec), payload, seed_base));
  return 0;
}

int run_verify(int n_max, bool as_json, bool inject_fault) {
  ringex::VerifyOptions options;
  options.n_max = n_max;
  options.inject_fault = inject_fault;
  const auto results = ringex::run_verification(options);
  const bool ok = ringex::all_passed(results);
  if (as_json) {
    ojson payload;
    payload["n_max"] = n_max;
    ojson arr = ojson::array();
    for (const auto& r : results) arr.push_back(ringex::property_to_json(r));
    payload["properties"] = arr;
    payload["all_passed"] = ok;
    print_json(make_envelope("verify", ojson(nullptr), payload));
  } else {
    for (const auto& r : results)
      std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.detail << ")\n";
    std::cout << (ok ? "all properties passed" : "PROPERTY FAILURES PRESENT") << "\n";
  }
  return ok ? 0 : 1;
}

int run_dump(const SpecOptions& sopts, const std::string& what, int n,
             const std::string& labels_arg) {
  const ringex::RingSpec spec = resolve_spec(sopts);
  ojson payload;
  payload["what"] = what;
  if (what == "hamiltonian") {
    payload["n"] = n;
    payload["matrix"] = ringex::matrix_to_json(ringex::build_hamiltonian(spec, n));
  } else if (what == "basis") {
    payload["n"] = n;
    const ringex::FockBasis basis(spec.n_sites, n);
    payload["states"] = basis.states();
  } else if (what == "raising") {
    payload["n"] = n;
    const auto R = ringex::raising_matrix(spec.n_sites, n);
    payload["rows"] = R.rows;
    payload["cols"] = R.cols;
    payload["entries"] = R.entries;
  } else if (what == "state") {
    std::vector<int> labels;
    std::stringstream ss(labels_arg);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) labels.push_back(std::stoi(tok));
    const auto state = ringex::make_manifold_state(spec, labels);
    payload["state"] = ringex::state_to_json(state);
    payload["vector"] = ringex::vector_to_json(ringex::to_fock_vector(state, spec.n_sites));
  } else {
    throw ringex::invalid_spec_error("--what must be hamiltonian|basis|raising|state");
  }
  print_json(make_envelope("dump", ringex::spec_to_json(spec), payload));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exciton ring spectra, selection rules and degeneracy toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", RINGEX_VERSION);

  SpecOptions sopts;
  int n = 1;
  std::string format = "json";
  std::string method = "analytic";

  auto* spectrum = app.add_subcommand("spectrum", "manifold energies (analytic or brute force)");
  add_spec_options(spectrum, sopts);
  spectrum->add_option("-n,--excitations", n, "excitation count")->required();
  spectrum->add_option("--method", method, "analytic|oracle")
      ->check(CLI::IsMember({"analytic", "oracle"}));
  spectrum->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  bool explore_mixed = false;
  auto* ladder = app.add_subcommand("ladder", "degenerate energy levels with category counts");
  add_spec_options(ladder, sopts);
  ladder->add_option("-n,--excitations", n, "excitation count")->required();
  ladder->add_option("--method", method, "analytic|oracle")
      ->check(CLI::IsMember({"analytic", "oracle"}));
  ladder->add_flag("--explore-mixed", explore_mixed,
                   "report levels mixing phase-matched and unmatched states (any n)");
  ladder->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  bool only_allowed = false;
  auto* transitions = app.add_subcommand("transitions", "full transition table n -> n+1");
  add_spec_options(transitions, sopts);
  transitions->add_option("-n,--excitations", n, "source manifold")->required();
  transitions->add_flag("--only-allowed", only_allowed, "keep rows allowed by the selection rule");
  transitions->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  int n_min = 3, n_max = 22;
  bool triples_only = false;
  auto* scan = app.add_subcommand("scan", "accidental-degeneracy law over a range of ring sizes");
  scan->add_option("--n-min", n_min, "smallest ring size");
  scan->add_option("--n-max", n_max, "largest ring size");
  scan->add_flag("--triples-only", triples_only, "skip the ladder check, scan triples only");
  scan->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  int diagram_n = 0;
  auto* statediagram = app.add_subcommand("statediagram", "both manifolds on the unit circle");
  statediagram->add_option("-N,--n-sites", diagram_n, "ring size")->required();
  statediagram->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  std::string mode;
  double eta = 1e-3, spread = 0.5;
  int seeds = 1;
  std::uint64_t seed_base = 1;
  auto* disorder = app.add_subcommand("disorder", "site / coupling disorder experiments");
  add_spec_options(disorder, sopts);
  disorder->add_option("--mode", mode, "site|coupling")->required()
      ->check(CLI::IsMember({"site", "coupling"}));
  disorder->add_option("--eta", eta, "site-disorder magnitude (mode site)");
  disorder->add_option("--spread", spread, "coupling spread in (0,1) (mode coupling)");
  disorder->add_option("--seeds", seeds, "number of consecutive seeds");
  disorder->add_option("--seed", seed_base, "base seed");
  disorder->add_option("--format", format, "json|jsonl|csv")
      ->check(CLI::IsMember({"json", "jsonl", "csv"}));

  int verify_n_max = 8;
  bool verify_json = false, inject_fault = false;
  auto* verify = app.add_subcommand("verify", "run the oracle-equivalence property suite");
  verify->add_option("--n-max", verify_n_max, "largest ring size scanned")
      ->check(CLI::Range(3, 12));
  verify->add_flag("--json", verify_json, "machine-readable output");
  verify->add_flag("--inject-fault", inject_fault, "harness self-test: corrupt one bond");

  std::string what = "hamiltonian", labels_arg;
  auto* dump = app.add_subcommand("dump", "matrices, bases and vectors as JSON");
  add_spec_options(dump, sopts);
  dump->add_option("--what", what, "hamiltonian|basis|raising|state")->required();
  dump->add_option("-n,--excitations", n, "sector");
  dump->add_option("--labels", labels_arg, "comma-separated momentum labels (--what state)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (spectrum->parsed()) return run_spectrum(sopts, n, method, format);
    if (ladder->parsed()) return run_ladder(sopts, n, method, explore_mixed, format);
    if (transitions->parsed()) return run_transitions(sopts, n, only_allowed, format);
    if (scan->parsed()) return run_scan(n_min, n_max, triples_only, format);
    if (statediagram->parsed()) return run_statediagram(diagram_n, format);
    if (disorder->parsed())
      return run_disorder(sopts, mode, eta, spread, seeds, seed_base, format);
    if (verify->parsed()) return run_verify(verify_n_max, verify_json, inject_fault);
    if (dump->parsed()) return run_dump(sopts, what, n, labels_arg);
  } catch (const ringex::error& e) {
    ojson err;
    err["error"] = ojson{{"type", e.code()}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    ojson err;
    err["error"] = ojson{{"type", "internal"}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 2;
  }
  return 2;
}
