#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

using json = nlohmann::json;

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const auto path = std::filesystem::temp_directory_path() /
                    ("ringex_cli_test_" + std::to_string(::getpid()) + "_" +
                     std::to_string(counter++) + ".out");
  const std::string cmd =
      std::string(RINGEX_CLI_PATH) + " " + args + " > " + path.string() + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  result.out = ss.str();
  std::filesystem::remove(path);
  return result;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("spectrum command: analytic energies with envelope") {
  const auto r = run_cli("spectrum -N 6 -n 1");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc["command"] == "spectrum");
  REQUIRE(doc["tool_version"].is_string());
  REQUIRE(doc["spec_echo"]["n_sites"] == 6);
  REQUIRE(doc["seed"].is_null());
  const auto& states = doc["payload"]["states"];
  REQUIRE(states.size() == 6);
  const std::vector<double> expected{-2.0, -1.0, -1.0, 1.0, 1.0, 2.0};
  for (std::size_t i = 0; i < 6; ++i)
    REQUIRE(std::abs(states[i]["energy"].get<double>() - expected[i]) <= 1e-10);
}

TEST_CASE("spectrum command: oracle eigenvalues") {
  const auto r = run_cli("spectrum -N 6 -n 2 --method oracle");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  const auto& eigs = doc["payload"]["eigenvalues"];
  REQUIRE(eigs.size() == 15);
  std::size_t zeros = 0;
  for (const auto& e : eigs)
    if (std::abs(e.get<double>()) <= 1e-9) ++zeros;
  REQUIRE(zeros == 5);
}

TEST_CASE("analytic method refuses a non-uniform spec file") {
  const auto path = std::filesystem::temp_directory_path() / "ringex_nonuniform_spec.json";
  {
    std::ofstream out(path);
    out << R"({"n_sites": 6, "site_energy": 0.0,
               "couplings": [1.0, 2.0, 1.0, 1.0, 1.0, 1.0],
               "site_disorder": [0, 0, 0, 0, 0, 0]})";
  }
  const auto r = run_cli("spectrum --spec-file " + path.string() + " -n 1 --method analytic");
  std::filesystem::remove(path);
  REQUIRE(r.exit_code == 2);
  const json doc = json::parse(r.out);
  REQUIRE(doc["error"]["type"] == "analytic-requires-uniform");
}

TEST_CASE("ladder command marks the mixed level") {
  const auto r = run_cli("ladder -N 6 -n 2");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  bool saw_mixed = false;
  for (const auto& lv : doc["payload"]["levels"]) {
    if (std::abs(lv["energy"].get<double>()) <= 1e-12) {
      REQUIRE(lv["mixed"] == true);
      REQUIRE(lv["degeneracy"] == 5);
      saw_mixed = true;
    } else {
      REQUIRE(lv["mixed"] == false);
    }
  }
  REQUIRE(saw_mixed);
  REQUIRE(doc["payload"]["ascii"].is_string());

  const auto r5 = run_cli("ladder -N 5 -n 2");
  const json doc5 = json::parse(r5.out);
  for (const auto& lv : doc5["payload"]["levels"]) REQUIRE(lv["mixed"] == false);

  const auto r3 = run_cli("ladder -N 3 -n 1");
  const auto levels = json::parse(r3.out)["payload"]["levels"];
  REQUIRE(levels.size() == 2);
  REQUIRE(levels[0]["degeneracy"] == 2);
  REQUIRE(levels[1]["degeneracy"] == 1);

  const auto explored = run_cli("ladder -N 6 -n 3 --explore-mixed");
  const json explored_doc = json::parse(explored.out);
  REQUIRE(explored_doc["payload"]["phase_mixed"].size() == 2);
}

TEST_CASE("transitions CSV: 90 rows, 15 allowed, dipole-consistent") {
  const auto r = run_cli("transitions -N 6 -n 1 --format csv");
  REQUIRE(r.exit_code == 0);
  REQUIRE(count_lines(r.out) == 91);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "from_labels,to_labels,allowed,m,dipole_oracle,dipole_closed_form");
  std::size_t allowed = 0;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string from, to, ok, m, dip, closed;
    std::getline(row, from, ',');
    std::getline(row, to, ',');
    std::getline(row, ok, ',');
    std::getline(row, m, ',');
    std::getline(row, dip, ',');
    std::getline(row, closed, ',');
    const double dipole = std::stod(dip);
    if (ok == "true") {
      ++allowed;
      REQUIRE(dipole > 1e-10);
      REQUIRE_FALSE(m.empty());
      REQUIRE_FALSE(closed.empty());
    } else {
      REQUIRE(dipole <= 1e-10);
      REQUIRE(m.empty());
      REQUIRE(closed.empty());
    }
  }
  REQUIRE(allowed == 15);

  const auto only = run_cli("transitions -N 6 -n 1 --format csv --only-allowed");
  REQUIRE(count_lines(only.out) == 16);
}

TEST_CASE("scan agrees over the default range") {
  const auto r = run_cli("scan --n-min 3 --n-max 22");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc["payload"]["all_agree"] == true);
  REQUIRE(doc["payload"]["rows"].size() == 20);

  const auto r6 = run_cli("scan --n-min 6 --n-max 6");
  const auto row = json::parse(r6.out)["payload"]["rows"][0];
  REQUIRE(row["predicts"] == true);
  REQUIRE(row["observed_mixed"] == true);
  REQUIRE(row["mixed_degeneracy"] == 5);

  const auto rt = run_cli("scan --n-min 3 --n-max 50 --triples-only");
  REQUIRE(json::parse(rt.out)["payload"]["all_agree"] == true);
}

TEST_CASE("statediagram output") {
  const auto r = run_cli("statediagram -N 6");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc["payload"]["single_excitation"].size() == 6);
  REQUIRE(doc["payload"]["component"].size() == 6);
  std::size_t axis = 0;
  for (const auto& p : doc["payload"]["component"])
    if (p["re"].get<double>() == 0.0) ++axis;
  REQUIRE(axis == 2);

  const auto csv = run_cli("statediagram -N 4 --format csv");
  REQUIRE(count_lines(csv.out) == 9);  // header + 8 points
}

TEST_CASE("disorder command: site mode emits JSONL reports") {
  const auto r = run_cli("disorder -N 6 --mode site --eta 1e-3 --seeds 3 --format jsonl");
  REQUIRE(r.exit_code == 0);
  REQUIRE(count_lines(r.out) == 3);
  std::istringstream in(r.out);
  std::string line;
  while (std::getline(in, line)) {
    const json rec = json::parse(line);
    REQUIRE(rec["eta"] == 1e-3);
    REQUIRE(rec["cluster"].size() == 5);
    REQUIRE(rec.contains("observed_splitting"));
    REQUIRE(rec.contains("predicted_first_order"));
  }
}

TEST_CASE("disorder command: no accidental level is a spec error") {
  const auto r = run_cli("disorder -N 8 --mode site --eta 1e-3");
  REQUIRE(r.exit_code == 2);
  REQUIRE(json::parse(r.out)["error"]["type"] == "no-accidental-level");
}

TEST_CASE("disorder command: coupling mode reports multiplicities") {
  const auto r = run_cli("disorder -N 6 --mode coupling --spread 0.5 --seeds 2");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc["seed"] == 1);
  for (const auto& run : doc["payload"]["runs"]) {
    REQUIRE(run["expected_multiplicity"] == 5);
    REQUIRE(run["observed_multiplicity"].is_number());
  }
}

TEST_CASE("verify passes, and the injected fault is caught by name") {
  const auto ok = run_cli("verify --n-max 5 --json");
  REQUIRE(ok.exit_code == 0);
  const json doc = json::parse(ok.out);
  REQUIRE(doc["payload"]["all_passed"] == true);
  REQUIRE(doc["payload"]["properties"].size() == 7);

  const auto bad = run_cli("verify --n-max 5 --json --inject-fault");
  REQUIRE(bad.exit_code == 1);
  const json bad_doc = json::parse(bad.out);
  bool residual_failed = false;
  for (const auto& p : bad_doc["payload"]["properties"])
    if (p["name"] == "analytic-residuals" && p["passed"] == false) residual_failed = true;
  REQUIRE(residual_failed);
}

TEST_CASE("dump emits the triangle Hamiltonian") {
  const auto r = run_cli("dump -N 3 -n 1 --what hamiltonian");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc["payload"]["matrix"]["dim"] == 3);
  const auto& entries = doc["payload"]["matrix"]["entries"];
  REQUIRE(entries.size() == 9);
  for (std::size_t rr = 0; rr < 3; ++rr)
    for (std::size_t cc = 0; cc < 3; ++cc) {
      const double re = entries[rr * 3 + cc][0].get<double>();
      REQUIRE(re == (rr == cc ? 0.0 : 1.0));
    }
}

TEST_CASE("outputs are byte-identical across repeated runs") {
  for (const std::string args :
       {std::string("scan --n-min 3 --n-max 12"),
        std::string("transitions -N 5 -n 1 --format csv"),
        std::string("disorder -N 6 --mode site --eta 1e-3 --seeds 2 --seed 9")}) {
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    REQUIRE(a.out == b.out);
    REQUIRE_FALSE(a.out.empty());
  }
}

TEST_CASE("usage errors exit with code 2") {
  REQUIRE(run_cli("spectrum -n 1").exit_code == 2);          // missing -N
  REQUIRE(run_cli("nonsense").exit_code == 2);               // unknown command
  REQUIRE(run_cli("spectrum -N 6").exit_code == 2);          // missing -n
  REQUIRE(run_cli("spectrum -N 2 -n 1").exit_code == 2);     // invalid ring
}
