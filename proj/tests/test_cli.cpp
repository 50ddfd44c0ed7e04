#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dronecov/config.hpp"
#include "support/subprocess.hpp"

using nlohmann::json;
using testutil::run_command;

namespace {

const std::string kCli = DRONECOV_CLI_PATH;
const std::string kData = DRONECOV_DATA_DIR;

std::string tmp_path(const std::string& stem) {
  return "/tmp/dronecov_test_" + std::to_string(::getpid()) + "_" + stem;
}

double parse_printed(const std::string& output, const std::string& key) {
  const auto pos = output.find(key);
  REQUIRE(pos != std::string::npos);
  const auto eq = output.find('=', pos);
  REQUIRE(eq != std::string::npos);
  return std::strtod(output.c_str() + eq + 1, nullptr);
}

std::string strip_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("timestamp") == std::string::npos) out << line << "\n";
  }
  return out.str();
}

}  // namespace

TEST_CASE("config files parse with comments, degree conversion, and env keys") {
  std::istringstream in(
      "# scenario\npt_db = -6\nn0_db = -150\nlambda = 5e-6\nh = 500\n"
      "phi_a = 90\nt_db = -5\nf = 2e9\nenv = dense-urban\nrel_tol = 1e-9\n");
  const dronecov::ConfigFile file = dronecov::parse_config_file(in);
  REQUIRE(file.cfg.pt_db == -6.0);
  REQUIRE_THAT(file.cfg.phi_a, Catch::Matchers::WithinRel(dronecov::kPi / 2.0, 1e-12));
  REQUIRE(file.env_name.has_value());
  REQUIRE(*file.env_name == "dense-urban");
  REQUIRE(file.quad.rel_tol == 1e-9);

  std::istringstream bad("voltage = 3\n");
  REQUIRE_THROWS_AS(dronecov::parse_config_file(bad), dronecov::ConfigError);
}

TEST_CASE("compute runs the shipped default config") {
  const auto result = run_command(kCli + " compute -c " + kData + "/urban-default.conf");
  INFO(result.output);
  REQUIRE(result.exit_code == 0);
  const double p_cov = parse_printed(result.output, "P_cov");
  const double ceiling = parse_printed(result.output, "void_ceiling");
  const double p_los = parse_printed(result.output, "P_LoS_closest");
  const double mu0 = parse_printed(result.output, "mu_Iagg(0)");
  REQUIRE(p_cov > 0.0);
  REQUIRE(p_cov <= ceiling);
  REQUIRE(p_los > 0.0);
  REQUIRE(p_los <= ceiling + 1e-12);
  REQUIRE(mu0 > 0.0);
}

TEST_CASE("compute without a config uses the built-in defaults") {
  const auto with_file = run_command(kCli + " compute -c " + kData + "/urban-default.conf");
  const auto bare = run_command(kCli + " compute");
  REQUIRE(bare.exit_code == 0);
  REQUIRE(parse_printed(bare.output, "P_cov") ==
          parse_printed(with_file.output, "P_cov"));
}

TEST_CASE("compute with lambda overridden to zero prints zero coverage") {
  const auto result = run_command(kCli + " compute --lambda 0");
  REQUIRE(result.exit_code == 0);
  REQUIRE(parse_printed(result.output, "P_cov") == 0.0);
}

TEST_CASE("a 200-degree beamwidth is rejected with the ceiling named") {
  const auto result = run_command(kCli + " compute --phi-a 200");
  REQUIRE(result.exit_code == 2);
  REQUIRE(result.output.find("150") != std::string::npos);
}

TEST_CASE("exact-nested compute agrees with the profile-backed default") {
  const auto fast = run_command(kCli + " compute");
  const auto exact = run_command(kCli + " compute --exact-nested");
  REQUIRE(exact.exit_code == 0);
  REQUIRE(std::abs(parse_printed(fast.output, "P_cov") -
                   parse_printed(exact.output, "P_cov")) < 1e-5);
}

TEST_CASE("simulate is reproducible for a fixed seed (JSON identical minus timestamp)") {
  const std::string json_a = tmp_path("sim_a.json");
  const std::string json_b = tmp_path("sim_b.json");
  const std::string cmd = kCli + " simulate --trials 2000 --seed 42 --json ";
  const auto a = run_command(cmd + json_a);
  const auto b = run_command(cmd + json_b);
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  REQUIRE(a.output == b.output);
  const std::string doc_a = strip_timestamp(testutil::read_file(json_a));
  const std::string doc_b = strip_timestamp(testutil::read_file(json_b));
  REQUIRE(doc_a == doc_b);
  REQUIRE(!doc_a.empty());
  std::remove(json_a.c_str());
  std::remove(json_b.c_str());
}

TEST_CASE("simulate rejects too few trials and unknown modes") {
  REQUIRE(run_command(kCli + " simulate --trials 500 --seed 1").exit_code == 2);
  REQUIRE(run_command(kCli + " simulate --trials 2000 --mode sometimes").exit_code == 2);
}

TEST_CASE("simulate reports the full_stochastic mode it ran") {
  const std::string path = tmp_path("sim_fs.json");
  const auto result = run_command(kCli + " simulate --trials 2000 --seed 9 --mode full_stochastic --json " + path);
  REQUIRE(result.exit_code == 0);
  REQUIRE(result.output.find("full_stochastic") != std::string::npos);
  const json doc = json::parse(testutil::read_file(path));
  REQUIRE(doc["results"]["mode"] == "full_stochastic");
  REQUIRE(doc["manifest"]["seed"] == 9);
  REQUIRE(doc["manifest"]["command"] == "simulate");
  std::remove(path.c_str());
}

TEST_CASE("sweep writes the CSV schema and it round-trips byte-identically") {
  const std::string csv_path = tmp_path("sweep.csv");
  const auto result = run_command(kCli + " sweep --param altitude --grid 200:1500:8:log --out " +
                                  csv_path);
  INFO(result.output);
  REQUIRE(result.exit_code == 0);
  REQUIRE(result.output.find("argmax altitude") != std::string::npos);

  const std::string content = testutil::read_file(csv_path);
  std::istringstream in(content);
  std::string header;
  std::getline(in, header);
  REQUIRE(header == "param,p_cov,p_los_closest,mu_iagg_at_zero");

  // parse every cell and re-emit at 12 significant digits
  std::ostringstream rebuilt;
  rebuilt << header << "\n";
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream cells(line);
    std::string cell;
    std::vector<std::string> out_cells;
    while (std::getline(cells, cell, ',')) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.12g", std::strtod(cell.c_str(), nullptr));
      out_cells.emplace_back(buf);
    }
    REQUIRE(out_cells.size() == 4);
    rebuilt << out_cells[0] << "," << out_cells[1] << "," << out_cells[2] << ","
            << out_cells[3] << "\n";
  }
  REQUIRE(rows == 8);
  REQUIRE(rebuilt.str() == content);
  std::remove(csv_path.c_str());
}

TEST_CASE("a one-point grid produces one data row") {
  const std::string csv_path = tmp_path("one.csv");
  const auto result = run_command(kCli + " sweep --param altitude --grid 500:500:1 --out " + csv_path);
  REQUIRE(result.exit_code == 0);
  std::istringstream in(testutil::read_file(csv_path));
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  REQUIRE(lines == 2);  // header + one row
  std::remove(csv_path.c_str());
}

TEST_CASE("beamwidth sweeps keep the LoS column nondecreasing in the CSV") {
  const std::string csv_path = tmp_path("beam.csv");
  const auto result =
      run_command(kCli + " sweep --param beamwidth --grid 20:140:7 --out " + csv_path);
  REQUIRE(result.exit_code == 0);
  std::istringstream in(testutil::read_file(csv_path));
  std::string line;
  std::getline(in, line);  // header
  double prev = -1.0;
  while (std::getline(in, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const double p_los = std::strtod(line.substr(c1 + 1, c2 - c1 - 1).c_str(), nullptr);
    (void)p_los;
    const double p_los_col = std::strtod(line.c_str() + c2 + 1, nullptr);
    REQUIRE(p_los_col >= prev - 1e-10);
    prev = p_los_col;
  }
  std::remove(csv_path.c_str());
}

TEST_CASE("optimize refines the altitude argmax") {
  const auto result = run_command(kCli + " optimize --param altitude --grid 150:2500:10:log");
  INFO(result.output);
  REQUIRE(result.exit_code == 0);
  REQUIRE(result.output.find("grid argmax") != std::string::npos);
  REQUIRE(result.output.find("refined") != std::string::npos);
}

TEST_CASE("validate enforces its trial floor") {
  REQUIRE(run_command(kCli + " validate --trials 1000").exit_code == 2);
}

TEST_CASE("a corrupted environment file fails at load with the key named") {
  const std::string env_path = tmp_path("bad_env.txt");
  {
    std::ofstream out(env_path);
    out << "[urban]\na_los = 2.0\nb_los = 1.06\na_nlos = 8.0\nb_nlos = 0.48\n"
           "mu_los_db = 1.0\nmu_nlos_db = 20.0\nbeta1 = 1.888\nbeta2 = 0.2105\n";
  }
  const auto result = run_command(kCli + " compute --env-file " + env_path);
  REQUIRE(result.exit_code == 2);
  REQUIRE(result.output.find("beta1") != std::string::npos);
  std::remove(env_path.c_str());
}

TEST_CASE("bad invocations exit with the input-error code") {
  REQUIRE(run_command(kCli + " bogus").exit_code == 2);
  REQUIRE(run_command(kCli + " sweep --param altitude").exit_code == 2);  // missing --out
  REQUIRE(run_command(kCli + " compute --env lunar").exit_code == 2);
  REQUIRE(run_command(kCli + " compute -c /nonexistent.conf").exit_code == 2);
}

TEST_CASE("compute JSON embeds the manifest") {
  const std::string path = tmp_path("compute.json");
  const auto result = run_command(kCli + " compute --json " + path);
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(testutil::read_file(path));
  REQUIRE(doc["manifest"]["command"] == "compute");
  REQUIRE(doc["manifest"]["version"] == "1.0.0");
  REQUIRE(doc["manifest"]["env"] == "urban");
  REQUIRE(doc["manifest"]["cfg"]["phi_a_deg"] == 90.0);
  REQUIRE(doc["manifest"]["seed"].is_null());
  REQUIRE(doc["results"]["p_cov"].is_number());
  std::remove(path.c_str());
}
