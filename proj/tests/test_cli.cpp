#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "casclab/io.hpp"
#include "casclab/run.hpp"

using namespace casclab;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch_root() {
  return fs::temp_directory_path() / "casclab_cli_tests";
}

std::string fresh_dir(const std::string& tag) {
  fs::path d = scratch_root() / tag;
  fs::remove_all(d);
  fs::create_directories(d);
  return d.string();
}

std::string config(const std::string& name, const std::string& text) {
  fs::create_directories(scratch_root());
  std::string path = (scratch_root() / name).string();
  write_text_file(path, text);
  return path;
}

std::string haar_cfg() {
  return config("haar.json",
                R"({"name":"haar","kind":"laurent","scalar":"exact","mask":[[1,1],[1,1]]})");
}

std::string stretch_cfg() {
  return config(
      "stretch.json",
      R"({"name":"stretch","kind":"laurent","scalar":"exact","mask":[[1,1],[0,1],[0,1],[1,1]]})");
}

std::string shannon_cfg() {
  return config("shannon.json", R"({"name":"shannon","kind":"band","support":[[-1,2],[1,2]]})");
}

json load_json(const std::string& path) { return json::parse(read_text_file(path)); }

std::vector<std::vector<std::string>> load_csv(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    size_t pos = 0;
    while (true) {
      size_t c = line.find(',', pos);
      if (c == std::string::npos) {
        row.push_back(line.substr(pos));
        break;
      }
      row.push_back(line.substr(pos, c - pos));
      pos = c + 1;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("validate reports axioms and exits by outcome") {
  std::string d = fresh_dir("validate");
  CHECK(run({"validate", haar_cfg(), "--out-dir", d}) == 0);
  json j = load_json(d + "/validate_haar.json");
  CHECK(j["filter"] == "haar");
  CHECK(j["passed"] == true);
  CHECK(j["checks"].is_array());

  std::string bad = config("bad.json",
      R"({"name":"bad","kind":"laurent","scalar":"exact","mask":[[1,1],[11,10]]})");
  CHECK(run({"validate", bad, "--out-dir", fresh_dir("validate_bad")}) == 1);
}

TEST_CASE("cascade traces the haar fixed point with zero error") {
  std::string d = fresh_dir("cascade");
  CHECK(run({"cascade", haar_cfg(), "--start", "box:0,1", "--iters", "8",
             "--out-dir", d}) == 0);
  auto rows = load_csv(d + "/cascade_trace.csv");
  REQUIRE(rows.size() == 10);  // header + n = 0..8
  CHECK(rows[0] == std::vector<std::string>{"n", "norm_Mn_h", "norm_diff_phi",
                                            "p2_deviation", "inner_re"});
  for (size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][1] == "1");  // unit norm preserved
    CHECK(rows[i][2] == "0");  // already the scaling function
    CHECK(rows[i][3] == "0");
  }
  json v = load_json(d + "/cascade_verdict.json");
  CHECK(v["phi_model"] == "haar");
  CHECK(v["diagnosis"]["verdict"] == "converges");
  CHECK(v["obstruction"]["verdict"] == "zero_exact");
}

TEST_CASE("cascade clamps runaway ladder depths") {
  std::string d = fresh_dir("cascade_clamp");
  CHECK(run({"cascade", haar_cfg(), "--start", "box:0,1", "--iters", "40",
             "--out-dir", d}) == 0);
  json v = load_json(d + "/cascade_verdict.json");
  CHECK(v["iters"] == 16);
  CHECK(v.contains("note"));
}

TEST_CASE("ruelle reports the stretched fixed space") {
  std::string d = fresh_dir("ruelle");
  CHECK(run({"ruelle", stretch_cfg(), "--degree", "4", "--out-dir", d}) == 0);
  json j = load_json(d + "/ruelle_report.json");
  CHECK(j["exact"] == true);
  CHECK(j["fixed_space"]["dimension"] == 2);
  CHECK(j["spectral_scan"]["mult_one"] == 2);
  CHECK(j["spectral_scan"]["flagged"] == true);
}

TEST_CASE("zak harness passes its tolerance on the default grid") {
  std::string d = fresh_dir("zak");
  CHECK(run({"zak-harness", haar_cfg(), "--grid", "16,16", "--iters", "10",
             "--out-dir", d}) == 0);
  json j = load_json(d + "/zak_harness.json");
  CHECK(j["n_z"] == 16);
  CHECK(j["trials"] == 10);
  CHECK(std::stod(j["rel1_max"].get<std::string>()) <= 1e-10);
  CHECK(std::stod(j["rel2_max"].get<std::string>()) <= 1e-10);
  CHECK(j["pass"] == true);
}

TEST_CASE("wold reports the shannon sets and exact tiling") {
  std::string d = fresh_dir("wold");
  CHECK(run({"wold", shannon_cfg(), "--kmax", "3", "--window", "16",
             "--out-dir", d}) == 0);
  json j = load_json(d + "/wold_sets.json");
  CHECK(j["E"]["period"] == json::array({4, 1}));
  CHECK(j["E"]["base"] ==
        json::array({json::array({json::array({1, 1}), json::array({3, 1})})}));
  CHECK(j["tiling"]["pass"] == true);
  CHECK(j["tiling"]["defect"] == json::array({0, 1}));
  CHECK(j["split_trace"] == "wold_shannon_trace.csv");
  CHECK(fs::exists(d + "/wold_shannon_trace.csv"));
}

TEST_CASE("model check meets its tolerance for haar") {
  std::string d = fresh_dir("model");
  CHECK(run({"model-check", haar_cfg(), "--kmax", "4", "--grid", "64,64",
             "--iters", "10", "--out-dir", d}) == 0);
  json j = load_json(d + "/model_check.json");
  CHECK(j["pass"] == true);
}

TEST_CASE("repeated runs produce byte-identical artifacts") {
  std::string d1 = fresh_dir("det1"), d2 = fresh_dir("det2");
  CHECK(run({"cascade", haar_cfg(), "--start", "box:0,1", "--iters", "6",
             "--out-dir", d1}) == 0);
  CHECK(run({"cascade", haar_cfg(), "--start", "box:0,1", "--iters", "6",
             "--out-dir", d2}) == 0);
  CHECK(dir_diff(d1, d2).empty());
}

TEST_CASE("usage and configuration errors exit with code 2") {
  std::string d = fresh_dir("errors");
  CHECK(run({"validate", "/nonexistent/filter.json", "--out-dir", d}) == 2);
  CHECK(run({}) == 2);                                       // no subcommand
  CHECK(run({"--suite", "nightly"}) == 2);                   // unknown suite
  CHECK(run({"validate"}) == 2);                             // missing filter arg
  CHECK(run({"frobnicate", haar_cfg()}) == 2);               // unknown subcommand
  CHECK(run({"zak-harness", haar_cfg(), "--grid", "15,16", "--out-dir", d}) == 2);
  CHECK(run({"cascade", haar_cfg(), "--start", "box:0,oops", "--out-dir", d}) == 2);
  CHECK(run({"--help"}) == 0);
}

TEST_CASE("thread cap clamps the environment override") {
  CHECK(setenv("CASCADE_LAB_THREADS", "7", 1) == 0);
  CHECK(thread_cap() == 7);
  setenv("CASCADE_LAB_THREADS", "999", 1);
  CHECK(thread_cap() == 64);
  setenv("CASCADE_LAB_THREADS", "0", 1);
  CHECK(thread_cap() == 1);
  setenv("CASCADE_LAB_THREADS", "soon", 1);
  CHECK(thread_cap() == 1);
  unsetenv("CASCADE_LAB_THREADS");
  CHECK(thread_cap() == 1);
}
