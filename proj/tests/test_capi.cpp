// Exercises the shared library strictly through the public C header.
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "scnmine.h"

namespace {

std::filesystem::path tmp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "scnmine_capi_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string p(const char* name) { return (tmp_dir() / name).string(); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

const char* kScript = R"({
  "seed": 7,
  "map_template": "straight_multilane",
  "map_params": {"lanes": 3, "lane_width": 3.75, "length": 900},
  "dt": 0.04,
  "actors": [
    {"vehicle_id": "ego", "lane": "L0", "start_arc": 50, "speed": 30,
     "phases": [{"maneuver": "cruise", "duration": 14}]},
    {"vehicle_id": "l0", "lane": "L0", "start_arc": 90, "speed": 29.6,
     "phases": [{"maneuver": "cruise", "duration": 14}]},
    {"vehicle_id": "c0", "lane": "L1", "start_arc": 65, "speed": 29.6,
     "phases": [{"maneuver": "cruise", "duration": 5},
                {"maneuver": "lane_change", "duration": 3, "target_lane": "L0"},
                {"maneuver": "cruise", "duration": 6}]}
  ]
})";

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("version and default config") {
  CHECK(std::string(scn_version()) == "0.1.0");
  char* cfg = nullptr;
  REQUIRE(scn_default_config_json(&cfg) == SCN_OK);
  std::string text(cfg);
  scn_string_free(cfg);
  CHECK(text.find("\"slice\"") != std::string::npos);
  CHECK(text.find("\"max_interactive\": 10") != std::string::npos);
}

TEST_CASE("full pipeline through the C API") {
  write_file(p("script.json"), kScript);

  REQUIRE(scn_generate(p("script.json").c_str(), p("tracks.csv").c_str(), p("map.json").c_str(),
                       p("truth.json").c_str()) == SCN_OK);

  scn_dataset* ds = nullptr;
  REQUIRE(scn_dataset_open(p("tracks.csv").c_str(), p("map.json").c_str(), nullptr, &ds) == SCN_OK);
  REQUIRE(ds != nullptr);

  char* report_json = nullptr;
  REQUIRE(scn_dataset_validate(ds, nullptr, &report_json) == SCN_OK);
  CHECK(std::string(report_json).find("finding_count") != std::string::npos);
  scn_string_free(report_json);

  scn_atoms* atoms = nullptr;
  REQUIRE(scn_slice(ds, nullptr, "ego", &atoms) == SCN_OK);
  CHECK(scn_atoms_count(atoms) == 3);

  REQUIRE(scn_atoms_save(atoms, p("atoms.jsonl").c_str()) == SCN_OK);
  scn_atoms* loaded = nullptr;
  REQUIRE(scn_atoms_load(p("atoms.jsonl").c_str(), &loaded) == SCN_OK);
  CHECK(scn_atoms_count(loaded) == 3);

  char* stats_json = nullptr;
  REQUIRE(scn_atoms_stats_json(loaded, 0.04, &stats_json) == SCN_OK);
  write_file(p("stats.json"), stats_json);
  CHECK(std::string(stats_json).find("filtered_proportion") != std::string::npos);
  scn_string_free(stats_json);

  char* dist_json = nullptr;
  REQUIRE(scn_distance_json(ds, loaded, 0, 2, nullptr, &dist_json) == SCN_OK);
  std::string dist_text(dist_json);
  scn_string_free(dist_json);
  CHECK(dist_text.find("\"a_id\":0") != std::string::npos);
  CHECK(dist_text.find("\"normalized\"") != std::string::npos);

  scn_matrix* matrix = nullptr;
  REQUIRE(scn_matrix_compute(ds, loaded, "following_line", nullptr, &matrix) == SCN_OK);
  CHECK(scn_matrix_size(matrix) == 2);
  REQUIRE(scn_matrix_save_csv(matrix, p("d.csv").c_str()) == SCN_OK);

  scn_matrix* matrix_back = nullptr;
  REQUIRE(scn_matrix_load_csv(p("d.csv").c_str(), &matrix_back) == SCN_OK);
  CHECK(scn_matrix_size(matrix_back) == 2);

  scn_report* report = nullptr;
  REQUIRE(scn_label(matrix_back, ds, loaded, "{\"label\": {\"min_pts\": 1}}", &report) == SCN_OK);
  char* label_json = nullptr;
  REQUIRE(scn_report_json(report, &label_json) == SCN_OK);
  write_file(p("report.json"), label_json);
  CHECK(std::string(label_json).find("graph_dtw_extreme") != std::string::npos);
  scn_string_free(label_json);

  char* venn = nullptr;
  REQUIRE(scn_report_venn_json(report, &venn) == SCN_OK);
  CHECK(std::string(venn).find("union_size") != std::string::npos);
  scn_string_free(venn);

  scn_report* reloaded = nullptr;
  REQUIRE(scn_report_load(p("report.json").c_str(), &reloaded) == SCN_OK);
  REQUIRE(scn_report_export(reloaded, p("stats.json").c_str(), p("plotdata").c_str()) == SCN_OK);
  CHECK(read_all(p("plotdata/scatter.csv")).find("id,x,y,density") == 0);
  CHECK(read_all(p("plotdata/counts_hist.csv")).find("interactive_count") == 0);

  scn_report_free(reloaded);
  scn_report_free(report);
  scn_matrix_free(matrix_back);
  scn_matrix_free(matrix);
  scn_atoms_free(loaded);
  scn_atoms_free(atoms);
  scn_dataset_close(ds);
}

TEST_CASE("error paths set status and message") {
  scn_dataset* ds = nullptr;
  CHECK(scn_dataset_open("/nonexistent/tracks.csv", "/nonexistent/map.json", nullptr, &ds) == SCN_ERR_IO);
  CHECK(std::string(scn_last_error()).find("nonexistent") != std::string::npos);

  scn_atoms* atoms = nullptr;
  CHECK(scn_atoms_load("/nonexistent/atoms.jsonl", &atoms) == SCN_ERR_IO);

  write_file(p("bad_config.json"), R"({"bogus_section": {}})");
  write_file(p("mini_map.json"), R"({"lanes": [{"lane_id": "L0", "centerline": [[0,0],[50,0]]}]})");
  write_file(p("mini.csv"), "frame,id,x,y,xVelocity,yVelocity\n0,1,0,0,1,0\n1,1,0.04,0,1,0\n");
  CHECK(scn_dataset_open(p("mini.csv").c_str(), p("mini_map.json").c_str(),
                         p("bad_config.json").c_str(), &ds) == SCN_ERR_CONFIG);

  // unknown interaction type name
  REQUIRE(scn_dataset_open(p("mini.csv").c_str(), p("mini_map.json").c_str(), nullptr, &ds) == SCN_OK);
  scn_atoms* sliced = nullptr;
  REQUIRE(scn_slice(ds, nullptr, nullptr, &sliced) == SCN_OK);
  scn_matrix* m = nullptr;
  CHECK(scn_matrix_compute(ds, sliced, "not_a_type", nullptr, &m) == SCN_ERR_SCHEMA);
  scn_atoms_free(sliced);
  scn_dataset_close(ds);
}
