// Command-line front end over the scnmine C API.
//
// Subcommands compose the pipeline: gen | ingest | slice | stats | dist |
// matrix | label | venn | export. Errors go to stderr as a JSON object;
// exit codes: 0 success, 1 pipeline error, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "scnmine.h"

namespace {

int fail(scn_status status) {
  std::string code;
  switch (status) {
    case SCN_ERR_IO: code = "io"; break;
    case SCN_ERR_PARSE: code = "parse"; break;
    case SCN_ERR_SCHEMA: code = "schema"; break;
    case SCN_ERR_CONFIG: code = "config"; break;
    case SCN_ERR_USAGE: code = "usage"; break;
    case SCN_ERR_COMPUTE: code = "compute"; break;
    default: code = "internal"; break;
  }
  std::string message = scn_last_error();
  std::string escaped;
  for (char c : message) {
    if (c == '"' || c == '\\') escaped += '\\';
    if (c == '\n') {
      escaped += "\\n";
      continue;
    }
    escaped += c;
  }
  std::cerr << "{\"error\": {\"code\": \"" << code << "\", \"message\": \"" << escaped << "\"}}\n";
  return status == SCN_ERR_USAGE ? 2 : 1;
}

struct StringOut {
  char* value = nullptr;
  ~StringOut() { scn_string_free(value); }
};

bool write_file(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  return true;
}

using DatasetPtr = std::unique_ptr<scn_dataset, decltype(&scn_dataset_close)>;
using AtomsPtr = std::unique_ptr<scn_atoms, decltype(&scn_atoms_free)>;
using MatrixPtr = std::unique_ptr<scn_matrix, decltype(&scn_matrix_free)>;
using ReportPtr = std::unique_ptr<scn_report, decltype(&scn_report_free)>;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scnmine: interaction-typed scenario slicing, comparison and labeling"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::string config_path;
  app.add_option("--config", config_path, "pipeline config JSON (file path)")->capture_default_str();

  bool print_config = false;
  app.add_flag("--print-config", print_config, "print the effective config JSON and exit");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset from a script");
  std::string gen_spec, gen_tracks, gen_map, gen_truth;
  gen->add_option("--spec", gen_spec, "script spec JSON")->required();
  gen->add_option("--out-tracks", gen_tracks, "output tracks CSV")->required();
  gen->add_option("--out-map", gen_map, "output road map JSON")->required();
  gen->add_option("--out-truth", gen_truth, "output ground truth JSON");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "normalize raw tracks (resample + smooth + validate)");
  std::string in_tracks, in_map, in_out, in_report;
  ingest->add_option("--tracks", in_tracks, "raw tracks CSV")->required();
  ingest->add_option("--map", in_map, "road map JSON")->required();
  ingest->add_option("--out", in_out, "normalized tracks CSV")->required();
  ingest->add_option("--report", in_report, "validation report JSON path");

  // slice
  auto* slice = app.add_subcommand("slice", "slice the stream into atom scenarios");
  std::string sl_tracks, sl_map, sl_out, sl_ego;
  slice->add_option("--tracks", sl_tracks, "tracks CSV")->required();
  slice->add_option("--map", sl_map, "road map JSON")->required();
  slice->add_option("--out", sl_out, "atom scenarios JSONL")->required();
  slice->add_option("--ego", sl_ego, "slice a single ego id (default: all vehicles)");

  // stats
  auto* stats = app.add_subcommand("stats", "segment statistics for sliced scenarios");
  std::string st_atoms, st_out;
  double st_dt = 0.04;
  stats->add_option("--atoms", st_atoms, "atom scenarios JSONL")->required();
  stats->add_option("--out", st_out, "stats JSON path (default: stdout)");
  stats->add_option("--dt", st_dt, "seconds per frame")->capture_default_str();

  // dist
  auto* dist = app.add_subcommand("dist", "Graph-DTW distance of one scenario pair");
  std::string d_atoms, d_tracks, d_map;
  int d_a = 0, d_b = 0;
  dist->add_option("--atoms", d_atoms, "atom scenarios JSONL")->required();
  dist->add_option("--tracks", d_tracks, "tracks CSV")->required();
  dist->add_option("--map", d_map, "road map JSON")->required();
  dist->add_option("--a", d_a, "first scenario id")->required();
  dist->add_option("--b", d_b, "second scenario id")->required();

  // matrix
  auto* matrix = app.add_subcommand("matrix", "pairwise Graph-DTW matrix within one interaction type");
  std::string m_atoms, m_tracks, m_map, m_type, m_out;
  matrix->add_option("--atoms", m_atoms, "atom scenarios JSONL")->required();
  matrix->add_option("--tracks", m_tracks, "tracks CSV")->required();
  matrix->add_option("--map", m_map, "road map JSON")->required();
  matrix->add_option("--type", m_type, "interaction type filter (e.g. static_conflict_line)");
  matrix->add_option("--out", m_out, "distance matrix CSV")->required();

  // label
  auto* label = app.add_subcommand("label", "DBSCAN + MDS + KDE labeling over a distance matrix");
  std::string l_matrix, l_atoms, l_tracks, l_map, l_out, l_coords;
  label->add_option("--matrix", l_matrix, "distance matrix CSV")->required();
  label->add_option("--atoms", l_atoms, "atom scenarios JSONL (enables TTC/vector-DTW flags)");
  label->add_option("--tracks", l_tracks, "tracks CSV");
  label->add_option("--map", l_map, "road map JSON");
  label->add_option("--out", l_out, "label report JSON path (default: stdout)");
  label->add_option("--coords", l_coords, "coordinates CSV path");

  // venn
  auto* venn = app.add_subcommand("venn", "Venn region counts from a label report");
  std::string v_report;
  venn->add_option("--report", v_report, "label report JSON")->required();

  // export
  auto* exp = app.add_subcommand("export", "plot-data CSVs from a label report (+ stats)");
  std::string e_report, e_stats, e_out;
  exp->add_option("--report", e_report, "label report JSON")->required();
  exp->add_option("--stats", e_stats, "stats JSON");
  exp->add_option("--out", e_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "{\"error\": {\"code\": \"usage\", \"message\": \"" << e.what() << "\"}}\n";
    return 2;
  }

  const char* cfg = config_path.empty() ? nullptr : config_path.c_str();

  if (print_config) {
    StringOut s;
    if (scn_default_config_json(&s.value) != SCN_OK) return fail(SCN_ERR_INTERNAL);
    std::cout << s.value;
    return 0;
  }

  if (gen->parsed()) {
    scn_status st = scn_generate(gen_spec.c_str(), gen_tracks.c_str(), gen_map.c_str(),
                                 gen_truth.empty() ? nullptr : gen_truth.c_str());
    return st == SCN_OK ? 0 : fail(st);
  }

  if (ingest->parsed()) {
    StringOut report;
    scn_status st = scn_ingest(in_tracks.c_str(), in_map.c_str(), cfg, in_out.c_str(), &report.value);
    if (st != SCN_OK) return fail(st);
    if (!in_report.empty()) {
      if (!write_file(in_report, report.value)) return fail(SCN_ERR_IO);
    } else {
      std::cout << report.value;
    }
    return 0;
  }

  if (slice->parsed()) {
    DatasetPtr ds(nullptr, scn_dataset_close);
    scn_dataset* raw = nullptr;
    scn_status st = scn_dataset_open(sl_tracks.c_str(), sl_map.c_str(), cfg, &raw);
    if (st != SCN_OK) return fail(st);
    ds.reset(raw);
    scn_atoms* atoms_raw = nullptr;
    st = scn_slice(ds.get(), cfg, sl_ego.empty() ? nullptr : sl_ego.c_str(), &atoms_raw);
    if (st != SCN_OK) return fail(st);
    AtomsPtr atoms(atoms_raw, scn_atoms_free);
    st = scn_atoms_save(atoms.get(), sl_out.c_str());
    return st == SCN_OK ? 0 : fail(st);
  }

  if (stats->parsed()) {
    scn_atoms* atoms_raw = nullptr;
    scn_status st = scn_atoms_load(st_atoms.c_str(), &atoms_raw);
    if (st != SCN_OK) return fail(st);
    AtomsPtr atoms(atoms_raw, scn_atoms_free);
    StringOut out;
    st = scn_atoms_stats_json(atoms.get(), st_dt, &out.value);
    if (st != SCN_OK) return fail(st);
    if (!st_out.empty()) {
      if (!write_file(st_out, out.value)) return fail(SCN_ERR_IO);
    } else {
      std::cout << out.value;
    }
    return 0;
  }

  if (dist->parsed()) {
    scn_dataset* ds_raw = nullptr;
    scn_status st = scn_dataset_open(d_tracks.c_str(), d_map.c_str(), cfg, &ds_raw);
    if (st != SCN_OK) return fail(st);
    DatasetPtr ds(ds_raw, scn_dataset_close);
    scn_atoms* atoms_raw = nullptr;
    st = scn_atoms_load(d_atoms.c_str(), &atoms_raw);
    if (st != SCN_OK) return fail(st);
    AtomsPtr atoms(atoms_raw, scn_atoms_free);
    StringOut out;
    st = scn_distance_json(ds.get(), atoms.get(), d_a, d_b, cfg, &out.value);
    if (st != SCN_OK) return fail(st);
    std::cout << out.value;
    return 0;
  }

  if (matrix->parsed()) {
    scn_dataset* ds_raw = nullptr;
    scn_status st = scn_dataset_open(m_tracks.c_str(), m_map.c_str(), cfg, &ds_raw);
    if (st != SCN_OK) return fail(st);
    DatasetPtr ds(ds_raw, scn_dataset_close);
    scn_atoms* atoms_raw = nullptr;
    st = scn_atoms_load(m_atoms.c_str(), &atoms_raw);
    if (st != SCN_OK) return fail(st);
    AtomsPtr atoms(atoms_raw, scn_atoms_free);
    scn_matrix* m_raw = nullptr;
    st = scn_matrix_compute(ds.get(), atoms.get(), m_type.empty() ? nullptr : m_type.c_str(), cfg, &m_raw);
    if (st != SCN_OK) return fail(st);
    MatrixPtr m(m_raw, scn_matrix_free);
    st = scn_matrix_save_csv(m.get(), m_out.c_str());
    return st == SCN_OK ? 0 : fail(st);
  }

  if (label->parsed()) {
    scn_matrix* m_raw = nullptr;
    scn_status st = scn_matrix_load_csv(l_matrix.c_str(), &m_raw);
    if (st != SCN_OK) return fail(st);
    MatrixPtr m(m_raw, scn_matrix_free);

    DatasetPtr ds(nullptr, scn_dataset_close);
    AtomsPtr atoms(nullptr, scn_atoms_free);
    if (!l_atoms.empty() && !l_tracks.empty() && !l_map.empty()) {
      scn_dataset* ds_raw = nullptr;
      st = scn_dataset_open(l_tracks.c_str(), l_map.c_str(), cfg, &ds_raw);
      if (st != SCN_OK) return fail(st);
      ds.reset(ds_raw);
      scn_atoms* atoms_raw = nullptr;
      st = scn_atoms_load(l_atoms.c_str(), &atoms_raw);
      if (st != SCN_OK) return fail(st);
      atoms.reset(atoms_raw);
    } else if (!l_atoms.empty() || !l_tracks.empty() || !l_map.empty()) {
      std::cerr << "{\"error\": {\"code\": \"usage\", \"message\": "
                   "\"--atoms, --tracks and --map must be given together\"}}\n";
      return 2;
    }

    scn_report* r_raw = nullptr;
    st = scn_label(m.get(), ds.get(), atoms.get(), cfg, &r_raw);
    if (st != SCN_OK) return fail(st);
    ReportPtr report(r_raw, scn_report_free);
    StringOut out;
    st = scn_report_json(report.get(), &out.value);
    if (st != SCN_OK) return fail(st);
    if (!l_out.empty()) {
      if (!write_file(l_out, out.value)) return fail(SCN_ERR_IO);
    } else {
      std::cout << out.value;
    }
    if (!l_coords.empty()) {
      StringOut csv;
      st = scn_report_coords_csv(report.get(), &csv.value);
      if (st != SCN_OK) return fail(st);
      if (!write_file(l_coords, csv.value)) return fail(SCN_ERR_IO);
    }
    return 0;
  }

  if (venn->parsed()) {
    scn_report* r_raw = nullptr;
    scn_status st = scn_report_load(v_report.c_str(), &r_raw);
    if (st != SCN_OK) return fail(st);
    ReportPtr report(r_raw, scn_report_free);
    StringOut out;
    st = scn_report_venn_json(report.get(), &out.value);
    if (st != SCN_OK) return fail(st);
    std::cout << out.value;
    return 0;
  }

  if (exp->parsed()) {
    scn_report* r_raw = nullptr;
    scn_status st = scn_report_load(e_report.c_str(), &r_raw);
    if (st != SCN_OK) return fail(st);
    ReportPtr report(r_raw, scn_report_free);
    st = scn_report_export(report.get(), e_stats.empty() ? nullptr : e_stats.c_str(), e_out.c_str());
    return st == SCN_OK ? 0 : fail(st);
  }

  return 2;
}
