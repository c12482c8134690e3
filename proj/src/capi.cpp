#include "scnmine.h"

#include <cstring>
#include <string>

#include "config.hpp"
#include "error.hpp"
#include "pipeline.hpp"

using namespace scn;

struct scn_dataset {
  Dataset data;
};
struct scn_atoms {
  std::vector<AtomScenario> atoms;
};
struct scn_matrix {
  DistanceMatrix m;
};
struct scn_report {
  LabelReport report;
};

namespace {

thread_local std::string g_last_error;

scn_status status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError: return SCN_ERR_IO;
    case ErrorCode::MissingColumn:
    case ErrorCode::MalformedRow:
    case ErrorCode::DuplicateSample: return SCN_ERR_PARSE;
    case ErrorCode::SchemaError:
    case ErrorCode::DanglingReference:
    case ErrorCode::InvalidScript: return SCN_ERR_SCHEMA;
    case ErrorCode::ConfigError: return SCN_ERR_CONFIG;
    case ErrorCode::UsageError:
    case ErrorCode::EgoAbsent:
    case ErrorCode::TooFewScenarios:
    case ErrorCode::UniverseMismatch: return SCN_ERR_USAGE;
    default: return SCN_ERR_COMPUTE;
  }
}

template <typename Fn>
scn_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return SCN_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_for(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SCN_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SCN_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

PipelineConfig config_from(const char* config_json) {
  if (config_json == nullptr || *config_json == '\0') return default_pipeline_config();
  std::string text(config_json);
  // accept either inline JSON or a path to a JSON file
  if (text.find('{') == std::string::npos) return load_pipeline_config(text);
  return pipeline_config_from_json_text(text);
}

std::string validation_report_json(const ValidationReport& report) {
  std::string out = "{\n  \"findings\": [";
  for (std::size_t i = 0; i < report.findings.size(); ++i) {
    const auto& f = report.findings[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"vehicle_id\": \"" + f.vehicle_id + "\", \"frame\": " + std::to_string(f.frame) +
           ", \"kind\": \"" + f.kind + "\", \"detail\": \"" + f.detail + "\"}";
  }
  out += report.findings.empty() ? "],\n" : "\n  ],\n";
  out += "  \"finding_count\": " + std::to_string(report.findings.size()) + "\n}\n";
  return out;
}

}  // namespace

extern "C" {

const char* scn_version(void) { return "0.1.0"; }

const char* scn_last_error(void) { return g_last_error.c_str(); }

void scn_string_free(char* s) { delete[] s; }

scn_status scn_default_config_json(char** out_json) {
  return guarded([&] { *out_json = dup_string(pipeline_config_json_text(default_pipeline_config())); });
}

scn_status scn_generate(const char* script_json_path, const char* out_tracks_csv,
                        const char* out_map_json, const char* out_truth_json) {
  return guarded([&] {
    run_gen(script_json_path, out_tracks_csv, out_map_json,
            out_truth_json ? out_truth_json : std::string());
  });
}

scn_status scn_dataset_open(const char* tracks_csv_path, const char* map_json_path,
                            const char* config_json, scn_dataset** out) {
  return guarded([&] {
    PipelineConfig cfg = config_from(config_json);
    auto* ds = new scn_dataset{load_dataset(tracks_csv_path, map_json_path, cfg)};
    *out = ds;
  });
}

void scn_dataset_close(scn_dataset* ds) { delete ds; }

scn_status scn_ingest(const char* tracks_csv_path, const char* map_json_path,
                      const char* config_json, const char* out_normalized_csv,
                      char** out_report_json) {
  return guarded([&] {
    PipelineConfig cfg = config_from(config_json);
    ValidationReport report = run_ingest(tracks_csv_path, map_json_path, cfg,
                                         out_normalized_csv ? out_normalized_csv : std::string());
    if (out_report_json) *out_report_json = dup_string(validation_report_json(report));
  });
}

scn_status scn_dataset_validate(const scn_dataset* ds, const char* config_json,
                                char** out_report_json) {
  return guarded([&] {
    PipelineConfig cfg = config_from(config_json);
    ValidationReport report = validate(ds->data.tracks, ds->data.map, cfg.ingest);
    *out_report_json = dup_string(validation_report_json(report));
  });
}

scn_status scn_slice(const scn_dataset* ds, const char* config_json, const char* ego_id,
                     scn_atoms** out) {
  return guarded([&] {
    PipelineConfig cfg = config_from(config_json);
    std::optional<std::string> ego;
    if (ego_id && *ego_id) ego = std::string(ego_id);
    auto* atoms = new scn_atoms{run_slice(ds->data, cfg, ego)};
    *out = atoms;
  });
}

scn_status scn_atoms_load(const char* jsonl_path, scn_atoms** out) {
  return guarded([&] { *out = new scn_atoms{read_atoms_jsonl(jsonl_path)}; });
}

scn_status scn_atoms_save(const scn_atoms* atoms, const char* jsonl_path) {
  return guarded([&] { write_atoms_jsonl(atoms->atoms, jsonl_path); });
}

int scn_atoms_count(const scn_atoms* atoms) {
  return atoms ? static_cast<int>(atoms->atoms.size()) : 0;
}

scn_status scn_atoms_stats_json(const scn_atoms* atoms, double dt, char** out_json) {
  return guarded([&] { *out_json = dup_string(stats_report_json(segment_stats(atoms->atoms, dt))); });
}

void scn_atoms_free(scn_atoms* atoms) { delete atoms; }

scn_status scn_distance_json(const scn_dataset* ds, const scn_atoms* atoms, int id_a, int id_b,
                             const char* config_json, char** out_json) {
  return guarded([&] {
    PipelineConfig cfg = config_from(config_json);
    *out_json = dup_string(run_dist_json(ds->data, atoms->atoms, id_a, id_b, cfg));
  });
}

scn_status scn_matrix_compute(const scn_dataset* ds, const scn_atoms* atoms,
                              const char* interaction_type, const char* config_json,
                              scn_matrix** out) {
  return guarded([&] {
    PipelineConfig cfg = config_from(config_json);
    std::optional<InteractionType> type;
    if (interaction_type && *interaction_type) type = interaction_type_from_name(interaction_type);
    *out = new scn_matrix{run_matrix(ds->data, atoms->atoms, type, cfg)};
  });
}

scn_status scn_matrix_load_csv(const char* path, scn_matrix** out) {
  return guarded([&] { *out = new scn_matrix{read_distance_matrix_csv(path)}; });
}

scn_status scn_matrix_save_csv(const scn_matrix* m, const char* path) {
  return guarded([&] { write_distance_matrix_csv(m->m, path); });
}

int scn_matrix_size(const scn_matrix* m) { return m ? m->m.n() : 0; }

void scn_matrix_free(scn_matrix* m) { delete m; }

scn_status scn_label(const scn_matrix* m, const scn_dataset* ds, const scn_atoms* atoms,
                     const char* config_json, scn_report** out) {
  return guarded([&] {
    PipelineConfig cfg = config_from(config_json);
    *out = new scn_report{run_label(m->m, ds ? &ds->data : nullptr, atoms ? &atoms->atoms : nullptr, cfg)};
  });
}

scn_status scn_report_load(const char* report_json_path, scn_report** out) {
  return guarded([&] { *out = new scn_report{label_report_from_json_text(read_text_file(report_json_path))}; });
}

scn_status scn_report_json(const scn_report* r, char** out_json) {
  return guarded([&] { *out_json = dup_string(label_report_json(r->report)); });
}

scn_status scn_report_venn_json(const scn_report* r, char** out_json) {
  return guarded([&] { *out_json = dup_string(venn_json(r->report.venn)); });
}

scn_status scn_report_coords_csv(const scn_report* r, char** out_csv) {
  return guarded([&] { *out_csv = dup_string(label_coords_csv(r->report)); });
}

scn_status scn_report_export(const scn_report* r, const char* stats_json_path, const char* out_dir) {
  return guarded([&] {
    if (stats_json_path && *stats_json_path) {
      StatsReport stats = stats_report_from_json_text(read_text_file(stats_json_path));
      export_plotdata(r->report, &stats, out_dir);
    } else {
      export_plotdata(r->report, nullptr, out_dir);
    }
  });
}

void scn_report_free(scn_report* r) { delete r; }

}  // extern "C"
