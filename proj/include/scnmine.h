/*
 * scnmine — trajectory scenario mining engine.
 *
 * C API over the C++ core: opaque handles, integer status codes, and a
 * thread-local last-error message. All strings returned through `char**`
 * out-parameters are heap-allocated by the library and must be released
 * with scn_string_free().
 *
 * Configuration is passed as a JSON document (see `scn_default_config_json`
 * for the full schema with defaults); NULL means defaults everywhere.
 */
#ifndef SCNMINE_H
#define SCNMINE_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SCN_API __declspec(dllexport)
#else
#define SCN_API __attribute__((visibility("default")))
#endif

typedef enum scn_status {
  SCN_OK = 0,
  SCN_ERR_IO = 1,
  SCN_ERR_PARSE = 2,     /* malformed input data */
  SCN_ERR_SCHEMA = 3,    /* schema violation or dangling reference */
  SCN_ERR_CONFIG = 4,    /* bad configuration */
  SCN_ERR_USAGE = 5,     /* invalid argument (unknown id, bad type name) */
  SCN_ERR_COMPUTE = 6,   /* numerical/algorithmic failure */
  SCN_ERR_INTERNAL = 7
} scn_status;

typedef struct scn_dataset scn_dataset;  /* tracks + road map on the frame grid */
typedef struct scn_atoms scn_atoms;      /* sliced atom scenarios */
typedef struct scn_matrix scn_matrix;    /* pairwise scenario distance matrix */
typedef struct scn_report scn_report;    /* labeling report */

SCN_API const char* scn_version(void);

/* Message for the most recent failure on this thread ("" when none). */
SCN_API const char* scn_last_error(void);

SCN_API void scn_string_free(char* s);

/* Full configuration schema with defaults, as a JSON document. */
SCN_API scn_status scn_default_config_json(char** out_json);

/* ---- synthetic generation ---------------------------------------------- */

/* Script JSON -> tracks CSV + road map JSON (+ ground truth JSON when
 * out_truth is non-NULL). Deterministic for a fixed script. */
SCN_API scn_status scn_generate(const char* script_json_path, const char* out_tracks_csv,
                                const char* out_map_json, const char* out_truth_json);

/* ---- datasets ------------------------------------------------------------ */

SCN_API scn_status scn_dataset_open(const char* tracks_csv_path, const char* map_json_path,
                                    const char* config_json, scn_dataset** out);
SCN_API void scn_dataset_close(scn_dataset* ds);

/* Parse + resample + smooth + validate; writes the normalized CSV and the
 * validation report JSON. */
SCN_API scn_status scn_ingest(const char* tracks_csv_path, const char* map_json_path,
                              const char* config_json, const char* out_normalized_csv,
                              char** out_report_json);

SCN_API scn_status scn_dataset_validate(const scn_dataset* ds, const char* config_json,
                                        char** out_report_json);

/* ---- slicing ------------------------------------------------------------- */

/* ego_id NULL slices every vehicle as ego. */
SCN_API scn_status scn_slice(const scn_dataset* ds, const char* config_json, const char* ego_id,
                             scn_atoms** out);

SCN_API scn_status scn_atoms_load(const char* jsonl_path, scn_atoms** out);
SCN_API scn_status scn_atoms_save(const scn_atoms* atoms, const char* jsonl_path);
SCN_API int scn_atoms_count(const scn_atoms* atoms);
SCN_API scn_status scn_atoms_stats_json(const scn_atoms* atoms, double dt, char** out_json);
SCN_API void scn_atoms_free(scn_atoms* atoms);

/* ---- distances ------------------------------------------------------------ */

/* {"a_id":..,"b_id":..,"normalized":..,"M":..,"N":..,"W":..} */
SCN_API scn_status scn_distance_json(const scn_dataset* ds, const scn_atoms* atoms, int id_a,
                                     int id_b, const char* config_json, char** out_json);

/* interaction_type NULL compares all atoms; otherwise one of
 * following_line | heading_line | dynamic_conflict_line | static_conflict_line |
 * static_conflict_point | free_driving. */
SCN_API scn_status scn_matrix_compute(const scn_dataset* ds, const scn_atoms* atoms,
                                      const char* interaction_type, const char* config_json,
                                      scn_matrix** out);
SCN_API scn_status scn_matrix_load_csv(const char* path, scn_matrix** out);
SCN_API scn_status scn_matrix_save_csv(const scn_matrix* m, const char* path);
SCN_API int scn_matrix_size(const scn_matrix* m);
SCN_API void scn_matrix_free(scn_matrix* m);

/* ---- labeling ------------------------------------------------------------- */

/* ds/atoms may be NULL: then only Graph-DTW clustering runs and the TTC /
 * vector-DTW flags (and Venn counts) are absent. */
SCN_API scn_status scn_label(const scn_matrix* m, const scn_dataset* ds, const scn_atoms* atoms,
                             const char* config_json, scn_report** out);
SCN_API scn_status scn_report_load(const char* report_json_path, scn_report** out);
SCN_API scn_status scn_report_json(const scn_report* r, char** out_json);
SCN_API scn_status scn_report_venn_json(const scn_report* r, char** out_json);
SCN_API scn_status scn_report_coords_csv(const scn_report* r, char** out_csv);

/* Writes counts_hist.csv, durations_hist.csv, filtered.csv and scatter.csv
 * into out_dir; stats_json_path may be NULL (headers-only histograms). */
SCN_API scn_status scn_report_export(const scn_report* r, const char* stats_json_path,
                                     const char* out_dir);
SCN_API void scn_report_free(scn_report* r);

#ifdef __cplusplus
}
#endif

#endif /* SCNMINE_H */
