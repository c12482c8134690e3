#ifndef SCNMINE_CONFIG_HPP
#define SCNMINE_CONFIG_HPP

#include <string>

#include "graph_dtw.hpp"
#include "labeling.hpp"
#include "slicing.hpp"
#include "types.hpp"

namespace scn {

/// Nested pipeline configuration; every paper-unspecified knob lives here
/// with an explicit default. Unknown keys are rejected.
struct PipelineConfig {
  IngestConfig ingest;
  SliceConfig slice;
  MetricConfig metric;
  DtwConfig dtw;
  LabelConfig label;
  int threads = 0;  // 0: hardware concurrency; SCN_THREADS overrides
};

PipelineConfig default_pipeline_config();
PipelineConfig pipeline_config_from_json_text(const std::string& text);
PipelineConfig load_pipeline_config(const std::string& path);
std::string pipeline_config_json_text(const PipelineConfig& cfg);

}  // namespace scn

#endif
