#include <doctest.h>

#include "config.hpp"
#include "error.hpp"

using namespace scn;

TEST_CASE("default config round-trips through JSON") {
  PipelineConfig cfg = default_pipeline_config();
  std::string text = pipeline_config_json_text(cfg);
  PipelineConfig back = pipeline_config_from_json_text(text);
  CHECK(pipeline_config_json_text(back) == text);
  CHECK(back.slice.max_interactive == 10);
  CHECK(back.metric.levels == 3);
  CHECK(back.metric.lambda_v2v == doctest::Approx(0.5));
  CHECK(back.dtw.window == 25);
  CHECK(back.label.ttc_highway == doctest::Approx(1.0));
  CHECK(back.label.ttc_intersection == doctest::Approx(0.5));
}

TEST_CASE("unknown keys are rejected") {
  CHECK_THROWS_AS(pipeline_config_from_json_text(R"({"slicer": {}})"), Error);
  CHECK_THROWS_AS(pipeline_config_from_json_text(R"({"slice": {"max_vehicles": 3}})"), Error);
}

TEST_CASE("invalid values are rejected") {
  CHECK_THROWS_AS(pipeline_config_from_json_text(R"({"ingest": {"smoothing_window": 4}})"), Error);
  CHECK_THROWS_AS(pipeline_config_from_json_text(R"({"metric": {"lambda_v2v": 0.9, "lambda_v2n": 0.9}})"), Error);
  CHECK_THROWS_AS(pipeline_config_from_json_text(R"({"dtw": {"stride": 0}})"), Error);
  CHECK_THROWS_AS(pipeline_config_from_json_text("not json"), Error);
}

TEST_CASE("partial overrides keep the other defaults") {
  PipelineConfig cfg = pipeline_config_from_json_text(R"({"dtw": {"window": 50}})");
  CHECK(cfg.dtw.window == 50);
  CHECK(cfg.dtw.stride == 1);
  CHECK(cfg.slice.max_interactive == 10);
}
