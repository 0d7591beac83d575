#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace actchain {

// Every tunable of the pipeline, with defaults matching the operating
// point described throughout the docs. Serialized as flat JSON sections;
// unknown keys are rejected so a typo cannot silently fall back to a
// default.
struct TimeConfig {
  double utc_offset_hours = 8.0;
  bool exclude_weekends = true;
};

struct IngestConfig {
  int sparse_slots_per_day = 48;      // 30-minute slots
  int sparse_min_slots = 12;          // days with fewer occupied slots drop
  double visitor_min_span_days = 14;  // check-in users below this drop
  double max_malformed_frac = 0.01;
  double station_grid_cell_m = 1000.0;
};

struct StayConfig {
  double burst_gap_s = 600.0;
  double denoise_eps_m = 50.0;
  int denoise_min_samples = 2;
  double place_eps_m = 300.0;
  int place_min_samples = 1;
  double stay_min_duration_s = 600.0;
};

struct LabelConfig {
  double night_start_hour = 22.0;  // home window crosses midnight
  double night_end_hour = 6.0;
  double work_start_hour = 8.0;
  double work_end_hour = 18.0;
  double resident_min_home_frac = 0.30;
  double work_min_home_dist_m = 500.0;
  double work_min_days_per_week = 2.0;
  bool rank_places_by_duration = true;  // false: rank by record count
};

struct BayesConfig {
  int temporal_slots = 144;  // 10-minute slots
  double candidate_buffer_m = 900.0;
  double laplace_pseudocount = 1.0;
};

struct ValidateConfig {
  double window_start_hour = 7.0;
  double window_end_hour = 22.0;
  int bootstrap_subsets = 20;
  double bootstrap_frac = 0.20;
  double bootstrap_level = 0.75;
  std::uint64_t bootstrap_seed = 7;
};

struct LdaConfig {
  int topics = 6;
  std::string alpha = "symmetric";  // "symmetric", "asymmetric", or a number
  std::string beta = "symmetric";
  int sweeps = 1000;
  int burn_in = 800;
  std::uint64_t seed = 13;
  int doc_start_hour = 6;
  int doc_end_hour = 22;   // 32 half-hour tokens
  double max_gap_frac = 0.5;
  int coherence_top_n = 4;
  bool per_user_aggregate = false;  // default document unit: user-day
  // Hyperparameter sweep grid (shorter chains than the main fit).
  int sweep_topics_min = 1;
  int sweep_topics_max = 10;
  int sweep_sweeps = 200;
  int sweep_burn_in = 150;
  std::vector<std::string> sweep_alphas = {"symmetric", "asymmetric"};
  std::vector<std::string> sweep_betas = {"symmetric"};
};

struct SynthConfig {
  std::uint64_t seed = 42;
  int n_stations = 1200;
  double disc_radius_km = 4.0;
  int pois_per_type = 12;
  int n_agents = 500;
  double commuter_fraction = 0.7;
  std::vector<double> archetype_mix = {0.4, 0.3, 0.3};  // work/leisure/home-led
  double record_rate_per_day = 40.0;
  double reassign_prob = 0.1;
  int study_days = 14;
  double checkin_rate_per_hour = 6.0;
  double travel_speed_kmh = 25.0;
  double origin_lon = 121.47;
  double origin_lat = 31.23;
};

struct IoConfig {
  std::string out_dir = "out";
  std::string xdr = "xdr.csv";
  std::string pois = "pois.csv";
  std::string stations = "stations.csv";
  std::string checkins = "checkins.csv";
  std::string category_map = "category_map.csv";
  std::string profession_map = "profession_map.csv";
  std::string truth = "truth.jsonl";
};

struct PipelineConfig {
  TimeConfig time;
  IngestConfig ingest;
  StayConfig stay;
  LabelConfig label;
  BayesConfig bayes;
  ValidateConfig validate;
  LdaConfig lda;
  SynthConfig synth;
  IoConfig io;
  int threads = 0;  // 0 = hardware default

  std::int64_t utc_offset_s() const {
    return static_cast<std::int64_t>(time.utc_offset_hours * 3600.0);
  }

  static PipelineConfig from_json(const nlohmann::json& j);
  static PipelineConfig load(const std::string& path);
  nlohmann::json to_json() const;

  // Applies a dotted-path override, e.g. "stay.burst_gap_s=300".
  void apply_override(const std::string& keyval);
};

}  // namespace actchain
