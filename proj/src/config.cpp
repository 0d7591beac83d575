#include "actchain/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace actchain {
namespace {

using nlohmann::json;

template <class F>
void visit(TimeConfig& c, F&& f) {
  f("utc_offset_hours", c.utc_offset_hours);
  f("exclude_weekends", c.exclude_weekends);
}
template <class F>
void visit(IngestConfig& c, F&& f) {
  f("sparse_slots_per_day", c.sparse_slots_per_day);
  f("sparse_min_slots", c.sparse_min_slots);
  f("visitor_min_span_days", c.visitor_min_span_days);
  f("max_malformed_frac", c.max_malformed_frac);
  f("station_grid_cell_m", c.station_grid_cell_m);
}
template <class F>
void visit(StayConfig& c, F&& f) {
  f("burst_gap_s", c.burst_gap_s);
  f("denoise_eps_m", c.denoise_eps_m);
  f("denoise_min_samples", c.denoise_min_samples);
  f("place_eps_m", c.place_eps_m);
  f("place_min_samples", c.place_min_samples);
  f("stay_min_duration_s", c.stay_min_duration_s);
}
template <class F>
void visit(LabelConfig& c, F&& f) {
  f("night_start_hour", c.night_start_hour);
  f("night_end_hour", c.night_end_hour);
  f("work_start_hour", c.work_start_hour);
  f("work_end_hour", c.work_end_hour);
  f("resident_min_home_frac", c.resident_min_home_frac);
  f("work_min_home_dist_m", c.work_min_home_dist_m);
  f("work_min_days_per_week", c.work_min_days_per_week);
  f("rank_places_by_duration", c.rank_places_by_duration);
}
template <class F>
void visit(BayesConfig& c, F&& f) {
  f("temporal_slots", c.temporal_slots);
  f("candidate_buffer_m", c.candidate_buffer_m);
  f("laplace_pseudocount", c.laplace_pseudocount);
}
template <class F>
void visit(ValidateConfig& c, F&& f) {
  f("window_start_hour", c.window_start_hour);
  f("window_end_hour", c.window_end_hour);
  f("bootstrap_subsets", c.bootstrap_subsets);
  f("bootstrap_frac", c.bootstrap_frac);
  f("bootstrap_level", c.bootstrap_level);
  f("bootstrap_seed", c.bootstrap_seed);
}
template <class F>
void visit(LdaConfig& c, F&& f) {
  f("topics", c.topics);
  f("alpha", c.alpha);
  f("beta", c.beta);
  f("sweeps", c.sweeps);
  f("burn_in", c.burn_in);
  f("seed", c.seed);
  f("doc_start_hour", c.doc_start_hour);
  f("doc_end_hour", c.doc_end_hour);
  f("max_gap_frac", c.max_gap_frac);
  f("coherence_top_n", c.coherence_top_n);
  f("per_user_aggregate", c.per_user_aggregate);
  f("sweep_topics_min", c.sweep_topics_min);
  f("sweep_topics_max", c.sweep_topics_max);
  f("sweep_sweeps", c.sweep_sweeps);
  f("sweep_burn_in", c.sweep_burn_in);
  f("sweep_alphas", c.sweep_alphas);
  f("sweep_betas", c.sweep_betas);
}
template <class F>
void visit(SynthConfig& c, F&& f) {
  f("seed", c.seed);
  f("n_stations", c.n_stations);
  f("disc_radius_km", c.disc_radius_km);
  f("pois_per_type", c.pois_per_type);
  f("n_agents", c.n_agents);
  f("commuter_fraction", c.commuter_fraction);
  f("archetype_mix", c.archetype_mix);
  f("record_rate_per_day", c.record_rate_per_day);
  f("reassign_prob", c.reassign_prob);
  f("study_days", c.study_days);
  f("checkin_rate_per_hour", c.checkin_rate_per_hour);
  f("travel_speed_kmh", c.travel_speed_kmh);
  f("origin_lon", c.origin_lon);
  f("origin_lat", c.origin_lat);
}
template <class F>
void visit(IoConfig& c, F&& f) {
  f("out_dir", c.out_dir);
  f("xdr", c.xdr);
  f("pois", c.pois);
  f("stations", c.stations);
  f("checkins", c.checkins);
  f("category_map", c.category_map);
  f("profession_map", c.profession_map);
  f("truth", c.truth);
}

template <class Section>
void section_from_json(const json& j, const std::string& name, Section& out) {
  std::set<std::string> known;
  visit(out, [&](const char* key, auto&) { known.insert(key); });
  for (const auto& [key, val] : j.items()) {
    if (!known.count(key))
      throw std::invalid_argument("unknown config key: " + name + "." + key);
  }
  visit(out, [&](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  });
}

template <class Section>
json section_to_json(const Section& c) {
  json j = json::object();
  visit(const_cast<Section&>(c), [&](const char* key, auto& field) { j[key] = field; });
  return j;
}

}  // namespace

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j) {
  PipelineConfig c;
  const std::set<std::string> sections = {"time",     "ingest", "stay", "label",
                                          "bayes",    "validate", "lda",  "synth",
                                          "io",       "threads"};
  for (const auto& [key, val] : j.items()) {
    if (!sections.count(key))
      throw std::invalid_argument("unknown config key: " + key);
  }
  if (j.contains("time")) section_from_json(j.at("time"), "time", c.time);
  if (j.contains("ingest")) section_from_json(j.at("ingest"), "ingest", c.ingest);
  if (j.contains("stay")) section_from_json(j.at("stay"), "stay", c.stay);
  if (j.contains("label")) section_from_json(j.at("label"), "label", c.label);
  if (j.contains("bayes")) section_from_json(j.at("bayes"), "bayes", c.bayes);
  if (j.contains("validate")) section_from_json(j.at("validate"), "validate", c.validate);
  if (j.contains("lda")) section_from_json(j.at("lda"), "lda", c.lda);
  if (j.contains("synth")) section_from_json(j.at("synth"), "synth", c.synth);
  if (j.contains("io")) section_from_json(j.at("io"), "io", c.io);
  if (j.contains("threads")) j.at("threads").get_to(c.threads);
  return c;
}

PipelineConfig PipelineConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  json j;
  in >> j;
  return from_json(j);
}

nlohmann::json PipelineConfig::to_json() const {
  json j;
  j["time"] = section_to_json(time);
  j["ingest"] = section_to_json(ingest);
  j["stay"] = section_to_json(stay);
  j["label"] = section_to_json(label);
  j["bayes"] = section_to_json(bayes);
  j["validate"] = section_to_json(validate);
  j["lda"] = section_to_json(lda);
  j["synth"] = section_to_json(synth);
  j["io"] = section_to_json(io);
  j["threads"] = threads;
  return j;
}

void PipelineConfig::apply_override(const std::string& keyval) {
  const auto eq = keyval.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("override must be key=value: " + keyval);
  const std::string path = keyval.substr(0, eq);
  const std::string value = keyval.substr(eq + 1);

  json j = to_json();
  json* node = &j;
  std::size_t pos = 0;
  while (true) {
    const auto dot = path.find('.', pos);
    const std::string part = path.substr(pos, dot - pos);
    if (!node->contains(part))
      throw std::invalid_argument("unknown config key: " + path);
    node = &(*node)[part];
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  // Parse the value with the JSON grammar; fall back to string.
  json parsed = json::parse(value, nullptr, false);
  *node = parsed.is_discarded() ? json(value) : parsed;
  *this = from_json(j);
}

}  // namespace actchain
