#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "actchain/pipeline.hpp"

using namespace actchain;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("actchain-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

PipelineConfig tiny_cfg(const fs::path& dir) {
  PipelineConfig cfg;
  cfg.io.out_dir = dir.string();
  cfg.synth.n_stations = 250;
  cfg.synth.pois_per_type = 4;
  cfg.synth.n_agents = 40;
  cfg.synth.study_days = 14;
  cfg.ingest.visitor_min_span_days = 10;
  cfg.lda.sweeps = 30;
  cfg.lda.burn_in = 20;
  cfg.lda.sweep_topics_max = 2;
  cfg.lda.sweep_sweeps = 10;
  cfg.lda.sweep_burn_in = 5;
  return cfg;
}

std::string slurp(const fs::path& p) {
  std::stringstream ss;
  ss << std::ifstream(p).rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("path resolution: bare names live under out_dir") {
  IoConfig io;
  io.out_dir = "/data/run1";
  CHECK(resolve_path(io, "stays.jsonl") == "/data/run1/stays.jsonl");
  CHECK(resolve_path(io, "/abs/file.csv") == "/abs/file.csv");
  CHECK(resolve_path(io, "rel/file.csv") == "rel/file.csv");
}

TEST_CASE("file_hash: FNV-1a reference value and missing-file error") {
  TempDir dir;
  const auto p = dir.path / "x.bin";
  std::ofstream(p) << "abc";
  // FNV-1a 64 of "abc".
  CHECK(file_hash(p.string()) == "e71fa2190541574b");
  CHECK_THROWS_AS(file_hash((dir.path / "missing").string()), MissingInput);
}

TEST_CASE("stages fail with MissingInput when upstream artifacts are absent") {
  TempDir dir;
  const auto cfg = tiny_cfg(dir.path);
  CHECK_THROWS_AS(run_ingest(cfg), MissingInput);
  CHECK_THROWS_AS(run_stays(cfg), MissingInput);
  CHECK_THROWS_AS(run_validate(cfg), MissingInput);
  CHECK_THROWS_AS(run_stage("nonsense", cfg), std::invalid_argument);
}

TEST_CASE("end-to-end stage chain produces every artifact plus provenance") {
  TempDir dir;
  const auto cfg = tiny_cfg(dir.path);
  run_stage("synth", cfg);
  const auto summary = run_stage("all", cfg);
  CHECK(summary["stage"] == "all");
  for (const char* name :
       {"xdr.csv", "stations.csv", "pois.csv", "checkins.csv", "category_map.csv",
        "profession_map.csv", "truth.jsonl", "records.jsonl", "ingest_report.json",
        "stays.jsonl", "profiles.jsonl", "chains.jsonl", "temporal_profiles.csv",
        "inferred_chains.jsonl", "professions.csv", "validation_report.json",
        "validation_hourly.csv", "validation_ci.csv", "lda_model.json", "groups.csv",
        "sweep.csv", "analytics/location_counts.csv", "analytics/travel_distance.csv",
        "analytics/lognormal_fits.csv", "analytics/trip_purpose_hourly.csv",
        "analytics/time_use.csv", "analytics/transitions_0800_0900.csv",
        "analytics/group_profiles.csv", "resolved_config.json", "manifest.json"}) {
    CAPTURE(name);
    CHECK(fs::exists(dir.path / name));
  }
  // Manifest lists hashes for its inputs.
  const auto manifest = json::parse(slurp(dir.path / "manifest.json"));
  REQUIRE(manifest.contains("inputs"));
  CHECK(!manifest["inputs"].empty());
  for (const auto& [path, hash] : manifest["inputs"].items())
    CHECK(hash.get<std::string>().size() == 16);
  // resolved_config.json round-trips through the config parser.
  const auto resolved =
      PipelineConfig::from_json(json::parse(slurp(dir.path / "resolved_config.json")));
  CHECK(resolved.synth.n_agents == 40);
}

TEST_CASE("stay serialization round-trips") {
  TempDir dir;
  Projection proj(121.47, 31.23);
  std::map<std::string, std::vector<StayPoint>> by_user;
  StayPoint s;
  s.user_id = "u1";
  s.center = {120.5, -35.25};
  s.arrival = 1000;
  s.departure = 2000;
  s.kind = StayKind::Stay;
  s.label = StayLabel::Home;
  s.activity = ActivityType::Home;
  s.station_id = "s9";
  s.place_id = 3;
  s.n_records = 17;
  by_user["u1"] = {s};
  StayPoint p = s;
  p.kind = StayKind::PassBy;
  p.label = StayLabel::Unlabeled;
  p.activity.reset();
  by_user["u1"].push_back(p);
  const auto path = (dir.path / "stays.jsonl").string();
  write_stays_jsonl(path, by_user, proj);
  const auto back = read_stays_jsonl(path, proj);
  REQUIRE(back.count("u1"));
  REQUIRE(back.at("u1").size() == 2);
  const auto& r = back.at("u1")[0];
  CHECK(r.arrival == 1000);
  CHECK(r.departure == 2000);
  CHECK(r.kind == StayKind::Stay);
  CHECK(r.label == StayLabel::Home);
  CHECK(r.activity == ActivityType::Home);
  CHECK(r.station_id == "s9");
  CHECK(r.place_id == 3);
  CHECK(r.n_records == 17);
  CHECK(euclidean_distance(r.center, s.center) < 1e-6);
  CHECK(back.at("u1")[1].kind == StayKind::PassBy);
  CHECK(!back.at("u1")[1].activity.has_value());
}

TEST_CASE("temporal profile csv round-trips at full precision") {
  TempDir dir;
  TemporalProfile tp;
  std::mt19937_64 rng(5);
  for (auto& row : tp.p) {
    row.resize(144);
    double sum = 0;
    for (auto& v : row) {
      v = (rng() % 1000) + 1.0;
      sum += v;
    }
    for (auto& v : row) v /= sum;
  }
  const auto path = (dir.path / "tp.csv").string();
  write_temporal_profiles_csv(path, tp);
  const auto back = read_temporal_profiles_csv(path);
  for (int k = 0; k < 7; ++k)
    for (int t = 0; t < 144; ++t)
      CHECK(back.p[k][t] == tp.p[k][t]);
}

TEST_CASE("reruns in place are byte-identical") {
  TempDir dir;
  const auto cfg = tiny_cfg(dir.path);
  run_stage("synth", cfg);
  run_stage("all", cfg);
  std::map<std::string, std::string> first;
  for (const auto& entry : fs::recursive_directory_iterator(dir.path))
    if (entry.is_regular_file())
      first[fs::relative(entry.path(), dir.path).string()] = slurp(entry.path());
  run_stage("synth", cfg);
  run_stage("all", cfg);
  for (const auto& entry : fs::recursive_directory_iterator(dir.path)) {
    if (!entry.is_regular_file()) continue;
    const auto name = fs::relative(entry.path(), dir.path).string();
    CAPTURE(name);
    REQUIRE(first.count(name));
    CHECK(first.at(name) == slurp(entry.path()));
  }
}
