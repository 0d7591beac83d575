#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "actchain/bayes.hpp"

using namespace actchain;

namespace {

constexpr std::int64_t kOffset = 8 * 3600;

CheckIn checkin(std::int64_t ts, ActivityType t) {
  CheckIn c;
  c.user_id = "u";
  c.timestamp = ts;
  c.type = t;
  return c;
}

POI poi(const std::string& id, double x, double y, ActivityType t,
        const std::string& category = "cat") {
  POI p;
  p.poi_id = id;
  p.pos = {x, y};
  p.type = t;
  p.category = category;
  return p;
}

BaseStation station(const std::string& id, double x, double y) {
  BaseStation s;
  s.station_id = id;
  s.pos = {x, y};
  return s;
}

}  // namespace

TEST_CASE("temporal profiles: Laplace closed form on a tiny corpus") {
  BayesConfig cfg;
  std::map<std::string, std::vector<CheckIn>> checkins;
  // 3 Shopping check-ins in slot 60 (10:00 local), 1 in slot 90 (15:00).
  checkins["u"] = {checkin(60 * 600 - kOffset, ActivityType::Shopping),
                   checkin(60 * 600 + 30 - kOffset, ActivityType::Shopping),
                   checkin(60 * 600 + 100 - kOffset, ActivityType::Shopping),
                   checkin(90 * 600 - kOffset, ActivityType::Shopping)};
  const auto tp = build_temporal_profiles(checkins, cfg, kOffset);
  const auto& row = tp.row(ActivityType::Shopping);
  REQUIRE(row.size() == 144);
  const double denom = 4.0 + 144.0;  // count + pseudocount * slots
  CHECK(row[60] == doctest::Approx((3.0 + 1.0) / denom).epsilon(1e-12));
  CHECK(row[90] == doctest::Approx((1.0 + 1.0) / denom).epsilon(1e-12));
  CHECK(row[0] == doctest::Approx(1.0 / denom).epsilon(1e-12));
  double sum = 0;
  for (double v : row) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  // A type with no check-ins falls back to uniform and is reported.
  const auto& empty_row = tp.row(ActivityType::Education);
  CHECK(empty_row[0] == doctest::Approx(1.0 / 144.0).epsilon(1e-12));
  CHECK(std::find(tp.empty_types.begin(), tp.empty_types.end(),
                  ActivityType::Education) != tp.empty_types.end());
}

TEST_CASE("candidate POIs: Voronoi membership intersected with 900m buffer") {
  BayesConfig cfg;
  std::vector<BaseStation> st{station("a", 0, 0), station("b", 2000, 0)};
  StationIndex index(st);
  std::vector<POI> pois{
      poi("p1", 100, 0, ActivityType::Shopping),    // a's cell, near
      poi("p2", 950, 0, ActivityType::DrinkEat),    // a's cell but > 900 m
      poi("p3", 1100, 0, ActivityType::DrinkEat),   // b's cell though 900-ish from a
      poi("p4", 0, 890, ActivityType::Education),   // a's cell, inside buffer
  };
  CandidateIndex candidates(pois, index, cfg.candidate_buffer_m);
  const auto& got = candidates.candidates("a");
  REQUIRE(got.size() == 2);
  CHECK(got[0]->poi_id == "p1");
  CHECK(got[1]->poi_id == "p4");
  const auto& got_b = candidates.candidates("b");
  REQUIRE(got_b.size() == 1);
  CHECK(got_b[0]->poi_id == "p3");
  CHECK(candidates.candidates("no-such-station").empty());
}

TEST_CASE("posterior equals the brute-force product form within 1e-12") {
  BayesConfig cfg;
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  // Random but valid profile rows.
  TemporalProfile tp;
  for (auto& row : tp.p) {
    row.resize(144);
    double sum = 0;
    for (auto& v : row) {
      v = u(rng) + 1e-3;
      sum += v;
    }
    for (auto& v : row) v /= sum;
  }
  for (int trial = 0; trial < 1000; ++trial) {
    TypeMixture mix;
    int total = 0;
    for (auto& v : mix.p) v = 0;
    for (int k = 0; k < 7; ++k) {
      const int c = static_cast<int>(u(rng) * 5);
      mix.p[k] = c;
      total += c;
    }
    if (total == 0) mix.p[trial % 7] = total = 1;
    for (auto& v : mix.p) v /= total;
    mix.total = total;
    const int slot = static_cast<int>(u(rng) * 144);
    const auto post = posterior(mix, slot, tp);
    // Oracle: p(type) * p(slot | type), normalized directly.
    double z = 0;
    std::array<double, 7> want{};
    for (int k = 0; k < 7; ++k) {
      want[k] = tp.p[k][slot] * mix.p[k];
      z += want[k];
    }
    double norm = 0;
    for (int k = 0; k < 7; ++k) {
      CHECK(std::abs(post.p[k] - want[k] / z) < 1e-12);
      norm += post.p[k];
    }
    CHECK(std::abs(norm - 1.0) < 1e-9);
    // Argmax matches, ties toward the earlier inferable type.
    int arg = 0;
    for (int k = 1; k < 7; ++k)
      if (want[k] > want[arg]) arg = k;
    CHECK(post.argmax == kInferableTypes[arg]);
  }
}

TEST_CASE("infer_activity: labels stick, posterior decides Other stays") {
  BayesConfig cfg;
  std::vector<BaseStation> st{station("a", 0, 0)};
  StationIndex index(st);
  std::vector<POI> pois{poi("p1", 50, 0, ActivityType::Education)};
  CandidateIndex candidates(pois, index, cfg.candidate_buffer_m);
  TemporalProfile tp;
  for (auto& row : tp.p) row.assign(144, 1.0 / 144.0);

  StayPoint s;
  s.user_id = "u";
  s.arrival = 10 * 3600 - kOffset;
  s.departure = s.arrival + 3600;
  s.kind = StayKind::Stay;
  s.station_id = "a";

  s.label = StayLabel::Home;
  CHECK(infer_activity(s, tp, candidates, cfg, kOffset) == ActivityType::Home);
  s.label = StayLabel::Work;
  CHECK(infer_activity(s, tp, candidates, cfg, kOffset) == ActivityType::Work);
  s.label = StayLabel::Other;
  CHECK(infer_activity(s, tp, candidates, cfg, kOffset) == ActivityType::Education);
  s.station_id = "unknown";  // no candidates -> Other
  CHECK(infer_activity(s, tp, candidates, cfg, kOffset) == ActivityType::Other);
}

TEST_CASE("profession from candidate category proportions, ties -> Other") {
  BayesConfig cfg;
  std::vector<BaseStation> st{station("a", 0, 0), station("b", 5000, 0)};
  StationIndex index(st);
  std::vector<POI> pois{
      poi("p1", 10, 0, ActivityType::Other, "office"),
      poi("p2", 20, 0, ActivityType::Other, "office"),
      poi("p3", 30, 0, ActivityType::Other, "school"),
      poi("p4", 5010, 0, ActivityType::Other, "office"),
      poi("p5", 5020, 0, ActivityType::Other, "school"),
  };
  CandidateIndex candidates(pois, index, cfg.candidate_buffer_m);
  ProfessionMap pm;
  pm.add("office", "Clerical");
  pm.add("school", "Teaching");
  CHECK(infer_profession("a", candidates, pm) == "Clerical");  // 2 vs 1
  CHECK(infer_profession("b", candidates, pm) == "Other");     // 1 vs 1 tie
  CHECK(infer_profession("missing", candidates, pm) == "Other");
}
