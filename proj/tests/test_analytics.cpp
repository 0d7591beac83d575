#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "actchain/analytics.hpp"

using namespace actchain;

namespace {

constexpr std::int64_t kOffset = 8 * 3600;

StayPoint stay(double h0, double h1, ActivityType t, int place, double x = 0,
               double y = 0, StayLabel label = StayLabel::Other) {
  StayPoint s;
  s.user_id = "u";
  s.arrival = static_cast<std::int64_t>(h0 * 3600) - kOffset;
  s.departure = static_cast<std::int64_t>(h1 * 3600) - kOffset;
  s.kind = StayKind::Stay;
  s.activity = t;
  s.place_id = place;
  s.center = {x, y};
  s.label = label;
  return s;
}

}  // namespace

TEST_CASE("lognormal MLE equals the closed-form log-moment estimates") {
  std::mt19937_64 rng(41);
  std::lognormal_distribution<double> dist(0.7, 0.4);
  std::vector<double> samples(5000);
  for (auto& v : samples) v = dist(rng);
  const auto fit = fit_lognormal(samples);
  double m = 0;
  for (double v : samples) m += std::log(v);
  m /= samples.size();
  double s2 = 0;
  for (double v : samples) s2 += (std::log(v) - m) * (std::log(v) - m);
  s2 /= samples.size();
  CHECK(fit.mu == doctest::Approx(m).epsilon(1e-12));
  CHECK(fit.sigma == doctest::Approx(std::sqrt(s2)).epsilon(1e-12));
  CHECK(fit.mu == doctest::Approx(0.7).epsilon(0.05));
  CHECK(fit.sigma == doctest::Approx(0.4).epsilon(0.05));
}

TEST_CASE("daily location count: distinct Stay places per user-day") {
  ActivityChain c;
  c.user_id = "u";
  c.stays = {stay(8, 9, ActivityType::Home, 0), stay(10, 11, ActivityType::Shopping, 1),
             stay(12, 13, ActivityType::Shopping, 1),  // same place twice
             stay(14, 15, ActivityType::DrinkEat, 2)};
  StayPoint pass = stay(16, 16.1, ActivityType::Other, 3);
  pass.kind = StayKind::PassBy;
  c.stays.push_back(pass);
  const auto summary = daily_location_count({c});
  REQUIRE(summary.values.size() == 1);
  CHECK(summary.values[0] == doctest::Approx(3.0));
}

TEST_CASE("daily travel distance closes home-to-home in km") {
  std::map<std::string, UserProfile> profiles;
  UserProfile p;
  p.user_id = "u";
  p.home = ProjectedPoint{0, 0};
  profiles["u"] = p;
  ActivityChain c;
  c.user_id = "u";
  c.stays = {stay(8, 9, ActivityType::Work, 1, 3000, 0),
             stay(12, 13, ActivityType::Shopping, 2, 3000, 4000)};
  const auto summary = daily_travel_distance({c}, profiles);
  REQUIRE(summary.values.size() == 1);
  // home(0,0) -> (3000,0) -> (3000,4000) -> home = 3 + 4 + 5 km.
  CHECK(summary.values[0] == doctest::Approx(12.0));
  // Users without a home are skipped.
  ActivityChain orphan = c;
  orphan.user_id = "ghost";
  for (auto& s : orphan.stays) s.user_id = "ghost";
  CHECK(daily_travel_distance({orphan}, profiles).values.empty());
}

TEST_CASE("trip purpose fractions normalize per departure hour") {
  ActivityChain c;
  c.user_id = "u";
  c.stays = {stay(7, 8, ActivityType::Home, 0, 0, 0, StayLabel::Home),
             stay(9, 12, ActivityType::Work, 1, 4000, 0, StayLabel::Work),
             stay(13, 14, ActivityType::Shopping, 2, 2000, 0)};
  c.trips = {{0, 1, TripPurpose::HBW}, {1, 2, TripPurpose::NHB}};
  const auto shares = trip_purpose_fractions({c}, kOffset);
  // Trip 0 departs 08:00 local, trip 1 departs 12:00.
  CHECK(shares[8][0] == doctest::Approx(1.0));
  CHECK(shares[8][1] == doctest::Approx(0.0));
  CHECK(shares[12][2] == doctest::Approx(1.0));
  double empty = 0;
  for (double v : shares[3]) empty += v;
  CHECK(empty == doctest::Approx(0.0));
}

TEST_CASE("transition matrix rows are the observed state shares") {
  std::map<std::string, UserProfile> profiles;
  std::vector<ActivityChain> chains(2);
  chains[0].user_id = "a";
  chains[0].stays = {stay(7, 9, ActivityType::Home, 0), stay(11, 14, ActivityType::Work, 1)};
  chains[1].user_id = "b";
  chains[1].stays = {stay(7, 13, ActivityType::Home, 0)};
  const auto m = transition_matrix(chains, 8 * 3600, 12 * 3600, kOffset);
  const int home = static_cast<int>(ActivityType::Home);
  const int work = static_cast<int>(ActivityType::Work);
  // a: Home at 08:00 -> Work at 12:00; b: Home -> Gap (left at 13? no: 7-13 covers 12).
  CHECK(m.p[home][work] == doctest::Approx(0.5));
  CHECK(m.p[home][home] == doctest::Approx(0.5));
  double row_sum = 0;
  for (double v : m.p[home]) row_sum += v;
  CHECK(row_sum == doctest::Approx(1.0));
}

TEST_CASE("gap state captures instants with no covering stay") {
  std::vector<ActivityChain> chains(1);
  chains[0].user_id = "a";
  chains[0].stays = {stay(7, 9, ActivityType::Home, 0)};
  const auto m = transition_matrix(chains, 8 * 3600, 12 * 3600, kOffset);
  const int home = static_cast<int>(ActivityType::Home);
  CHECK(m.p[home][kTransitionStates - 1] == doctest::Approx(1.0));
}

TEST_CASE("time use splits cohorts and averages hours per day") {
  std::map<std::string, UserProfile> profiles;
  UserProfile commuter;
  commuter.user_id = "c";
  commuter.is_commuter = true;
  profiles["c"] = commuter;
  UserProfile home_body;
  home_body.user_id = "h";
  profiles["h"] = home_body;
  std::vector<ActivityChain> chains(2);
  chains[0].user_id = "c";
  chains[0].stays = {stay(9, 17, ActivityType::Work, 1)};
  chains[1].user_id = "h";
  chains[1].stays = {stay(9, 13, ActivityType::Home, 0)};
  const auto summary = time_use_summary(chains, profiles);
  CHECK(summary.commuter.at("Work") == doctest::Approx(8.0));
  CHECK(summary.non_commuter.at("Home") == doctest::Approx(4.0));
  CHECK(summary.commuter.count("Home") == 0);
}

TEST_CASE("arrival-duration histogram separates cohorts on 30-min bins") {
  std::map<std::string, UserProfile> profiles;
  UserProfile commuter;
  commuter.user_id = "u";
  commuter.is_commuter = true;
  profiles["u"] = commuter;
  ActivityChain c;
  c.user_id = "u";
  c.stays = {stay(12.25, 13.25, ActivityType::DrinkEat, 2)};  // arrive bin 24, 1h bin 2
  const auto hist = arrival_duration_hist({c}, ActivityType::DrinkEat, profiles, kOffset);
  CHECK(hist.commuter[24][2] == doctest::Approx(1.0));
  double total = 0;
  for (const auto& row : hist.non_commuter)
    for (double v : row) total += v;
  CHECK(total == doctest::Approx(0.0));
}

TEST_CASE("group profiles aggregate shares and means per group") {
  std::map<std::string, UserProfile> profiles;
  for (const char* uid : {"a", "b"}) {
    UserProfile p;
    p.user_id = uid;
    p.home = ProjectedPoint{0, 0};
    profiles[uid] = p;
  }
  std::map<std::string, int> groups{{"a", 0}, {"b", 1}};
  std::vector<ActivityChain> chains(2);
  chains[0].user_id = "a";
  chains[0].stays = {stay(9, 12, ActivityType::Work, 1, 1000, 0),
                     stay(13, 14, ActivityType::Shopping, 2, 1000, 0)};
  chains[1].user_id = "b";
  chains[1].stays = {stay(9, 11, ActivityType::Home, 0)};
  const auto gp = group_profiles(chains, groups, profiles);
  REQUIRE(gp.size() == 2);
  CHECK(gp[0].group == 0);
  CHECK(gp[0].n_users == 1);
  CHECK(gp[0].activity_shares.at("Work") == doctest::Approx(0.75));
  CHECK(gp[0].activity_shares.at("Shopping") == doctest::Approx(0.25));
  CHECK(gp[1].activity_shares.at("Home") == doctest::Approx(1.0));
}
