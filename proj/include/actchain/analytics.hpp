#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "actchain/config.hpp"
#include "actchain/staylabel.hpp"
#include "actchain/types.hpp"

namespace actchain {

struct LogNormalFit {
  double mu = 0;
  double sigma = 0;
  double sample_mean = 0;
};

// Maximum-likelihood fit of ln(x) over positive samples.
LogNormalFit fit_lognormal(const std::vector<double>& samples);

struct CountSummary {
  std::vector<double> values;  // one per user-day
  LogNormalFit fit;
};

// Distinct Stay places per user-day.
CountSummary daily_location_count(const std::vector<ActivityChain>& chains);

// Leg-sum distance in km of home -> stay_1 -> ... -> stay_n -> home per
// user-day; users without a detected home skip.
CountSummary daily_travel_distance(const std::vector<ActivityChain>& chains,
                                   const std::map<std::string, UserProfile>& profiles);

// Per departure hour, normalized shares of HBW / HBO / NHB trips.
using HourlyPurposeShares = std::array<std::array<double, 3>, 24>;
HourlyPurposeShares trip_purpose_fractions(const std::vector<ActivityChain>& chains,
                                           std::int64_t utc_offset_s);

// (arrival 30-min bin) x (duration 30-min bin) counts for one type and
// cohort (commuter / non-commuter).
struct ArrivalDurationHist {
  std::vector<std::vector<double>> commuter;      // 48 x 48
  std::vector<std::vector<double>> non_commuter;  // 48 x 48
};
ArrivalDurationHist arrival_duration_hist(const std::vector<ActivityChain>& chains,
                                          ActivityType type,
                                          const std::map<std::string, UserProfile>& profiles,
                                          std::int64_t utc_offset_s);

// States: the 9 activity types plus Gap (no stay covering the instant).
inline constexpr int kTransitionStates = kNumActivityTypes + 1;

struct TransitionMatrix {
  std::int64_t t1 = 0;  // seconds of local day
  std::int64_t t2 = 0;
  std::vector<std::vector<double>> p;  // row-normalized, all-zero when empty
};

TransitionMatrix transition_matrix(const std::vector<ActivityChain>& chains,
                                   std::int64_t t1_local_s, std::int64_t t2_local_s,
                                   std::int64_t utc_offset_s);

// Mean daily hours per activity type and cohort; PassBy time is its own row.
struct TimeUseSummary {
  std::map<std::string, double> commuter;      // row name -> mean hours/day
  std::map<std::string, double> non_commuter;
};
TimeUseSummary time_use_summary(const std::vector<ActivityChain>& chains,
                                const std::map<std::string, UserProfile>& profiles);

struct GroupProfile {
  int group = 0;
  std::map<std::string, double> activity_shares;  // normalized stay-time shares
  double mean_travel_km = 0;
  double mean_locations = 0;
  int n_users = 0;
};

std::vector<GroupProfile> group_profiles(const std::vector<ActivityChain>& chains,
                                         const std::map<std::string, int>& groups,
                                         const std::map<std::string, UserProfile>& profiles);

}  // namespace actchain
