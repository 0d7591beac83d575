#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "actchain/config.hpp"
#include "actchain/types.hpp"

namespace actchain {

// Normalized per-slot activity fractions over 10-minute slots inside the
// validation window (default 07:00-22:00, 90 slots).
struct FractionSeries {
  ActivityType type = ActivityType::Other;
  std::vector<double> values;
};

int validation_slots(const ValidateConfig& cfg);

// Duration-expanded series: each stay of the type contributes one count to
// every slot its [arrival, departure) interval overlaps inside the window.
// Throws when the type never occurs.
FractionSeries expand_stay_slots(const std::vector<ActivityChain>& chains,
                                 ActivityType type, const ValidateConfig& cfg,
                                 std::int64_t utc_offset_s);

// Reference series from check-in timestamps (one count per check-in).
FractionSeries checkin_series(const std::map<std::string, std::vector<CheckIn>>& checkins,
                              ActivityType type, const ValidateConfig& cfg,
                              std::int64_t utc_offset_s);

// MAPE per clock hour of the window: mean of |pred-ref|/ref over that
// hour's slots, skipping ref = 0 slots. An hour whose reference is all
// zero is NaN (excluded downstream).
std::vector<double> mape_per_hour(const FractionSeries& pred,
                                  const FractionSeries& ref,
                                  const ValidateConfig& cfg);

// 1 - mean of the defined hourly MAPE values.
double reconstruction_accuracy(const FractionSeries& pred, const FractionSeries& ref,
                               const ValidateConfig& cfg);

// Subset bootstrap: per-type, per-slot central confidence-interval widths
// across n_subsets recomputations on random user subsets.
std::map<ActivityType, std::vector<double>> bootstrap_ci(
    const std::map<std::string, std::vector<ActivityChain>>& chains_by_user,
    const std::vector<ActivityType>& types, const ValidateConfig& cfg,
    std::int64_t utc_offset_s);

// Empirical quantile with linear interpolation over sorted values.
double quantile(std::vector<double> values, double q);

}  // namespace actchain
