#include "actchain/validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace actchain {

namespace {

constexpr double kSlotS = 600.0;

void add_interval_counts(std::vector<double>& counts, std::int64_t arr_local,
                         std::int64_t dep_local, const ValidateConfig& cfg) {
  // Slot s covers local [start + s*600, start + (s+1)*600) of each day.
  const auto start_s = static_cast<std::int64_t>(cfg.window_start_hour * 3600.0);
  const std::int64_t first_day = arr_local / kSecsPerDay - 1;
  const std::int64_t last_day = dep_local / kSecsPerDay + 1;
  for (std::int64_t d = first_day; d <= last_day; ++d) {
    for (std::size_t s = 0; s < counts.size(); ++s) {
      const std::int64_t s0 = d * kSecsPerDay + start_s + static_cast<std::int64_t>(s) * 600;
      const std::int64_t s1 = s0 + 600;
      if (std::min(dep_local, s1) > std::max(arr_local, s0)) counts[s] += 1.0;
    }
  }
}

void normalize_or_throw(FractionSeries& series, const char* what) {
  double total = 0;
  for (double v : series.values) total += v;
  if (total <= 0)
    throw std::runtime_error(std::string("no activity of this type: ") + what);
  for (double& v : series.values) v /= total;
}

}  // namespace

int validation_slots(const ValidateConfig& cfg) {
  return static_cast<int>((cfg.window_end_hour - cfg.window_start_hour) * 6.0 + 0.5);
}

FractionSeries expand_stay_slots(const std::vector<ActivityChain>& chains,
                                 ActivityType type, const ValidateConfig& cfg,
                                 std::int64_t utc_offset_s) {
  FractionSeries series;
  series.type = type;
  series.values.assign(validation_slots(cfg), 0.0);
  for (const ActivityChain& chain : chains)
    for (const StayPoint& s : chain.stays) {
      if (s.kind != StayKind::Stay || !s.activity || *s.activity != type) continue;
      add_interval_counts(series.values, local_time(s.arrival, utc_offset_s),
                          local_time(s.departure, utc_offset_s), cfg);
    }
  normalize_or_throw(series, to_string(type).data());
  return series;
}

FractionSeries checkin_series(const std::map<std::string, std::vector<CheckIn>>& checkins,
                              ActivityType type, const ValidateConfig& cfg,
                              std::int64_t utc_offset_s) {
  FractionSeries series;
  series.type = type;
  const int n = validation_slots(cfg);
  series.values.assign(n, 0.0);
  const auto start_s = static_cast<std::int64_t>(cfg.window_start_hour * 3600.0);
  for (const auto& [user, cs] : checkins)
    for (const CheckIn& c : cs) {
      if (c.type != type) continue;
      const std::int64_t sod = seconds_of_day(c.timestamp, utc_offset_s);
      const std::int64_t slot = (sod - start_s) / 600;
      if (sod >= start_s && slot < n) series.values[slot] += 1.0;
    }
  normalize_or_throw(series, to_string(type).data());
  return series;
}

std::vector<double> mape_per_hour(const FractionSeries& pred,
                                  const FractionSeries& ref,
                                  const ValidateConfig& cfg) {
  if (pred.values.size() != ref.values.size())
    throw std::invalid_argument("series length mismatch");
  const int hours = static_cast<int>(cfg.window_end_hour - cfg.window_start_hour);
  std::vector<double> out(hours, std::numeric_limits<double>::quiet_NaN());
  for (int h = 0; h < hours; ++h) {
    double sum = 0;
    int n = 0;
    for (int s = h * 6; s < (h + 1) * 6 && s < static_cast<int>(ref.values.size()); ++s) {
      if (ref.values[s] <= 0) continue;  // MAPE undefined at ref = 0
      sum += std::abs(pred.values[s] - ref.values[s]) / ref.values[s];
      ++n;
    }
    if (n > 0) out[h] = sum / n;
  }
  return out;
}

double reconstruction_accuracy(const FractionSeries& pred, const FractionSeries& ref,
                               const ValidateConfig& cfg) {
  const auto hourly = mape_per_hour(pred, ref, cfg);
  double sum = 0;
  int n = 0;
  for (double v : hourly)
    if (!std::isnan(v)) { sum += v; ++n; }
  if (n == 0) throw std::runtime_error("no hour with a usable reference");
  return 1.0 - sum / n;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

std::map<ActivityType, std::vector<double>> bootstrap_ci(
    const std::map<std::string, std::vector<ActivityChain>>& chains_by_user,
    const std::vector<ActivityType>& types, const ValidateConfig& cfg,
    std::int64_t utc_offset_s) {
  const auto n_users = chains_by_user.size();
  const auto subset_size = static_cast<std::size_t>(
      std::llround(cfg.bootstrap_frac * static_cast<double>(n_users)));
  if (subset_size == 0 || cfg.bootstrap_subsets <= 0)
    throw std::invalid_argument("too few users for the bootstrap");

  std::vector<const std::string*> users;
  users.reserve(n_users);
  for (const auto& [user, chains] : chains_by_user) users.push_back(&user);

  const int n_slots = validation_slots(cfg);
  // per type, per subset, per slot
  std::map<ActivityType, std::vector<std::vector<double>>> samples;
  for (ActivityType t : types)
    samples[t].assign(cfg.bootstrap_subsets, std::vector<double>(n_slots, 0.0));

  for (int s = 0; s < cfg.bootstrap_subsets; ++s) {
    std::mt19937_64 rng(cfg.bootstrap_seed + static_cast<std::uint64_t>(s));
    std::vector<const std::string*> pool = users;
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(subset_size);

    std::vector<ActivityChain> subset_chains;
    for (const std::string* u : pool) {
      const auto& cs = chains_by_user.at(*u);
      subset_chains.insert(subset_chains.end(), cs.begin(), cs.end());
    }
    for (ActivityType t : types) {
      try {
        samples[t][s] = expand_stay_slots(subset_chains, t, cfg, utc_offset_s).values;
      } catch (const std::runtime_error&) {
        // type absent from this subset: all-zero sample
      }
    }
  }

  const double lo_q = (1.0 - cfg.bootstrap_level) / 2.0;
  const double hi_q = 1.0 - lo_q;
  std::map<ActivityType, std::vector<double>> widths;
  for (ActivityType t : types) {
    auto& w = widths[t];
    w.assign(n_slots, 0.0);
    for (int slot = 0; slot < n_slots; ++slot) {
      std::vector<double> vals(cfg.bootstrap_subsets);
      for (int s = 0; s < cfg.bootstrap_subsets; ++s) vals[s] = samples[t][s][slot];
      w[slot] = quantile(vals, hi_q) - quantile(vals, lo_q);
    }
  }
  return widths;
}

}  // namespace actchain
