#include "actchain/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace actchain {

namespace {

bool is_commuter(const std::map<std::string, UserProfile>& profiles,
                 const std::string& user) {
  auto it = profiles.find(user);
  return it != profiles.end() && it->second.is_commuter;
}

std::string state_name(int s) {
  if (s == kNumActivityTypes) return "Gap";
  return std::string(to_string(static_cast<ActivityType>(s)));
}

}  // namespace

LogNormalFit fit_lognormal(const std::vector<double>& samples) {
  LogNormalFit fit;
  std::vector<double> logs;
  double mean = 0;
  for (double v : samples) {
    if (v <= 0) continue;
    logs.push_back(std::log(v));
    mean += v;
  }
  if (logs.size() < 2) throw std::invalid_argument("need >= 2 positive samples");
  fit.sample_mean = mean / static_cast<double>(logs.size());
  for (double l : logs) fit.mu += l;
  fit.mu /= static_cast<double>(logs.size());
  double var = 0;
  for (double l : logs) var += (l - fit.mu) * (l - fit.mu);
  fit.sigma = std::sqrt(var / static_cast<double>(logs.size()));
  return fit;
}

CountSummary daily_location_count(const std::vector<ActivityChain>& chains) {
  CountSummary out;
  for (const ActivityChain& chain : chains) {
    std::set<int> places;
    for (const StayPoint& s : chain.stays)
      if (s.kind == StayKind::Stay) places.insert(s.place_id);
    if (!places.empty()) out.values.push_back(static_cast<double>(places.size()));
  }
  if (out.values.size() >= 2) out.fit = fit_lognormal(out.values);
  return out;
}

CountSummary daily_travel_distance(const std::vector<ActivityChain>& chains,
                                   const std::map<std::string, UserProfile>& profiles) {
  CountSummary out;
  for (const ActivityChain& chain : chains) {
    auto it = profiles.find(chain.user_id);
    if (it == profiles.end() || !it->second.home) continue;
    const ProjectedPoint home = *it->second.home;
    double meters = 0;
    ProjectedPoint prev = home;
    int prev_place = it->second.home_place;
    for (const StayPoint& s : chain.stays) {
      if (s.kind != StayKind::Stay) continue;
      if (s.place_id != prev_place) {
        meters += euclidean_distance(prev, s.center);
        prev = s.center;
        prev_place = s.place_id;
      }
    }
    if (prev_place != it->second.home_place) meters += euclidean_distance(prev, home);
    out.values.push_back(meters / 1000.0);
  }
  if (out.values.size() >= 2) {
    std::vector<double> positive;
    for (double v : out.values)
      if (v > 0) positive.push_back(v);
    if (positive.size() >= 2) out.fit = fit_lognormal(positive);
  }
  return out;
}

HourlyPurposeShares trip_purpose_fractions(const std::vector<ActivityChain>& chains,
                                           std::int64_t utc_offset_s) {
  HourlyPurposeShares shares{};
  for (const ActivityChain& chain : chains)
    for (const Trip& t : chain.trips) {
      // A trip is timestamped by the departure from its origin stay.
      const std::int64_t dep = chain.stays[t.origin].departure;
      const int hour = static_cast<int>(seconds_of_day(dep, utc_offset_s) / 3600);
      shares[hour][static_cast<int>(t.purpose)] += 1.0;
    }
  for (auto& hour : shares) {
    const double total = hour[0] + hour[1] + hour[2];
    if (total > 0)
      for (double& v : hour) v /= total;
  }
  return shares;
}

ArrivalDurationHist arrival_duration_hist(const std::vector<ActivityChain>& chains,
                                          ActivityType type,
                                          const std::map<std::string, UserProfile>& profiles,
                                          std::int64_t utc_offset_s) {
  ArrivalDurationHist hist;
  hist.commuter.assign(48, std::vector<double>(48, 0.0));
  hist.non_commuter.assign(48, std::vector<double>(48, 0.0));
  for (const ActivityChain& chain : chains) {
    auto& grid = is_commuter(profiles, chain.user_id) ? hist.commuter : hist.non_commuter;
    for (const StayPoint& s : chain.stays) {
      if (s.kind != StayKind::Stay || !s.activity || *s.activity != type) continue;
      const int arr_bin =
          static_cast<int>(seconds_of_day(s.arrival, utc_offset_s) / 1800);
      const int dur_bin = std::min(47, static_cast<int>(s.duration() / 1800));
      grid[arr_bin][dur_bin] += 1.0;
    }
  }
  return hist;
}

TransitionMatrix transition_matrix(const std::vector<ActivityChain>& chains,
                                   std::int64_t t1_local_s, std::int64_t t2_local_s,
                                   std::int64_t utc_offset_s) {
  if (t1_local_s >= t2_local_s) throw std::invalid_argument("need t1 < t2");
  TransitionMatrix tm;
  tm.t1 = t1_local_s;
  tm.t2 = t2_local_s;
  tm.p.assign(kTransitionStates, std::vector<double>(kTransitionStates, 0.0));

  auto state_at = [&](const ActivityChain& chain, std::int64_t t_local) {
    for (const StayPoint& s : chain.stays) {
      if (s.kind != StayKind::Stay || !s.activity) continue;
      const std::int64_t a = seconds_of_day(s.arrival, utc_offset_s);
      std::int64_t b = a + s.duration();
      if (t_local >= a && t_local < b) return static_cast<int>(*s.activity);
    }
    return kNumActivityTypes;  // Gap
  };

  for (const ActivityChain& chain : chains)
    tm.p[state_at(chain, t1_local_s)][state_at(chain, t2_local_s)] += 1.0;

  for (auto& row : tm.p) {
    double total = 0;
    for (double v : row) total += v;
    if (total > 0)
      for (double& v : row) v /= total;
  }
  return tm;
}

TimeUseSummary time_use_summary(const std::vector<ActivityChain>& chains,
                                const std::map<std::string, UserProfile>& profiles) {
  TimeUseSummary out;
  std::map<std::string, double> hours_c, hours_n;
  std::set<std::pair<std::string, std::int64_t>> days_c, days_n;
  for (const ActivityChain& chain : chains) {
    const bool comm = is_commuter(profiles, chain.user_id);
    auto& hours = comm ? hours_c : hours_n;
    (comm ? days_c : days_n).insert({chain.user_id, chain.day});
    for (const StayPoint& s : chain.stays) {
      const double h = static_cast<double>(s.duration()) / 3600.0;
      if (s.kind == StayKind::PassBy)
        hours["PassBy"] += h;
      else if (s.activity)
        hours[std::string(to_string(*s.activity))] += h;
    }
  }
  for (const auto& [name, h] : hours_c)
    out.commuter[name] = days_c.empty() ? 0.0 : h / static_cast<double>(days_c.size());
  for (const auto& [name, h] : hours_n)
    out.non_commuter[name] = days_n.empty() ? 0.0 : h / static_cast<double>(days_n.size());
  return out;
}

std::vector<GroupProfile> group_profiles(const std::vector<ActivityChain>& chains,
                                         const std::map<std::string, int>& groups,
                                         const std::map<std::string, UserProfile>& profiles) {
  std::map<int, std::vector<ActivityChain>> by_group;
  std::map<int, std::set<std::string>> users;
  for (const ActivityChain& chain : chains) {
    auto it = groups.find(chain.user_id);
    if (it == groups.end()) continue;
    by_group[it->second].push_back(chain);
    users[it->second].insert(chain.user_id);
  }

  std::vector<GroupProfile> out;
  for (const auto& [group, gchains] : by_group) {
    GroupProfile gp;
    gp.group = group;
    gp.n_users = static_cast<int>(users[group].size());
    double total_h = 0;
    for (const ActivityChain& chain : gchains)
      for (const StayPoint& s : chain.stays) {
        if (s.kind != StayKind::Stay || !s.activity) continue;
        const double h = static_cast<double>(s.duration()) / 3600.0;
        gp.activity_shares[std::string(to_string(*s.activity))] += h;
        total_h += h;
      }
    if (total_h > 0)
      for (auto& [name, v] : gp.activity_shares) v /= total_h;

    const auto dist = daily_travel_distance(gchains, profiles);
    if (!dist.values.empty()) {
      double sum = 0;
      for (double v : dist.values) sum += v;
      gp.mean_travel_km = sum / static_cast<double>(dist.values.size());
    }
    double loc_sum = 0;
    int loc_n = 0;
    for (const ActivityChain& chain : gchains) {
      std::set<int> places;
      for (const StayPoint& s : chain.stays)
        if (s.kind == StayKind::Stay) places.insert(s.place_id);
      if (!places.empty()) { loc_sum += static_cast<double>(places.size()); ++loc_n; }
    }
    if (loc_n > 0) gp.mean_locations = loc_sum / loc_n;
    out.push_back(std::move(gp));
  }
  return out;
}

}  // namespace actchain
