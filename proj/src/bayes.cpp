#include "actchain/bayes.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "actchain/csv.hpp"

namespace actchain {

int inferable_index(ActivityType t) {
  for (int i = 0; i < static_cast<int>(kInferableTypes.size()); ++i)
    if (kInferableTypes[i] == t) return i;
  return -1;
}

TemporalProfile build_temporal_profiles(
    const std::map<std::string, std::vector<CheckIn>>& checkins,
    const BayesConfig& cfg, std::int64_t utc_offset_s) {
  TemporalProfile prof;
  prof.slots = cfg.temporal_slots;
  const double slot_s = static_cast<double>(kSecsPerDay) / prof.slots;

  std::array<std::vector<double>, 7> counts;
  for (auto& c : counts) c.assign(prof.slots, 0.0);
  for (const auto& [user, cs] : checkins) {
    for (const CheckIn& c : cs) {
      const int idx = inferable_index(c.type);
      if (idx < 0) continue;  // Home/Work come from daily habits, not check-ins
      const int slot = std::min(
          prof.slots - 1,
          static_cast<int>(seconds_of_day(c.timestamp, utc_offset_s) / slot_s));
      counts[idx][slot] += 1.0;
    }
  }
  for (int i = 0; i < 7; ++i) {
    double total = 0;
    for (double v : counts[i]) total += v;
    if (total == 0) prof.empty_types.push_back(kInferableTypes[i]);
    prof.p[i].resize(prof.slots);
    const double denom = total + cfg.laplace_pseudocount * prof.slots;
    for (int s = 0; s < prof.slots; ++s)
      prof.p[i][s] = (counts[i][s] + cfg.laplace_pseudocount) / denom;
  }
  return prof;
}

CandidateIndex::CandidateIndex(const std::vector<POI>& pois,
                               const StationIndex& stations, double buffer_m) {
  for (const POI& p : pois) {
    if (stations.empty()) break;
    const BaseStation& s = stations.nearest(p.pos);
    if (euclidean_distance(p.pos, s.pos) <= buffer_m)
      by_station_[s.station_id].push_back(&p);
  }
}

const std::vector<const POI*>& CandidateIndex::candidates(
    const std::string& station_id) const {
  auto it = by_station_.find(station_id);
  return it == by_station_.end() ? empty_ : it->second;
}

TypeMixture type_mixture(const std::vector<const POI*>& candidates) {
  TypeMixture m;
  for (const POI* p : candidates) {
    const int idx = inferable_index(p->type);
    if (idx < 0) continue;
    m.p[idx] += 1.0;
    ++m.total;
  }
  if (m.total > 0)
    for (double& v : m.p) v /= m.total;
  return m;
}

Posterior posterior(const TypeMixture& mixture, int slot,
                    const TemporalProfile& profiles) {
  if (mixture.empty()) throw std::invalid_argument("posterior needs a non-empty mixture");
  if (slot < 0 || slot >= profiles.slots)
    throw std::out_of_range("arrival slot outside the temporal grid");
  Posterior post;
  double total = 0;
  for (int i = 0; i < 7; ++i) {
    post.p[i] = profiles.p[i][slot] * mixture.p[i];
    total += post.p[i];
  }
  assert(total > 0 && "smoothed profiles keep the posterior defined");
  int best = 0;
  for (int i = 0; i < 7; ++i) {
    post.p[i] /= total;
    if (post.p[i] > post.p[best]) best = i;
  }
  post.argmax = kInferableTypes[best];
  return post;
}

ActivityType infer_activity(const StayPoint& stay, const TemporalProfile& profiles,
                            const CandidateIndex& candidates,
                            const BayesConfig& cfg, std::int64_t utc_offset_s) {
  if (stay.label == StayLabel::Home) return ActivityType::Home;
  if (stay.label == StayLabel::Work) return ActivityType::Work;
  const TypeMixture mix = type_mixture(candidates.candidates(stay.station_id));
  if (mix.empty()) return ActivityType::Other;
  const double slot_s = static_cast<double>(kSecsPerDay) / cfg.temporal_slots;
  const int slot = std::min(
      cfg.temporal_slots - 1,
      static_cast<int>(seconds_of_day(stay.arrival, utc_offset_s) / slot_s));
  return posterior(mix, slot, profiles).argmax;
}

void ProfessionMap::add(std::string raw, std::string profession) {
  map_[std::move(raw)] = std::move(profession);
}

const std::string* ProfessionMap::lookup(const std::string& raw) const {
  auto it = map_.find(raw);
  return it == map_.end() ? nullptr : &it->second;
}

ProfessionMap ProfessionMap::load_csv(const std::string& path) {
  ProfessionMap m;
  csv::Reader r(path);
  const int c_raw = r.column("raw_category");
  const int c_prof = r.column("profession");
  if (c_raw < 0 || c_prof < 0)
    throw std::runtime_error(path + ": expected columns raw_category,profession");
  r.for_each([&](const std::vector<std::string>& row) {
    if (static_cast<int>(row.size()) <= std::max(c_raw, c_prof)) return;
    m.add(row[c_raw], row[c_prof]);
  });
  return m;
}

std::string infer_profession(const std::string& work_station_id,
                             const CandidateIndex& candidates,
                             const ProfessionMap& professions) {
  std::map<std::string, int> counts;
  for (const POI* p : candidates.candidates(work_station_id)) {
    const std::string* prof = professions.lookup(p->category);
    if (prof) ++counts[*prof];
  }
  if (counts.empty()) return "Other";
  std::string best;
  int best_n = -1, second_n = -1;
  for (const auto& [name, n] : counts) {
    if (n > best_n) {
      second_n = best_n;
      best_n = n;
      best = name;
    } else if (n > second_n) {
      second_n = n;
    }
  }
  if (best_n == second_n) return "Other";  // ambiguous top pair
  return best;
}

}  // namespace actchain
