#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "actchain/config.hpp"
#include "actchain/ingest.hpp"
#include "actchain/types.hpp"

namespace actchain {

// Index of a type within the 7 inferable types, -1 for Home/Work.
int inferable_index(ActivityType t);

// Per-activity-type arrival-time distribution over 10-minute slots,
// learned from check-ins. Rows follow kInferableTypes order; every row
// sums to 1 and is strictly positive after Laplace smoothing.
struct TemporalProfile {
  int slots = 144;
  std::array<std::vector<double>, 7> p;
  std::vector<ActivityType> empty_types;  // fell back to uniform

  const std::vector<double>& row(ActivityType t) const { return p[inferable_index(t)]; }
};

TemporalProfile build_temporal_profiles(
    const std::map<std::string, std::vector<CheckIn>>& checkins,
    const BayesConfig& cfg, std::int64_t utc_offset_s);

// Share of candidate POIs per inferable type around one base station.
struct TypeMixture {
  std::array<double, 7> p{};
  int total = 0;

  bool empty() const { return total == 0; }
};

// station_id -> candidate POIs: POIs inside the station's Voronoi cell and
// within the walkable buffer.
class CandidateIndex {
 public:
  CandidateIndex(const std::vector<POI>& pois, const StationIndex& stations,
                 double buffer_m);

  const std::vector<const POI*>& candidates(const std::string& station_id) const;

 private:
  std::map<std::string, std::vector<const POI*>> by_station_;
  std::vector<const POI*> empty_;
};

TypeMixture type_mixture(const std::vector<const POI*>& candidates);

struct Posterior {
  std::array<double, 7> p{};  // kInferableTypes order, sums to 1
  ActivityType argmax = ActivityType::Shopping;
};

// p(type | mixture, slot) ~ profile[type][slot] * mixture[type], normalized.
// Ties in the argmax break by enum order.
Posterior posterior(const TypeMixture& mixture, int slot,
                    const TemporalProfile& profiles);

// Home/Work stays keep their label's activity; Other stays get the
// posterior argmax at their arrival slot; no candidates -> Other.
ActivityType infer_activity(const StayPoint& stay, const TemporalProfile& profiles,
                            const CandidateIndex& candidates,
                            const BayesConfig& cfg, std::int64_t utc_offset_s);

// POI raw category -> one of the 14 occupation groups (editable CSV with
// columns raw_category,profession).
class ProfessionMap {
 public:
  void add(std::string raw, std::string profession);
  const std::string* lookup(const std::string& raw) const;
  static ProfessionMap load_csv(const std::string& path);

 private:
  std::map<std::string, std::string> map_;
};

// Occupation by candidate-POI category proportions; no candidates or a
// tied top pair infer as "Other".
std::string infer_profession(const std::string& work_station_id,
                             const CandidateIndex& candidates,
                             const ProfessionMap& professions);

}  // namespace actchain
