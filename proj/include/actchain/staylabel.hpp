#pragma once

#include <optional>
#include <vector>

#include "actchain/config.hpp"
#include "actchain/types.hpp"

namespace actchain {

struct UserProfile {
  std::string user_id;
  std::optional<ProjectedPoint> home;
  std::optional<ProjectedPoint> work;
  int home_place = -1;
  int work_place = -1;
  bool is_resident = false;
  bool is_commuter = false;
};

// Place accumulating the most stay-time inside the nightly window
// (record-count ranking behind cfg.rank_places_by_duration = false).
// Ties: larger total stay-time, then smallest place id.
std::optional<int> detect_home(const std::vector<StayPoint>& stays,
                               const LabelConfig& cfg, std::int64_t utc_offset_s);

// Resident iff records at the home place reach resident_min_home_frac of
// the user's records (boundary inclusive).
bool filter_resident(const std::vector<StayPoint>& stays, int home_place,
                     const LabelConfig& cfg);

// Most-visited non-home place in weekday work windows; demoted to none when
// too close to home or visited on too few distinct days per week.
std::optional<int> detect_work(const std::vector<StayPoint>& stays, int home_place,
                               const LabelConfig& cfg, std::int64_t utc_offset_s);

UserProfile build_profile(const std::string& user_id,
                          const std::vector<StayPoint>& stays,
                          const LabelConfig& cfg, std::int64_t utc_offset_s);

// Home/Work/Other on Stay points; PassBys stay Unlabeled. Idempotent.
void label_stays(std::vector<StayPoint>& stays, const UserProfile& profile);

// Splits labeled stays at local midnights into per-day chains and labels
// the trips between consecutive Stay points.
std::vector<ActivityChain> build_chains(const std::vector<StayPoint>& stays,
                                        std::int64_t utc_offset_s,
                                        bool exclude_weekends);

void label_trip_purposes(ActivityChain& chain);

}  // namespace actchain
