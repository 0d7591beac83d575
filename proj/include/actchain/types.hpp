#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "actchain/geo.hpp"

namespace actchain {

// Activity taxonomy. Enum order is the tie-break order everywhere an
// argmax can tie.
enum class ActivityType : int {
  Shopping = 0,
  DailyLife,
  Transport,
  DrinkEat,
  LeisureSport,
  Education,
  Home,
  Work,
  Other,
};

inline constexpr int kNumActivityTypes = 9;

// The seven types eligible for Bayesian inference (everything except
// Home and Work), in tie-break order.
inline constexpr std::array<ActivityType, 7> kInferableTypes = {
    ActivityType::Shopping,  ActivityType::DailyLife, ActivityType::Transport,
    ActivityType::DrinkEat,  ActivityType::LeisureSport,
    ActivityType::Education, ActivityType::Other,
};

std::string_view to_string(ActivityType t);
std::optional<ActivityType> activity_type_from_string(std::string_view s);

struct Record {
  std::string user_id;
  std::int64_t timestamp = 0;  // epoch seconds UTC
  double lon = 0.0;
  double lat = 0.0;
  std::string station_id;
  ProjectedPoint pos;  // filled once the study projection is known
};

enum class StayKind { Stay, PassBy };
enum class StayLabel { Home, Work, Other, Unlabeled };

struct StayPoint {
  std::string user_id;
  ProjectedPoint center;
  std::int64_t arrival = 0;
  std::int64_t departure = 0;
  StayKind kind = StayKind::PassBy;
  StayLabel label = StayLabel::Unlabeled;
  std::optional<ActivityType> activity;
  std::string station_id;
  int place_id = -1;   // per-user significant-place index
  int n_records = 0;   // raw records collapsed into this point

  std::int64_t duration() const { return departure - arrival; }
};

enum class TripPurpose { HBW, HBO, NHB };

std::string_view to_string(TripPurpose p);

struct Trip {
  std::size_t origin = 0;       // index into ActivityChain::stays
  std::size_t destination = 0;
  TripPurpose purpose = TripPurpose::NHB;
};

struct ActivityChain {
  std::string user_id;
  std::int64_t day = 0;  // local day index (days since epoch in local time)
  std::vector<StayPoint> stays;
  std::vector<Trip> trips;
};

struct POI {
  std::string poi_id;
  double lon = 0.0;
  double lat = 0.0;
  std::string category;
  ActivityType type = ActivityType::Other;
  ProjectedPoint pos;
};

struct BaseStation {
  std::string station_id;
  double lon = 0.0;
  double lat = 0.0;
  ProjectedPoint pos;
};

struct CheckIn {
  std::string user_id;
  std::int64_t timestamp = 0;
  std::string category;
  ActivityType type = ActivityType::Other;
};

// Raw category -> ActivityType mapping loaded from a CSV file
// (columns raw_category, activity_type). Unknown categories are
// collected, never silently dropped.
class CategoryMap {
 public:
  void add(std::string raw, ActivityType type) { map_[std::move(raw)] = type; }

  std::optional<ActivityType> lookup(const std::string& raw) const {
    auto it = map_.find(raw);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const { return map_.size(); }

  static CategoryMap load_csv(const std::string& path);

 private:
  std::unordered_map<std::string, ActivityType> map_;
};

// --- local-time helpers (fixed UTC offset, no DST) ---

inline constexpr std::int64_t kSecsPerDay = 86'400;

inline std::int64_t local_time(std::int64_t ts_utc, std::int64_t utc_offset_s) {
  return ts_utc + utc_offset_s;
}

inline std::int64_t local_day(std::int64_t ts_utc, std::int64_t utc_offset_s) {
  const std::int64_t t = local_time(ts_utc, utc_offset_s);
  return t >= 0 ? t / kSecsPerDay : (t - kSecsPerDay + 1) / kSecsPerDay;
}

inline std::int64_t seconds_of_day(std::int64_t ts_utc, std::int64_t utc_offset_s) {
  const std::int64_t t = local_time(ts_utc, utc_offset_s) % kSecsPerDay;
  return t < 0 ? t + kSecsPerDay : t;
}

// Day-of-week, 0 = Monday .. 6 = Sunday (1970-01-01 was a Thursday).
inline int day_of_week(std::int64_t day_index) {
  const std::int64_t dow = (day_index + 3) % 7;
  return static_cast<int>(dow < 0 ? dow + 7 : dow);
}

inline bool is_weekend_day(std::int64_t day_index) {
  const int dow = day_of_week(day_index);
  return dow == 5 || dow == 6;
}

// Days since 1970-01-01 of a proleptic-Gregorian civil date (Hinnant).
inline std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

}  // namespace actchain
