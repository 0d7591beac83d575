#include "actchain/types.hpp"

#include "actchain/csv.hpp"

namespace actchain {

std::string_view to_string(ActivityType t) {
  switch (t) {
    case ActivityType::Shopping: return "Shopping";
    case ActivityType::DailyLife: return "DailyLife";
    case ActivityType::Transport: return "Transport";
    case ActivityType::DrinkEat: return "DrinkEat";
    case ActivityType::LeisureSport: return "LeisureSport";
    case ActivityType::Education: return "Education";
    case ActivityType::Home: return "Home";
    case ActivityType::Work: return "Work";
    case ActivityType::Other: return "Other";
  }
  return "Other";
}

std::optional<ActivityType> activity_type_from_string(std::string_view s) {
  for (int i = 0; i < kNumActivityTypes; ++i) {
    auto t = static_cast<ActivityType>(i);
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

std::string_view to_string(TripPurpose p) {
  switch (p) {
    case TripPurpose::HBW: return "HBW";
    case TripPurpose::HBO: return "HBO";
    case TripPurpose::NHB: return "NHB";
  }
  return "NHB";
}

CategoryMap CategoryMap::load_csv(const std::string& path) {
  CategoryMap m;
  csv::Reader r(path);
  const int c_raw = r.column("raw_category");
  const int c_type = r.column("activity_type");
  if (c_raw < 0 || c_type < 0)
    throw std::runtime_error(path + ": expected columns raw_category,activity_type");
  r.for_each([&](const std::vector<std::string>& row) {
    if (static_cast<int>(row.size()) <= std::max(c_raw, c_type)) return;
    auto t = activity_type_from_string(row[c_type]);
    if (!t)
      throw std::runtime_error(path + ": unknown activity_type '" + row[c_type] + "'");
    m.add(row[c_raw], *t);
  });
  return m;
}

}  // namespace actchain
