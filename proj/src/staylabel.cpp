#include "actchain/staylabel.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <map>
#include <set>

namespace actchain {

namespace {

// Overlap in seconds of local interval [a, b) with daily windows
// [start_h, end_h); the window may cross midnight (start > end).
std::int64_t window_overlap(std::int64_t a, std::int64_t b, double start_h, double end_h) {
  if (b <= a) return 0;
  const auto start_s = static_cast<std::int64_t>(start_h * 3600.0);
  const auto end_s = static_cast<std::int64_t>(end_h * 3600.0);
  std::int64_t total = 0;
  const std::int64_t first_day = a / kSecsPerDay - 2;
  const std::int64_t last_day = b / kSecsPerDay + 1;
  for (std::int64_t d = first_day; d <= last_day; ++d) {
    std::int64_t w0 = d * kSecsPerDay + start_s;
    std::int64_t w1 = d * kSecsPerDay + (start_s < end_s ? end_s : end_s + kSecsPerDay);
    total += std::max<std::int64_t>(0, std::min(b, w1) - std::max(a, w0));
  }
  return total;
}

struct PlaceScore {
  double primary = 0;       // duration or visit count, per ranking mode
  std::int64_t total_stay = 0;
};

}  // namespace

std::optional<int> detect_home(const std::vector<StayPoint>& stays,
                               const LabelConfig& cfg, std::int64_t utc_offset_s) {
  std::map<int, PlaceScore> score;
  for (const StayPoint& s : stays) {
    if (s.kind != StayKind::Stay) continue;
    const std::int64_t a = local_time(s.arrival, utc_offset_s);
    const std::int64_t b = local_time(s.departure, utc_offset_s);
    const std::int64_t overlap =
        window_overlap(a, b, cfg.night_start_hour, cfg.night_end_hour);
    auto& sc = score[s.place_id];
    sc.total_stay += s.duration();
    if (overlap > 0)
      sc.primary += cfg.rank_places_by_duration ? static_cast<double>(overlap) : 1.0;
  }
  std::optional<int> best;
  for (const auto& [place, sc] : score) {
    if (sc.primary <= 0) continue;
    if (!best) { best = place; continue; }
    const auto& b = score[*best];
    if (sc.primary > b.primary ||
        (sc.primary == b.primary && sc.total_stay > b.total_stay))
      best = place;  // map order makes the final tie go to the smaller id
  }
  return best;
}

bool filter_resident(const std::vector<StayPoint>& stays, int home_place,
                     const LabelConfig& cfg) {
  std::int64_t at_home = 0, total = 0;
  for (const StayPoint& s : stays) {
    total += s.n_records;
    if (s.place_id == home_place) at_home += s.n_records;
  }
  if (total == 0) return false;
  return static_cast<double>(at_home) >=
         cfg.resident_min_home_frac * static_cast<double>(total);
}

std::optional<int> detect_work(const std::vector<StayPoint>& stays, int home_place,
                               const LabelConfig& cfg, std::int64_t utc_offset_s) {
  std::map<int, PlaceScore> score;
  std::map<int, std::set<std::int64_t>> visit_days;
  std::map<int, ProjectedPoint> centers;
  std::int64_t first_day = std::numeric_limits<std::int64_t>::max();
  std::int64_t last_day = std::numeric_limits<std::int64_t>::min();
  ProjectedPoint home_center{};

  for (const StayPoint& s : stays) {
    if (s.kind != StayKind::Stay) continue;
    if (s.place_id == home_place) home_center = s.center;
    const std::int64_t day = local_day(s.arrival, utc_offset_s);
    first_day = std::min(first_day, day);
    last_day = std::max(last_day, day);
    if (s.place_id == home_place || is_weekend_day(day)) continue;
    const std::int64_t a = local_time(s.arrival, utc_offset_s);
    const std::int64_t b = local_time(s.departure, utc_offset_s);
    const std::int64_t overlap =
        window_overlap(a, b, cfg.work_start_hour, cfg.work_end_hour);
    if (overlap <= 0) continue;
    auto& sc = score[s.place_id];
    sc.primary += cfg.rank_places_by_duration ? static_cast<double>(overlap) : 1.0;
    sc.total_stay += s.duration();
    visit_days[s.place_id].insert(day);
    centers[s.place_id] = s.center;
  }
  if (score.empty()) return std::nullopt;

  std::optional<int> best;
  for (const auto& [place, sc] : score) {
    if (!best) { best = place; continue; }
    const auto& b = score[*best];
    if (sc.primary > b.primary ||
        (sc.primary == b.primary && sc.total_stay > b.total_stay))
      best = place;
  }

  // Demotions: closeness to home and weekly visit regularity.
  if (euclidean_distance(centers[*best], home_center) < cfg.work_min_home_dist_m)
    return std::nullopt;
  const double span_days = static_cast<double>(last_day - first_day + 1);
  const double weeks = std::max(span_days / 7.0, 1e-9);
  const double days_per_week = static_cast<double>(visit_days[*best].size()) / weeks;
  if (days_per_week < cfg.work_min_days_per_week) return std::nullopt;
  return best;
}

UserProfile build_profile(const std::string& user_id,
                          const std::vector<StayPoint>& stays,
                          const LabelConfig& cfg, std::int64_t utc_offset_s) {
  UserProfile p;
  p.user_id = user_id;
  auto home = detect_home(stays, cfg, utc_offset_s);
  if (!home) return p;
  p.home_place = *home;
  for (const StayPoint& s : stays)
    if (s.place_id == p.home_place) { p.home = s.center; break; }
  p.is_resident = filter_resident(stays, p.home_place, cfg);
  if (!p.is_resident) return p;
  auto work = detect_work(stays, p.home_place, cfg, utc_offset_s);
  if (work) {
    p.work_place = *work;
    for (const StayPoint& s : stays)
      if (s.place_id == p.work_place) { p.work = s.center; break; }
    p.is_commuter = true;
  }
  return p;
}

void label_stays(std::vector<StayPoint>& stays, const UserProfile& profile) {
  for (StayPoint& s : stays) {
    if (s.kind != StayKind::Stay) {
      s.label = StayLabel::Unlabeled;
      continue;
    }
    if (s.place_id == profile.home_place && profile.home_place >= 0)
      s.label = StayLabel::Home;
    else if (s.place_id == profile.work_place && profile.work_place >= 0)
      s.label = StayLabel::Work;
    else
      s.label = StayLabel::Other;
  }
}

std::vector<ActivityChain> build_chains(const std::vector<StayPoint>& stays,
                                        std::int64_t utc_offset_s,
                                        bool exclude_weekends) {
  std::map<std::int64_t, ActivityChain> by_day;
  for (const StayPoint& s : stays) {
    // Split at local midnights; each piece keeps the original kind/label.
    std::int64_t piece_start = s.arrival;
    while (piece_start <= s.departure) {
      const std::int64_t day = local_day(piece_start, utc_offset_s);
      const std::int64_t day_end_utc = (day + 1) * kSecsPerDay - utc_offset_s;
      const std::int64_t piece_end = std::min(s.departure, day_end_utc);
      if (!(exclude_weekends && is_weekend_day(day))) {
        StayPoint piece = s;
        piece.arrival = piece_start;
        piece.departure = piece_end;
        auto& chain = by_day[day];
        chain.user_id = s.user_id;
        chain.day = day;
        chain.stays.push_back(std::move(piece));
      }
      if (piece_end >= s.departure) break;
      piece_start = day_end_utc;
    }
  }
  std::vector<ActivityChain> out;
  out.reserve(by_day.size());
  for (auto& [day, chain] : by_day) {
    std::sort(chain.stays.begin(), chain.stays.end(),
              [](const StayPoint& a, const StayPoint& b) { return a.arrival < b.arrival; });
    label_trip_purposes(chain);
    out.push_back(std::move(chain));
  }
  return out;
}

void label_trip_purposes(ActivityChain& chain) {
  chain.trips.clear();
  std::size_t prev = chain.stays.size();
  for (std::size_t i = 0; i < chain.stays.size(); ++i) {
    if (chain.stays[i].kind != StayKind::Stay) continue;
    if (prev != chain.stays.size() &&
        chain.stays[prev].place_id != chain.stays[i].place_id) {
      Trip t;
      t.origin = prev;
      t.destination = i;
      const StayLabel a = chain.stays[prev].label;
      const StayLabel b = chain.stays[i].label;
      const bool has_home = a == StayLabel::Home || b == StayLabel::Home;
      const bool has_work = a == StayLabel::Work || b == StayLabel::Work;
      if (has_home && has_work)
        t.purpose = TripPurpose::HBW;
      else if (has_home)
        t.purpose = TripPurpose::HBO;
      else
        t.purpose = TripPurpose::NHB;
      chain.trips.push_back(t);
    }
    prev = i;
  }
}

}  // namespace actchain
