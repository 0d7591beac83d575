#include "actchain/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <stdexcept>

#include "actchain/csv.hpp"

namespace actchain {

namespace {

double dist2(const ProjectedPoint& a, const ProjectedPoint& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

}  // namespace

bool parse_timestamp(const std::string& s, std::int64_t& out) {
  if (s.empty()) return false;
  int y, mo, d, h, mi, se;
  if (std::sscanf(s.c_str(), "%d-%d-%d%*1[T ]%d:%d:%d", &y, &mo, &d, &h, &mi, &se) == 6) {
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || se > 60) return false;
    out = days_from_civil(y, mo, d) * kSecsPerDay + h * 3600 + mi * 60 + se;
    return true;
  }
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') return false;
  out = v;
  return true;
}

StationIndex::StationIndex(std::vector<BaseStation> stations, double cell_m)
    : stations_(std::move(stations)), cell_m_(cell_m > 0 ? cell_m : 1000.0) {
  std::sort(stations_.begin(), stations_.end(),
            [](const BaseStation& a, const BaseStation& b) {
              return a.station_id < b.station_id;
            });
  for (int i = 0; i < static_cast<int>(stations_.size()); ++i)
    cells_[cell_of(stations_[i].pos)].push_back(i);
}

std::pair<std::int64_t, std::int64_t> StationIndex::cell_of(const ProjectedPoint& p) const {
  return {static_cast<std::int64_t>(std::floor(p.x / cell_m_)),
          static_cast<std::int64_t>(std::floor(p.y / cell_m_))};
}

const BaseStation& StationIndex::nearest(const ProjectedPoint& p) const {
  if (stations_.empty()) throw std::runtime_error("nearest on empty StationIndex");
  const auto [cx, cy] = cell_of(p);
  int best = -1;
  double best_d2 = std::numeric_limits<double>::infinity();

  // Corpus bound: with N stations the grid extent is finite, so ring
  // expansion terminates once every cell is visited.
  for (std::int64_t r = 0;; ++r) {
    if (best >= 0) {
      // No cell at Chebyshev ring r can hold anything closer than (r-1)*cell.
      const double lower = (static_cast<double>(r) - 1.0) * cell_m_;
      if (lower > 0 && lower * lower > best_d2) break;
    }
    bool any_cell = false;
    for (std::int64_t dx = -r; dx <= r; ++dx) {
      for (std::int64_t dy = -r; dy <= r; ++dy) {
        if (std::max(std::llabs(dx), std::llabs(dy)) != r) continue;
        auto it = cells_.find({cx + dx, cy + dy});
        if (it == cells_.end()) continue;
        any_cell = true;
        for (int i : it->second) {
          const double d2 = dist2(p, stations_[i].pos);
          if (d2 < best_d2 ||
              (d2 == best_d2 && best >= 0 &&
               stations_[i].station_id < stations_[best].station_id)) {
            best = i;
            best_d2 = d2;
          }
        }
      }
    }
    if (!any_cell && best < 0 && r > static_cast<std::int64_t>(cells_.size()) + 2) {
      // Grid is sparse; fall back to a full scan (still deterministic).
      for (int i = 0; i < static_cast<int>(stations_.size()); ++i) {
        const double d2 = dist2(p, stations_[i].pos);
        if (d2 < best_d2) { best = i; best_d2 = d2; }
      }
      break;
    }
  }
  return stations_[best];
}

const BaseStation* StationIndex::find(const std::string& station_id) const {
  auto it = std::lower_bound(stations_.begin(), stations_.end(), station_id,
                             [](const BaseStation& s, const std::string& id) {
                               return s.station_id < id;
                             });
  if (it == stations_.end() || it->station_id != station_id) return nullptr;
  return &*it;
}

XdrData parse_xdr(const std::string& path, const Projection& proj,
                  const IngestConfig& cfg) {
  XdrData data;
  csv::Reader r(path);
  const int c_user = r.column("user_id");
  const int c_ts = r.column("timestamp");
  const int c_lon = r.column("lon");
  const int c_lat = r.column("lat");
  const int c_sta = r.column("station_id");
  if (c_user < 0 || c_ts < 0 || c_lon < 0 || c_lat < 0 || c_sta < 0)
    throw std::runtime_error(path + ": expected header user_id,timestamp,lon,lat,station_id");

  r.for_each([&](const std::vector<std::string>& row) {
    ++data.stats.rows;
    const int need = std::max({c_user, c_ts, c_lon, c_lat, c_sta});
    if (static_cast<int>(row.size()) <= need) { ++data.stats.malformed; return; }
    Record rec;
    rec.user_id = row[c_user];
    rec.station_id = row[c_sta];
    char* end = nullptr;
    rec.lon = std::strtod(row[c_lon].c_str(), &end);
    if (end == row[c_lon].c_str()) { ++data.stats.malformed; return; }
    rec.lat = std::strtod(row[c_lat].c_str(), &end);
    if (end == row[c_lat].c_str()) { ++data.stats.malformed; return; }
    if (!parse_timestamp(row[c_ts], rec.timestamp) || rec.user_id.empty() ||
        rec.lon < -180 || rec.lon > 180 || rec.lat < -90 || rec.lat > 90) {
      ++data.stats.malformed;
      return;
    }
    rec.pos = proj.project(rec.lon, rec.lat);
    data.by_user[rec.user_id].push_back(std::move(rec));
  });

  if (data.stats.rows > 0 &&
      static_cast<double>(data.stats.malformed) >
          cfg.max_malformed_frac * static_cast<double>(data.stats.rows))
    throw std::runtime_error(path + ": too many malformed rows (" +
                             std::to_string(data.stats.malformed) + "/" +
                             std::to_string(data.stats.rows) + ")");

  for (auto& [user, recs] : data.by_user) {
    std::stable_sort(recs.begin(), recs.end(), [](const Record& a, const Record& b) {
      if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
      return a.station_id < b.station_id;
    });
    auto last = std::unique(recs.begin(), recs.end(), [](const Record& a, const Record& b) {
      return a.timestamp == b.timestamp && a.station_id == b.station_id;
    });
    data.stats.deduplicated += static_cast<std::size_t>(recs.end() - last);
    recs.erase(last, recs.end());
  }
  return data;
}

std::vector<BaseStation> parse_stations(const std::string& path, const Projection& proj) {
  std::vector<BaseStation> out;
  csv::Reader r(path);
  const int c_id = r.column("station_id");
  const int c_lon = r.column("lon");
  const int c_lat = r.column("lat");
  if (c_id < 0 || c_lon < 0 || c_lat < 0)
    throw std::runtime_error(path + ": expected header station_id,lon,lat");
  r.for_each([&](const std::vector<std::string>& row) {
    if (static_cast<int>(row.size()) <= std::max({c_id, c_lon, c_lat})) return;
    BaseStation s;
    s.station_id = row[c_id];
    s.lon = std::stod(row[c_lon]);
    s.lat = std::stod(row[c_lat]);
    s.pos = proj.project(s.lon, s.lat);
    out.push_back(std::move(s));
  });
  return out;
}

std::vector<POI> parse_pois(const std::string& path, const Projection& proj,
                            const CategoryMap& categories,
                            std::vector<std::string>* unknown_categories) {
  std::vector<POI> out;
  csv::Reader r(path);
  const int c_id = r.column("poi_id");
  const int c_lon = r.column("lon");
  const int c_lat = r.column("lat");
  const int c_cat = r.column("category");
  if (c_id < 0 || c_lon < 0 || c_lat < 0 || c_cat < 0)
    throw std::runtime_error(path + ": expected header poi_id,lon,lat,category");
  r.for_each([&](const std::vector<std::string>& row) {
    if (static_cast<int>(row.size()) <= std::max({c_id, c_lon, c_lat, c_cat})) return;
    POI p;
    p.poi_id = row[c_id];
    p.lon = std::stod(row[c_lon]);
    p.lat = std::stod(row[c_lat]);
    p.category = row[c_cat];
    auto t = categories.lookup(p.category);
    if (!t) {
      if (unknown_categories) unknown_categories->push_back(p.category);
      return;
    }
    p.type = *t;
    p.pos = proj.project(p.lon, p.lat);
    out.push_back(std::move(p));
  });
  return out;
}

std::map<std::string, std::vector<CheckIn>> parse_checkins(
    const std::string& path, const CategoryMap& categories,
    std::vector<std::string>* unknown_categories) {
  std::map<std::string, std::vector<CheckIn>> out;
  csv::Reader r(path);
  const int c_user = r.column("user_id");
  const int c_ts = r.column("timestamp");
  const int c_cat = r.column("category");
  if (c_user < 0 || c_ts < 0 || c_cat < 0)
    throw std::runtime_error(path + ": expected header user_id,timestamp,category");
  r.for_each([&](const std::vector<std::string>& row) {
    if (static_cast<int>(row.size()) <= std::max({c_user, c_ts, c_cat})) return;
    CheckIn c;
    c.user_id = row[c_user];
    c.category = row[c_cat];
    if (!parse_timestamp(row[c_ts], c.timestamp)) return;
    auto t = categories.lookup(c.category);
    if (!t) {
      if (unknown_categories) unknown_categories->push_back(c.category);
      return;
    }
    c.type = *t;
    out[c.user_id].push_back(std::move(c));
  });
  for (auto& [user, cs] : out)
    std::sort(cs.begin(), cs.end(),
              [](const CheckIn& a, const CheckIn& b) { return a.timestamp < b.timestamp; });
  return out;
}

bool keep_day(const std::vector<Record>& day_records, const IngestConfig& cfg,
              std::int64_t utc_offset_s) {
  const double slot_s = static_cast<double>(kSecsPerDay) / cfg.sparse_slots_per_day;
  std::set<int> slots;
  for (const Record& rec : day_records)
    slots.insert(static_cast<int>(seconds_of_day(rec.timestamp, utc_offset_s) / slot_s));
  return static_cast<int>(slots.size()) >= cfg.sparse_min_slots;
}

std::map<std::int64_t, std::vector<Record>> partition_days(
    const std::vector<Record>& records, const IngestConfig& cfg,
    std::int64_t utc_offset_s, bool exclude_weekends) {
  std::map<std::int64_t, std::vector<Record>> days;
  for (const Record& rec : records)
    days[local_day(rec.timestamp, utc_offset_s)].push_back(rec);
  for (auto it = days.begin(); it != days.end();) {
    if ((exclude_weekends && is_weekend_day(it->first)) ||
        !keep_day(it->second, cfg, utc_offset_s))
      it = days.erase(it);
    else
      ++it;
  }
  return days;
}

void remove_visitors(std::map<std::string, std::vector<CheckIn>>& checkins,
                     double min_span_days) {
  const double min_span_s = min_span_days * kSecsPerDay;
  for (auto it = checkins.begin(); it != checkins.end();) {
    const auto& cs = it->second;
    const double span = cs.empty() ? -1.0
                                   : static_cast<double>(cs.back().timestamp -
                                                         cs.front().timestamp);
    if (span < min_span_s)
      it = checkins.erase(it);
    else
      ++it;
  }
}

}  // namespace actchain
