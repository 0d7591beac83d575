#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "actchain/config.hpp"
#include "actchain/types.hpp"

namespace actchain {

struct ParseStats {
  std::size_t rows = 0;
  std::size_t malformed = 0;
  std::size_t deduplicated = 0;
};

struct XdrData {
  std::map<std::string, std::vector<Record>> by_user;  // time-sorted per user
  ParseStats stats;
};

// Nearest-station lookup over a uniform spatial hash. A point's Voronoi
// cell membership is exactly nearest-station assignment, so this is the
// Voronoi query used by the candidate-POI selection.
class StationIndex {
 public:
  StationIndex(std::vector<BaseStation> stations, double cell_m = 1000.0);

  const BaseStation& nearest(const ProjectedPoint& p) const;
  const BaseStation* find(const std::string& station_id) const;
  const std::vector<BaseStation>& stations() const { return stations_; }
  bool empty() const { return stations_.empty(); }

 private:
  std::vector<BaseStation> stations_;  // sorted by station_id
  double cell_m_;
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<int>> cells_;

  std::pair<std::int64_t, std::int64_t> cell_of(const ProjectedPoint& p) const;
};

// Parses xdr.csv (user_id,timestamp,lon,lat,station_id). Timestamps may be
// epoch seconds or ISO-8601. Malformed rows are counted and skipped; more
// than max_malformed_frac of the rows malformed is a hard failure.
XdrData parse_xdr(const std::string& path, const Projection& proj,
                  const IngestConfig& cfg);

std::vector<BaseStation> parse_stations(const std::string& path, const Projection& proj);
std::vector<POI> parse_pois(const std::string& path, const Projection& proj,
                            const CategoryMap& categories,
                            std::vector<std::string>* unknown_categories = nullptr);
std::map<std::string, std::vector<CheckIn>> parse_checkins(
    const std::string& path, const CategoryMap& categories,
    std::vector<std::string>* unknown_categories = nullptr);

// Epoch seconds from "YYYY-MM-DD HH:MM:SS" / ISO-8601 "T" form, or a plain
// integer. Returns false on parse failure.
bool parse_timestamp(const std::string& s, std::int64_t& out);

// A user-day is kept iff records occupy >= min_slots distinct slots of the
// slots_per_day grid (local time).
bool keep_day(const std::vector<Record>& day_records, const IngestConfig& cfg,
              std::int64_t utc_offset_s);

// Splits one user's time-sorted records into local calendar days, dropping
// sparse days and (optionally) weekends.
std::map<std::int64_t, std::vector<Record>> partition_days(
    const std::vector<Record>& records, const IngestConfig& cfg,
    std::int64_t utc_offset_s, bool exclude_weekends);

// Drops check-in users whose first-to-last span is under the visitor
// threshold (span >= threshold kept).
void remove_visitors(std::map<std::string, std::vector<CheckIn>>& checkins,
                     double min_span_days);

}  // namespace actchain
