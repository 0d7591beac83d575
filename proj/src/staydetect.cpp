#include "actchain/staydetect.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>

namespace actchain {

namespace {

// Grid-bucketed neighbor query; returned indices ascending.
class NeighborGrid {
 public:
  NeighborGrid(const std::vector<ProjectedPoint>& pts, double eps)
      : pts_(pts), eps_(eps) {
    for (int i = 0; i < static_cast<int>(pts.size()); ++i)
      cells_[key(pts[i])].push_back(i);
  }

  std::vector<int> neighbors(int i) const {
    const auto [cx, cy] = key(pts_[i]);
    std::vector<int> out;
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find({cx + dx, cy + dy});
        if (it == cells_.end()) continue;
        for (int j : it->second)
          if (euclidean_distance(pts_[i], pts_[j]) <= eps_) out.push_back(j);
      }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::pair<std::int64_t, std::int64_t> key(const ProjectedPoint& p) const {
    return {static_cast<std::int64_t>(std::floor(p.x / eps_)),
            static_cast<std::int64_t>(std::floor(p.y / eps_))};
  }

  const std::vector<ProjectedPoint>& pts_;
  double eps_;
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<int>> cells_;
};

}  // namespace

std::vector<int> dbscan(const std::vector<ProjectedPoint>& points,
                        const DbscanParams& params) {
  if (params.eps_m <= 0 || params.min_samples < 1)
    throw std::invalid_argument("dbscan: eps > 0 and min_samples >= 1 required");
  const int n = static_cast<int>(points.size());
  std::vector<int> labels(n, -1);
  if (n == 0) return labels;

  NeighborGrid grid(points, params.eps_m);
  std::vector<char> is_core(n, 0);
  std::vector<std::vector<int>> nbrs(n);
  for (int i = 0; i < n; ++i) {
    nbrs[i] = grid.neighbors(i);
    is_core[i] = static_cast<int>(nbrs[i].size()) >= params.min_samples;
  }

  int next_cluster = 0;
  for (int seed = 0; seed < n; ++seed) {
    if (!is_core[seed] || labels[seed] != -1) continue;
    const int cluster = next_cluster++;
    std::deque<int> queue = {seed};
    labels[seed] = cluster;
    while (!queue.empty()) {
      const int p = queue.front();
      queue.pop_front();
      if (!is_core[p]) continue;  // border: absorbed, not expanded
      for (int q : nbrs[p]) {
        if (labels[q] != -1) continue;
        labels[q] = cluster;
        queue.push_back(q);
      }
    }
  }
  return labels;
}

std::vector<std::pair<std::size_t, std::size_t>> segment_bursts(
    const std::vector<Record>& records, double gap_s) {
  std::vector<std::pair<std::size_t, std::size_t>> bursts;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= records.size(); ++i) {
    if (i == records.size() ||
        static_cast<double>(records[i].timestamp - records[i - 1].timestamp) > gap_s) {
      if (i > start) bursts.emplace_back(start, i);
      start = i;
    }
  }
  return bursts;
}

std::size_t medoid_index(const std::vector<ProjectedPoint>& points) {
  if (points.empty()) throw std::invalid_argument("medoid of empty set");
  std::size_t best = 0;
  double best_sum = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    double sum = 0;
    for (const auto& q : points) sum += euclidean_distance(points[i], q);
    if (sum < best_sum) {  // strict: ties keep the earliest index
      best = i;
      best_sum = sum;
    }
  }
  return best;
}

void denoise_bursts(std::vector<Record>& records, const StayConfig& cfg) {
  for (auto [first, last] : segment_bursts(records, cfg.burst_gap_s)) {
    const std::size_t n = last - first;
    if (n < 2) continue;  // min_samples = 2 can never fire
    std::vector<ProjectedPoint> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = records[first + i].pos;
    const auto labels = dbscan(pts, {cfg.denoise_eps_m, cfg.denoise_min_samples});
    std::map<int, std::vector<std::size_t>> clusters;
    for (std::size_t i = 0; i < n; ++i)
      if (labels[i] >= 0) clusters[labels[i]].push_back(i);
    for (const auto& [label, members] : clusters) {
      std::vector<ProjectedPoint> mem(members.size());
      for (std::size_t i = 0; i < members.size(); ++i) mem[i] = pts[members[i]];
      const ProjectedPoint center = mem[medoid_index(mem)];
      for (std::size_t i : members) records[first + i].pos = center;
    }
  }
}

std::vector<int> merge_significant_places(std::vector<Record>& records,
                                          const StayConfig& cfg) {
  // Distinct locations in first-appearance order (records are time-sorted,
  // so discovery order is stable).
  std::vector<ProjectedPoint> locs;
  std::vector<int> rec_loc(records.size());
  std::map<std::pair<double, double>, int> seen;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto key = std::make_pair(records[i].pos.x, records[i].pos.y);
    auto it = seen.find(key);
    if (it == seen.end()) {
      it = seen.emplace(key, static_cast<int>(locs.size())).first;
      locs.push_back(records[i].pos);
    }
    rec_loc[i] = it->second;
  }

  std::vector<std::size_t> weight(locs.size(), 0);  // records per location
  for (int l : rec_loc) ++weight[l];

  const auto labels = dbscan(locs, {cfg.place_eps_m, cfg.place_min_samples});
  std::map<int, std::vector<int>> clusters;
  for (std::size_t i = 0; i < locs.size(); ++i)
    if (labels[i] >= 0) clusters[labels[i]].push_back(static_cast<int>(i));

  // With min_samples = 1 nothing is noise, but keep singletons well-defined
  // for other parameterizations: a noise location is its own place.
  std::vector<ProjectedPoint> place_center(locs.size());
  std::vector<int> loc_place(locs.size(), -1);
  int next_place = 0;
  std::map<int, int> cluster_place;
  for (const auto& [label, members] : clusters) {
    // Record-weighted medoid: the member minimizing the record-weighted
    // summed distance, so a rarely-seen neighboring tower cannot displace
    // the place center away from where most records sit.
    double best = std::numeric_limits<double>::infinity();
    ProjectedPoint center = locs[members.front()];
    for (int mi : members) {
      double sum = 0;
      for (int mj : members)
        sum += static_cast<double>(weight[mj]) *
               euclidean_distance(locs[mi], locs[mj]);
      if (sum < best) {
        best = sum;
        center = locs[mi];
      }
    }
    const int place = next_place++;
    for (int m : members) {
      loc_place[m] = place;
      place_center[m] = center;
    }
  }
  for (std::size_t i = 0; i < locs.size(); ++i) {
    if (loc_place[i] >= 0) continue;
    loc_place[i] = next_place++;
    place_center[i] = locs[i];
  }

  std::vector<int> place_ids(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].pos = place_center[rec_loc[i]];
    place_ids[i] = loc_place[rec_loc[i]];
  }
  return place_ids;
}

std::vector<StayPoint> classify_stays(const std::vector<Record>& records,
                                      const std::vector<int>& place_ids,
                                      const StayConfig& cfg) {
  std::vector<StayPoint> out;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= records.size(); ++i) {
    if (i < records.size() && place_ids[i] == place_ids[start]) continue;
    StayPoint sp;
    sp.user_id = records[start].user_id;
    sp.center = records[start].pos;
    sp.arrival = records[start].timestamp;
    sp.departure = records[i - 1].timestamp;
    sp.place_id = place_ids[start];
    sp.kind = static_cast<double>(sp.duration()) >= cfg.stay_min_duration_s
                  ? StayKind::Stay
                  : StayKind::PassBy;
    sp.n_records = static_cast<int>(i - start);
    // Representative station: the most frequent one in the run.
    std::map<std::string, int> freq;
    for (std::size_t j = start; j < i; ++j) ++freq[records[j].station_id];
    int best = -1;
    for (const auto& [id, n] : freq)
      if (n > best) { best = n; sp.station_id = id; }
    out.push_back(std::move(sp));
    start = i;
  }
  return out;
}

std::vector<StayPoint> detect_stays(std::vector<Record> records,
                                    const StayConfig& cfg) {
  if (records.empty()) return {};
  denoise_bursts(records, cfg);
  const auto place_ids = merge_significant_places(records, cfg);
  return classify_stays(records, place_ids, cfg);
}

}  // namespace actchain
