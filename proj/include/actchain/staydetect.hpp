#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "actchain/config.hpp"
#include "actchain/types.hpp"

namespace actchain {

struct DbscanParams {
  double eps_m = 50.0;
  int min_samples = 2;
};

// Deterministic DBSCAN. A point is core iff >= min_samples points
// (itself included) lie within eps; clusters are maximal density-connected
// sets; a border point joins the earliest-discovered cluster among its
// core neighbors. Returns per-point labels, -1 = noise.
std::vector<int> dbscan(const std::vector<ProjectedPoint>& points,
                        const DbscanParams& params);

// Index ranges [first, last) of bursts: consecutive records whose
// inter-record gap is <= gap_s stay in one burst.
std::vector<std::pair<std::size_t, std::size_t>> segment_bursts(
    const std::vector<Record>& records, double gap_s);

// Medoid index: member minimizing the summed distance to all members;
// ties go to the earliest index.
std::size_t medoid_index(const std::vector<ProjectedPoint>& points);

// Within each burst, clusters records spatially and snaps clustered
// records to the cluster medoid; noise keeps its own position.
void denoise_bursts(std::vector<Record>& records, const StayConfig& cfg);

// Clusters a user's distinct record locations into significant places and
// snaps every record to its place medoid. Returns per-record place ids.
std::vector<int> merge_significant_places(std::vector<Record>& records,
                                          const StayConfig& cfg);

// Collapses maximal runs of consecutive records at one place into
// StayPoints (Stay iff duration >= stay_min_duration_s).
std::vector<StayPoint> classify_stays(const std::vector<Record>& records,
                                      const std::vector<int>& place_ids,
                                      const StayConfig& cfg);

// Whole per-user pipeline: bursts -> denoise -> place merge -> stays.
std::vector<StayPoint> detect_stays(std::vector<Record> records,
                                    const StayConfig& cfg);

}  // namespace actchain
