#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace actchain {

inline constexpr double kEarthRadiusM = 6'371'000.0;

struct ProjectedPoint {
  double x = 0.0;  // meters east of origin
  double y = 0.0;  // meters north of origin

  friend bool operator==(const ProjectedPoint&, const ProjectedPoint&) = default;
};

inline double euclidean_distance(const ProjectedPoint& a, const ProjectedPoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Local equirectangular projection about a fixed origin. Adequate within
// ~100 km of the origin, which covers a metropolitan study area.
class Projection {
 public:
  Projection() = default;
  Projection(double origin_lon, double origin_lat)
      : lon0_(origin_lon), lat0_(origin_lat),
        cos_lat0_(std::cos(origin_lat * kDegToRad)) {
    check_lonlat(origin_lon, origin_lat);
  }

  ProjectedPoint project(double lon, double lat) const {
    check_lonlat(lon, lat);
    return {kEarthRadiusM * (lon - lon0_) * cos_lat0_ * kDegToRad,
            kEarthRadiusM * (lat - lat0_) * kDegToRad};
  }

  void unproject(const ProjectedPoint& p, double& lon, double& lat) const {
    lon = lon0_ + p.x / (kEarthRadiusM * cos_lat0_) * kRadToDeg;
    lat = lat0_ + p.y / kEarthRadiusM * kRadToDeg;
  }

  double origin_lon() const { return lon0_; }
  double origin_lat() const { return lat0_; }

  static void check_lonlat(double lon, double lat) {
    if (!(lon >= -180.0 && lon <= 180.0 && lat >= -90.0 && lat <= 90.0))
      throw std::invalid_argument("coordinates outside WGS84 range");
  }

 private:
  static constexpr double kDegToRad = std::numbers::pi / 180.0;
  static constexpr double kRadToDeg = 180.0 / std::numbers::pi;

  double lon0_ = 0.0;
  double lat0_ = 0.0;
  double cos_lat0_ = 1.0;
};

}  // namespace actchain
