#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "actchain/geo.hpp"

using namespace actchain;

// Great-circle distance, used as the independent oracle for the local
// projection.
static double haversine_m(double lon1, double lat1, double lon2, double lat2) {
  const double rad = std::numbers::pi / 180.0;
  const double dlat = (lat2 - lat1) * rad;
  const double dlon = (lon2 - lon1) * rad;
  const double a = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(lat1 * rad) * std::cos(lat2 * rad) *
                       std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(a));
}

TEST_CASE("projection round-trips") {
  Projection proj(121.47, 31.23);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dlon(-0.05, 0.05), dlat(-0.05, 0.05);
  for (int i = 0; i < 200; ++i) {
    const double lon = 121.47 + dlon(rng), lat = 31.23 + dlat(rng);
    const auto p = proj.project(lon, lat);
    double lon2 = 0, lat2 = 0;
    proj.unproject(p, lon2, lat2);
    CHECK(lon2 == doctest::Approx(lon).epsilon(1e-12));
    CHECK(lat2 == doctest::Approx(lat).epsilon(1e-12));
  }
}

TEST_CASE("projected distances agree with haversine within 0.2% at metro scale") {
  Projection proj(121.47, 31.23);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> dlon(-0.04, 0.04), dlat(-0.04, 0.04);
  for (int i = 0; i < 500; ++i) {
    const double lon1 = 121.47 + dlon(rng), lat1 = 31.23 + dlat(rng);
    const double lon2 = 121.47 + dlon(rng), lat2 = 31.23 + dlat(rng);
    const double ref = haversine_m(lon1, lat1, lon2, lat2);
    const double got =
        euclidean_distance(proj.project(lon1, lat1), proj.project(lon2, lat2));
    if (ref > 10.0) CHECK(std::abs(got - ref) / ref < 0.002);
  }
}

TEST_CASE("projection origin maps to (0,0) and axes are metric") {
  Projection proj(10.0, 45.0);
  const auto o = proj.project(10.0, 45.0);
  CHECK(o.x == doctest::Approx(0.0));
  CHECK(o.y == doctest::Approx(0.0));
  // One degree north is ~111.19 km everywhere on the sphere.
  const auto n = proj.project(10.0, 46.0);
  CHECK(n.y == doctest::Approx(kEarthRadiusM * std::numbers::pi / 180.0).epsilon(1e-9));
}

TEST_CASE("coordinates outside WGS84 are rejected") {
  Projection proj(0.0, 0.0);
  CHECK_THROWS_AS(proj.project(181.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(proj.project(0.0, -91.0), std::invalid_argument);
  CHECK_THROWS_AS(Projection(0.0, 95.0), std::invalid_argument);
  CHECK_THROWS_AS(proj.project(std::nan(""), 0.0), std::invalid_argument);
}
