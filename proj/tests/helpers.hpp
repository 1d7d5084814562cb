#pragma once

#include <utility>
#include <vector>

#include "mstsinr/types.hpp"

namespace mstsinr::test {

// Small instance with the default physical parameters (alpha 3, beta 2,
// noise 1) and the given maximum power. Coordinates are used as given, so
// callers pass already normalized layouts.
inline Instance make_test_instance(std::vector<Point> pts, double p_max,
                                   double conn_c = 2.0) {
  Instance inst;
  inst.nodes = std::move(pts);
  inst.params.p_max = p_max;
  inst.params.conn_c = conn_c;
  inst.seed = 7;
  return inst;
}

inline std::vector<Point> line(std::initializer_list<double> xs) {
  std::vector<Point> pts;
  for (double x : xs) pts.push_back(Point{x, 0.0});
  return pts;
}

}  // namespace mstsinr::test
