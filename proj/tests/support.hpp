#pragma once

#include "gospace/homspace.hpp"

#include <Eigen/Dense>

#include <random>

namespace testing {

inline Eigen::VectorXd randn(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> d;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = d(rng);
  return v;
}

inline gospace::SpacePtr space(const std::string& id, int n = 0, int r = 0) {
  return gospace::build_space(id, {n, r});
}

}  // namespace testing
