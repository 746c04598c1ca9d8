// Copyright 2026 The evcharge Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference computations for the tests. Deliberately naive and free of
// Eigen: batch recomputation from the full history with a hand-written
// Gaussian elimination, so they share no code path with the library.

#ifndef EVCHARGE_TESTS_ORACLES_HPP_
#define EVCHARGE_TESTS_ORACLES_HPP_

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

inline Mat identity(std::size_t n) {
  Mat m(n, Vec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Solves M y = v by Gaussian elimination with partial pivoting.
inline Vec solve(Mat m, Vec v) {
  const std::size_t n = v.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    if (m[p][c] == 0.0) throw std::runtime_error("singular");
    std::swap(m[c], m[p]);
    std::swap(v[c], v[p]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r][c] / m[c][c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      v[r] -= f * v[c];
    }
  }
  Vec y(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = v[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= m[i][k] * y[k];
    y[i] = s / m[i][i];
  }
  return y;
}

struct Observation {
  int arm;
  Vec x;
  Vec z;  // empty for the disjoint model
  double reward;
};

// Ridge regression over one arm's history, prior I.
inline double disjoint_ucb(const std::vector<Observation>& history, int arm,
                           const Vec& x, double alpha) {
  const std::size_t d = x.size();
  Mat a = identity(d);
  Vec b(d, 0.0);
  for (const auto& o : history) {
    if (o.arm != arm) continue;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) a[i][j] += o.x[i] * o.x[j];
      b[i] += o.reward * o.x[i];
    }
  }
  const Vec theta = solve(a, b);
  const Vec ainv_x = solve(a, x);
  return dot(theta, x) + alpha * std::sqrt(dot(x, ainv_x));
}

// Joint ridge regression over phi = [z, 0.., x (in the arm's block), ..0],
// prior I. Mean and width of the hybrid model are exactly those of this
// single regression.
inline Vec joint_features(int arm, int arms, const Vec& x, const Vec& z) {
  const std::size_t d = x.size(), k = z.size();
  Vec phi(k + static_cast<std::size_t>(arms) * d, 0.0);
  for (std::size_t i = 0; i < k; ++i) phi[i] = z[i];
  for (std::size_t i = 0; i < d; ++i) phi[k + static_cast<std::size_t>(arm) * d + i] = x[i];
  return phi;
}

inline double hybrid_ucb(const std::vector<Observation>& history, int arms, int arm,
                         const Vec& x, const Vec& z, double alpha) {
  const std::size_t n = z.size() + static_cast<std::size_t>(arms) * x.size();
  Mat m = identity(n);
  Vec b(n, 0.0);
  for (const auto& o : history) {
    const Vec phi = joint_features(o.arm, arms, o.x, o.z);
    for (std::size_t i = 0; i < n; ++i) {
      if (phi[i] == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) m[i][j] += phi[i] * phi[j];
      b[i] += o.reward * phi[i];
    }
  }
  const Vec phi = joint_features(arm, arms, x, z);
  const Vec w = solve(m, b);
  const Vec minv_phi = solve(m, phi);
  return dot(w, phi) + alpha * std::sqrt(dot(phi, minv_phi));
}

}  // namespace oracle

#endif  // EVCHARGE_TESTS_ORACLES_HPP_
