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

#ifndef EVCHARGE_LINUCB_HPP_
#define EVCHARGE_LINUCB_HPP_

#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "Eigen/Core"
#include "evcharge/rng.hpp"

namespace evcharge {

// Feature vector fed to the bandit. Always non-empty and finite.
class ContextVector {
 public:
  ContextVector() = default;
  explicit ContextVector(Eigen::VectorXd values);
  ContextVector(std::initializer_list<double> values);
  explicit ContextVector(std::span<const double> values);

  const Eigen::VectorXd& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[i]; }

 private:
  Eigen::VectorXd values_;
};

struct LinUcbConfig {
  double alpha = 1.0;
  int dimension = 1;
  // Shared-feature dimension k; 0 selects the disjoint model.
  int shared_dimension = 0;
  int arm_count = 2;

  bool hybrid() const { return shared_dimension > 0; }
  void validate() const;
};

// Per-arm ridge-regression history.
//   design  A_a  d x d, starts at I, grows by x x^T
//   reward  b_a  d,     grows by r x
//   cross   B_a  d x k, hybrid only, grows by x z^T
struct ArmState {
  int arm_id = 0;
  Eigen::MatrixXd design;
  Eigen::VectorXd reward;
  Eigen::MatrixXd cross;

  ArmState() = default;
  ArmState(int id, int dimension, int shared_dimension);
};

// Hybrid-model shared history A_0 (k x k, starts at I) and b_0.
struct SharedState {
  Eigen::MatrixXd design;
  Eigen::VectorXd reward;

  SharedState() = default;
  explicit SharedState(int shared_dimension);
};

// Upper confidence bound p for one arm. `shared` and `z` must both be set
// (hybrid) or both be null (disjoint). Pure; never mutates its inputs.
//
// Disjoint:
//   theta = A^-1 b
//   p     = theta.x + alpha * sqrt(x' A^-1 x)
//
// Hybrid (per-arm coefficients plus shared ones over z):
//   beta  = A0^-1 b0
//   theta = A^-1 (b - B beta)
//   s     =   z' A0^-1 z
//           - 2 z' A0^-1 B' A^-1 x
//           +   x' A^-1 x
//           +   x' A^-1 B A0^-1 B' A^-1 x
//   p     = z.beta + x.theta + alpha * sqrt(s)
double linucb_predict(const ArmState& arm, const SharedState* shared,
                      const ContextVector& x, const ContextVector* z,
                      double alpha);

// Arm id maximizing linucb_predict over `valid`; exact ties are broken
// uniformly with `rng`. contexts[i] (and shared_contexts[i] in hybrid
// mode) belongs to arms[i].
int linucb_select(std::span<const ArmState> arms, const SharedState* shared,
                  std::span<const ContextVector> contexts,
                  std::span<const ContextVector> shared_contexts,
                  std::span<const int> valid, double alpha, Rng& rng);

// Rank-one history update after observing reward r for `arm`.
//
// Hybrid order of operations:
//   A0 += B' A^-1 B;        b0 += B' A^-1 b
//   A  += x x';  B += x z';  b += r x
//   A0 += z z' - B' A^-1 B; b0 += r z - B' A^-1 b
void linucb_update(ArmState& arm, SharedState* shared, const ContextVector& x,
                   const ContextVector* z, double reward);

// One learner: config plus all arm histories.
class LinUcb {
 public:
  explicit LinUcb(LinUcbConfig config);

  const LinUcbConfig& config() const { return config_; }
  std::span<const ArmState> arms() const { return arms_; }
  const SharedState* shared() const {
    return shared_ ? &*shared_ : nullptr;
  }

  double predict(int arm, const ContextVector& x,
                 const ContextVector* z = nullptr) const;

  // Same context for every arm, which is how the charging agents use it.
  int select(const ContextVector& x, const ContextVector* z,
             std::span<const int> valid, Rng& rng) const;

  void update(int arm, const ContextVector& x, const ContextVector* z,
              double reward);

  // Versioned text snapshot; see write_snapshot in linucb.cpp for layout.
  void save(std::ostream& out) const;
  static LinUcb load(std::istream& in);

 private:
  LinUcbConfig config_;
  std::vector<ArmState> arms_;
  std::optional<SharedState> shared_;
};

}  // namespace evcharge

#endif  // EVCHARGE_LINUCB_HPP_
