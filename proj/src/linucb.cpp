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

#include "evcharge/linucb.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "Eigen/Cholesky"
#include "evcharge/error.hpp"
#include "evcharge/textio.hpp"

namespace evcharge {
namespace {

void check_finite(const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    require(std::isfinite(v[i]), "ContextVector: non-finite entry");
  }
}

Eigen::LLT<Eigen::MatrixXd> factor(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  // Histories only ever grow by outer products on top of I, so this can
  // only trip on corrupted state (e.g. a hand-edited snapshot).
  require(llt.info() == Eigen::Success,
          "LinUCB: design matrix is not positive definite");
  return llt;
}

void check_shapes(const ArmState& arm, const SharedState* shared,
                  const ContextVector& x, const ContextVector* z) {
  require(x.size() == arm.design.rows(),
          "LinUCB: context dimension does not match arm");
  require((shared == nullptr) == (z == nullptr),
          "LinUCB: shared context required exactly in hybrid mode");
  if (shared != nullptr) {
    require(z->size() == shared->design.rows() &&
                arm.cross.cols() == shared->design.rows(),
            "LinUCB: shared context dimension mismatch");
  }
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
}

void read_matrix(TokenReader& in, Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = in.real();
}

void read_vector(TokenReader& in, Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = in.real();
}

}  // namespace

ContextVector::ContextVector(Eigen::VectorXd values)
    : values_(std::move(values)) {
  require(values_.size() >= 1, "ContextVector: dimension must be >= 1");
  check_finite(values_);
}

ContextVector::ContextVector(std::initializer_list<double> values)
    : ContextVector(std::span<const double>(values.begin(), values.size())) {}

ContextVector::ContextVector(std::span<const double> values)
    : values_(static_cast<Eigen::Index>(values.size())) {
  for (std::size_t i = 0; i < values.size(); ++i)
    values_[static_cast<Eigen::Index>(i)] = values[i];
  require(values_.size() >= 1, "ContextVector: dimension must be >= 1");
  check_finite(values_);
}

void LinUcbConfig::validate() const {
  require(std::isfinite(alpha) && alpha >= 0.0, "LinUCB: alpha must be >= 0");
  require(dimension >= 1, "LinUCB: dimension must be >= 1");
  require(shared_dimension >= 0, "LinUCB: shared dimension must be >= 0");
  require(arm_count >= 2, "LinUCB: need at least two arms");
}

ArmState::ArmState(int id, int dimension, int shared_dimension)
    : arm_id(id),
      design(Eigen::MatrixXd::Identity(dimension, dimension)),
      reward(Eigen::VectorXd::Zero(dimension)),
      cross(Eigen::MatrixXd::Zero(dimension, shared_dimension)) {}

SharedState::SharedState(int shared_dimension)
    : design(Eigen::MatrixXd::Identity(shared_dimension, shared_dimension)),
      reward(Eigen::VectorXd::Zero(shared_dimension)) {}

double linucb_predict(const ArmState& arm, const SharedState* shared,
                      const ContextVector& x, const ContextVector* z,
                      double alpha) {
  check_shapes(arm, shared, x, z);
  require(alpha >= 0.0, "LinUCB: alpha must be >= 0");
  const auto llt = factor(arm.design);
  const Eigen::VectorXd& xv = x.values();
  const Eigen::VectorXd ainv_x = llt.solve(xv);

  if (shared == nullptr) {
    const Eigen::VectorXd theta = llt.solve(arm.reward);
    const double var = std::max(0.0, xv.dot(ainv_x));
    return theta.dot(xv) + alpha * std::sqrt(var);
  }

  const Eigen::VectorXd& zv = z->values();
  const auto llt0 = factor(shared->design);
  const Eigen::VectorXd beta = llt0.solve(shared->reward);
  const Eigen::VectorXd theta = llt.solve(arm.reward - arm.cross * beta);
  const Eigen::VectorXd a0inv_z = llt0.solve(zv);
  const Eigen::VectorXd bt_ainv_x = arm.cross.transpose() * ainv_x;
  const double s = zv.dot(a0inv_z) - 2.0 * a0inv_z.dot(bt_ainv_x) +
                   xv.dot(ainv_x) + bt_ainv_x.dot(llt0.solve(bt_ainv_x));
  return zv.dot(beta) + xv.dot(theta) + alpha * std::sqrt(std::max(0.0, s));
}

int linucb_select(std::span<const ArmState> arms, const SharedState* shared,
                  std::span<const ContextVector> contexts,
                  std::span<const ContextVector> shared_contexts,
                  std::span<const int> valid, double alpha, Rng& rng) {
  require(!valid.empty(), "LinUCB: empty set of valid arms");
  require(contexts.size() == arms.size(), "LinUCB: one context per arm");
  require(shared == nullptr || shared_contexts.size() == arms.size(),
          "LinUCB: one shared context per arm");

  std::vector<int> best;
  double best_p = -std::numeric_limits<double>::infinity();
  for (int id : valid) {
    require(id >= 0 && static_cast<std::size_t>(id) < arms.size(),
            "LinUCB: arm id out of range");
    const auto i = static_cast<std::size_t>(id);
    const double p = linucb_predict(
        arms[i], shared, contexts[i],
        shared ? &shared_contexts[i] : nullptr, alpha);
    if (p > best_p) {
      best_p = p;
      best.assign(1, id);
    } else if (p == best_p) {
      best.push_back(id);
    }
  }
  if (best.size() == 1) return best.front();
  return best[rng.below(best.size())];
}

void linucb_update(ArmState& arm, SharedState* shared, const ContextVector& x,
                   const ContextVector* z, double reward) {
  check_shapes(arm, shared, x, z);
  require(std::isfinite(reward), "LinUCB: non-finite reward");
  const Eigen::VectorXd& xv = x.values();

  if (shared == nullptr) {
    arm.design.noalias() += xv * xv.transpose();
    arm.reward += reward * xv;
    return;
  }

  const Eigen::VectorXd& zv = z->values();
  {
    const auto llt = factor(arm.design);
    shared->design.noalias() += arm.cross.transpose() * llt.solve(arm.cross);
    shared->reward.noalias() += arm.cross.transpose() * llt.solve(arm.reward);
  }
  arm.design.noalias() += xv * xv.transpose();
  arm.cross.noalias() += xv * zv.transpose();
  arm.reward += reward * xv;
  {
    const auto llt = factor(arm.design);
    shared->design.noalias() += zv * zv.transpose();
    shared->design.noalias() -= arm.cross.transpose() * llt.solve(arm.cross);
    shared->reward += reward * zv;
    shared->reward.noalias() -= arm.cross.transpose() * llt.solve(arm.reward);
  }
  // Round-off from the subtract-then-add above can leave A0 a hair off
  // symmetric; keep it exactly symmetric.
  shared->design = (0.5 * (shared->design + shared->design.transpose())).eval();
}

LinUcb::LinUcb(LinUcbConfig config) : config_(config) {
  config_.validate();
  arms_.reserve(static_cast<std::size_t>(config_.arm_count));
  for (int a = 0; a < config_.arm_count; ++a)
    arms_.emplace_back(a, config_.dimension, config_.shared_dimension);
  if (config_.hybrid()) shared_.emplace(config_.shared_dimension);
}

double LinUcb::predict(int arm, const ContextVector& x,
                       const ContextVector* z) const {
  require(arm >= 0 && arm < config_.arm_count, "LinUCB: arm out of range");
  return linucb_predict(arms_[static_cast<std::size_t>(arm)], shared(), x, z,
                        config_.alpha);
}

int LinUcb::select(const ContextVector& x, const ContextVector* z,
                   std::span<const int> valid, Rng& rng) const {
  require((z != nullptr) == config_.hybrid(),
          "LinUCB: shared context required exactly in hybrid mode");
  std::vector<ContextVector> xs(arms_.size(), x);
  std::vector<ContextVector> zs;
  if (z) zs.assign(arms_.size(), *z);
  return linucb_select(arms_, shared(), xs, zs, valid, config_.alpha, rng);
}

void LinUcb::update(int arm, const ContextVector& x, const ContextVector* z,
                    double reward) {
  require(arm >= 0 && arm < config_.arm_count, "LinUCB: arm out of range");
  linucb_update(arms_[static_cast<std::size_t>(arm)],
                shared_ ? &*shared_ : nullptr, x, z, reward);
}

// Snapshot layout (text, whitespace separated, matrices row-major):
//
//   evcharge-linucb 1
//   alpha <a> dimension <d> shared_dimension <k> arms <n>
//   [shared
//    <A0: k rows of k>
//    <b0: k values>]                       (hybrid only)
//   arm <id>
//   <A: d rows of d>
//   <b: d values>
//   [<B: d rows of k>]                     (hybrid only)
//   ... repeated for every arm
//
// Numbers use the shortest round-trip decimal form, so load(save(x)) == x
// bit for bit.
void LinUcb::save(std::ostream& out) const {
  out << "evcharge-linucb 1\n";
  out << "alpha " << format_double(config_.alpha) << " dimension "
      << config_.dimension << " shared_dimension " << config_.shared_dimension
      << " arms " << config_.arm_count << '\n';
  if (shared_) {
    out << "shared\n";
    write_matrix(out, shared_->design);
    write_matrix(out, shared_->reward.transpose());
  }
  for (const auto& arm : arms_) {
    out << "arm " << arm.arm_id << '\n';
    write_matrix(out, arm.design);
    write_matrix(out, arm.reward.transpose());
    if (shared_) write_matrix(out, arm.cross);
  }
}

LinUcb LinUcb::load(std::istream& in) {
  TokenReader tok(in);
  tok.expect("evcharge-linucb");
  if (tok.integer() != 1) throw ConfigError("snapshot: unsupported version");
  LinUcbConfig cfg;
  tok.expect("alpha");
  cfg.alpha = tok.real();
  tok.expect("dimension");
  cfg.dimension = static_cast<int>(tok.integer());
  tok.expect("shared_dimension");
  cfg.shared_dimension = static_cast<int>(tok.integer());
  tok.expect("arms");
  cfg.arm_count = static_cast<int>(tok.integer());
  try {
    cfg.validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(std::string("snapshot: ") + e.what());
  }
  LinUcb model(cfg);
  if (model.shared_) {
    tok.expect("shared");
    read_matrix(tok, model.shared_->design);
    read_vector(tok, model.shared_->reward);
  }
  for (auto& arm : model.arms_) {
    tok.expect("arm");
    if (tok.integer() != arm.arm_id)
      throw ConfigError("snapshot: arms out of order");
    read_matrix(tok, arm.design);
    read_vector(tok, arm.reward);
    if (model.shared_) read_matrix(tok, arm.cross);
  }
  return model;
}

}  // namespace evcharge
