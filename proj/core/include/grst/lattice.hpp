#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "grst/errors.hpp"

namespace grst {

// Absolute tolerance used for value comparisons, scaled by max(1, |value|).
inline constexpr double kValueTol = 1e-12;

// Tolerance for matching a time against the tree's layer grid.
inline constexpr double kTimeTol = 1e-9;

/// A normal marginal target: N(mu, sigma^2) at time t (years).
struct GaussianSpec {
  double t = 0.0;
  double mu = 0.0;
  double sigma = 1.0;
};

/// Up/down price increments for one lattice step of an additive tree.
struct StepMoves {
  double up = 0.0;
  double down = 0.0;
};

/// Discrete distribution over a layer's node values.
class DiscretePmf {
 public:
  DiscretePmf(std::vector<double> support, std::vector<double> mass);

  const std::vector<double>& support() const noexcept { return support_; }
  const std::vector<double>& mass() const noexcept { return mass_; }
  std::size_t size() const noexcept { return support_.size(); }

  double mean() const;
  double variance() const;

 private:
  std::vector<double> support_;
  std::vector<double> mass_;
};

struct LayerMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Layered additive lattice with unit layer growth: layer n holds one node
/// more than layer n-1, and node (n, j) branches to (n+1, j) on a down move
/// and (n+1, j+1) on an up move. Recombination is structural: interior
/// values are stored once and shared by the up-then-down and down-then-up
/// paths. Values within a layer are strictly increasing; prices may be
/// negative (additive model). Immutable after construction, safe to share
/// across threads.
class RecombiningTree {
 public:
  /// Validates layer sizes, strict in-layer increase, strictly increasing
  /// times, and branch probability; throws ConstructionError or
  /// InvalidParameter on violation.
  RecombiningTree(std::vector<double> times,
                  std::vector<std::vector<double>> layers,
                  double step_prob = 0.5);

  std::size_t layer_count() const noexcept { return layers_.size(); }
  const std::vector<double>& layer(std::size_t n) const;
  std::size_t layer_size(std::size_t n) const { return layer(n).size(); }
  double value(std::size_t n, std::size_t j) const;

  const std::vector<double>& times() const noexcept { return times_; }
  double time(std::size_t n) const;
  double root_value() const noexcept { return layers_.front().front(); }
  double step_prob() const noexcept { return step_prob_; }

  /// Index of the layer whose time matches `t` within kTimeTol, if any.
  std::optional<std::size_t> layer_index_at(double t) const;

 private:
  std::vector<double> times_;
  std::vector<std::vector<double>> layers_;
  double step_prob_;
};

/// Per-step moves matching mean mu*dt and variance sigma^2*dt with branch
/// probability 1/2: u = mu*dt + sigma*sqrt(dt), d = mu*dt - sigma*sqrt(dt).
StepMoves grst0_step_moves(double mu, double sigma, double dt);

/// Spacing u - d of the leaf-layer lattice after one step, 2*sigma*sqrt(dt).
double nn_lattice_distance(double sigma, double dt);

/// Flat-parameter additive binomial tree over [t_start, t_end] with the
/// given per-year drift and volatility. Layer n holds
/// root + j*u + (n-j)*d for j = 0..n.
RecombiningTree build_grst0(double root_value, double mu, double sigma,
                            double t_start, double t_end, int steps);

/// Node probabilities of layer n by forward induction with the tree's
/// branch probability per step.
DiscretePmf layer_pmf(const RecombiningTree& tree, std::size_t n);

/// Mean and variance of layer n under layer_pmf.
LayerMoments layer_moments(const RecombiningTree& tree, std::size_t n);

}  // namespace grst
