#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "grst/lattice.hpp"

namespace grst {

/// Affine map z = scale * x + shift sending one Gaussian onto another.
struct AffineParams {
  double scale = 1.0;
  double shift = 0.0;
};

/// Ordered Gaussian targets (t strictly increasing, all sigmas positive)
/// a split tree must reproduce at its segment boundaries.
struct MarginalSchedule {
  std::vector<GaussianSpec> entries;
};

/// Throws InvalidParameter unless the schedule is nonempty with strictly
/// increasing positive times and positive sigmas.
void validate_schedule(const MarginalSchedule& schedule);

/// Continuation of a leaf layer by further flat steps, with the Gaussian
/// the continued tree reconstructs at the extended horizon.
struct ExtendedLattice {
  std::vector<double> values;
  GaussianSpec gaussian;
};

/// Endpoint layers of a split segment embedded on their half-spacing
/// lattices, index-aligned at the means, plus the straight flow lines
/// joining them. `interior` holds one column per time step; the last
/// column lands on `end`.
struct LatticeFlow {
  std::vector<double> start;
  std::vector<double> end;
  std::vector<double> slope;
  std::vector<std::vector<double>> interior;
  double t_start = 0.0;
  double t_end = 0.0;
  int steps = 0;
};

/// K split trees sharing a root value and time grid, combined with fixed
/// component probabilities.
struct GrstMixture {
  std::vector<RecombiningTree> components;
  std::vector<double> weights;

  double root_value() const { return components.front().root_value(); }
};

/// Scale sigma2/sigma1 and shift mu2 - scale*mu1 mapping N(mu1, sigma1^2)
/// onto N(mu2, sigma2^2).
AffineParams affine_params(const GaussianSpec& g1, const GaussianSpec& g2);

/// Runs k-1 further flat steps from a leaf layer whose marginal is `g1`,
/// using the segment's per-step moves unchanged. Returns the
/// leaf.size() + k - 1 continued values and the continued Gaussian at t2:
/// mean shifts by (k-1)*(up+down)/2, variance grows by (k-1)*(up-down)^2/4.
/// The move spread must match the leaf spacing (recombination).
ExtendedLattice extend_lattice(std::span<const double> leaf,
                               const GaussianSpec& g1, double t2, int k,
                               const StepMoves& moves);

/// Elementwise image scale*v + shift; requires scale > 0 so ordering is
/// preserved.
std::vector<double> map_lattice(std::span<const double> values,
                                const AffineParams& params);

struct AugmentedLattices {
  std::vector<double> start;
  std::vector<double> end;
};

/// Embeds both endpoint layers on their half-spacing lattices and extends
/// them symmetrically to a common length 2*|s2| - 1, lining up the center
/// (mean) indices. Both inputs must be odd-length and uniformly spaced at
/// l1 and l2; |s2| - |s1| must be even.
AugmentedLattices augment_lattices(std::span<const double> s1,
                                   std::span<const double> s2, double l1,
                                   double l2);

/// Straight-line flow between index-matched augmented lattices over k-1
/// equal time steps: slope = (end - start)/(t2 - t1), interior column m =
/// start + slope*m*dt. Every column is checked for strict increase; a
/// violation is reported as a contraction error naming the step.
LatticeFlow lattice_flow(std::vector<double> s_t1, std::vector<double> s_t2,
                         double t1, double t2, int k);

/// Trims each flow column to the rows reachable by m binary moves from the
/// segment's starting nodes. Returns layers for m = 0..steps with node
/// counts s, s+1, ..., s+steps, where s is the starting layer width; the
/// final layer equals the flow's end lattice restricted to its original
/// nodes.
std::vector<std::vector<double>> reduce_to_split_segment(const LatticeFlow& flow);

/// Two-marginal split tree: a flat bridge of k-1 steps from (0, root) to
/// (t1, G1) followed by one split segment reaching (t2, G2).
RecombiningTree build_grst1(const GaussianSpec& g1, const GaussianSpec& g2,
                            double root_value, int k);

/// General split tree over a marginal schedule: a flat bridge to the first
/// Gaussian, then one split segment per further entry. Every segment runs
/// k-1 steps, so the layer at schedule time i has i*(k-1) + 1 nodes and
/// reproduces (mu_i, sigma_i^2) under forward induction.
RecombiningTree build_grst(const MarginalSchedule& schedule, double root_value,
                           int k);

/// K independent split trees sharing the root value, bundled with component
/// probabilities. All schedules must share the same time grid; weights must
/// be nonnegative and sum to 1 within 1e-12.
GrstMixture build_mixture(const std::vector<MarginalSchedule>& schedules,
                          std::vector<double> weights, double root_value,
                          int k);

}  // namespace grst
