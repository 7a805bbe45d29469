#include "grst/split.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace grst {

namespace {

double scaled_tol(double a, double b) {
  return kValueTol * std::max({1.0, std::abs(a), std::abs(b)});
}

void check_uniform_spacing(std::span<const double> v, double spacing,
                           const char* what) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (std::abs((v[i + 1] - v[i]) - spacing) > scaled_tol(v[i], v[i + 1])) {
      std::ostringstream os;
      os << what << ": values are not uniformly spaced at " << spacing;
      throw ConstructionError(os.str());
    }
  }
}

void check_odd(std::size_t n, const char* what) {
  if (n < 1 || n % 2 == 0) {
    std::ostringstream os;
    os << what << ": expected an odd number of lattice points, got " << n;
    throw ConstructionError(os.str());
  }
}

}  // namespace

void validate_schedule(const MarginalSchedule& schedule) {
  if (schedule.entries.empty())
    throw InvalidParameter("schedule: at least one Gaussian target required");
  double prev_t = 0.0;
  for (std::size_t i = 0; i < schedule.entries.size(); ++i) {
    const GaussianSpec& g = schedule.entries[i];
    if (!(g.sigma > 0.0)) {
      std::ostringstream os;
      os << "schedule: sigma must be positive at entry " << i;
      throw InvalidParameter(os.str());
    }
    if (!(g.t > prev_t)) {
      std::ostringstream os;
      os << "schedule: times must be positive and strictly increasing at entry " << i;
      throw InvalidParameter(os.str());
    }
    prev_t = g.t;
  }
}

AffineParams affine_params(const GaussianSpec& g1, const GaussianSpec& g2) {
  if (!(g1.sigma > 0.0) || !(g2.sigma > 0.0))
    throw InvalidParameter("affine: sigmas must be positive");
  const double scale = g2.sigma / g1.sigma;
  return {scale, g2.mu - scale * g1.mu};
}

ExtendedLattice extend_lattice(std::span<const double> leaf,
                               const GaussianSpec& g1, double t2, int k,
                               const StepMoves& moves) {
  if (k < 3 || k % 2 == 0)
    throw InvalidParameter("extension: k must be odd and at least 3");
  check_odd(leaf.size(), "extension leaf");
  if (leaf.size() < 3)
    throw InvalidParameter("extension: leaf must hold at least 3 points");
  if (!(t2 > g1.t))
    throw InvalidParameter("extension: target time must exceed the leaf time");
  const double spread = moves.up - moves.down;
  if (!(spread > 0.0))
    throw InvalidParameter("extension: up move must exceed down move");
  check_uniform_spacing(leaf, spread, "extension leaf");

  const double center = leaf[leaf.size() / 2];
  if (std::abs(center - g1.mu) > scaled_tol(center, g1.mu))
    throw ConstructionError("extension: leaf center does not line up with the marginal mean");

  const int steps = k - 1;
  const std::size_t count = leaf.size() + static_cast<std::size_t>(steps);
  std::vector<double> values(count);
  const double bottom = leaf.front() + steps * moves.down;
  for (std::size_t i = 0; i < count; ++i)
    values[i] = bottom + static_cast<double>(i) * spread;

  const double mu_star = g1.mu + steps * (moves.up + moves.down) / 2.0;
  const double var_star = g1.sigma * g1.sigma + steps * spread * spread / 4.0;
  return {std::move(values), GaussianSpec{t2, mu_star, std::sqrt(var_star)}};
}

std::vector<double> map_lattice(std::span<const double> values,
                                const AffineParams& params) {
  if (!(params.scale > 0.0))
    throw InvalidParameter("affine map: scale must be positive");
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    out[i] = params.scale * values[i] + params.shift;
  return out;
}

AugmentedLattices augment_lattices(std::span<const double> s1,
                                   std::span<const double> s2, double l1,
                                   double l2) {
  if (!(l1 > 0.0) || !(l2 > 0.0))
    throw InvalidParameter("augment: lattice spacings must be positive");
  check_odd(s1.size(), "augment start");
  check_odd(s2.size(), "augment end");
  if (s2.size() < s1.size() || (s2.size() - s1.size()) % 2 != 0)
    throw ConstructionError("augment: center indices cannot be lined up");
  check_uniform_spacing(s1, l1, "augment start");
  check_uniform_spacing(s2, l2, "augment end");

  const std::size_t count = 2 * s2.size() - 1;
  const int center = static_cast<int>(s2.size()) - 1;
  const double c1 = s1[s1.size() / 2];
  const double c2 = s2[s2.size() / 2];
  AugmentedLattices out;
  out.start.resize(count);
  out.end.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const int offset = static_cast<int>(i) - center;
    out.start[i] = c1 + offset * (l1 / 2.0);
    out.end[i] = c2 + offset * (l2 / 2.0);
  }
  return out;
}

LatticeFlow lattice_flow(std::vector<double> s_t1, std::vector<double> s_t2,
                         double t1, double t2, int k) {
  if (s_t1.size() != s_t2.size() || s_t1.empty())
    throw InvalidParameter("flow: endpoint lattices must be nonempty and equal length");
  if (!(t2 > t1))
    throw InvalidParameter("flow: t2 must exceed t1");
  if (k < 3 || k % 2 == 0)
    throw InvalidParameter("flow: k must be odd and at least 3");

  LatticeFlow flow;
  flow.t_start = t1;
  flow.t_end = t2;
  flow.steps = k - 1;
  const std::size_t p = s_t1.size();
  flow.slope.resize(p);
  for (std::size_t i = 0; i < p; ++i)
    flow.slope[i] = (s_t2[i] - s_t1[i]) / (t2 - t1);

  const double dt = (t2 - t1) / flow.steps;
  flow.interior.resize(static_cast<std::size_t>(flow.steps));
  for (int m = 1; m <= flow.steps; ++m) {
    auto& col = flow.interior[static_cast<std::size_t>(m - 1)];
    col.resize(p);
    for (std::size_t i = 0; i < p; ++i)
      col[i] = s_t1[i] + flow.slope[i] * (m * dt);
    for (std::size_t i = 1; i < p; ++i) {
      if (!(col[i] - col[i - 1] > scaled_tol(col[i], col[i - 1]))) {
        std::ostringstream os;
        os << "contraction: flow lines cross at time step " << m << " (row "
           << i << ")";
        throw ConstructionError(os.str());
      }
    }
  }
  flow.start = std::move(s_t1);
  flow.end = std::move(s_t2);
  return flow;
}

std::vector<std::vector<double>> reduce_to_split_segment(const LatticeFlow& flow) {
  const std::size_t p = flow.start.size();
  const int k = flow.steps + 1;
  if (p < static_cast<std::size_t>(2 * k - 1) || (p + 3 - 2 * k) % 2 != 0)
    throw InvalidParameter("reduce: flow width does not fit any starting layer");
  const int start_width = static_cast<int>((p + 3) / 2) - k;
  if (start_width < 1 || start_width % 2 == 0)
    throw InvalidParameter("reduce: starting layer width must be odd");
  const int center = static_cast<int>(p - 1) / 2;

  std::vector<std::vector<double>> layers;
  layers.reserve(static_cast<std::size_t>(flow.steps) + 1);
  for (int m = 0; m <= flow.steps; ++m) {
    const std::vector<double>& column =
        (m == 0) ? flow.start : flow.interior[static_cast<std::size_t>(m - 1)];
    const int count = start_width + m;
    const int base_row = center - (start_width - 1) - m;
    std::vector<double> layer(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
      layer[static_cast<std::size_t>(i)] =
          column[static_cast<std::size_t>(base_row + 2 * i)];
    layers.push_back(std::move(layer));
  }
  return layers;
}

RecombiningTree build_grst1(const GaussianSpec& g1, const GaussianSpec& g2,
                            double root_value, int k) {
  return build_grst(MarginalSchedule{{g1, g2}}, root_value, k);
}

RecombiningTree build_grst(const MarginalSchedule& schedule, double root_value,
                           int k) {
  validate_schedule(schedule);
  if (k < 3 || k % 2 == 0)
    throw InvalidParameter("grst: k must be odd and at least 3");

  const auto& targets = schedule.entries;
  const GaussianSpec& first = targets.front();
  const int steps = k - 1;

  // Flat bridge from the root to the first Gaussian; matching its moments
  // over [0, t1] fixes the per-year drift and volatility.
  const RecombiningTree bridge =
      build_grst0(root_value, (first.mu - root_value) / first.t,
                  first.sigma / std::sqrt(first.t), 0.0, first.t, steps);

  std::vector<double> times(bridge.times());
  std::vector<std::vector<double>> layers;
  layers.reserve(times.size());
  for (std::size_t n = 0; n < bridge.layer_count(); ++n)
    layers.push_back(bridge.layer(n));

  const StepMoves bridge_moves = grst0_step_moves(
      (first.mu - root_value) / first.t, first.sigma / std::sqrt(first.t),
      first.t / steps);
  double spacing = bridge_moves.up - bridge_moves.down;
  double drift_per_step = (first.mu - root_value) / steps;

  for (std::size_t i = 1; i < targets.size(); ++i) {
    const GaussianSpec& cur = targets[i - 1];
    const GaussianSpec& next = targets[i];
    const std::vector<double>& leaf = layers.back();

    const StepMoves ext_moves{drift_per_step + spacing / 2.0,
                              drift_per_step - spacing / 2.0};
    const ExtendedLattice extended =
        extend_lattice(leaf, cur, next.t, k, ext_moves);
    const AffineParams params = affine_params(extended.gaussian, next);
    const std::vector<double> target_lattice =
        map_lattice(extended.values, params);

    const AugmentedLattices augmented =
        augment_lattices(leaf, target_lattice, spacing, params.scale * spacing);
    const LatticeFlow flow =
        lattice_flow(augmented.start, augmented.end, cur.t, next.t, k);
    std::vector<std::vector<double>> segment = reduce_to_split_segment(flow);

    const double dt = (next.t - cur.t) / steps;
    for (int m = 1; m <= steps; ++m) {
      times.push_back(m == steps ? next.t : cur.t + m * dt);
      layers.push_back(std::move(segment[static_cast<std::size_t>(m)]));
    }
    spacing *= params.scale;
    drift_per_step = (next.mu - cur.mu) / steps;
  }
  return RecombiningTree(std::move(times), std::move(layers));
}

GrstMixture build_mixture(const std::vector<MarginalSchedule>& schedules,
                          std::vector<double> weights, double root_value,
                          int k) {
  if (schedules.empty())
    throw InvalidParameter("mixture: at least one component schedule required");
  if (weights.size() != schedules.size())
    throw InvalidParameter("mixture: one weight per component schedule required");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0))
      throw InvalidParameter("mixture: weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvalidParameter("mixture: weights must sum to 1");

  const auto& reference = schedules.front().entries;
  for (std::size_t c = 1; c < schedules.size(); ++c) {
    const auto& entries = schedules[c].entries;
    if (entries.size() != reference.size())
      throw InvalidParameter("mixture: component schedules must share the time grid");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (std::abs(entries[i].t - reference[i].t) >
          kTimeTol * std::max(1.0, std::abs(reference[i].t)))
        throw InvalidParameter("mixture: component schedules must share the time grid");
    }
  }

  GrstMixture mixture;
  mixture.weights = std::move(weights);
  mixture.components.reserve(schedules.size());
  for (const MarginalSchedule& schedule : schedules)
    mixture.components.push_back(build_grst(schedule, root_value, k));
  return mixture;
}

}  // namespace grst
