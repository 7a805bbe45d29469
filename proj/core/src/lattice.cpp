#include "grst/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace grst {

namespace {

double scaled_tol(double a, double b) {
  return kValueTol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

DiscretePmf::DiscretePmf(std::vector<double> support, std::vector<double> mass)
    : support_(std::move(support)), mass_(std::move(mass)) {
  if (support_.size() != mass_.size() || support_.empty())
    throw InvalidParameter("pmf: support and mass sizes differ or are empty");
  double total = 0.0;
  for (double m : mass_) {
    if (!(m >= 0.0))
      throw InvalidParameter("pmf: negative mass");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvalidParameter("pmf: mass does not sum to 1");
}

double DiscretePmf::mean() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) acc += mass_[i] * support_[i];
  return acc;
}

double DiscretePmf::variance() const {
  const double m = mean();
  double acc = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    const double d = support_[i] - m;
    acc += mass_[i] * d * d;
  }
  return acc;
}

RecombiningTree::RecombiningTree(std::vector<double> times,
                                 std::vector<std::vector<double>> layers,
                                 double step_prob)
    : times_(std::move(times)), layers_(std::move(layers)), step_prob_(step_prob) {
  if (layers_.empty() || times_.size() != layers_.size())
    throw ConstructionError("tree: times and layers must be nonempty and equal length");
  if (!(step_prob_ > 0.0 && step_prob_ < 1.0))
    throw InvalidParameter("tree: branch probability must lie in (0, 1)");
  if (layers_.front().size() != 1)
    throw ConstructionError("tree: layer 0 must hold exactly the root value");
  for (std::size_t n = 0; n < layers_.size(); ++n) {
    if (n > 0) {
      if (layers_[n].size() != layers_[n - 1].size() + 1) {
        std::ostringstream os;
        os << "tree: layer " << n << " must grow by exactly one node";
        throw ConstructionError(os.str());
      }
      if (!(times_[n] > times_[n - 1]))
        throw ConstructionError("tree: times must be strictly increasing");
    }
    const auto& v = layers_[n];
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!std::isfinite(v[j]))
        throw ConstructionError("tree: non-finite node value");
      if (j > 0 && !(v[j] - v[j - 1] > scaled_tol(v[j], v[j - 1]))) {
        std::ostringstream os;
        os << "tree: layer " << n << " is not strictly increasing at node " << j;
        throw ConstructionError(os.str());
      }
    }
  }
}

const std::vector<double>& RecombiningTree::layer(std::size_t n) const {
  if (n >= layers_.size())
    throw InvalidParameter("tree: layer index out of range");
  return layers_[n];
}

double RecombiningTree::value(std::size_t n, std::size_t j) const {
  const auto& v = layer(n);
  if (j >= v.size())
    throw InvalidParameter("tree: node index out of range");
  return v[j];
}

double RecombiningTree::time(std::size_t n) const {
  if (n >= times_.size())
    throw InvalidParameter("tree: layer index out of range");
  return times_[n];
}

std::optional<std::size_t> RecombiningTree::layer_index_at(double t) const {
  for (std::size_t n = 0; n < times_.size(); ++n) {
    if (std::abs(times_[n] - t) <= kTimeTol * std::max(1.0, std::abs(t)))
      return n;
  }
  return std::nullopt;
}

StepMoves grst0_step_moves(double mu, double sigma, double dt) {
  if (!(sigma > 0.0))
    throw InvalidParameter("step moves: sigma must be positive");
  if (!(dt > 0.0))
    throw InvalidParameter("step moves: dt must be positive");
  const double drift = mu * dt;
  const double spread = sigma * std::sqrt(dt);
  return {drift + spread, drift - spread};
}

double nn_lattice_distance(double sigma, double dt) {
  const StepMoves m = grst0_step_moves(0.0, sigma, dt);
  return m.up - m.down;
}

RecombiningTree build_grst0(double root_value, double mu, double sigma,
                            double t_start, double t_end, int steps) {
  if (steps < 1)
    throw InvalidParameter("grst0: steps must be >= 1");
  if (!(t_end > t_start))
    throw InvalidParameter("grst0: t_end must exceed t_start");
  const double dt = (t_end - t_start) / steps;
  const StepMoves m = grst0_step_moves(mu, sigma, dt);

  std::vector<double> times(static_cast<std::size_t>(steps) + 1);
  std::vector<std::vector<double>> layers(static_cast<std::size_t>(steps) + 1);
  for (int n = 0; n <= steps; ++n) {
    times[n] = (n == steps) ? t_end : t_start + n * dt;
    auto& layer = layers[n];
    layer.resize(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j)
      layer[j] = root_value + j * m.up + (n - j) * m.down;
  }
  return RecombiningTree(std::move(times), std::move(layers));
}

DiscretePmf layer_pmf(const RecombiningTree& tree, std::size_t n) {
  if (n >= tree.layer_count())
    throw InvalidParameter("layer_pmf: layer index out of range");
  const double p = tree.step_prob();
  const double q = 1.0 - p;
  std::vector<double> mass{1.0};
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<double> next(mass.size() + 1, 0.0);
    for (std::size_t j = 0; j < mass.size(); ++j) {
      next[j] += q * mass[j];
      next[j + 1] += p * mass[j];
    }
    mass.swap(next);
  }
  return DiscretePmf(tree.layer(n), std::move(mass));
}

LayerMoments layer_moments(const RecombiningTree& tree, std::size_t n) {
  const DiscretePmf pmf = layer_pmf(tree, n);
  return {pmf.mean(), pmf.variance()};
}

}  // namespace grst
