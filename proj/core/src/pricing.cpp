#include "grst/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace grst {

namespace {

constexpr double kProbTol = 1e-12;

std::size_t expiry_layer(const RecombiningTree& tree, double expiry) {
  if (!(expiry > 0.0))
    throw InvalidParameter("pricing: expiry must be positive");
  const auto index = tree.layer_index_at(expiry);
  if (!index) {
    std::ostringstream os;
    os << "pricing: expiry " << expiry << " does not land on a tree layer time";
    throw InvalidParameter(os.str());
  }
  if (*index == 0)
    throw InvalidParameter("pricing: expiry coincides with the root layer");
  return *index;
}

PricingResult induct(const RecombiningTree& tree, std::size_t expiry_index,
                     const std::function<double(double)>& payoff_fn,
                     double rate, bool american) {
  const auto& terminal = tree.layer(expiry_index);
  std::vector<double> values(terminal.size());
  for (std::size_t j = 0; j < terminal.size(); ++j)
    values[j] = payoff_fn(terminal[j]);

  PricingResult result;
  for (std::size_t n = expiry_index; n-- > 0;) {
    const double dt = tree.time(n + 1) - tree.time(n);
    const double growth = std::exp(rate * dt);
    const double discount = std::exp(-rate * dt);
    const auto& layer = tree.layer(n);
    const auto& next = tree.layer(n + 1);
    std::vector<double> stepped(layer.size());
    for (std::size_t j = 0; j < layer.size(); ++j) {
      const double spot = layer[j];
      const double down = next[j];
      const double up = next[j + 1];
      const double q = (spot * growth - down) / (up - down);
      if (q < -kProbTol || q > 1.0 + kProbTol) {
        std::ostringstream os;
        os << "arbitrage: replication probability " << q
           << " outside [0, 1] at layer " << n << ", node " << j;
        throw ArbitrageViolation(os.str(), n, j);
      }
      double value = discount * (q * values[j + 1] + (1.0 - q) * values[j]);
      if (american)
        value = std::max(value, payoff_fn(spot));
      stepped[j] = value;
      if (n == 0)
        result.root_delta = (values[j + 1] - values[j]) / (up - down);
    }
    values.swap(stepped);
  }
  result.price = values.front();
  return result;
}

}  // namespace

double payoff(const OptionContract& contract, double spot) {
  const double intrinsic = contract.kind == OptionKind::call
                               ? spot - contract.strike
                               : contract.strike - spot;
  return std::max(intrinsic, 0.0);
}

PricingResult price_tree(const RecombiningTree& tree,
                         const OptionContract& contract, double rate) {
  const std::size_t index = expiry_layer(tree, contract.expiry);
  const bool american = contract.exercise == ExerciseStyle::american;
  return induct(
      tree, index, [&contract](double s) { return payoff(contract, s); }, rate,
      american);
}

PricingResult price_terminal_payoff(const RecombiningTree& tree, double expiry,
                                    const std::function<double(double)>& payoff_fn,
                                    double rate) {
  return induct(tree, expiry_layer(tree, expiry), payoff_fn, rate, false);
}

PricingResult price_mixture(const GrstMixture& mixture,
                            const OptionContract& contract, double rate) {
  if (mixture.components.empty() ||
      mixture.components.size() != mixture.weights.size())
    throw InvalidParameter("mixture pricing: components and weights must match");

  PricingResult result;
  result.component_weights = mixture.weights;
  result.component_prices.reserve(mixture.components.size());
  double price = 0.0;
  double delta = 0.0;
  for (std::size_t i = 0; i < mixture.components.size(); ++i) {
    PricingResult component;
    try {
      component = price_tree(mixture.components[i], contract, rate);
    } catch (const ArbitrageViolation& e) {
      std::ostringstream os;
      os << "component " << i << ": " << e.what();
      throw ArbitrageViolation(os.str(), e.layer(), e.node());
    } catch (const Error& e) {
      std::ostringstream os;
      os << "component " << i << ": " << e.what();
      throw InvalidParameter(os.str());
    }
    result.component_prices.push_back(component.price);
    price += mixture.weights[i] * component.price;
    delta += mixture.weights[i] * component.root_delta;
  }
  result.price = price;
  result.root_delta = delta;
  return result;
}

std::string to_string(OptionKind kind) {
  return kind == OptionKind::call ? "call" : "put";
}

std::string to_string(ExerciseStyle style) {
  return style == ExerciseStyle::european ? "european" : "american";
}

OptionKind option_kind_from_string(const std::string& s) {
  if (s == "call") return OptionKind::call;
  if (s == "put") return OptionKind::put;
  throw InvalidParameter("unknown option kind: " + s);
}

ExerciseStyle exercise_style_from_string(const std::string& s) {
  if (s == "european") return ExerciseStyle::european;
  if (s == "american") return ExerciseStyle::american;
  throw InvalidParameter("unknown exercise style: " + s);
}

}  // namespace grst
