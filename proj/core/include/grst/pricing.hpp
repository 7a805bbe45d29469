#pragma once

#include <functional>
#include <string>
#include <vector>

#include "grst/lattice.hpp"
#include "grst/split.hpp"

namespace grst {

enum class OptionKind { call, put };
enum class ExerciseStyle { european, american };

struct OptionContract {
  OptionKind kind = OptionKind::call;
  double strike = 0.0;
  double expiry = 0.0;
  ExerciseStyle exercise = ExerciseStyle::european;
};

struct PricingResult {
  double price = 0.0;
  double root_delta = 0.0;
  std::vector<double> component_prices;
  std::vector<double> component_weights;
};

double payoff(const OptionContract& contract, double spot);

/// Backward-induction replication pricing. Each node uses its own
/// no-arbitrage up probability q = (S*e^{r*dt} - S_d)/(S_u - S_d), which
/// must lie in [0, 1]; moves are node-dependent on split trees, so q is
/// recomputed per node. American exercise takes max(continuation,
/// intrinsic) at every node. The contract expiry must land on a layer time.
PricingResult price_tree(const RecombiningTree& tree,
                         const OptionContract& contract, double rate);

/// Replication pricing of an arbitrary European payoff evaluated at the
/// layer whose time matches `expiry`.
PricingResult price_terminal_payoff(const RecombiningTree& tree, double expiry,
                                    const std::function<double(double)>& payoff_fn,
                                    double rate);

/// Prices each component tree independently and combines the results with
/// the mixture weights.
PricingResult price_mixture(const GrstMixture& mixture,
                            const OptionContract& contract, double rate);

std::string to_string(OptionKind kind);
std::string to_string(ExerciseStyle style);
OptionKind option_kind_from_string(const std::string& s);
ExerciseStyle exercise_style_from_string(const std::string& s);

}  // namespace grst
