#pragma once

#include "grst/pricing.hpp"

namespace grst {

/// Up/down factors and branch probability for a multiplicative binomial
/// lattice s0 * U^j * D^(n-j).
struct MultiplicativeTreeParams {
  double up_factor = 1.0;
  double down_factor = 1.0;
  double prob_up = 0.5;
  int steps = 0;
  double dt = 0.0;
};

/// Cox-Ross-Rubinstein: U = e^{sigma*sqrt(dt)}, D = 1/U, risk-neutral p.
MultiplicativeTreeParams crr_params(double sigma, double rate, double dt,
                                    int steps);

/// Tian: moment-matching factors
///   r_n = e^{r*dt}, v_n = e^{sigma^2*dt},
///   U = r_n*v_n*(v_n + 1 + sqrt(v_n^2 + 2v_n - 3))/2,
///   D = r_n*v_n*(v_n + 1 - sqrt(v_n^2 + 2v_n - 3))/2,
/// with p solving p*U + (1-p)*D = e^{r*dt}. The resulting triple satisfies
/// the first three moment equations of the lognormal step exactly.
MultiplicativeTreeParams tian_params(double sigma, double rate, double dt,
                                     int steps);

/// Jarrow-Rudd equal-probability tree: p = 1/2 with drift r - sigma^2/2
/// folded into the factors. Not risk-neutral.
MultiplicativeTreeParams jr_params(double sigma, double rate, double dt,
                                   int steps);

enum class TrigeorgisForm {
  // Drift term m = (r^2 - sigma^2/2)*dt and H = sqrt(K + (m*K)^2),
  // p = (1 + m*K/H)/2.
  as_printed,
  // Drift term m = (r - sigma^2/2)*dt and H = sqrt(K + m^2),
  // p = (1 + m/H)/2.
  standard,
};

/// Trigeorgis log-space symmetric moves u = e^H, d = e^{-H}.
MultiplicativeTreeParams trigeorgis_params(double sigma, double rate, double dt,
                                           int steps,
                                           TrigeorgisForm form = TrigeorgisForm::as_printed);

/// Backward induction on the multiplicative lattice with the stored branch
/// probability; American exercise via max with intrinsic. Expiry must equal
/// steps * dt.
PricingResult price_multiplicative(const MultiplicativeTreeParams& params,
                                   double s0, const OptionContract& contract,
                                   double rate);

/// Standard normal CDF/PDF.
double norm_cdf(double x);
double norm_pdf(double x);

/// Black-Scholes closed form (lognormal model).
double black_scholes(double s0, double strike, double rate, double sigma,
                     double expiry, OptionKind kind);

/// Bachelier closed form (arithmetic/normal model) with absolute volatility
/// in price units per sqrt(year). Uses the discounted-forward convention
/// F = s0 * e^{r*T}, so parity C - P = s0 - K*e^{-r*T} holds; at r = 0 this
/// reduces to C = (s0-K)*Phi(d) + sigma*sqrt(T)*phi(d).
double bachelier(double s0, double strike, double rate, double sigma_abs,
                 double expiry, OptionKind kind);

}  // namespace grst
