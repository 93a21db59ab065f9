#pragma once

#include <cstdint>
#include <vector>

namespace asymparb::ex6 {

/// Parameters of the lognormal market family with drift
/// 1/(T (T - t + alpha)^{1/2}) and alpha = exp(-T^{2+eps}). alpha is carried
/// in log space throughout: it underflows already around T = 6 and every
/// formula below stays exact when it does.
struct ExampleSixParams {
  double T = 0.0;       // horizon
  double eps = 0.0;     // drift-explosion exponent, > 0
  double gamma = 0.0;   // separation-set parameter, in (0, 1/2)
  double lambda = 0.0;  // transaction cost, in [0, 1)
  double log_alpha = 0.0;  // = -T^(2+eps), exact

  static ExampleSixParams make(double T, double eps, double gamma, double lambda);
  double alpha() const;  // may underflow to 0; callers tolerate that
};

/// Integrated drift: (2/T) (sqrt(T + alpha) - sqrt(T - t + alpha)).
double drift_integral(const ExampleSixParams& p, double t);

/// Accumulated squared market price of risk
/// v = ln(T + alpha)/T^2 + T^eps; -ln(alpha) is never exponentiated.
double novikov_value(const ExampleSixParams& p);

/// gamma_n = (2/T) e^{-T^2/2} (1 + e^{-T^2 (T^eps - 1)})^{1/2}: the uniform
/// bound on |i_n| below.
double gamma_n(const ExampleSixParams& p);

/// Cost level 2 (1 - e^{-gamma_n}) above which the shifted-drift shadow
/// price is certified to stay inside the bid-ask spread.
double lambda_threshold(const ExampleSixParams& p);

/// Time t* = T - e^{-T^2} at which the shadow drift switches exponent.
double breakpoint(const ExampleSixParams& p);

/// ln(shadow/price): zero on [0, t*], then the closed-form antiderivative of
/// the drift difference. Equals i_n(t) algebraically; the two are computed
/// by different routes and cross-checked in the tests.
double shadow_log_ratio(const ExampleSixParams& p, double t);

/// The two-term display for the same quantity,
///   -(2/T) A^{1/2} (1 - A^{1/(2T^2)} / (1 + 1/T^2))
///   +(2/T) B^{1/2} (1 - B^{1/(2T^2)} / (1 + 1/T^2)),
/// with A = e^{-T^2} + alpha and B = T - t + alpha.
double i_n(const ExampleSixParams& p, double t);

struct CpsConstants {
  double lambda_prime = 0.0;  // lambda / (2 - lambda)
  double c_lambda = 1.0;      // (2 - lambda) / 2
  double epsilon_n = 0.0;     // ln(2 / (2 - lambda)), the binding log half-width
  double delta_n = 0.0;       // -ln(1 - lambda_prime)
};
CpsConstants cps_constants(const ExampleSixParams& p);
CpsConstants cps_constants(double lambda);

/// min over the time grid of min(epsilon_n - R(t), R(t) + delta_n) with
/// R = shadow_log_ratio; a nonnegative value certifies
/// (1-lambda) S <= c(lambda) * shadow <= S on the grid. The grid is
/// grid_points uniform points on [t*, T] plus the endpoints of [0, t*].
double containment_margin(const ExampleSixParams& p, int grid_points);

/// Second moment of the shadow market's density, exp of the displayed
/// Novikov sum for the switched drift.
double zeta_n(const ExampleSixParams& p);

/// Limit of zeta_n: exp(1 + e^{-1}).
double zeta_limit();

/// P(A_n) = Phi((1/2 - gamma) sqrt(v)) for the separating set
/// A_n = {density < e^{-gamma v}}.
double p_an_closed(const ExampleSixParams& p);

/// Q(A_n) = Phi(-(1/2 + gamma) sqrt(v)), by the lognormal partial
/// expectation identity (not displayed in closed form anywhere else; the
/// Monte Carlo route below cross-checks it).
double q_an_closed(const ExampleSixParams& p);

/// The bound e^{-gamma v} with Q(A_n) < bound * P(A_n).
double q_an_bound(const ExampleSixParams& p);

/// All closed-form diagnostics for one parameter set.
struct ClosedFormRow {
  double novikov = 0.0;
  double gamma_n = 0.0;
  double lambda_threshold = 0.0;
  double c_lambda = 1.0;
  double epsilon_n = 0.0;
  double delta_n = 0.0;
  double zeta_n = 0.0;
  double p_a = 0.0;
  double q_a = 0.0;
  double q_a_bound = 0.0;
  double breakpoint = 0.0;
  double containment_margin = 0.0;
};
ClosedFormRow closed_form_row(const ExampleSixParams& p, int grid_points = 10000);

struct McEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::int64_t n_paths = 0;
  std::uint64_t seed = 0;
};

struct TerminalMc {
  McEstimate e_z;        // E[Z] -> 1
  McEstimate p_a;        // P(A_n)
  McEstimate q_a;        // Q(A_n) = E_P[Z 1_A]
  McEstimate e_z2_tilde; // E[Ztilde^2] -> zeta_n
};

/// Exact terminal-law sampling: the stochastic integrals have deterministic
/// integrands, so the terminal log-densities are Gaussian with known
/// variances and no time discretization enters. Deterministic for a fixed
/// seed regardless of the worker count (fixed-size batches, ordered merge).
TerminalMc mc_terminal(const ExampleSixParams& p, std::int64_t n_paths,
                       std::uint64_t seed);

/// Exact lognormal path sampling of S on a uniform grid (for reporting).
/// S[path][k] = exp(noise_scale * W_{t_k} - t_k/2 + D(t_k)), S[path][0] = 1.
/// noise_scale exists so tests can pin the deterministic skeleton.
std::vector<std::vector<double>> path_grid(const ExampleSixParams& p,
                                           int n_paths, int grid_points,
                                           std::uint64_t seed,
                                           double noise_scale = 1.0);

}  // namespace asymparb::ex6
