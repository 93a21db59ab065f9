#include "asymparb/example_six.hpp"

#include <cmath>
#include <stdexcept>

#include "asymparb/normal.hpp"
#include "asymparb/parallel.hpp"

#include <random>

namespace asymparb::ex6 {

namespace {

void require_t_in_range(const ExampleSixParams& p, double t) {
  if (!(t >= 0.0) || !(t <= p.T))
    throw std::invalid_argument("time outside [0, T]");
}

// ln(e^{-T^2} + alpha) = -T^2 + log1p(e^{-T^2 (T^eps - 1)}), stable for all T
double log_breakpoint_gap(const ExampleSixParams& p) {
  double inner = -p.T * p.T * (std::pow(p.T, p.eps) - 1.0);
  return -p.T * p.T + std::log1p(std::exp(inner));
}

// uniform in (0, 1), never hitting the endpoints
double next_uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

double next_normal(std::mt19937_64& rng) {
  return inverse_norm_cdf(next_uniform(rng));
}

struct Accumulator {
  double sum = 0.0, sum2 = 0.0;
  void add(double x) {
    sum += x;
    sum2 += x * x;
  }
  void merge(const Accumulator& o) {
    sum += o.sum;
    sum2 += o.sum2;
  }
  McEstimate estimate(std::int64_t n, std::uint64_t seed) const {
    McEstimate e;
    e.n_paths = n;
    e.seed = seed;
    e.value = sum / static_cast<double>(n);
    if (n > 1) {
      double var = (sum2 - sum * sum / static_cast<double>(n)) /
                   static_cast<double>(n - 1);
      e.standard_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
    }
    return e;
  }
};

constexpr std::int64_t kBatch = 8192;

}  // namespace

ExampleSixParams ExampleSixParams::make(double T, double eps, double gamma,
                                        double lambda) {
  if (!(T > 0.0)) throw std::invalid_argument("T must be > 0");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  if (!(gamma > 0.0) || !(gamma < 0.5))
    throw std::invalid_argument("gamma must lie in (0, 1/2)");
  if (!(lambda >= 0.0) || !(lambda < 1.0))
    throw std::invalid_argument("lambda must lie in [0, 1)");
  ExampleSixParams p;
  p.T = T;
  p.eps = eps;
  p.gamma = gamma;
  p.lambda = lambda;
  p.log_alpha = -std::pow(T, 2.0 + eps);
  return p;
}

double ExampleSixParams::alpha() const { return std::exp(log_alpha); }

double drift_integral(const ExampleSixParams& p, double t) {
  require_t_in_range(p, t);
  double a = p.alpha();
  return (2.0 / p.T) * (std::sqrt(p.T + a) - std::sqrt(p.T - t + a));
}

double novikov_value(const ExampleSixParams& p) {
  // -ln(alpha)/T^2 = T^eps exactly; only ln(T + alpha) needs the value of
  // alpha, and there the underflow error is far below machine precision
  return std::log(p.T + p.alpha()) / (p.T * p.T) + std::pow(p.T, p.eps);
}

double gamma_n(const ExampleSixParams& p) {
  double inner = -p.T * p.T * (std::pow(p.T, p.eps) - 1.0);
  return (2.0 / p.T) * std::exp(-0.5 * p.T * p.T) *
         std::sqrt(1.0 + std::exp(inner));
}

double lambda_threshold(const ExampleSixParams& p) {
  return -2.0 * std::expm1(-gamma_n(p));
}

double breakpoint(const ExampleSixParams& p) {
  return p.T - std::exp(-p.T * p.T);
}

double i_n(const ExampleSixParams& p, double t) {
  require_t_in_range(p, t);
  double ts = breakpoint(p);
  if (t <= ts) return 0.0;
  double log_A = log_breakpoint_gap(p);
  double B = p.T - t + p.alpha();
  double log_B = B > 0.0 ? std::log(B) : p.log_alpha;
  double denom = 1.0 + 1.0 / (p.T * p.T);
  double e = 1.0 / (2.0 * p.T * p.T);
  double term_a = std::exp(0.5 * log_A) * (1.0 - std::exp(e * log_A) / denom);
  double term_b = std::exp(0.5 * log_B) * (1.0 - std::exp(e * log_B) / denom);
  return (2.0 / p.T) * (term_b - term_a);
}

double shadow_log_ratio(const ExampleSixParams& p, double t) {
  require_t_in_range(p, t);
  double ts = breakpoint(p);
  if (t <= ts) return 0.0;
  double log_A = log_breakpoint_gap(p);
  double B = p.T - t + p.alpha();
  double log_B = B > 0.0 ? std::log(B) : p.log_alpha;
  // exponent of the switched drift is p' = (1/2)(1 - 1/T^2); antiderivatives
  // of x^{-p'} and x^{-1/2} evaluated between B and A = e^{-T^2} + alpha
  double one_minus_p = (p.T * p.T + 1.0) / (2.0 * p.T * p.T);
  double first = (std::exp(one_minus_p * log_A) - std::exp(one_minus_p * log_B)) /
                 one_minus_p;
  double second = 2.0 * (std::exp(0.5 * log_A) - std::exp(0.5 * log_B));
  return (first - second) / p.T;
}

CpsConstants cps_constants(double lambda) {
  if (!(lambda >= 0.0) || !(lambda < 1.0))
    throw std::invalid_argument("lambda must lie in [0, 1)");
  CpsConstants c;
  c.lambda_prime = lambda / (2.0 - lambda);
  c.c_lambda = (2.0 - lambda) / 2.0;
  c.epsilon_n = std::log(2.0 / (2.0 - lambda));
  c.delta_n = -std::log1p(-c.lambda_prime);
  return c;
}

CpsConstants cps_constants(const ExampleSixParams& p) {
  return cps_constants(p.lambda);
}

double containment_margin(const ExampleSixParams& p, int grid_points) {
  if (grid_points < 2)
    throw std::invalid_argument("containment_margin: grid_points must be >= 2");
  CpsConstants c = cps_constants(p);
  double ts = breakpoint(p);
  auto margin_at = [&](double t) {
    double r = shadow_log_ratio(p, t);
    return std::min(c.epsilon_n - r, r + c.delta_n);
  };
  double m = std::min(margin_at(0.0), margin_at(ts));
  for (int k = 0; k < grid_points; ++k) {
    double t = ts + (p.T - ts) * static_cast<double>(k) /
                        static_cast<double>(grid_points - 1);
    m = std::min(m, margin_at(std::min(t, p.T)));
  }
  return m;
}

double zeta_n(const ExampleSixParams& p) {
  double x = std::exp(-p.T * p.T * (std::pow(p.T, p.eps) - 1.0));
  double t2 = p.T * p.T;
  double expo = (std::log(p.T + p.alpha()) + t2 - std::log1p(x)) / t2 +
                std::exp(-1.0) * std::exp(std::log1p(x) / t2) -
                std::exp(-std::pow(p.T, p.eps));
  return std::exp(expo);
}

double zeta_limit() { return std::exp(1.0 + std::exp(-1.0)); }

double p_an_closed(const ExampleSixParams& p) {
  return norm_cdf((0.5 - p.gamma) * std::sqrt(novikov_value(p)));
}

double q_an_closed(const ExampleSixParams& p) {
  return norm_cdf(-(0.5 + p.gamma) * std::sqrt(novikov_value(p)));
}

double q_an_bound(const ExampleSixParams& p) {
  return std::exp(-p.gamma * novikov_value(p));
}

ClosedFormRow closed_form_row(const ExampleSixParams& p, int grid_points) {
  ClosedFormRow row;
  row.novikov = novikov_value(p);
  row.gamma_n = gamma_n(p);
  row.lambda_threshold = lambda_threshold(p);
  CpsConstants c = cps_constants(p);
  row.c_lambda = c.c_lambda;
  row.epsilon_n = c.epsilon_n;
  row.delta_n = c.delta_n;
  row.zeta_n = zeta_n(p);
  row.p_a = p_an_closed(p);
  row.q_a = q_an_closed(p);
  row.q_a_bound = q_an_bound(p);
  row.breakpoint = breakpoint(p);
  row.containment_margin = containment_margin(p, grid_points);
  return row;
}

TerminalMc mc_terminal(const ExampleSixParams& p, std::int64_t n_paths,
                       std::uint64_t seed) {
  if (n_paths < 1) throw std::invalid_argument("mc_terminal: n_paths must be >= 1");
  const double v = novikov_value(p);
  const double vt = std::log(zeta_n(p));  // variance of the shadow density's log component
  const double sv = std::sqrt(v);
  const double svt = std::sqrt(vt);
  // A_n = {Z < e^{-gamma v}} = {X > (gamma - 1/2) v} for Z = exp(-X - v/2)
  const double a_cut = (p.gamma - 0.5) * v;

  struct BatchSums {
    Accumulator z, za, z2t;
    std::int64_t hits = 0;
  };
  const int batches = static_cast<int>((n_paths + kBatch - 1) / kBatch);
  std::vector<BatchSums> partial(batches);
  parallel_for(batches, [&](int b) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(b)));
    std::int64_t from = static_cast<std::int64_t>(b) * kBatch;
    std::int64_t count = std::min(kBatch, n_paths - from);
    BatchSums& s = partial[b];
    for (std::int64_t i = 0; i < count; ++i) {
      double x = sv * next_normal(rng);
      double z = std::exp(-x - 0.5 * v);
      bool in_a = x > a_cut;
      s.z.add(z);
      s.za.add(in_a ? z : 0.0);
      if (in_a) ++s.hits;
      double xt = svt * next_normal(rng);
      double zt = std::exp(-xt - 0.5 * vt);
      s.z2t.add(zt * zt);
    }
  });
  BatchSums total;
  for (const BatchSums& s : partial) {
    total.z.merge(s.z);
    total.za.merge(s.za);
    total.z2t.merge(s.z2t);
    total.hits += s.hits;
  }

  TerminalMc out;
  out.e_z = total.z.estimate(n_paths, seed);
  out.q_a = total.za.estimate(n_paths, seed);
  out.e_z2_tilde = total.z2t.estimate(n_paths, seed);
  double phat = static_cast<double>(total.hits) / static_cast<double>(n_paths);
  out.p_a.value = phat;
  out.p_a.standard_error =
      std::sqrt(std::max(phat * (1.0 - phat), 0.0) / static_cast<double>(n_paths));
  out.p_a.n_paths = n_paths;
  out.p_a.seed = seed;
  return out;
}

std::vector<std::vector<double>> path_grid(const ExampleSixParams& p,
                                           int n_paths, int grid_points,
                                           std::uint64_t seed,
                                           double noise_scale) {
  if (grid_points < 2)
    throw std::invalid_argument("path_grid: grid_points must be >= 2");
  if (n_paths < 1) throw std::invalid_argument("path_grid: n_paths must be >= 1");
  const double dt = p.T / static_cast<double>(grid_points - 1);
  const double sdt = std::sqrt(dt);
  std::vector<double> drift(grid_points);
  for (int k = 0; k < grid_points; ++k) {
    double t = std::min(dt * k, p.T);
    drift[k] = -0.5 * t + drift_integral(p, t);
  }

  std::vector<std::vector<double>> paths(n_paths);
  const int batches = static_cast<int>((n_paths + kBatch - 1) / kBatch);
  parallel_for(batches, [&](int b) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(b)));
    std::int64_t from = static_cast<std::int64_t>(b) * kBatch;
    std::int64_t to = std::min<std::int64_t>(from + kBatch, n_paths);
    for (std::int64_t i = from; i < to; ++i) {
      std::vector<double>& s = paths[i];
      s.resize(grid_points);
      double w = 0.0;
      s[0] = 1.0;
      for (int k = 1; k < grid_points; ++k) {
        w += sdt * next_normal(rng);
        s[k] = std::exp(noise_scale * w + drift[k]);
      }
    }
  });
  return paths;
}

}  // namespace asymparb::ex6
