#pragma once

namespace asymparb {

double norm_pdf(double x);

/// Standard normal distribution function, |abs error| < 1e-12 over the whole
/// line (complementary-error-function route).
double norm_cdf(double x);

/// Inverse of norm_cdf (Wichura's AS241 rational approximations, accurate to
/// roughly 1 part in 1e15). Returns -/+infinity at p = 0 / 1.
double inverse_norm_cdf(double p);

}  // namespace asymparb
