#include "asymparb/normal.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace asymparb {
namespace {

// reference values computed at 40-digit precision
struct Point {
  double x;
  double phi;
};
const Point kCdfTable[] = {
    {0.0, 0.5},
    {0.126013358924, 0.550139325009794},
    {-1.13412023031, 0.128372059372138},
    {1.0, 0.841344746068543},
    {-1.0, 0.158655253931457},
    {2.0, 0.977249868051821},
    {-2.0, 0.0227501319481792},
    {0.5, 0.691462461274013},
    {-0.5, 0.308537538725987},
    {3.3, 0.999516575857616},
    {-3.3, 0.000483424142383777},
    {5.0, 0.999999713348428},
    {-5.0, 2.86651571879194e-7},
    {-8.0, 6.22096057427178e-16},
};

TEST(NormCdf, MatchesHighPrecisionTable) {
  for (const Point& p : kCdfTable)
    EXPECT_NEAR(norm_cdf(p.x), p.phi, 1e-13) << "at x = " << p.x;
}

TEST(NormCdf, TailAccuracyIsRelative) {
  EXPECT_NEAR(norm_cdf(-8.0) / 6.22096057427178e-16, 1.0, 1e-10);
}

TEST(InverseNormCdf, MatchesHighPrecisionTable) {
  EXPECT_DOUBLE_EQ(inverse_norm_cdf(0.5), 0.0);
  EXPECT_NEAR(inverse_norm_cdf(0.025), -1.95996398454005, 1e-12);
  EXPECT_NEAR(inverse_norm_cdf(0.975), 1.95996398454005, 1e-12);
  EXPECT_NEAR(inverse_norm_cdf(0.3), -0.524400512708041, 1e-12);
  EXPECT_NEAR(inverse_norm_cdf(0.9999), 3.71901648545568, 1e-11);
  EXPECT_NEAR(inverse_norm_cdf(1e-9), -5.99780701500769, 1e-10);
}

TEST(InverseNormCdf, RoundTrip) {
  for (double p = 0.001; p < 1.0; p += 0.037)
    EXPECT_NEAR(norm_cdf(inverse_norm_cdf(p)), p, 1e-12);
  // the upper tail loses absolute precision in 1 - p; stay where p is
  // representable to full relative accuracy
  for (double x = -6.0; x <= 5.0; x += 0.25)
    EXPECT_NEAR(inverse_norm_cdf(norm_cdf(x)), x, 1e-9);
}

TEST(InverseNormCdf, Endpoints) {
  EXPECT_EQ(inverse_norm_cdf(0.0), -std::numeric_limits<double>::infinity());
  EXPECT_EQ(inverse_norm_cdf(1.0), std::numeric_limits<double>::infinity());
}

TEST(NormPdf, StandardValues) {
  EXPECT_NEAR(norm_pdf(0.0), 0.3989422804014327, 1e-15);
  EXPECT_NEAR(norm_pdf(1.0), 0.24197072451914337, 1e-15);
}

}  // namespace
}  // namespace asymparb
