#pragma once

#include <cstdint>
#include <vector>

namespace asymparb::hs {

/// Convex family of measures on a finite outcome space, given as the hull of
/// finitely many generators, each absolutely continuous with respect to the
/// base measure. Every functional A -> Q(A) is linear, so scanning the
/// generators decides "there is Q in M with ...".
struct FiniteMeasureFamily {
  std::vector<double> base;                     // strictly formal: P, sums to 1
  std::vector<std::vector<double>> generators;  // Q_1..Q_G

  int outcomes() const { return static_cast<int>(base.size()); }
  static constexpr int kMaxOutcomes = 20;
};

/// Throws std::invalid_argument when sizes, signs, sums or absolute
/// continuity fail, or when the outcome cap is exceeded.
void require_valid(const FiniteMeasureFamily& family);

struct SubsetCheck {
  bool holds = true;
  std::uint32_t counterexample = 0;  // first failing subset, 0 when holds
};

/// Hypothesis of the first quantitative Halmos-Savage bound: every A with
/// P(A) > epsilon admits a generator with Q(A) > delta.
SubsetCheck verify_hs1(const FiniteMeasureFamily& family, double epsilon,
                       double delta);

/// Dual hypothesis: every A with P(A) < delta admits a generator with
/// Q(A) < epsilon.
SubsetCheck verify_hs2(const FiniteMeasureFamily& family, double epsilon,
                       double delta);

struct HsCertificate {
  std::vector<double> weights;  // mixture over the generators
  double value = 0.0;           // achieved minimax value; +/-inf when vacuous
  double threshold = 0.0;       // eps^2 delta / 2 (hs1) or 8 eps (hs2)
  std::uint32_t witness = 0;    // subset attaining the minimax
  bool pass = false;
  bool vacuous = false;         // no qualifying subset; pass by convention
};

/// Best guaranteed mixture: maximizes over mixture weights the minimum of
/// Q_w(A) over {A : P(A) > 4 epsilon}; passes when the value strictly beats
/// epsilon^2 delta / 2.
HsCertificate hs1_find_q0(const FiniteMeasureFamily& family, double epsilon,
                          double delta);

/// Dual: minimizes the maximum of Q_w(A) over nonempty {A : P(A) < 2 eps
/// delta}; passes when the value stays strictly below 8 epsilon.
HsCertificate hs2_find_q0(const FiniteMeasureFamily& family, double epsilon,
                          double delta);

}  // namespace asymparb::hs
