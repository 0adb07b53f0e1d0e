#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "simred/expr.hpp"

namespace simred {

struct VarRange {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
};

/// Axis-aligned sampling box over named variables.
using Box = std::vector<VarRange>;

/// Deterministic low-discrepancy point source (Halton, one prime base per
/// dimension). The seed offsets the sequence index, so different seeds give
/// disjoint but equally well-spread point sets.
class HaltonSequence {
 public:
  HaltonSequence(std::size_t dims, std::uint64_t seed);

  /// Next point in [0,1)^dims.
  std::vector<double> next();

 private:
  std::size_t dims_;
  std::uint64_t index_;
};

/// Maps unit-cube points into `box`, returning bindings for evaluation.
std::vector<NumericBindings> sample_box(const Box& box, std::size_t n, std::uint64_t seed);

struct SampleReport {
  bool zero = false;             // every point within tolerance
  double max_abs = 0.0;          // largest |e| seen
  double max_normalized = 0.0;   // largest |e| / max(1, term scale)
  NumericBindings witness;       // point with the largest normalized residual
  std::optional<std::string> error;  // first evaluation failure, if any
  std::size_t failed_points = 0;
};

struct SampleOptions {
  std::size_t samples = 100;
  double tol = 1e-9;
  std::uint64_t seed = 0;
};

/// Numeric zero test: e is judged zero iff at every sample point
/// |e| <= tol * max(1, scale), scale being the largest additive term of e at
/// that point. Each point is evaluated in double and long double and the worse
/// residual counts. Points where evaluation fails count as failures.
SampleReport is_zero_sampled(const Expr& e, const Box& box, const SampleOptions& opt = {});

/// Same test over an explicit point list.
SampleReport is_zero_at(const Expr& e, const std::vector<NumericBindings>& points, double tol);

}  // namespace simred
