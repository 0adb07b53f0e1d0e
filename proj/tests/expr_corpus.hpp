#pragma once

// Random well-defined expressions over x and y for property tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "simred/expr.hpp"

namespace simred::testing {

class ExprGenerator {
 public:
  explicit ExprGenerator(std::uint64_t seed) : rng_(seed) {}

  Expr operator()(int depth = 4) { return gen(depth); }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }

 private:
  int pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

  Expr leaf() {
    switch (pick(5)) {
      case 0: return Expr::variable("x");
      case 1: return Expr::variable("y");
      case 2: return Expr(static_cast<std::int64_t>(pick(7) - 3));
      case 3: return Expr::rational(pick(5) + 1, pick(3) + 2);
      default: return Expr(0.25 * (pick(9) - 4));
    }
  }

  // Safe positive expression: 1 + e^2.
  Expr positive(const Expr& e) { return Expr(1) + Expr::pow(e, Expr(2)); }

  Expr gen(int depth) {
    if (depth <= 0) return leaf();
    Expr a = gen(depth - 1);
    switch (pick(11)) {
      case 0: return a + gen(depth - 1);
      case 1: return a - gen(depth - 1);
      case 2: return a * gen(depth - 1);
      case 3: return a / positive(gen(depth - 1));
      case 4: return Expr::pow(a, Expr(static_cast<std::int64_t>(pick(3) + 2)));
      case 5: return exp(sin(a));
      case 6: return sin(a);
      case 7: return cos(a);
      case 8: return log(positive(a));
      case 9: return sqrt(positive(a));
      default: return -a;
    }
  }

  std::mt19937_64 rng_;
};

}  // namespace simred::testing
