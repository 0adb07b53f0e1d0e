#include "simred/sampling.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace simred {

namespace {

constexpr std::array<std::uint64_t, 12> kPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

}  // namespace

HaltonSequence::HaltonSequence(std::size_t dims, std::uint64_t seed) : dims_(dims), index_(seed + 1) {
  if (dims > kPrimes.size()) throw std::invalid_argument("HaltonSequence: too many dimensions");
}

std::vector<double> HaltonSequence::next() {
  std::vector<double> p(dims_);
  for (std::size_t k = 0; k < dims_; ++k) p[k] = radical_inverse(index_, kPrimes[k]);
  ++index_;
  return p;
}

std::vector<NumericBindings> sample_box(const Box& box, std::size_t n, std::uint64_t seed) {
  HaltonSequence seq(box.size(), seed);
  std::vector<NumericBindings> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto u = seq.next();
    NumericBindings b;
    for (std::size_t k = 0; k < box.size(); ++k) b[box[k].name] = box[k].lo + u[k] * (box[k].hi - box[k].lo);
    out.push_back(std::move(b));
  }
  return out;
}

SampleReport is_zero_at(const Expr& e, const std::vector<NumericBindings>& points, double tol) {
  SampleReport rep;
  rep.zero = true;
  bool have_witness = false;
  for (const auto& p : points) {
    double abs_val = 0.0;
    double scale = 0.0;
    try {
      double v = eval_numeric(e, p);
      long double vl = eval_numeric_ld(e, p);
      abs_val = std::max(std::fabs(v), static_cast<double>(std::fabs(vl)));
      scale = term_scale(e, p);
    } catch (const EvalError& err) {
      rep.zero = false;
      ++rep.failed_points;
      if (!rep.error) {
        rep.error = err.what();
        rep.witness = p;
        have_witness = true;
        rep.max_normalized = INFINITY;
      }
      continue;
    }
    double normalized = abs_val / std::max(1.0, scale);
    rep.max_abs = std::max(rep.max_abs, abs_val);
    if (!(normalized <= tol)) rep.zero = false;
    if (!rep.error && (!have_witness || normalized > rep.max_normalized)) {
      rep.max_normalized = normalized;
      rep.witness = p;
      have_witness = true;
    }
  }
  return rep;
}

SampleReport is_zero_sampled(const Expr& e, const Box& box, const SampleOptions& opt) {
  if (opt.samples == 0) throw std::invalid_argument("is_zero_sampled: need at least one sample");
  for (const auto& r : box)
    if (!(r.hi > r.lo)) throw std::invalid_argument("is_zero_sampled: degenerate range for '" + r.name + "'");
  return is_zero_at(e, sample_box(box, opt.samples, opt.seed), opt.tol);
}

}  // namespace simred
