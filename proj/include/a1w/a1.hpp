#pragma once

// Exact A1 constant of a step weight, the anchored Hardy constant, and the
// rearrangement check.
//
// Corner enumeration. Fix pieces i <= j and consider the open intervals (a, b)
// whose positive-measure piece range is exactly i..j, i.e. a in [t_{i-1}, t_i)
// and b in (t_{j-1}, t_j]. On that cell the essential infimum is the constant
// m_ij = min(v_i..v_j) and the average is
//     (P(b) - P(a)) / (b - a)
// with P affine in a and in b separately. A ratio of affine functions is
// monotone along each edge of the closed rectangle, so the supremum over the
// cell is reached at one of its four corners (as a limit when the corner itself
// lies outside the cell). The degenerate corner a = b only occurs for j = i + 1;
// its limits are v_i and v_j, both bounded by adjacent corners. The maximum over
// all cells (at least 1) is therefore the exact supremum.

#include <a1w/rational.hpp>
#include <a1w/step_weight.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace a1w {

struct A1Report {
  Rational constant;
  Interval witness;
  /// 1-based piece indices (i, j) of the cell generating the supremum.
  std::pair<std::size_t, std::size_t> witness_cell;
};

struct Theorem1Report {
  Rational original_constant;
  Rational rearranged_constant;
  Rational anchored_constant;
  bool pass = false;
};

/// Least c with average(I) <= c * essinf(I) for every subinterval I. Ties keep
/// the smallest cell (i, j), then the lexicographically smallest corner.
inline A1Report a1_constant(const StepWeight& w) {
  const auto t = w.breakpoints();
  const auto v = w.values();
  const std::size_t n = w.pieces();

  A1Report best{Rational(1), Interval(t[0], t[1]), {1, 1}};
  // Compare integral/(len * m) > best without dividing: integral > best * len * m.
  for (std::size_t i = 0; i < n; ++i) {
    Rational cell_min = v[i];
    for (std::size_t j = i; j < n; ++j) {
      if (v[j] < cell_min) cell_min = v[j];
      const std::array<std::size_t, 2> lefts{i, i + 1};
      const std::array<std::size_t, 2> rights{j, j + 1};
      for (std::size_t a : lefts) {
        for (std::size_t b : rights) {
          if (a >= b) continue;
          Rational mass = w.prefix_at_breakpoint(b) - w.prefix_at_breakpoint(a);
          Rational len = t[b] - t[a];
          if (mass > best.constant * len * cell_min) {
            best.constant = mass / (len * cell_min);
            best.witness = Interval(t[a], t[b]);
            best.witness_cell = {i + 1, j + 1};
          }
        }
      }
    }
  }
  return best;
}

/// Decides average(I) <= bound * essinf(I) exactly for many intervals of one
/// weight. A binary64 evaluation with a forward error bound settles the clear
/// cases; anything within that bound of the threshold is redone in rationals.
class A1BoundCheck {
 public:
  A1BoundCheck(const StepWeight& w, Rational bound)
      : weight_(&w), bound_(std::move(bound)), bound_d_(to_double(bound_)) {
    for (auto& t : w.breakpoints()) {
      knots_.push_back(to_double(t));
      scale_ = std::max(scale_, std::abs(knots_.back()));
    }
    for (auto& v : w.values()) levels_.push_back(to_double(v));
  }

  bool holds(const Interval& interval) const {
    auto [first, last] = weight_->pieces_meeting(interval);
    const double a = to_double(interval.lo);
    const double b = to_double(interval.hi);
    double mass = 0.0;
    double level_sum = 0.0;
    double low = std::numeric_limits<double>::infinity();
    for (std::size_t k = first; k <= last; ++k) {
      mass += levels_[k] * (std::min(b, knots_[k + 1]) - std::max(a, knots_[k]));
      level_sum += levels_[k];
      low = std::min(low, levels_[k]);
    }
    const double len = b - a;
    const double ratio = mass / (len * low);
    // Each overlap is off by at most a few ulps of the coordinate scale; the
    // sums and the final division add a relative error of O((n + 4) u).
    constexpr double u = std::numeric_limits<double>::epsilon();
    const double n = static_cast<double>(last - first + 1);
    const double slack =
        8.0 * u * std::max(scale_, 1.0) * level_sum / (low * len) + 8.0 * (n + 4.0) * u;
    if (ratio * (1.0 + slack) < bound_d_ * (1.0 - 4.0 * u)) return true;
    ++fallbacks_;
    return integrate(*weight_, interval) <=
           bound_ * interval.length() * weight_->range_min(first, last);
  }

  /// Number of intervals that needed the rational path.
  std::size_t fallbacks() const { return fallbacks_; }

 private:
  const StepWeight* weight_;
  Rational bound_;
  double bound_d_;
  double scale_ = 0.0;
  std::vector<double> knots_;
  std::vector<double> levels_;
  mutable std::size_t fallbacks_ = 0;
};

/// Least c with (1/(t - t_0)) * integral over (t_0, t] <= c * w(t) for all t.
/// On each piece the ratio is monotone in t, so both piece ends are checked
/// (for non-increasing weights the left limit always dominates).
inline Rational hardy_constant(const StepWeight& w, bool require_nonincreasing = true) {
  if (require_nonincreasing && !w.is_nonincreasing())
    throw std::invalid_argument("hardy_constant requires a non-increasing weight");
  const auto t = w.breakpoints();
  const auto v = w.values();
  Rational best = 1;
  for (std::size_t k = 1; k < w.pieces(); ++k) {
    for (std::size_t end : {k, k + 1}) {
      Rational ratio = w.prefix_at_breakpoint(end) / ((t[end] - t[0]) * v[k]);
      if (ratio > best) best = ratio;
    }
  }
  return best;
}

inline Theorem1Report check_theorem1(const StepWeight& w) {
  Theorem1Report report;
  report.original_constant = a1_constant(w).constant;
  StepWeight star = rearrange(w);
  report.rearranged_constant = a1_constant(star).constant;
  report.anchored_constant = hardy_constant(star);
  report.pass = report.rearranged_constant <= report.original_constant &&
                report.anchored_constant <= report.original_constant;
  return report;
}

}  // namespace a1w
