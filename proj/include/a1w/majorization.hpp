#pragma once

// Hardy-Littlewood majorization of step weights, its hinge-function dual, and
// the two-level flattening that replaces a non-increasing weight by its
// averages on the two halves of a window.

#include <a1w/rational.hpp>
#include <a1w/step_weight.hpp>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace a1w {

struct FlattenSpec {
  Rational t0;
  Rational delta;
};

/// G(t) = max(t - threshold, 0).
struct HingeFunction {
  Rational threshold;

  explicit HingeFunction(Rational threshold_) : threshold(std::move(threshold_)) {
    if (sgn(threshold) < 0) throw std::invalid_argument("hinge threshold must be non-negative");
  }
  Rational operator()(const Rational& t) const {
    return t > threshold ? Rational(t - threshold) : Rational(0);
  }
};

namespace detail {

inline void require_same_length(const StepWeight& a, const StepWeight& b) {
  if (a.length() != b.length())
    throw std::invalid_argument("weights live on domains of different length (" +
                                to_string(a.length()) + " vs " + to_string(b.length()) + ")");
}

}  // namespace detail

/// True iff every prefix integral of rearrange(lower) is at most the matching
/// prefix integral of rearrange(upper). Both prefixes are piecewise affine with
/// knots among the union of breakpoints, so their difference is affine between
/// consecutive union knots and the knots alone decide the question.
inline bool majorizes(const StepWeight& lower, const StepWeight& upper) {
  detail::require_same_length(lower, upper);
  const StepWeight a = rearrange(lower);
  const StepWeight b = rearrange(upper);
  std::vector<Rational> knots(a.breakpoints().begin(), a.breakpoints().end());
  knots.insert(knots.end(), b.breakpoints().begin(), b.breakpoints().end());
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  for (const auto& t : knots)
    if (a.prefix(t) > b.prefix(t)) return false;
  return true;
}

inline Rational hinge_integral(const StepWeight& w, const HingeFunction& h) {
  Rational total = 0;
  auto values = w.values();
  for (std::size_t k = 0; k < w.pieces(); ++k)
    if (values[k] > h.threshold) total += (values[k] - h.threshold) * w.piece_length(k);
  return total;
}

/// Hinge integrals are piecewise linear in the threshold with kinks at the
/// values of either weight and vanish above both maxima, so the merged value
/// levels together with 0 are a complete test set.
inline bool convex_dominates(const StepWeight& lower, const StepWeight& upper) {
  detail::require_same_length(lower, upper);
  std::vector<Rational> levels(lower.values().begin(), lower.values().end());
  levels.insert(levels.end(), upper.values().begin(), upper.values().end());
  levels.emplace_back(0);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (auto& level : levels) {
    HingeFunction h(level);
    if (hinge_integral(lower, h) > hinge_integral(upper, h)) return false;
  }
  return true;
}

/// Replaces w on [t0 - delta, t0) by its average d1 there and on [t0, t0 + delta]
/// by its average d2 there. Window endpoints that were not breakpoints of w are
/// dropped again when the values on both sides coincide.
inline StepWeight two_level_flatten(const StepWeight& w, const FlattenSpec& spec) {
  if (sgn(spec.delta) <= 0) throw std::invalid_argument("flatten window needs delta > 0");
  const Rational left = spec.t0 - spec.delta;
  const Rational right = spec.t0 + spec.delta;
  if (left < w.start() || right > w.end())
    throw std::out_of_range("flatten window (" + to_string(left) + ", " + to_string(right) +
                            ") leaves the weight's domain");
  if (!w.is_nonincreasing())
    throw std::invalid_argument("two_level_flatten requires a non-increasing weight");

  const Rational d1 = average(w, Interval(left, spec.t0));
  const Rational d2 = average(w, Interval(spec.t0, right));

  const auto t = w.breakpoints();
  const auto v = w.values();
  struct Segment {
    Rational hi;
    Rational value;
  };
  std::vector<Segment> segments;
  for (std::size_t k = 0; k < w.pieces() && t[k] < left; ++k)
    segments.push_back({std::min(t[k + 1], left), v[k]});
  segments.push_back({spec.t0, d1});
  segments.push_back({right, d2});
  for (std::size_t k = 0; k < w.pieces(); ++k)
    if (t[k + 1] > right) segments.push_back({t[k + 1], v[k]});

  std::vector<Rational> breakpoints{w.start()};
  std::vector<Rational> values;
  for (auto& segment : segments) {
    bool introduced = !std::binary_search(t.begin(), t.end(), breakpoints.back());
    if (!values.empty() && introduced && values.back() == segment.value) {
      breakpoints.back() = segment.hi;
    } else {
      breakpoints.push_back(segment.hi);
      values.push_back(segment.value);
    }
  }
  return StepWeight(std::move(breakpoints), std::move(values));
}

}  // namespace a1w
