#pragma once

// Positive piecewise-constant weights with exact rational arithmetic, their
// non-increasing rearrangement, distribution function, and the power weights
// A * t^(-1 + 1/tau) on (0, 1].

#include <a1w/rational.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace a1w {

/// Open interval (lo, hi) with lo < hi.
struct Interval {
  Rational lo;
  Rational hi;

  Interval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (!(lo < hi))
      throw std::invalid_argument("interval requires lo < hi, got (" + to_string(lo) + ", " +
                                  to_string(hi) + ")");
  }

  Rational length() const { return hi - lo; }
  bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// One sample of the distribution function lambda -> |{w > lambda}|.
struct DistributionPoint {
  Rational level;
  Rational measure;
};

/// Positive step weight on (t_0, t_n]. Piece k (0-based) has value values[k] on
/// (t_k, t_{k+1}]; at a breakpoint the weight takes the value of the piece
/// ending there.
class StepWeight {
 public:
  StepWeight(std::vector<Rational> breakpoints, std::vector<Rational> values)
      : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    for (auto& t : breakpoints_) t.canonicalize();
    for (auto& v : values_) v.canonicalize();
    if (breakpoints_.size() < 2)
      throw std::invalid_argument("step weight needs at least two breakpoints");
    if (values_.size() + 1 != breakpoints_.size())
      throw std::invalid_argument("step weight needs exactly one value per piece: got " +
                                  std::to_string(values_.size()) + " values for " +
                                  std::to_string(breakpoints_.size()) + " breakpoints");
    for (std::size_t k = 0; k + 1 < breakpoints_.size(); ++k)
      if (!(breakpoints_[k] < breakpoints_[k + 1]))
        throw std::invalid_argument("breakpoints must be strictly increasing (index " +
                                    std::to_string(k + 1) + ")");
    for (std::size_t k = 0; k < values_.size(); ++k)
      if (sgn(values_[k]) <= 0)
        throw std::invalid_argument("non-positive value " + to_string(values_[k]) +
                                    " on piece " + std::to_string(k + 1));
    prefix_.reserve(breakpoints_.size());
    prefix_.emplace_back(0);
    for (std::size_t k = 0; k < values_.size(); ++k)
      prefix_.push_back(prefix_.back() + values_[k] * (breakpoints_[k + 1] - breakpoints_[k]));
    build_min_table();
  }

  static StepWeight constant(const Rational& value, const Rational& lo = 0,
                             const Rational& hi = 1) {
    return StepWeight({lo, hi}, {value});
  }

  std::size_t pieces() const { return values_.size(); }
  std::span<const Rational> breakpoints() const { return breakpoints_; }
  std::span<const Rational> values() const { return values_; }
  const Rational& start() const { return breakpoints_.front(); }
  const Rational& end() const { return breakpoints_.back(); }
  Rational length() const { return end() - start(); }
  Interval domain() const { return {start(), end()}; }
  Rational piece_length(std::size_t k) const { return breakpoints_[k + 1] - breakpoints_[k]; }

  /// Integral from the domain start to breakpoint k.
  const Rational& prefix_at_breakpoint(std::size_t k) const { return prefix_[k]; }

  /// Integral from the domain start to x, for x in [t_0, t_n].
  Rational prefix(const Rational& x) const {
    require_in_domain(x);
    std::size_t k = piece_at_or_after(x);
    return prefix_[k] + values_[k] * (x - breakpoints_[k]);
  }

  /// Value at x in (t_0, t_n], left-continuous.
  const Rational& operator()(const Rational& x) const {
    if (!(start() < x && x <= end()))
      throw std::out_of_range("point " + to_string(x) + " outside the weight's domain");
    auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
  }

  /// Index range [first, last] of pieces meeting the open interval with
  /// positive measure.
  std::pair<std::size_t, std::size_t> pieces_meeting(const Interval& interval) const {
    require_inside(interval);
    auto first = static_cast<std::size_t>(
        std::upper_bound(breakpoints_.begin(), breakpoints_.end(), interval.lo) -
        breakpoints_.begin() - 1);
    auto last = static_cast<std::size_t>(
        std::lower_bound(breakpoints_.begin(), breakpoints_.end(), interval.hi) -
        breakpoints_.begin() - 1);
    return {first, last};
  }

  /// Smallest value among pieces first..last (inclusive), O(1).
  const Rational& range_min(std::size_t first, std::size_t last) const {
    std::size_t level = static_cast<std::size_t>(std::bit_width(last - first + 1) - 1);
    std::size_t a = min_table_[level][first];
    std::size_t b = min_table_[level][last + 1 - (std::size_t{1} << level)];
    return values_[a] <= values_[b] ? values_[a] : values_[b];
  }

  bool is_nonincreasing() const {
    for (std::size_t k = 0; k + 1 < values_.size(); ++k)
      if (values_[k] < values_[k + 1]) return false;
    return true;
  }

  friend bool operator==(const StepWeight& a, const StepWeight& b) {
    return a.breakpoints_ == b.breakpoints_ && a.values_ == b.values_;
  }

  void require_inside(const Interval& interval) const {
    if (!(start() <= interval.lo && interval.hi <= end()))
      throw std::out_of_range("interval (" + to_string(interval.lo) + ", " +
                              to_string(interval.hi) + ") outside the weight's domain (" +
                              to_string(start()) + ", " + to_string(end()) + ")");
  }

 private:
  void require_in_domain(const Rational& x) const {
    if (x < start() || x > end())
      throw std::out_of_range("point " + to_string(x) + " outside the weight's domain");
  }

  // Piece k with t_k <= x < t_{k+1}; the last piece for x = t_n.
  std::size_t piece_at_or_after(const Rational& x) const {
    auto k = static_cast<std::size_t>(
        std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) - breakpoints_.begin() -
        1);
    return std::min(k, values_.size() - 1);
  }

  void build_min_table() {
    const std::size_t n = values_.size();
    min_table_.clear();
    min_table_.emplace_back(n);
    std::iota(min_table_[0].begin(), min_table_[0].end(), std::size_t{0});
    for (std::size_t span = 2; span <= n; span *= 2) {
      const auto& prev = min_table_.back();
      std::vector<std::size_t> next(n - span + 1);
      for (std::size_t i = 0; i + span <= n; ++i) {
        std::size_t a = prev[i];
        std::size_t b = prev[i + span / 2];
        next[i] = values_[a] <= values_[b] ? a : b;
      }
      min_table_.push_back(std::move(next));
    }
  }

  std::vector<Rational> breakpoints_;
  std::vector<Rational> values_;
  std::vector<Rational> prefix_;
  std::vector<std::vector<std::size_t>> min_table_;
};

inline StepWeight make_step_weight(std::vector<Rational> breakpoints, std::vector<Rational> values) {
  return StepWeight(std::move(breakpoints), std::move(values));
}

/// Exact integral of w over the open interval.
inline Rational integrate(const StepWeight& w, const Interval& interval) {
  w.require_inside(interval);
  return w.prefix(interval.hi) - w.prefix(interval.lo);
}

inline Rational average(const StepWeight& w, const Interval& interval) {
  return integrate(w, interval) / interval.length();
}

/// Minimum value over the pieces that meet the interval with positive measure.
inline Rational essinf(const StepWeight& w, const Interval& interval) {
  auto [first, last] = w.pieces_meeting(interval);
  return w.range_min(first, last);
}

/// Non-increasing rearrangement on (0, L]: pieces sorted by value, descending,
/// with equal neighbours merged.
inline StepWeight rearrange(const StepWeight& w) {
  std::vector<std::size_t> order(w.pieces());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto values = w.values();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  std::vector<Rational> breakpoints{Rational(0)};
  std::vector<Rational> merged;
  for (std::size_t k : order) {
    Rational len = w.piece_length(k);
    if (!merged.empty() && merged.back() == values[k]) {
      breakpoints.back() += len;
    } else {
      merged.push_back(values[k]);
      breakpoints.push_back(breakpoints.back() + len);
    }
  }
  return StepWeight(std::move(breakpoints), std::move(merged));
}

/// Measure of {x : w(x) > level}.
inline Rational distribution(const StepWeight& w, const Rational& level) {
  if (sgn(level) < 0) throw std::invalid_argument("distribution level must be non-negative");
  Rational measure = 0;
  auto values = w.values();
  for (std::size_t k = 0; k < w.pieces(); ++k)
    if (values[k] > level) measure += w.piece_length(k);
  return measure;
}

/// Distribution function sampled at every value level, non-increasing in level.
inline std::vector<DistributionPoint> distribution_profile(const StepWeight& w) {
  std::vector<Rational> levels(w.values().begin(), w.values().end());
  levels.emplace_back(0);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<DistributionPoint> out;
  out.reserve(levels.size());
  for (auto& level : levels) out.push_back({level, distribution(w, level)});
  return out;
}

/// Exact integral of w^k over the whole domain, k >= 1.
inline Rational integer_moment(const StepWeight& w, unsigned exponent) {
  if (exponent == 0) throw std::invalid_argument("moment exponent must be positive");
  Rational total = 0;
  auto values = w.values();
  for (std::size_t k = 0; k < w.pieces(); ++k) {
    Rational power = values[k];
    for (unsigned e = 1; e < exponent; ++e) power *= values[k];
    total += power * w.piece_length(k);
  }
  return total;
}

/// Integral of w^p over the whole domain in binary64.
inline double moment(const StepWeight& w, double p) {
  double total = 0.0;
  auto values = w.values();
  for (std::size_t k = 0; k < w.pieces(); ++k)
    total += std::pow(to_double(values[k]), p) * to_double(w.piece_length(k));
  return total;
}

/// g(t) = (mass / tau) * t^(-1 + 1/tau) on (0, 1]; its integral over (0, 1]
/// equals mass and (1/t) * integral over (0, t] equals tau * g(t).
struct PowerWeight {
  double mass;
  double tau;

  PowerWeight(double mass_, double tau_) : mass(mass_), tau(tau_) {
    if (!(mass > 0.0) || !std::isfinite(mass))
      throw std::invalid_argument("power weight mass must be positive");
    if (!(tau >= 1.0) || !std::isfinite(tau))
      throw std::invalid_argument("power weight tau must be at least 1");
  }

  double exponent() const { return -1.0 + 1.0 / tau; }
  double operator()(double t) const { return mass / tau * std::pow(t, exponent()); }
  /// Closed-form integral over (0, t].
  double prefix(double t) const { return mass * std::pow(t, 1.0 / tau); }
  double hardy_average(double t) const { return prefix(t) / t; }
};

enum class CellScheme { uniform, geometric };

/// Step weight whose value on each cell is the exact cell average of the power
/// weight. Uniform cells are k/n; geometric cells are 0, 2^-(n-1), ..., 1/2, 1.
inline StepWeight discretize_power(const PowerWeight& pw, std::size_t cells, CellScheme scheme) {
  if (cells == 0) throw std::invalid_argument("discretization needs at least one cell");
  if (pw.tau == 1.0) return StepWeight::constant(from_double(pw.mass));
  if (scheme == CellScheme::geometric && cells > 1000)
    throw std::invalid_argument("geometric discretization supports at most 1000 cells");

  std::vector<Rational> breakpoints;
  breakpoints.reserve(cells + 1);
  breakpoints.emplace_back(0);
  for (std::size_t k = 1; k <= cells; ++k) {
    if (scheme == CellScheme::uniform) {
      breakpoints.emplace_back(static_cast<long>(k), static_cast<unsigned long>(cells));
      breakpoints.back().canonicalize();
    } else {
      mpz_class den = 1;
      den <<= static_cast<mp_bitcnt_t>(cells - k);
      breakpoints.emplace_back(mpz_class(1), den);
    }
  }

  std::vector<Rational> values;
  values.reserve(cells);
  double previous_prefix = 0.0;
  for (std::size_t k = 0; k < cells; ++k) {
    double lo = to_double(breakpoints[k]);
    double hi = to_double(breakpoints[k + 1]);
    double upper = pw.prefix(hi);
    double avg = (upper - previous_prefix) / (hi - lo);
    previous_prefix = upper;
    Rational v = from_double(avg);
    // Rounding can break monotonicity only at the ulp level when tau is close to 1.
    if (!values.empty() && v > values.back()) v = values.back();
    values.push_back(std::move(v));
  }
  return StepWeight(std::move(breakpoints), std::move(values));
}

}  // namespace a1w
