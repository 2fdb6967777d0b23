#pragma once

// Sharp reverse-Hoelder constants for A1 weights, the function
// H_p(z) = p z^(p-1) - (p-1) z^p with its inverse, and the extremal power
// weights that attain the bound.

#include <a1w/a1.hpp>
#include <a1w/rational.hpp>
#include <a1w/step_weight.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace a1w {

/// Thrown when an exponent falls outside [1, c/(c-1)).
class ExponentOutOfRange : public std::out_of_range {
 public:
  ExponentOutOfRange(double p, double critical)
      : std::out_of_range(message(p, critical)), p_(p), critical_(critical) {}
  double p() const { return p_; }
  double critical_exponent() const { return critical_; }

 private:
  static std::string message(double p, double critical) {
    std::ostringstream os;
    os.precision(17);
    os << "exponent p = " << p << " is outside [1, " << critical
       << "); the critical exponent c/(c-1) is " << critical;
    return os.str();
  }
  double p_;
  double critical_;
};

/// Exponents closer than this to c/(c-1) are rejected.
inline constexpr double kCriticalGuard = 1e-9;

struct SharpBound {
  double c;
  double p;
  double p_crit;
  double constant;
};

struct MomentPair {
  double f;  ///< integral of g
  double F;  ///< integral of g^p
};

inline double critical_exponent(double c) {
  if (!(c >= 1.0)) throw std::invalid_argument("A1 constant must be at least 1");
  if (c == 1.0) return std::numeric_limits<double>::infinity();
  return c / (c - 1.0);
}

inline void require_admissible(double c, double p) {
  double crit = critical_exponent(c);
  if (!(p >= 1.0) || !(p < crit - kCriticalGuard)) throw ExponentOutOfRange(p, crit);
}

/// 1 / (c^(p-1) (c + p - p c)).
inline double sharp_constant(double c, double p) {
  require_admissible(c, p);
  if (p == 1.0 || c == 1.0) return 1.0;
  return 1.0 / (std::pow(c, p - 1.0) * (c + p - p * c));
}

inline SharpBound sharp_bound(double c, double p) {
  return {c, p, critical_exponent(c), sharp_constant(c, p)};
}

inline double h_p(double p, double z) {
  if (!(p > 1.0)) throw std::invalid_argument("h_p requires p > 1");
  const double right = p / (p - 1.0);
  if (!(z >= 1.0 && z <= right))
    throw std::out_of_range("h_p argument outside [1, p/(p-1)]");
  return std::clamp(std::pow(z, p - 1.0) * (p - (p - 1.0) * z), 0.0, 1.0);
}

/// Inverse of h_p on [0, 1]: bisection to a bracket of width 1e-8, then Newton
/// polish kept inside the bracket.
inline double omega_p(double p, double y) {
  if (!(p > 1.0)) throw std::invalid_argument("omega_p requires p > 1");
  if (!(y >= 0.0 && y <= 1.0)) throw std::out_of_range("omega_p argument outside [0, 1]");
  const double right = p / (p - 1.0);
  if (y == 1.0) return 1.0;
  if (y == 0.0) return right;

  // h_p is decreasing: h(lo) >= y >= h(hi).
  double lo = 1.0;
  double hi = right;
  while (hi - lo > 1e-8) {
    double mid = 0.5 * (lo + hi);
    if (h_p(p, mid) >= y)
      lo = mid;
    else
      hi = mid;
  }
  double z = 0.5 * (lo + hi);
  for (int step = 0; step < 4; ++step) {
    double residual = h_p(p, z) - y;
    if (residual == 0.0) break;
    double slope = p * (p - 1.0) * std::pow(z, p - 2.0) * (1.0 - z);
    if (slope == 0.0) break;
    double next = std::clamp(z - residual / slope, lo, hi);
    if (next == z) break;
    z = next;
  }
  return z;
}

inline PowerWeight extremal_weight(double f, double tau) {
  if (!(f > 0.0)) throw std::invalid_argument("extremal weight mass must be positive");
  if (!(tau >= 1.0)) throw std::invalid_argument("extremal weight tau must be at least 1");
  return PowerWeight(f, tau);
}

/// Integral of g^p over (eps, 1]. For eps = 0 the result is +infinity when
/// p >= tau/(tau-1).
inline double power_moment(const PowerWeight& pw, double p, double eps) {
  if (!(p >= 1.0)) throw std::invalid_argument("moment exponent must be at least 1");
  if (!(eps >= 0.0 && eps < 1.0)) throw std::out_of_range("truncation must lie in [0, 1)");
  const double scale = std::pow(pw.mass / pw.tau, p);
  const double shifted = 1.0 + p / pw.tau - p;  // exponent of the antiderivative
  if (std::abs(shifted) <= 1e-12) {
    if (eps == 0.0) return std::numeric_limits<double>::infinity();
    return -scale * std::log(eps);
  }
  if (eps == 0.0) {
    if (shifted < 0.0) return std::numeric_limits<double>::infinity();
    return scale / shifted;
  }
  return scale * (1.0 - std::pow(eps, shifted)) / shifted;
}

/// |integral of g_1^p - B(c, p)| for the extremal weight with f = 1, tau = c.
inline double sharpness_gap(double c, double p) {
  require_admissible(c, p);
  return std::abs(power_moment(extremal_weight(1.0, c), p, 0.0) - sharp_constant(c, p));
}

inline MomentPair moments(const StepWeight& w, double p) {
  return {to_double(integrate(w, w.domain())), moment(w, p)};
}

struct ReverseHolderReport {
  double c = 1.0;
  double p = 1.0;
  double worst_ratio = 0.0;
  Interval worst_interval{0, 1};
  bool pass = false;
};

inline constexpr double kRatioTolerance = 1e-9;

/// Every interval between two breakpoints plus `random_count` seeded random
/// subintervals with endpoints on a 2^-20 grid of the domain.
inline std::vector<Interval> default_candidates(const StepWeight& w, std::size_t random_count = 10000,
                                                std::uint64_t seed = 0x5eed) {
  std::vector<Interval> out;
  const auto t = w.breakpoints();
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = a + 1; b < t.size(); ++b) out.emplace_back(t[a], t[b]);
  std::mt19937_64 rng(seed);
  constexpr std::uint64_t grid = std::uint64_t{1} << 20;
  const Rational step = w.length() / Rational(static_cast<unsigned long>(grid));
  while (out.size() < t.size() * (t.size() - 1) / 2 + random_count) {
    std::uint64_t a = rng() % (grid + 1);
    std::uint64_t b = rng() % (grid + 1);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    out.emplace_back(w.start() + step * static_cast<unsigned long>(a),
                     w.start() + step * static_cast<unsigned long>(b));
  }
  return out;
}

/// Evaluates both sides of the sharp reverse-Hoelder inequality on every
/// candidate interval. Overlaps are summed piece by piece in binary64 so short
/// intervals carry no cancellation error.
inline ReverseHolderReport check_reverse_holder(const StepWeight& w, double p,
                                                const std::vector<Interval>& intervals,
                                                std::optional<double> known_constant = {}) {
  ReverseHolderReport report;
  report.c = known_constant ? *known_constant : to_double(a1_constant(w).constant);
  report.p = p;
  const double bound = sharp_constant(report.c, p);

  const auto t = w.breakpoints();
  const auto v = w.values();
  std::vector<double> knots(t.size());
  std::vector<double> level(v.size());
  std::vector<double> level_p(v.size());
  for (std::size_t k = 0; k < t.size(); ++k) knots[k] = to_double(t[k]);
  for (std::size_t k = 0; k < v.size(); ++k) {
    level[k] = to_double(v[k]);
    level_p[k] = std::pow(level[k], p);
  }

  std::size_t worst_index = 0;
  report.worst_ratio = intervals.empty() ? 0.0 : -1.0;
  for (std::size_t idx = 0; idx < intervals.size(); ++idx) {
    const Interval& interval = intervals[idx];
    auto [first, last] = w.pieces_meeting(interval);
    const double a = to_double(interval.lo);
    const double b = to_double(interval.hi);
    double mass = 0.0;
    double mass_p = 0.0;
    for (std::size_t k = first; k <= last; ++k) {
      double overlap = std::min(b, knots[k + 1]) - std::max(a, knots[k]);
      mass += level[k] * overlap;
      mass_p += level_p[k] * overlap;
    }
    const double len = b - a;
    const double lhs = mass_p / len;
    const double rhs = bound * std::pow(mass / len, p);
    const double ratio = lhs / rhs;
    if (ratio > report.worst_ratio) {
      report.worst_ratio = ratio;
      worst_index = idx;
    }
  }
  if (!intervals.empty()) report.worst_interval = intervals[worst_index];
  report.pass = report.worst_ratio <= 1.0 + kRatioTolerance;
  return report;
}

inline ReverseHolderReport check_reverse_holder(const StepWeight& w, double p) {
  return check_reverse_holder(w, p, default_candidates(w));
}

}  // namespace a1w
