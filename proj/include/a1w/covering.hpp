#pragma once

// Covering of a finite union of intervals E inside a host interval I by
// intervals whose E-density lies in [1 - eps, 1).

#include <a1w/rational.hpp>
#include <a1w/step_weight.hpp>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace a1w {

/// Closed interval [lo, hi]; used for components of E and for cover members.
struct Segment {
  Rational lo;
  Rational hi;
  Rational length() const { return hi - lo; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Finite union of closed intervals inside `host`. Components are kept sorted
/// and merged; zero-length components are dropped.
class IntervalSet {
 public:
  IntervalSet(Interval host, std::vector<Segment> components) : host_(std::move(host)) {
    for (auto& c : components) {
      c.lo.canonicalize();
      c.hi.canonicalize();
      if (c.lo > c.hi)
        throw std::invalid_argument("component [" + to_string(c.lo) + ", " + to_string(c.hi) +
                                    "] has lo > hi");
      if (c.lo < host_.lo || c.hi > host_.hi)
        throw std::out_of_range("component [" + to_string(c.lo) + ", " + to_string(c.hi) +
                                "] leaves the host interval");
    }
    std::erase_if(components, [](const Segment& c) { return c.lo == c.hi; });
    std::sort(components.begin(), components.end(),
              [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
    for (auto& c : components) {
      if (!components_.empty() && c.lo <= components_.back().hi)
        components_.back().hi = std::max(components_.back().hi, c.hi);
      else
        components_.push_back(std::move(c));
    }
  }

  const Interval& host() const { return host_; }
  const std::vector<Segment>& components() const { return components_; }

  Rational measure() const {
    Rational total = 0;
    for (auto& c : components_) total += c.length();
    return total;
  }

  /// |S n E| for a closed segment S.
  Rational overlap(const Segment& s) const {
    Rational total = 0;
    for (auto& c : components_) {
      Rational lo = std::max(c.lo, s.lo);
      Rational hi = std::min(c.hi, s.hi);
      if (lo < hi) total += hi - lo;
    }
    return total;
  }

 private:
  Interval host_;
  std::vector<Segment> components_;
};

struct CoverResult {
  std::vector<Segment> intervals;
  Rational epsilon;
};

struct CoverVerdict {
  bool ok = true;
  std::string diagnosis;
  explicit operator bool() const { return ok; }
};

/// Each component [a, b] grows by eta = min(eps (b - a) / (1 - eps), gap / 2)
/// into its right-hand gap, or into its left-hand gap when b is the host's right
/// end. Half-gap caps keep neighbouring members interior-disjoint.
inline CoverResult cover(const IntervalSet& e, const Rational& eps) {
  if (!(sgn(eps) > 0 && eps < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  const auto& host = e.host();
  if (e.measure() >= host.length())
    throw std::invalid_argument("E fills its host interval; no member can have density < 1");
  const auto& parts = e.components();
  CoverResult result{{}, eps};
  result.intervals.reserve(parts.size());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const Segment& c = parts[k];
    Rational growth = eps * c.length() / (1 - eps);
    Rational right_gap = (k + 1 < parts.size() ? parts[k + 1].lo : host.hi) - c.hi;
    if (sgn(right_gap) > 0) {
      Rational eta = std::min(growth, Rational(right_gap / 2));
      result.intervals.push_back({c.lo, c.hi + eta});
    } else {
      Rational left_gap = c.lo - (k > 0 ? parts[k - 1].hi : host.lo);
      Rational eta = std::min(growth, Rational(left_gap / 2));
      result.intervals.push_back({c.lo - eta, c.hi});
    }
  }
  return result;
}

inline CoverResult cover(const IntervalSet& e, const Interval& host, const Rational& eps) {
  if (!host.contains(e.host()))
    throw std::out_of_range("E is not contained in the given host interval");
  return cover(IntervalSet(host, e.components()), eps);
}

/// Exact check: members inside the host with positive length, pairwise disjoint
/// interiors, E covered, and (1 - eps)|I_v| <= |I_v n E| < |I_v| for each member.
inline CoverVerdict verify_cover(const IntervalSet& e, const CoverResult& result) {
  auto fail = [](std::string why) { return CoverVerdict{false, std::move(why)}; };
  const auto& host = e.host();
  if (!(sgn(result.epsilon) > 0 && result.epsilon < 1)) return fail("epsilon outside (0, 1)");
  std::vector<Segment> members = result.intervals;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const auto& m = members[k];
    if (!(m.lo < m.hi)) return fail("member " + std::to_string(k) + " has no interior");
    if (m.lo < host.lo || m.hi > host.hi)
      return fail("member " + std::to_string(k) + " leaves the host interval");
    Rational inside = e.overlap(m);
    if ((1 - result.epsilon) * m.length() > inside)
      return fail("member " + std::to_string(k) + " has E-density below 1 - epsilon");
    if (!(inside < m.length()))
      return fail("member " + std::to_string(k) + " is filled by E");
  }
  std::sort(members.begin(), members.end(),
            [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  for (std::size_t k = 0; k + 1 < members.size(); ++k)
    if (members[k + 1].lo < members[k].hi) return fail("members overlap in their interiors");

  std::vector<Segment> blocks;
  for (auto& m : members) {
    if (!blocks.empty() && m.lo <= blocks.back().hi)
      blocks.back().hi = std::max(blocks.back().hi, m.hi);
    else
      blocks.push_back(m);
  }
  for (auto& c : e.components()) {
    bool covered = std::any_of(blocks.begin(), blocks.end(), [&](const Segment& b) {
      return b.lo <= c.lo && c.hi <= b.hi;
    });
    if (!covered)
      return fail("component [" + to_string(c.lo) + ", " + to_string(c.hi) + "] is not covered");
  }
  return {};
}

}  // namespace a1w
