#pragma once

// Seeded random step weights and interval sets. All draws go through
// std::mt19937_64 with hand-written reductions, so a seed yields the same
// object on every platform.

#include <a1w/covering.hpp>
#include <a1w/rational.hpp>
#include <a1w/step_weight.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace a1w {

enum class WeightKind { uniform, power_discretized, shuffled_power, multiplicative_walk };

inline std::string_view to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::uniform: return "uniform";
    case WeightKind::power_discretized: return "power-discretized";
    case WeightKind::shuffled_power: return "shuffled-power";
    case WeightKind::multiplicative_walk: return "multiplicative-walk";
  }
  return "?";
}

inline WeightKind parse_weight_kind(std::string_view name) {
  for (auto kind : {WeightKind::uniform, WeightKind::power_discretized, WeightKind::shuffled_power,
                    WeightKind::multiplicative_walk})
    if (to_string(kind) == name) return kind;
  throw std::invalid_argument("unknown weight kind '" + std::string(name) + "'");
}

struct GeneratorSpec {
  WeightKind kind = WeightKind::uniform;
  std::size_t pieces = 4;
  Rational value_cap = 10;
  double tau = 2.0;
  std::uint64_t seed = 0;
};

/// splitmix64 finalizer over master + index * golden ratio.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t k = items.size(); k > 1; --k) std::swap(items[k - 1], items[below(k)]);
  }

 private:
  std::mt19937_64 engine_;
};

namespace detail {

// Breakpoints on [0, 1] from integer piece lengths in [1, 16].
inline std::vector<Rational> random_breakpoints(Rng& rng, std::size_t pieces) {
  std::vector<unsigned long> lengths(pieces);
  unsigned long total = 0;
  for (auto& len : lengths) total += len = rng.between(1, 16);
  std::vector<Rational> out{Rational(0)};
  unsigned long running = 0;
  for (auto len : lengths) {
    running += len;
    out.push_back(fraction(running, total));
  }
  return out;
}

// Value 1 + (cap - 1) * u / 1000 with u uniform in 0..1000.
inline Rational random_level(Rng& rng, const Rational& cap) {
  return 1 + (cap - 1) * fraction(rng.between(0, 1000), 1000);
}

inline StepWeight permute_pieces(const StepWeight& w, Rng& rng) {
  std::vector<std::size_t> order(w.pieces());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  rng.shuffle(order);
  std::vector<Rational> breakpoints{w.start()};
  std::vector<Rational> values;
  for (auto k : order) {
    breakpoints.push_back(breakpoints.back() + w.piece_length(k));
    values.push_back(w.values()[k]);
  }
  return StepWeight(std::move(breakpoints), std::move(values));
}

}  // namespace detail

inline StepWeight gen_weight(const GeneratorSpec& spec) {
  if (spec.pieces == 0) throw std::invalid_argument("generator needs at least one piece");
  if (!(spec.value_cap > 1)) throw std::invalid_argument("generator value cap must exceed 1");
  if (!(spec.tau >= 1.0)) throw std::invalid_argument("generator tau must be at least 1");
  Rng rng(spec.seed);
  switch (spec.kind) {
    case WeightKind::uniform: {
      auto breakpoints = detail::random_breakpoints(rng, spec.pieces);
      std::vector<Rational> values;
      for (std::size_t k = 0; k < spec.pieces; ++k)
        values.push_back(detail::random_level(rng, spec.value_cap));
      return StepWeight(std::move(breakpoints), std::move(values));
    }
    case WeightKind::power_discretized:
      return discretize_power(PowerWeight(1.0, spec.tau), spec.pieces, CellScheme::uniform);
    case WeightKind::shuffled_power:
      return detail::permute_pieces(
          discretize_power(PowerWeight(1.0, spec.tau), spec.pieces, CellScheme::uniform), rng);
    case WeightKind::multiplicative_walk: {
      static const Rational steps[] = {Rational(1, 2), Rational(2, 3), Rational(1),
                                       Rational(3, 2), Rational(2)};
      auto breakpoints = detail::random_breakpoints(rng, spec.pieces);
      std::vector<Rational> values{detail::random_level(rng, spec.value_cap)};
      while (values.size() < spec.pieces) {
        Rational next = values.back() * steps[rng.below(5)];
        if (next > spec.value_cap) next = spec.value_cap;
        if (next < 1) next = 1;
        values.push_back(std::move(next));
      }
      return StepWeight(std::move(breakpoints), std::move(values));
    }
  }
  throw std::invalid_argument("unknown weight kind");
}

/// Union of 1..max_components disjoint closed intervals inside (0, 1), endpoints
/// on a 2^-16 grid.
inline IntervalSet gen_interval_set(std::uint64_t seed, std::size_t max_components = 10) {
  Rng rng(seed);
  const std::size_t count = rng.between(1, max_components);
  constexpr std::uint64_t grid = 1 << 16;
  std::vector<std::uint64_t> points;
  while (points.size() < 2 * count) {
    std::uint64_t x = rng.between(0, grid);
    bool fresh = true;
    for (auto p : points) fresh = fresh && p != x;
    if (fresh) points.push_back(x);
    // A single component equal to the host cannot be covered.
    if (count == 1 && points.size() == 2 && std::min(points[0], points[1]) == 0 &&
        std::max(points[0], points[1]) == grid)
      points.pop_back();
  }
  std::sort(points.begin(), points.end());
  std::vector<Segment> components;
  for (std::size_t k = 0; k < count; ++k) {
    components.push_back({fraction(points[2 * k], grid), fraction(points[2 * k + 1], grid)});
  }
  return IntervalSet(Interval(0, 1), std::move(components));
}

}  // namespace a1w
