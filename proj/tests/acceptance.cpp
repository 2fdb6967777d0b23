// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <a1w/a1w.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace a1w;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

StepWeight random_weight(std::uint64_t seed, std::size_t max_pieces, Rational cap) {
  Rng rng(seed);
  GeneratorSpec spec;
  static constexpr WeightKind kinds[] = {WeightKind::uniform, WeightKind::multiplicative_walk,
                                         WeightKind::shuffled_power, WeightKind::power_discretized};
  spec.kind = kinds[rng.below(4)];
  spec.pieces = rng.between(1, max_pieces);
  spec.value_cap = std::move(cap);
  spec.tau = 1.0 + (to_double(spec.value_cap) - 1.0) * rng.unit();
  spec.seed = rng.next();
  return gen_weight(spec);
}

// 1. Random subintervals never beat the computed A1 constant.
Outcome a1_soundness() {
  auto start = Clock::now();
  std::size_t violations = 0;
  std::size_t fallbacks = 0;
  constexpr std::uint64_t grid = std::uint64_t{1} << 30;
  for (std::uint64_t n = 0; n < 200; ++n) {
    StepWeight w = random_weight(derive_seed(101, n), 12, 10);
    A1BoundCheck check(w, a1_constant(w).constant);
    Rng rng(derive_seed(102, n));
    for (int k = 0; k < 100000; ++k) {
      std::uint64_t a = rng.between(0, grid);
      std::uint64_t b = rng.between(0, grid);
      if (a == b) {
        --k;
        continue;
      }
      if (a > b) std::swap(a, b);
      violations += !check.holds(Interval(fraction(a, grid), fraction(b, grid)));
    }
    fallbacks += check.fallbacks();
  }
  double t = seconds_since(start);
  return {violations == 0 && t <= 60.0,
          fmt("%zu violations in 2e7 intervals, %zu exact fallbacks, %.1f s", violations,
              fallbacks, t)};
}

// 2. Rearranged and anchored constants never exceed the original one.
Outcome rearrangement_bound() {
  auto start = Clock::now();
  std::size_t failures = 0;
  for (std::uint64_t n = 0; n < 1000; ++n)
    failures += !check_theorem1(random_weight(derive_seed(201, n), 12, 10)).pass;
  for (std::uint64_t n = 0; n < 1000; ++n) {
    Rng rng(derive_seed(202, n));
    GeneratorSpec spec;
    spec.kind = WeightKind::shuffled_power;
    spec.pieces = rng.between(1, 12);
    spec.tau = 1.0 + 9.0 * rng.unit();
    spec.seed = rng.next();
    failures += !check_theorem1(gen_weight(spec)).pass;
  }
  double t = seconds_since(start);
  return {failures == 0 && t <= 30.0, fmt("%zu failures in 2000 weights, %.1f s", failures, t)};
}

// 3. Sharp reverse Hoelder bound on aligned and random subintervals.
Outcome reverse_holder() {
  auto start = Clock::now();
  std::size_t failures = 0;
  double worst = 0.0;
  for (std::uint64_t n = 0; n < 500; ++n) {
    StepWeight w = random_weight(derive_seed(301, n), 12, 2);
    double c = to_double(a1_constant(w).constant);
    auto candidates = default_candidates(w, 10000, derive_seed(302, n));
    std::vector<double> ps{1.0};
    for (double frac : {0.5, 0.9, 0.99}) ps.push_back(detail::exponent_for(c, frac));
    for (double p : ps) {
      auto r = check_reverse_holder(w, p, candidates, c);
      worst = std::max(worst, r.worst_ratio);
      failures += !r.pass;
    }
  }
  double t = seconds_since(start);
  return {failures == 0 && t <= 120.0,
          fmt("%zu failures, worst LHS/RHS %.12f, %.1f s", failures, worst, t)};
}

// 4. The extremal weight attains the sharp constant; B = 1 / H_p(c).
Outcome sharpness() {
  double worst_gap = 0.0;
  double worst_identity = 0.0;
  std::size_t points = 0;
  for (double c : {1.1, 1.5, 2.0, 4.0}) {
    double crit = critical_exponent(c);
    std::vector<double> ps{1.0};
    if (crit / 2 >= 1.0) ps.push_back(crit / 2);
    ps.push_back((1.0 + crit) / 2);
    ps.push_back(0.99 * crit);
    for (double p : ps) {
      ++points;
      double b = sharp_constant(c, p);
      worst_gap = std::max(worst_gap, sharpness_gap(c, p) / b);
      double inverse = p == 1.0 ? 1.0 : 1.0 / h_p(p, c);
      // Absolute, which is the stricter reading since B >= 1.
      worst_identity = std::max(worst_identity, std::abs(b - inverse));
    }
  }
  return {worst_gap <= 1e-10 && worst_identity <= 1e-12,
          fmt("%zu grid points, worst relative gap %.3g, worst |B - 1/H_p(c)| %.3g", points,
              worst_gap, worst_identity)};
}

// 5. Truncated critical moment grows like (1/c)^p k ln 10.
Outcome blow_up() {
  const double c = 2.0;
  const double p = critical_exponent(c);
  double worst = 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 1; k <= 12; ++k) {
    double value = power_moment(extremal_weight(1.0, c), p, std::pow(10.0, -k));
    worst = std::max(worst, std::abs(value - 0.25 * k * std::log(10.0)));
    sx += k;
    sy += value;
    sxx += double(k) * k;
    sxy += k * value;
  }
  double slope = (12 * sxy - sx * sy) / (12 * sxx - sx * sx);
  double slope_error = std::abs(slope - 0.25 * std::log(10.0));
  return {worst <= 1e-8 && slope_error <= 1e-6,
          fmt("worst pointwise error %.3g, slope error %.3g", worst, slope_error)};
}

// 6. omega_p inverts H_p.
Outcome omega_round_trip() {
  double worst = 0.0;
  double worst_analytic = 0.0;
  for (double p : {1.5, 2.0, 3.0, 10.0})
    for (int k = 0; k <= 10; ++k) {
      double y = k / 10.0;
      worst = std::max(worst, std::abs(h_p(p, omega_p(p, y)) - y));
    }
  for (int k = 0; k <= 10; ++k) {
    double y = k / 10.0;
    worst_analytic = std::max(worst_analytic, std::abs(omega_p(2.0, y) - (1.0 + std::sqrt(1.0 - y))));
  }
  return {worst <= 1e-12 && worst_analytic <= 1e-12,
          fmt("worst round trip %.3g, worst analytic omega_2 error %.3g", worst, worst_analytic)};
}

// 7. Prefix-integral majorization agrees with the convex-order oracle.
Outcome majorization_equivalence() {
  auto start = Clock::now();
  std::size_t disagreements = 0;
  std::size_t positives = 0;
  for (std::uint64_t n = 0; n < 100000; ++n) {
    auto [lower, upper] = detail::majorization_pair(derive_seed(701, n), 8);
    bool by_prefix = majorizes(lower, upper);
    positives += by_prefix;
    disagreements += by_prefix != convex_dominates(lower, upper);
  }
  double t = seconds_since(start);
  return {disagreements == 0 && t <= 60.0,
          fmt("%zu disagreements in 1e5 pairs (%zu majorized), %.1f s", disagreements, positives,
              t)};
}

// 8. Two-level flattening: mass kept, still non-increasing, majorized by the
// input, and the square moment drops strictly when a window half varies.
Outcome flatten() {
  std::size_t failures = 0;
  std::size_t strict = 0;
  for (std::uint64_t n = 0; n < 10000; ++n) {
    Rng rng(derive_seed(801, n));
    StepWeight w = rearrange(random_weight(rng.next(), 12, 10));
    Rational t0 = fraction(rng.between(1, 1023), 1024);
    Rational room = std::min(t0, Rational(1 - t0));
    Rational delta = room * fraction(rng.between(1, 64), 64);
    StepWeight g = two_level_flatten(w, {t0, delta});
    Interval left(t0 - delta, t0);
    Interval right(t0, t0 + delta);
    bool ok = integrate(g, g.domain()) == integrate(w, w.domain());
    ok = ok && integrate(g, left) == integrate(w, left) && integrate(g, right) == integrate(w, right);
    ok = ok && average(w, right) <= average(w, left);  // d2 <= d1
    ok = ok && g.is_nonincreasing() && majorizes(g, w);
    auto varies = [&](const Interval& half) {
      auto [first, last] = w.pieces_meeting(half);
      return w.range_min(first, last) != w.values()[first] ||
             w.values()[last] != w.values()[first];
    };
    bool varying = varies(left) || varies(right);
    strict += varying;
    Rational before = integer_moment(w, 2);
    Rational after = integer_moment(g, 2);
    ok = ok && (varying ? after < before : after == before);
    failures += !ok;
  }
  return {failures == 0, fmt("%zu failures in 1e4 windows (%zu with a varying half)", failures, strict)};
}

// 9. Covers verify exactly; damaged covers are rejected.
Outcome covering() {
  std::size_t failures = 0;
  std::size_t accepted_damage = 0;
  for (std::uint64_t n = 0; n < 10000; ++n) {
    IntervalSet e = gen_interval_set(derive_seed(901, n));
    for (auto& eps : detail::cover_epsilons()) {
      CoverResult result = cover(e, eps);
      failures += !verify_cover(e, result).ok;
      Rng rng(derive_seed(902, n));
      accepted_damage += verify_cover(e, detail::perturb_cover(result, rng)).ok;
    }
  }
  return {failures == 0 && accepted_damage == 0,
          fmt("%zu rejected covers and %zu accepted perturbations in 3e4 cases", failures,
              accepted_damage)};
}

// 10. Same master seed, same bytes.
Outcome determinism() {
  std::size_t differing = 0;
  for (auto name : campaign_names()) {
    CampaignConfig cfg;
    cfg.trials = 50;
    cfg.seed = 20240601;
    cfg.random_intervals = 1000;
    std::ostringstream first;
    std::ostringstream second;
    write_csv(run_campaign(name, cfg), first);
    cfg.threads = 3;
    write_csv(run_campaign(name, cfg), second);
    differing += first.str() != second.str();
  }
  return {differing == 0,
          fmt("%zu of %zu campaigns differ between runs", differing, campaign_names().size())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"a1-soundness", a1_soundness},
      {"rearrangement-bound", rearrangement_bound},
      {"reverse-holder", reverse_holder},
      {"sharpness", sharpness},
      {"critical-blow-up", blow_up},
      {"omega-round-trip", omega_round_trip},
      {"majorization-oracle", majorization_equivalence},
      {"flatten", flatten},
      {"covering", covering},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %-20s %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
