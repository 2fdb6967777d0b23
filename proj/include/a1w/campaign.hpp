#pragma once

// Verification campaigns. A campaign runs independent seeded trials, each
// producing one or more report rows; trials may run on several threads and
// are merged by trial index, so the report does not depend on scheduling.

#include <a1w/a1.hpp>
#include <a1w/covering.hpp>
#include <a1w/generators.hpp>
#include <a1w/io.hpp>
#include <a1w/majorization.hpp>
#include <a1w/rational.hpp>
#include <a1w/sharp.hpp>
#include <a1w/step_weight.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace a1w {

struct CampaignConfig {
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t max_pieces = 12;
  /// Exponents as fractions of the critical exponent (thm2).
  std::vector<double> p_fracs{0.5};
  /// Upper value bound for generated weights; unset means campaign default.
  std::optional<Rational> value_cap;
  std::size_t random_intervals = 10000;
  /// Grid of A1 constants (sharpness).
  std::vector<double> c_grid{1.1, 1.5, 2.0, 4.0};
  /// Divergence sweep: A1 constant and number of decades of truncation.
  double c = 2.0;
  std::size_t eps_decades = 12;
  unsigned threads = 0;  ///< 0 = hardware concurrency
};

struct ReportRow {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::optional<double> c;
  std::optional<double> p;
  double metric = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  bool pass = false;
};

struct FailureRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  Json counterexample;
};

struct CampaignReport {
  std::string campaign;
  std::size_t trials = 0;
  std::size_t passes = 0;
  std::vector<FailureRecord> failures;
  double worst_margin = 0.0;
  double wall_time_s = 0.0;
  std::vector<ReportRow> rows;
};

inline const std::vector<std::string_view>& campaign_names() {
  static const std::vector<std::string_view> names{"thm1",         "thm2",  "sharpness",
                                                   "majorization", "cover", "divergence"};
  return names;
}

namespace detail {

struct TrialOutcome {
  std::vector<ReportRow> rows;
  bool pass = true;
  Json counterexample;
};

using TrialFn = std::function<TrialOutcome(std::size_t trial, std::uint64_t seed)>;

inline std::vector<TrialOutcome> run_trials(std::size_t trials, std::uint64_t master,
                                            unsigned threads, const TrialFn& fn) {
  std::vector<TrialOutcome> outcomes(trials);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(trials, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < trials; k = next++) {
      std::uint64_t seed = derive_seed(master, k);
      try {
        outcomes[k] = fn(k, seed);
      } catch (const std::exception& e) {
        TrialOutcome failed;
        failed.pass = false;
        failed.counterexample = {{"error", e.what()}};
        failed.rows.push_back({k, seed, {}, {}, 0.0, 0.0, -1.0, false});
        outcomes[k] = std::move(failed);
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return outcomes;
}

inline std::size_t draw_pieces(Rng& rng, std::size_t max_pieces) {
  return rng.between(1, std::max<std::size_t>(max_pieces, 1));
}

// Kinds cycle by trial so every campaign sees each generator.
inline GeneratorSpec theorem_spec(std::size_t trial, std::uint64_t seed, std::size_t max_pieces,
                                  const Rational& cap) {
  Rng rng(seed);
  GeneratorSpec spec;
  static constexpr WeightKind cycle[] = {WeightKind::uniform, WeightKind::multiplicative_walk,
                                         WeightKind::shuffled_power,
                                         WeightKind::power_discretized};
  spec.kind = cycle[trial % 4];
  spec.pieces = draw_pieces(rng, max_pieces);
  spec.value_cap = cap;
  spec.tau = 1.0 + to_double(cap - 1) * rng.unit();
  spec.seed = rng.next();
  return spec;
}

inline Json spec_json(const GeneratorSpec& spec) {
  return {{"kind", std::string(to_string(spec.kind))},
          {"pieces", spec.pieces},
          {"value_cap", to_string(spec.value_cap)},
          {"tau", spec.tau},
          {"seed", spec.seed}};
}

inline TrialOutcome thm1_trial(const CampaignConfig& cfg, std::size_t trial, std::uint64_t seed) {
  GeneratorSpec spec = theorem_spec(trial, seed, cfg.max_pieces, cfg.value_cap.value_or(10));
  StepWeight w = gen_weight(spec);
  Theorem1Report r = check_theorem1(w);
  double c = to_double(r.original_constant);
  double metric = std::max(to_double(r.rearranged_constant), to_double(r.anchored_constant));
  TrialOutcome out;
  out.pass = r.pass;
  out.rows.push_back({trial, seed, c, {}, metric, c, c - metric, r.pass});
  if (!r.pass) out.counterexample = {{"spec", spec_json(spec)}, {"weight", to_json(w)}, {"report", to_json(r)}};
  return out;
}

/// p = max(1, frac * p_crit); any p is admissible for a constant weight.
inline double exponent_for(double c, double frac) {
  if (c == 1.0) return 1.0 + frac;
  return std::max(1.0, frac * critical_exponent(c));
}

inline TrialOutcome thm2_trial(const CampaignConfig& cfg, std::size_t trial, std::uint64_t seed) {
  GeneratorSpec spec = theorem_spec(trial, seed, cfg.max_pieces, cfg.value_cap.value_or(2));
  StepWeight w = gen_weight(spec);
  double c = to_double(a1_constant(w).constant);
  auto candidates = default_candidates(w, cfg.random_intervals, derive_seed(seed, 1));
  TrialOutcome out;
  for (double frac : cfg.p_fracs) {
    double p = exponent_for(c, frac);
    ReverseHolderReport r = check_reverse_holder(w, p, candidates, c);
    out.rows.push_back({trial, seed, c, p, r.worst_ratio, 1.0, 1.0 - r.worst_ratio, r.pass});
    if (!r.pass && out.pass) {
      out.pass = false;
      out.counterexample = {{"spec", spec_json(spec)},
                            {"weight", to_json(w)},
                            {"p", p},
                            {"worst_ratio", r.worst_ratio},
                            {"worst_interval",
                             {to_string(r.worst_interval.lo), to_string(r.worst_interval.hi)}}};
    }
  }
  return out;
}

inline std::vector<std::pair<double, double>> sharpness_grid(const std::vector<double>& cs) {
  std::vector<std::pair<double, double>> grid;
  for (double c : cs) {
    double crit = critical_exponent(c);
    std::vector<double> ps{1.0};
    if (crit / 2 >= 1.0) ps.push_back(crit / 2);
    ps.push_back((1.0 + crit) / 2);
    ps.push_back(0.99 * crit);
    for (double p : ps) grid.emplace_back(c, p);
  }
  return grid;
}

inline TrialOutcome sharpness_trial(const std::vector<std::pair<double, double>>& grid,
                                    std::size_t trial, std::uint64_t seed) {
  constexpr double tolerance = 1e-10;
  auto [c, p] = grid[trial];
  double relative = sharpness_gap(c, p) / sharp_constant(c, p);
  TrialOutcome out;
  out.pass = relative <= tolerance;
  out.rows.push_back({trial, seed, c, p, relative, tolerance, tolerance - relative, out.pass});
  if (!out.pass) out.counterexample = {{"c", c}, {"p", p}, {"relative_gap", relative}};
  return out;
}

/// A random pair in one of three shapes: independent, lower = flattened upper
/// (majorized by construction), lower = upper with a few values nudged.
inline std::pair<StepWeight, StepWeight> majorization_pair(std::uint64_t seed,
                                                           std::size_t max_pieces) {
  Rng rng(seed);
  GeneratorSpec spec;
  spec.pieces = draw_pieces(rng, max_pieces);
  spec.kind = rng.below(2) ? WeightKind::uniform : WeightKind::multiplicative_walk;
  spec.seed = rng.next();
  StepWeight upper = gen_weight(spec);
  switch (rng.below(3)) {
    case 0: {
      spec.pieces = draw_pieces(rng, max_pieces);
      spec.seed = rng.next();
      return {gen_weight(spec), upper};
    }
    case 1: {
      StepWeight sorted = rearrange(upper);
      Rational t0 = fraction(rng.between(1, 63), 64);
      Rational room = std::min(t0, Rational(1 - t0));
      Rational delta = room * fraction(rng.between(1, 16), 16);
      return {two_level_flatten(sorted, {t0, delta}), upper};
    }
    default: {
      std::vector<Rational> values(upper.values().begin(), upper.values().end());
      for (auto& v : values) {
        auto roll = rng.below(4);
        if (roll == 0) v += Rational(1, 8);
        if (roll == 1 && v > Rational(1, 4)) v -= Rational(1, 8);
      }
      std::vector<Rational> breakpoints(upper.breakpoints().begin(), upper.breakpoints().end());
      return {StepWeight(std::move(breakpoints), std::move(values)), upper};
    }
  }
}

inline TrialOutcome majorization_trial(const CampaignConfig& cfg, std::size_t trial,
                                       std::uint64_t seed) {
  auto [lower, upper] = majorization_pair(seed, std::min<std::size_t>(cfg.max_pieces, 8));
  bool by_prefix = majorizes(lower, upper);
  bool by_hinge = convex_dominates(lower, upper);
  TrialOutcome out;
  out.pass = by_prefix == by_hinge;
  out.rows.push_back({trial, seed, {}, {}, by_prefix ? 1.0 : 0.0, by_hinge ? 1.0 : 0.0,
                      out.pass ? 0.0 : -1.0, out.pass});
  if (!out.pass)
    out.counterexample = {{"lower", to_json(lower)}, {"upper", to_json(upper)},
                          {"majorizes", by_prefix}, {"convex_dominates", by_hinge}};
  return out;
}

inline const std::vector<Rational>& cover_epsilons() {
  static const std::vector<Rational> eps{Rational(1, 2), Rational(1, 10), Rational(1, 100)};
  return eps;
}

/// Damages a valid cover so that verify_cover must reject it.
inline CoverResult perturb_cover(const CoverResult& good, Rng& rng) {
  CoverResult bad = good;
  std::size_t k = rng.below(bad.intervals.size());
  Segment& m = bad.intervals[k];
  switch (rng.below(3)) {
    case 0: {  // trim a quarter from both ends, uncovering part of E
      Rational quarter = m.length() / 4;
      m.lo += quarter;
      m.hi -= quarter;
      break;
    }
    case 1: {  // stretch far past the density bound
      Rational grow = m.length() * 2 / (1 - good.epsilon);
      m.hi += grow;
      break;
    }
    default:  // overlapping duplicate
      bad.intervals.push_back(m);
      break;
  }
  return bad;
}

inline TrialOutcome cover_trial(std::size_t trial, std::uint64_t seed) {
  IntervalSet e = gen_interval_set(seed);
  const Rational& eps = cover_epsilons()[trial % 3];
  CoverResult result = cover(e, eps);
  CoverVerdict verdict = verify_cover(e, result);
  Rng rng(derive_seed(seed, 7));
  CoverResult damaged = perturb_cover(result, rng);
  bool rejected = !verify_cover(e, damaged);

  double min_density = 1.0;
  for (auto& m : result.intervals)
    min_density = std::min(min_density, to_double(e.overlap(m) / m.length()));
  double bound = to_double(1 - eps);

  TrialOutcome out;
  out.pass = verdict.ok && rejected;
  out.rows.push_back({trial, seed, {}, {}, min_density, bound, min_density - bound, out.pass});
  if (!out.pass)
    out.counterexample = {{"set", to_json(e)}, {"cover", to_json(result)},
                          {"diagnosis", verdict.diagnosis}, {"perturbed_rejected", rejected}};
  return out;
}

inline TrialOutcome divergence_trial(double c, std::size_t trial, std::uint64_t seed) {
  constexpr double tolerance = 1e-8;
  const double p = critical_exponent(c);
  const double k = static_cast<double>(trial + 1);
  const double truncated = power_moment(extremal_weight(1.0, c), p, std::pow(10.0, -k));
  const double expected = std::pow(1.0 / c, p) * k * std::log(10.0);
  const double error = std::abs(truncated - expected);
  TrialOutcome out;
  out.pass = error <= tolerance;
  out.rows.push_back({trial, seed, c, p, truncated, expected, tolerance - error, out.pass});
  if (!out.pass) out.counterexample = {{"k", k}, {"moment", truncated}, {"expected", expected}};
  return out;
}

}  // namespace detail

inline CampaignReport run_campaign(std::string_view name, const CampaignConfig& cfg) {
  using namespace detail;
  const auto started = std::chrono::steady_clock::now();
  std::size_t trials = cfg.trials;
  TrialFn fn;
  std::vector<std::pair<double, double>> grid;
  if (name == "thm1") {
    fn = [&](std::size_t t, std::uint64_t s) { return thm1_trial(cfg, t, s); };
  } else if (name == "thm2") {
    if (cfg.p_fracs.empty()) throw std::invalid_argument("thm2 needs at least one p fraction");
    for (double f : cfg.p_fracs)
      if (!(f > 0.0 && f < 1.0)) throw std::invalid_argument("p fractions must lie in (0, 1)");
    fn = [&](std::size_t t, std::uint64_t s) { return thm2_trial(cfg, t, s); };
  } else if (name == "sharpness") {
    for (double c : cfg.c_grid)
      if (!(c > 1.0)) throw std::invalid_argument("sharpness grid needs c > 1");
    grid = sharpness_grid(cfg.c_grid);
    trials = grid.size();
    fn = [&](std::size_t t, std::uint64_t s) { return sharpness_trial(grid, t, s); };
  } else if (name == "majorization") {
    fn = [&](std::size_t t, std::uint64_t s) { return majorization_trial(cfg, t, s); };
  } else if (name == "cover") {
    fn = [](std::size_t t, std::uint64_t s) { return cover_trial(t, s); };
  } else if (name == "divergence") {
    if (!(cfg.c > 1.0)) throw std::invalid_argument("divergence sweep needs c > 1");
    trials = cfg.eps_decades;
    fn = [&](std::size_t t, std::uint64_t s) { return divergence_trial(cfg.c, t, s); };
  } else {
    throw std::invalid_argument("unknown campaign '" + std::string(name) + "'");
  }
  if (cfg.max_pieces == 0) throw std::invalid_argument("max_pieces must be at least 1");

  auto outcomes = run_trials(trials, cfg.seed, cfg.threads, fn);

  CampaignReport report;
  report.campaign = std::string(name);
  report.trials = trials;
  bool first = true;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    auto& o = outcomes[k];
    if (o.pass)
      ++report.passes;
    else
      report.failures.push_back({k, derive_seed(cfg.seed, k), std::move(o.counterexample)});
    for (auto& row : o.rows) {
      report.worst_margin = first ? row.margin : std::min(report.worst_margin, row.margin);
      first = false;
      report.rows.push_back(std::move(row));
    }
  }
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

namespace detail {

inline std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

inline constexpr std::string_view kCsvHeader = "campaign,trial,seed,c,p,metric,bound,margin,pass";

inline void write_csv(const CampaignReport& report, std::ostream& os) {
  using detail::format_real;
  os << kCsvHeader << '\n';
  for (auto& r : report.rows) {
    os << report.campaign << ',' << r.trial << ',' << r.seed << ','
       << (r.c ? format_real(*r.c) : "") << ',' << (r.p ? format_real(*r.p) : "") << ','
       << format_real(r.metric) << ',' << format_real(r.bound) << ',' << format_real(r.margin)
       << ',' << (r.pass ? "true" : "false") << '\n';
  }
}

inline Json to_json(const CampaignReport& report) {
  Json failures = Json::array();
  for (auto& f : report.failures)
    failures.push_back({{"trial", f.trial}, {"seed", f.seed}, {"counterexample", f.counterexample}});
  Json rows = Json::array();
  for (auto& r : report.rows) {
    rows.push_back({{"trial", r.trial},
                    {"seed", r.seed},
                    {"c", r.c ? Json(*r.c) : Json(nullptr)},
                    {"p", r.p ? Json(*r.p) : Json(nullptr)},
                    {"metric", r.metric},
                    {"bound", r.bound},
                    {"margin", r.margin},
                    {"pass", r.pass}});
  }
  return {{"campaign", report.campaign},
          {"trials", report.trials},
          {"passes", report.passes},
          {"failures", failures},
          {"worst_margin", report.worst_margin},
          {"wall_time_s", report.wall_time_s},
          {"rows", rows}};
}

enum class ReportFormat { csv, json };

inline ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw std::invalid_argument("unknown report format '" + std::string(name) + "'");
}

inline void write_report(const CampaignReport& report, ReportFormat format, std::ostream& os) {
  if (format == ReportFormat::csv)
    write_csv(report, os);
  else
    os << to_json(report).dump(2) << '\n';
}

inline void emit_report(const CampaignReport& report, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_report(report, format, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace a1w
