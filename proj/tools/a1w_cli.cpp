// Command-line front end for the A1 weight toolkit.
//
//   a1w a1 --weight FILE
//   a1w rearrange --weight FILE
//   a1w sharp --c X --p Y
//   a1w omega --p X --y Y
//   a1w cover --set FILE --eps E
//   a1w verify <campaign> --trials N --seed S [--pieces K] [--p-frac F ...]
//   a1w sweep divergence --c X --eps-decades K
//
// Every subcommand takes --out PATH and --format csv|json. Without --out the
// result goes to stdout. A1W_SEED supplies the default master seed.

#include <a1w/a1w.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct OutputOptions {
  std::string path;
  std::string format;  // empty: csv for campaigns, json otherwise
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--out", out.path, "Write the result to PATH instead of stdout");
  cmd->add_option("--format", out.format, "Output format (csv|json)")
      ->check(CLI::IsMember({"csv", "json"}));
}

template <typename Writer>
void deliver(const OutputOptions& out, Writer&& write) {
  if (out.path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream file(out.path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open " + out.path + " for writing");
  write(file);
  if (!file.flush()) throw std::runtime_error("failed writing " + out.path);
}

// Flat key/value results: JSON object, or a two-line CSV (header + values).
void deliver_record(const OutputOptions& out, const a1w::Json& record) {
  deliver(out, [&](std::ostream& os) {
    if (out.format == "json") {
      os << record.dump(2) << '\n';
      return;
    }
    std::string header;
    std::string row;
    for (auto& [key, value] : record.items()) {
      if (!header.empty()) {
        header += ',';
        row += ',';
      }
      header += key;
      if (value.is_string())
        row += value.get<std::string>();
      else if (value.is_array()) {
        std::string joined;
        for (auto& item : value) {
          if (!joined.empty()) joined += ' ';
          joined += item.is_string() ? item.get<std::string>() : item.dump();
        }
        row += joined;
      } else
        row += value.dump();
    }
    os << header << '\n' << row << '\n';
  });
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("A1W_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring malformed A1W_SEED='" << env << "'\n";
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact A1 constants, sharp reverse-Hoelder bounds, and verification campaigns"};
  app.require_subcommand(1);

  OutputOptions out;

  std::string weight_path;
  auto* a1_cmd = app.add_subcommand("a1", "A1 constant of a step weight, with witness");
  a1_cmd->add_option("--weight", weight_path, "Weight JSON file")->required();
  add_output_options(a1_cmd, out);

  auto* rearrange_cmd = app.add_subcommand("rearrange", "Non-increasing rearrangement of a weight");
  rearrange_cmd->add_option("--weight", weight_path, "Weight JSON file")->required();
  add_output_options(rearrange_cmd, out);

  double c = 2.0;
  double p = 1.5;
  auto* sharp_cmd = app.add_subcommand("sharp", "Sharp reverse-Hoelder constant B(c, p)");
  sharp_cmd->add_option("--c", c, "A1 constant (>= 1)")->required();
  sharp_cmd->add_option("--p", p, "Exponent in [1, c/(c-1))")->required();
  add_output_options(sharp_cmd, out);

  double y = 0.5;
  auto* omega_cmd = app.add_subcommand("omega", "Inverse of H_p at y");
  omega_cmd->add_option("--p", p, "Exponent (> 1)")->required();
  omega_cmd->add_option("--y", y, "Value in [0, 1]")->required();
  add_output_options(omega_cmd, out);

  std::string set_path;
  std::string eps_text = "1/10";
  auto* cover_cmd = app.add_subcommand("cover", "Density cover of a finite union of intervals");
  cover_cmd->add_option("--set", set_path, "Interval-set JSON file")->required();
  cover_cmd->add_option("--eps", eps_text, "Epsilon in (0, 1), decimal or p/q")
      ->capture_default_str();
  add_output_options(cover_cmd, out);

  a1w::CampaignConfig cfg;
  cfg.seed = default_seed();
  std::string campaign;
  std::string cap_text;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification campaign");
  verify_cmd->add_option("campaign", campaign, "Campaign name")
      ->required()
      ->check(CLI::IsMember({"thm1", "thm2", "sharpness", "majorization", "cover", "divergence"}));
  verify_cmd->add_option("--trials", cfg.trials, "Number of trials")->capture_default_str();
  verify_cmd->add_option("--seed", cfg.seed, "Master seed (default: $A1W_SEED or 1)");
  verify_cmd->add_option("--pieces", cfg.max_pieces, "Maximum pieces per weight")
      ->capture_default_str();
  verify_cmd->add_option("--p-frac", cfg.p_fracs, "Exponents as fractions of c/(c-1)")
      ->capture_default_str();
  verify_cmd->add_option("--value-cap", cap_text, "Largest generated value");
  verify_cmd->add_option("--intervals", cfg.random_intervals, "Random intervals per weight (thm2)")
      ->capture_default_str();
  verify_cmd->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  verify_cmd->add_option("--c", cfg.c, "A1 constant (divergence)");
  verify_cmd->add_option("--eps-decades", cfg.eps_decades, "Truncation decades (divergence)");
  add_output_options(verify_cmd, out);

  std::string sweep_name;
  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweeps");
  sweep_cmd->add_option("kind", sweep_name, "Sweep kind")
      ->required()
      ->check(CLI::IsMember({"divergence"}));
  sweep_cmd->add_option("--c", cfg.c, "A1 constant (> 1)")->capture_default_str();
  sweep_cmd->add_option("--eps-decades", cfg.eps_decades, "Truncation at 10^-1 .. 10^-K")
      ->capture_default_str();
  add_output_options(sweep_cmd, out);

  CLI11_PARSE(app, argc, argv);
  if (out.format.empty()) out.format = (*verify_cmd || *sweep_cmd) ? "csv" : "json";

  try {
    if (*a1_cmd) {
      auto report = a1w::a1_constant(a1w::load_weight(weight_path));
      auto record = a1w::to_json(report);
      deliver_record(out, record);
    } else if (*rearrange_cmd) {
      auto star = a1w::rearrange(a1w::load_weight(weight_path));
      if (out.format == "json") {
        deliver(out, [&](std::ostream& os) { os << a1w::to_json(star).dump(2) << '\n'; });
      } else {
        deliver(out, [&](std::ostream& os) {
          os << "lo,hi,value\n";
          for (std::size_t k = 0; k < star.pieces(); ++k)
            os << a1w::to_string(star.breakpoints()[k]) << ','
               << a1w::to_string(star.breakpoints()[k + 1]) << ','
               << a1w::to_string(star.values()[k]) << '\n';
        });
      }
    } else if (*sharp_cmd) {
      auto bound = a1w::sharp_bound(c, p);
      deliver_record(out, {{"c", bound.c},
                           {"p", bound.p},
                           {"p_crit", bound.p_crit},
                           {"constant", bound.constant}});
    } else if (*omega_cmd) {
      double z = a1w::omega_p(p, y);
      deliver_record(out, {{"p", p}, {"y", y}, {"omega", z}, {"residual", a1w::h_p(p, z) - y}});
    } else if (*cover_cmd) {
      auto set = a1w::load_interval_set(set_path);
      auto result = a1w::cover(set, a1w::parse_rational(eps_text));
      auto verdict = a1w::verify_cover(set, result);
      auto record = a1w::to_json(result);
      record["verified"] = verdict.ok;
      deliver_record(out, record);
    } else if (*verify_cmd || *sweep_cmd) {
      if (!cap_text.empty()) cfg.value_cap = a1w::parse_rational(cap_text);
      const std::string name = *verify_cmd ? campaign : sweep_name;
      auto report = a1w::run_campaign(name, cfg);
      auto format = a1w::parse_report_format(out.format);
      deliver(out, [&](std::ostream& os) { a1w::write_report(report, format, os); });
      std::cerr << report.campaign << ": " << report.passes << "/" << report.trials
                << " trials passed\n";
      return report.failures.empty() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
