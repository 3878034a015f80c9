// planckian - command-line front-end for the thermal mode-energy
// decomposition library: spectral tables, seeded sampling, dyadic
// decomposition demos and the full verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "planckian/planckian.hpp"

namespace {

using namespace planckian;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;

struct GlobalOptions {
  std::string constants = "modern";

  PhysicalConstants physical() const {
    return PhysicalConstants::select(constants == "paper"
                                         ? ConstantsSet::Paper
                                         : ConstantsSet::Modern);
  }
  ConstantsSet set() const {
    return constants == "paper" ? ConstantsSet::Paper : ConstantsSet::Modern;
  }
};

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  return out;
}

// ---------------------------------------------------------------- spectrum

struct SpectrumOptions {
  double temperature = 0.0;
  double nu_min = 0.0;
  double nu_max = 0.0;
  int points = 0;
  std::string output;
  std::string format = "csv";
};

int run_spectrum(const SpectrumOptions& opt, const GlobalOptions& global) {
  if (!(opt.nu_min > 0.0) || !(opt.nu_min < opt.nu_max)) {
    std::cerr << "spectrum: need 0 < nu-min < nu-max\n";
    return kExitUsage;
  }
  const PhysicalConstants pc = global.physical();
  const double step = (opt.nu_max - opt.nu_min) / (opt.points - 1);

  std::vector<std::array<double, 5>> rows;
  rows.reserve(opt.points);
  for (int i = 0; i < opt.points; ++i) {
    const double nu = opt.nu_min + step * i;
    rows.push_back(
        {nu,
         spectra::spectral_density(spectra::SpectralLaw::Planck, nu,
                                   opt.temperature, pc),
         spectra::spectral_density(spectra::SpectralLaw::RayleighJeans, nu,
                                   opt.temperature, pc),
         spectra::spectral_density(spectra::SpectralLaw::Wien, nu,
                                   opt.temperature, pc),
         spectra::spectral_density(spectra::SpectralLaw::Schweikert, nu,
                                   opt.temperature, pc)});
  }

  const auto write_csv = [&](std::ostream& out) {
    out << "# planckian spectrum t_kelvin=" << format_full(opt.temperature)
        << " constants=" << global.constants << "\n";
    out << "nu_hz,u_planck,u_rj,u_wien,u_schweikert\n";
    for (const auto& r : rows) {
      out << format_full(r[0]) << ',' << format_full(r[1]) << ','
          << format_full(r[2]) << ',' << format_full(r[3]) << ','
          << format_full(r[4]) << "\n";
    }
  };
  const auto write_json = [&](std::ostream& out) {
    nlohmann::json array = nlohmann::json::array();
    for (const auto& r : rows) {
      array.push_back({{"nu_hz", r[0]},
                       {"u_planck", r[1]},
                       {"u_rj", r[2]},
                       {"u_wien", r[3]},
                       {"u_schweikert", r[4]}});
    }
    nlohmann::json doc{{"schema_version", 1},
                       {"t_kelvin", opt.temperature},
                       {"constants", global.constants},
                       {"rows", std::move(array)}};
    out << doc.dump(2) << "\n";
  };

  if (opt.output.empty()) {
    if (opt.format == "json") {
      write_json(std::cout);
    } else {
      write_csv(std::cout);
    }
  } else {
    auto out = open_output(opt.output);
    if (opt.format == "json") {
      write_json(out);
    } else {
      write_csv(out);
    }
    std::cout << "wrote " << rows.size() << " rows to " << opt.output << "\n";
  }
  std::cout << "peak (planck, grid): nu = "
            << format_short(spectra::wien_peak(opt.temperature, pc))
            << " Hz (displacement law)\n";
  return kExitOk;
}

// ------------------------------------------------------------------ sample

struct SampleOptions {
  std::string family = "planck";
  int component = 0;   // binary index s
  int order = 1;       // multiplet order m
  std::optional<double> beta;
  std::optional<double> nu;
  std::optional<double> temperature;
  std::uint64_t count = 1000;
  std::uint64_t seed = 42;
  std::uint64_t substream = 0;
  int s_max = -1;
  int m_max = -1;
  std::string output;
};

ModeParams mode_from_options(const std::optional<double>& beta,
                             const std::optional<double>& nu,
                             const std::optional<double>& temperature,
                             const GlobalOptions& global) {
  if (beta) return ModeParams::from_beta(*beta);
  if (nu && temperature) {
    return ModeParams::from_physical(*nu, *temperature, global.physical());
  }
  throw std::runtime_error("need --beta or both --nu and --t");
}

int run_sample(const SampleOptions& opt, const GlobalOptions& global) {
  ModeParams p = mode_from_options(opt.beta, opt.nu, opt.temperature, global);
  const RandomStream rs{opt.seed, opt.substream};

  sampling::SampleBatch batch = [&] {
    if (opt.family == "gauss") {
      return sampling::sample_family(VariableFamily::gauss(), p, opt.count, rs);
    }
    if (opt.family == "dark") {
      return sampling::sample_family(VariableFamily::dark(), p, opt.count, rs);
    }
    if (opt.family == "planck") {
      return sampling::sample_family(VariableFamily::planck(), p, opt.count,
                                     rs);
    }
    if (opt.family == "binary") {
      return sampling::sample_family(VariableFamily::binary(opt.component), p,
                                     opt.count, rs);
    }
    if (opt.family == "multiplet") {
      return sampling::sample_family(VariableFamily::multiplet(opt.order), p,
                                     opt.count, rs);
    }
    if (opt.family == "binary-sum") {
      const int s_max = opt.s_max >= 0
                            ? opt.s_max
                            : sampling::default_binary_truncation(p);
      return sampling::sample_binary_sum(p, opt.count, rs, s_max);
    }
    if (opt.family == "multiplet-sum") {
      const int m_max = opt.m_max >= 1
                            ? opt.m_max
                            : sampling::default_multiplet_truncation(p);
      return sampling::sample_multiplet_sum(p, opt.count, rs, m_max);
    }
    throw std::runtime_error("unknown family: " + opt.family);
  }();

  if (batch.truncation_warning) {
    std::cerr << "warning: truncation leaves tail mass above 1e-12\n";
  }

  double mean = 0.0;
  for (double v : batch.values) mean += v;
  mean /= static_cast<double>(batch.values.size());
  double var = 0.0;
  for (double v : batch.values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(batch.values.size());

  const VariableFamily reference =
      batch.kind == sampling::BatchKind::Single ? batch.family
                                                : VariableFamily::planck();
  const MomentSummary exact = distributions::moments(reference, p);
  const double se = std::sqrt(exact.variance /
                              static_cast<double>(batch.values.size()));

  if (!opt.output.empty()) {
    auto out = open_output(opt.output);
    out << "# planckian sample family=" << opt.family
        << " beta=" << format_full(p.beta()) << " seed=" << opt.seed
        << " substream=" << opt.substream << " count=" << batch.values.size()
        << "\n";
    out << "value\n";
    for (double v : batch.values) out << format_full(v) << "\n";
  }

  std::cout << "family " << opt.family << ", beta = " << format_short(p.beta())
            << ", N = " << batch.values.size() << ", seed = " << opt.seed
            << "\n";
  std::cout << "empirical mean " << format_full(mean) << " (exact "
            << format_full(exact.mean) << ", 5 sigma band +-"
            << format_short(5.0 * se) << ")\n";
  std::cout << "empirical variance " << format_full(var) << " (exact "
            << format_full(exact.variance) << ")\n";
  return kExitOk;
}

// --------------------------------------------------------------- decompose

struct DecomposeOptions {
  double beta = 1.0;
  std::uint64_t samples = 10;
  std::uint64_t seed = 42;
  int s_max = 40;
  std::string output;
};

std::string bit_pattern(std::uint64_t word) {
  if (word == 0) return "{}";
  std::string out = "{";
  bool first = true;
  for (int s = 0; s < 64; ++s) {
    if (word >> s & 1u) {
      if (!first) out += ",";
      out += std::to_string(s);
      first = false;
    }
  }
  return out + "}";
}

int run_decompose(const DecomposeOptions& opt, const GlobalOptions&) {
  const ModeParams p = ModeParams::from_beta(opt.beta);
  const RandomStream rs{opt.seed, 0};
  const auto batch = sampling::sample_coupled(p, opt.samples, rs);

  std::printf("%14s %6s %12s  bits\n", "eta", "xi", "zeta");
  for (std::size_t i = 0; i < batch.values.size(); ++i) {
    std::printf("%14.8f %6llu %12.8f  %s\n", batch.values[i],
                static_cast<unsigned long long>(batch.integer_parts[i]),
                batch.fractions[i], bit_pattern(batch.bit_words[i]).c_str());
  }

  std::printf("\nbit-occupation frequencies (N = %zu, seed = %llu):\n",
              batch.values.size(),
              static_cast<unsigned long long>(opt.seed));
  std::printf("%4s %12s %12s %10s\n", "s", "empirical", "exact", "z");
  const double n = static_cast<double>(batch.values.size());
  for (int s = 0; s <= opt.s_max; ++s) {
    const double exact = distributions::binary_mean_occupation(s, p);
    if (exact < 1e-6) break;
    double hits = 0.0;
    for (std::uint64_t w : batch.bit_words) {
      hits += static_cast<double>(w >> s & 1u);
    }
    const double phat = hits / n;
    const double sigma = std::sqrt(exact * (1.0 - exact) / n);
    std::printf("%4d %12.6f %12.6f %10.3f\n", s, phat, exact,
                (phat - exact) / sigma);
  }

  if (!opt.output.empty()) {
    auto out = open_output(opt.output);
    out << "# planckian decompose beta=" << format_full(opt.beta)
        << " seed=" << opt.seed << " count=" << batch.values.size() << "\n";
    out << "eta,xi,zeta,bits\n";
    for (std::size_t i = 0; i < batch.values.size(); ++i) {
      out << format_full(batch.values[i]) << ',' << batch.integer_parts[i]
          << ',' << format_full(batch.fractions[i]) << ','
          << bit_pattern(batch.bit_words[i]) << "\n";
    }
  }
  return kExitOk;
}

// ------------------------------------------------------------------ verify

struct VerifyOptions {
  std::vector<double> betas;
  std::uint64_t seed = 42;
  std::uint64_t mc_count = 1'000'000;
  std::optional<double> tolerance;  // override for exact-identity rows
  std::string report = "verify_report.json";
  bool skip_mc = false;
};

int run_verify(const VerifyOptions& opt, const GlobalOptions& global) {
  verify::VerifyConfig cfg;
  if (!opt.betas.empty()) {
    cfg.betas = opt.betas;
    cfg.entropy_betas = opt.betas;
  }
  cfg.seed = opt.seed;
  cfg.mc_count = opt.mc_count;
  cfg.constants = global.set();
  cfg.run_monte_carlo = !opt.skip_mc;
  if (opt.tolerance) cfg.identity_tolerance = *opt.tolerance;

  const auto report = verify::run_verification(cfg);

  std::printf("%-22s %-32s %-10s %13s %13s  %s\n", "group", "identity",
              "params", "residual", "tolerance", "status");
  for (const auto& r : report.records) {
    std::printf("%-22s %-32s %-10s %13.4e %13s  %s\n", r.group.c_str(),
                r.identity.c_str(), r.params.c_str(), r.residual,
                std::isnan(r.tolerance) ? "-"
                                        : format_short(r.tolerance).c_str(),
                std::isnan(r.tolerance) ? "info"
                                        : (r.pass ? "pass" : "FAIL"));
  }

  auto out = open_output(opt.report);
  out << report.to_json().dump(2) << "\n";
  std::cout << "\nreport written to " << opt.report << "\n";
  const bool ok = report.overall_pass();
  std::cout << (ok ? "overall: pass" : "overall: FAIL") << "\n";
  return ok ? kExitOk : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thermal mode-energy decomposition toolkit"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--constants", global.constants,
                 "physical constants set: paper or modern")
      ->check(CLI::IsMember({"paper", "modern"}))
      ->capture_default_str();

  SpectrumOptions spectrum;
  auto* cmd_spectrum =
      app.add_subcommand("spectrum", "tabulate the spectral laws over a "
                                     "frequency range");
  cmd_spectrum->add_option("--t", spectrum.temperature, "temperature [K]")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_spectrum->add_option("--nu-min", spectrum.nu_min, "start frequency [Hz]")
      ->required();
  cmd_spectrum->add_option("--nu-max", spectrum.nu_max, "end frequency [Hz]")
      ->required();
  cmd_spectrum->add_option("--points", spectrum.points, "grid points")
      ->required()
      ->check(CLI::Range(2, 100000000));
  cmd_spectrum->add_option("--output", spectrum.output, "output file path");
  cmd_spectrum->add_option("--format", spectrum.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  SampleOptions sample;
  auto* cmd_sample = app.add_subcommand(
      "sample", "draw a seeded Monte Carlo batch from one family");
  cmd_sample->add_option("--family", sample.family,
                         "gauss|dark|planck|binary|multiplet|binary-sum|"
                         "multiplet-sum")
      ->capture_default_str();
  cmd_sample->add_option("--s", sample.component, "binary component index");
  cmd_sample->add_option("--m", sample.order, "multiplet order");
  cmd_sample->add_option("--beta", sample.beta, "dimensionless h nu / k T");
  cmd_sample->add_option("--nu", sample.nu, "frequency [Hz]");
  cmd_sample->add_option("--t", sample.temperature, "temperature [K]");
  cmd_sample->add_option("--count", sample.count, "number of draws")
      ->check(CLI::PositiveNumber);
  cmd_sample->add_option("--seed", sample.seed, "random seed")
      ->capture_default_str();
  cmd_sample->add_option("--substream", sample.substream, "substream index");
  cmd_sample->add_option("--s-max", sample.s_max,
                         "binary-sum truncation (default: auto)");
  cmd_sample->add_option("--m-max", sample.m_max,
                         "multiplet-sum truncation (default: auto)");
  cmd_sample->add_option("--output", sample.output, "CSV output path");

  DecomposeOptions decompose;
  auto* cmd_decompose = app.add_subcommand(
      "decompose", "sample mode energies and print their integer/fraction/"
                   "bit decomposition");
  cmd_decompose->add_option("--beta", decompose.beta, "dimensionless ratio")
      ->capture_default_str();
  cmd_decompose
      ->add_option("--samples", decompose.samples, "number of samples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_decompose->add_option("--seed", decompose.seed, "random seed")
      ->capture_default_str();
  cmd_decompose->add_option("--s-max", decompose.s_max,
                            "highest bit index to report");
  cmd_decompose->add_option("--output", decompose.output, "CSV output path");

  VerifyOptions verify_opt;
  auto* cmd_verify = app.add_subcommand(
      "verify", "run the full identity verification suite");
  cmd_verify->add_option("--beta", verify_opt.betas,
                         "beta values (repeatable; default 0.1 1 5)");
  cmd_verify->add_option("--seed", verify_opt.seed, "random seed")
      ->capture_default_str();
  cmd_verify->add_option("--mc-count", verify_opt.mc_count,
                         "Monte Carlo draws per batch")
      ->capture_default_str();
  cmd_verify->add_option("--tol", verify_opt.tolerance,
                         "override the exact-identity tolerance (default "
                         "1e-12)");
  cmd_verify->add_option("--report", verify_opt.report, "JSON report path")
      ->capture_default_str();
  cmd_verify->add_flag("--skip-mc", verify_opt.skip_mc,
                       "skip the Monte Carlo group");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_spectrum->parsed()) return run_spectrum(spectrum, global);
    if (cmd_sample->parsed()) return run_sample(sample, global);
    if (cmd_decompose->parsed()) return run_decompose(decompose, global);
    if (cmd_verify->parsed()) return run_verify(verify_opt, global);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
