#include "cesaro/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cesaro/analysis.hpp"
#include "cesaro/density.hpp"
#include "cesaro/errors.hpp"
#include "cesaro/partition.hpp"
#include "cesaro/sequence.hpp"
#include "cesaro/serialize.hpp"
#include "cesaro/summability.hpp"

namespace cesaro::cli {
namespace {

/// A bad value for a specific flag; maps to exit code 1.
class FlagError : public ParameterError {
 public:
  FlagError(const std::string& flag, const std::string& what)
      : ParameterError(flag + ": " + what) {}
};

struct GeneratorOptions {
  std::string name;
  double c = 0.0;
  double s = 0.0;
  std::string path;
  std::uint64_t seed = 0;
  double bound = 1.0;
  Index length = 0;
  Index modulus = 2;
  Index residue = 0;
  std::string pattern;
  double shift = 0.0;
  double scale = 1.0;
};

struct RunConfig {
  GeneratorOptions gen;
  Index n = 0;
  std::int64_t j = 0;
  int m = 0;
  std::string alpha = "2";
  std::string bases = "1.2,1.5,2,e,3,10";
  double tol = 0.01;
  double ell = 0.0;
  double window = 0.5;
  double block_window = 0.25;
  std::string mode = "cardinality";
  std::string format = "csv";
  std::string output;
  bool emit = false;
};

double parse_real_token(const std::string& flag, std::string_view token) {
  if (token == "e") return std::numbers::e;
  double v = 0.0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw FlagError(flag, "not a number: '" + std::string(token) + "'");
  }
  return v;
}

std::vector<double> parse_real_list(const std::string& flag, const std::string& text) {
  std::vector<double> out;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto token = rest.substr(0, comma);
    if (token.empty()) throw FlagError(flag, "empty entry in list");
    out.push_back(parse_real_token(flag, token));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
    if (rest.empty()) throw FlagError(flag, "empty entry in list");
  }
  if (out.empty()) throw FlagError(flag, "list is empty");
  return out;
}

void require_alpha(const std::string& flag, double alpha) {
  try {
    validate_alpha(alpha);
  } catch (const ParameterError& e) {
    throw FlagError(flag, e.what());
  }
}

double parse_alpha(const std::string& text) {
  const double alpha = parse_real_token("--alpha", text);
  require_alpha("--alpha", alpha);
  return alpha;
}

void require_positive(const std::string& flag, double v) {
  if (!(v > 0.0)) throw FlagError(flag, "must be positive");
}

void require_window(const std::string& flag, double w) {
  if (!(w > 0.0 && w <= 1.0)) throw FlagError(flag, "must lie in (0, 1]");
}

SequenceSource make_source(const GeneratorOptions& g, Index n_hint) {
  SequenceSource src = [&]() -> SequenceSource {
    const auto& name = g.name;
    if (name == "constant") return constant(g.c);
    if (name == "alternating") return alternating();
    if (name == "counterexample") return counterexample();
    if (name == "a_s") {
      if (!(g.s >= 0.0 && g.s <= 1.0)) throw FlagError("--s", "must lie in [0, 1]");
      return a_s(g.s);
    }
    if (name == "paper-example") return paper_example();
    if (name == "multiples") {
      if (g.modulus < 1) throw FlagError("--modulus", "must be >= 1");
      return multiples(g.modulus, g.residue);
    }
    if (name == "periodic") {
      if (g.pattern.empty()) throw FlagError("--pattern", "required for the periodic generator");
      return periodic(parse_real_list("--pattern", g.pattern));
    }
    if (name == "file") {
      if (g.path.empty()) throw FlagError("--path", "required for the file generator");
      if (!std::filesystem::is_regular_file(g.path)) {
        throw std::runtime_error("--path: cannot read sequence file '" + g.path + "'");
      }
      try {
        return from_file(g.path);
      } catch (const ParseError& e) {
        throw ParseError(e.line(), "--path '" + g.path + "': " + e.what());
      }
    }
    if (name == "random") {
      if (!(g.bound > 0.0)) throw FlagError("--bound", "must be positive");
      Index length = g.length > 0 ? g.length
                     : n_hint > 0 ? n_hint
                                  : std::numeric_limits<Index>::max();
      return random_bounded(g.seed, g.bound, length);
    }
    throw FlagError("--gen", "unknown generator '" + name + "'");
  }();
  if (g.scale != 1.0) src = scaled(src, g.scale);
  if (g.shift != 0.0) src = shifted(src, g.shift);
  return src;
}

void add_generator_options(CLI::App* sub, GeneratorOptions& g) {
  sub->add_option("--gen", g.name,
                  "Generator: constant, alternating, counterexample, a_s, paper-example, "
                  "multiples, periodic, file, random")
      ->required();
  sub->add_option("--c", g.c, "Value of the constant generator");
  sub->add_option("--s", g.s, "Parameter s in [0,1] of the a_s generator");
  sub->add_option("--path", g.path, "Sequence file for the file generator");
  sub->add_option("--seed", g.seed, "Seed of the random generator");
  sub->add_option("--bound", g.bound, "Bound of the random generator");
  sub->add_option("--length", g.length, "Length of the random generator (default: --n)");
  sub->add_option("--modulus", g.modulus, "Modulus of the multiples generator");
  sub->add_option("--residue", g.residue, "Residue of the multiples generator");
  sub->add_option("--pattern", g.pattern, "Comma-separated values of the periodic generator");
  sub->add_option("--shift", g.shift, "Subtract this value from every term");
  sub->add_option("--scale", g.scale, "Multiply every term by this value (applied before --shift)");
}

void add_format(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output,-o", cfg.output, "Output file (default: standard output)");
}

void emit_json(std::ostream& out, const nlohmann::json& doc) { out << doc.dump(2) << '\n'; }

struct Commands {
  CLI::App* gen;
  CLI::App* means;
  CLI::App* strong_means;
  CLI::App* blocks;
  CLI::App* block_means;
  CLI::App* w1norm;
  CLI::App* density;
  CLI::App* thm1;
  CLI::App* thm2;
  CLI::App* demo;
};

Commands build(CLI::App& app, RunConfig& cfg) {
  Commands c{};
  auto positive_n = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--n", cfg.n, "Number of terms")->check(CLI::PositiveNumber);
    if (required) opt->required();
  };

  c.gen = app.add_subcommand("gen", "Print the first N terms of a sequence");
  add_generator_options(c.gen, cfg.gen);
  positive_n(c.gen, true);
  c.gen->add_flag("--emit", cfg.emit, "Write the re-importable sequence file format");
  add_format(c.gen, cfg);

  c.means = app.add_subcommand("means", "Cesaro means a_1..a_N");
  add_generator_options(c.means, cfg.gen);
  positive_n(c.means, true);
  add_format(c.means, cfg);

  c.strong_means = app.add_subcommand("strong-means", "Strong Cesaro means (1/n) sum |x_i - ell|");
  add_generator_options(c.strong_means, cfg.gen);
  positive_n(c.strong_means, true);
  c.strong_means->add_option("--ell", cfg.ell, "Reference value ell");
  add_format(c.strong_means, cfg);

  c.blocks = app.add_subcommand("blocks", "Geometric block table for base alpha");
  c.blocks->add_option("--alpha", cfg.alpha, "Base alpha > 1; 'e' is accepted")->required();
  c.blocks->add_option("--j", cfg.j, "Number of blocks")->required()->check(CLI::PositiveNumber);
  add_format(c.blocks, cfg);

  c.block_means = app.add_subcommand("block-means", "Block means b_1..b_J for base alpha");
  add_generator_options(c.block_means, cfg.gen);
  c.block_means->add_option("--alpha", cfg.alpha, "Base alpha > 1; 'e' is accepted")->required();
  c.block_means->add_option("--j", cfg.j, "Number of blocks")->required()->check(CLI::PositiveNumber);
  c.block_means->add_option("--mode", cfg.mode, "Normalization")
      ->check(CLI::IsMember({"cardinality", "real-length"}));
  add_format(c.block_means, cfg);

  c.w1norm = app.add_subcommand("w1norm", "Partial w1 norm over dyadic blocks m = 1..M");
  add_generator_options(c.w1norm, cfg.gen);
  c.w1norm->add_option("--m", cfg.m, "Number of dyadic blocks")->required()->check(CLI::Range(1, 40));
  add_format(c.w1norm, cfg);

  c.density = app.add_subcommand("density", "Upper/lower density band of an indicator sequence");
  add_generator_options(c.density, cfg.gen);
  positive_n(c.density, true);
  c.density->add_option("--window", cfg.window, "Trailing window fraction in (0,1]");
  add_format(c.density, cfg);

  c.thm1 = app.add_subcommand("check-thm1", "Cesaro convergence against block means over many bases");
  add_generator_options(c.thm1, cfg.gen);
  positive_n(c.thm1, true);
  c.thm1->add_option("--bases", cfg.bases, "Comma-separated bases; 'e' is accepted");
  c.thm1->add_option("--j", cfg.j, "Cap on blocks per base (0: all completed)");
  c.thm1->add_option("--tol", cfg.tol, "Convergence tolerance");
  c.thm1->add_option("--window", cfg.window, "Trailing window over n for Cesaro means");
  c.thm1->add_option("--block-window", cfg.block_window, "Trailing window over blocks");
  add_format(c.thm1, cfg);

  c.thm2 = app.add_subcommand("check-thm2", "Single-base check for nonnegative sequences");
  add_generator_options(c.thm2, cfg.gen);
  positive_n(c.thm2, true);
  c.thm2->add_option("--alpha", cfg.alpha, "Base alpha > 1; 'e' is accepted");
  c.thm2->add_option("--j", cfg.j, "Cap on blocks (0: all completed)");
  c.thm2->add_option("--tol", cfg.tol, "Convergence tolerance");
  c.thm2->add_option("--window", cfg.window, "Trailing window over n for Cesaro means");
  c.thm2->add_option("--block-window", cfg.block_window, "Trailing window over blocks");
  add_format(c.thm2, cfg);

  c.demo = app.add_subcommand("demo-counterexample",
                              "Base-2 block means vs Cesaro means of the +-1 sign sequence");
  positive_n(c.demo, true);
  c.demo->add_option("--window", cfg.window, "Trailing window over n");
  add_format(c.demo, cfg);

  app.require_subcommand(1);
  return c;
}

void dispatch(const Commands& c, const RunConfig& cfg, std::ostream& out) {
  const bool json = cfg.format == "json";

  if (c.gen->parsed()) {
    const auto src = make_source(cfg.gen, cfg.n);
    if (cfg.emit) {
      write_sequence(out, src, cfg.n);
    } else if (json) {
      std::vector<double> values;
      for (Index n = 1; n <= cfg.n; ++n) values.push_back(src(n));
      emit_json(out, {{"schema", "cesaro.sequence/1"},
                      {"generator", generator_json(src)},
                      {"N", cfg.n},
                      {"values", values}});
    } else {
      out << "n,x_n\n";
      for (Index n = 1; n <= cfg.n; ++n) out << n << ',' << format_real(src(n)) << '\n';
    }
    return;
  }

  if (c.means->parsed() || c.strong_means->parsed()) {
    const auto src = make_source(cfg.gen, cfg.n);
    const bool strong = c.strong_means->parsed();
    const auto series = strong ? strong_cesaro_means(src, cfg.ell, cfg.n) : cesaro_means(src, cfg.n);
    if (json) {
      auto doc = to_json(series, src, strong ? "strong-cesaro" : "cesaro");
      if (strong) doc["ell"] = cfg.ell;
      emit_json(out, doc);
    } else {
      write_csv(out, series);
    }
    return;
  }

  if (c.blocks->parsed()) {
    const auto partition = GeometricPartition::with_blocks(parse_alpha(cfg.alpha), cfg.j);
    if (json) {
      emit_json(out, to_json(partition));
    } else {
      write_csv(out, partition);
    }
    return;
  }

  if (c.block_means->parsed()) {
    const double alpha = parse_alpha(cfg.alpha);
    const auto src = make_source(cfg.gen, 0);
    const auto series = block_means(src, alpha, cfg.j, parse_normalization(cfg.mode));
    if (json) {
      emit_json(out, to_json(series, src));
    } else {
      write_csv(out, series);
    }
    return;
  }

  if (c.w1norm->parsed()) {
    const auto src = make_source(cfg.gen, 0);
    const double norm = w1_norm_partial(src, cfg.m);
    if (json) {
      emit_json(out, {{"schema", kW1NormSchema},
                      {"generator", generator_json(src)},
                      {"M", cfg.m},
                      {"norm", norm}});
    } else {
      out << "M,norm\n" << cfg.m << ',' << format_real(norm) << '\n';
    }
    return;
  }

  if (c.density->parsed()) {
    require_window("--window", cfg.window);
    if (cfg.n < 2) throw FlagError("--n", "density needs N >= 2");
    const auto src = make_source(cfg.gen, cfg.n);
    const IndicatorSet* set = src.indicator();
    if (set == nullptr || cfg.gen.shift != 0.0 || cfg.gen.scale != 1.0) {
      throw FlagError("--gen", "'" + cfg.gen.name + "' is not the indicator of a set");
    }
    const auto report = density_band(*set, cfg.n, cfg.window);
    if (json) {
      emit_json(out, to_json(report, describe(src)));
    } else {
      write_csv(out, report);
    }
    return;
  }

  if (c.thm1->parsed() || c.thm2->parsed()) {
    require_positive("--tol", cfg.tol);
    require_window("--window", cfg.window);
    require_window("--block-window", cfg.block_window);
    if (cfg.j < 0) throw FlagError("--j", "must be >= 0");
    TheoremOptions options;
    options.tol = cfg.tol;
    options.mean_window = cfg.window;
    options.block_window = cfg.block_window;
    options.max_blocks = cfg.j;
    const auto src = make_source(cfg.gen, cfg.n);
    TheoremReport report;
    if (c.thm1->parsed()) {
      const auto bases = parse_real_list("--bases", cfg.bases);
      for (double a : bases) require_alpha("--bases", a);
      report = check_theorem1(src, bases, cfg.n, options);
    } else {
      report = check_theorem2(src, parse_alpha(cfg.alpha), cfg.n, options);
    }
    if (json) {
      emit_json(out, to_json(report));
    } else {
      out << "alpha,blocks,tail_min,tail_max,verdict\n";
      out << "cesaro,," << format_real(report.cesaro.tail_min) << ','
          << format_real(report.cesaro.tail_max) << ',' << to_string(report.cesaro.verdict)
          << '\n';
      for (const auto& b : report.bases) {
        out << format_real(b.alpha) << ',' << b.blocks << ',' << format_real(b.band.tail_min)
            << ',' << format_real(b.band.tail_max) << ',' << to_string(b.band.verdict) << '\n';
      }
      out << "consistent," << (report.consistent ? "true" : "false") << ",,,\n";
    }
    return;
  }

  if (c.demo->parsed()) {
    require_window("--window", cfg.window);
    if (cfg.n < 2) throw FlagError("--n", "must be >= 2");
    const auto report = counterexample_demo(cfg.n, cfg.window);
    if (json) {
      emit_json(out, to_json(report));
    } else {
      out << "series,n,value\n";
      out << "max_abs_block_mean_j_ge_2,," << format_real(report.max_abs_block_mean) << '\n';
      out << "limsup_estimate,," << format_real(report.limsup_estimate) << '\n';
      out << "liminf_estimate,," << format_real(report.liminf_estimate) << '\n';
      for (const auto& s : report.at_three_pow) {
        out << "three_pow," << s.n << ',' << format_real(s.mean) << '\n';
      }
      for (const auto& s : report.at_local_maxima) {
        out << "local_max," << s.n << ',' << format_real(s.mean) << '\n';
      }
    }
  }
}

std::filesystem::path resolve_output(const std::string& output) {
  std::filesystem::path path(output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
      path = std::filesystem::path(dir) / path;
    }
  }
  return path;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"cesaro"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cesaro means, geometric block averages and asymptotic density"};
  app.name("cesaro");
  RunConfig cfg;
  const auto commands = build(app, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParameterError;
  }

  try {
    if (cfg.output.empty()) {
      dispatch(commands, cfg, out);
    } else {
      std::ostringstream buffer;
      dispatch(commands, cfg, buffer);
      const auto path = resolve_output(cfg.output);
      std::ofstream file(path, std::ios::binary);
      if (!file) throw std::runtime_error("--output: cannot open '" + path.string() + "'");
      file << buffer.str();
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitParameterError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
  return kExitOk;
}

}  // namespace cesaro::cli
