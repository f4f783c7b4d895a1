#include "binomsum/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <span>

#include <CLI11.hpp>

#include "binomsum/density.hpp"
#include "binomsum/oracle.hpp"
#include "binomsum/quantile.hpp"
#include "binomsum/report.hpp"
#include "binomsum/tail.hpp"

namespace binomsum::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

struct CommonArgs {
  std::vector<std::int64_t> sizes;
  std::vector<double> probs;
  std::string out_path;
  std::uint64_t seed = kDefaultSeed;
};

void add_mixture_options(CLI::App* cmd, CommonArgs& args, bool required) {
  auto* sizes = cmd->add_option("--sizes", args.sizes, "Trial counts, comma separated")
                    ->delimiter(',');
  auto* probs =
      cmd->add_option("--probs", args.probs,
                      "Success probabilities, comma separated (length-1 broadcasts)")
          ->delimiter(',');
  if (required) {
    sizes->required();
    probs->required();
  }
}

void add_out_option(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--out", args.out_path, "Write CSV here instead of stdout");
}

BinomialMixture make_mixture(const CommonArgs& args) {
  return BinomialMixture(args.sizes, args.probs);
}

// Keeps the ofstream alive while handing out a plain ostream reference.
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) {
        throw std::invalid_argument("cannot open output file '" + path + "'");
      }
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

void run_pdf(const CommonArgs& args, bool log_scale, std::ostream& out) {
  const BinomialMixture mix = make_mixture(args);
  const PmfTable& table = cached_pmf_table(mix);
  out << "s,value\n";
  for (std::int64_t s = 0; s <= table.total_trials; ++s) {
    const double value = table.mass[static_cast<Eigen::Index>(s)];
    out << s << ',' << format_real(log_scale ? std::log(value) : value) << "\n";
  }
}

void run_cdf(const CommonArgs& args, bool lower_tail, bool log_scale,
             std::ostream& out) {
  const BinomialMixture mix = make_mixture(args);
  out << "s,value\n";
  for (std::int64_t s = 0; s <= mix.total_trials(); ++s) {
    out << s << ',' << format_real(cdf_at(mix, s, lower_tail, log_scale)) << "\n";
  }
}

void run_quantile(const CommonArgs& args, const std::vector<double>& ps,
                  bool lower_tail, bool log_scale, std::ostream& out) {
  const BinomialMixture mix = make_mixture(args);
  out << "p,s\n";
  for (const double p : ps) {
    const std::int64_t s = quantile(mix, QuantileQuery{p, lower_tail, log_scale});
    out << format_real(p) << ',' << s << "\n";
  }
}

void run_sample(const CommonArgs& args, std::int64_t count, std::ostream& out) {
  const BinomialMixture mix = make_mixture(args);
  out << "draw\n";
  for (const std::int64_t v : sample(mix, count, args.seed)) {
    out << v << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distribution of a sum of independent non-identical binomials "
               "(second-order saddlepoint approximation with exact oracle)"};
  app.require_subcommand(1);

  CommonArgs pdf_args, cdf_args, quant_args, sample_args, compare_args, bench_args;
  bool pdf_log = false;
  bool cdf_log = false, cdf_lower = true;
  bool quant_log = false, quant_lower = true;
  std::vector<double> quant_ps;
  std::int64_t sample_count = 0;
  std::string compare_mode, compare_truth = "exact", compare_stat = "pdf";
  std::int64_t compare_m = 0, compare_n = 0, compare_trials = 0;
  double compare_p = 0.0;
  std::vector<std::int64_t> bench_trials;

  auto* pdf_cmd = app.add_subcommand("pdf", "Full-support pmf table");
  add_mixture_options(pdf_cmd, pdf_args, true);
  pdf_cmd->add_flag("--log", pdf_log, "Emit natural-log probabilities");
  add_out_option(pdf_cmd, pdf_args);

  auto* cdf_cmd = app.add_subcommand("cdf", "Full-support cdf table");
  add_mixture_options(cdf_cmd, cdf_args, true);
  cdf_cmd->add_option("--lower-tail", cdf_lower, "true: P[S <= s]; false: P[S > s]");
  cdf_cmd->add_flag("--log", cdf_log, "Emit natural-log probabilities");
  add_out_option(cdf_cmd, cdf_args);

  auto* quant_cmd = app.add_subcommand("quantile", "Left-continuous inverse cdf");
  add_mixture_options(quant_cmd, quant_args, true);
  quant_cmd->add_option("--p", quant_ps, "Probabilities, comma separated")
      ->required()
      ->delimiter(',');
  quant_cmd->add_option("--lower-tail", quant_lower,
                        "Interpret probabilities as lower-tail (default true)");
  quant_cmd->add_flag("--log", quant_log, "Probabilities given as logs");
  add_out_option(quant_cmd, quant_args);

  auto* sample_cmd = app.add_subcommand("sample", "Random draws of the sum");
  add_mixture_options(sample_cmd, sample_args, true);
  sample_cmd->add_option("--count", sample_count, "Number of draws")->required();
  sample_cmd->add_option("--seed", sample_args.seed, "Generator seed (default 42)");
  add_out_option(sample_cmd, sample_args);

  auto* compare_cmd =
      app.add_subcommand("compare", "Truth vs approximation over the full support");
  compare_cmd->add_option("--mode", compare_mode, "two-binomial or mixture")
      ->required()
      ->check(CLI::IsMember({"two-binomial", "mixture"}));
  compare_cmd->add_option("--m", compare_m, "First trial count (two-binomial)");
  compare_cmd->add_option("--n", compare_n, "Second trial count (two-binomial)");
  compare_cmd->add_option("--p", compare_p, "Shared success probability (two-binomial)");
  add_mixture_options(compare_cmd, compare_args, false);
  compare_cmd->add_option("--truth", compare_truth, "Truth source (mixture mode)")
      ->check(CLI::IsMember({"exact", "simulation"}));
  compare_cmd->add_option("--trials", compare_trials,
                          "Simulation size (required when --truth simulation)");
  compare_cmd->add_option("--stat", compare_stat, "pdf or cdf (default pdf)")
      ->check(CLI::IsMember({"pdf", "cdf"}));
  compare_cmd->add_option("--seed", compare_args.seed, "Generator seed (default 42)");
  add_out_option(compare_cmd, compare_args);

  auto* bench_cmd =
      app.add_subcommand("bench", "Wall time and accuracy vs the exact oracle");
  add_mixture_options(bench_cmd, bench_args, true);
  bench_cmd->add_option("--trials", bench_trials, "Simulation sizes, comma separated")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--seed", bench_args.seed, "Generator seed (default 42)");
  add_out_option(bench_cmd, bench_args);

  // CLI11 wants mutable argc/argv-style input.
  std::vector<std::string> argv_storage = args;
  std::vector<const char*> argv;
  argv.reserve(argv_storage.size());
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (pdf_cmd->parsed()) {
      OutputTarget target(pdf_args.out_path, out);
      run_pdf(pdf_args, pdf_log, target.get());
    } else if (cdf_cmd->parsed()) {
      OutputTarget target(cdf_args.out_path, out);
      run_cdf(cdf_args, cdf_lower, cdf_log, target.get());
    } else if (quant_cmd->parsed()) {
      OutputTarget target(quant_args.out_path, out);
      run_quantile(quant_args, quant_ps, quant_lower, quant_log, target.get());
    } else if (sample_cmd->parsed()) {
      OutputTarget target(sample_args.out_path, out);
      run_sample(sample_args, sample_count, target.get());
    } else if (compare_cmd->parsed()) {
      CompareReport report;
      const Stat stat = compare_stat == "pdf" ? Stat::pdf : Stat::cdf;
      if (compare_mode == "two-binomial") {
        if (compare_cmd->count("--m") == 0 || compare_cmd->count("--n") == 0 ||
            compare_cmd->count("--p") == 0) {
          throw std::invalid_argument("compare --mode two-binomial needs --m, --n, --p");
        }
        report = compare_two_binomial(compare_m, compare_n, compare_p, stat);
      } else {
        if (compare_args.sizes.empty() || compare_args.probs.empty()) {
          throw std::invalid_argument("compare --mode mixture needs --sizes and --probs");
        }
        const TruthSource truth = compare_truth == "exact" ? TruthSource::exact
                                                           : TruthSource::simulation;
        if (truth == TruthSource::simulation && compare_cmd->count("--trials") == 0) {
          throw std::invalid_argument("compare --truth simulation needs --trials");
        }
        report = compare_mixture(make_mixture(compare_args), truth, compare_trials,
                                 compare_args.seed, stat);
      }
      OutputTarget target(compare_args.out_path, out);
      write_csv(target.get(), report);
    } else if (bench_cmd->parsed()) {
      const BenchReport report = bench(make_mixture(bench_args),
                                       std::span<const std::int64_t>(bench_trials),
                                       bench_args.seed);
      OutputTarget target(bench_args.out_path, out);
      write_csv(target.get(), report);
    }
  } catch (const guard_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace binomsum::cli
