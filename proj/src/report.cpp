#include "binomsum/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "binomsum/density.hpp"
#include "binomsum/oracle.hpp"
#include "binomsum/tail.hpp"

namespace binomsum {

namespace {

RealArray running_cdf(const RealArray& pmf) {
  RealArray out(pmf.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < pmf.size(); ++i) {
    acc += pmf[i];
    out[i] = std::min(acc, 1.0);
  }
  return out;
}

RealArray approx_column(const BinomialMixture& mix, Stat stat) {
  const std::int64_t n_total = mix.total_trials();
  if (stat == Stat::pdf) return pmf_table(mix).mass;
  RealArray out(n_total + 1);
  for (std::int64_t q = 0; q <= n_total; ++q) {
    out[static_cast<Eigen::Index>(q)] = cdf_at(mix, q);
  }
  return out;
}

std::vector<CompareRow> make_rows(const RealArray& truth, const RealArray& approx) {
  std::vector<CompareRow> rows(truth.size());
  for (Eigen::Index s = 0; s < truth.size(); ++s) {
    rows[s] = {s, truth[s], approx[s], truth[s] - approx[s]};
  }
  return rows;
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  const auto dt = std::chrono::steady_clock::now() - start;
  const double s = std::chrono::duration<double>(dt).count();
  return std::max(s, 1e-9);  // clock granularity floor
}

std::string stat_name(Stat stat) { return stat == Stat::pdf ? "pdf" : "cdf"; }

Stat parse_stat(const std::string& text) {
  if (text == "pdf") return Stat::pdf;
  if (text == "cdf") return Stat::cdf;
  throw std::invalid_argument("unknown stat '" + text + "'");
}

template <typename T>
std::string join(const std::vector<T>& values,
                 const std::function<std::string(const T&)>& fmt) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += fmt(values[i]);
  }
  return out;
}

std::string join_ints(const std::vector<std::int64_t>& values) {
  return join<std::int64_t>(values,
                            [](const std::int64_t& v) { return std::to_string(v); });
}

std::string join_reals(const std::vector<double>& values) {
  return join<double>(values, [](const double& v) { return format_real(v); });
}

std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (const char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::int64_t parse_int(const std::string& text) {
  std::size_t pos = 0;
  const std::int64_t v = std::stoll(text, &pos);
  if (pos != text.size()) {
    throw std::invalid_argument("bad integer '" + text + "'");
  }
  return v;
}

double parse_real(const std::string& text) {
  std::size_t pos = 0;
  const double v = std::stod(text, &pos);
  if (pos != text.size()) {
    throw std::invalid_argument("bad number '" + text + "'");
  }
  return v;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  if (text.empty()) return out;
  for (const std::string& part : split_on(text, ',')) out.push_back(parse_int(part));
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  for (const std::string& part : split_on(text, ',')) out.push_back(parse_real(part));
  return out;
}

// Leading "# key=value" block; leaves the stream at the header line.
std::map<std::string, std::string> read_metadata(std::istream& in,
                                                 std::string& header) {
  std::map<std::string, std::string> meta;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      const std::string body = line.substr(2);
      const auto eq = body.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("bad metadata line '" + line + "'");
      }
      meta[body.substr(0, eq)] = body.substr(eq + 1);
    } else {
      header = line;
      return meta;
    }
  }
  throw std::invalid_argument("missing CSV header");
}

const std::string& require_key(const std::map<std::string, std::string>& meta,
                               const std::string& key) {
  const auto it = meta.find(key);
  if (it == meta.end()) {
    throw std::invalid_argument("missing metadata key '" + key + "'");
  }
  return it->second;
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

CompareReport compare_two_binomial(std::int64_t m, std::int64_t n, double p,
                                   Stat stat) {
  if (m < 1 || n < 1) {
    throw std::invalid_argument("compare_two_binomial: m and n must be >= 1");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("compare_two_binomial: p must lie in (0,1)");
  }
  const BinomialMixture mix(std::vector<std::int64_t>{m, n},
                            std::vector<double>{p, p});
  RealArray truth = binomial_pmf(m + n, p);
  if (stat == Stat::cdf) truth = running_cdf(truth);

  CompareReport report;
  report.sizes = {m, n};
  report.probs = {p, p};
  report.stat = stat;
  report.truth_source = "exact-binomial";
  report.rows = make_rows(truth, approx_column(mix, stat));
  return report;
}

CompareReport compare_mixture(const BinomialMixture& mix, TruthSource truth,
                              std::int64_t trials, std::uint64_t seed, Stat stat) {
  RealArray truth_pmf;
  if (truth == TruthSource::exact) {
    truth_pmf = exact_pmf(mix).mass;
  } else {
    if (trials < 1) {
      throw std::invalid_argument(
          "compare_mixture: simulation truth requires trials >= 1");
    }
    const std::vector<std::int64_t> draws = sample(mix, trials, seed);
    truth_pmf = empirical_pmf(draws, mix.total_trials());
  }
  RealArray truth_col = truth_pmf;
  if (stat == Stat::cdf) truth_col = running_cdf(truth_col);

  CompareReport report;
  report.sizes.assign(mix.sizes().data(), mix.sizes().data() + mix.component_count());
  report.probs.assign(mix.probs().data(), mix.probs().data() + mix.component_count());
  report.stat = stat;
  report.truth_source = truth == TruthSource::exact ? "exact" : "simulation";
  report.seed = truth == TruthSource::simulation ? seed : 0;
  report.trials = truth == TruthSource::simulation ? trials : 0;
  report.rows = make_rows(truth_col, approx_column(mix, stat));
  return report;
}

BenchReport bench(const BinomialMixture& mix,
                  std::span<const std::int64_t> trials_list, std::uint64_t seed) {
  if (trials_list.empty()) {
    throw std::invalid_argument("bench: trials list must be nonempty");
  }
  for (const std::int64_t t : trials_list) {
    if (t < 1) throw std::invalid_argument("bench: trial counts must be >= 1");
  }
  const ExactPmf exact = exact_pmf(mix);

  BenchReport report;
  report.sizes.assign(mix.sizes().data(), mix.sizes().data() + mix.component_count());
  report.probs.assign(mix.probs().data(), mix.probs().data() + mix.component_count());
  report.seed = seed;
  report.trials_list.assign(trials_list.begin(), trials_list.end());

  {
    const auto start = std::chrono::steady_clock::now();
    const PmfTable table = pmf_table(mix);
    const double dt = elapsed_seconds(start);
    report.rows.push_back(
        {"saddlepoint", dt, (table.mass - exact.mass).abs().maxCoeff()});
  }
  for (const std::int64_t trials : trials_list) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<std::int64_t> draws = sample(mix, trials, seed);
    const RealArray emp = empirical_pmf(draws, mix.total_trials());
    const double dt = elapsed_seconds(start);
    report.rows.push_back({"simulation_" + std::to_string(trials), dt,
                           (emp - exact.mass).abs().maxCoeff()});
  }
  return report;
}

void write_csv(std::ostream& out, const CompareReport& report) {
  out << "# report=compare\n";
  out << "# sizes=" << join_ints(report.sizes) << "\n";
  out << "# probs=" << join_reals(report.probs) << "\n";
  out << "# stat=" << stat_name(report.stat) << "\n";
  out << "# truth=" << report.truth_source << "\n";
  out << "# trials=" << report.trials << "\n";
  out << "# seed=" << report.seed << "\n";
  out << "s,truth,approx,diff\n";
  for (const CompareRow& row : report.rows) {
    out << row.s << ',' << format_real(row.truth) << ',' << format_real(row.approx)
        << ',' << format_real(row.diff) << "\n";
  }
}

void write_csv(std::ostream& out, const BenchReport& report) {
  out << "# report=bench\n";
  out << "# sizes=" << join_ints(report.sizes) << "\n";
  out << "# probs=" << join_reals(report.probs) << "\n";
  out << "# trials=" << join_ints(report.trials_list) << "\n";
  out << "# seed=" << report.seed << "\n";
  out << "method,wall_time_s,max_abs_error\n";
  for (const BenchRow& row : report.rows) {
    out << row.method << ',' << format_real(row.wall_time_s) << ','
        << format_real(row.max_abs_error) << "\n";
  }
}

CompareReport read_compare_csv(std::istream& in) {
  std::string header;
  const auto meta = read_metadata(in, header);
  if (require_key(meta, "report") != "compare" || header != "s,truth,approx,diff") {
    throw std::invalid_argument("not a compare report");
  }
  CompareReport report;
  report.sizes = parse_int_list(require_key(meta, "sizes"));
  report.probs = parse_real_list(require_key(meta, "probs"));
  report.stat = parse_stat(require_key(meta, "stat"));
  report.truth_source = require_key(meta, "truth");
  report.trials = parse_int(require_key(meta, "trials"));
  report.seed = static_cast<std::uint64_t>(parse_int(require_key(meta, "seed")));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto parts = split_on(line, ',');
    if (parts.size() != 4) {
      throw std::invalid_argument("bad compare row '" + line + "'");
    }
    report.rows.push_back({parse_int(parts[0]), parse_real(parts[1]),
                           parse_real(parts[2]), parse_real(parts[3])});
  }
  return report;
}

BenchReport read_bench_csv(std::istream& in) {
  std::string header;
  const auto meta = read_metadata(in, header);
  if (require_key(meta, "report") != "bench" ||
      header != "method,wall_time_s,max_abs_error") {
    throw std::invalid_argument("not a bench report");
  }
  BenchReport report;
  report.sizes = parse_int_list(require_key(meta, "sizes"));
  report.probs = parse_real_list(require_key(meta, "probs"));
  report.trials_list = parse_int_list(require_key(meta, "trials"));
  report.seed = static_cast<std::uint64_t>(parse_int(require_key(meta, "seed")));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto parts = split_on(line, ',');
    if (parts.size() != 3) {
      throw std::invalid_argument("bad bench row '" + line + "'");
    }
    report.rows.push_back({parts[0], parse_real(parts[1]), parse_real(parts[2])});
  }
  return report;
}

}  // namespace binomsum
