#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "binomsum/model.hpp"

namespace binomsum {

enum class Stat { pdf, cdf };
enum class TruthSource { exact, simulation };

struct CompareRow {
  std::int64_t s;
  double truth;
  double approx;
  double diff;  // truth - approx
  bool operator==(const CompareRow&) const = default;
};

/// Full-support truth/approximation comparison, one row per support point.
struct CompareReport {
  std::vector<std::int64_t> sizes;
  std::vector<double> probs;
  Stat stat = Stat::pdf;
  std::string truth_source;  // "exact-binomial", "exact" or "simulation"
  std::uint64_t seed = 0;
  std::int64_t trials = 0;  // simulation truth only
  std::vector<CompareRow> rows;
  bool operator==(const CompareReport&) const = default;
};

struct BenchRow {
  std::string method;
  double wall_time_s;
  double max_abs_error;  // vs the exact oracle pmf
  bool operator==(const BenchRow&) const = default;
};

struct BenchReport {
  std::vector<std::int64_t> sizes;
  std::vector<double> probs;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> trials_list;
  std::vector<BenchRow> rows;
  bool operator==(const BenchReport&) const = default;
};

/// Truth from the closed-form Bin(m+n, p); approximation from this library on
/// the two-component mixture sizes=[m,n], probs=[p,p].
CompareReport compare_two_binomial(std::int64_t m, std::int64_t n, double p, Stat stat);

/// Truth from the exact convolution oracle or from an empirical pmf of
/// `trials` draws; approximation from pmf_table / cdf_at.
CompareReport compare_mixture(const BinomialMixture& mix, TruthSource truth,
                              std::int64_t trials, std::uint64_t seed, Stat stat);

/// Wall-clock and accuracy rows for the full saddlepoint table and for each
/// requested simulation size, all measured against the exact oracle.
BenchReport bench(const BinomialMixture& mix, std::span<const std::int64_t> trials_list,
                  std::uint64_t seed);

// CSV serialization. Metadata rides in leading `# key=value` comment lines;
// doubles are printed with 17 significant digits so a round trip is exact.
void write_csv(std::ostream& out, const CompareReport& report);
void write_csv(std::ostream& out, const BenchReport& report);
CompareReport read_compare_csv(std::istream& in);
BenchReport read_bench_csv(std::istream& in);

std::string format_real(double value);  // %.17g

}  // namespace binomsum
