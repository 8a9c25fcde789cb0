#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "katpd/equivalence.hpp"
#include "katpd/random.hpp"

namespace katpd {

enum class BenchMode { Self, Pairs };

struct BenchConfig {
  std::size_t k = 5;
  std::size_t l = 5;
  std::size_t size = 50;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  BenchMode mode = BenchMode::Self;
  std::size_t jobs = 1;
};

struct BenchSample {
  std::size_t index = 0;
  std::size_t tests = 0;  // test occurrences of the (first) expression
  std::size_t nodes = 0;
  std::size_t h_size = 0;
  bool equivalent = false;
  double seconds = 0;
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchSample> samples;
  double mean_tests = 0;
  double mean_h = 0;
  double ratio = 0;
  double mean_seconds = 0;
};

/// Generates the expressions of a run: `samples` of them in self mode and
/// `2 * samples` in pairs mode, where check i compares 2i with 2i+1.
inline std::vector<KatExpr> bench_expressions(const BenchConfig& config, const SymbolTable& table) {
  Rng rng(config.seed);
  const std::size_t count = config.mode == BenchMode::Self ? config.samples : 2 * config.samples;
  std::vector<KatExpr> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_kat(rng, table, config.size));
  return out;
}

inline BenchReport run_bench(const BenchConfig& config) {
  if (config.k < 1 || config.l < 1 || config.size < 1 || config.samples < 1) {
    throw Error("bench needs k, l, size and samples all at least 1");
  }
  const SymbolTable table = numbered_table(config.k, config.l);
  table.atoms();
  const auto exprs = bench_expressions(config, table);

  BenchReport report{config, std::vector<BenchSample>(config.samples), 0, 0, 0, 0};
  auto run_one = [&](std::size_t i) {
    const KatExpr& a = config.mode == BenchMode::Self ? exprs[i] : exprs[2 * i];
    const KatExpr& b = config.mode == BenchMode::Self ? exprs[i] : exprs[2 * i + 1];
    const auto start = std::chrono::steady_clock::now();
    const Verdict v = equiv(a, b, table);
    const auto stop = std::chrono::steady_clock::now();
    report.samples[i] =
        BenchSample{i, test_occurrences(a), a.node_count(), v.h_size, v.equivalent,
                    std::chrono::duration<double>(stop - start).count()};
  };

  const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, config.samples));
  if (jobs == 1) {
    for (std::size_t i = 0; i < config.samples; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < config.samples; i = next++) run_one(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  for (const auto& s : report.samples) {
    report.mean_tests += static_cast<double>(s.tests);
    report.mean_h += static_cast<double>(s.h_size);
    report.ratio += s.equivalent ? 1.0 : 0.0;
    report.mean_seconds += s.seconds;
  }
  const auto n = static_cast<double>(config.samples);
  report.mean_tests /= n;
  report.mean_h /= n;
  report.ratio /= n;
  report.mean_seconds /= n;
  return report;
}

namespace detail {

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace detail

/// Human-readable summary row.  Timings are included only on request so
/// that reports for a fixed seed are byte-identical.
inline void print_report(std::ostream& os, const BenchReport& r, bool timings) {
  os << "k\tl\tsize\tsamples\tmode\t|e|_T\t|H|\tratio";
  if (timings) os << "\ttime(s)";
  os << '\n';
  os << r.config.k << '\t' << r.config.l << '\t' << r.config.size << '\t' << r.config.samples << '\t'
     << (r.config.mode == BenchMode::Self ? "self" : "pairs") << '\t' << detail::fixed(r.mean_tests, 2) << '\t'
     << detail::fixed(r.mean_h, 2) << '\t' << detail::fixed(r.ratio, 4);
  if (timings) os << '\t' << detail::fixed(r.mean_seconds, 4);
  os << '\n';
}

/// One CSV row per sample.
inline void write_samples_csv(std::ostream& os, const BenchReport& r, bool timings) {
  os << "index,tests,nodes,h_size,equivalent";
  if (timings) os << ",seconds";
  os << '\n';
  for (const auto& s : r.samples) {
    os << s.index << ',' << s.tests << ',' << s.nodes << ',' << s.h_size << ',' << (s.equivalent ? 1 : 0);
    if (timings) os << ',' << detail::fixed(s.seconds, 6);
    os << '\n';
  }
}

}  // namespace katpd
