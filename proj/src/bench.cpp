#include "neargrace/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>
#include <tuple>

#include "neargrace/families.hpp"

namespace neargrace {

std::string stage_digest(const std::vector<StageEntry>& log) {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  };
  for (const auto& e : log) {
    feed(e.stage);
    feed(e.detail);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

BenchRow bench_cell(const std::string& family, int n, double epsilon, std::uint64_t seed,
                    const NearGracefulOptions& options) {
  const Tree tree = gen_family(family, n, seed);
  const auto t0 = std::chrono::steady_clock::now();
  const NearGracefulResult result = near_graceful(tree, epsilon, seed, options);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  BenchRow row;
  row.family = family;
  row.n = n;
  row.epsilon = epsilon;
  row.seed = seed;
  row.distinct = result.report.distinct;
  row.fraction = static_cast<double>(row.distinct) / n;
  row.max_label = result.report.max_label;
  row.elapsed_ms = ms;
  row.digest = stage_digest(result.report.stage_log);
  return row;
}

std::vector<BenchRow> run_bench(const BenchGrid& grid) {
  struct Cell {
    std::string family;
    int n;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (const auto& f : grid.families)
    for (int n : grid.sizes)
      for (auto s : grid.seeds) cells.push_back({f, n, s});
  std::vector<BenchRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < cells.size();) {
      rows[k] = bench_cell(cells[k].family, cells[k].n, grid.epsilon, cells[k].seed, grid.options);
    }
  };
  const int threads = std::max(1, grid.threads);
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::tie(a.family, a.n, a.seed) < std::tie(b.family, b.n, b.seed);
  });
  return rows;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << kBenchHeader << '\n';
  for (const auto& r : rows) {
    char frac[32], ms[32];
    std::snprintf(frac, sizeof frac, "%.6f", r.fraction);
    std::snprintf(ms, sizeof ms, "%.3f", r.elapsed_ms);
    out << r.family << ',' << r.n << ',' << r.epsilon << ',' << r.seed << ',' << r.distinct << ',' << frac << ','
        << r.max_label << ',' << ms << ',' << r.digest << '\n';
  }
  return out.str();
}

}  // namespace neargrace
