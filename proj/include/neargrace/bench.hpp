#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "neargrace/embedder.hpp"

namespace neargrace {

struct BenchRow {
  std::string family;
  int n = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  int distinct = 0;
  double fraction = 0.0;  // distinct / n
  Label max_label = 0;
  double elapsed_ms = 0.0;
  std::string digest;  // of the stage log
};

struct BenchGrid {
  std::vector<std::string> families;
  std::vector<int> sizes;
  std::vector<std::uint64_t> seeds;
  double epsilon = 0.2;
  int threads = 1;
  NearGracefulOptions options;
};

/// Runs every (family, n, seed) cell; rows come back sorted by
/// (family, n, seed) whatever the completion order.
std::vector<BenchRow> run_bench(const BenchGrid& grid);

BenchRow bench_cell(const std::string& family, int n, double epsilon, std::uint64_t seed,
                    const NearGracefulOptions& options = {});

/// 16 hex digits of FNV-1a over the stage names and details.
std::string stage_digest(const std::vector<StageEntry>& log);

inline constexpr const char* kBenchHeader = "family,n,epsilon,seed,distinct,fraction,max_label,elapsed_ms,digest";
std::string to_csv(const std::vector<BenchRow>& rows);

}  // namespace neargrace
