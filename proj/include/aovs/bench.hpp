#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aovs/generators.hpp"

namespace aovs::bench {

// One (method x dim x count x seed) sweep. energy_cfg applies to the energy
// method's cells only.
struct BenchGrid {
  std::vector<int> dims;
  std::vector<std::int64_t> counts;
  std::vector<gen::Method> methods;
  std::vector<std::uint64_t> seeds;
  gen::EnergyConfig energy_cfg;
};

struct BenchRow {
  gen::Method method;
  int dim = 0;
  std::int64_t count = 0;
  std::uint64_t seed = 0;
  double max_abs_cos = 0.0;
  std::int64_t elapsed_ms = 0;
};

struct BenchResult {
  std::vector<BenchRow> rows;  // sorted by (method label, dim, count, seed)
  std::map<std::pair<int, std::int64_t>, double> best;  // (dim, count) -> min max|cos|
};

// Runs every cell of the grid. Orthonormal cells with count > dim are not
// runnable and are skipped. threads <= 0 means one worker per hardware
// thread; the thread count never changes any numeric output, only timing.
BenchResult run_benchmark(const BenchGrid& grid, int threads = 0);

// "method,dim,count,seed,max_abs_cos,elapsed_ms" rows.
std::string rows_csv(const BenchResult& result);

// Best-value table oriented like the published one: one row per count (k),
// one column per dim (d). Cells no method could run stay empty.
std::string best_csv(const BenchResult& result);

}  // namespace aovs::bench
