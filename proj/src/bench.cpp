#include "aovs/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <set>
#include <string>
#include <thread>

#include "aovs/errors.hpp"

namespace aovs::bench {

namespace {

struct Cell {
  gen::Method method;
  int dim;
  std::int64_t count;
  std::uint64_t seed;
};

BenchRow run_cell(const Cell& cell, const gen::EnergyConfig& energy_cfg) {
  gen::GenSpec spec;
  spec.method = cell.method;
  spec.dim = cell.dim;
  spec.count = cell.count;
  spec.seed = cell.seed;
  const auto [set, report] =
      cell.method == gen::Method::energy
          ? gen::generate(spec, energy_cfg)
          : gen::generate(spec);
  (void)set;
  return {cell.method, cell.dim, cell.count, cell.seed, report.achieved_max_abs_cos,
          report.elapsed_ms};
}

}  // namespace

BenchResult run_benchmark(const BenchGrid& grid, int threads) {
  if (grid.dims.empty() || grid.counts.empty() || grid.methods.empty() || grid.seeds.empty())
    throw DomainError("run_benchmark: dims, counts, methods and seeds must all be nonempty");
  for (const int d : grid.dims)
    if (d < 2) throw DomainError("run_benchmark: dims must be >= 2, got " + std::to_string(d));

  std::vector<Cell> cells;
  for (const auto method : grid.methods)
    for (const int dim : grid.dims)
      for (const auto count : grid.counts) {
        if (method == gen::Method::orthonormal && count > dim) continue;
        for (const auto seed : grid.seeds) cells.push_back({method, dim, count, seed});
      }

  std::vector<BenchRow> rows(cells.size());
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&] {
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        rows[i] = run_cell(cells[i], grid.energy_cfg);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, cells.size()));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    const int ml = std::string_view(gen::method_label(a.method))
                       .compare(gen::method_label(b.method));
    if (ml != 0) return ml < 0;
    if (a.dim != b.dim) return a.dim < b.dim;
    if (a.count != b.count) return a.count < b.count;
    return a.seed < b.seed;
  });

  BenchResult result;
  result.rows = std::move(rows);
  for (const auto& row : result.rows) {
    const auto key = std::make_pair(row.dim, row.count);
    const auto it = result.best.find(key);
    if (it == result.best.end() || row.max_abs_cos < it->second)
      result.best[key] = row.max_abs_cos;
  }
  return result;
}

std::string rows_csv(const BenchResult& result) {
  std::string out = "method,dim,count,seed,max_abs_cos,elapsed_ms\n";
  char buf[192];
  for (const auto& row : result.rows) {
    std::snprintf(buf, sizeof(buf), "%s,%d,%lld,%llu,%.17g,%lld\n", gen::method_label(row.method),
                  row.dim, static_cast<long long>(row.count),
                  static_cast<unsigned long long>(row.seed), row.max_abs_cos,
                  static_cast<long long>(row.elapsed_ms));
    out += buf;
  }
  return out;
}

std::string best_csv(const BenchResult& result) {
  std::set<int> dims;
  std::set<std::int64_t> counts;
  for (const auto& [key, value] : result.best) {
    dims.insert(key.first);
    counts.insert(key.second);
  }
  std::string out = "count";
  for (const int d : dims) out += "," + std::to_string(d);
  out += "\n";
  char buf[64];
  for (const auto k : counts) {
    out += std::to_string(k);
    for (const int d : dims) {
      out += ",";
      const auto it = result.best.find({d, k});
      if (it != result.best.end()) {
        std::snprintf(buf, sizeof(buf), "%.17g", it->second);
        out += buf;
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace aovs::bench
