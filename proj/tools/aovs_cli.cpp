#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "aovs/bench.hpp"
#include "aovs/embed_stats.hpp"
#include "aovs/errors.hpp"
#include "aovs/generators.hpp"
#include "aovs/jl_bounds.hpp"
#include "aovs/sphere_geometry.hpp"
#include "aovs/vecset.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// Failures in the execution phase (I/O, malformed data, numerics) exit 1;
// aovs::DomainError escaping to main is an argument problem and exits 2.
struct ExecFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ExecFailure("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw ExecFailure("failed while writing '" + path.string() + "'");
}

// Empty path means stdout.
void emit(const std::string& path, const std::string& text) {
  if (path.empty())
    std::cout << text;
  else
    write_text_file(path, text);
}

void print_json(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int threads_from_env() {
  const char* env = std::getenv("AOVS_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0 || v > 4096)
    throw aovs::DomainError("AOVS_THREADS must be a non-negative integer (0 = auto)");
  return static_cast<int>(v);
}

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Almost-orthogonal vector sets: bounds, generators, embedding statistics"};
  app.require_subcommand(1);

  // ---------------- bounds ----------------
  auto* bounds = app.add_subcommand("bounds", "Counting bounds for almost-orthogonal directions");
  bounds->require_subcommand(1);

  auto* cap = bounds->add_subcommand("cap", "Spherical-cap area bound for dimension and threshold");
  int cap_dim = 0;
  double cap_eps = 0.0;
  cap->add_option("--dim", cap_dim, "Ambient dimension n (>= 2)")->required();
  cap->add_option("--eps", cap_eps, "Cosine threshold in [0, 1)")->required();
  cap->callback([&] {
    const auto r = aovs::geom::area_bound(cap_dim, cap_eps);
    ordered_json j{{"dim", r.n}, {"eps", r.eps}, {"log10_bound", r.log10_bound}};
    if (r.bound) j["bound"] = *r.bound;
    print_json(j);
  });

  auto* jl = bounds->add_subcommand("jl", "Johnson-Lindenstrauss bounds");
  jl->require_subcommand(1);

  auto* mindim = jl->add_subcommand("mindim", "Least embedding dimension for k vectors");
  std::int64_t jl_k = 0;
  double jl_eps = 0.0;
  std::string jl_c = "c8";
  mindim->add_option("--k", jl_k, "Number of vectors (>= 2)")->required();
  mindim->add_option("--eps", jl_eps, "Distortion in (0, 1)")->required();
  mindim->add_option("--c", jl_c, "Constant label: c8, c16, c20, c200, dasgupta-gupta");
  mindim->callback([&] {
    const auto r = aovs::jl::jl_min_dimension(jl_k, jl_eps, aovs::jl::jl_constant_from_label(jl_c));
    print_json(ordered_json{{"k", r.k},
                            {"eps", r.eps},
                            {"constant", {{"label", r.c.label}, {"c", r.c.c}}},
                            {"n_min", r.n_min}});
  });

  auto* distort = jl->add_subcommand("distort", "Cosine interval for distorted orthonormal vectors");
  double distort_eps = 0.0;
  distort->add_option("--eps", distort_eps, "Distortion in (0, 1)")->required();
  distort->callback([&] {
    const auto r = aovs::jl::cosine_distortion(distort_eps);
    print_json(ordered_json{{"eps", r.eps}, {"lower", r.lower}, {"upper", r.upper}});
  });

  auto* count = jl->add_subcommand("count", "Count bound for t-almost orthogonal vectors");
  std::int64_t count_dim = 0;
  double count_t = 0.0;
  bool via_chain = false;
  count->add_option("--dim", count_dim, "Embedding dimension n (>= 1)")->required();
  count->add_option("--threshold", count_t, "Cosine threshold t in (0, 1)")->required();
  count->add_flag("--via-paper-chain", via_chain,
                  "Use the half-threshold chain ln(N+1) = n t^2 / 32");
  count->callback([&] {
    const auto r = via_chain ? aovs::jl::jl_count_bound_paper_chain(count_dim, count_t)
                             : aovs::jl::jl_count_bound(count_dim, count_t);
    ordered_json j{{"dim", r.n},
                   {"threshold", r.t},
                   {"via_paper_chain", via_chain},
                   {"log_count_plus_one", r.log_count_plus_one}};
    if (r.count) {
      j["count"] = *r.count;
      j["count_floor"] = static_cast<std::int64_t>(std::floor(*r.count));
    }
    print_json(j);
  });

  auto* crossover = jl->add_subcommand("crossover", "Least n whose count bound exceeds n");
  double crossover_t = 0.0;
  crossover->add_option("--threshold", crossover_t, "Cosine threshold t in (0, 1)")->required();
  crossover->callback([&] {
    print_json(ordered_json{{"threshold", crossover_t},
                            {"crossover_dim", aovs::jl::jl_crossover_dimension(crossover_t)}});
  });

  // ---------------- generate ----------------
  auto* generate = app.add_subcommand("generate", "Generate an almost-orthogonal vector set");
  std::string gen_method = "random";
  aovs::gen::GenSpec spec;
  aovs::gen::EnergyConfig energy_cfg;
  bool flag_prune = false, flag_no_prune = false;
  std::string gen_out, gen_report;
  generate->add_option("--method", gen_method, "orthonormal, random, projection or energy")
      ->required();
  generate->add_option("--dim", spec.dim, "Vector dimension")->required();
  generate->add_option("--count", spec.count, "Number of vectors")->required();
  generate->add_option("--seed", spec.seed, "RNG seed (default 0)");
  generate->add_option("--oversample", spec.oversample, "Oversample factor used when pruning");
  auto* prune_opt = generate->add_flag("--prune", flag_prune, "Force oversample-and-prune on");
  generate->add_flag("--no-prune", flag_no_prune, "Force pruning off")->excludes(prune_opt);
  generate->add_option("--p", energy_cfg.p, "Energy exponent (energy method)");
  generate->add_option("--steps", energy_cfg.steps, "Gradient steps (energy method)");
  generate->add_option("--step-size", energy_cfg.step_size, "Gradient step size (energy method)");
  generate->add_option("--record-every", energy_cfg.record_every, "Trajectory recording stride");
  generate->add_option("--out", gen_out, "Vector output file (.csv or .f32)")->required();
  generate->add_option("--report", gen_report, "Report JSON file (stdout when omitted)");
  generate->callback([&] {
    spec.method = aovs::gen::method_from_label(gen_method);
    if (flag_prune) spec.prune = true;
    if (flag_no_prune) spec.prune = false;
    const auto format = aovs::vec::format_from_path(gen_out);
    const auto [set, report] = aovs::gen::generate(spec, energy_cfg);
    try {
      aovs::vec::write_matrix(aovs::vec::RawMatrix(set.data()), gen_out, format);
    } catch (const aovs::Error& e) {
      throw ExecFailure(e.what());
    }
    ordered_json j{{"method", aovs::gen::method_label(report.spec.method)},
                   {"dim", report.spec.dim},
                   {"count", report.spec.count},
                   {"seed", report.spec.seed},
                   {"oversample", report.spec.oversample},
                   {"prune", report.spec.prune.value_or(false)},
                   {"achieved_max_abs_cos", report.achieved_max_abs_cos},
                   {"elapsed_ms", report.elapsed_ms}};
    if (report.energy_cfg) {
      j["energy"] = {{"p", report.energy_cfg->p},
                     {"steps", report.energy_cfg->steps},
                     {"step_size", report.energy_cfg->step_size},
                     {"record_every", report.energy_cfg->record_every}};
    }
    if (report.trajectory) {
      auto arr = ordered_json::array();
      for (const auto& [step, value] : *report.trajectory) arr.push_back({step, value});
      j["trajectory"] = std::move(arr);
    }
    emit(gen_report, j.dump(2) + "\n");
  });

  // ---------------- analyze ----------------
  auto* analyze = app.add_subcommand("analyze", "Cosine and norm statistics of an embedding matrix");
  std::string an_in, an_format, an_label, an_stats, an_hist, an_normal;
  std::int64_t an_budget = 2000000;
  std::uint64_t an_seed = 0;
  analyze->add_option("--in", an_in, "Input matrix file")->required();
  analyze->add_option("--format", an_format, "csv or f32bin (inferred from extension when omitted)")
      ->check(CLI::IsMember({"csv", "f32bin"}));
  analyze->add_option("--pair-budget", an_budget,
                      "Max sampled pairs, 0 = all pairs (default 2000000)");
  analyze->add_option("--seed", an_seed, "Pair-sampling seed (default 0)");
  analyze->add_option("--label", an_label, "Source label for the report (default: file name)");
  analyze->add_option("--stats-out", an_stats, "Report JSON file (stdout when omitted)");
  analyze->add_option("--hist-out", an_hist, "Standardized histogram CSV file");
  analyze->add_option("--normal-out", an_normal, "Normal-comparison CSV file");
  analyze->callback([&] {
    if (an_budget < 0) throw aovs::DomainError("--pair-budget must be >= 0");
    const auto format = an_format.empty()
                            ? aovs::vec::format_from_path(an_in)
                            : (an_format == "csv" ? aovs::vec::Format::csv
                                                  : aovs::vec::Format::f32bin);
    const std::string label = an_label.empty() ? fs::path(an_in).filename().string() : an_label;
    try {
      const auto m = aovs::vec::read_matrix(an_in, format);
      const auto report = aovs::stats::analyze_embeddings(m, an_budget, an_seed, label);
      emit(an_stats, aovs::stats::report_to_json(report));
      if (!an_hist.empty()) {
        std::string csv = "bin_lo,bin_hi,count\n";
        const auto& h = report.standardized_histogram;
        for (std::size_t b = 0; b < h.counts.size(); ++b)
          csv += g17(h.bin_edges[b]) + "," + g17(h.bin_edges[b + 1]) + "," +
                 std::to_string(h.counts[b]) + "\n";
        write_text_file(an_hist, csv);
      }
      if (!an_normal.empty())
        write_text_file(an_normal, aovs::stats::normal_comparison_csv(
                                       aovs::stats::compare_to_normal(report)));
    } catch (const ExecFailure&) {
      throw;
    } catch (const aovs::Error& e) {
      throw ExecFailure(e.what());
    }
  });

  // ---------------- benchmark ----------------
  auto* benchmark = app.add_subcommand("benchmark", "Sweep methods over a (dim, count, seed) grid");
  aovs::bench::BenchGrid grid;
  std::vector<std::string> bench_methods;
  std::string bench_out;
  benchmark->add_option("--dims", grid.dims, "Dimensions, comma separated")
      ->required()
      ->delimiter(',');
  benchmark->add_option("--counts", grid.counts, "Vector counts, comma separated")
      ->required()
      ->delimiter(',');
  benchmark->add_option("--methods", bench_methods, "Methods, comma separated")
      ->required()
      ->delimiter(',');
  benchmark->add_option("--seeds", grid.seeds, "Seeds, comma separated")->required()->delimiter(',');
  benchmark->add_option("--p", grid.energy_cfg.p, "Energy exponent for energy cells");
  benchmark->add_option("--steps", grid.energy_cfg.steps, "Gradient steps for energy cells");
  benchmark->add_option("--step-size", grid.energy_cfg.step_size, "Step size for energy cells");
  benchmark->add_option("--record-every", grid.energy_cfg.record_every,
                        "Trajectory stride for energy cells");
  benchmark->add_option("--out", bench_out, "Results CSV path (a companion -best.csv is written)")
      ->required();
  benchmark->callback([&] {
    grid.methods.clear();
    for (const auto& name : bench_methods)
      grid.methods.push_back(aovs::gen::method_from_label(name));
    const int threads = threads_from_env();
    const auto result = aovs::bench::run_benchmark(grid, threads);
    const fs::path out(bench_out);
    const fs::path best =
        out.parent_path() / (out.stem().string() + "-best" + out.extension().string());
    write_text_file(out, aovs::bench::rows_csv(result));
    write_text_file(best, aovs::bench::best_csv(result));
  });

  // ---------------- cap-profile ----------------
  auto* profile = app.add_subcommand("cap-profile", "Cap area fraction as a function of height");
  int prof_dim = 0;
  int prof_points = 401;
  std::string prof_out;
  profile->add_option("--dim", prof_dim, "Ambient dimension n (>= 2)")->required();
  profile->add_option("--points", prof_points, "Grid points over h in [0, 1] (default 401)")
      ->check(CLI::Range(2, 1000000));
  profile->add_option("--out", prof_out, "CSV output path (stdout when omitted)");
  profile->callback([&] {
    std::vector<double> hs(static_cast<std::size_t>(prof_points));
    for (int i = 0; i < prof_points; ++i)
      hs[static_cast<std::size_t>(i)] = static_cast<double>(i) / (prof_points - 1);
    const auto rows = aovs::geom::cap_area_profile(prof_dim, hs);
    std::string csv = "h,fraction\n";
    for (const auto& [h, fraction] : rows) csv += g17(h) + "," + g17(fraction) + "\n";
    emit(prof_out, csv);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const aovs::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ExecFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
