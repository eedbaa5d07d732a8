#include "aovs/generators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "aovs/errors.hpp"
#include "aovs/rng.hpp"

namespace aovs::gen {

namespace {

using vec::MatrixRM;
using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

void require_counts(int dim, std::int64_t count, int min_dim, std::int64_t min_count,
                    const char* fn) {
  if (dim < min_dim)
    throw DomainError(std::string(fn) + ": dim must be >= " + std::to_string(min_dim) +
                      ", got " + std::to_string(dim));
  if (count < min_count)
    throw DomainError(std::string(fn) + ": count must be >= " + std::to_string(min_count) +
                      ", got " + std::to_string(count));
}

MatrixRM gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  MatrixRM m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.gaussian();
  return m;
}

// QR of a square gaussian matrix with the R diagonal signs fixed positive
// gives Haar-distributed orthonormal columns.
Eigen::MatrixXd haar_orthonormal(Eigen::Index n, Rng& rng) {
  const Eigen::MatrixXd a = gaussian_matrix(n, n, rng);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& packed = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j)
    if (packed(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

// Pairwise-cosine matrix with entries clamped to [-1, 1]. Built as a rank
// update on the lower triangle (half the flops of the full product) and
// mirrored; this runs in the inner loop of gen_energy, so it fills a caller
// buffer instead of allocating.
void gram_clamped_into(const MatrixRM& v, MatrixRM& g) {
  g.setZero(v.rows(), v.rows());
  g.selfadjointView<Eigen::Lower>().rankUpdate(v);
  g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
  g = g.cwiseMax(-1.0).cwiseMin(1.0);
}

MatrixRM gram_clamped(const MatrixRM& v) {
  MatrixRM g;
  gram_clamped_into(v, g);
  return g;
}

double max_abs_offdiag_of(const MatrixRM& g) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = i + 1; j < g.cols(); ++j)
      best = std::max(best, std::fabs(g(i, j)));
  return best;
}

// t^n elementwise in place by repeated squaring; scratch holds the squares.
void pow_int_inplace(Eigen::ArrayXXd& t, int n, Eigen::ArrayXXd& scratch) {
  if (n == 1) return;
  scratch = t;
  --n;
  while (true) {
    if (n & 1) t *= scratch;
    n >>= 1;
    if (n == 0) break;
    scratch *= scratch;
  }
}

// t <- t^{-e} elementwise for e = p/2 or (p+2)/2; integer and half-integer
// exponents get cheap paths since those dominate actual use.
void inv_pow_inplace(Eigen::ArrayXXd& t, double e, Eigen::ArrayXXd& scratch) {
  const double fl = std::floor(e);
  if (e == fl && fl >= 1.0 && fl <= 64.0) {
    pow_int_inplace(t, static_cast<int>(fl), scratch);
    t = t.inverse();
  } else if (e == fl + 0.5 && fl >= 0.0 && fl <= 64.0) {
    pow_int_inplace(t, 2 * static_cast<int>(fl) + 1, scratch);
    t = t.rsqrt();
  } else {
    t = t.pow(-e);
  }
}

// Energy over all ordered pairs i != j: (2-2g)^{-p/2} + (2+2g)^{-p/2}.
// Equals the unordered-pair energy of the antipodally augmented set. The
// diagonal is pinned to 1 before the power so it can be subtracted exactly;
// tm/tp/scratch are reusable workspaces sized (k, k) on first use.
double energy_of_ws(const MatrixRM& g, double p, Eigen::ArrayXXd& tm, Eigen::ArrayXXd& tp,
                    Eigen::ArrayXXd& scratch) {
  tm = 2.0 - 2.0 * g.array();
  tp = 2.0 + 2.0 * g.array();
  tm.matrix().diagonal().setConstant(1.0);
  tp.matrix().diagonal().setConstant(1.0);
  inv_pow_inplace(tm, 0.5 * p, scratch);
  inv_pow_inplace(tp, 0.5 * p, scratch);
  return tm.sum() + tp.sum() - 2.0 * static_cast<double>(g.rows());
}

double energy_of(const MatrixRM& g, double p) {
  Eigen::ArrayXXd tm, tp, scratch;
  return energy_of_ws(g, p, tm, tp, scratch);
}

// Free-space gradient rows of the augmented energy: 2p * (C- - C+) V with
// C-+ = (2 -+ 2g)^{-(p+2)/2}, diagonal excluded.
void gradient_ws(const MatrixRM& g, const MatrixRM& v, double p, Eigen::ArrayXXd& am,
                 Eigen::ArrayXXd& ap, Eigen::ArrayXXd& scratch, MatrixRM& grad) {
  am = 2.0 - 2.0 * g.array();
  ap = 2.0 + 2.0 * g.array();
  am.matrix().diagonal().setConstant(1.0);
  ap.matrix().diagonal().setConstant(1.0);
  inv_pow_inplace(am, 0.5 * (p + 2.0), scratch);
  inv_pow_inplace(ap, 0.5 * (p + 2.0), scratch);
  am -= ap;
  am.matrix().diagonal().setZero();
  grad.noalias() = 2.0 * p * (am.matrix() * v);
}

void renormalize_rows(MatrixRM& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double n = m.row(i).norm();
    if (n > 0.0) m.row(i) /= n;
  }
}

}  // namespace

Method method_from_label(const std::string& label) {
  if (label == "orthonormal") return Method::orthonormal;
  if (label == "random") return Method::random;
  if (label == "projection") return Method::projection;
  if (label == "energy") return Method::energy;
  throw DomainError("unknown method '" + label +
                    "' (expected orthonormal, random, projection or energy)");
}

const char* method_label(Method m) {
  switch (m) {
    case Method::orthonormal: return "orthonormal";
    case Method::random: return "random";
    case Method::projection: return "projection";
    case Method::energy: return "energy";
  }
  return "?";
}

vec::UnitVectorSet gen_orthonormal(int dim, std::int64_t count, std::uint64_t seed) {
  require_counts(dim, count, 1, 1, "gen_orthonormal");
  if (count > dim)
    throw DomainError("gen_orthonormal: cannot fit " + std::to_string(count) +
                      " orthonormal vectors in dimension " + std::to_string(dim));
  Rng rng(seed);
  const Eigen::MatrixXd q = haar_orthonormal(dim, rng);
  MatrixRM out = q.leftCols(count).transpose();
  return vec::UnitVectorSet(std::move(out));
}

vec::UnitVectorSet gen_random(int dim, std::int64_t count, std::uint64_t seed) {
  require_counts(dim, count, 1, 1, "gen_random");
  Rng rng(seed);
  MatrixRM m = gaussian_matrix(count, dim, rng);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    while (m.row(i).norm() < 1e-150)
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.gaussian();
  return vec::UnitVectorSet::normalizing(std::move(m));
}

vec::UnitVectorSet gen_projection(int dim, std::int64_t count, std::uint64_t seed) {
  require_counts(dim, count, 1, 1, "gen_projection");
  if (count < dim) return gen_orthonormal(dim, count, seed);
  for (int attempt = 0; attempt <= 10; ++attempt) {
    Rng rng(attempt == 0 ? seed : Rng::derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    const Eigen::MatrixXd q = haar_orthonormal(count, rng);
    MatrixRM trunc = q.topRows(dim).transpose();  // count rows, first dim coords
    if ((trunc.rowwise().norm().array() < 1e-12).any()) continue;
    return vec::UnitVectorSet::normalizing(std::move(trunc));
  }
  throw NumericError("gen_projection: degenerate truncation after 10 resamples");
}

double pair_energy(const vec::UnitVectorSet& s, double p) {
  if (!(p > 0.0)) throw DomainError("pair_energy: p must be positive");
  if (s.count() < 2) throw DomainError("pair_energy: need at least 2 vectors");
  return energy_of(gram_clamped(s.data()), p);
}

std::pair<vec::UnitVectorSet, GenerationReport> gen_energy(int dim, std::int64_t count,
                                                           std::uint64_t seed,
                                                           const EnergyConfig& cfg,
                                                           const EnergyObserver& observer) {
  require_counts(dim, count, 2, 2, "gen_energy");
  if (!(cfg.p > 0.0)) throw DomainError("gen_energy: p must be positive");
  if (!(cfg.step_size > 0.0)) throw DomainError("gen_energy: step_size must be positive");
  if (cfg.steps < 0) throw DomainError("gen_energy: steps must be >= 0");
  if (cfg.record_every < 1) throw DomainError("gen_energy: record_every must be >= 1");

  const auto t0 = Clock::now();
  Rng rng(seed);
  MatrixRM v = gaussian_matrix(count, dim, rng);
  renormalize_rows(v);

  // everything the step loop touches is preallocated once
  Eigen::ArrayXXd tm, tp, scratch;
  MatrixRM g, gt, vt, grad;
  gram_clamped_into(v, g);
  double energy = energy_of_ws(g, cfg.p, tm, tp, scratch);
  int collisions = 0;
  while (!std::isfinite(energy)) {
    if (++collisions > 100)
      throw NumericError("gen_energy: vectors keep colliding after 100 jitters");
    Eigen::Index bi = 0, bj = 1;
    double best = -1.0;
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index j = i + 1; j < g.cols(); ++j)
        if (std::fabs(g(i, j)) > best) {
          best = std::fabs(g(i, j));
          bi = i;
          bj = j;
        }
    (void)bi;
    for (Eigen::Index c = 0; c < v.cols(); ++c) v(bj, c) += 1e-8 * rng.gaussian();
    renormalize_rows(v);
    gram_clamped_into(v, g);
    energy = energy_of_ws(g, cfg.p, tm, tp, scratch);
  }

  std::vector<std::pair<int, double>> trajectory;
  int last_recorded = -1;
  const auto record = [&](int step) {
    trajectory.emplace_back(step, max_abs_offdiag_of(g));
    last_recorded = step;
    if (observer) observer(step, energy, trajectory.back().second);
  };
  record(0);

  double cur_step = cfg.step_size;
  int clean_streak = 0;
  for (int step = 1; step <= cfg.steps; ++step) {
    gradient_ws(g, v, cfg.p, tm, tp, scratch, grad);
    for (Eigen::Index i = 0; i < grad.rows(); ++i) {
      const double n = grad.row(i).norm();
      if (n > 1e-300)
        grad.row(i) /= n;
      else
        grad.row(i).setZero();
    }

    double trial = cur_step;
    bool accepted = false;
    double et = energy;
    for (int halvings = 0; halvings <= 20; ++halvings) {
      vt = v - trial * grad;
      renormalize_rows(vt);
      gram_clamped_into(vt, gt);
      et = energy_of_ws(gt, cfg.p, tm, tp, scratch);
      if (std::isfinite(et) && et <= energy) {
        accepted = true;
        if (halvings == 0) {
          // a run of clean first tries earns the step size back; doubling
          // immediately just re-triggers the backtrack on the next step
          if (++clean_streak >= 3 && cur_step < cfg.step_size) {
            cur_step = std::min(cur_step * 2.0, cfg.step_size);
            clean_streak = 0;
          }
        } else {
          cur_step = trial;
          clean_streak = 0;
        }
        break;
      }
      trial *= 0.5;
    }
    if (accepted) {
      v.swap(vt);
      g.swap(gt);
      energy = et;
    } else {
      cur_step = trial;  // wedged; keep the current state
      clean_streak = 0;
    }
    if (step % cfg.record_every == 0 || step == cfg.steps) record(step);
  }
  if (last_recorded != cfg.steps) record(cfg.steps);

  GenerationReport report;
  report.spec = {Method::energy, dim, count, seed, 1.0, false};
  report.energy_cfg = cfg;
  report.achieved_max_abs_cos = trajectory.back().second;
  report.trajectory = std::move(trajectory);
  report.elapsed_ms = ms_since(t0);
  return {vec::UnitVectorSet::normalizing(std::move(v)), std::move(report)};
}

vec::UnitVectorSet prune_greedy(const vec::UnitVectorSet& s, std::int64_t target) {
  if (target < 2 || target > s.count())
    throw DomainError("prune_greedy: target must be in [2, " + std::to_string(s.count()) +
                      "], got " + std::to_string(target));
  const MatrixRM& m = s.data();
  const Eigen::Index k = m.rows();
  const MatrixRM g = gram_clamped(m);
  std::vector<bool> alive(static_cast<std::size_t>(k), true);
  for (Eigen::Index removed = 0; removed < k - target; ++removed) {
    Eigen::Index worst = -1;
    double worst_max1 = -1.0, worst_max2 = -1.0;
    for (Eigen::Index i = 0; i < k; ++i) {
      if (!alive[i]) continue;
      double max1 = -1.0, max2 = -1.0;
      for (Eigen::Index j = 0; j < k; ++j) {
        if (j == i || !alive[j]) continue;
        const double a = std::fabs(g(i, j));
        if (a > max1) {
          max2 = max1;
          max1 = a;
        } else if (a > max2) {
          max2 = a;
        }
      }
      if (max1 > worst_max1 || (max1 == worst_max1 && max2 > worst_max2)) {
        worst = i;
        worst_max1 = max1;
        worst_max2 = max2;
      }
    }
    alive[worst] = false;
  }
  MatrixRM out(target, m.cols());
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < k; ++i)
    if (alive[i]) out.row(r++) = m.row(i);
  return vec::UnitVectorSet(std::move(out));
}

std::pair<vec::UnitVectorSet, GenerationReport> generate(const GenSpec& spec,
                                                         std::optional<EnergyConfig> energy_cfg) {
  require_counts(spec.dim, spec.count, 1, 1, "generate");
  if (!(spec.oversample >= 1.0) || !std::isfinite(spec.oversample))
    throw DomainError("generate: oversample must be >= 1");

  const auto t0 = Clock::now();
  const bool prune_on =
      spec.prune.value_or(spec.method == Method::random || spec.method == Method::projection);
  std::int64_t raw_count = spec.count;
  if (prune_on && spec.count >= 2)
    raw_count = std::max<std::int64_t>(
        spec.count, static_cast<std::int64_t>(std::ceil(spec.oversample *
                                                        static_cast<double>(spec.count))));

  GenerationReport report;
  report.spec = spec;
  report.spec.prune = prune_on;

  std::optional<vec::UnitVectorSet> out;
  switch (spec.method) {
    case Method::orthonormal:
      out = gen_orthonormal(spec.dim, raw_count, spec.seed);
      break;
    case Method::random:
      out = gen_random(spec.dim, raw_count, spec.seed);
      break;
    case Method::projection:
      out = gen_projection(spec.dim, raw_count, spec.seed);
      break;
    case Method::energy: {
      auto [set, inner] = gen_energy(spec.dim, raw_count, spec.seed,
                                     energy_cfg.value_or(EnergyConfig{}));
      out = std::move(set);
      report.energy_cfg = inner.energy_cfg;
      report.trajectory = std::move(inner.trajectory);
      break;
    }
  }

  if (out->count() > spec.count) out = prune_greedy(*out, spec.count);
  report.achieved_max_abs_cos = out->count() >= 2 ? vec::max_abs_offdiag(*out) : 0.0;
  report.elapsed_ms = ms_since(t0);
  return {std::move(*out), std::move(report)};
}

}  // namespace aovs::gen
