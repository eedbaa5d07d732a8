#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aovs/vecset.hpp"

namespace aovs::gen {

enum class Method { orthonormal, random, projection, energy };

Method method_from_label(const std::string& label);
const char* method_label(Method m);

struct GenSpec {
  Method method = Method::random;
  int dim = 1;
  std::int64_t count = 1;
  std::uint64_t seed = 0;
  double oversample = 2.0;
  // Unset means the per-method default: on for random/projection, off for
  // orthonormal/energy.
  std::optional<bool> prune;
};

struct EnergyConfig {
  double p = 8.0;
  int steps = 2000;
  double step_size = 0.01;
  int record_every = 100;
};

struct GenerationReport {
  GenSpec spec;
  std::optional<EnergyConfig> energy_cfg;
  double achieved_max_abs_cos = 0.0;
  std::optional<std::vector<std::pair<int, double>>> trajectory;
  std::int64_t elapsed_ms = 0;
};

// Called once per energy step (and once for the initial state at step 0).
using EnergyObserver = std::function<void(int step, double energy, double max_abs_cos)>;

// Random rotation of a standard-basis subset: count <= dim orthonormal rows.
vec::UnitVectorSet gen_orthonormal(int dim, std::int64_t count, std::uint64_t seed);

// Rows i.i.d. uniform on the unit sphere.
vec::UnitVectorSet gen_random(int dim, std::int64_t count, std::uint64_t seed);

// Haar-orthonormal set of `count` vectors in R^count, truncated to the first
// dim coordinates and renormalized. Falls back to gen_orthonormal when
// count < dim.
vec::UnitVectorSet gen_projection(int dim, std::int64_t count, std::uint64_t seed);

// Riesz-style energy of the set augmented with its antipodes, the tied
// self-pairs excluded: sum over unordered augmented pairs of 1/dist^p.
double pair_energy(const vec::UnitVectorSet& s, double p);

// Projected gradient descent on the augmented energy, starting from
// gen_random(dim, count, seed). Backtracks (halving the step, max 20 times)
// whenever a step would increase the energy, so recorded energy never rises.
std::pair<vec::UnitVectorSet, GenerationReport> gen_energy(int dim, std::int64_t count,
                                                           std::uint64_t seed,
                                                           const EnergyConfig& cfg,
                                                           const EnergyObserver& observer = {});

// Repeatedly drops the vector with the largest max |cos| against the rest
// (ties: larger second-largest, then lowest row index) until target remain.
// Surviving rows keep their original order.
vec::UnitVectorSet prune_greedy(const vec::UnitVectorSet& s, std::int64_t target);

// Dispatch plus the oversample-and-prune pipeline.
std::pair<vec::UnitVectorSet, GenerationReport> generate(
    const GenSpec& spec, std::optional<EnergyConfig> energy_cfg = std::nullopt);

}  // namespace aovs::gen
