#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "strip_steiner/point_set.hpp"

namespace strip_steiner {

// Deterministic sampling primitives pinned to mt19937_64 with explicit
// inverse-CDF transforms, so instances reproduce across toolchains.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : engine_(seed) {}
  static constexpr const char* kAlgorithm = "mt19937_64";

  // Uniform in [0, 1) with 53 bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  // Exp(1) by inverse CDF: -ln(1 - u).
  double exponential() { return -std::log1p(-uniform01()); }

 private:
  std::mt19937_64 engine_;
};

struct GenSpec {
  std::size_t n = 1;
  double delta = 1.0;
  std::uint64_t seed = 0;
  std::int64_t scale = kDefaultScale;
};

// Point process: spacings Delta_j ~ Exp(1), x_i the prefix sums (x_1 is the
// first spacing), y_i ~ Uniform[0, delta]; everything quantised at `scale`
// afterwards. Reproducible per seed: all spacings are drawn first, then all
// y-values.
PointSet generate_random_instance(const GenSpec& spec);

// Same process with every spacing rejection-sampled to Delta < delta.
PointSet generate_random_instance_spacing_capped(const GenSpec& spec);

struct HookSpec {
  std::size_t num_hooks = 1;
  std::size_t points_per_hook = 3;
  double delta = 0;                     // 0: derived from the gadget geometry
  std::vector<std::size_t> probe_choices;  // one per hook, each < points_per_hook
  std::int64_t scale = 1;
  Unit band_separation = 0;  // 0: 100x the in-hook horizontal stride
};

// The '<'-shaped hook gadget: hooks stacked top to bottom with interleaved
// integer x-coordinates, connector points q_i at each hook's leftmost height,
// midpoints r_i between consecutive hooks, and one probe point per hook to
// the right at the chosen hook-point height.
PointSet generate_hooks(const HookSpec& spec);

// Point index (into the sorted point set) of the last non-probe point; the
// separator at that index is the one the probes cross.
std::size_t hook_probe_separator(const PointSet& ps, const HookSpec& spec);

struct GeneratorMetadata {
  std::string kind;  // "random" | "hooks"
  std::uint64_t seed = 0;
  std::string prng = Prng::kAlgorithm;
  std::string params;  // rendered key=value list
};

}  // namespace strip_steiner
