#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "hermlab/structure.hpp"

namespace hermlab {

/// Seeded generator with platform-independent draws (the standard
/// distributions are implementation-defined, so they are avoided here).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double gaussian();
  /// Complex normal with E|z|^2 = 1.
  Complex complex_gaussian();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Independent stream seed for task `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Haar-ish random unitary (QR of a complex Gaussian matrix, phases fixed).
Eigen::MatrixXcd random_unitary(int n, Rng& rng);

/// Complex Gaussian C (antisymmetrized) and D; generally not a Lie algebra.
UnitaryStructure random_structure(int n, Rng& rng, double scale = 1.0);

}  // namespace hermlab
