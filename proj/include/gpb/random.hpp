#pragma once

// Seeded sampling helpers. Uniforms are built from raw mt19937_64 bits so
// streams are identical across standard libraries.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "gpb/matrix_core.hpp"

namespace gpb {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    // Box-Muller; 1 - u keeps the log argument away from zero.
    const double u = 1.0 - uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
  }

  RealVector uniform_vector(Eigen::Index n, double lo, double hi) {
    RealVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(lo, hi);
    return v;
  }

  RealMatrix uniform_matrix(Eigen::Index rows, Eigen::Index cols, double lo, double hi) {
    RealMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = uniform(lo, hi);
    return m;
  }

  RealMatrix normal_matrix(Eigen::Index rows, Eigen::Index cols) {
    RealMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal();
    return m;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Haar-ish orthogonal matrix from the QR factor of a gaussian matrix.
RealMatrix random_orthogonal(Rng& rng, int n);

/// exp of a random element of sp(n): J * (symmetric), scaled by `scale`.
RealMatrix random_symplectic(Rng& rng, int n, double scale = 0.5);

/// A random matrix with condition number at most about `cond`.
RealMatrix random_well_conditioned(Rng& rng, int n, double cond = 10.0);

}  // namespace gpb
