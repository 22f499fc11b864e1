#pragma once

// Seeded property checks on a parameter set: group axioms against the matrix
// model, embeddings, Lie structure and the representations.

#include <optional>
#include <string>
#include <vector>

#include "gpb/representations.hpp"

namespace gpb {

struct CheckResult {
  std::string check;
  double max_error = 0.0;
  double tolerance = 0.0;
  /// Element attaining max_error, when the check is over elements.
  std::optional<GroupElement> worst;

  bool pass() const { return max_error <= tolerance; }
};

bool all_pass(const std::vector<CheckResult>& results);

struct GroupCheckConfig {
  int law_pairs = 1000;
  int exp_pairs = 100;
  int embed_pairs = 500;
  std::uint64_t seed = kDefaultSeed;
  double law_tol = 1e-10;
  double exp_tol = 1e-9;
  double embed_tol = 1e-10;
};

/// Product vs matrix product, associativity, inverses, d(t)d(s) = d(t+s),
/// symplectic and affine embeddings. Uses the unchecked matrix model so that
/// it also runs on parameters that fail validation.
std::vector<CheckResult> group_checks(const DilationParams& params, const GroupCheckConfig& cfg = {});

/// Bracket vs matrix commutator on basis pairs and Jacobi defect on basis triples.
std::vector<CheckResult> lie_checks(const DilationParams& params, double tol = 1e-12);

struct RepCheckConfig {
  int pairs = 50;
  int probes = 5;
  int points = 200;
  std::uint64_t seed = kDefaultSeed;
  double tolerance = 1e-9;
  double factor_tolerance = 1e-10;
  /// Elements checked by quadrature per representation; 0 skips unitarity.
  int unitarity_elements = 1;
  double unitarity_tolerance = 1e-4;
  QuadratureConfig quadrature;
};

/// Gaussian probe on R^{n+1}, optionally restricted to a half-space. With
/// `interior` the probe is negligible within distance 0.2 of the split, so
/// its box stays inside the tagged half-space.
TestFunction random_probe(Rng& rng, int dim, Support tag, bool interior = false);

/// Homomorphism defects of both representations, metaplectic and wavelet
/// factorizations, intertwining on U+ and U-, support violations (reported as
/// a count with tolerance 0) and, when enabled, unitarity.
std::vector<CheckResult> rep_checks(const DilationParams& params, const RepCheckConfig& cfg = {});

}  // namespace gpb
