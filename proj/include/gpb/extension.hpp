#pragma once

// The dilation parameters (p, B), the conditions that make exp a closed
// embedding, and the semidirect product G_{p,B} = H^n_pol x| R^2.

#include <optional>
#include <string>
#include <vector>

#include "gpb/heisenberg.hpp"
#include "gpb/random.hpp"

namespace gpb {

struct ValidationOptions {
  double commute_tol = 1e-12;
  double independence_tol = 1e-10;
  double spectral_tol = 1e-8;
  /// Directions scanned on [0, pi) when p = (0, 0).
  int scan_points = 360;
};

struct ValidationReport {
  bool commute = false;
  bool m1_ok = false;
  bool m2_ok = false;
  /// Set when m2_ok came from the direction scan (p = 0).
  bool heuristic = false;
  double commute_defect = 0.0;
  /// Direction (s, t) of a skew-similar pencil element, when one was found.
  std::optional<Eigen::Vector2d> m2_witness;
  std::vector<std::string> messages;

  bool ok() const { return commute && m1_ok && m2_ok; }
};

struct DilationParams {
  int n = 1;
  double p1 = 0.0;
  double p2 = 0.0;
  RealMatrix b1;
  RealMatrix b2;
  std::optional<ValidationReport> validation;

  Eigen::Vector2d p() const { return {p1, p2}; }
  double p_of(const Eigen::Vector2d& t) const { return p1 * t(0) + p2 * t(1); }
  RealMatrix b_of(const Eigen::Vector2d& t) const { return t(0) * b1 + t(1) * b2; }
  /// M_k = diag(p_k, B_k, 0), k = 1, 2.
  RealMatrix m_matrix(int k) const;

  static DilationParams make(double p1, double p2, RealMatrix b1, RealMatrix b2);
};

/// Throws DimensionError unless B1, B2 are n x n with finite entries.
void check_shape(const DilationParams& params);

ValidationReport validate_params(const DilationParams& params, const ValidationOptions& options = {});

/// Copy of `params` with the validation report cached.
DilationParams validated(DilationParams params, const ValidationOptions& options = {});

/// Cached report if present, otherwise a fresh one.
ValidationReport validation_of(const DilationParams& params);

struct GroupElement {
  Eigen::Vector2d t = Eigen::Vector2d::Zero();
  RealVector x;
  RealVector y;
  double z = 0.0;

  static GroupElement identity(int n) { return {Eigen::Vector2d::Zero(), RealVector::Zero(n), RealVector::Zero(n), 0.0}; }
};

/// diag(e^{pt}, e^{Bt}, 1).
RealMatrix d_of_t(const DilationParams& params, const Eigen::Vector2d& t);

/// h(e^{Bt} x, e^{pt} e^{-B^T t} y, e^{pt} z).
PolarizedElement alpha(const DilationParams& params, const Eigen::Vector2d& t, const PolarizedElement& h);

GroupElement g_mul(const DilationParams& params, const GroupElement& a, const GroupElement& b);
GroupElement g_inverse(const DilationParams& params, const GroupElement& a);

/// [[e^{pt}, y^T e^{Bt}, z], [0, e^{Bt}, x], [0, 0, 1]]. Requires params to
/// pass validation; throws PreconditionError otherwise.
RealMatrix g_to_matrix(const DilationParams& params, const GroupElement& a);

/// Same matrix without the faithfulness precondition.
RealMatrix g_to_matrix_unchecked(const DilationParams& params, const GroupElement& a);

GroupElement random_element(Rng& rng, int n, double t_range = 1.0, double h_range = 2.0);

/// Largest componentwise |a - b| / max(1, |b|) over (t, x, y, z).
double element_distance(const GroupElement& a, const GroupElement& b);

}  // namespace gpb
