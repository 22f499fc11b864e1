#pragma once

// Isomorphism invariants, certificate checks and the low-dimensional catalog.

#include <optional>
#include <string>
#include <vector>

#include "gpb/lie_algebra.hpp"

namespace gpb {

struct ProfileOptions {
  int samples = 64;
  /// Search grid for the matching direction; a multiple of `samples`.
  int grid = 768;
  double match_tol = 1e-6;
};

/// theta -> (p, c_1, ..., c_2n) of the pencil C(theta) = cos(theta) C_1 +
/// sin(theta) C_2, the k-th coefficient divided by sigma^k with
/// sigma = sqrt(p^2 + sum |lambda_i|^2). The normalization makes the profile
/// independent of how the direction is scaled.
struct PencilProfile {
  RealMatrix c1;
  RealMatrix c2;
  double p1 = 0.0;
  double p2 = 0.0;
  ProfileOptions options;
  std::vector<double> grid_theta;
  std::vector<RealVector> grid_values;
  std::vector<double> grid_sigma;

  RealVector value(double theta, double* sigma = nullptr) const;
  /// Indices into the grid that are sampled.
  std::vector<int> sample_indices() const;
};

PencilProfile pencil_profile(const DilationParams& normalized, const ProfileOptions& options = {});

/// True if every non-degenerate sample of `a` has a matching direction in `b`.
bool profile_covers(const PencilProfile& a, const PencilProfile& b);
bool profiles_match(const PencilProfile& a, const PencilProfile& b);

/// Compares the joint spectra of the normalized C pairs up to the
/// re-parametrizations that fix p. False only when no admissible basis change
/// maps one onto the other.
bool joint_spectra_match(const JointSpectrum& a, const JointSpectrum& b, bool p_nonzero, double tol = 1e-6);

struct InvariantVector {
  int p1 = 0;
  int center_dim = 0;
  int nilradical_dim = 0;
  bool is_nilpotent_algebra = false;
  int case_id = 0;
  std::vector<int> derived_series_dims;
  std::vector<int> lower_central_dims;
  PencilProfile pencil_profile;
  JointSpectrum joint_spectrum;
};

InvariantVector invariant_vector(const DilationParams& params, const ProfileOptions& options = {});

/// Name of the first differing invariant, or nullopt when none differs.
std::optional<std::string> refute_isomorphism(const InvariantVector& a, const InvariantVector& b);
std::optional<std::string> refute_isomorphism(const DilationParams& a, const DilationParams& b);

/// Basis change A of the target's V_M followed by S in Sp(n).
struct Certificate {
  Eigen::Matrix2d a = Eigen::Matrix2d::Identity();
  RealMatrix s;
};

struct CertificateReport {
  bool ok = false;
  double symplectic_defect = 0.0;
  double p_defect = 0.0;
  double c_defect[2] = {0.0, 0.0};
  double scale = 1.0;
  double tolerance = 1e-8;
  /// Bracket defect of the induced map; filled when ok.
  std::optional<double> bracket_defect;
  std::vector<std::string> messages;
};

/// With M~'_i = sum_j a_ij M~_j, checks p~' = p, C~'_k = S C_k S^{-1} and
/// S^T J S = J. Structurally malformed input (shapes, singular A, non-finite
/// entries) throws CertificateError; failed identities are reported.
CertificateReport verify_certificate(const DilationParams& a, const DilationParams& b, const Certificate& cert,
                                     double tol = 1e-8);

/// The induced map g_a -> g_b: blockdiag(A^T, S, 1).
LinearMap certificate_isomorphism(const DilationParams& a, const DilationParams& b, const Certificate& cert);

// ---------------------------------------------------------------------------
// Catalog of the classes for n = 1, 2.

struct CatalogChoices {
  std::vector<double> b{0.6, 0.9};
  std::vector<double> d{0.0, 0.5, 1.0};
  std::vector<double> a{0.5, 1.0};
  std::vector<double> c{0.0, 1.0};
  /// Free parameter of the rotation row (b > 0).
  std::vector<double> rotation_b{0.6, 0.9};
};

struct CatalogEntry {
  std::string label;
  int n = 0;
  int p = 0;
  int row = 0;
  std::vector<std::pair<std::string, double>> values;
  DilationParams params;
};

/// One entry per row and parameter choice. Throws std::invalid_argument for
/// values outside a row's range.
std::vector<CatalogEntry> catalog(int n, const CatalogChoices& choices = {});

struct SeparationReport {
  std::vector<CatalogEntry> entries;
  /// witness[i][j] is the refuting field, or empty when inconclusive.
  std::vector<std::vector<std::string>> witness;

  int inconclusive_off_diagonal() const;
};

SeparationReport separation_report(const std::vector<CatalogEntry>& entries, const ProfileOptions& options = {});

}  // namespace gpb
