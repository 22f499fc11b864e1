#pragma once

// Small dense matrix primitives and spectral predicates.
//
// Dimensions here never exceed a dozen or so, so everything is built on
// dynamic Eigen matrices and favours clarity over speed.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gpb {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Default tolerances. Algebraic identities are checked relative to 1e-9,
/// spectral predicates against 1e-8.
struct Tolerances {
  double identity = 1e-9;
  double spectral = 1e-8;
  double commute = 1e-12;
  double symplectic = 1e-9;
};

struct SpectralOptions {
  /// Rank threshold for (A - lambda I), relative to ||A||_F.
  double rank_tol = 1e-8;
  /// Eigenvalues closer than cluster_tol * max(1, ||A||_F) are treated as
  /// one eigenvalue. Loose enough to regroup split Jordan blocks of size <= 3.
  double cluster_tol = 1e-4;
};

struct Eigenvalue {
  Complex value;
  int multiplicity = 1;
};

struct Spectrum {
  std::vector<Eigenvalue> eigenvalues;
  bool semisimple = true;

  int dimension() const;
};

void require_square(const RealMatrix& a, const char* what);

/// e^A by scaling and squaring with a degree-13 Pade approximant. Nilpotent
/// input uses the terminating series instead.
RealMatrix mat_exp(const RealMatrix& a);

Spectrum spectrum(const RealMatrix& a, const SpectralOptions& options = {});

/// ||A^n|| <= tol * (1 + ||A||^n), Frobenius norms.
bool is_nilpotent(const RealMatrix& a, double tol = 1e-8);

/// A real matrix is similar to a real skew-symmetric one iff it is
/// semisimple with purely imaginary spectrum.
bool is_skew_similar(const RealMatrix& a, double tol = 1e-8);

RealMatrix commutator(const RealMatrix& a, const RealMatrix& b);

/// The 2n x 2n matrix [[0, -I], [I, 0]].
RealMatrix symplectic_unit(int n);

/// ||S^T J S - sign J||_F / (1 + ||S||_F^2).
double symplectic_defect(const RealMatrix& s, int sign = 1);
bool is_symplectic(const RealMatrix& s, int sign = 1, double tol = 1e-9);

int numerical_rank(const RealMatrix& a, double tol);
int numerical_rank(const ComplexMatrix& a, double tol);

/// Orthonormal basis (columns) of the numerical null space.
RealMatrix null_space(const RealMatrix& a, double tol);

/// Coefficients {c_1, ..., c_n} of det(xI - A) = x^n + c_1 x^{n-1} + ... + c_n.
std::vector<double> characteristic_polynomial(const RealMatrix& a);

double max_abs(const RealMatrix& a);

/// Largest entrywise |a - b| / max(1, |b|).
double max_relative_error(const RealMatrix& a, const RealMatrix& b);

// ---------------------------------------------------------------------------
// Joint spectrum of a commuting pair.
//
// For commuting A1, A2 every eigenvalue of s A1 + t A2 is a linear form
// l(s, t) = s * first + t * second. Each joint generalized eigenspace carries
// such a form together with the nilpotent pencil N(s, t) = s N1 + t N2 it
// induces; the ranks of N at a generic direction and the directions on which
// N vanishes are similarity invariants of the pair.

struct JointEigenspace {
  Complex first;
  Complex second;
  int multiplicity = 0;
  /// rank of N(d)^q, q = 1..multiplicity, at the generic direction d.
  std::vector<int> nilpotent_ranks;
  /// Dimension of {(s, t) real : N(s, t) = 0}.
  int kernel_dim = 0;
  /// Spanning vector when kernel_dim == 1 (first nonzero entry positive).
  Eigen::Vector2d kernel_direction = Eigen::Vector2d::Zero();

  Complex value(const Eigen::Vector2d& st) const { return first * st(0) + second * st(1); }
};

struct JointSpectrum {
  std::vector<JointEigenspace> spaces;
  Eigen::Vector2d generic_direction = Eigen::Vector2d::UnitX();
  double scale = 0.0;

  int dimension() const;
  /// Real directions (s, t) on which every form vanishes, as columns.
  RealMatrix common_kernel(double tol) const;
};

JointSpectrum joint_spectrum(const RealMatrix& a1, const RealMatrix& a2,
                             const SpectralOptions& options = {});

}  // namespace gpb
