#pragma once

// The Lie algebra g_{p,B} = V_M + V_X + V_Y + V_Z of dimension 2n + 3.
//
// Coordinates are ordered (s1, s2, x_1..x_n, y_1..y_n, z). A linear map between
// two such algebras is a (2n+3) x (2n+3) matrix acting on coordinate columns.

#include "gpb/extension.hpp"

namespace gpb {

class CertificateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using LinearMap = RealMatrix;

struct LieElement {
  Eigen::Vector2d s = Eigen::Vector2d::Zero();
  RealVector x;
  RealVector y;
  double z = 0.0;

  int n() const { return static_cast<int>(x.size()); }
  RealVector coords() const;
  static LieElement from_coords(const RealVector& c);
  static LieElement zero(int n);
  static LieElement basis(int n, int index);
};

inline int lie_dim(int n) { return 2 * n + 3; }

LieElement bracket(const DilationParams& params, const LieElement& u, const LieElement& v);
RealVector bracket(const DilationParams& params, const RealVector& u, const RealVector& v);

/// [[p(s), y^T, z], [0, B(s), x], [0, 0, 0]].
RealMatrix lie_to_matrix(const DilationParams& params, const LieElement& u);

/// diag(B_k, p_k I - B_k^T), so that [M_k, W_w] = W_{C_k w}.
RealMatrix c_matrix(const DilationParams& params, int k);

/// Matrix of v -> [u, v].
RealMatrix ad_matrix(const DilationParams& params, const RealVector& u);

/// max over basis pairs of |[[e_i, e_j], e_k] + cyclic|, absolute.
double jacobi_defect(const DilationParams& params);

/// max over basis pairs of |Phi[e_i, e_j]_a - [Phi e_i, Phi e_j]_b| / (1 + ||Phi||_F^2).
double bracket_defect(const DilationParams& from, const DilationParams& to, const LinearMap& phi);

// ---------------------------------------------------------------------------
// Automorphisms of the Heisenberg algebra V_H, coordinates (w, z) with
// [W_w, W_w~] = Z_{w^T J w~}.

RealVector heis_bracket(const RealVector& a, const RealVector& b);

/// Phi(W_w) = W_{lambda S w} + Z_{u^T w}, Phi(Z_z) = Z_{sign lambda^2 z}.
/// Throws PreconditionError unless S^T J S = sign J and lambda > 0.
LinearMap heis_automorphism(double lambda, const RealVector& u, const RealMatrix& s, int sign,
                            double tol = 1e-9);

/// Same normalization as bracket_defect, on V_H.
double heis_bracket_defect(const LinearMap& phi);

struct HeisAutomorphismData {
  double lambda = 1.0;
  RealVector u;
  RealMatrix s;
  int sign = 1;
};

/// Recover (lambda, u, S, sign) from a bracket-preserving map that fixes V_Z.
/// Throws PreconditionError if the Z column has a W component or vanishes.
HeisAutomorphismData decompose_heis_automorphism(const LinearMap& phi);

// ---------------------------------------------------------------------------
// Sufficient isomorphisms between g_{p,B} and g_{p~,B~}.

enum class IsomorphismKind {
  SymplecticConjugacy,    // S in Sp(n), p~ = p, C~_k = S C_k S^{-1}
  GeneralLinearConjugacy, // V in GL(n), p~ = p, B~_k = V B_k V^{-1}
  BasisChange,            // M~_i = sum_j a_ij M_j
  Scaling,                // M~_k = alpha M_k
};

const char* to_string(IsomorphismKind kind);

struct IsomorphismData {
  IsomorphismKind kind = IsomorphismKind::SymplecticConjugacy;
  RealMatrix s;                                // SymplecticConjugacy
  RealMatrix v;                                // GeneralLinearConjugacy
  Eigen::Matrix2d a = Eigen::Matrix2d::Identity();  // BasisChange
  double alpha = 1.0;                          // Scaling
};

/// The linear map realizing the isomorphism. Checks the hypothesis of the
/// chosen kind against (from, to) and throws CertificateError if it fails.
LinearMap sufficient_isomorphism(const DilationParams& from, const DilationParams& to, const IsomorphismData& data,
                                 double tol = 1e-9);

/// Parameters with M~_i = sum_j a_ij M_j.
DilationParams rebase(const DilationParams& params, const Eigen::Matrix2d& a);
/// Parameters with B~_k = V B_k V^{-1}.
DilationParams conjugate(const DilationParams& params, const RealMatrix& v);
/// Parameters with M~_k = alpha M_k.
DilationParams scaled(const DilationParams& params, double alpha);

struct Normalization {
  DilationParams params;
  Eigen::Matrix2d a = Eigen::Matrix2d::Identity();
};

/// Basis change giving p = (1, 0), or p = (0, 0) unchanged. With k the index
/// of the larger |p_k| (ties pick 1) and o the other one, the rows of A are
/// e_k / p_k and e_o - (p_o / p_k) e_k. Throws PreconditionError if (M1) fails.
Normalization normalize(const DilationParams& params);

// ---------------------------------------------------------------------------
// Structural invariants.

int center_dim(const DilationParams& params, double tol = 1e-9);

/// Directions (s, t) with p(s, t) = 0 and B(s, t) nilpotent, as orthonormal
/// columns. For commuting B this is a subspace: the common real kernel of p
/// and of the joint eigenvalue forms.
RealMatrix nilpotent_directions(const DilationParams& params, double tol = 1e-7);

int nilradical_dim(const DilationParams& params);

/// 1..5, from p1 of the normalized parameters and the dimension of the
/// nilpotent directions.
int structure_case(const DilationParams& params);

/// dims of g, [g, g], [g, [g, g]], ... until the sequence stabilizes.
std::vector<int> lower_central_dims(const DilationParams& params, double tol = 1e-9);
/// dims of g, [g, g], [[g, g], [g, g]], ... until the sequence stabilizes.
std::vector<int> derived_series_dims(const DilationParams& params, double tol = 1e-9);

bool is_nilpotent_algebra(const DilationParams& params);

}  // namespace gpb
