#include "gpb/lie_algebra.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace gpb {

RealVector LieElement::coords() const {
  const int k = n();
  RealVector c(lie_dim(k));
  c << s, x, y, z;
  return c;
}

LieElement LieElement::from_coords(const RealVector& c) {
  if (c.size() < 5 || (c.size() - 3) % 2 != 0) throw DimensionError("LieElement: coordinate length must be 2n + 3");
  const auto n = (c.size() - 3) / 2;
  return {c.head<2>(), c.segment(2, n), c.segment(2 + n, n), c(2 * n + 2)};
}

LieElement LieElement::zero(int n) { return {Eigen::Vector2d::Zero(), RealVector::Zero(n), RealVector::Zero(n), 0.0}; }

LieElement LieElement::basis(int n, int index) {
  RealVector c = RealVector::Zero(lie_dim(n));
  c(index) = 1.0;
  return from_coords(c);
}

namespace {

void require_lie(const DilationParams& params, const LieElement& u) {
  if (u.x.size() != params.n || u.y.size() != params.n) throw DimensionError("Lie element dimension mismatch");
}

}  // namespace

LieElement bracket(const DilationParams& params, const LieElement& u, const LieElement& v) {
  require_lie(params, u);
  require_lie(params, v);
  const RealMatrix bu = params.b_of(u.s);
  const RealMatrix bv = params.b_of(v.s);
  const double pu = params.p_of(u.s);
  const double pv = params.p_of(v.s);
  LieElement out;
  out.x = bu * v.x - bv * u.x;
  out.y = (pu * v.y - bu.transpose() * v.y) - (pv * u.y - bv.transpose() * u.y);
  out.z = pu * v.z - pv * u.z + u.y.dot(v.x) - v.y.dot(u.x);
  return out;
}

RealVector bracket(const DilationParams& params, const RealVector& u, const RealVector& v) {
  return bracket(params, LieElement::from_coords(u), LieElement::from_coords(v)).coords();
}

RealMatrix lie_to_matrix(const DilationParams& params, const LieElement& u) {
  require_lie(params, u);
  const int n = params.n;
  RealMatrix m = RealMatrix::Zero(n + 2, n + 2);
  m(0, 0) = params.p_of(u.s);
  m.block(0, 1, 1, n) = u.y.transpose();
  m(0, n + 1) = u.z;
  m.block(1, 1, n, n) = params.b_of(u.s);
  m.block(1, n + 1, n, 1) = u.x;
  return m;
}

RealMatrix c_matrix(const DilationParams& params, int k) {
  if (k != 1 && k != 2) throw std::invalid_argument("c_matrix: k must be 1 or 2");
  const int n = params.n;
  const RealMatrix& b = k == 1 ? params.b1 : params.b2;
  const double p = k == 1 ? params.p1 : params.p2;
  RealMatrix c = RealMatrix::Zero(2 * n, 2 * n);
  c.topLeftCorner(n, n) = b;
  c.bottomRightCorner(n, n) = p * RealMatrix::Identity(n, n) - b.transpose();
  return c;
}

RealMatrix ad_matrix(const DilationParams& params, const RealVector& u) {
  const int d = lie_dim(params.n);
  if (u.size() != d) throw DimensionError("ad_matrix: coordinate length mismatch");
  RealMatrix ad(d, d);
  for (int j = 0; j < d; ++j) ad.col(j) = bracket(params, u, RealVector::Unit(d, j));
  return ad;
}

double jacobi_defect(const DilationParams& params) {
  const int d = lie_dim(params.n);
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        const RealVector a = RealVector::Unit(d, i);
        const RealVector b = RealVector::Unit(d, j);
        const RealVector c = RealVector::Unit(d, k);
        const RealVector sum = bracket(params, bracket(params, a, b), c) + bracket(params, bracket(params, b, c), a) +
                               bracket(params, bracket(params, c, a), b);
        worst = std::max(worst, sum.cwiseAbs().maxCoeff());
      }
  return worst;
}

double bracket_defect(const DilationParams& from, const DilationParams& to, const LinearMap& phi) {
  const int d = lie_dim(from.n);
  if (to.n != from.n || phi.rows() != d || phi.cols() != d) throw DimensionError("bracket_defect: shape mismatch");
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const RealVector lhs = phi * bracket(from, RealVector::Unit(d, i), RealVector::Unit(d, j));
      const RealVector rhs = bracket(to, phi.col(i), phi.col(j));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return worst / (1.0 + phi.squaredNorm());
}

RealVector heis_bracket(const RealVector& a, const RealVector& b) {
  if (a.size() != b.size() || a.size() < 3 || a.size() % 2 == 0) throw DimensionError("heis_bracket: expected length 2n + 1");
  const auto m = a.size() - 1;
  RealVector out = RealVector::Zero(a.size());
  out(m) = symplectic_form(a.head(m), b.head(m));
  return out;
}

LinearMap heis_automorphism(double lambda, const RealVector& u, const RealMatrix& s, int sign, double tol) {
  if (!(lambda > 0.0)) throw PreconditionError("heis_automorphism: lambda must be positive");
  if (sign != 1 && sign != -1) throw PreconditionError("heis_automorphism: sign must be +1 or -1");
  if (s.rows() != s.cols() || s.rows() % 2 != 0 || u.size() != s.rows())
    throw DimensionError("heis_automorphism: S must be 2n x 2n and u of length 2n");
  if (!is_symplectic(s, sign, tol)) throw PreconditionError("heis_automorphism: S^T J S != sign J");
  const auto m = s.rows();
  LinearMap phi = LinearMap::Zero(m + 1, m + 1);
  phi.topLeftCorner(m, m) = lambda * s;
  phi.block(m, 0, 1, m) = u.transpose();
  phi(m, m) = sign * lambda * lambda;
  return phi;
}

double heis_bracket_defect(const LinearMap& phi) {
  const auto d = phi.rows();
  if (phi.cols() != d || d < 3 || d % 2 == 0) throw DimensionError("heis_bracket_defect: expected (2n+1) square");
  double worst = 0.0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const RealVector lhs = phi * heis_bracket(RealVector::Unit(d, i), RealVector::Unit(d, j));
      const RealVector rhs = heis_bracket(phi.col(i), phi.col(j));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return worst / (1.0 + phi.squaredNorm());
}

HeisAutomorphismData decompose_heis_automorphism(const LinearMap& phi) {
  const auto d = phi.rows();
  if (phi.cols() != d || d < 3 || d % 2 == 0) throw DimensionError("decompose_heis_automorphism: expected (2n+1) square");
  const auto m = d - 1;
  const double a22 = phi(m, m);
  if (phi.col(m).head(m).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + std::abs(a22)))
    throw PreconditionError("decompose_heis_automorphism: Phi(Z) leaves V_Z");
  if (a22 == 0.0) throw PreconditionError("decompose_heis_automorphism: Phi(Z) = 0");
  HeisAutomorphismData out;
  out.lambda = std::sqrt(std::abs(a22));
  out.sign = a22 > 0 ? 1 : -1;
  out.s = phi.topLeftCorner(m, m) / out.lambda;
  out.u = phi.block(m, 0, 1, m).transpose();
  return out;
}

const char* to_string(IsomorphismKind kind) {
  switch (kind) {
    case IsomorphismKind::SymplecticConjugacy: return "symplectic_conjugacy";
    case IsomorphismKind::GeneralLinearConjugacy: return "general_linear_conjugacy";
    case IsomorphismKind::BasisChange: return "basis_change";
    case IsomorphismKind::Scaling: return "scaling";
  }
  return "unknown";
}

namespace {

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

bool close(const RealMatrix& a, const RealMatrix& b, double tol) {
  return (a - b).norm() <= tol * std::max(1.0, b.norm());
}

LinearMap blockdiag(const Eigen::Matrix2d& top, const RealMatrix& middle) {
  const auto m = middle.rows();
  LinearMap phi = LinearMap::Zero(m + 3, m + 3);
  phi.topLeftCorner<2, 2>() = top;
  phi.block(2, 2, m, m) = middle;
  phi(m + 2, m + 2) = 1.0;
  return phi;
}

LinearMap symplectic_case(const DilationParams& from, const DilationParams& to, const RealMatrix& s, double tol) {
  const int n = from.n;
  if (s.rows() != 2 * n || s.cols() != 2 * n) throw CertificateError("S must be 2n x 2n");
  if (!is_symplectic(s, 1, tol)) throw CertificateError("S is not symplectic");
  if (!close(to.p1, from.p1, tol) || !close(to.p2, from.p2, tol)) throw CertificateError("p differs");
  for (int k = 1; k <= 2; ++k) {
    const RealMatrix ck = c_matrix(from, k);
    const RealMatrix tk = c_matrix(to, k);
    const double defect = (tk * s - s * ck).norm();
    if (defect > tol * (1.0 + s.norm() * (ck.norm() + tk.norm())))
      throw CertificateError("C~_k S != S C_k for k = " + std::to_string(k));
  }
  return blockdiag(Eigen::Matrix2d::Identity(), s);
}

}  // namespace

LinearMap sufficient_isomorphism(const DilationParams& from, const DilationParams& to, const IsomorphismData& data,
                                 double tol) {
  check_shape(from);
  check_shape(to);
  if (from.n != to.n) throw CertificateError("dimension mismatch");
  const int n = from.n;
  switch (data.kind) {
    case IsomorphismKind::SymplecticConjugacy:
      return symplectic_case(from, to, data.s, tol);
    case IsomorphismKind::GeneralLinearConjugacy: {
      if (data.v.rows() != n || data.v.cols() != n) throw CertificateError("V must be n x n");
      Eigen::FullPivLU<RealMatrix> lu(data.v);
      lu.setThreshold(1e-12);
      if (!lu.isInvertible()) throw CertificateError("V is singular");
      const RealMatrix vinv = lu.inverse();
      RealMatrix s = RealMatrix::Zero(2 * n, 2 * n);
      s.topLeftCorner(n, n) = data.v;
      s.bottomRightCorner(n, n) = vinv.transpose();
      if (!close(to.b1, data.v * from.b1 * vinv, tol) || !close(to.b2, data.v * from.b2 * vinv, tol))
        throw CertificateError("B~_k != V B_k V^{-1}");
      return symplectic_case(from, to, s, tol);
    }
    case IsomorphismKind::BasisChange: {
      const Eigen::Matrix2d& a = data.a;
      if (!a.allFinite() || std::abs(a.determinant()) <= 1e-12 * std::max(1.0, a.squaredNorm()))
        throw CertificateError("A is singular");
      const DilationParams expected = rebase(from, a);
      if (!close(to.p1, expected.p1, tol) || !close(to.p2, expected.p2, tol) || !close(to.b1, expected.b1, tol) ||
          !close(to.b2, expected.b2, tol))
        throw CertificateError("target is not the basis change of the source");
      return blockdiag(a.inverse().transpose(), RealMatrix::Identity(2 * n, 2 * n));
    }
    case IsomorphismKind::Scaling: {
      if (data.alpha == 0.0 || !std::isfinite(data.alpha)) throw CertificateError("alpha must be nonzero");
      IsomorphismData basis{IsomorphismKind::BasisChange, {}, {}, data.alpha * Eigen::Matrix2d::Identity(), 1.0};
      return sufficient_isomorphism(from, to, basis, tol);
    }
  }
  throw CertificateError("unknown isomorphism kind");
}

DilationParams rebase(const DilationParams& params, const Eigen::Matrix2d& a) {
  DilationParams out;
  out.n = params.n;
  out.p1 = a(0, 0) * params.p1 + a(0, 1) * params.p2;
  out.p2 = a(1, 0) * params.p1 + a(1, 1) * params.p2;
  out.b1 = a(0, 0) * params.b1 + a(0, 1) * params.b2;
  out.b2 = a(1, 0) * params.b1 + a(1, 1) * params.b2;
  return out;
}

DilationParams conjugate(const DilationParams& params, const RealMatrix& v) {
  if (v.rows() != params.n || v.cols() != params.n) throw DimensionError("conjugate: V must be n x n");
  const RealMatrix vinv = v.inverse();
  DilationParams out = params;
  out.validation.reset();
  out.b1 = v * params.b1 * vinv;
  out.b2 = v * params.b2 * vinv;
  return out;
}

DilationParams scaled(const DilationParams& params, double alpha) {
  return rebase(params, alpha * Eigen::Matrix2d::Identity());
}

Normalization normalize(const DilationParams& params) {
  const ValidationReport report = validation_of(params);
  if (!report.m1_ok) throw PreconditionError("normalize: (M1) fails");
  Normalization out;
  if (params.p1 == 0.0 && params.p2 == 0.0) {
    out.params = params;
    return out;
  }
  const int k = std::abs(params.p2) > std::abs(params.p1) ? 1 : 0;
  const int o = 1 - k;
  const Eigen::Vector2d p = params.p();
  Eigen::Matrix2d a = Eigen::Matrix2d::Zero();
  a(0, k) = 1.0 / p(k);
  a(1, o) = 1.0;
  a(1, k) = -p(o) / p(k);
  out.a = a;
  out.params = rebase(params, a);
  // exact values for the normalized p
  out.params.p1 = 1.0;
  out.params.p2 = 0.0;
  return out;
}

namespace {

double algebra_scale(const DilationParams& params) {
  return std::max({1.0, std::abs(params.p1), std::abs(params.p2), params.b1.norm(), params.b2.norm()});
}

/// Orthonormal basis of the column range.
RealMatrix range_of(const RealMatrix& m, double tol) {
  if (m.cols() == 0) return RealMatrix(m.rows(), 0);
  Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeThinU);
  const auto rank = (svd.singularValues().array() > tol).count();
  return svd.matrixU().leftCols(rank);
}

}  // namespace

int center_dim(const DilationParams& params, double tol) {
  const int d = lie_dim(params.n);
  RealMatrix stacked(d * d, d);
  for (int i = 0; i < d; ++i) stacked.block(i * d, 0, d, d) = ad_matrix(params, RealVector::Unit(d, i));
  return static_cast<int>(null_space(stacked, tol * algebra_scale(params)).cols());
}

RealMatrix nilpotent_directions(const DilationParams& params, double tol) {
  const JointSpectrum js = joint_spectrum(params.b1, params.b2);
  RealMatrix rows(1 + 2 * js.spaces.size(), 2);
  rows.row(0) << params.p1, params.p2;
  for (std::size_t i = 0; i < js.spaces.size(); ++i) {
    rows.row(1 + 2 * i) << js.spaces[i].first.real(), js.spaces[i].second.real();
    rows.row(2 + 2 * i) << js.spaces[i].first.imag(), js.spaces[i].second.imag();
  }
  return null_space(rows, tol * algebra_scale(params));
}

int nilradical_dim(const DilationParams& params) {
  return 2 * params.n + 1 + static_cast<int>(nilpotent_directions(params).cols());
}

int structure_case(const DilationParams& params) {
  const Normalization norm = normalize(params);
  const int k = static_cast<int>(nilpotent_directions(norm.params).cols());
  if (norm.params.p1 == 1.0) return k == 0 ? 1 : 2;
  return 3 + k;
}

std::vector<int> lower_central_dims(const DilationParams& params, double tol) {
  const int d = lie_dim(params.n);
  const double t = tol * algebra_scale(params);
  std::vector<RealMatrix> ads;
  for (int i = 0; i < d; ++i) ads.push_back(ad_matrix(params, RealVector::Unit(d, i)));
  RealMatrix current = RealMatrix::Identity(d, d);
  std::vector<int> dims{d};
  while (current.cols() > 0) {
    RealMatrix images(d, d * current.cols());
    for (int i = 0; i < d; ++i) images.middleCols(i * current.cols(), current.cols()) = ads[i] * current;
    RealMatrix next = range_of(images, t);
    if (next.cols() == current.cols()) break;
    dims.push_back(static_cast<int>(next.cols()));
    current = std::move(next);
  }
  return dims;
}

std::vector<int> derived_series_dims(const DilationParams& params, double tol) {
  const int d = lie_dim(params.n);
  const double t = tol * algebra_scale(params);
  RealMatrix current = RealMatrix::Identity(d, d);
  std::vector<int> dims{d};
  while (current.cols() > 0) {
    const auto c = current.cols();
    RealMatrix images(d, std::max<Eigen::Index>(1, c * (c - 1) / 2));
    images.setZero();
    Eigen::Index col = 0;
    for (Eigen::Index i = 0; i < c; ++i)
      for (Eigen::Index j = i + 1; j < c; ++j) images.col(col++) = bracket(params, RealVector(current.col(i)), RealVector(current.col(j)));
    RealMatrix next = range_of(images, t);
    if (next.cols() == current.cols()) break;
    dims.push_back(static_cast<int>(next.cols()));
    current = std::move(next);
  }
  return dims;
}

bool is_nilpotent_algebra(const DilationParams& params) { return lower_central_dims(params).back() == 0; }

}  // namespace gpb
