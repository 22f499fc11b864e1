#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gpb/matrix_core.hpp"

namespace gpb {

int JointSpectrum::dimension() const {
  int total = 0;
  for (const auto& s : spaces) total += s.multiplicity;
  return total;
}

RealMatrix JointSpectrum::common_kernel(double tol) const {
  RealMatrix rows(2 * spaces.size(), 2);
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    rows.row(2 * i) << spaces[i].first.real(), spaces[i].second.real();
    rows.row(2 * i + 1) << spaces[i].first.imag(), spaces[i].second.imag();
  }
  if (spaces.empty()) return RealMatrix::Identity(2, 2);
  return null_space(rows, tol * std::max(scale, 1e-300));
}

namespace {

struct Cluster {
  Complex value;
  int multiplicity;
};

std::vector<Cluster> clusters_of(const RealMatrix& r, double tol) {
  Eigen::EigenSolver<RealMatrix> solver(r, false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("joint_spectrum: eigenvalue iteration did not converge", r.norm());
  const ComplexVector values = solver.eigenvalues();
  // single linkage, same rule as spectrum()
  const auto n = values.size();
  std::vector<int> label(n);
  for (Eigen::Index i = 0; i < n; ++i) label[i] = static_cast<int>(i);
  auto root = [&](int i) {
    while (label[i] != i) i = label[i] = label[label[i]];
    return i;
  };
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(values(i) - values(j)) <= tol) label[root(i)] = root(j);
  std::vector<Cluster> out;
  std::vector<int> roots;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int r0 = root(i);
    if (std::find(roots.begin(), roots.end(), r0) != roots.end()) continue;
    roots.push_back(r0);
    Complex sum = 0.0;
    int count = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (root(j) == r0) {
        sum += values(j);
        ++count;
      }
    out.push_back({sum / static_cast<double>(count), count});
  }
  return out;
}

double min_gap(const std::vector<Cluster>& cs) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j) gap = std::min(gap, std::abs(cs[i].value - cs[j].value));
  return gap;
}

ComplexMatrix matrix_power(const ComplexMatrix& m, int q) {
  ComplexMatrix out = ComplexMatrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < q; ++i) out = out * m;
  return out;
}

}  // namespace

JointSpectrum joint_spectrum(const RealMatrix& a1, const RealMatrix& a2, const SpectralOptions& options) {
  require_square(a1, "joint_spectrum");
  require_square(a2, "joint_spectrum");
  if (a1.rows() != a2.rows()) throw DimensionError("joint_spectrum: dimension mismatch");
  const auto dim = a1.rows();

  JointSpectrum out;
  out.scale = std::max(a1.norm(), a2.norm());
  if (out.scale == 0.0) {
    JointEigenspace zero;
    zero.multiplicity = static_cast<int>(dim);
    zero.nilpotent_ranks.assign(dim, 0);
    zero.kernel_dim = 2;
    out.spaces.push_back(zero);
    return out;
  }
  const double scale = out.scale;

  // Pick the candidate direction that separates the most eigenvalues.
  static constexpr double kAngles[] = {0.5772156649015329, 1.1319311740041543, 2.2360679774997896,
                                       2.718281828459045,  0.3183098861837907, 1.4142135623730951,
                                       3.0000000000000000};
  std::vector<Cluster> best;
  double best_angle = kAngles[0];
  double best_gap = -1.0;
  for (double angle : kAngles) {
    const RealMatrix r = std::cos(angle) * a1 + std::sin(angle) * a2;
    auto cs = clusters_of(r, options.cluster_tol * scale);
    const double gap = cs.size() > 1 ? min_gap(cs) : scale;
    if (cs.size() > best.size() || (cs.size() == best.size() && gap > best_gap)) {
      best = std::move(cs);
      best_angle = angle;
      best_gap = gap;
    }
  }
  const Eigen::Vector2d d0(std::cos(best_angle), std::sin(best_angle));
  out.generic_direction = d0;
  const ComplexMatrix r = (d0(0) * a1 + d0(1) * a2).cast<Complex>();
  const ComplexMatrix c1 = a1.cast<Complex>();
  const ComplexMatrix c2 = a2.cast<Complex>();
  const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
  const double rank_tol = 1e-7;

  for (const auto& cl : best) {
    const int m = cl.multiplicity;
    // Generalized eigenspace: the m right singular vectors of (R - lambda)^m
    // belonging to the smallest singular values.
    const ComplexMatrix shifted = matrix_power(r - cl.value * id, m);
    Eigen::JacobiSVD<ComplexMatrix> svd(shifted, Eigen::ComputeFullV);
    const ComplexMatrix v = svd.matrixV().rightCols(m);

    const ComplexMatrix x1 = v.adjoint() * c1 * v;
    const ComplexMatrix x2 = v.adjoint() * c2 * v;
    const double residual = std::max((c1 * v - v * x1).norm(), (c2 * v - v * x2).norm());
    if (residual > 1e-6 * scale)
      throw NumericalError("joint_spectrum: generalized eigenspace is not invariant (pair not commuting?)",
                           residual);

    JointEigenspace space;
    space.multiplicity = m;
    space.first = x1.trace() / static_cast<double>(m);
    space.second = x2.trace() / static_cast<double>(m);
    const ComplexMatrix n1 = x1 - space.first * ComplexMatrix::Identity(m, m);
    const ComplexMatrix n2 = x2 - space.second * ComplexMatrix::Identity(m, m);
    const ComplexMatrix n0 = d0(0) * n1 + d0(1) * n2;
    for (int q = 1; q <= m; ++q)
      space.nilpotent_ranks.push_back(numerical_rank(matrix_power(n0, q), rank_tol * std::pow(scale, q)));

    RealMatrix lin(2 * m * m, 2);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const auto row = 2 * (i * m + j);
        lin(row, 0) = n1(i, j).real();
        lin(row + 1, 0) = n1(i, j).imag();
        lin(row, 1) = n2(i, j).real();
        lin(row + 1, 1) = n2(i, j).imag();
      }
    const RealMatrix kernel = null_space(lin, rank_tol * scale);
    space.kernel_dim = static_cast<int>(kernel.cols());
    if (space.kernel_dim == 1) {
      Eigen::Vector2d k = kernel.col(0);
      if (k(0) < -1e-12 || (std::abs(k(0)) <= 1e-12 && k(1) < 0)) k = -k;
      space.kernel_direction = k;
    }
    out.spaces.push_back(space);
  }

  std::sort(out.spaces.begin(), out.spaces.end(), [](const JointEigenspace& a, const JointEigenspace& b) {
    const double keys_a[] = {a.first.real(), a.first.imag(), a.second.real(), a.second.imag()};
    const double keys_b[] = {b.first.real(), b.first.imag(), b.second.real(), b.second.imag()};
    for (int i = 0; i < 4; ++i)
      if (std::abs(keys_a[i] - keys_b[i]) > 1e-9) return keys_a[i] < keys_b[i];
    return false;
  });
  return out;
}

}  // namespace gpb
