#include "gpb/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace gpb {

int Spectrum::dimension() const {
  int total = 0;
  for (const auto& e : eigenvalues) total += e.multiplicity;
  return total;
}

void require_square(const RealMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream msg;
    msg << what << ": expected a nonempty square matrix, got " << a.rows() << "x" << a.cols();
    throw DimensionError(msg.str());
  }
}

namespace {

// Pade(13) coefficients, Higham 2005.
constexpr double kPade13[] = {64764752532480000.0,
                              32382376266240000.0,
                              7771770303897600.0,
                              1187353796428800.0,
                              129060195264000.0,
                              10559470521600.0,
                              670442572800.0,
                              33522128640.0,
                              1323241920.0,
                              40840800.0,
                              960960.0,
                              16380.0,
                              182.0,
                              1.0};
constexpr double kTheta13 = 5.371920351148152;

RealMatrix nilpotent_exp(const RealMatrix& a) {
  const auto n = a.rows();
  RealMatrix result = RealMatrix::Identity(n, n);
  RealMatrix term = RealMatrix::Identity(n, n);
  for (Eigen::Index k = 1; k < n; ++k) {
    term = term * a / static_cast<double>(k);
    result += term;
  }
  return result;
}

// Groups eigenvalues whose distance chains below tol (single linkage).
std::vector<Eigenvalue> cluster_eigenvalues(const ComplexVector& values, double tol) {
  const auto n = values.size();
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);
  auto root = [&](int i) {
    while (label[i] != i) i = label[i] = label[label[i]];
    return i;
  };
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(values(i) - values(j)) <= tol) label[root(i)] = root(j);

  std::vector<Eigenvalue> out;
  std::vector<int> seen;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int r = root(i);
    if (std::find(seen.begin(), seen.end(), r) != seen.end()) continue;
    seen.push_back(r);
    Complex sum = 0.0;
    int count = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (root(j) == r) {
        sum += values(j);
        ++count;
      }
    out.push_back({sum / static_cast<double>(count), count});
  }
  std::sort(out.begin(), out.end(), [](const Eigenvalue& a, const Eigenvalue& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

ComplexVector eigenvalues_of(const RealMatrix& a) {
  Eigen::EigenSolver<RealMatrix> solver(a, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalue iteration did not converge", a.norm());
  }
  return solver.eigenvalues();
}

}  // namespace

RealMatrix mat_exp(const RealMatrix& a) {
  require_square(a, "mat_exp");
  const auto n = a.rows();
  if (is_nilpotent(a, 1e-15)) return nilpotent_exp(a);

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
  const RealMatrix x = a / std::ldexp(1.0, squarings);

  const RealMatrix id = RealMatrix::Identity(n, n);
  const RealMatrix x2 = x * x;
  const RealMatrix x4 = x2 * x2;
  const RealMatrix x6 = x4 * x2;
  const double* b = kPade13;
  const RealMatrix u =
      x * (x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * id);
  const RealMatrix v =
      x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;
  RealMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

Spectrum spectrum(const RealMatrix& a, const SpectralOptions& options) {
  require_square(a, "spectrum");
  const double norm = a.norm();
  Spectrum out;
  out.eigenvalues = cluster_eigenvalues(eigenvalues_of(a), options.cluster_tol * std::max(1.0, norm));

  const auto n = a.rows();
  const double rank_tol = options.rank_tol * norm;
  const ComplexMatrix ac = a.cast<Complex>();
  for (const auto& e : out.eigenvalues) {
    const ComplexMatrix shifted = ac - e.value * ComplexMatrix::Identity(n, n);
    if (numerical_rank(shifted, rank_tol) != n - e.multiplicity) {
      out.semisimple = false;
      break;
    }
  }
  return out;
}

bool is_nilpotent(const RealMatrix& a, double tol) {
  require_square(a, "is_nilpotent");
  const auto n = a.rows();
  RealMatrix power = a;
  for (Eigen::Index k = 1; k < n; ++k) power = power * a;
  return power.norm() <= tol * (1.0 + std::pow(a.norm(), static_cast<double>(n)));
}

bool is_skew_similar(const RealMatrix& a, double tol) {
  require_square(a, "is_skew_similar");
  SpectralOptions options;
  options.rank_tol = tol;
  const Spectrum s = spectrum(a, options);
  if (!s.semisimple) return false;
  const double bound = tol * std::max(1.0, a.norm());
  return std::all_of(s.eigenvalues.begin(), s.eigenvalues.end(),
                     [&](const Eigenvalue& e) { return std::abs(e.value.real()) <= bound; });
}

RealMatrix commutator(const RealMatrix& a, const RealMatrix& b) {
  require_square(a, "commutator");
  require_square(b, "commutator");
  if (a.rows() != b.rows()) throw DimensionError("commutator: dimension mismatch");
  return a * b - b * a;
}

RealMatrix symplectic_unit(int n) {
  RealMatrix j = RealMatrix::Zero(2 * n, 2 * n);
  j.block(0, n, n, n) = -RealMatrix::Identity(n, n);
  j.block(n, 0, n, n) = RealMatrix::Identity(n, n);
  return j;
}

double symplectic_defect(const RealMatrix& s, int sign) {
  require_square(s, "symplectic_defect");
  if (s.rows() % 2 != 0) throw DimensionError("symplectic_defect: odd dimension");
  const RealMatrix j = symplectic_unit(static_cast<int>(s.rows() / 2));
  return (s.transpose() * j * s - static_cast<double>(sign) * j).norm() / (1.0 + s.squaredNorm());
}

bool is_symplectic(const RealMatrix& s, int sign, double tol) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0) return false;
  return symplectic_defect(s, sign) <= tol;
}

int numerical_rank(const RealMatrix& a, double tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<RealMatrix> svd(a);
  const auto& sv = svd.singularValues();
  return static_cast<int>((sv.array() > tol).count());
}

int numerical_rank(const ComplexMatrix& a, double tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& sv = svd.singularValues();
  return static_cast<int>((sv.array() > tol).count());
}

RealMatrix null_space(const RealMatrix& a, double tol) {
  Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const auto rank = (sv.array() > tol).count();
  return svd.matrixV().rightCols(a.cols() - rank);
}

std::vector<double> characteristic_polynomial(const RealMatrix& a) {
  require_square(a, "characteristic_polynomial");
  // Faddeev-LeVerrier.
  const auto n = a.rows();
  std::vector<double> c(n);
  RealMatrix m = RealMatrix::Zero(n, n);
  const RealMatrix id = RealMatrix::Identity(n, n);
  double prev = 1.0;
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m + prev * id;
    const RealMatrix am = a * m;
    c[k - 1] = -am.trace() / static_cast<double>(k);
    prev = c[k - 1];
  }
  return c;
}

double max_abs(const RealMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double max_relative_error(const RealMatrix& a, const RealMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("max_relative_error: shape mismatch");
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / std::max(1.0, std::abs(b(i, j))));
  return worst;
}

}  // namespace gpb
