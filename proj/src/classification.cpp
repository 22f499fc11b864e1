#include "gpb/classification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/math/tools/minima.hpp>

namespace gpb {

// ---------------------------------------------------------------------------
// Pencil profile

RealVector PencilProfile::value(double theta, double* sigma_out) const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const RealMatrix m = c * c1 + s * c2;
  const double p = c * p1 + s * p2;
  Eigen::EigenSolver<RealMatrix> solver(m, false);
  if (solver.info() != Eigen::Success) throw NumericalError("pencil_profile: eigenvalue iteration failed", m.norm());
  const double sigma = std::sqrt(p * p + solver.eigenvalues().squaredNorm());
  if (sigma_out) *sigma_out = sigma;
  const auto coeffs = characteristic_polynomial(m);
  RealVector v = RealVector::Zero(coeffs.size() + 1);
  if (sigma <= 1e-12 * std::max({1.0, c1.norm(), c2.norm()})) return v;
  v(0) = p / sigma;
  double power = 1.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    power *= sigma;
    v(k + 1) = coeffs[k] / power;
  }
  return v;
}

std::vector<int> PencilProfile::sample_indices() const {
  std::vector<int> out;
  const int stride = std::max(1, options.grid / std::max(1, options.samples));
  for (int i = 0; i < options.grid; i += stride) out.push_back(i);
  return out;
}

PencilProfile pencil_profile(const DilationParams& normalized, const ProfileOptions& options) {
  PencilProfile out;
  out.c1 = c_matrix(normalized, 1);
  out.c2 = c_matrix(normalized, 2);
  out.p1 = normalized.p1;
  out.p2 = normalized.p2;
  out.options = options;
  for (int i = 0; i < options.grid; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / options.grid;
    double sigma = 0.0;
    out.grid_theta.push_back(theta);
    out.grid_values.push_back(out.value(theta, &sigma));
    out.grid_sigma.push_back(sigma);
  }
  return out;
}

namespace {

double profile_scale(const PencilProfile& p) {
  return std::max({1.0, p.c1.norm(), p.c2.norm(), std::abs(p.p1), std::abs(p.p2)});
}

// Eigenvalues of a defective pencil carry errors of order sqrt(eps), so the
// threshold sits well above that.
bool degenerate(const PencilProfile& p, int index) { return p.grid_sigma[index] <= 1e-6 * profile_scale(p); }

}  // namespace

bool profile_covers(const PencilProfile& a, const PencilProfile& b) {
  if (a.grid_values.empty() || b.grid_values.empty()) return false;
  if (a.grid_values.front().size() != b.grid_values.front().size()) return false;
  const int m = static_cast<int>(b.grid_values.size());
  const double h = 2.0 * std::numbers::pi / m;
  for (int index : a.sample_indices()) {
    // Directions where the pencil is nilpotent and p vanishes carry no
    // profile value; they are counted by the nilradical instead.
    if (degenerate(a, index)) continue;
    const RealVector& target = a.grid_values[index];
    std::vector<double> dist(m, std::numeric_limits<double>::infinity());
    for (int j = 0; j < m; ++j)
      if (!degenerate(b, j)) dist[j] = (b.grid_values[j] - target).norm();

    std::vector<int> minima;
    for (int j = 0; j < m; ++j) {
      const double prev = dist[(j + m - 1) % m];
      const double next = dist[(j + 1) % m];
      if (std::isfinite(dist[j]) && dist[j] <= prev && dist[j] <= next) minima.push_back(j);
    }
    std::sort(minima.begin(), minima.end(), [&](int i, int j) { return dist[i] < dist[j]; });

    bool matched = false;
    for (std::size_t r = 0; r < minima.size() && !matched; ++r) {
      const int j = minima[r];
      if (dist[j] <= a.options.match_tol) {
        matched = true;
        break;
      }
      if (r >= 3 && dist[j] > 0.25) break;
      auto f = [&](double theta) { return (b.value(theta) - target).norm(); };
      const auto best = boost::math::tools::brent_find_minima(f, b.grid_theta[j] - h, b.grid_theta[j] + h,
                                                              std::numeric_limits<double>::digits);
      matched = best.second <= a.options.match_tol;
    }
    if (!matched) return false;
  }
  return true;
}

bool profiles_match(const PencilProfile& a, const PencilProfile& b) { return profile_covers(a, b) && profile_covers(b, a); }

// ---------------------------------------------------------------------------
// Joint spectra

namespace {

using Covector = Eigen::Matrix<Complex, 2, 1>;

Covector covector(const JointEigenspace& s) { return {s.first, s.second}; }

bool near(Complex u, Complex v, double tol) { return std::abs(u - v) <= tol * std::max({1.0, std::abs(u), std::abs(v)}); }

bool same_block(const JointEigenspace& x, const JointEigenspace& y) {
  return x.multiplicity == y.multiplicity && x.nilpotent_ranks == y.nilpotent_ranks && x.kernel_dim == y.kernel_dim;
}

/// Does ell -> A ell (with kernels mapped by A^{-T}) carry a onto b?
bool maps_onto(const JointSpectrum& a, const JointSpectrum& b, const Eigen::Matrix2d& m, double tol) {
  if (!m.allFinite() || std::abs(m.determinant()) <= 1e-12 * std::max(1.0, m.squaredNorm())) return false;
  const Eigen::Matrix2d inv_t = m.inverse().transpose();
  std::vector<bool> used(b.spaces.size(), false);
  for (const auto& x : a.spaces) {
    const Covector image = m.cast<Complex>() * covector(x);
    bool found = false;
    for (std::size_t j = 0; j < b.spaces.size() && !found; ++j) {
      const auto& y = b.spaces[j];
      if (used[j] || !same_block(x, y)) continue;
      if (!near(image(0), y.first, tol) || !near(image(1), y.second, tol)) continue;
      if (x.kernel_dim == 1) {
        const Eigen::Vector2d k = (inv_t * x.kernel_direction).normalized();
        if (std::abs(k(0) * y.kernel_direction(1) - k(1) * y.kernel_direction(0)) > tol) continue;
      }
      used[j] = true;
      found = true;
    }
    if (!found) return false;
  }
  return true;
}

/// Multiset comparison of what survives any admissible re-parametrization.
bool coarse_match(const JointSpectrum& a, const JointSpectrum& b, bool p_nonzero, double tol) {
  std::vector<bool> used(b.spaces.size(), false);
  for (const auto& x : a.spaces) {
    bool found = false;
    for (std::size_t j = 0; j < b.spaces.size() && !found; ++j) {
      if (used[j] || !same_block(x, b.spaces[j])) continue;
      // With p fixed the first form only shifts by a multiple of the second,
      // so it is comparable only where the second vanishes.
      if (p_nonzero) {
        const bool x_flat = near(x.second, 0.0, tol);
        const bool y_flat = near(b.spaces[j].second, 0.0, tol);
        if (x_flat != y_flat || (x_flat && !near(x.first, b.spaces[j].first, tol))) continue;
      }
      used[j] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

std::vector<Eigen::Matrix2d> candidate_maps(const JointSpectrum& a, const JointSpectrum& b, bool p_nonzero, double tol) {
  std::vector<Eigen::Matrix2d> out;
  const double zero = tol * std::max(1.0, a.scale);
  if (p_nonzero) {
    // A = [[1, beta], [0, gamma]] keeps p = (1, 0).
    for (const auto& x : a.spaces) {
      if (std::abs(x.second) <= zero) continue;
      for (const auto& y : b.spaces) {
        if (!same_block(x, y)) continue;
        const Complex gamma = y.second / x.second;
        const Complex beta = (y.first - x.first) / x.second;
        if (std::abs(gamma.imag()) > tol * std::max(1.0, std::abs(gamma)) ||
            std::abs(beta.imag()) > tol * std::max(1.0, std::abs(beta)))
          continue;
        Eigen::Matrix2d m;
        m << 1.0, beta.real(), 0.0, gamma.real();
        out.push_back(m);
      }
      break;
    }
    return out;
  }
  // Any A in GL(2): fix it from two real-independent covectors.
  auto independent = [&](const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
    return std::abs(u(0) * v(1) - u(1) * v(0)) > zero * std::max(1.0, u.norm() * v.norm());
  };
  for (std::size_t i = 0; i < a.spaces.size(); ++i) {
    const Covector li = covector(a.spaces[i]);
    const Eigen::Vector2d re = li.real();
    const Eigen::Vector2d im = li.imag();
    if (independent(re, im)) {
      Eigen::Matrix2d u;
      u << re, im;
      for (const auto& y : b.spaces) {
        if (!same_block(a.spaces[i], y)) continue;
        Eigen::Matrix2d v;
        v << covector(y).real(), covector(y).imag();
        out.push_back(v * u.inverse());
      }
      return out;
    }
    for (std::size_t k = i + 1; k < a.spaces.size(); ++k) {
      const Covector lk = covector(a.spaces[k]);
      if (im.norm() > zero || lk.imag().norm() > zero || !independent(re, lk.real())) continue;
      Eigen::Matrix2d u;
      u << re, Eigen::Vector2d(lk.real());
      for (std::size_t j = 0; j < b.spaces.size(); ++j)
        for (std::size_t l = 0; l < b.spaces.size(); ++l) {
          if (j == l || !same_block(a.spaces[i], b.spaces[j]) || !same_block(a.spaces[k], b.spaces[l])) continue;
          if (covector(b.spaces[j]).imag().norm() > zero || covector(b.spaces[l]).imag().norm() > zero) continue;
          Eigen::Matrix2d v;
          v << Eigen::Vector2d(covector(b.spaces[j]).real()), Eigen::Vector2d(covector(b.spaces[l]).real());
          out.push_back(v * u.inverse());
        }
      return out;
    }
  }
  return out;
}

bool forms_span_plane(const JointSpectrum& s, bool p_nonzero, double tol) {
  RealMatrix rows(2 * s.spaces.size() + 1, 2);
  rows.setZero();
  for (std::size_t i = 0; i < s.spaces.size(); ++i) {
    rows.row(2 * i) << s.spaces[i].first.real(), s.spaces[i].second.real();
    rows.row(2 * i + 1) << s.spaces[i].first.imag(), s.spaces[i].second.imag();
  }
  if (p_nonzero) {
    // Only the second forms pin down (beta, gamma).
    rows.col(0).setZero();
  }
  return numerical_rank(rows, tol * std::max(1.0, s.scale)) >= (p_nonzero ? 1 : 2);
}

}  // namespace

bool joint_spectra_match(const JointSpectrum& a, const JointSpectrum& b, bool p_nonzero, double tol) {
  if (a.dimension() != b.dimension() || a.spaces.size() != b.spaces.size()) return false;
  if (!coarse_match(a, b, p_nonzero, tol)) return false;
  const bool determined_a = forms_span_plane(a, p_nonzero, tol);
  if (determined_a != forms_span_plane(b, p_nonzero, tol)) return false;
  if (!determined_a) return true;
  for (const auto& m : candidate_maps(a, b, p_nonzero, tol))
    if (maps_onto(a, b, m, tol)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Invariant vector and refutation

InvariantVector invariant_vector(const DilationParams& params, const ProfileOptions& options) {
  const Normalization norm = normalize(params);
  const DilationParams& p = norm.params;
  InvariantVector v;
  v.p1 = p.p1 == 1.0 ? 1 : 0;
  v.center_dim = center_dim(p);
  v.nilradical_dim = nilradical_dim(p);
  v.lower_central_dims = lower_central_dims(p);
  v.derived_series_dims = derived_series_dims(p);
  v.is_nilpotent_algebra = v.lower_central_dims.back() == 0;
  v.case_id = structure_case(p);
  v.pencil_profile = pencil_profile(p, options);
  v.joint_spectrum = joint_spectrum(c_matrix(p, 1), c_matrix(p, 2));
  return v;
}

std::optional<std::string> refute_isomorphism(const InvariantVector& a, const InvariantVector& b) {
  if (a.p1 != b.p1) return "p1";
  if (a.center_dim != b.center_dim) return "center_dim";
  if (a.case_id != b.case_id) return "case_id";
  if (a.nilradical_dim != b.nilradical_dim) return "nilradical_dim";
  if (a.is_nilpotent_algebra != b.is_nilpotent_algebra) return "is_nilpotent_algebra";
  if (a.derived_series_dims != b.derived_series_dims) return "derived_series_dims";
  if (a.lower_central_dims != b.lower_central_dims) return "lower_central_dims";
  if (!profiles_match(a.pencil_profile, b.pencil_profile)) return "pencil_profile";
  if (!joint_spectra_match(a.joint_spectrum, b.joint_spectrum, a.p1 == 1)) return "joint_spectrum";
  return std::nullopt;
}

std::optional<std::string> refute_isomorphism(const DilationParams& a, const DilationParams& b) {
  return refute_isomorphism(invariant_vector(a), invariant_vector(b));
}

// ---------------------------------------------------------------------------
// Certificates

CertificateReport verify_certificate(const DilationParams& a, const DilationParams& b, const Certificate& cert,
                                     double tol) {
  check_shape(a);
  check_shape(b);
  const int n = a.n;
  if (b.n != n) throw CertificateError("certificate: parameter dimensions differ");
  if (cert.s.rows() != 2 * n || cert.s.cols() != 2 * n) throw CertificateError("certificate: S must be 2n x 2n");
  if (!cert.a.allFinite() || !cert.s.allFinite()) throw CertificateError("certificate: non-finite entry");
  if (std::abs(cert.a.determinant()) <= 1e-12 * std::max(1.0, cert.a.squaredNorm()))
    throw CertificateError("certificate: A is singular");
  Eigen::FullPivLU<RealMatrix> lu(cert.s);
  if (!lu.isInvertible()) throw CertificateError("certificate: S is singular");
  const RealMatrix s_inv = lu.inverse();

  CertificateReport report;
  report.tolerance = tol;
  const DilationParams rebased = rebase(b, cert.a);
  report.symplectic_defect = symplectic_defect(cert.s, 1);
  report.p_defect = std::max(std::abs(rebased.p1 - a.p1), std::abs(rebased.p2 - a.p2));
  double scale = std::max({1.0, std::abs(a.p1), std::abs(a.p2)});
  for (int k = 1; k <= 2; ++k) {
    const RealMatrix ck = c_matrix(a, k);
    const RealMatrix tk = c_matrix(rebased, k);
    report.c_defect[k - 1] = (tk - cert.s * ck * s_inv).norm();
    scale = std::max({scale, ck.norm(), tk.norm()});
  }
  report.scale = scale;

  const bool symplectic = report.symplectic_defect <= 1e-9;
  const bool p_ok = report.p_defect <= tol * scale;
  const bool c_ok = report.c_defect[0] <= tol * scale && report.c_defect[1] <= tol * scale;
  if (!symplectic) report.messages.push_back("S^T J S != J");
  if (!p_ok) report.messages.push_back("p~' != p");
  if (!c_ok) report.messages.push_back("C~'_k != S C_k S^{-1}");
  report.ok = symplectic && p_ok && c_ok;
  if (report.ok) report.bracket_defect = bracket_defect(a, b, certificate_isomorphism(a, b, cert));
  return report;
}

LinearMap certificate_isomorphism(const DilationParams& a, const DilationParams& b, const Certificate& cert) {
  const int n = a.n;
  if (b.n != n || cert.s.rows() != 2 * n || cert.s.cols() != 2 * n) throw CertificateError("certificate: shape mismatch");
  LinearMap phi = LinearMap::Zero(lie_dim(n), lie_dim(n));
  phi.topLeftCorner<2, 2>() = cert.a.transpose();
  phi.block(2, 2, 2 * n, 2 * n) = cert.s;
  phi(2 * n + 2, 2 * n + 2) = 1.0;
  return phi;
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

RealMatrix mat2(double a, double b, double c, double d) {
  RealMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

std::string format_label(int n, int p, int row, const std::vector<std::pair<std::string, double>>& values) {
  std::ostringstream out;
  out << "n" << n << "-p" << p;
  if (row > 0) out << "-r" << row;
  for (const auto& [name, v] : values) out << "-" << name << "=" << v;
  return out.str();
}

CatalogEntry entry(int n, int p, int row, std::vector<std::pair<std::string, double>> values, RealMatrix b1,
                   RealMatrix b2) {
  CatalogEntry e;
  e.n = n;
  e.p = p;
  e.row = row;
  e.label = format_label(n, p, row, values);
  e.values = std::move(values);
  e.params = validated(DilationParams::make(p, 0.0, std::move(b1), std::move(b2)));
  return e;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("catalog: parameter out of range: " + what);
}

}  // namespace

std::vector<CatalogEntry> catalog(int n, const CatalogChoices& ch) {
  std::vector<CatalogEntry> out;
  if (n == 1) {
    out.push_back(entry(1, 1, 0, {}, RealMatrix::Constant(1, 1, 0.5), RealMatrix::Constant(1, 1, 1.0)));
    return out;
  }
  if (n != 2) throw std::invalid_argument("catalog: only n = 1, 2 are tabulated");

  const RealMatrix id = RealMatrix::Identity(2, 2);
  out.push_back(entry(2, 0, 1, {}, mat2(1, 0, 0, 0), mat2(0, 0, 0, 1)));
  out.push_back(entry(2, 0, 2, {}, id, mat2(0, 1, 0, 0)));
  out.push_back(entry(2, 0, 3, {}, id, mat2(0, 1, -1, 0)));

  for (double b : ch.b)
    for (double d : ch.d) {
      require((b > 0.5 && std::abs(d) <= 1.0) || (b == 0.5 && d >= 0.0 && d <= 1.0), "row 1 needs b > 1/2, |d| <= 1");
      out.push_back(entry(2, 1, 1, {{"b", b}, {"d", d}}, mat2(0.5, 0, 0, b), mat2(1, 0, 0, d)));
    }
  for (double d : ch.d) {
    require(d >= 0.0, "row 2 needs d >= 0");
    out.push_back(entry(2, 1, 2, {{"d", d}}, mat2(0.5, 1, 0, 0.5), mat2(1, d, 0, 1)));
  }
  out.push_back(entry(2, 1, 3, {}, 0.5 * id, mat2(1, 1, 0, 1)));
  for (double a : ch.a) {
    require(a >= 0.5, "row 4 needs a >= 1/2");
    out.push_back(entry(2, 1, 4, {{"a", a}}, a * id, mat2(0, 1, 0, 0)));
  }
  for (double a : ch.a)
    for (double c : ch.c) {
      require(a >= 0.5 && c >= 0.0, "row 5 needs a >= 1/2, c >= 0");
      out.push_back(entry(2, 1, 5, {{"a", a}, {"c", c}}, a * id, mat2(c, 1, -1, c)));
    }
  for (double b : ch.rotation_b) {
    require(b > 0.0, "row 6 needs b > 0");
    out.push_back(entry(2, 1, 6, {{"b", b}}, mat2(0.5, b, -b, 0.5), id));
  }
  return out;
}

int SeparationReport::inconclusive_off_diagonal() const {
  int count = 0;
  for (std::size_t i = 0; i < witness.size(); ++i)
    for (std::size_t j = 0; j < witness.size(); ++j)
      if (i != j && witness[i][j].empty()) ++count;
  return count;
}

SeparationReport separation_report(const std::vector<CatalogEntry>& entries, const ProfileOptions& options) {
  SeparationReport report;
  report.entries = entries;
  std::vector<InvariantVector> invariants;
  for (const auto& e : entries) invariants.push_back(invariant_vector(e.params, options));
  const auto k = entries.size();
  report.witness.assign(k, std::vector<std::string>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto w = refute_isomorphism(invariants[i], invariants[j]);
      report.witness[i][j] = report.witness[j][i] = w.value_or("");
    }
  return report;
}

}  // namespace gpb
