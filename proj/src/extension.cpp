#include "gpb/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/math/tools/minima.hpp>

namespace gpb {

RealMatrix DilationParams::m_matrix(int k) const {
  if (k != 1 && k != 2) throw std::invalid_argument("m_matrix: k must be 1 or 2");
  RealMatrix m = RealMatrix::Zero(n + 2, n + 2);
  m(0, 0) = k == 1 ? p1 : p2;
  m.block(1, 1, n, n) = k == 1 ? b1 : b2;
  return m;
}

DilationParams DilationParams::make(double p1, double p2, RealMatrix b1, RealMatrix b2) {
  DilationParams p;
  p.n = static_cast<int>(b1.rows());
  p.p1 = p1;
  p.p2 = p2;
  p.b1 = std::move(b1);
  p.b2 = std::move(b2);
  check_shape(p);
  return p;
}

void check_shape(const DilationParams& params) {
  const int n = params.n;
  if (n < 1) throw DimensionError("dilation params: n must be positive");
  for (const RealMatrix* b : {&params.b1, &params.b2}) {
    if (b->rows() != n || b->cols() != n) {
      std::ostringstream msg;
      msg << "dilation params: B must be " << n << "x" << n << ", got " << b->rows() << "x" << b->cols();
      throw DimensionError(msg.str());
    }
    if (!b->allFinite()) throw DimensionError("dilation params: non-finite entry in B");
  }
  if (!std::isfinite(params.p1) || !std::isfinite(params.p2))
    throw DimensionError("dilation params: non-finite p");
}

namespace {

double max_real_part(const RealMatrix& a) {
  Eigen::EigenSolver<RealMatrix> solver(a, false);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalue iteration did not converge", a.norm());
  return solver.eigenvalues().real().cwiseAbs().maxCoeff();
}

}  // namespace

ValidationReport validate_params(const DilationParams& params, const ValidationOptions& options) {
  check_shape(params);
  ValidationReport report;

  const RealMatrix comm = commutator(params.b1, params.b2);
  report.commute_defect = comm.norm();
  report.commute = report.commute_defect <= options.commute_tol * (1.0 + params.b1.norm() * params.b2.norm());
  if (!report.commute) report.messages.push_back("B1 and B2 do not commute");

  const int n = params.n;
  RealMatrix stacked(n * n + 1, 2);
  stacked(0, 0) = params.p1;
  stacked(0, 1) = params.p2;
  stacked.col(0).tail(n * n) = params.b1.reshaped();
  stacked.col(1).tail(n * n) = params.b2.reshaped();
  const double scale = std::max(1.0, stacked.norm());
  report.m1_ok = numerical_rank(stacked, options.independence_tol * scale) == 2;
  if (!report.m1_ok) report.messages.push_back("M1 and M2 are linearly dependent");

  if (params.p1 != 0.0 || params.p2 != 0.0) {
    // Only sM1 + tM2 with sp1 + tp2 = 0 can be skew-similar.
    const Eigen::Vector2d dir = Eigen::Vector2d(-params.p2, params.p1).normalized();
    report.m2_ok = !is_skew_similar(params.b_of(dir), options.spectral_tol);
    if (!report.m2_ok) report.m2_witness = dir;
  } else {
    report.heuristic = true;
    const int m = std::max(options.scan_points, 8);
    const double step = std::numbers::pi / m;
    auto dir = [](double theta) { return Eigen::Vector2d(std::cos(theta), std::sin(theta)); };
    auto f = [&](double theta) { return max_real_part(params.b_of(dir(theta))); };
    std::vector<double> values(m);
    for (int i = 0; i < m; ++i) values[i] = f(i * step);
    report.m2_ok = true;
    for (int i = 0; i < m && report.m2_ok; ++i) {
      // f(theta + pi) = f(theta), so neighbours wrap around.
      const double prev = values[(i + m - 1) % m];
      const double next = values[(i + 1) % m];
      if (values[i] > prev || values[i] > next) continue;
      const double theta =
          boost::math::tools::brent_find_minima(f, (i - 1) * step, (i + 1) * step, std::numeric_limits<double>::digits)
              .first;
      for (double candidate : {i * step, theta}) {
        if (is_skew_similar(params.b_of(dir(candidate)), options.spectral_tol)) {
          report.m2_ok = false;
          report.m2_witness = dir(candidate);
          break;
        }
      }
    }
    report.messages.push_back("p = 0: condition (M2) decided by a direction scan (heuristic)");
  }
  if (!report.m2_ok) report.messages.push_back("a nonzero element of span{M1, M2} is similar to a skew-symmetric matrix");
  return report;
}

DilationParams validated(DilationParams params, const ValidationOptions& options) {
  params.validation = validate_params(params, options);
  return params;
}

ValidationReport validation_of(const DilationParams& params) {
  return params.validation ? *params.validation : validate_params(params);
}

RealMatrix d_of_t(const DilationParams& params, const Eigen::Vector2d& t) {
  const int n = params.n;
  RealMatrix d = RealMatrix::Zero(n + 2, n + 2);
  d(0, 0) = std::exp(params.p_of(t));
  d.block(1, 1, n, n) = mat_exp(params.b_of(t));
  d(n + 1, n + 1) = 1.0;
  return d;
}

PolarizedElement alpha(const DilationParams& params, const Eigen::Vector2d& t, const PolarizedElement& h) {
  if (h.n() != params.n || h.y.size() != params.n) throw DimensionError("alpha: element dimension mismatch");
  const RealMatrix bt = params.b_of(t);
  const double ept = std::exp(params.p_of(t));
  return {mat_exp(bt) * h.x, ept * mat_exp(-bt).transpose() * h.y, ept * h.z};
}

namespace {

void require_element(const DilationParams& params, const GroupElement& g) {
  if (g.x.size() != params.n || g.y.size() != params.n) throw DimensionError("group element dimension mismatch");
}

}  // namespace

GroupElement g_mul(const DilationParams& params, const GroupElement& a, const GroupElement& b) {
  require_element(params, a);
  require_element(params, b);
  const RealMatrix bt = params.b_of(a.t);
  const RealMatrix e = mat_exp(bt);
  const double ept = std::exp(params.p_of(a.t));
  const RealVector ex = e * b.x;
  return {a.t + b.t, a.x + ex, a.y + ept * (mat_exp(-bt).transpose() * b.y), a.z + ept * b.z + a.y.dot(ex)};
}

GroupElement g_inverse(const DilationParams& params, const GroupElement& a) {
  require_element(params, a);
  const RealMatrix bt = params.b_of(a.t);
  const double empt = std::exp(-params.p_of(a.t));
  return {-a.t, -(mat_exp(-bt) * a.x), -empt * (mat_exp(bt).transpose() * a.y), -empt * (a.z - a.y.dot(a.x))};
}

RealMatrix g_to_matrix(const DilationParams& params, const GroupElement& a) {
  const ValidationReport report = validation_of(params);
  if (!report.ok()) throw PreconditionError("g_to_matrix: parameters fail commutativity, (M1) or (M2)");
  return g_to_matrix_unchecked(params, a);
}

RealMatrix g_to_matrix_unchecked(const DilationParams& params, const GroupElement& a) {
  require_element(params, a);
  const int n = params.n;
  const RealMatrix e = mat_exp(params.b_of(a.t));
  RealMatrix m = RealMatrix::Identity(n + 2, n + 2);
  m(0, 0) = std::exp(params.p_of(a.t));
  m.block(0, 1, 1, n) = a.y.transpose() * e;
  m(0, n + 1) = a.z;
  m.block(1, 1, n, n) = e;
  m.block(1, n + 1, n, 1) = a.x;
  return m;
}

GroupElement random_element(Rng& rng, int n, double t_range, double h_range) {
  GroupElement g;
  g.t = Eigen::Vector2d(rng.uniform(-t_range, t_range), rng.uniform(-t_range, t_range));
  g.x = rng.uniform_vector(n, -h_range, h_range);
  g.y = rng.uniform_vector(n, -h_range, h_range);
  g.z = rng.uniform(-h_range, h_range);
  return g;
}

double element_distance(const GroupElement& a, const GroupElement& b) {
  auto rel = [](double u, double v) { return std::abs(u - v) / std::max(1.0, std::abs(v)); };
  double worst = std::max(rel(a.t(0), b.t(0)), rel(a.t(1), b.t(1)));
  worst = std::max(worst, rel(a.z, b.z));
  for (Eigen::Index i = 0; i < a.x.size(); ++i) worst = std::max({worst, rel(a.x(i), b.x(i)), rel(a.y(i), b.y(i))});
  return worst;
}

}  // namespace gpb
