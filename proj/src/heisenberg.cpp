#include "gpb/heisenberg.hpp"

#include <sstream>

namespace gpb {

namespace {

void require_phase_vector(const RealVector& w) {
  if (w.size() == 0 || w.size() % 2 != 0) {
    std::ostringstream msg;
    msg << "phase vector must have positive even length, got " << w.size();
    throw DimensionError(msg.str());
  }
}

void require_same_n(const PolarizedElement& a, const PolarizedElement& b) {
  if (a.x.size() != a.y.size() || b.x.size() != b.y.size() || a.x.size() != b.x.size())
    throw DimensionError("polarized elements of different dimensions");
}

}  // namespace

double symplectic_form(const RealVector& w, const RealVector& w2) {
  require_phase_vector(w);
  if (w.size() != w2.size()) throw DimensionError("symplectic_form: length mismatch");
  const auto n = w.size() / 2;
  // w^T J w2 = -x^T y2 + y^T x2
  return -w.head(n).dot(w2.tail(n)) + w.tail(n).dot(w2.head(n));
}

HeisenbergElement heis_mul(const HeisenbergElement& a, const HeisenbergElement& b) {
  if (a.w.size() != b.w.size()) throw DimensionError("heis_mul: dimension mismatch");
  return {a.w + b.w, a.z + b.z + 0.5 * symplectic_form(a.w, b.w)};
}

HeisenbergElement heis_inverse(const HeisenbergElement& a) { return {-a.w, -a.z}; }

PolarizedElement pol_mul(const PolarizedElement& a, const PolarizedElement& b) {
  require_same_n(a, b);
  return {a.x + b.x, a.y + b.y, a.z + b.z + a.y.dot(b.x)};
}

PolarizedElement pol_inverse(const PolarizedElement& a) { return {-a.x, -a.y, -a.z + a.y.dot(a.x)}; }

RealMatrix pol_to_matrix(const PolarizedElement& h) {
  const int n = h.n();
  if (h.y.size() != n) throw DimensionError("pol_to_matrix: x and y differ in length");
  RealMatrix m = RealMatrix::Identity(n + 2, n + 2);
  m.block(0, 1, 1, n) = h.y.transpose();
  m(0, n + 1) = h.z;
  m.block(1, n + 1, n, 1) = h.x;
  return m;
}

PolarizedElement psi(const HeisenbergElement& h) {
  require_phase_vector(h.w);
  const auto n = h.w.size() / 2;
  const RealVector x = h.w.head(n);
  const RealVector y = h.w.tail(n);
  return {x, y, h.z + 0.5 * y.dot(x)};
}

HeisenbergElement psi_inverse(const PolarizedElement& h) {
  const auto n = h.x.size();
  RealVector w(2 * n);
  w << h.x, h.y;
  return {w, h.z - 0.5 * h.y.dot(h.x)};
}

HeisenbergElement sp_action(const RealMatrix& a, const HeisenbergElement& h, double tol) {
  require_phase_vector(h.w);
  if (a.rows() != h.w.size() || a.cols() != h.w.size())
    throw DimensionError("sp_action: matrix does not match phase space dimension");
  // scale-aware: ||A^T J A - J|| <= tol (1 + ||A||^2)
  if (!is_symplectic(a, 1, tol)) throw PreconditionError("sp_action: matrix is not symplectic");
  return {a * h.w, h.z};
}

}  // namespace gpb
