#pragma once

// The Heisenberg group in its symplectic and polarized forms.

#include "gpb/matrix_core.hpp"

namespace gpb {

/// (w, z) with w = (x; y) stored x-block first.
struct HeisenbergElement {
  RealVector w;
  double z = 0.0;

  int n() const { return static_cast<int>(w.size() / 2); }
  static HeisenbergElement identity(int n) { return {RealVector::Zero(2 * n), 0.0}; }
};

struct PolarizedElement {
  RealVector x;
  RealVector y;
  double z = 0.0;

  int n() const { return static_cast<int>(x.size()); }
  static PolarizedElement identity(int n) { return {RealVector::Zero(n), RealVector::Zero(n), 0.0}; }
};

/// w^T J w~ with J = [[0, -I], [I, 0]].
double symplectic_form(const RealVector& w, const RealVector& w2);

HeisenbergElement heis_mul(const HeisenbergElement& a, const HeisenbergElement& b);
HeisenbergElement heis_inverse(const HeisenbergElement& a);

PolarizedElement pol_mul(const PolarizedElement& a, const PolarizedElement& b);
PolarizedElement pol_inverse(const PolarizedElement& a);

/// The unipotent (n+2)x(n+2) matrix [[1, y^T, z], [0, I, x], [0, 0, 1]].
RealMatrix pol_to_matrix(const PolarizedElement& h);

/// (w, z) -> (x, y, z + y^T x / 2); a group isomorphism.
PolarizedElement psi(const HeisenbergElement& h);
HeisenbergElement psi_inverse(const PolarizedElement& h);

/// (w, z) -> (A w, z) for symplectic A. Throws PreconditionError otherwise.
HeisenbergElement sp_action(const RealMatrix& a, const HeisenbergElement& h, double tol = 1e-9);

}  // namespace gpb
