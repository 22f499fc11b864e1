#include "gpb/random.hpp"

#include <Eigen/QR>

namespace gpb {

RealMatrix random_orthogonal(Rng& rng, int n) {
  const RealMatrix g = rng.normal_matrix(n, n);
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

RealMatrix random_symplectic(Rng& rng, int n, double scale) {
  RealMatrix h = rng.normal_matrix(2 * n, 2 * n);
  h = 0.5 * (h + h.transpose()).eval();
  return mat_exp(scale * symplectic_unit(n) * h);
}

RealMatrix random_well_conditioned(Rng& rng, int n, double cond) {
  RealVector sigma(n);
  for (int i = 0; i < n; ++i) sigma(i) = rng.uniform(1.0, cond);
  return random_orthogonal(rng, n) * sigma.asDiagonal() * random_orthogonal(rng, n).transpose();
}

}  // namespace gpb
