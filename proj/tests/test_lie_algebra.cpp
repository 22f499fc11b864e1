#include <doctest.h>

#include "gpb/lie_algebra.hpp"

using namespace gpb;

namespace {

RealMatrix m1x1(double a) { return RealMatrix::Constant(1, 1, a); }

RealMatrix m2(double a, double b, double c, double d) {
  RealMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

RealVector vec(std::initializer_list<double> v) {
  RealVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

RealMatrix unit(int n, int i, int j) {
  RealMatrix e = RealMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

DilationParams table_n1() { return validated(DilationParams::make(1, 0, m1x1(0.5), m1x1(1.0))); }
DilationParams row_p1_nilpotent(double a) {
  return validated(DilationParams::make(1, 0, a * RealMatrix::Identity(2, 2), m2(0, 1, 0, 0)));
}
DilationParams p0_diagonal() { return validated(DilationParams::make(0, 0, m2(1, 0, 0, 0), m2(0, 0, 0, 1))); }
DilationParams p0_nilpotent() { return validated(DilationParams::make(0, 0, RealMatrix::Identity(2, 2), m2(0, 1, 0, 0))); }
DilationParams n3_nilpotent() { return validated(DilationParams::make(0, 0, unit(3, 0, 2), unit(3, 0, 1))); }

LieElement random_lie(Rng& rng, int n) {
  return LieElement::from_coords(rng.uniform_vector(lie_dim(n), -1.0, 1.0));
}

/// Center from matrix commutators: v with [L(e_i), L(v)] = 0 for all i.
int oracle_center_dim(const DilationParams& p) {
  const int d = lie_dim(p.n);
  const int m = p.n + 2;
  RealMatrix stacked(d * m * m, d);
  for (int j = 0; j < d; ++j) {
    const RealMatrix lj = lie_to_matrix(p, LieElement::basis(p.n, j));
    for (int i = 0; i < d; ++i) {
      const RealMatrix c = commutator(lie_to_matrix(p, LieElement::basis(p.n, i)), lj);
      stacked.block(i * m * m, j, m * m, 1) = Eigen::Map<const RealVector>(c.data(), m * m);
    }
  }
  Eigen::JacobiSVD<RealMatrix> svd(stacked);
  int rank = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) > 1e-9 * std::max(1.0, svd.singularValues()(0))) ++rank;
  return d - rank;
}

}  // namespace

TEST_SUITE("lie_algebra") {
  TEST_CASE("bracket examples") {
    const DilationParams p = table_n1();
    Rng rng(31);
    const LieElement u = random_lie(rng, 1);
    CHECK(bracket(p, u, u).coords().cwiseAbs().maxCoeff() == 0.0);

    LieElement m1 = LieElement::zero(1);
    m1.s = {1, 0};
    LieElement x1 = LieElement::zero(1);
    x1.x = vec({1});
    const LieElement r = bracket(p, m1, x1);
    CHECK((r.coords() - (0.5 * x1.coords())).cwiseAbs().maxCoeff() == 0.0);

    const DilationParams q = row_p1_nilpotent(1.0);
    LieElement yy = LieElement::zero(2);
    yy.y = vec({1, 2});
    LieElement xx = LieElement::zero(2);
    xx.x = vec({3, 4});
    const LieElement z = bracket(q, yy, xx);
    CHECK(z.z == 1.0 * 3 + 2.0 * 4);
    CHECK(z.s.norm() + z.x.norm() + z.y.norm() == 0.0);
  }

  TEST_CASE("matrix realization") {
    const DilationParams p = row_p1_nilpotent(0.5);
    LieElement zz = LieElement::zero(2);
    zz.z = 2.5;
    RealMatrix expect = RealMatrix::Zero(4, 4);
    expect(0, 3) = 2.5;
    CHECK(max_abs(lie_to_matrix(p, zz) - expect) == 0.0);
    CHECK(max_abs(lie_to_matrix(p, LieElement::basis(2, 0)) - p.m_matrix(1)) == 0.0);
    CHECK(max_abs(lie_to_matrix(p, LieElement::basis(2, 1)) - p.m_matrix(2)) == 0.0);
    Rng rng(32);
    for (int k = 0; k < 500; ++k) {
      const LieElement u = random_lie(rng, 2), v = random_lie(rng, 2);
      CHECK(max_abs(lie_to_matrix(p, bracket(p, u, v)) - commutator(lie_to_matrix(p, u), lie_to_matrix(p, v))) <= 1e-12);
    }
  }

  TEST_CASE("coordinates round trip and ad matrix") {
    Rng rng(33);
    const DilationParams p = row_p1_nilpotent(1.0);
    const LieElement u = random_lie(rng, 2), v = random_lie(rng, 2);
    CHECK((LieElement::from_coords(u.coords()).coords() - u.coords()).norm() == 0.0);
    CHECK((ad_matrix(p, u.coords()) * v.coords() - bracket(p, u, v).coords()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(jacobi_defect(p) <= 1e-12);
  }

  TEST_CASE("C matrices") {
    const DilationParams p = table_n1();
    CHECK(max_abs(c_matrix(p, 1) - 0.5 * RealMatrix::Identity(2, 2)) == 0.0);
    const DilationParams zero = DilationParams::make(0, 1, RealMatrix::Zero(2, 2), RealMatrix::Identity(2, 2));
    CHECK(max_abs(c_matrix(zero, 1)) == 0.0);
    // [M_k, W] = C_k w on V_H.
    Rng rng(34);
    const DilationParams q = row_p1_nilpotent(0.7);
    for (int k = 1; k <= 2; ++k) {
      LieElement mk = LieElement::zero(2);
      mk.s(k - 1) = 1.0;
      for (int trial = 0; trial < 20; ++trial) {
        LieElement w = LieElement::zero(2);
        w.x = rng.uniform_vector(2, -1, 1);
        w.y = rng.uniform_vector(2, -1, 1);
        const LieElement b = bracket(q, mk, w);
        RealVector bw(4);
        bw << b.x, b.y;
        RealVector ww(4);
        ww << w.x, w.y;
        CHECK((bw - c_matrix(q, k) * ww).cwiseAbs().maxCoeff() <= 1e-12);
      }
    }
  }

  TEST_CASE("Heisenberg automorphisms") {
    Rng rng(35);
    const int n = 2;
    const RealVector u0 = RealVector::Zero(2 * n);
    const RealMatrix id = RealMatrix::Identity(2 * n, 2 * n);
    CHECK(max_abs(heis_automorphism(1.0, u0, id, 1) - RealMatrix::Identity(2 * n + 1, 2 * n + 1)) == 0.0);
    CHECK(heis_bracket_defect(heis_automorphism(1.0, u0, symplectic_unit(n), 1)) <= 1e-12);
    const LinearMap phi = heis_automorphism(2.0, u0, id, 1);
    CHECK(phi(2 * n, 2 * n) == 4.0);
    CHECK(phi.col(2 * n).head(2 * n).norm() == 0.0);

    RealMatrix flip = RealMatrix::Identity(2 * n, 2 * n);
    flip.bottomRightCorner(n, n) *= -1.0;
    for (int k = 0; k < 50; ++k) {
      const double lambda = rng.uniform(0.3, 3.0);
      const RealVector u = rng.uniform_vector(2 * n, -1, 1);
      const RealMatrix s = random_symplectic(rng, n);
      const int sign = k % 2 == 0 ? 1 : -1;
      const RealMatrix ss = sign > 0 ? s : RealMatrix(s * flip);
      const LinearMap a = heis_automorphism(lambda, u, ss, sign);
      CHECK(heis_bracket_defect(a) <= 1e-12);
      CHECK(a(2 * n, 2 * n) == sign * lambda * lambda);
      const HeisAutomorphismData d = decompose_heis_automorphism(a);
      CHECK(d.sign == sign);
      CHECK(std::abs(d.lambda - lambda) <= 1e-14 * lambda);
      CHECK((d.u - u).norm() == 0.0);
      CHECK(max_abs(d.s - ss) <= 1e-14 * (1.0 + max_abs(ss)));
    }
    CHECK_THROWS_AS(heis_automorphism(1.0, u0, 2.0 * id, 1), PreconditionError);
    CHECK_THROWS_AS(heis_automorphism(0.0, u0, id, 1), PreconditionError);
    CHECK_THROWS_AS(heis_automorphism(1.0, u0, id, -1), PreconditionError);
  }

  TEST_CASE("sufficient isomorphisms") {
    const DilationParams p = row_p1_nilpotent(0.8);
    IsomorphismData scale;
    scale.kind = IsomorphismKind::Scaling;
    scale.alpha = 1.0;
    CHECK(max_abs(sufficient_isomorphism(p, p, scale) - RealMatrix::Identity(7, 7)) <= 1e-15);

    const DilationParams n1 = table_n1();
    IsomorphismData gl;
    gl.kind = IsomorphismKind::GeneralLinearConjugacy;
    gl.v = m1x1(2.0);
    const LinearMap phi = sufficient_isomorphism(n1, conjugate(n1, gl.v), gl);
    CHECK(bracket_defect(n1, conjugate(n1, gl.v), phi) <= 1e-12);

    Rng rng(36);
    const RealMatrix v = random_well_conditioned(rng, 2);
    const DilationParams pv = conjugate(p, v);
    gl.v = v;
    const LinearMap by_gl = sufficient_isomorphism(p, pv, gl);
    IsomorphismData sp;
    sp.kind = IsomorphismKind::SymplecticConjugacy;
    sp.s = RealMatrix::Zero(4, 4);
    sp.s.topLeftCorner(2, 2) = v;
    sp.s.bottomRightCorner(2, 2) = v.inverse().transpose();
    const LinearMap by_sp = sufficient_isomorphism(p, pv, sp);
    CHECK(max_abs(by_gl - by_sp) <= 1e-12);
    CHECK(bracket_defect(p, pv, by_sp) <= 1e-12);

    IsomorphismData basis;
    basis.kind = IsomorphismKind::BasisChange;
    basis.a << 2.0, 0.5, -1.0, 1.5;
    const DilationParams pa = rebase(p, basis.a);
    CHECK(bracket_defect(p, pa, sufficient_isomorphism(p, pa, basis)) <= 1e-12);

    scale.alpha = -1.7;
    const DilationParams ps = scaled(p, scale.alpha);
    CHECK(bracket_defect(p, ps, sufficient_isomorphism(p, ps, scale)) <= 1e-12);

    CHECK_THROWS_AS(sufficient_isomorphism(p, pa, gl), CertificateError);
    basis.a << 1.0, 2.0, 2.0, 4.0;
    CHECK_THROWS_AS(sufficient_isomorphism(p, p, basis), CertificateError);
  }

  TEST_CASE("normalize") {
    const DilationParams p = table_n1();
    const Normalization a = normalize(p);
    CHECK(a.a == Eigen::Matrix2d::Identity());
    CHECK(a.params.p1 == 1.0);
    CHECK(a.params.p2 == 0.0);

    const DilationParams q = validated(DilationParams::make(0, 3, m2(1, 0, 0, 2), m2(0.5, 0, 0, 1)));
    const Normalization b = normalize(q);
    Eigen::Matrix2d expect;
    expect << 0.0, 1.0 / 3.0, 1.0, 0.0;
    CHECK((b.a - expect).norm() <= 1e-15);
    const Eigen::Vector2d pp = b.a * q.p();
    CHECK(std::abs(pp(0) - 1.0) <= 1e-15);
    CHECK(std::abs(pp(1)) <= 1e-15);
    IsomorphismData data;
    data.kind = IsomorphismKind::BasisChange;
    data.a = b.a;
    CHECK(bracket_defect(q, b.params, sufficient_isomorphism(q, b.params, data)) <= 1e-12);

    const DilationParams z = p0_diagonal();
    const Normalization c = normalize(z);
    CHECK(c.a == Eigen::Matrix2d::Identity());
    CHECK(max_abs(c.params.b1 - z.b1) == 0.0);

    CHECK_THROWS_AS(normalize(DilationParams::make(0, 0, m1x1(1), m1x1(2))), PreconditionError);
  }

  TEST_CASE("center dimension") {
    CHECK(center_dim(table_n1()) == 0);
    CHECK(center_dim(p0_diagonal()) == 1);
    for (const auto& p : {table_n1(), row_p1_nilpotent(0.5), row_p1_nilpotent(1.0), p0_diagonal(), p0_nilpotent(),
                          n3_nilpotent()})
      CHECK(center_dim(p) == oracle_center_dim(p));
  }

  TEST_CASE("structure cases and nilradical dimensions") {
    CHECK(structure_case(table_n1()) == 1);
    CHECK(nilradical_dim(table_n1()) == 3);
    CHECK(structure_case(row_p1_nilpotent(0.5)) == 2);
    CHECK(nilradical_dim(row_p1_nilpotent(0.5)) == 6);
    CHECK(structure_case(p0_diagonal()) == 3);
    CHECK(nilradical_dim(p0_diagonal()) == 5);
    CHECK(structure_case(p0_nilpotent()) == 4);
    CHECK(nilradical_dim(p0_nilpotent()) == 6);
    const DilationParams five = n3_nilpotent();
    CHECK(five.validation->ok());
    CHECK(structure_case(five) == 5);
    CHECK(nilradical_dim(five) == lie_dim(3));
    CHECK(is_nilpotent_algebra(five));
    CHECK_FALSE(is_nilpotent_algebra(p0_nilpotent()));
  }

  TEST_CASE("series") {
    // g_{p,B} at n = 1: derived algebra span(X, Y, Z), then span(Z).
    CHECK(derived_series_dims(table_n1()) == std::vector<int>{5, 3, 1, 0});
    CHECK(lower_central_dims(table_n1()) == std::vector<int>{5, 3});
    const auto lcs = lower_central_dims(n3_nilpotent());
    CHECK(lcs.back() == 0);
    CHECK(lcs.front() == lie_dim(3));
  }

  TEST_CASE("the X span is abelian") {
    const DilationParams p = row_p1_nilpotent(1.0);
    Rng rng(37);
    LieElement a = LieElement::zero(2), b = LieElement::zero(2);
    a.x = rng.uniform_vector(2, -1, 1);
    b.x = rng.uniform_vector(2, -1, 1);
    CHECK(bracket(p, a, b).coords().norm() == 0.0);
  }
}
