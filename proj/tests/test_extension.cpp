#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "gpb/extension.hpp"

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

DilationParams table_n1() { return DilationParams::make(1, 0, m1x1(0.5), m1x1(1.0)); }

/// [[e^{pt}, y^T e^{Bt}, z], [0, e^{Bt}, x], [0, 0, 1]] from the Eigen exponential.
RealMatrix oracle_matrix(const DilationParams& p, const GroupElement& g) {
  const int n = p.n;
  const RealMatrix ebt = p.b_of(g.t).exp();
  RealMatrix m = RealMatrix::Identity(n + 2, n + 2);
  m(0, 0) = std::exp(p.p_of(g.t));
  m.block(0, 1, 1, n) = g.y.transpose() * ebt;
  m(0, n + 1) = g.z;
  m.block(1, 1, n, n) = ebt;
  m.block(1, n + 1, n, 1) = g.x;
  return m;
}

RealMatrix oracle_pol(const PolarizedElement& h) {
  const int n = h.n();
  RealMatrix m = RealMatrix::Identity(n + 2, n + 2);
  m.block(0, 1, 1, n) = h.y.transpose();
  m.block(1, n + 1, n, 1) = h.x;
  m(0, n + 1) = h.z;
  return m;
}

GroupElement elem(double t1, double t2, const RealVector& x, const RealVector& y, double z) { return {{t1, t2}, x, y, z}; }

}  // namespace

TEST_SUITE("extension") {
  TEST_CASE("validation examples") {
    const ValidationReport ok = validate_params(table_n1());
    CHECK(ok.commute);
    CHECK(ok.m1_ok);
    CHECK(ok.m2_ok);
    CHECK_FALSE(ok.heuristic);
    CHECK(ok.ok());

    for (double b : {0.0, 0.5, -2.0}) {
      const ValidationReport r = validate_params(DilationParams::make(0, 0, m1x1(b), m1x1(1.0)));
      CHECK_FALSE(r.m1_ok);
    }

    const ValidationReport skew = validate_params(DilationParams::make(0, 0, RealMatrix::Identity(2, 2), m2(0, 1, -1, 0)));
    CHECK(skew.commute);
    CHECK(skew.m1_ok);
    CHECK_FALSE(skew.m2_ok);
    CHECK(skew.heuristic);
    REQUIRE(skew.m2_witness.has_value());

    const ValidationReport nc = validate_params(DilationParams::make(1, 0, m2(1, 1, 0, 1), m2(0, 1, 1, 0)));
    CHECK_FALSE(nc.commute);
    CHECK_FALSE(nc.ok());
  }

  TEST_CASE("validation with p != 0 tests the kernel direction only") {
    // p = (1, 0): the kernel direction is (0, 1), so only B2 matters.
    CHECK_FALSE(validate_params(DilationParams::make(1, 0, RealMatrix::Zero(2, 2), m2(0, 1, -1, 0))).m2_ok);
    CHECK(validate_params(DilationParams::make(1, 0, m2(0, 1, -1, 0), RealMatrix::Identity(2, 2))).m2_ok);
  }

  TEST_CASE("shape errors") {
    CHECK_THROWS_AS(check_shape(DilationParams::make(1, 0, RealMatrix::Zero(2, 2), m1x1(1))), DimensionError);
    DilationParams bad = table_n1();
    bad.b1(0, 0) = std::nan("");
    CHECK_THROWS_AS(check_shape(bad), DimensionError);
  }

  TEST_CASE("d_of_t") {
    const DilationParams p = table_n1();
    CHECK(max_abs(d_of_t(p, {0, 0}) - RealMatrix::Identity(3, 3)) == 0.0);
    RealMatrix expect = RealMatrix::Zero(3, 3);
    expect(0, 0) = std::exp(1.0);
    expect(1, 1) = std::exp(0.5);
    expect(2, 2) = 1.0;
    CHECK(max_abs(d_of_t(p, {1, 0}) - expect) < 1e-15);
    Rng rng(21);
    const DilationParams q = DilationParams::make(1, 0, m2(0.5, 1, 0, 0.5), m2(1, 0.5, 0, 1));
    for (int k = 0; k < 100; ++k) {
      const Eigen::Vector2d t{rng.uniform(-1, 1), rng.uniform(-1, 1)};
      const Eigen::Vector2d s{rng.uniform(-1, 1), rng.uniform(-1, 1)};
      CHECK(max_relative_error(d_of_t(q, t) * d_of_t(q, s), d_of_t(q, t + s)) <= 1e-9);
    }
  }

  TEST_CASE("alpha is conjugation by d(t)") {
    const DilationParams p = DilationParams::make(1, 0, m2(0.5, 1, 0, 0.5), m2(1, 0.5, 0, 1));
    Rng rng(22);
    const PolarizedElement h{rng.uniform_vector(2, -1, 1), rng.uniform_vector(2, -1, 1), 0.3};
    const PolarizedElement h0 = alpha(p, {0, 0}, h);
    CHECK(max_abs(oracle_pol(h0) - oracle_pol(h)) == 0.0);
    for (int k = 0; k < 200; ++k) {
      const Eigen::Vector2d t{rng.uniform(-1, 1), rng.uniform(-1, 1)};
      const Eigen::Vector2d s{rng.uniform(-1, 1), rng.uniform(-1, 1)};
      const PolarizedElement g{rng.uniform_vector(2, -2, 2), rng.uniform_vector(2, -2, 2), rng.uniform(-2, 2)};
      const RealMatrix d = d_of_t(p, t);
      CHECK(max_relative_error(oracle_pol(alpha(p, t, g)), d * oracle_pol(g) * d.inverse()) <= 1e-10);
      CHECK(max_relative_error(oracle_pol(alpha(p, t, alpha(p, s, g))), oracle_pol(alpha(p, t + s, g))) <= 1e-10);
    }
  }

  TEST_CASE("group law examples") {
    const DilationParams p = validated(table_n1());
    const GroupElement a = elem(0, 0, vec({1}), vec({0}), 0);
    const GroupElement b = elem(0, 0, vec({0}), vec({1}), 0);
    CHECK(element_distance(g_mul(p, a, b), elem(0, 0, vec({1}), vec({1}), 0)) == 0.0);
    CHECK(element_distance(g_mul(p, b, a), elem(0, 0, vec({1}), vec({1}), 1)) == 0.0);
    const GroupElement e = GroupElement::identity(1);
    Rng rng(23);
    const GroupElement g = random_element(rng, 1);
    CHECK(element_distance(g_mul(p, e, g), g) == 0.0);
    CHECK(element_distance(g_inverse(p, e), e) == 0.0);
    CHECK((g_inverse(p, g).t + g.t).norm() == 0.0);
    RealMatrix expect = RealMatrix::Identity(3, 3);
    expect(0, 2) = 1.0;
    CHECK(max_abs(g_to_matrix(p, elem(0, 0, vec({0}), vec({0}), 1)) - expect) == 0.0);
    CHECK(max_abs(g_to_matrix(p, e) - RealMatrix::Identity(3, 3)) == 0.0);
  }

  TEST_CASE("group law against the matrix oracle") {
    const DilationParams p = validated(DilationParams::make(1, 0, m2(0.5, 1, 0, 0.5), m2(1, 0.5, 0, 1)));
    Rng rng(24);
    for (int k = 0; k < 1000; ++k) {
      const GroupElement a = random_element(rng, 2);
      const GroupElement b = random_element(rng, 2);
      REQUIRE(max_relative_error(g_to_matrix(p, a), oracle_matrix(p, a)) <= 1e-12);
      REQUIRE(max_relative_error(g_to_matrix(p, g_mul(p, a, b)), oracle_matrix(p, a) * oracle_matrix(p, b)) <= 1e-10);
      REQUIRE(max_relative_error(g_to_matrix(p, g_inverse(p, a)), oracle_matrix(p, a).inverse()) <= 1e-10);
    }
  }

  TEST_CASE("g_to_matrix requires valid parameters") {
    const DilationParams bad = validated(DilationParams::make(0, 0, RealMatrix::Identity(2, 2), m2(0, 1, -1, 0)));
    CHECK_THROWS_AS(g_to_matrix(bad, GroupElement::identity(2)), PreconditionError);
    CHECK_NOTHROW(g_to_matrix_unchecked(bad, GroupElement::identity(2)));
  }

  TEST_CASE("M_k matrices") {
    const DilationParams p = table_n1();
    RealMatrix expect = RealMatrix::Zero(3, 3);
    expect(0, 0) = 1.0;
    expect(1, 1) = 0.5;
    CHECK(max_abs(p.m_matrix(1) - expect) == 0.0);
  }
}
