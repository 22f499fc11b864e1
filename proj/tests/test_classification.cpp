#include <doctest.h>

#include "gpb/classification.hpp"

using namespace gpb;

namespace {

RealMatrix m2(double a, double b, double c, double d) {
  RealMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

const CatalogEntry& find(const std::vector<CatalogEntry>& entries, const std::string& label) {
  for (const auto& e : entries)
    if (e.label == label) return e;
  FAIL("missing catalog entry " << label);
  return entries.front();
}

RealMatrix gl_symplectic(const RealMatrix& v) {
  const auto n = v.rows();
  RealMatrix s = RealMatrix::Zero(2 * n, 2 * n);
  s.topLeftCorner(n, n) = v;
  s.bottomRightCorner(n, n) = v.inverse().transpose();
  return s;
}

Eigen::Matrix2d random_gl2(Rng& rng) {
  Eigen::Matrix2d a;
  do {
    a << rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2);
  } while (std::abs(a.determinant()) < 0.3);
  return a;
}

}  // namespace

TEST_SUITE("classification") {
  TEST_CASE("invariant vector examples") {
    const auto n1 = catalog(1);
    REQUIRE(n1.size() == 1);
    const InvariantVector v = invariant_vector(n1[0].params);
    CHECK(v.p1 == 1);
    CHECK(v.center_dim == 0);
    CHECK(v.nilradical_dim == 3);
    CHECK_FALSE(v.is_nilpotent_algebra);
    CHECK(v.case_id == 1);

    const DilationParams p4 = validated(DilationParams::make(0, 0, RealMatrix::Identity(2, 2), m2(0, 1, 0, 0)));
    const InvariantVector w = invariant_vector(p4);
    CHECK(w.case_id == 4);
    CHECK(w.nilradical_dim == 6);
    CHECK(w.p1 == 0);
    CHECK(w.center_dim == 1);
  }

  TEST_CASE("catalog contents") {
    const auto n1 = catalog(1);
    CHECK(n1[0].params.p1 == 1.0);
    CHECK(n1[0].params.b1(0, 0) == 0.5);
    CHECK(n1[0].params.b2(0, 0) == 1.0);

    const auto n2 = catalog(2);
    const auto& r4 = find(n2, "n2-p1-r4-a=1");
    CHECK(max_abs(r4.params.b1 - RealMatrix::Identity(2, 2)) == 0.0);
    CHECK(max_abs(r4.params.b2 - m2(0, 1, 0, 0)) == 0.0);
    const auto& r3 = find(n2, "n2-p0-r3");
    CHECK(max_abs(r3.params.b1 - RealMatrix::Identity(2, 2)) == 0.0);
    CHECK(max_abs(r3.params.b2 - m2(0, 1, -1, 0)) == 0.0);
    CHECK(n2.size() == 21);
    for (const auto& e : n2) CHECK(e.params.validation.has_value());

    CHECK_THROWS_AS(catalog(3), std::invalid_argument);
    CatalogChoices bad;
    bad.b = {0.4};
    CHECK_THROWS_AS(catalog(2, bad), std::invalid_argument);
  }

  TEST_CASE("refutation examples") {
    const auto n2 = catalog(2);
    const auto& p0r1 = find(n2, "n2-p0-r1");
    const auto& p0r2 = find(n2, "n2-p0-r2");
    const auto& p1r3 = find(n2, "n2-p1-r3");
    CHECK(refute_isomorphism(p1r3.params, p0r1.params) == std::optional<std::string>("p1"));
    CHECK(refute_isomorphism(p0r1.params, p0r2.params) == std::optional<std::string>("case_id"));
    CHECK_FALSE(refute_isomorphism(p1r3.params, p1r3.params).has_value());
    CHECK(refute_isomorphism(find(n2, "n2-p1-r6-b=0.6").params, find(n2, "n2-p1-r6-b=0.9").params) ==
          std::optional<std::string>("pencil_profile"));
  }

  TEST_CASE("p1 is the witness whenever the centers differ") {
    const auto n2 = catalog(2);
    std::vector<InvariantVector> inv;
    for (const auto& e : n2) inv.push_back(invariant_vector(e.params));
    for (std::size_t i = 0; i < inv.size(); ++i)
      for (std::size_t j = 0; j < inv.size(); ++j)
        if (inv[i].center_dim != inv[j].center_dim) CHECK(refute_isomorphism(inv[i], inv[j]) == std::optional<std::string>("p1"));
  }

  TEST_CASE("invariants survive random sufficient isomorphisms") {
    Rng rng(41);
    const auto n2 = catalog(2);
    for (const auto& e : n2) {
      CAPTURE(e.label);
      const InvariantVector base = invariant_vector(e.params);
      for (int trial = 0; trial < 3; ++trial) {
        DilationParams t = conjugate(e.params, random_well_conditioned(rng, 2, 4.0));
        t = rebase(t, random_gl2(rng));
        if (trial == 2) t = scaled(t, rng.uniform(0.5, 2.0));
        t = validated(t);
        CHECK(t.validation->m1_ok == e.params.validation->m1_ok);
        const InvariantVector other = invariant_vector(t);
        const auto w = refute_isomorphism(base, other);
        CHECK_MESSAGE(!w.has_value(), "witness " << w.value_or(""));
        CHECK(profiles_match(base.pencil_profile, other.pencil_profile));
      }
    }
  }

  TEST_CASE("a symplectic automorphism outside GL(n)") {
    // S = [[I, 0], [K, I]] fixes C_k when K B_k + B_k^T K = p_k K.
    const DilationParams p = validated(DilationParams::make(1, 0, 0.5 * RealMatrix::Identity(2, 2), m2(1, 0, 0, -1)));
    REQUIRE(p.validation->ok());
    RealMatrix s = RealMatrix::Identity(4, 4);
    s.bottomLeftCorner(2, 2) = m2(0, 1, 1, 0);
    IsomorphismData d;
    d.kind = IsomorphismKind::SymplecticConjugacy;
    d.s = s;
    CHECK(bracket_defect(p, p, sufficient_isomorphism(p, p, d)) <= 1e-12);
    Certificate cert;
    cert.s = s;
    CHECK(verify_certificate(p, p, cert).ok);
  }

  TEST_CASE("row 1 with d and -d are isomorphic") {
    const DilationParams a = validated(DilationParams::make(1, 0, m2(0.5, 0, 0, 0.6), m2(1, 0, 0, 0.5)));
    const DilationParams b = validated(DilationParams::make(1, 0, m2(0.5, 0, 0, 0.6), m2(1, 0, 0, -0.5)));
    CHECK_FALSE(refute_isomorphism(invariant_vector(a), invariant_vector(b)));
    // Negate the second generator and swap x1 with y1.
    Certificate cert;
    cert.a << 1, 0, 0, -1;
    cert.s = RealMatrix::Zero(4, 4);
    cert.s(0, 2) = 1;
    cert.s(1, 1) = 1;
    cert.s(2, 0) = -1;
    cert.s(3, 3) = 1;
    CHECK(verify_certificate(a, b, cert).ok);
  }

  TEST_CASE("certificates") {
    const auto n2 = catalog(2);
    const DilationParams a = find(n2, "n2-p1-r2-d=0.5").params;
    Certificate id;
    id.s = RealMatrix::Identity(4, 4);
    const CertificateReport same = verify_certificate(a, a, id);
    CHECK(same.ok);
    REQUIRE(same.bracket_defect.has_value());
    CHECK(*same.bracket_defect <= 1e-12);

    Rng rng(42);
    const RealMatrix v = random_well_conditioned(rng, 2, 4.0);
    const Eigen::Matrix2d a0 = random_gl2(rng);
    const DilationParams b = rebase(conjugate(a, v), a0);
    Certificate cert;
    cert.a = a0.inverse();
    cert.s = gl_symplectic(v);
    const CertificateReport good = verify_certificate(a, b, cert);
    CHECK(good.ok);
    CHECK(good.messages.empty());
    REQUIRE(good.bracket_defect.has_value());
    CHECK(*good.bracket_defect <= 1e-12);
    CHECK(bracket_defect(a, b, certificate_isomorphism(a, b, cert)) <= 1e-12);

    Certificate bent = cert;
    bent.s += 1e-3 * rng.uniform_matrix(4, 4, -1, 1);
    const CertificateReport bad = verify_certificate(a, b, bent);
    CHECK_FALSE(bad.ok);
    CHECK_FALSE(bad.messages.empty());
    CHECK(std::max(bad.c_defect[0], bad.c_defect[1]) > 1e-6);
    CHECK_FALSE(bad.bracket_defect.has_value());

    Certificate wrong_a = cert;
    wrong_a.a = 2.0 * cert.a;
    CHECK_FALSE(verify_certificate(a, b, wrong_a).ok);

    Certificate shape = cert;
    shape.s = RealMatrix::Identity(3, 3);
    CHECK_THROWS_AS(verify_certificate(a, b, shape), CertificateError);
    Certificate singular = cert;
    singular.a = Eigen::Matrix2d::Zero();
    CHECK_THROWS_AS(verify_certificate(a, b, singular), CertificateError);
    Certificate nan = cert;
    nan.s(0, 0) = std::nan("");
    CHECK_THROWS_AS(verify_certificate(a, b, nan), CertificateError);
  }

  TEST_CASE("separation on the catalog") {
    const SeparationReport one = separation_report(catalog(1));
    REQUIRE(one.witness.size() == 1);
    CHECK(one.witness[0][0].empty());
    CHECK(one.inconclusive_off_diagonal() == 0);

    std::vector<CatalogEntry> p0;
    for (const auto& e : catalog(2))
      if (e.p == 0) p0.push_back(e);
    REQUIRE(p0.size() == 3);
    const SeparationReport r = separation_report(p0);
    CHECK(r.inconclusive_off_diagonal() == 0);
    CHECK(r.witness[0][1] == "case_id");
    CHECK(r.witness[1][2] == "case_id");
    CHECK(r.witness[0][2] == r.witness[2][0]);
  }

  TEST_CASE("pencil profile compares up to reparametrization") {
    const auto n2 = catalog(2);
    const DilationParams a = normalize(find(n2, "n2-p1-r1-b=0.6-d=0.5").params).params;
    const PencilProfile pa = pencil_profile(a);
    CHECK(static_cast<int>(pa.sample_indices().size()) == pa.options.samples);
    CHECK(profiles_match(pa, pa));
    const DilationParams b = normalize(find(n2, "n2-p1-r1-b=0.9-d=0.5").params).params;
    CHECK_FALSE(profiles_match(pa, pencil_profile(b)));
  }
}
