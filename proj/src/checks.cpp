#include "gpb/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gpb/lie_algebra.hpp"

namespace gpb {

bool all_pass(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass(); });
}

namespace {

void record(CheckResult& r, double err, const GroupElement& g) {
  if (std::isnan(err)) err = std::numeric_limits<double>::infinity();
  if (!r.worst || err > r.max_error) {
    r.max_error = std::max(r.max_error, err);
    r.worst = g;
  }
}

}  // namespace

std::vector<CheckResult> group_checks(const DilationParams& params, const GroupCheckConfig& cfg) {
  const int n = params.n;
  Rng rng(cfg.seed);
  CheckResult law{"group_law_vs_matrix", 0.0, cfg.law_tol, {}};
  CheckResult assoc{"associativity", 0.0, cfg.law_tol, {}};
  CheckResult inverse{"inverse", 0.0, cfg.law_tol, {}};
  for (int i = 0; i < cfg.law_pairs; ++i) {
    const GroupElement a = random_element(rng, n);
    const GroupElement b = random_element(rng, n);
    const GroupElement c = random_element(rng, n);
    const GroupElement ab = g_mul(params, a, b);
    record(law, max_relative_error(g_to_matrix_unchecked(params, ab),
                                   g_to_matrix_unchecked(params, a) * g_to_matrix_unchecked(params, b)),
           a);
    record(assoc, element_distance(g_mul(params, ab, c), g_mul(params, a, g_mul(params, b, c))), a);
    const GroupElement e = GroupElement::identity(n);
    const GroupElement ai = g_inverse(params, a);
    record(inverse, std::max(element_distance(g_mul(params, a, ai), e), element_distance(g_mul(params, ai, a), e)), a);
  }

  CheckResult exp_hom{"dilation_homomorphism", 0.0, cfg.exp_tol, {}};
  for (int i = 0; i < cfg.exp_pairs; ++i) {
    const Eigen::Vector2d t{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const Eigen::Vector2d s{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    GroupElement g = GroupElement::identity(n);
    g.t = t;
    record(exp_hom, max_relative_error(d_of_t(params, t) * d_of_t(params, s), d_of_t(params, t + s)), g);
  }

  CheckResult sympl{"symplectic_embedding_in_sp", 0.0, cfg.embed_tol, {}};
  CheckResult sympl_mul{"symplectic_embedding_multiplicative", 0.0, cfg.embed_tol, {}};
  CheckResult aff_mul{"affine_embedding_multiplicative", 0.0, cfg.embed_tol, {}};
  const RealMatrix j = symplectic_unit(n + 1);
  for (int i = 0; i < cfg.embed_pairs; ++i) {
    const GroupElement a = random_element(rng, n);
    const GroupElement b = random_element(rng, n);
    const GroupElement ab = g_mul(params, a, b);
    const RealMatrix ka = sympl_embed(params, a);
    record(sympl, max_abs(ka.transpose() * j * ka - j), a);
    record(sympl_mul, max_relative_error(sympl_embed(params, ab), ka * sympl_embed(params, b)), a);
    record(aff_mul, max_relative_error(affine_embed(params, ab), affine_embed(params, a) * affine_embed(params, b)), a);
  }
  return {law, assoc, inverse, exp_hom, sympl, sympl_mul, aff_mul};
}

std::vector<CheckResult> lie_checks(const DilationParams& params, double tol) {
  const int n = params.n;
  const int dim = lie_dim(n);
  CheckResult comm{"bracket_vs_commutator", 0.0, tol, {}};
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      const LieElement u = LieElement::basis(n, a);
      const LieElement v = LieElement::basis(n, b);
      const RealMatrix lhs = lie_to_matrix(params, bracket(params, u, v));
      const RealMatrix rhs = commutator(lie_to_matrix(params, u), lie_to_matrix(params, v));
      comm.max_error = std::max(comm.max_error, max_abs(lhs - rhs));
    }
  CheckResult jacobi{"jacobi", jacobi_defect(params), tol, {}};
  return {comm, jacobi};
}

TestFunction random_probe(Rng& rng, int dim, Support tag, bool interior) {
  RealVector center = rng.uniform_vector(dim, -1.0, 1.0);
  const int sign = support_sign(tag);
  if (sign != 0) center(0) = sign * (interior ? rng.uniform(2.5, 3.5) : rng.uniform(1.0, 2.0));
  const RealMatrix l = rng.uniform_matrix(dim, dim, -0.5, 0.5);
  RealMatrix w = l * l.transpose() + 0.5 * RealMatrix::Identity(dim, dim);
  if (interior && sign != 0) w(0, 0) += 1.5;
  const RealVector kappa = rng.uniform_vector(dim, -1.0, 1.0);
  const TestFunction f = gaussian(center, 0.5 * (w + w.transpose()), kappa);
  return tag == Support::None ? f : restrict_to(f, tag);
}

namespace {

/// Box of T f together with its mirror image in the first coordinate.
Box symmetric_box(const Box& b) {
  Box out = b;
  const double m = std::max(std::abs(b.lo(0)), std::abs(b.hi(0)));
  out.lo(0) = -m;
  out.hi(0) = m;
  return out;
}

}  // namespace

std::vector<CheckResult> rep_checks(const DilationParams& params, const RepCheckConfig& cfg) {
  const int n = params.n;
  const int dim = n + 1;
  Rng rng(cfg.seed);
  CheckResult wav_hom{"wavelet_homomorphism", 0.0, cfg.tolerance, {}};
  CheckResult met_hom{"metaplectic_homomorphism", 0.0, cfg.tolerance, {}};
  CheckResult met_fac{"metaplectic_factorization", 0.0, cfg.factor_tolerance, {}};
  CheckResult wav_fac{"wavelet_factorization", 0.0, cfg.factor_tolerance, {}};
  CheckResult inter_plus{"intertwining_plus", 0.0, cfg.tolerance, {}};
  CheckResult inter_minus{"intertwining_minus", 0.0, cfg.tolerance, {}};
  CheckResult support{"support_violations", 0.0, 0.0, {}};

  const Support wavelet_tags[] = {Support::None, Support::OPlus, Support::OMinus};
  const Support meta_tags[] = {Support::None, Support::UPlus, Support::UMinus};

  for (int pair = 0; pair < cfg.pairs; ++pair) {
    const GroupElement g = random_element(rng, n);
    const GroupElement g2 = random_element(rng, n);
    const GroupElement gg = g_mul(params, g, g2);
    for (int k = 0; k < cfg.probes; ++k) {
      const TestFunction fw = random_probe(rng, dim, wavelet_tags[k % 3]);
      const TestFunction fm = random_probe(rng, dim, meta_tags[k % 3]);

      const RepOperator w_direct = wavelet_op(params, gg);
      auto pts = sample_points(w_direct.box_map(fw.box), cfg.points, rng);
      record(wav_hom, check_homomorphism(params, RepKind::Wavelet, g, g2, fw, pts), g);

      const RepOperator m_direct = metaplectic_op(params, gg);
      pts = sample_points(m_direct.box_map(fm.box), cfg.points, rng);
      record(met_hom, check_homomorphism(params, RepKind::Metaplectic, g, g2, fm, pts), g);

      const RepOperator m_g = metaplectic_op(params, g);
      pts = sample_points(m_g.box_map(fm.box), cfg.points, rng);
      record(met_fac, operator_distance(m_g, metaplectic_factored(params, g), fm, pts), g);

      const RepOperator w_g = wavelet_op(params, g);
      pts = sample_points(w_g.box_map(fw.box), cfg.points, rng);
      record(wav_fac, operator_distance(w_g, wavelet_factored(params, g), fw, pts), g);

      const int sign = k % 2 == 0 ? 1 : -1;
      const TestFunction fu = random_probe(rng, dim, sign > 0 ? Support::UPlus : Support::UMinus);
      SampleCheckConfig sc;
      sc.points = cfg.points;
      sc.seed = rng.engine()();
      record(sign > 0 ? inter_plus : inter_minus, check_intertwining(params, g, sign, fu, sc), g);

      // Support preservation of the representations and of Q, Q^-1.
      int violations = 0;
      if (fw.support != Support::None) {
        pts = sample_points(symmetric_box(w_g.box_map(fw.box)), cfg.points, rng);
        violations += support_violations(w_g, fw, pts);
      }
      if (fm.support != Support::None) {
        pts = sample_points(symmetric_box(m_g.box_map(fm.box)), cfg.points, rng);
        violations += support_violations(m_g, fm, pts);
      }
      const TestFunction fo = random_probe(rng, dim, Support::OPlus);
      const RepOperator q = q_op(sign, dim);
      pts = sample_points(symmetric_box(q.box_map(fo.box)), cfg.points, rng);
      violations += support_violations(q, fo, pts);
      const RepOperator qi = q_inverse_op(sign, dim);
      pts = sample_points(symmetric_box(qi.box_map(fu.box)), cfg.points, rng);
      violations += support_violations(qi, fu, pts);
      if (violations > support.max_error) {
        support.max_error = violations;
        support.worst = g;
      }
    }
  }
  std::vector<CheckResult> out{wav_hom, met_hom, met_fac, wav_fac, inter_plus, inter_minus, support};

  if (cfg.unitarity_elements > 0) {
    CheckResult wav_unit{"wavelet_unitarity", 0.0, cfg.unitarity_tolerance, {}};
    CheckResult met_unit{"metaplectic_unitarity", 0.0, cfg.unitarity_tolerance, {}};
    CheckResult q_unit{"q_unitarity", 0.0, cfg.unitarity_tolerance, {}};
    auto note = [](CheckResult& r, const UnitarityResult& u, const GroupElement& g) {
      // A non-converged quadrature counts as a failure.
      record(r, u.converged ? u.relative_error : std::max(u.relative_error, 2.0 * r.tolerance + 1.0), g);
    };
    for (int i = 0; i < cfg.unitarity_elements; ++i) {
      // Small elements keep the transformed probes resolvable on the grid.
      const GroupElement g = random_element(rng, n, 0.5, 1.0);
      note(wav_unit, check_unitarity(params, RepKind::Wavelet, g, random_probe(rng, dim, Support::None), cfg.quadrature), g);
      note(met_unit, check_unitarity(params, RepKind::Metaplectic, g, random_probe(rng, dim, Support::None), cfg.quadrature), g);
    }
    const GroupElement e = GroupElement::identity(n);
    for (int sign : {1, -1}) {
      note(q_unit, check_norm_preserved(q_op(sign, dim), random_probe(rng, dim, Support::OPlus, true), cfg.quadrature), e);
      note(q_unit,
           check_norm_preserved(q_inverse_op(sign, dim),
                                random_probe(rng, dim, sign > 0 ? Support::UPlus : Support::UMinus, true), cfg.quadrature),
           e);
    }
    out.push_back(wav_unit);
    out.push_back(met_unit);
    out.push_back(q_unit);
  }
  return out;
}

}  // namespace gpb
