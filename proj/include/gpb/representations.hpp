#pragma once

// Symplectic and affine embeddings of G_{p,B}, its wavelet and metaplectic
// representations as pointwise operators, and the intertwiners between them.
//
// Functions live on R^{n+1}. The first coordinate is r (frequency side) or u
// (metaplectic side); the remaining n coordinates are xi or v.

#include <functional>
#include <string>
#include <vector>

#include "gpb/extension.hpp"

namespace gpb {

/// Half-space tags: O+/O- split on r, U+/U- split on u.
enum class Support { None, OPlus, OMinus, UPlus, UMinus };

const char* to_string(Support s);

/// Sign of the first coordinate required by the tag (0 for None).
int support_sign(Support s);

/// True when q lies in the open half-space of the tag (always for None).
bool in_support(Support s, const RealVector& q);

struct Box {
  RealVector lo;
  RealVector hi;
};

struct TestFunction {
  int dim = 0;
  Support support = Support::None;
  std::function<Complex(const RealVector&)> eval;
  /// Region outside of which the function is negligible.
  Box box;

  Complex operator()(const RealVector& q) const { return eval(q); }
};

/// exp(-pi (q - c)^T W (q - c)) exp(2 pi i kappa^T q), W symmetric positive definite.
TestFunction gaussian(const RealVector& center, const RealMatrix& w, const RealVector& kappa);

/// gaussian(center, W, 0) times sum_k coeff_k exp(2 pi i freq_k^T q).
TestFunction trig_gaussian(const RealVector& center, const RealMatrix& w,
                           const std::vector<std::pair<Complex, RealVector>>& terms);

/// f times the indicator of the tagged half-space.
TestFunction restrict_to(const TestFunction& f, Support tag);

/// (T f)(q) = weight(q) f(arg(q)).
struct RepOperator {
  int dim = 0;
  std::string kind;
  std::function<Complex(const RealVector&)> weight;
  std::function<RealVector(const RealVector&)> arg;
  /// Tag of T f given the tag of f.
  std::function<Support(Support)> support_map;
  /// Box where T f is concentrated given the box of f.
  std::function<Box(const Box&)> box_map;

  Complex eval(const TestFunction& f, const RealVector& q) const { return weight(q) * f(arg(q)); }
  TestFunction apply(const TestFunction& f) const;
};

/// a o b.
RepOperator compose(const RepOperator& a, const RepOperator& b);
RepOperator identity_op(int dim);

/// (T_x f)(q) = f(q - x).
RepOperator translation(const RealVector& x);
/// (E_x f)(q) = exp(2 pi i x^T q) f(q).
RepOperator modulation(const RealVector& x);
/// (S_a f)(q) = |det a|^{-1/2} f(a^{-1} q).
RepOperator dilation(const RealMatrix& a);
/// (S^_a g)(xi) = |det a|^{1/2} g(xi a), xi a row vector.
RepOperator right_dilation(const RealMatrix& a);
/// (U_m f)(q) = exp(i pi q^T m q) f(q), m symmetric.
RepOperator chirp(const RealMatrix& m);

/// [[-z, -x^T], [-x, 0]].
RealMatrix m_matrix(double z, const RealVector& x);
/// [[1, 0], [-y/2, I]] diag(e^{-pt/2}, e^{pt/2} e^{-B^T t}).
RealMatrix a_matrix(const DilationParams& params, const Eigen::Vector2d& t, const RealVector& y);
/// [[e^{pt}, y^T e^{Bt}], [0, e^{Bt}]].
RealMatrix h_matrix(const DilationParams& params, const Eigen::Vector2d& t, const RealVector& y);

/// Group law of the dilation part: a(t, y) a(t~, y~) = a(t + t~, y + e^{pt} e^{-B^T t} y~).
std::pair<Eigen::Vector2d, RealVector> a_law(const DilationParams& params, const Eigen::Vector2d& t,
                                             const RealVector& y, const Eigen::Vector2d& t2, const RealVector& y2);

/// [[a, 0], [m a, a^{-T}]] in Sp(n+1).
RealMatrix sympl_embed(const DilationParams& params, const GroupElement& g);
/// [[h, (z; x)], [0, 1]] in Aff(n+1).
RealMatrix affine_embed(const DilationParams& params, const GroupElement& g);

/// [pi^(g) f](r, xi) = delta^{1/2} e^{pt/2} e^{-2 pi i (r z + xi x)} f(r e^{pt}, (r y^T + xi) e^{Bt}).
RepOperator wavelet_op(const DilationParams& params, const GroupElement& g);
/// [mu(g) f](u, v) = delta^{1/2} e^{pt(1-n)/4} e^{-i pi (u^2 z + 2 u v^T x)}
///                   f(e^{pt/2} u, e^{-pt/2} e^{B^T t} (u y / 2 + v)).
RepOperator metaplectic_op(const DilationParams& params, const GroupElement& g);
/// U_{m(z,x)} S_{a(t,y)}.
RepOperator metaplectic_factored(const DilationParams& params, const GroupElement& g);
/// E^_{-(z;x)} S^_{h(t,y)}.
RepOperator wavelet_factored(const DilationParams& params, const GroupElement& g);

/// Psi(u; v) = (u^2 / 2, u v).
RealVector psi_map(const RealVector& q);
/// The preimage in U_sign; throws std::domain_error unless r > 0.
RealVector psi_map_inverse(int sign, const RealVector& rxi);
/// u^{n+1}.
double psi_jacobian(const RealVector& q);

/// (Q_sign f)(q) = |u|^{(n+1)/2} f(Psi(q)) on U_sign, 0 elsewhere. Accepts
/// O+ functions; apply() throws PreconditionError for other tags.
RepOperator q_op(int sign, int dim);
/// (2r)^{-(n+1)/4} f(Psi^{-1}_sign(r, xi)) for r > 0, 0 elsewhere. Accepts U_sign.
RepOperator q_inverse_op(int sign, int dim);

// ---------------------------------------------------------------------------
// Numerical checks

struct SampleCheckConfig {
  int points = 200;
  std::uint64_t seed = kDefaultSeed;
  double tolerance = 1e-9;
  /// Excluded band |first coordinate| < exclusion around the singular set.
  double exclusion = 1e-3;
};

/// Points drawn uniformly from `box`, first coordinates outside the band.
std::vector<RealVector> sample_points(const Box& box, int count, Rng& rng, double exclusion = 1e-3);

enum class RepKind { Wavelet, Metaplectic };

const char* to_string(RepKind kind);

RepOperator representation(RepKind kind, const DilationParams& params, const GroupElement& g);

/// max over points of |rho(g) rho(g~) f - rho(g g~) f|.
double check_homomorphism(const DilationParams& params, RepKind kind, const GroupElement& g, const GroupElement& g2,
                          const TestFunction& f, const std::vector<RealVector>& points);

/// max over points of |a f - b f|.
double operator_distance(const RepOperator& a, const RepOperator& b, const TestFunction& f,
                         const std::vector<RealVector>& points);

/// max over sample points of |Q pi^+(g) Q^{-1} f - mu(g) f|, f tagged U_sign.
double check_intertwining(const DilationParams& params, const GroupElement& g, int sign, const TestFunction& f,
                          const SampleCheckConfig& cfg);

/// Points q where T f is nonzero outside its declared tag, or where q and
/// arg(q) fall on different sides of the split.
int support_violations(const RepOperator& op, const TestFunction& f, const std::vector<RealVector>& points);

struct QuadratureConfig {
  /// Panels per axis run through 1, 2, 4, ... up to 2^(max_level - 1); each
  /// panel uses a 24-node Gauss-Legendre rule.
  int max_level = 4;
  double tolerance = 1e-6;
};

struct QuadratureResult {
  double value = 0.0;
  bool converged = false;
  int panels = 0;
};

/// Integral of |f|^2 over f.box by tensor Gauss-Legendre, doubling the panels
/// per axis until two levels agree to the tolerance.
QuadratureResult squared_norm(const TestFunction& f, const QuadratureConfig& cfg = {});

struct UnitarityResult {
  double relative_error = 0.0;
  bool converged = false;
};

/// | ||T f|| - ||f|| | / ||f||.
UnitarityResult check_norm_preserved(const RepOperator& op, const TestFunction& f, const QuadratureConfig& cfg = {});

UnitarityResult check_unitarity(const DilationParams& params, RepKind kind, const GroupElement& g,
                                const TestFunction& f, const QuadratureConfig& cfg = {});

}  // namespace gpb
