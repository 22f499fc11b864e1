#include "gpb/representations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

namespace gpb {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

RealVector corner(const Box& b, unsigned mask) {
  RealVector c = b.lo;
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (mask & (1u << i)) c(i) = b.hi(i);
  return c;
}

Box bounding_box(const std::vector<RealVector>& pts) {
  Box out{pts.front(), pts.front()};
  for (const auto& p : pts) {
    out.lo = out.lo.cwiseMin(p);
    out.hi = out.hi.cwiseMax(p);
  }
  return out;
}

/// For affine arg(q) = L q + c the preimage of a box, as a bounding box.
std::function<Box(const Box&)> affine_box_map(const std::function<RealVector(const RealVector&)>& arg, int dim) {
  const RealVector c = arg(RealVector::Zero(dim));
  RealMatrix l(dim, dim);
  for (int i = 0; i < dim; ++i) l.col(i) = arg(RealVector::Unit(dim, i)) - c;
  const RealMatrix l_inv = l.inverse();
  return [l_inv, c, dim](const Box& b) {
    std::vector<RealVector> pts;
    for (unsigned mask = 0; mask < (1u << dim); ++mask) pts.push_back(l_inv * (corner(b, mask) - c));
    return bounding_box(pts);
  };
}

Support keep(Support s) { return s; }
Support forget(Support) { return Support::None; }

RepOperator affine_op(int dim, std::string kind, std::function<Complex(const RealVector&)> weight,
                      std::function<RealVector(const RealVector&)> arg, std::function<Support(Support)> support_map) {
  RepOperator op;
  op.dim = dim;
  op.kind = std::move(kind);
  op.weight = std::move(weight);
  op.arg = std::move(arg);
  op.support_map = std::move(support_map);
  op.box_map = affine_box_map(op.arg, dim);
  return op;
}

RepOperator multiplier(int dim, std::string kind, std::function<Complex(const RealVector&)> weight) {
  RepOperator op;
  op.dim = dim;
  op.kind = std::move(kind);
  op.weight = std::move(weight);
  op.arg = [](const RealVector& q) { return q; };
  op.support_map = keep;
  op.box_map = [](const Box& b) { return b; };
  return op;
}

void require_dim(const RealVector& v, int dim, const char* what) {
  if (v.size() != dim) throw DimensionError(std::string(what) + ": dimension mismatch");
}

}  // namespace

const char* to_string(Support s) {
  switch (s) {
    case Support::None: return "none";
    case Support::OPlus: return "O+";
    case Support::OMinus: return "O-";
    case Support::UPlus: return "U+";
    case Support::UMinus: return "U-";
  }
  return "?";
}

int support_sign(Support s) {
  switch (s) {
    case Support::OPlus:
    case Support::UPlus: return 1;
    case Support::OMinus:
    case Support::UMinus: return -1;
    case Support::None: return 0;
  }
  return 0;
}

bool in_support(Support s, const RealVector& q) {
  const int sign = support_sign(s);
  return sign == 0 || sign * q(0) > 0.0;
}

TestFunction gaussian(const RealVector& center, const RealMatrix& w, const RealVector& kappa) {
  return trig_gaussian(center, w, {{Complex(1.0), kappa}});
}

TestFunction trig_gaussian(const RealVector& center, const RealMatrix& w,
                           const std::vector<std::pair<Complex, RealVector>>& terms) {
  const auto d = center.size();
  if (w.rows() != d || w.cols() != d) throw DimensionError("gaussian: width matrix must match the center");
  if ((w - w.transpose()).norm() > 1e-12 * w.norm()) throw PreconditionError("gaussian: width matrix not symmetric");
  Eigen::LLT<RealMatrix> llt(w);
  if (llt.info() != Eigen::Success) throw PreconditionError("gaussian: width matrix not positive definite");
  for (const auto& t : terms) require_dim(t.second, static_cast<int>(d), "trig_gaussian");

  TestFunction f;
  f.dim = static_cast<int>(d);
  f.eval = [center, w, terms](const RealVector& q) {
    const RealVector e = q - center;
    Complex sum = 0.0;
    for (const auto& [coeff, freq] : terms) sum += coeff * std::exp(2.0 * kPi * kI * freq.dot(q));
    return std::exp(-kPi * e.dot(w * e)) * sum;
  };
  const RealVector sigma = (2.0 * kPi * w).inverse().diagonal().cwiseSqrt();
  f.box = {center - 8.0 * sigma, center + 8.0 * sigma};
  return f;
}

TestFunction restrict_to(const TestFunction& f, Support tag) {
  TestFunction out = f;
  out.support = tag;
  out.eval = [g = f.eval, tag](const RealVector& q) { return in_support(tag, q) ? g(q) : Complex(0.0); };
  const int sign = support_sign(tag);
  if (sign > 0) out.box.lo(0) = std::max(out.box.lo(0), 0.0);
  if (sign < 0) out.box.hi(0) = std::min(out.box.hi(0), 0.0);
  return out;
}

TestFunction RepOperator::apply(const TestFunction& f) const {
  if (f.dim != dim) throw DimensionError("RepOperator::apply: dimension mismatch");
  TestFunction out;
  out.dim = dim;
  out.support = support_map(f.support);
  out.box = box_map(f.box);
  out.eval = [w = weight, a = arg, g = f.eval](const RealVector& q) {
    const Complex c = w(q);
    return c == 0.0 ? Complex(0.0) : c * g(a(q));
  };
  return out;
}

RepOperator compose(const RepOperator& a, const RepOperator& b) {
  if (a.dim != b.dim) throw DimensionError("compose: dimension mismatch");
  RepOperator op;
  op.dim = a.dim;
  op.kind = a.kind + " o " + b.kind;
  op.weight = [wa = a.weight, aa = a.arg, wb = b.weight](const RealVector& q) {
    const Complex c = wa(q);
    return c == 0.0 ? Complex(0.0) : c * wb(aa(q));
  };
  op.arg = [aa = a.arg, ab = b.arg](const RealVector& q) { return ab(aa(q)); };
  op.support_map = [sa = a.support_map, sb = b.support_map](Support s) { return sa(sb(s)); };
  op.box_map = [ba = a.box_map, bb = b.box_map](const Box& box) { return ba(bb(box)); };
  return op;
}

RepOperator identity_op(int dim) { return multiplier(dim, "I", [](const RealVector&) { return Complex(1.0); }); }

RepOperator translation(const RealVector& x) {
  const int d = static_cast<int>(x.size());
  return affine_op(
      d, "T", [](const RealVector&) { return Complex(1.0); }, [x](const RealVector& q) { return RealVector(q - x); },
      forget);
}

RepOperator modulation(const RealVector& x) {
  return multiplier(static_cast<int>(x.size()), "E",
                    [x](const RealVector& q) { return std::exp(2.0 * kPi * kI * x.dot(q)); });
}

RepOperator dilation(const RealMatrix& a) {
  require_square(a, "dilation");
  Eigen::FullPivLU<RealMatrix> lu(a);
  if (!lu.isInvertible()) throw PreconditionError("dilation: singular matrix");
  const RealMatrix a_inv = lu.inverse();
  const double c = std::pow(std::abs(lu.determinant()), -0.5);
  return affine_op(
      static_cast<int>(a.rows()), "S", [c](const RealVector&) { return Complex(c); },
      [a_inv](const RealVector& q) { return RealVector(a_inv * q); }, forget);
}

RepOperator right_dilation(const RealMatrix& a) {
  require_square(a, "right_dilation");
  Eigen::FullPivLU<RealMatrix> lu(a);
  if (!lu.isInvertible()) throw PreconditionError("right_dilation: singular matrix");
  const RealMatrix a_t = a.transpose();
  const double c = std::sqrt(std::abs(lu.determinant()));
  return affine_op(
      static_cast<int>(a.rows()), "S^", [c](const RealVector&) { return Complex(c); },
      [a_t](const RealVector& xi) { return RealVector(a_t * xi); }, forget);
}

RepOperator chirp(const RealMatrix& m) {
  require_square(m, "chirp");
  if ((m - m.transpose()).norm() > 1e-12 * std::max(1.0, m.norm())) throw PreconditionError("chirp: m not symmetric");
  return multiplier(static_cast<int>(m.rows()), "U",
                    [m](const RealVector& q) { return std::exp(kPi * kI * q.dot(m * q)); });
}

RealMatrix m_matrix(double z, const RealVector& x) {
  const auto n = x.size();
  RealMatrix m = RealMatrix::Zero(n + 1, n + 1);
  m(0, 0) = -z;
  m.block(0, 1, 1, n) = -x.transpose();
  m.block(1, 0, n, 1) = -x;
  return m;
}

RealMatrix a_matrix(const DilationParams& params, const Eigen::Vector2d& t, const RealVector& y) {
  const int n = params.n;
  require_dim(y, n, "a_matrix");
  const double pt = params.p_of(t);
  RealMatrix lower = RealMatrix::Identity(n + 1, n + 1);
  lower.block(1, 0, n, 1) = -0.5 * y;
  RealMatrix diag = RealMatrix::Zero(n + 1, n + 1);
  diag(0, 0) = std::exp(-pt / 2.0);
  diag.block(1, 1, n, n) = std::exp(pt / 2.0) * mat_exp(-params.b_of(t)).transpose();
  return lower * diag;
}

RealMatrix h_matrix(const DilationParams& params, const Eigen::Vector2d& t, const RealVector& y) {
  const int n = params.n;
  require_dim(y, n, "h_matrix");
  const RealMatrix e = mat_exp(params.b_of(t));
  RealMatrix h = RealMatrix::Zero(n + 1, n + 1);
  h(0, 0) = std::exp(params.p_of(t));
  h.block(0, 1, 1, n) = y.transpose() * e;
  h.block(1, 1, n, n) = e;
  return h;
}

std::pair<Eigen::Vector2d, RealVector> a_law(const DilationParams& params, const Eigen::Vector2d& t,
                                             const RealVector& y, const Eigen::Vector2d& t2, const RealVector& y2) {
  return {t + t2, y + std::exp(params.p_of(t)) * (mat_exp(-params.b_of(t)).transpose() * y2)};
}

RealMatrix sympl_embed(const DilationParams& params, const GroupElement& g) {
  const int n = params.n;
  const RealMatrix a = a_matrix(params, g.t, g.y);
  RealMatrix k = RealMatrix::Zero(2 * n + 2, 2 * n + 2);
  k.topLeftCorner(n + 1, n + 1) = a;
  k.bottomLeftCorner(n + 1, n + 1) = m_matrix(g.z, g.x) * a;
  k.bottomRightCorner(n + 1, n + 1) = a.inverse().transpose();
  return k;
}

RealMatrix affine_embed(const DilationParams& params, const GroupElement& g) {
  const int n = params.n;
  require_dim(g.x, n, "affine_embed");
  RealMatrix m = RealMatrix::Identity(n + 2, n + 2);
  m.topLeftCorner(n + 1, n + 1) = h_matrix(params, g.t, g.y);
  m(0, n + 1) = g.z;
  m.block(1, n + 1, n, 1) = g.x;
  return m;
}

RepOperator wavelet_op(const DilationParams& params, const GroupElement& g) {
  const int n = params.n;
  require_dim(g.x, n, "wavelet_op");
  require_dim(g.y, n, "wavelet_op");
  const RealMatrix bt = params.b_of(g.t);
  const double pt = params.p_of(g.t);
  const double scale = std::exp(0.5 * bt.trace() + 0.5 * pt);
  const RealMatrix e_t = mat_exp(bt).transpose();
  const double ept = std::exp(pt);
  const double z = g.z;
  const RealVector x = g.x;
  const RealVector y = g.y;
  return affine_op(
      n + 1, "pi^",
      [scale, z, x, n](const RealVector& q) {
        return scale * std::exp(-2.0 * kPi * kI * (q(0) * z + q.tail(n).dot(x)));
      },
      [e_t, ept, y, n](const RealVector& q) {
        RealVector out(n + 1);
        out(0) = q(0) * ept;
        out.tail(n) = e_t * (q(0) * y + q.tail(n));
        return out;
      },
      keep);
}

RepOperator metaplectic_op(const DilationParams& params, const GroupElement& g) {
  const int n = params.n;
  require_dim(g.x, n, "metaplectic_op");
  require_dim(g.y, n, "metaplectic_op");
  const RealMatrix bt = params.b_of(g.t);
  const double pt = params.p_of(g.t);
  const double scale = std::exp(0.5 * bt.trace() + pt * (1.0 - n) / 4.0);
  const RealMatrix v_map = std::exp(-pt / 2.0) * mat_exp(bt).transpose();
  const double u_scale = std::exp(pt / 2.0);
  const double z = g.z;
  const RealVector x = g.x;
  const RealVector y = g.y;
  return affine_op(
      n + 1, "mu",
      [scale, z, x, n](const RealVector& q) {
        const double u = q(0);
        return scale * std::exp(-kPi * kI * (u * u * z + 2.0 * u * q.tail(n).dot(x)));
      },
      [v_map, u_scale, y, n](const RealVector& q) {
        RealVector out(n + 1);
        out(0) = u_scale * q(0);
        out.tail(n) = v_map * (0.5 * q(0) * y + q.tail(n));
        return out;
      },
      keep);
}

RepOperator metaplectic_factored(const DilationParams& params, const GroupElement& g) {
  return compose(chirp(m_matrix(g.z, g.x)), dilation(a_matrix(params, g.t, g.y)));
}

RepOperator wavelet_factored(const DilationParams& params, const GroupElement& g) {
  RealVector zx(params.n + 1);
  zx << g.z, g.x;
  return compose(modulation(-zx), right_dilation(h_matrix(params, g.t, g.y)));
}

RealVector psi_map(const RealVector& q) {
  const double u = q(0);
  RealVector out(q.size());
  out(0) = 0.5 * u * u;
  out.tail(q.size() - 1) = u * q.tail(q.size() - 1);
  return out;
}

RealVector psi_map_inverse(int sign, const RealVector& rxi) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("psi_map_inverse: sign must be +1 or -1");
  const double r = rxi(0);
  if (!(r > 0.0)) throw std::domain_error("psi_map_inverse: r must be positive");
  const double root = std::sqrt(2.0 * r);
  RealVector out(rxi.size());
  out(0) = sign * root;
  out.tail(rxi.size() - 1) = sign * rxi.tail(rxi.size() - 1) / root;
  return out;
}

double psi_jacobian(const RealVector& q) { return std::pow(q(0), static_cast<double>(q.size())); }

RepOperator q_op(int sign, int dim) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("q_op: sign must be +1 or -1");
  const Support target = sign > 0 ? Support::UPlus : Support::UMinus;
  RepOperator op;
  op.dim = dim;
  op.kind = sign > 0 ? "Q+" : "Q-";
  op.weight = [sign, dim](const RealVector& q) {
    return sign * q(0) > 0.0 ? Complex(std::pow(std::abs(q(0)), 0.5 * dim)) : Complex(0.0);
  };
  op.arg = psi_map;
  op.support_map = [target](Support s) {
    if (s != Support::OPlus) throw PreconditionError("Q: input must be supported in O+");
    return target;
  };
  op.box_map = [sign, dim](const Box& b) {
    const double r_lo = std::max(b.lo(0), 1e-12);
    const double r_hi = std::max(b.hi(0), r_lo);
    std::vector<RealVector> pts;
    for (double r : {r_lo, r_hi})
      for (unsigned mask = 0; mask < (1u << (dim - 1)); ++mask) {
        RealVector rxi(dim);
        rxi(0) = r;
        for (int i = 1; i < dim; ++i) rxi(i) = (mask & (1u << (i - 1))) ? b.hi(i) : b.lo(i);
        pts.push_back(psi_map_inverse(sign, rxi));
      }
    return bounding_box(pts);
  };
  return op;
}

RepOperator q_inverse_op(int sign, int dim) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("q_inverse_op: sign must be +1 or -1");
  const Support source = sign > 0 ? Support::UPlus : Support::UMinus;
  RepOperator op;
  op.dim = dim;
  op.kind = sign > 0 ? "Q+^-1" : "Q-^-1";
  op.weight = [dim](const RealVector& q) {
    return q(0) > 0.0 ? Complex(std::pow(2.0 * q(0), -0.25 * dim)) : Complex(0.0);
  };
  op.arg = [sign](const RealVector& q) { return q(0) > 0.0 ? psi_map_inverse(sign, q) : q; };
  op.support_map = [source](Support s) {
    if (s != source) throw PreconditionError("Q^-1: input must be supported in the matching U half-space");
    return Support::OPlus;
  };
  op.box_map = [sign, dim](const Box& b) {
    double u_lo = b.lo(0);
    double u_hi = b.hi(0);
    if (sign > 0) u_lo = std::max(u_lo, 0.0);
    else u_hi = std::min(u_hi, 0.0);
    std::vector<RealVector> pts;
    for (double u : {u_lo, u_hi})
      for (unsigned mask = 0; mask < (1u << (dim - 1)); ++mask) {
        RealVector q(dim);
        q(0) = u;
        for (int i = 1; i < dim; ++i) q(i) = (mask & (1u << (i - 1))) ? b.hi(i) : b.lo(i);
        pts.push_back(psi_map(q));
      }
    return bounding_box(pts);
  };
  return op;
}

std::vector<RealVector> sample_points(const Box& box, int count, Rng& rng, double exclusion) {
  std::vector<RealVector> out;
  const auto d = box.lo.size();
  while (static_cast<int>(out.size()) < count) {
    RealVector q(d);
    for (Eigen::Index i = 0; i < d; ++i) q(i) = rng.uniform(box.lo(i), box.hi(i));
    if (std::abs(q(0)) < exclusion) continue;
    out.push_back(q);
  }
  return out;
}

const char* to_string(RepKind kind) { return kind == RepKind::Wavelet ? "wavelet" : "metaplectic"; }

RepOperator representation(RepKind kind, const DilationParams& params, const GroupElement& g) {
  return kind == RepKind::Wavelet ? wavelet_op(params, g) : metaplectic_op(params, g);
}

double operator_distance(const RepOperator& a, const RepOperator& b, const TestFunction& f,
                         const std::vector<RealVector>& points) {
  double worst = 0.0;
  for (const auto& q : points) worst = std::max(worst, std::abs(a.eval(f, q) - b.eval(f, q)));
  return worst;
}

double check_homomorphism(const DilationParams& params, RepKind kind, const GroupElement& g, const GroupElement& g2,
                          const TestFunction& f, const std::vector<RealVector>& points) {
  const RepOperator product = compose(representation(kind, params, g), representation(kind, params, g2));
  const RepOperator direct = representation(kind, params, g_mul(params, g, g2));
  return operator_distance(product, direct, f, points);
}

double check_intertwining(const DilationParams& params, const GroupElement& g, int sign, const TestFunction& f,
                          const SampleCheckConfig& cfg) {
  const Support tag = sign > 0 ? Support::UPlus : Support::UMinus;
  if (f.support != tag) throw PreconditionError("check_intertwining: probe must be supported in U_sign");
  const int dim = params.n + 1;
  const RepOperator lhs = compose(q_op(sign, dim), compose(wavelet_op(params, g), q_inverse_op(sign, dim)));
  const RepOperator rhs = metaplectic_op(params, g);
  Rng rng(cfg.seed);
  const auto points = sample_points(rhs.box_map(f.box), cfg.points, rng, cfg.exclusion);
  return operator_distance(lhs, rhs, f, points);
}

int support_violations(const RepOperator& op, const TestFunction& f, const std::vector<RealVector>& points) {
  const Support out_tag = op.support_map(f.support);
  int count = 0;
  for (const auto& q : points) {
    const bool inside = in_support(out_tag, q);
    if (inside && !in_support(f.support, op.arg(q))) ++count;
    else if (!inside && op.eval(f, q) != 0.0) ++count;
  }
  return count;
}

namespace {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Composite Gauss-Legendre rule on [lo, hi] with `panels` panels.
Rule composite_rule(double lo, double hi, int panels) {
  using gauss = boost::math::quadrature::gauss<double, 24>;
  const auto& x = gauss::abscissa();
  const auto& w = gauss::weights();
  Rule r;
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (double s : {-1.0, 1.0}) {
        r.nodes.push_back(mid + s * 0.5 * h * x[i]);
        r.weights.push_back(0.5 * h * w[i]);
      }
  }
  return r;
}

double tensor_integral(const TestFunction& f, int panels) {
  const int d = f.dim;
  std::vector<Rule> rules;
  for (int i = 0; i < d; ++i) rules.push_back(composite_rule(f.box.lo(i), f.box.hi(i), panels));
  const std::size_t m = rules[0].nodes.size();
  std::vector<std::size_t> idx(d, 0);
  RealVector q(d);
  double total = 0.0;
  while (true) {
    double weight = 1.0;
    for (int i = 0; i < d; ++i) {
      q(i) = rules[i].nodes[idx[i]];
      weight *= rules[i].weights[idx[i]];
    }
    total += weight * std::norm(f(q));
    int axis = 0;
    while (axis < d && ++idx[axis] == m) idx[axis++] = 0;
    if (axis == d) break;
  }
  return total;
}

}  // namespace

QuadratureResult squared_norm(const TestFunction& f, const QuadratureConfig& cfg) {
  QuadratureResult out;
  double previous = tensor_integral(f, 1);
  out.value = previous;
  out.panels = 1;
  for (int level = 1, panels = 2; level < cfg.max_level; ++level, panels *= 2) {
    const double current = tensor_integral(f, panels);
    out.value = current;
    out.panels = panels;
    if (std::abs(current - previous) <= cfg.tolerance * std::abs(current)) {
      out.converged = true;
      break;
    }
    previous = current;
  }
  return out;
}

UnitarityResult check_norm_preserved(const RepOperator& op, const TestFunction& f, const QuadratureConfig& cfg) {
  const QuadratureResult before = squared_norm(f, cfg);
  const QuadratureResult after = squared_norm(op.apply(f), cfg);
  const double a = std::sqrt(before.value);
  const double b = std::sqrt(after.value);
  return {std::abs(b - a) / a, before.converged && after.converged};
}

UnitarityResult check_unitarity(const DilationParams& params, RepKind kind, const GroupElement& g,
                                const TestFunction& f, const QuadratureConfig& cfg) {
  return check_norm_preserved(representation(kind, params, g), f, cfg);
}

}  // namespace gpb
