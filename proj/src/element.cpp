#include "evem/element.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "evem/quadrature.hpp"

namespace evem {

std::string_view to_string(ProjectionNorm norm) {
  return norm == ProjectionNorm::L2 ? "l2" : "energy";
}

ProjectionNorm parse_projection_norm(std::string_view tag) {
  std::string t(tag);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "l2") return ProjectionNorm::L2;
  if (t == "energy") return ProjectionNorm::Energy;
  throw std::invalid_argument("unknown projection norm '" + std::string(tag) + "'");
}

ElementError::ElementError(int cell, const std::string& what)
    : std::runtime_error(cell >= 0 ? "cell " + std::to_string(cell) + ": " + what : what),
      cell_(cell) {}

DofLayout dof_layout(int m, int k, BasisKind kind, int p) {
  if (m < 3) throw std::invalid_argument("an element needs at least 3 vertices");
  if (k != 1 && k != 2) throw std::invalid_argument("k must be 1 or 2");
  DofLayout l;
  l.m = m;
  l.k = k;
  l.boundary = 2 * m * k;
  switch (kind) {
    case BasisKind::Standard:
    case BasisKind::Ucp: l.moment_degree = p - 1; break;
    case BasisKind::Dfp: l.moment_degree = -1; break;
    case BasisKind::Hyp: l.moment_degree = k - 2; break;
  }
  l.internal = 2 * monomial_count(l.moment_degree);
  return l;
}

void ElementConfig::validate() const {
  if (k != 1 && k != 2) throw std::invalid_argument("k must be 1 or 2");
  if (!(tau >= 0.0)) throw std::invalid_argument("tau must be non-negative");
  if (s && *s < 1) throw std::invalid_argument("stabilization order must be >= 1");
  switch (kind) {
    case BasisKind::Standard:
      if (p != k - 1) throw std::invalid_argument("standard VEM requires p = k - 1");
      if (norm != ProjectionNorm::L2) throw std::invalid_argument("standard VEM uses the L2 norm");
      if (s != k) throw std::invalid_argument("standard VEM requires s = k");
      break;
    case BasisKind::Ucp:
      if (p < 1 || p > 4) throw std::invalid_argument("UCP requires 1 <= p <= 4");
      break;
    case BasisKind::Dfp:
      if (p < 1 || p > 4) throw std::invalid_argument("DFP requires 1 <= p <= 4");
      if (norm != ProjectionNorm::Energy) throw std::invalid_argument("DFP requires the energy norm");
      break;
    case BasisKind::Hyp:
      if (k != 2) throw std::invalid_argument("HYP requires k = 2");
      if (p < 3 || p > 4) throw std::invalid_argument("HYP requires p in {3, 4}");
      if (norm != ProjectionNorm::Energy) throw std::invalid_argument("HYP requires the energy norm");
      break;
  }
}

bool mode_condition(int m, int k, BasisKind kind, int p) {
  return mode_count(kind, p) >= dof_layout(m, k, kind, p).n() - 3;
}

int fallback_stabilization_order(int k, BasisKind kind) {
  switch (kind) {
    case BasisKind::Standard: return k;
    case BasisKind::Ucp: return 4;
    case BasisKind::Dfp: return k == 1 ? 2 : 3;
    case BasisKind::Hyp: return 3;
  }
  return k;
}

PChoice choose_p(int m, int k, BasisKind kind) {
  if (m < 3) throw std::invalid_argument("an element needs at least 3 vertices");
  if (k != 1 && k != 2) throw std::invalid_argument("k must be 1 or 2");
  if (kind == BasisKind::Standard) return {k - 1, k};
  if (kind == BasisKind::Hyp && k != 2) throw std::invalid_argument("HYP requires k = 2");
  const int first = kind == BasisKind::Hyp ? 3 : 1;
  const int cap = k == 1 ? 3 : 4;
  for (int p = first; p <= cap; ++p) {
    if (mode_condition(m, k, kind, p)) return {p, std::nullopt};
  }
  return {cap, fallback_stabilization_order(k, kind)};
}

ElementConfig configure_element(int m, int k, BasisKind kind, std::optional<int> p,
                                std::optional<ProjectionNorm> norm, double tau) {
  ElementConfig c;
  c.k = k;
  c.kind = kind;
  c.tau = tau;
  if (kind == BasisKind::Standard) {
    if (p && *p != k - 1) throw std::invalid_argument("standard VEM requires p = k - 1");
    if (norm && *norm != ProjectionNorm::L2) {
      throw std::invalid_argument("standard VEM uses the L2 norm");
    }
    c.p = k - 1;
    c.s = k;
    c.norm = ProjectionNorm::L2;
    c.validate();
    return c;
  }
  c.norm = norm.value_or(ProjectionNorm::Energy);
  if (p) {
    c.p = *p;
    c.validate();
    if (!mode_condition(m, k, kind, c.p)) {
      const int n = dof_layout(m, k, kind, c.p).n();
      int s = fallback_stabilization_order(k, kind);
      while (s > k && (s + 1) * (s + 2) > n) --s;
      c.s = s;
    }
  } else {
    const auto choice = choose_p(m, k, kind);
    c.p = choice.p;
    c.s = choice.s;
  }
  c.validate();
  return c;
}

StrainBasis make_basis(const ElementConfig& config) {
  switch (config.kind) {
    case BasisKind::Standard: return build_standard_basis(config.k);
    case BasisKind::Ucp: return build_ucp_basis(config.p);
    case BasisKind::Dfp: return build_dfp_basis(config.p);
    case BasisKind::Hyp: return build_hyp_basis(config.k, config.p);
  }
  throw std::logic_error("unknown basis kind");
}

ElementGeometry element_geometry(std::span<const Point2> vertices) {
  const auto g = polygon_geometry(vertices);
  ElementGeometry e;
  e.vertices.assign(vertices.begin(), vertices.end());
  e.area = g.area;
  e.centroid = g.centroid;
  e.diameter = g.diameter;
  e.frame = {g.centroid, g.diameter};
  return e;
}

std::vector<Point2> element_nodes(const ElementGeometry& geometry, int k) {
  std::vector<Point2> nodes = geometry.vertices;
  if (k == 2) {
    const std::size_t m = geometry.vertices.size();
    for (std::size_t i = 0; i < m; ++i) {
      nodes.push_back(0.5 * (geometry.vertices[i] + geometry.vertices[(i + 1) % m]));
    }
  }
  return nodes;
}

ProjectionBasis projection_basis(const StrainBasis& basis, const Eigen::Matrix3d& c,
                                 ProjectionNorm norm) {
  ProjectionBasis pb;
  pb.degree = std::max(basis.degree(), 0);
  if (basis.field() == BasisField::Stress) {
    if (norm != ProjectionNorm::Energy) {
      throw std::invalid_argument("stress bases require the energy norm");
    }
    const Eigen::Matrix3d compliance = c.inverse();
    for (const auto& col : basis.columns) {
      pb.strain.push_back(transform(compliance, col));
      pb.test.push_back(col);
    }
    return pb;
  }
  pb.strain = basis.columns;
  if (norm == ProjectionNorm::L2) {
    pb.test = basis.columns;
  } else {
    for (const auto& col : basis.columns) pb.test.push_back(transform(c, col));
  }
  return pb;
}

namespace {

double inner(const PolyVec3& a, const PolyVec3& b, const MonomialIntegrals& integrals) {
  double s = 0.0;
  for (int c = 0; c < 3; ++c) s += integrals.integrate_product(a[c], b[c]);
  return s;
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& a) { return 0.5 * (a + a.transpose()); }

}  // namespace

Eigen::MatrixXd compute_G(const ProjectionBasis& basis, const MonomialIntegrals& integrals,
                          int cell) {
  const int nm = basis.modes();
  Eigen::MatrixXd g(nm, nm);
  for (int i = 0; i < nm; ++i) {
    for (int j = 0; j < nm; ++j) g(i, j) = inner(basis.strain[i], basis.test[j], integrals);
  }
  g = symmetrized(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double lo = ev.minCoeff();
  const double hi = ev.cwiseAbs().maxCoeff();
  if (!(lo > 0.0) || hi / lo > 1e14) {
    throw ElementError(cell, "projection matrix G is numerically singular (condition " +
                                 std::to_string(lo > 0.0 ? hi / lo : INFINITY) + ")");
  }
  return g;
}

Eigen::MatrixXd compute_H(const ProjectionBasis& basis, const Eigen::Matrix3d& c,
                          const MonomialIntegrals& integrals) {
  const int nm = basis.modes();
  std::vector<PolyVec3> stress;
  stress.reserve(nm);
  for (const auto& e : basis.strain) stress.push_back(transform(c, e));
  Eigen::MatrixXd h(nm, nm);
  for (int i = 0; i < nm; ++i) {
    for (int j = i; j < nm; ++j) {
      h(i, j) = inner(basis.strain[i], stress[j], integrals);
      h(j, i) = h(i, j);
    }
  }
  return h;
}

Eigen::MatrixXd compute_B_tilde(const ProjectionBasis& basis, const ElementGeometry& geometry,
                                const DofLayout& layout) {
  const int nm = basis.modes();
  const int m = layout.m;
  const int k = layout.k;
  Eigen::MatrixXd bt = Eigen::MatrixXd::Zero(nm, layout.boundary);
  const LineRule& g = gauss_legendre((basis.degree + k + 2) / 2 + 1);
  std::vector<double> vals(monomial_count(basis.degree));
  for (int e = 0; e < m; ++e) {
    const Point2 a = geometry.vertices[e];
    const Point2 b = geometry.vertices[(e + 1) % m];
    const double len = norm(b - a);
    const Point2 nrm = edge_normal(geometry.vertices, e);
    const int na = e;
    const int nb = (e + 1) % m;
    const int nmid = m + e;
    for (std::size_t q = 0; q < g.points.size(); ++q) {
      const double t = g.points[q];
      const double w = g.weights[q] * len;
      const Point2 x = geometry.frame.to_local(a + t * (b - a));
      monomial_values(x.x, x.y, basis.degree, vals);
      double phi[3];
      int node[3];
      int count = 2;
      if (k == 1) {
        phi[0] = 1.0 - t;
        phi[1] = t;
      } else {
        phi[0] = (1.0 - t) * (1.0 - 2.0 * t);
        phi[1] = t * (2.0 * t - 1.0);
        phi[2] = 4.0 * t * (1.0 - t);
        node[2] = nmid;
        count = 3;
      }
      node[0] = na;
      node[1] = nb;
      for (int j = 0; j < nm; ++j) {
        const auto& col = basis.test[j];
        const double s1 = col[0].evaluate(vals);
        const double s2 = col[1].evaluate(vals);
        const double s3 = col[2].evaluate(vals);
        const double tx = nrm.x * s1 + nrm.y * s3;
        const double ty = nrm.y * s2 + nrm.x * s3;
        for (int i = 0; i < count; ++i) {
          bt(j, 2 * node[i]) += w * phi[i] * tx;
          bt(j, 2 * node[i] + 1) += w * phi[i] * ty;
        }
      }
    }
  }
  return bt;
}

Eigen::VectorXd moment_weights(const ElementGeometry& geometry, const DofLayout& layout,
                               const MonomialIntegrals& integrals) {
  const int nq = layout.moment_degree < 0 ? 0 : monomial_count(layout.moment_degree);
  Eigen::VectorXd w(nq);
  for (int a = 0; a < nq; ++a) {
    const auto ma = monomial_at(a);
    w(a) = a == 0 ? 1.0 : std::sqrt(integrals(2 * ma.a, 2 * ma.b) / geometry.area);
  }
  return w;
}

Eigen::MatrixXd compute_B_hat(const ProjectionBasis& basis, const ElementGeometry& geometry,
                              const DofLayout& layout, const Eigen::VectorXd& weights) {
  const int nm = basis.modes();
  Eigen::MatrixXd bh = Eigen::MatrixXd::Zero(nm, layout.internal);
  const int q = layout.moment_degree;
  const int nq = monomial_count(q);
  for (int j = 0; j < nm; ++j) {
    const auto div = equilibrium_operator(basis.test[j], geometry.frame.scale);
    for (int c = 0; c < 2; ++c) {
      const auto coeffs = div[c].coefficients();
      double scale = 0.0;
      for (double v : coeffs) scale = std::max(scale, std::abs(v));
      if (div[c].degree(1e-13 * scale) > q) {
        throw std::logic_error("L^T of a test mode exceeds the internal moment degree");
      }
      for (int a = 0; a < nq && a < static_cast<int>(coeffs.size()); ++a) {
        bh(j, 2 * a + c) = -geometry.area * coeffs[a] * weights(a);
      }
    }
  }
  return bh;
}

Eigen::MatrixXd compute_Kc(const Eigen::MatrixXd& g, const Eigen::MatrixXd& b,
                           const Eigen::MatrixXd& h) {
  const Eigen::MatrixXd x = g.ldlt().solve(b);
  return symmetrized(x.transpose() * h * x);
}

Eigen::MatrixXd compute_Kc_energy(const Eigen::MatrixXd& g, const Eigen::MatrixXd& b) {
  return symmetrized(b.transpose() * g.ldlt().solve(b));
}

Eigen::MatrixXd compute_D(const ElementGeometry& geometry, const DofLayout& layout, int s,
                          const MonomialIntegrals& integrals) {
  if (s < 1) throw std::invalid_argument("stabilization order must be >= 1");
  const int ns = monomial_count(s);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(layout.n(), 2 * ns);
  const auto nodes = element_nodes(geometry, layout.k);
  std::vector<double> vals(ns);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Point2 x = geometry.frame.to_local(nodes[i]);
    monomial_values(x.x, x.y, s, vals);
    for (int b = 0; b < ns; ++b) {
      d(2 * i, 2 * b) = vals[b];
      d(2 * i + 1, 2 * b + 1) = vals[b];
    }
  }
  const Eigen::VectorXd w = moment_weights(geometry, layout, integrals);
  for (int a = 0; a < w.size(); ++a) {
    const auto ma = monomial_at(a);
    for (int b = 0; b < ns; ++b) {
      const auto mb = monomial_at(b);
      const double v = integrals(ma.a + mb.a, ma.b + mb.b) / (geometry.area * w(a));
      d(layout.boundary + 2 * a, 2 * b) = v;
      d(layout.boundary + 2 * a + 1, 2 * b + 1) = v;
    }
  }
  return d;
}

Eigen::MatrixXd compute_Ks(const Eigen::MatrixXd& kc, const Eigen::MatrixXd& d, double tau,
                           int cell) {
  const int n = static_cast<int>(kc.rows());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(d, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= 1e-10 * sv(0) || d.cols() > d.rows()) {
    throw ElementError(cell, "stabilization matrix D is rank deficient");
  }
  const Eigen::MatrixXd& u = svd.matrixU();
  Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(n, n) - u * u.transpose();
  return symmetrized(tau * kc.trace() * proj);
}

Eigen::VectorXd load_vector(const VectorField2& body, const ElementGeometry& geometry,
                            const DofLayout& layout, const MonomialIntegrals& integrals) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(layout.n());
  if (layout.internal == 0) {
    const double share = geometry.area / layout.m;
    for (int i = 0; i < layout.m; ++i) {
      const Eigen::Vector2d b = body(geometry.vertices[i]);
      f(2 * i) = share * b.x();
      f(2 * i + 1) = share * b.y();
    }
    return f;
  }
  const int q = layout.moment_degree;
  const int nq = monomial_count(q);
  Eigen::MatrixXd mass(nq, nq);
  for (int a = 0; a < nq; ++a) {
    const auto ma = monomial_at(a);
    for (int b = 0; b < nq; ++b) {
      const auto mb = monomial_at(b);
      mass(a, b) = integrals(ma.a + mb.a, ma.b + mb.b);
    }
  }
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(nq, 2);
  std::vector<double> vals(nq);
  for (const auto& qp : polygon_rule(geometry.vertices, std::max(q + 10, 12))) {
    const Eigen::Vector2d b = body(qp.point);
    const Point2 x = geometry.frame.to_local(qp.point);
    monomial_values(x.x, x.y, q, vals);
    for (int a = 0; a < nq; ++a) {
      rhs(a, 0) += qp.weight * b.x() * vals[a];
      rhs(a, 1) += qp.weight * b.y() * vals[a];
    }
  }
  const Eigen::MatrixXd coeffs = mass.ldlt().solve(rhs);
  const Eigen::VectorXd w = moment_weights(geometry, layout, integrals);
  for (int a = 0; a < nq; ++a) {
    f(layout.boundary + 2 * a) = geometry.area * coeffs(a, 0) * w(a);
    f(layout.boundary + 2 * a + 1) = geometry.area * coeffs(a, 1) * w(a);
  }
  return f;
}

Condensation static_condensation(const Eigen::MatrixXd& k, const Eigen::VectorXd& f,
                                 const DofLayout& layout, int cell) {
  const int nb = layout.boundary;
  const int ni = layout.internal;
  Condensation c;
  if (ni == 0) {
    c.k = k;
    c.f = f;
    c.recover = Eigen::MatrixXd::Zero(0, nb);
    c.offset = Eigen::VectorXd::Zero(0);
    return c;
  }
  const Eigen::MatrixXd kbb = k.topLeftCorner(nb, nb);
  const Eigen::MatrixXd kbi = k.topRightCorner(nb, ni);
  const Eigen::MatrixXd kii = k.bottomRightCorner(ni, ni);
  Eigen::LLT<Eigen::MatrixXd> llt(kii);
  if (llt.info() != Eigen::Success) {
    throw ElementError(cell, "internal stiffness block is singular");
  }
  c.recover = -llt.solve(kbi.transpose());
  c.offset = llt.solve(f.tail(ni));
  c.k = symmetrized(kbb + kbi * c.recover);
  c.f = f.head(nb) - kbi * c.offset;
  return c;
}

int numeric_rank(const Eigen::MatrixXd& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) r += sv(i) > rel_tol * sv(0);
  return r;
}

bool self_stabilization_check(const Eigen::MatrixXd& kc, int n) {
  return numeric_rank(kc) == n - 3;
}

PolyVec3 ElementOperators::projected_strain(const Eigen::VectorXd& coeffs) const {
  PolyVec3 out{Polynomial(basis.degree), Polynomial(basis.degree), Polynomial(basis.degree)};
  for (int j = 0; j < basis.modes(); ++j) {
    for (int c = 0; c < 3; ++c) out[c] += basis.strain[j][c] * coeffs(j);
  }
  return out;
}

Eigen::Vector3d ElementOperators::strain_at(Point2 x, const Eigen::VectorXd& coeffs) const {
  const Point2 l = geometry.frame.to_local(x);
  const auto vals = monomial_values(l.x, l.y, basis.degree);
  Eigen::Vector3d e = Eigen::Vector3d::Zero();
  for (int j = 0; j < basis.modes(); ++j) {
    for (int c = 0; c < 3; ++c) e(c) += coeffs(j) * basis.strain[j][c].evaluate(vals);
  }
  return e;
}

ElementOperators compute_element(std::span<const Point2> vertices, const ElementConfig& config,
                                 const Eigen::Matrix3d& c, const VectorField2* body, int cell) {
  config.validate();
  ElementOperators op;
  op.config = config;
  try {
    op.geometry = element_geometry(vertices);
  } catch (const GeometryError& e) {
    throw ElementError(cell, e.what());
  }
  const int m = static_cast<int>(vertices.size());
  op.layout = dof_layout(m, config.k, config.kind, config.p);
  op.basis = projection_basis(make_basis(config), c, config.norm);

  const int q = std::max(op.layout.moment_degree, 0);
  const int max_degree =
      std::max({2 * op.basis.degree, q + config.s.value_or(0), 2 * q});
  const MonomialIntegrals integrals(op.geometry.vertices, op.geometry.frame, max_degree);

  op.G = compute_G(op.basis, integrals, cell);
  op.Btilde = compute_B_tilde(op.basis, op.geometry, op.layout);
  op.weights = moment_weights(op.geometry, op.layout, integrals);
  op.Bhat = compute_B_hat(op.basis, op.geometry, op.layout, op.weights);
  Eigen::MatrixXd b(op.basis.modes(), op.layout.n());
  b << op.Btilde, op.Bhat;
  op.projector = op.G.ldlt().solve(b);
  if (config.norm == ProjectionNorm::Energy) {
    op.H = op.G;
    op.Kc = symmetrized(b.transpose() * op.projector);
  } else {
    op.H = compute_H(op.basis, c, integrals);
    op.Kc = symmetrized(op.projector.transpose() * op.H * op.projector);
  }

  const int n = op.layout.n();
  op.Ks = Eigen::MatrixXd::Zero(n, n);
  if (config.s) {
    int s = *config.s;
    for (;; --s) {
      op.D = compute_D(op.geometry, op.layout, s, integrals);
      if (op.D.cols() <= op.D.rows() &&
          numeric_rank(op.D) == op.D.cols()) {
        break;
      }
      if (s <= config.k) throw ElementError(cell, "stabilization matrix D is rank deficient");
    }
    op.config.s = s;
    op.Ks = compute_Ks(op.Kc, op.D, config.tau, cell);
  }
  op.K = op.Kc + op.Ks;
  op.f = body ? load_vector(*body, op.geometry, op.layout, integrals)
              : Eigen::VectorXd::Zero(n).eval();
  op.condensed = static_condensation(op.K, op.f, op.layout, cell);
  return op;
}

}  // namespace evem
