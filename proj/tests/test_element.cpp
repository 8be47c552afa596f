#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "evem/element.hpp"
#include "evem/material.hpp"
#include "evem/quadrature.hpp"
#include "table_rows.hpp"

using namespace evem;

namespace {

using Field = std::function<Eigen::Vector2d(Point2)>;

const std::vector<Point2> kSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};

Eigen::Matrix3d ref_c() { return elasticity_matrix(2.5, 0.25, PlaneModel::PlaneStress); }

std::vector<Point2> regular_polygon(int m, double r = 0.5) {
  std::vector<Point2> v;
  for (int i = 0; i < m; ++i) {
    const double t = 2 * M_PI * i / m;
    v.push_back({0.5 + r * std::cos(t), 0.5 + r * std::sin(t)});
  }
  return v;
}

std::vector<Point2> random_polygon(std::mt19937_64& rng, int m) {
  std::uniform_real_distribution<double> r(0.25, 0.5), jitter(-0.25, 0.25);
  std::vector<Point2> v;
  for (int i = 0; i < m; ++i) {
    const double t = 2 * M_PI * (i + 0.5 + jitter(rng)) / m;
    const double rad = r(rng);
    v.push_back({0.3 + rad * std::cos(t), -0.2 + rad * std::sin(t)});
  }
  return v;
}

// Dof vector of a displacement field: nodal values, then weighted moments
// against scaled monomials, computed by sub-triangulation quadrature.
Eigen::VectorXd sample_dofs(const ElementOperators& el, const Field& u) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(el.layout.n());
  const auto nodes = element_nodes(el.geometry, el.layout.k);
  for (std::size_t j = 0; j < nodes.size(); ++j) v.segment<2>(2 * j) = u(nodes[j]);
  if (el.layout.moment_degree >= 0) {
    for (const auto& q : polygon_rule(el.geometry.vertices, 12)) {
      const auto l = el.geometry.frame.to_local(q.point);
      const auto mono = monomial_values(l.x, l.y, el.layout.moment_degree);
      const Eigen::Vector2d val = u(q.point);
      for (std::size_t a = 0; a < mono.size(); ++a) {
        for (int c = 0; c < 2; ++c) {
          v(el.layout.boundary + 2 * a + c) += q.weight * mono[a] * val(c) / (el.geometry.area * el.weights(a));
        }
      }
    }
  }
  return v;
}

std::vector<Eigen::VectorXd> rigid_modes(const ElementOperators& el) {
  const Field tx = [](Point2) { return Eigen::Vector2d(1, 0); };
  const Field ty = [](Point2) { return Eigen::Vector2d(0, 1); };
  const Field rot = [](Point2 p) { return Eigen::Vector2d(-p.y, p.x); };
  return {sample_dofs(el, tx), sample_dofs(el, ty), sample_dofs(el, rot)};
}

std::vector<ElementConfig> configs_for(int m) {
  std::vector<ElementConfig> out;
  for (int k : {1, 2}) {
    out.push_back(configure_element(m, k, BasisKind::Standard));
    out.push_back(configure_element(m, k, BasisKind::Ucp));
    out.push_back(configure_element(m, k, BasisKind::Ucp, std::nullopt, ProjectionNorm::L2));
    out.push_back(configure_element(m, k, BasisKind::Dfp));
    if (k == 2) out.push_back(configure_element(m, k, BasisKind::Hyp));
  }
  return out;
}

std::string label(const ElementConfig& c) {
  return std::string(to_string(c.kind)) + " k=" + std::to_string(c.k) + " p=" + std::to_string(c.p) +
         " " + std::string(to_string(c.norm));
}

}  // namespace

TEST(Material, ElasticityExamples) {
  const auto c = ref_c();
  EXPECT_NEAR(c(0, 0), 2.5 / 0.9375, 1e-14);
  EXPECT_NEAR(c(2, 2), 1.0, 1e-14);
  const auto c0 = elasticity_matrix(3.0, 0.0, PlaneModel::PlaneStress);
  EXPECT_TRUE(c0.isApprox(Eigen::Vector3d(3.0, 3.0, 1.5).asDiagonal().toDenseMatrix()));
  const auto cs = elasticity_matrix(2.5, 0.49995, PlaneModel::PlaneStrain);
  const double nu = 0.49995;
  EXPECT_NEAR(cs(0, 0) / cs(2, 2), 2 * (1 - nu) / (1 - 2 * nu), 1e-6);
  EXPECT_GT(condition_number(cs), kElasticityConditionWarning);
  EXPECT_THROW(elasticity_matrix(2.5, 0.5, PlaneModel::PlaneStrain), std::invalid_argument);
  EXPECT_THROW(elasticity_matrix(-1.0, 0.3, PlaneModel::PlaneStress), std::invalid_argument);
}

TEST(ChooseP, Examples) {
  auto c = choose_p(4, 1, BasisKind::Ucp);
  EXPECT_EQ(c.p, 1);
  EXPECT_FALSE(c.s);
  c = choose_p(6, 1, BasisKind::Ucp);
  EXPECT_EQ(c.p, 2);
  EXPECT_FALSE(c.s);
  c = choose_p(8, 2, BasisKind::Ucp);
  EXPECT_EQ(c.p, 4);
  EXPECT_EQ(c.s, 4);
}

TEST(DofLayout, MatchesSuggestedTable) {
  for (const auto& row : fixtures::suggested_p_rows()) {
    const auto c = choose_p(row.m, row.k, row.kind);
    const auto layout = dof_layout(row.m, row.k, row.kind, c.p);
    EXPECT_EQ(c.p, row.p) << row.m << " " << row.k << " " << to_string(row.kind);
    EXPECT_EQ(layout.n(), row.n) << row.m << " " << row.k << " " << to_string(row.kind);
    EXPECT_EQ(mode_count(row.kind, c.p), row.modes);
    EXPECT_EQ(c.s.value_or(0), row.s) << row.m << " " << row.k << " " << to_string(row.kind);
  }
}

TEST(DofLayout, Counts) {
  EXPECT_EQ(dof_layout(5, 1, BasisKind::Standard, 0).n(), 10);
  EXPECT_EQ(dof_layout(5, 2, BasisKind::Standard, 1).n(), 22);
  EXPECT_EQ(dof_layout(5, 2, BasisKind::Dfp, 3).internal, 0);
  EXPECT_EQ(dof_layout(5, 2, BasisKind::Hyp, 3).internal, 2);
  EXPECT_EQ(dof_layout(5, 1, BasisKind::Ucp, 3).internal, 12);
}

TEST(ElementConfig, Validation) {
  EXPECT_EQ(configure_element(4, 1, BasisKind::Standard).s, 1);
  EXPECT_EQ(configure_element(4, 2, BasisKind::Standard).s, 2);
  EXPECT_EQ(configure_element(4, 2, BasisKind::Dfp).norm, ProjectionNorm::Energy);
  EXPECT_THROW(configure_element(4, 1, BasisKind::Hyp), std::invalid_argument);
  EXPECT_THROW(configure_element(4, 1, BasisKind::Dfp, 2, ProjectionNorm::L2),
               std::invalid_argument);
  EXPECT_THROW(configure_element(4, 3, BasisKind::Ucp), std::invalid_argument);
  // forced p below the mode-count condition picks up a stabilization order
  EXPECT_TRUE(configure_element(8, 1, BasisKind::Ucp, 2).s.has_value());
  EXPECT_FALSE(configure_element(8, 1, BasisKind::Ucp, 3).s.has_value());
}

TEST(ComputeG, UnitSquareStandard) {
  const auto g = element_geometry(kSquare);
  MonomialIntegrals ints(kSquare, g.frame, 4);
  const auto b = build_standard_basis(1);
  const auto gl = compute_G(projection_basis(b, ref_c(), ProjectionNorm::L2), ints);
  EXPECT_TRUE(gl.isApprox(Eigen::Matrix3d::Identity(), 1e-14));
  const auto ge = compute_G(projection_basis(b, ref_c(), ProjectionNorm::Energy), ints);
  EXPECT_TRUE(ge.isApprox(ref_c(), 1e-14));
}

TEST(ComputeG, SymmetricOnRandomHexagon) {
  std::mt19937_64 rng(3);
  const auto poly = random_polygon(rng, 6);
  const auto g = element_geometry(poly);
  MonomialIntegrals ints(poly, g.frame, 8);
  const auto pb = projection_basis(build_dfp_basis(2), ref_c(), ProjectionNorm::Energy);
  const auto gm = compute_G(pb, ints);
  EXPECT_LE((gm - gm.transpose()).cwiseAbs().maxCoeff(), 1e-14 * gm.cwiseAbs().maxCoeff());
}

TEST(ComputeBTilde, StandardK1UnitSquare) {
  const auto el = compute_element(kSquare, configure_element(4, 1, BasisKind::Standard), ref_c(),
                                  nullptr);
  const double expected_x[] = {-0.5, 0.5, 0.5, -0.5};
  for (int j = 0; j < 4; ++j) {
    EXPECT_NEAR(el.Btilde(0, 2 * j), expected_x[j], 1e-15);
    EXPECT_NEAR(el.Btilde(0, 2 * j + 1), 0.0, 1e-15);
  }
}

TEST(ComputeBTilde, TranslationsInvisibleToDfp) {
  std::mt19937_64 rng(9);
  for (int m : {4, 6, 9}) {
    for (int k : {1, 2}) {
      const auto el = compute_element(random_polygon(rng, m), configure_element(m, k, BasisKind::Dfp),
                                      ref_c(), nullptr);
      Eigen::VectorXd tx = Eigen::VectorXd::Zero(el.layout.boundary), ty = tx;
      for (int j = 0; j < el.layout.nodes(); ++j) {
        tx(2 * j) = 1.0;
        ty(2 * j + 1) = 1.0;
      }
      EXPECT_LT((el.Btilde * tx).norm(), 1e-13 * el.Btilde.norm());
      EXPECT_LT((el.Btilde * ty).norm(), 1e-13 * el.Btilde.norm());
    }
  }
}

TEST(ComputeBTilde, RankIsDofsMinusRigidModes) {
  std::mt19937_64 rng(17);
  for (int m = 4; m <= 10; ++m) {
    const auto poly = random_polygon(rng, m);
    for (const auto& c : configs_for(m)) {
      if (c.s) continue;
      const auto el = compute_element(poly, c, ref_c(), nullptr);
      Eigen::MatrixXd b(el.Btilde.rows(), el.Btilde.cols() + el.Bhat.cols());
      b << el.Btilde, el.Bhat;
      EXPECT_EQ(numeric_rank(b, 1e-13), el.layout.n() - 3) << m << " " << label(c);
    }
  }
}

TEST(ComputeBHat, Examples) {
  const auto dfp = compute_element(regular_polygon(7), configure_element(7, 1, BasisKind::Dfp),
                                   ref_c(), nullptr);
  EXPECT_EQ(dfp.Bhat.cols(), 0);

  const auto ucp = compute_element(regular_polygon(5), configure_element(5, 1, BasisKind::Ucp, 1, ProjectionNorm::L2),
                                   ref_c(), nullptr);
  ASSERT_EQ(ucp.Bhat.cols(), 2);
  // column 3 is (xi, 0, 0); L^T gives (1/h, 0)
  EXPECT_NEAR(ucp.Bhat(3, 0), -ucp.geometry.area / ucp.geometry.diameter, 1e-14);
  EXPECT_NEAR(ucp.Bhat(3, 1), 0.0, 1e-14);

  const auto hyp = compute_element(regular_polygon(4), configure_element(4, 2, BasisKind::Hyp, 3),
                                   ref_c(), nullptr);
  ASSERT_EQ(hyp.Bhat.rows(), 20);
  EXPECT_EQ(hyp.Bhat.bottomRows(11).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_GT(hyp.Bhat.topRows(9).cwiseAbs().maxCoeff(), 0.0);
}

TEST(ComputeKc, RigidBodyNullSpace) {
  std::mt19937_64 rng(21);
  for (int m : {3, 4, 5, 6, 8, 12}) {
    const auto poly = random_polygon(rng, m);
    for (const auto& c : configs_for(m)) {
      const auto el = compute_element(poly, c, ref_c(), nullptr);
      for (const auto& r : rigid_modes(el)) {
        EXPECT_LT((el.Kc * r).norm(), 1e-11 * el.Kc.norm() * r.norm()) << m << " " << label(c);
        EXPECT_LT((el.K * r).norm(), 1e-11 * el.K.norm() * r.norm()) << m << " " << label(c);
      }
      EXPECT_LT((el.Kc - el.Kc.transpose()).norm(), 1e-13 * el.Kc.norm());
    }
  }
}

TEST(ComputeKc, EnergyFastPathMatchesGeneral) {
  std::mt19937_64 rng(4);
  for (int m : {4, 7}) {
    const auto poly = random_polygon(rng, m);
    for (const auto& c : configs_for(m)) {
      if (c.norm != ProjectionNorm::Energy) continue;
      const auto el = compute_element(poly, c, ref_c(), nullptr);
      Eigen::MatrixXd b(el.Btilde.rows(), el.Btilde.cols() + el.Bhat.cols());
      b << el.Btilde, el.Bhat;
      const auto general = compute_Kc(el.G, b, el.H);
      EXPECT_LT((general - compute_Kc_energy(el.G, b)).norm(), 1e-12 * general.norm()) << label(c);
      EXPECT_LT((el.H - el.G).norm(), 1e-12 * el.G.norm()) << label(c);
    }
  }
}

TEST(ComputeKc, SelfStabilizedQuad) {
  const auto el = compute_element(kSquare, configure_element(4, 1, BasisKind::Ucp, 1), ref_c(), nullptr);
  EXPECT_EQ(numeric_rank(el.Kc), el.layout.n() - 3);
  EXPECT_EQ(el.Ks.norm(), 0.0);
}

TEST(SelfStabilization, Octagon) {
  const auto oct = regular_polygon(8);
  const auto p3 = compute_element(oct, configure_element(8, 1, BasisKind::Ucp, 3), ref_c(), nullptr);
  const auto p2 = compute_element(oct, configure_element(8, 1, BasisKind::Ucp, 2), ref_c(), nullptr);
  EXPECT_TRUE(self_stabilization_check(p3.Kc, p3.layout.n()));
  EXPECT_FALSE(self_stabilization_check(p2.Kc, p2.layout.n()));
  const auto quad = compute_element(kSquare, configure_element(4, 1, BasisKind::Standard), ref_c(), nullptr);
  EXPECT_FALSE(self_stabilization_check(quad.Kc, quad.layout.n()));
}

TEST(SelfStabilization, KernelIsRigidOnGenericPolygons) {
  std::mt19937_64 rng(29);
  for (int m = 3; m <= 12; ++m) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto poly = random_polygon(rng, m);
      for (const auto& c : configs_for(m)) {
        const auto el = compute_element(poly, c, ref_c(), nullptr);
        EXPECT_EQ(numeric_rank(el.K, 1e-13), el.layout.n() - 3) << m << " " << label(c);
      }
    }
  }
}

TEST(SelfStabilization, RegularPentagonHasSymmetricZeroModes) {
  const auto el = compute_element(regular_polygon(5), configure_element(5, 2, BasisKind::Ucp),
                                  ref_c(), nullptr);
  EXPECT_FALSE(el.config.s.has_value());
  EXPECT_EQ(numeric_rank(el.K, 1e-13), el.layout.n() - 5);
}

TEST(ComputeD, Examples) {
  const auto g = element_geometry(kSquare);
  MonomialIntegrals ints(kSquare, g.frame, 4);
  const auto d = compute_D(g, dof_layout(4, 1, BasisKind::Standard, 0), 1, ints);
  ASSERT_EQ(d.cols(), 6);
  ASSERT_EQ(d.rows(), 8);
  for (int j = 0; j < 4; ++j) {
    EXPECT_DOUBLE_EQ(d(2 * j, 0), 1.0);
    EXPECT_DOUBLE_EQ(d(2 * j + 1, 0), 0.0);
  }
  EXPECT_EQ(numeric_rank(d), 6);
}

TEST(ComputeD, MomentRowsAreNormalizedMoments) {
  const auto poly = regular_polygon(6);
  const auto g = element_geometry(poly);
  MonomialIntegrals ints(poly, g.frame, 8);
  const auto layout = dof_layout(6, 2, BasisKind::Ucp, 2);
  const auto d = compute_D(g, layout, 2, ints);
  // column 0 is (1, 0): x-moment against the constant is 1, others vanish by symmetry
  EXPECT_NEAR(d(layout.boundary, 0), 1.0, 1e-14);
  EXPECT_NEAR(d(layout.boundary + 2, 0), 0.0, 1e-14);
  EXPECT_NEAR(d(layout.boundary + 1, 0), 0.0, 1e-14);
}

TEST(ComputeKs, Examples) {
  const auto el = compute_element(regular_polygon(5), configure_element(5, 1, BasisKind::Standard),
                                  ref_c(), nullptr);
  EXPECT_LT((el.Ks * el.D).norm(), 1e-11 * el.Ks.norm());
  EXPECT_EQ(compute_Ks(el.Kc, el.D, 0.0).norm(), 0.0);
  const Eigen::MatrixXd p = el.Ks / (0.5 * el.Kc.trace());
  EXPECT_LT((p * p - p).norm(), 1e-12);
  EXPECT_NEAR(el.Ks.trace(), 0.5 * el.Kc.trace() * (el.layout.n() - el.D.cols()), 1e-12 * el.Ks.trace());
}

TEST(ComputeKs, RankDeficientDThrows) {
  Eigen::MatrixXd d(4, 2);
  d << 1, 2, 1, 2, 1, 2, 1, 2;
  EXPECT_THROW(compute_Ks(Eigen::MatrixXd::Identity(4, 4), d, 0.5, 7), ElementError);
}

TEST(LoadVector, Examples) {
  const auto poly = regular_polygon(6);
  const VectorField2 zero = [](Point2) { return Eigen::Vector2d::Zero(); };
  const VectorField2 unit_x = [](Point2) { return Eigen::Vector2d(1, 0); };
  const auto el = compute_element(poly, configure_element(6, 2, BasisKind::Ucp, 3), ref_c(), &zero);
  EXPECT_EQ(el.f.norm(), 0.0);
  const auto el2 = compute_element(poly, configure_element(6, 2, BasisKind::Ucp, 3), ref_c(), &unit_x);
  EXPECT_NEAR(el2.f(el2.layout.boundary), el2.geometry.area, 1e-14);
  EXPECT_LT((el2.f.head(el2.layout.boundary)).norm(), 1e-15);
  EXPECT_LT((el2.f.tail(el2.layout.internal - 1)).norm(), 1e-14);
}

TEST(LoadVector, VertexRuleWithoutMoments) {
  const auto poly = regular_polygon(5);
  const VectorField2 b = [](Point2 p) { return Eigen::Vector2d(p.x, 2.0); };
  const auto el = compute_element(poly, configure_element(5, 1, BasisKind::Dfp), ref_c(), &b);
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(el.f(2 * i), poly[i].x * el.geometry.area / 5, 1e-15);
    EXPECT_NEAR(el.f(2 * i + 1), 2.0 * el.geometry.area / 5, 1e-15);
  }
}

TEST(LoadVector, MomentWorkIsExactForPolynomialLoads) {
  // f.v equals int b.v for polynomial b of degree <= moment degree and any v in the moment space
  const auto poly = regular_polygon(7);
  const VectorField2 b = [](Point2 p) { return Eigen::Vector2d(1 + p.x * p.y, p.y - 2 * p.x); };
  const auto el = compute_element(poly, configure_element(7, 1, BasisKind::Ucp, 3), ref_c(), &b);
  const Field v = [](Point2 p) { return Eigen::Vector2d(p.x * p.x, 1 - p.y); };
  double work = 0.0;
  for (const auto& q : polygon_rule(poly, 8)) work += q.weight * b(q.point).dot(v(q.point));
  EXPECT_NEAR(el.f.tail(el.layout.internal).dot(sample_dofs(el, v).tail(el.layout.internal)), work,
              1e-13);
}

TEST(StaticCondensation, Examples) {
  Eigen::MatrixXd k = Eigen::MatrixXd::Identity(4, 4) * 2.0;
  k(0, 1) = k(1, 0) = -1.0;
  Eigen::VectorXd f(4);
  f << 1, 2, 3, 4;
  DofLayout layout{1, 1, 2, 2, 0};
  const auto c = static_condensation(k, f, layout);
  EXPECT_TRUE(c.k.isApprox(k.topLeftCorner(2, 2)));
  EXPECT_TRUE(c.f.isApprox(f.head(2)));
  EXPECT_TRUE(c.offset.isApprox(Eigen::Vector2d(1.5, 2.0)));

  DofLayout none{4, 1, 4, 0, -1};
  const auto d = static_condensation(k, f, none);
  EXPECT_TRUE(d.k.isApprox(k));
  EXPECT_TRUE(d.f.isApprox(f));

  Eigen::MatrixXd singular = k;
  singular.bottomRightCorner(2, 2).setZero();
  EXPECT_THROW(static_condensation(singular, f, layout, 3), ElementError);
}

TEST(StaticCondensation, EnergyEquivalent) {
  const VectorField2 b = [](Point2 p) { return Eigen::Vector2d(p.y, -p.x * p.x); };
  const auto el = compute_element(regular_polygon(6), configure_element(6, 2, BasisKind::Ucp), ref_c(), &b);
  const int nb = el.layout.boundary;
  Eigen::VectorXd ub = Eigen::VectorXd::LinSpaced(nb, -1.0, 1.0);
  const Eigen::VectorXd ui = el.condensed.recover * ub + el.condensed.offset;
  Eigen::VectorXd u(el.layout.n());
  u << ub, ui;
  const Eigen::VectorXd r = el.K * u - el.f;
  EXPECT_LT(r.tail(el.layout.internal).norm(), 1e-10 * el.K.norm());
  EXPECT_NEAR(r.head(nb).norm(), (el.condensed.k * ub - el.condensed.f).norm(), 1e-10 * el.K.norm());
}

TEST(Consistency, PolynomialDisplacementsReproduced) {
  std::mt19937_64 rng(8);
  const Field lin = [](Point2 p) { return Eigen::Vector2d(0.3 + 1.2 * p.x - 0.7 * p.y, -0.1 + 0.4 * p.x + 2.0 * p.y); };
  const Field quad = [](Point2 p) {
    return Eigen::Vector2d(p.x * p.x - 0.5 * p.x * p.y + p.y, 0.25 * p.y * p.y + 2 * p.x * p.y - p.x);
  };
  // divergence-free stress for any isotropic C
  const Field equilibrated = [](Point2 p) {
    return Eigen::Vector2d(0.2 + p.x * p.x - p.y * p.y + 0.5 * p.y, -2 * p.x * p.y - 0.5 * p.x);
  };
  auto exact_strain = [](const Field& u, Point2 p) {
    const double h = 1e-5;
    const Eigen::Vector2d ux = (u({p.x + h, p.y}) - u({p.x - h, p.y})) / (2 * h);
    const Eigen::Vector2d uy = (u({p.x, p.y + h}) - u({p.x, p.y - h})) / (2 * h);
    return Eigen::Vector3d(ux(0), uy(1), ux(1) + uy(0));
  };
  for (int m : {3, 4, 5, 7, 10}) {
    const auto poly = random_polygon(rng, m);
    for (const auto& c : configs_for(m)) {
      const auto el = compute_element(poly, c, ref_c(), nullptr);
      const bool stress_basis = c.kind == BasisKind::Dfp || c.kind == BasisKind::Hyp;
      const Field& u = c.k == 1 ? lin : (stress_basis ? equilibrated : quad);
      const auto coeffs = el.strain_coefficients(sample_dofs(el, u));
      for (const auto& q : polygon_rule(poly, 2)) {
        EXPECT_LT((el.strain_at(q.point, coeffs) - exact_strain(u, q.point)).norm(), 1e-9)
            << m << " " << label(c);
      }
    }
  }
}

TEST(Coincidence, UcpAndDfpCondensedStiffness) {
  std::mt19937_64 rng(13);
  for (int m : {4, 5, 6, 7, 8}) {
    const auto poly = random_polygon(rng, m);
    for (int k : {1, 2}) {
      const auto ucp = compute_element(poly, configure_element(m, k, BasisKind::Ucp), ref_c(), nullptr);
      const auto dfp = compute_element(poly, configure_element(m, k, BasisKind::Dfp), ref_c(), nullptr);
      if (ucp.config.s || dfp.config.s) continue;
      EXPECT_LT((ucp.condensed.k - dfp.condensed.k).norm(), 1e-10 * dfp.condensed.k.norm())
          << m << " k=" << k;
    }
  }
}

TEST(Coincidence, UcpNormsAgree) {
  const auto poly = regular_polygon(7);
  const auto l2 = compute_element(poly, configure_element(7, 1, BasisKind::Ucp, 2, ProjectionNorm::L2), ref_c(), nullptr);
  const auto en = compute_element(poly, configure_element(7, 1, BasisKind::Ucp, 2, ProjectionNorm::Energy), ref_c(), nullptr);
  EXPECT_LT((l2.Kc - en.Kc).norm(), 1e-10 * en.Kc.norm());
}
