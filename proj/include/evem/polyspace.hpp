#pragma once

#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "evem/geometry.hpp"
#include "evem/polynomial.hpp"

namespace evem {

/// Local coordinates xi = (x - center) / scale used by every basis.
struct ScaledFrame {
  Point2 center;
  double scale = 1.0;

  Point2 to_local(Point2 p) const {
    return {(p.x - center.x) / scale, (p.y - center.y) / scale};
  }
  static ScaledFrame identity() { return {}; }
};

enum class BasisKind { Standard, Ucp, Dfp, Hyp };

std::string_view to_string(BasisKind kind);

/// Strain modes (N^P) or stress modes (C N^P). DFP and HYP are built as stress modes.
enum class BasisField { Strain, Stress };

/// 3 x M matrix of polynomial columns in Voigt order (xx, yy, xy), written in
/// the scaled frame. Column order follows the printed matrices so columns can
/// be checked by hand.
struct StrainBasis {
  BasisKind kind = BasisKind::Standard;
  int k = 1;
  int p = 0;
  std::vector<PolyVec3> columns;

  int modes() const { return static_cast<int>(columns.size()); }
  /// Highest polynomial degree among the columns.
  int degree() const;
  BasisField field() const {
    return kind == BasisKind::Dfp || kind == BasisKind::Hyp ? BasisField::Stress
                                                             : BasisField::Strain;
  }
};

/// Closed-form number of columns: STANDARD/UCP 3(p+1)(p+2)/2, DFP (p+1)(p+6)/2,
/// HYP 9 + DFP(p) - 7.
int mode_count(BasisKind kind, int p);

/// Degree k-1 uncoupled monomials; k in {1, 2}.
StrainBasis build_standard_basis(int k);
/// Uncoupled monomials complete to degree p, 1 <= p <= 4.
StrainBasis build_ucp_basis(int p);
/// Airy-function (divergence-free) stress modes up to degree p, 1 <= p <= 4.
StrainBasis build_dfp_basis(int p);
/// Uncoupled modes to degree k-1 followed by the divergence-free modes of
/// degree 2..p. Only k = 2, p in {3, 4}.
StrainBasis build_hyp_basis(int k, int p);

/// Table of I(a, b) = integral over the polygon of xi^a eta^b dA (physical area
/// measure, scaled-frame monomials), from Green's theorem with per-edge
/// Gauss-Legendre quadrature. Exact for polynomials up to max_degree on any
/// simple polygon, convex or not.
class MonomialIntegrals {
 public:
  MonomialIntegrals(std::span<const Point2> polygon, const ScaledFrame& frame, int max_degree);

  int max_degree() const { return max_degree_; }
  double operator()(int a, int b) const { return table_[monomial_index(a, b)]; }
  double integrate(const Polynomial& poly) const;
  /// integral of f * g without forming the product.
  double integrate_product(const Polynomial& f, const Polynomial& g) const;

 private:
  int max_degree_;
  std::vector<double> table_;
};

/// Single-monomial integral using ceil((deg + 2) / 2) Gauss points per edge.
double integrate_monomial(std::span<const Point2> polygon, Monomial2 mono,
                          const ScaledFrame& frame);

/// L^T s = (ds1/dx + ds3/dy, ds3/dx + ds2/dy) for a field written in the scaled
/// frame; the 1/scale chain-rule factor is applied to the result.
PolyVec2 equilibrium_operator(const PolyVec3& field, double scale);
std::vector<PolyVec2> apply_equilibrium_operator(const StrainBasis& basis,
                                                 const ScaledFrame& frame);

/// Pointwise A * v for a constant 3x3 matrix.
PolyVec3 transform(const Eigen::Matrix3d& a, const PolyVec3& v);

}  // namespace evem
