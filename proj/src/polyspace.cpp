#include "evem/polyspace.hpp"

#include <initializer_list>
#include <stdexcept>
#include <string>

#include "evem/quadrature.hpp"

namespace evem {

std::string_view to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::Standard: return "vem";
    case BasisKind::Ucp: return "ucp";
    case BasisKind::Dfp: return "dfp";
    case BasisKind::Hyp: return "hyp";
  }
  return "?";
}

int StrainBasis::degree() const {
  int d = -1;
  for (const auto& col : columns) {
    for (const auto& c : col) d = std::max(d, c.degree());
  }
  return d;
}

int mode_count(BasisKind kind, int p) {
  switch (kind) {
    case BasisKind::Standard:
    case BasisKind::Ucp: return 3 * (p + 1) * (p + 2) / 2;
    case BasisKind::Dfp: return (p + 1) * (p + 6) / 2;
    case BasisKind::Hyp: return 9 + (p + 1) * (p + 6) / 2 - 7;
  }
  return 0;
}

namespace {

struct Term {
  double c;
  int a;
  int b;
};

Polynomial poly(std::initializer_list<Term> terms) {
  Polynomial p(0);
  for (const auto& t : terms) p.add_term(t.a, t.b, t.c);
  return p;
}

PolyVec3 column(std::initializer_list<Term> xx, std::initializer_list<Term> yy,
                std::initializer_list<Term> xy) {
  return {poly(xx), poly(yy), poly(xy)};
}

std::vector<PolyVec3> uncoupled_columns(int p) {
  std::vector<PolyVec3> cols;
  for (int i = 0; i < monomial_count(p); ++i) {
    const auto m = monomial_at(i);
    for (int c = 0; c < 3; ++c) {
      PolyVec3 col{Polynomial(0), Polynomial(0), Polynomial(0)};
      col[c] = Polynomial::monomial(m.a, m.b);
      cols.push_back(std::move(col));
    }
  }
  return cols;
}

// Divergence-free stress modes, one list per printed degree p. Each column is
// (d2phi/dy2, d2phi/dx2, -d2phi/dxdy) of a monomial-combination Airy function.
std::vector<PolyVec3> dfp_columns(int p) {
  std::vector<PolyVec3> cols = {
      column({{1, 0, 0}}, {}, {}),
      column({}, {{1, 0, 0}}, {}),
      column({}, {}, {{1, 0, 0}}),
      column({{1, 0, 1}}, {}, {}),
      column({}, {{1, 1, 0}}, {}),
      column({{1, 1, 0}}, {}, {{-1, 0, 1}}),
      column({}, {{1, 0, 1}}, {{-1, 1, 0}}),
  };
  if (p == 2) {
    cols.push_back(column({{2, 1, 1}}, {}, {{-1, 0, 2}}));
    cols.push_back(column({}, {{2, 1, 1}}, {{-1, 2, 0}}));
    cols.push_back(column({{1, 2, 0}}, {{1, 0, 2}}, {{-2, 1, 1}}));
    cols.push_back(column({{1, 0, 2}}, {}, {}));
    cols.push_back(column({}, {{1, 2, 0}}, {}));
    return cols;
  }
  if (p >= 3) {
    cols.push_back(column({{1, 2, 0}}, {{1, 0, 2}}, {{-2, 1, 1}}));
    cols.push_back(column({{1, 0, 2}}, {}, {}));
    cols.push_back(column({}, {{1, 2, 0}}, {}));
    cols.push_back(column({}, {{-2, 1, 1}}, {{1, 2, 0}}));
    cols.push_back(column({{-2, 1, 1}}, {}, {{1, 0, 2}}));
    cols.push_back(column({{1, 3, 0}}, {{3, 1, 2}}, {{-3, 2, 1}}));
    cols.push_back(column({{1, 0, 3}}, {}, {}));
    cols.push_back(column({}, {{1, 3, 0}}, {}));
    cols.push_back(column({{3, 2, 1}}, {{1, 0, 3}}, {{-3, 1, 2}}));
    cols.push_back(column({}, {{-3, 2, 1}}, {{1, 3, 0}}));
    cols.push_back(column({{-3, 1, 2}}, {}, {{1, 0, 3}}));
  }
  if (p >= 4) {
    cols.push_back(column({{1, 0, 4}}, {}, {}));
    cols.push_back(column({}, {{1, 4, 0}}, {}));
    cols.push_back(column({{-4, 1, 3}}, {}, {{1, 0, 4}}));
    cols.push_back(column({}, {{-4, 3, 1}}, {{1, 4, 0}}));
    cols.push_back(column({{2, 3, 1}}, {{2, 1, 3}}, {{-3, 2, 2}}));
    cols.push_back(column({{1, 4, 0}}, {{6, 2, 2}}, {{-4, 3, 1}}));
    cols.push_back(column({{6, 2, 2}}, {{1, 0, 4}}, {{-4, 1, 3}}));
  }
  return cols;
}

void require_range(int p, int lo, int hi, const char* what) {
  if (p < lo || p > hi) {
    throw std::invalid_argument(std::string(what) + ": p = " + std::to_string(p) +
                                " outside [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                "]");
  }
}

}  // namespace

StrainBasis build_standard_basis(int k) {
  if (k != 1 && k != 2) {
    throw std::invalid_argument("standard basis: unsupported k = " + std::to_string(k));
  }
  return {BasisKind::Standard, k, k - 1, uncoupled_columns(k - 1)};
}

StrainBasis build_ucp_basis(int p) {
  require_range(p, 1, 4, "UCP basis");
  return {BasisKind::Ucp, 0, p, uncoupled_columns(p)};
}

StrainBasis build_dfp_basis(int p) {
  require_range(p, 1, 4, "DFP basis");
  return {BasisKind::Dfp, 0, p, dfp_columns(p)};
}

StrainBasis build_hyp_basis(int k, int p) {
  if (k != 2) throw std::invalid_argument("HYP basis: only k = 2 is supported");
  require_range(p, 3, 4, "HYP basis");
  auto cols = uncoupled_columns(k - 1);
  const auto div_free = dfp_columns(p);
  cols.insert(cols.end(), div_free.begin() + 7, div_free.end());
  return {BasisKind::Hyp, k, p, std::move(cols)};
}

MonomialIntegrals::MonomialIntegrals(std::span<const Point2> polygon, const ScaledFrame& frame,
                                     int max_degree)
    : max_degree_(max_degree), table_(monomial_count(max_degree), 0.0) {
  // integral of xi^a eta^b = h^2 / (a + 1) * boundary integral of xi^(a+1) eta^b n_xi ds
  const LineRule& g = gauss_legendre((max_degree + 3) / 2);
  const int m = static_cast<int>(polygon.size());
  std::vector<double> vals(monomial_count(max_degree + 1));
  for (int e = 0; e < m; ++e) {
    const Point2 p = frame.to_local(polygon[e]);
    const Point2 q = frame.to_local(polygon[(e + 1) % m]);
    const double dy = q.y - p.y;
    if (dy == 0.0) continue;
    for (std::size_t i = 0; i < g.points.size(); ++i) {
      const Point2 x = p + g.points[i] * (q - p);
      monomial_values(x.x, x.y, max_degree + 1, vals);
      const double w = g.weights[i] * dy;
      for (int d = 0; d <= max_degree; ++d) {
        for (int b = 0; b <= d; ++b) {
          const int a = d - b;
          table_[monomial_index(a, b)] += w * vals[monomial_index(a + 1, b)] / (a + 1);
        }
      }
    }
  }
  const double h2 = frame.scale * frame.scale;
  for (auto& v : table_) v *= h2;
}

double MonomialIntegrals::integrate(const Polynomial& poly) const {
  if (poly.capacity_degree() > max_degree_) {
    throw std::out_of_range("polynomial degree exceeds the integration table");
  }
  const auto c = poly.coefficients();
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * table_[i];
  return s;
}

double MonomialIntegrals::integrate_product(const Polynomial& f, const Polynomial& g) const {
  if (f.capacity_degree() + g.capacity_degree() > max_degree_) {
    throw std::out_of_range("product degree exceeds the integration table");
  }
  const auto cf = f.coefficients();
  const auto cg = g.coefficients();
  double s = 0.0;
  for (std::size_t i = 0; i < cf.size(); ++i) {
    if (cf[i] == 0.0) continue;
    const auto mi = monomial_at(static_cast<int>(i));
    double inner = 0.0;
    for (std::size_t j = 0; j < cg.size(); ++j) {
      if (cg[j] == 0.0) continue;
      const auto mj = monomial_at(static_cast<int>(j));
      inner += cg[j] * table_[monomial_index(mi.a + mj.a, mi.b + mj.b)];
    }
    s += cf[i] * inner;
  }
  return s;
}

double integrate_monomial(std::span<const Point2> polygon, Monomial2 mono,
                          const ScaledFrame& frame) {
  if (mono.a < 0 || mono.b < 0) throw std::invalid_argument("negative monomial exponent");
  if (std::abs(signed_area(polygon)) <= 1e-14) throw GeometryError("degenerate polygon");
  const int deg = mono.degree();
  const LineRule& g = gauss_legendre((deg + 2 + 1) / 2);
  const int m = static_cast<int>(polygon.size());
  double sum = 0.0;
  for (int e = 0; e < m; ++e) {
    const Point2 p = frame.to_local(polygon[e]);
    const Point2 q = frame.to_local(polygon[(e + 1) % m]);
    const double dy = q.y - p.y;
    if (dy == 0.0) continue;
    double edge = 0.0;
    for (std::size_t i = 0; i < g.points.size(); ++i) {
      const Point2 x = p + g.points[i] * (q - p);
      edge += g.weights[i] * std::pow(x.x, mono.a + 1) * std::pow(x.y, mono.b);
    }
    sum += edge * dy;
  }
  return frame.scale * frame.scale * sum / (mono.a + 1);
}

PolyVec2 equilibrium_operator(const PolyVec3& field, double scale) {
  PolyVec2 out{field[0].dx() + field[2].dy(), field[2].dx() + field[1].dy()};
  out[0] *= 1.0 / scale;
  out[1] *= 1.0 / scale;
  return out;
}

std::vector<PolyVec2> apply_equilibrium_operator(const StrainBasis& basis,
                                                 const ScaledFrame& frame) {
  std::vector<PolyVec2> out;
  out.reserve(basis.columns.size());
  for (const auto& col : basis.columns) out.push_back(equilibrium_operator(col, frame.scale));
  return out;
}

PolyVec3 transform(const Eigen::Matrix3d& a, const PolyVec3& v) {
  PolyVec3 out{Polynomial(0), Polynomial(0), Polynomial(0)};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (a(i, j) != 0.0) out[i] += v[j] * a(i, j);
    }
  }
  return out;
}

}  // namespace evem
