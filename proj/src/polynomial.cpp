#include "evem/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evem {

namespace {

constexpr int kTabulatedDegree = 40;

Monomial2 compute_monomial_at(int index) {
  int d = 0;
  while (monomial_count(d) <= index) ++d;
  const int b = index - monomial_count(d - 1);
  return {d - b, b};
}

}  // namespace

Monomial2 monomial_at(int index) {
  static const std::vector<Monomial2> table = [] {
    std::vector<Monomial2> t(monomial_count(kTabulatedDegree));
    for (int i = 0; i < static_cast<int>(t.size()); ++i) t[i] = compute_monomial_at(i);
    return t;
  }();
  if (index < 0) throw std::invalid_argument("negative monomial index");
  if (index < static_cast<int>(table.size())) return table[index];
  return compute_monomial_at(index);
}

void monomial_values(double x, double y, int degree, std::span<double> out) {
  if (degree < 0) return;
  out[0] = 1.0;
  for (int d = 1; d <= degree; ++d) {
    const int prev = monomial_count(d - 2);
    const int cur = monomial_count(d - 1);
    // x^(d-b) y^b: multiply the degree-(d-1) row by x, the last one also by y.
    for (int b = 0; b < d; ++b) out[cur + b] = out[prev + b] * x;
    out[cur + d] = out[prev + d - 1] * y;
  }
}

std::vector<double> monomial_values(double x, double y, int degree) {
  std::vector<double> v(monomial_count(degree));
  monomial_values(x, y, degree, v);
  return v;
}

Polynomial::Polynomial(int degree) { reserve_degree(degree); }

Polynomial Polynomial::constant(double c) {
  Polynomial p(0);
  p.coeffs_[0] = c;
  return p;
}

Polynomial Polynomial::monomial(int a, int b, double c) {
  Polynomial p(a + b);
  p.coeffs_[monomial_index(a, b)] = c;
  return p;
}

void Polynomial::reserve_degree(int degree) {
  if (degree <= capacity_degree_) return;
  capacity_degree_ = degree;
  coeffs_.resize(monomial_count(degree), 0.0);
}

int Polynomial::degree(double tol) const {
  for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i) {
    if (std::abs(coeffs_[i]) > tol) return monomial_at(i).degree();
  }
  return -1;
}

double Polynomial::coefficient(int a, int b) const {
  if (a < 0 || b < 0 || a + b > capacity_degree_) return 0.0;
  return coeffs_[monomial_index(a, b)];
}

void Polynomial::add_term(int a, int b, double c) {
  if (a < 0 || b < 0) throw std::invalid_argument("negative exponent");
  reserve_degree(a + b);
  coeffs_[monomial_index(a, b)] += c;
}

double Polynomial::operator()(double x, double y) const {
  if (capacity_degree_ < 0) return 0.0;
  const auto v = monomial_values(x, y, capacity_degree_);
  return evaluate(v);
}

double Polynomial::evaluate(std::span<const double> monomials) const {
  double s = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) s += coeffs_[i] * monomials[i];
  return s;
}

Polynomial Polynomial::dx() const {
  Polynomial r(std::max(capacity_degree_ - 1, 0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto [a, b] = monomial_at(static_cast<int>(i));
    if (a > 0 && coeffs_[i] != 0.0) r.coeffs_[monomial_index(a - 1, b)] += a * coeffs_[i];
  }
  return r;
}

Polynomial Polynomial::dy() const {
  Polynomial r(std::max(capacity_degree_ - 1, 0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto [a, b] = monomial_at(static_cast<int>(i));
    if (b > 0 && coeffs_[i] != 0.0) r.coeffs_[monomial_index(a, b - 1)] += b * coeffs_[i];
  }
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  reserve_degree(other.capacity_degree_);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  reserve_degree(other.capacity_degree_);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.capacity_degree_ < 0 || b.capacity_degree_ < 0) return Polynomial();
  Polynomial r(a.capacity_degree_ + b.capacity_degree_);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0.0) continue;
    const auto mi = monomial_at(static_cast<int>(i));
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j] == 0.0) continue;
      const auto mj = monomial_at(static_cast<int>(j));
      r.coeffs_[monomial_index(mi.a + mj.a, mi.b + mj.b)] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return r;
}

}  // namespace evem
