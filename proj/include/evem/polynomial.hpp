#pragma once

#include <array>
#include <span>
#include <vector>

namespace evem {

/// x^a y^b
struct Monomial2 {
  int a = 0;
  int b = 0;

  constexpr int degree() const { return a + b; }
  friend bool operator==(const Monomial2&, const Monomial2&) = default;
};

/// Number of monomials of total degree <= degree.
constexpr int monomial_count(int degree) {
  return degree < 0 ? 0 : (degree + 1) * (degree + 2) / 2;
}

/// Graded order: 1, x, y, x^2, xy, y^2, x^3, ...
constexpr int monomial_index(int a, int b) {
  const int d = a + b;
  return d * (d + 1) / 2 + b;
}

Monomial2 monomial_at(int index);

/// Values of every monomial of degree <= degree at (x, y), in graded order.
void monomial_values(double x, double y, int degree, std::span<double> out);
std::vector<double> monomial_values(double x, double y, int degree);

/// Dense bivariate polynomial with coefficients in graded monomial order.
class Polynomial {
 public:
  Polynomial() = default;
  /// Zero polynomial with storage for all monomials up to `degree`.
  explicit Polynomial(int degree);

  static Polynomial constant(double c);
  static Polynomial monomial(int a, int b, double c = 1.0);

  /// Highest degree with storage; -1 when empty.
  int capacity_degree() const { return capacity_degree_; }
  /// Highest degree carrying a coefficient with |c| > tol; -1 for the zero polynomial.
  int degree(double tol = 0.0) const;
  bool is_zero(double tol = 0.0) const { return degree(tol) < 0; }

  double coefficient(int a, int b) const;
  void add_term(int a, int b, double c);
  std::span<const double> coefficients() const { return coeffs_; }

  double operator()(double x, double y) const;
  /// Dot product with precomputed monomial values (see monomial_values).
  double evaluate(std::span<const double> monomials) const;

  Polynomial dx() const;
  Polynomial dy() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void reserve_degree(int degree);

  int capacity_degree_ = -1;
  std::vector<double> coeffs_;
};

using PolyVec2 = std::array<Polynomial, 2>;
using PolyVec3 = std::array<Polynomial, 3>;

}  // namespace evem
