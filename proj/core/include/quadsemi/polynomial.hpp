#ifndef QUADSEMI_POLYNOMIAL_HPP
#define QUADSEMI_POLYNOMIAL_HPP

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace quadsemi {

/// Dense univariate polynomial over Z, constant term first. The zero
/// polynomial has no coefficients; otherwise the leading coefficient is nonzero.
class DensePolynomial {
 public:
  DensePolynomial() = default;
  explicit DensePolynomial(std::vector<mpz_class> coefficients);
  DensePolynomial(std::initializer_list<long> coefficients);

  static DensePolynomial monomial(std::size_t degree, const mpz_class& coefficient = 1);

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const mpz_class& leading() const { return coeffs_.back(); }
  const std::vector<mpz_class>& coefficients() const { return coeffs_; }
  mpz_class coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpz_class(0); }

  mpz_class operator()(const mpz_class& x) const;
  mpz_class content() const;

  DensePolynomial& operator+=(const DensePolynomial& other);
  DensePolynomial& operator-=(const DensePolynomial& other);
  friend DensePolynomial operator+(DensePolynomial a, const DensePolynomial& b) { return a += b; }
  friend DensePolynomial operator-(DensePolynomial a, const DensePolynomial& b) { return a -= b; }
  friend DensePolynomial operator*(const DensePolynomial& a, const DensePolynomial& b);
  friend bool operator==(const DensePolynomial&, const DensePolynomial&) = default;

  /// Exact division over Z. Returns true and sets `quotient` when `divisor`
  /// divides *this with an integral quotient and zero remainder.
  bool divides_into(const DensePolynomial& divisor, DensePolynomial& quotient) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<mpz_class> coeffs_;
};

}  // namespace quadsemi

#endif  // QUADSEMI_POLYNOMIAL_HPP
