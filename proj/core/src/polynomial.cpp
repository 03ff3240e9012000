#include "quadsemi/polynomial.hpp"

#include <sstream>
#include <utility>

namespace quadsemi {

DensePolynomial::DensePolynomial(std::vector<mpz_class> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

DensePolynomial::DensePolynomial(std::initializer_list<long> coefficients) {
  coeffs_.reserve(coefficients.size());
  for (long c : coefficients) coeffs_.emplace_back(c);
  trim();
}

DensePolynomial DensePolynomial::monomial(std::size_t degree, const mpz_class& coefficient) {
  std::vector<mpz_class> c(degree + 1, mpz_class(0));
  c[degree] = coefficient;
  return DensePolynomial(std::move(c));
}

void DensePolynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

mpz_class DensePolynomial::operator()(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

mpz_class DensePolynomial::content() const {
  mpz_class g = 0;
  for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

DensePolynomial& DensePolynomial::operator+=(const DensePolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), mpz_class(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

DensePolynomial& DensePolynomial::operator-=(const DensePolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), mpz_class(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

DensePolynomial operator*(const DensePolynomial& a, const DensePolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> c(a.coeffs_.size() + b.coeffs_.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return DensePolynomial(std::move(c));
}

bool DensePolynomial::divides_into(const DensePolynomial& divisor, DensePolynomial& quotient) const {
  if (divisor.is_zero()) return false;
  if (is_zero()) {
    quotient = {};
    return true;
  }
  if (divisor.degree() > degree()) return false;
  std::vector<mpz_class> rem = coeffs_;
  const auto dd = static_cast<std::size_t>(divisor.degree());
  std::vector<mpz_class> q(rem.size() - dd, mpz_class(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    const mpz_class& top = rem[k + dd];
    if (sgn(top) == 0) continue;
    if (mpz_divisible_p(top.get_mpz_t(), divisor.leading().get_mpz_t()) == 0) return false;
    q[k] = top / divisor.leading();
    for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= q[k] * divisor.coeffs_[j];
  }
  for (const auto& r : rem) {
    if (sgn(r) != 0) return false;
  }
  quotient = DensePolynomial(std::move(q));
  return true;
}

std::string DensePolynomial::to_string(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const mpz_class& c = coeffs_[i];
    if (sgn(c) == 0) continue;
    const mpz_class mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) out << mag.get_str();
    if (i >= 1) out << var;
    if (i >= 2) out << "^" << i;
  }
  return out.str();
}

}  // namespace quadsemi
