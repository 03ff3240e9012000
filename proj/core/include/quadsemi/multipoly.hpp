#ifndef QUADSEMI_MULTIPOLY_HPP
#define QUADSEMI_MULTIPOLY_HPP

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>

#include <gmpxx.h>

namespace quadsemi {

/// Sparse integer polynomial in at most four variables. Used to state
/// Diophantine systems once and evaluate them exactly or modulo m.
class MultiPoly {
 public:
  static constexpr int kMaxVars = 4;
  using Exponents = std::array<std::uint8_t, kMaxVars>;

  MultiPoly() = default;
  MultiPoly(long constant);  // NOLINT(google-explicit-constructor)
  MultiPoly(const mpz_class& constant);  // NOLINT(google-explicit-constructor)

  static MultiPoly var(int index);

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const MultiPoly& other);
  MultiPoly pow(unsigned exponent) const;

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const MultiPoly& b) { return a *= b; }
  friend MultiPoly operator-(const MultiPoly& a) { return MultiPoly(0L) - a; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

  /// One more than the highest variable index that occurs (0 for constants).
  int num_vars() const;
  bool is_zero() const { return terms_.empty(); }

  mpz_class evaluate(std::span<const mpz_class> point) const;
  std::int64_t evaluate(std::span<const std::int64_t> point) const;  // throws std::overflow_error past 64 bits
  std::int64_t evaluate_mod(std::span<const std::int64_t> point, std::int64_t modulus) const;

  const std::map<Exponents, mpz_class>& terms() const { return terms_; }

  /// Human-readable rendering with variable names, e.g. {"x","y","s","t"}.
  std::string to_string(std::span<const std::string> names) const;

 private:
  void normalize();
  std::map<Exponents, mpz_class> terms_;
};

}  // namespace quadsemi

#endif  // QUADSEMI_MULTIPOLY_HPP
