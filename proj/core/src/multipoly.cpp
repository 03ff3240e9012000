#include "quadsemi/multipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "quadsemi/error.hpp"

namespace quadsemi {

__extension__ using i128 = __int128;

namespace {

std::int64_t mod_pow(std::int64_t base, unsigned exp, std::int64_t m) {
  i128 result = 1 % m;
  i128 b = base % m;
  if (b < 0) b += m;
  while (exp > 0) {
    if (exp & 1U) result = (result * b) % m;
    b = (b * b) % m;
    exp >>= 1U;
  }
  return static_cast<std::int64_t>(result);
}

}  // namespace

MultiPoly::MultiPoly(long constant) : MultiPoly(mpz_class(constant)) {}

MultiPoly::MultiPoly(const mpz_class& constant) {
  if (sgn(constant) != 0) terms_[Exponents{}] = constant;
}

MultiPoly MultiPoly::var(int index) {
  if (index < 0 || index >= kMaxVars) throw ContractError("MultiPoly::var: index out of range");
  MultiPoly p;
  Exponents e{};
  e[static_cast<std::size_t>(index)] = 1;
  p.terms_[e] = 1;
  return p;
}

void MultiPoly::normalize() {
  std::erase_if(terms_, [](const auto& kv) { return sgn(kv.second) == 0; });
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  for (const auto& [e, c] : other.terms_) terms_[e] += c;
  normalize();
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  for (const auto& [e, c] : other.terms_) terms_[e] -= c;
  normalize();
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) {
  std::map<Exponents, mpz_class> product;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      Exponents e{};
      for (std::size_t i = 0; i < e.size(); ++i) {
        const unsigned sum = unsigned{ea[i]} + unsigned{eb[i]};
        if (sum > 255) throw ContractError("MultiPoly: exponent overflow");
        e[i] = static_cast<std::uint8_t>(sum);
      }
      product[e] += ca * cb;
    }
  }
  terms_ = std::move(product);
  normalize();
  return *this;
}

MultiPoly MultiPoly::pow(unsigned exponent) const {
  MultiPoly result(1L);
  for (unsigned i = 0; i < exponent; ++i) result *= *this;
  return result;
}

int MultiPoly::num_vars() const {
  int n = 0;
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < kMaxVars; ++i) {
      if (e[static_cast<std::size_t>(i)] != 0) n = std::max(n, i + 1);
    }
  }
  return n;
}

mpz_class MultiPoly::evaluate(std::span<const mpz_class> point) const {
  if (static_cast<int>(point.size()) < num_vars()) {
    throw ContractError("MultiPoly::evaluate: too few coordinates");
  }
  mpz_class total = 0;
  for (const auto& [e, c] : terms_) {
    mpz_class term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      mpz_class power;
      mpz_pow_ui(power.get_mpz_t(), point[i].get_mpz_t(), e[i]);
      term *= power;
    }
    total += term;
  }
  return total;
}

std::int64_t MultiPoly::evaluate(std::span<const std::int64_t> point) const {
  std::vector<mpz_class> big;
  big.reserve(point.size());
  for (const auto v : point) big.emplace_back(static_cast<long>(v));
  const mpz_class value = evaluate(std::span<const mpz_class>(big));
  if (!value.fits_slong_p()) throw std::overflow_error("MultiPoly::evaluate: result exceeds 64 bits");
  return value.get_si();
}

std::int64_t MultiPoly::evaluate_mod(std::span<const std::int64_t> point, std::int64_t modulus) const {
  if (static_cast<int>(point.size()) < num_vars()) {
    throw ContractError("MultiPoly::evaluate_mod: too few coordinates");
  }
  i128 total = 0;
  for (const auto& [e, c] : terms_) {
    const mpz_class reduced_big = c % modulus;  // sign follows c
    i128 term = reduced_big.get_si();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) term = (term * mod_pow(point[i], e[i], modulus)) % modulus;
    }
    total = (total + term) % modulus;
  }
  auto r = static_cast<std::int64_t>(total % modulus);
  return r < 0 ? r + modulus : r;
}

std::string MultiPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Reverse lexicographic exponent order.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    mpz_class magnitude = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool constant = true;
    for (std::size_t i = 0; i < e.size(); ++i) constant = constant && e[i] == 0;
    if (constant || magnitude != 1) out << magnitude.get_str();
    bool need_mul = !constant && magnitude != 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_mul) out << "*";
      out << (i < names.size() ? names[i] : "v" + std::to_string(i));
      if (e[i] > 1) out << "^" << unsigned{e[i]};
      need_mul = true;
    }
  }
  return out.str();
}

}  // namespace quadsemi
