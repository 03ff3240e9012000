#include "quadsemi/oracle.hpp"

#include <algorithm>
#include <array>
#include <tuple>

#include "quadsemi/arith.hpp"
#include "quadsemi/error.hpp"

namespace quadsemi::oracle {

namespace {

// Dense polynomials over F_p, constant term first, trimmed.
using Fp = std::vector<unsigned long>;
__extension__ using u128 = unsigned __int128;

unsigned long mulm(unsigned long a, unsigned long b, unsigned long p) {
  return static_cast<unsigned long>(static_cast<u128>(a) * b % p);
}

unsigned long powm(unsigned long a, unsigned long e, unsigned long p) {
  unsigned long r = 1 % p;
  while (e != 0) {
    if ((e & 1U) != 0) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1U;
  }
  return r;
}

void trim(Fp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder modulo a monic f.
Fp reduce(Fp a, const Fp& f, unsigned long p) {
  trim(a);
  const std::size_t n = f.size() - 1;
  while (a.size() > n) {
    const unsigned long lead = a.back();
    const std::size_t shift = a.size() - 1 - n;
    for (std::size_t i = 0; i <= n; ++i) a[shift + i] = (a[shift + i] + p - mulm(lead, f[i], p)) % p;
    trim(a);
  }
  return a;
}

Fp mulmod(const Fp& a, const Fp& b, const Fp& f, unsigned long p) {
  if (a.empty() || b.empty()) return {};
  Fp out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + mulm(a[i], b[j], p)) % p;
  }
  return reduce(std::move(out), f, p);
}

Fp powmod(Fp base, unsigned long e, const Fp& f, unsigned long p) {
  Fp r = reduce(Fp{1}, f, p);
  base = reduce(std::move(base), f, p);
  while (e != 0) {
    if ((e & 1U) != 0) r = mulmod(r, base, f, p);
    base = mulmod(base, base, f, p);
    e >>= 1U;
  }
  return r;
}

Fp sub(Fp a, const Fp& b, unsigned long p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

Fp monic(Fp a, unsigned long p) {
  const unsigned long inv = powm(a.back(), p - 2, p);
  for (auto& c : a) c = mulm(c, inv, p);
  return a;
}

Fp gcd(Fp a, Fp b, unsigned long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Fp r = reduce(a, monic(b, p), p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<long> prime_divisors(long n) {
  std::vector<long> out;
  for (long q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

void check_input(const DensePolynomial& p, const OracleLimits& limits, const char* op) {
  if (p.degree() < 1) throw ContractError(std::string(op) + ": polynomial must have degree >= 1");
  if (p.degree() > limits.degree_cap) {
    throw BudgetExceeded(std::string(op) + ": degree " + std::to_string(p.degree()) + " exceeds the oracle cap " +
                         std::to_string(limits.degree_cap));
  }
  if (p.content() != 1) throw ContractError(std::string(op) + ": polynomial must be primitive (content 1)");
}

std::vector<Integer> signed_divisors(const Integer& n) {
  std::vector<Integer> out;
  for (const auto& d : arith::positive_divisors(n)) {
    out.push_back(d);
    out.push_back(-d);
  }
  return out;
}

Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

std::optional<DensePolynomial> rational_root_factor(const DensePolynomial& f) {
  const auto& c = f.coefficients();
  if (c.front() == 0) return DensePolynomial{0, 1};
  const long n = f.degree();
  for (const auto& a : arith::positive_divisors(f.leading())) {
    for (const auto& b : signed_divisors(c.front())) {
      if (gcd(a, b) != 1) continue;
      // a^n f(b/a) = sum c_i b^i a^(n-i)
      Integer total = 0;
      for (long i = 0; i <= n; ++i) {
        total += c[static_cast<std::size_t>(i)] * ipow(b, static_cast<unsigned long>(i)) *
                 ipow(a, static_cast<unsigned long>(n - i));
      }
      if (total == 0) return DensePolynomial(std::vector<Integer>{Integer(-b), a});
    }
  }
  return std::nullopt;
}

struct Sample {
  Integer x;
  Integer value;
};

// Kronecker search for a factor of degree exactly d with positive leading coefficient.
std::optional<DensePolynomial> factor_of_degree(const DensePolynomial& f, long d, const std::vector<Sample>& samples) {
  // Interpolation nodes: among the smallest |f(x)|, those with the fewest divisors.
  const std::size_t pool = std::min(samples.size(), static_cast<std::size_t>(d) + 6);
  std::vector<std::tuple<std::size_t, Integer, std::size_t>> ranked;
  for (std::size_t k = 0; k < pool; ++k) {
    ranked.emplace_back(arith::positive_divisors(samples[k].value).size(), abs(samples[k].value), k);
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<Sample> nodes;
  std::vector<std::vector<Integer>> choices;
  std::vector<bool> is_node(samples.size(), false);
  for (long k = 0; k < d; ++k) {
    const auto idx = std::get<2>(ranked[static_cast<std::size_t>(k)]);
    is_node[idx] = true;
    nodes.push_back(samples[idx]);
    choices.push_back(signed_divisors(samples[idx].value));
  }
  std::vector<Sample> filters;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (!is_node[k]) filters.push_back(samples[k]);
  }

  for (const auto& a : arith::positive_divisors(f.leading())) {
    std::vector<std::size_t> pick(static_cast<std::size_t>(d), 0);
    while (true) {
      // g = a x^d + h with deg h < d and h(x_k) = v_k - a x_k^d; Newton divided differences
      // of an integral h at integral nodes are integral, so inexact division rejects the tuple.
      std::vector<Integer> dd(static_cast<std::size_t>(d));
      for (std::size_t k = 0; k < dd.size(); ++k) {
        dd[k] = choices[k][pick[k]] - a * ipow(nodes[k].x, static_cast<unsigned long>(d));
      }
      bool integral = true;
      for (std::size_t level = 1; level < dd.size() && integral; ++level) {
        for (std::size_t k = dd.size() - 1; k >= level; --k) {
          const Integer num = dd[k] - dd[k - 1];
          const Integer den = nodes[k].x - nodes[k - level].x;
          if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
            integral = false;
            break;
          }
          mpz_divexact(dd[k].get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
      }
      if (integral) {
        DensePolynomial g = DensePolynomial::monomial(static_cast<std::size_t>(d), a);
        DensePolynomial basis{1};
        for (std::size_t k = 0; k < dd.size(); ++k) {
          g += basis * DensePolynomial(std::vector<Integer>{dd[k]});
          basis = basis * DensePolynomial(std::vector<Integer>{Integer(-nodes[k].x), 1});
        }
        bool plausible = true;
        for (const auto& s : filters) {
          const Integer gv = g(s.x);
          if (gv == 0 || !mpz_divisible_p(s.value.get_mpz_t(), gv.get_mpz_t())) {
            plausible = false;
            break;
          }
        }
        DensePolynomial quotient;
        if (plausible && f.divides_into(g, quotient)) return g;
      }
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
  }
  return std::nullopt;
}

constexpr std::array<unsigned long, 15> kFastPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

}  // namespace

bool irreducible_mod_p(const DensePolynomial& poly, unsigned long prime) {
  if (poly.degree() < 1) return false;
  Fp f;
  for (const auto& c : poly.coefficients()) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), prime);
    f.push_back(r.get_ui());
  }
  if (f.back() == 0) return false;
  f = monic(std::move(f), prime);
  const long n = poly.degree();
  if (n == 1) return true;
  const Fp x{0, 1};
  std::vector<Fp> frob(static_cast<std::size_t>(n) + 1);  // frob[k] = x^(p^k) mod f
  frob[0] = reduce(x, f, prime);
  for (long k = 1; k <= n; ++k) frob[static_cast<std::size_t>(k)] = powmod(frob[static_cast<std::size_t>(k - 1)], prime, f, prime);
  if (sub(frob[static_cast<std::size_t>(n)], frob[0], prime) != Fp{}) return false;
  for (long q : prime_divisors(n)) {
    const Fp g = gcd(f, sub(frob[static_cast<std::size_t>(n / q)], frob[0], prime), prime);
    if (g.size() != 1) return false;
  }
  return true;
}

std::optional<DensePolynomial> find_factor(const DensePolynomial& f, const OracleLimits& limits) {
  check_input(f, limits, "find_factor");
  const long n = f.degree();
  if (n == 1) return std::nullopt;
  if (auto linear = rational_root_factor(f)) return linear;
  if (n < 4) return std::nullopt;

  // No integer roots remain, so every sample value is nonzero.
  std::vector<Sample> samples;
  const long reach = 2 * n + 4;
  for (long x = -reach; x <= reach; ++x) samples.push_back({Integer(x), f(Integer(x))});
  std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) {
    const int c = cmp(abs(a.value), abs(b.value));
    if (c != 0) return c < 0;
    const int cx = cmp(abs(a.x), abs(b.x));
    return cx != 0 ? cx < 0 : a.x < b.x;
  });
  for (long d = 2; d <= n / 2; ++d) {
    if (auto g = factor_of_degree(f, d, samples)) return g;
  }
  return std::nullopt;
}

bool is_irreducible_exact(const DensePolynomial& f, const OracleLimits& limits) {
  check_input(f, limits, "is_irreducible_exact");
  if (f.degree() == 1) return true;
  for (unsigned long p : kFastPrimes) {
    if (irreducible_mod_p(f, p)) return true;
  }
  return !find_factor(f, limits).has_value();
}

CrossValidationReport cross_validate(const dynamics::GeneratorSet& gens, std::size_t max_len, Parallelism par,
                                     const OracleLimits& limits) {
  if (max_len >= 63 || (std::size_t{1} << max_len) > static_cast<std::size_t>(limits.degree_cap)) {
    throw BudgetExceeded("cross_validate: 2^L exceeds the oracle degree cap " + std::to_string(limits.degree_cap));
  }
  const auto scanned = dynamics::scan_words(gens, max_len, par);
  auto chunks = parallel_chunks(scanned.size(), par, [&](std::size_t b, std::size_t e) {
    std::vector<WordRecord> out;
    for (std::size_t k = b; k < e; ++k) {
      const auto poly = dynamics::compose_word(gens, scanned[k].word);
      out.push_back({scanned[k].word, scanned[k].verdict, is_irreducible_exact(poly, limits)});
    }
    return out;
  });
  CrossValidationReport report;
  for (auto& chunk : chunks) {
    for (auto& rec : chunk) {
      ++report.words;
      if (rec.verdict.certified()) {
        ++report.certified;
        if (!rec.irreducible) report.forbidden.push_back(rec);
      } else if (rec.irreducible) {
        report.unknown_irreducible.push_back(rec);
      } else {
        ++report.unknown_reducible;
      }
    }
  }
  if (!report.forbidden.empty()) {
    std::string details;
    for (const auto& rec : report.forbidden) {
      details += "  word " + dynamics::to_string(rec.word) + ": " +
                 dynamics::compose_word(gens, rec.word).to_string() + "\n";
    }
    throw TheoremViolation("a square-free adjusted critical orbit forces irreducibility", details);
  }
  return report;
}

}  // namespace quadsemi::oracle
