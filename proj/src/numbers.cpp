#include "igrr/numbers.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace igrr {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw PreconditionError("make_rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

bool divides(const Int& a, const Int& b) {
  if (a == 0) return b == 0;
  return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
}

bool denominator_in(const Rat& q, const Int& n) {
  if (n == 0) throw PreconditionError("denominator_in: n must be nonzero");
  Int d = q.get_den();  // positive, canonical
  Int m = abs(n);
  while (d != 1) {
    Int g = gcd(d, m);
    if (g == 1) return false;
    do {
      mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), g.get_mpz_t());
      g = gcd(d, m);
    } while (g != 1);
  }
  return true;
}

Int factorial(unsigned n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Int binomial(const Int& n, unsigned k) {
  Int num = 1;
  for (unsigned i = 0; i < k; ++i) num *= n - static_cast<long>(i);
  Int den = factorial(k);
  Int q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

Int pow_int(const Int& base, unsigned e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rat pow_rat(const Rat& base, unsigned e) {
  Rat r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

unsigned valuation(const Int& n, const Int& p) {
  if (n == 0) throw PreconditionError("valuation: n must be nonzero");
  Int m = n;
  unsigned v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

namespace {

// Primes up to n by trial division; n is tiny here (<= m+1 with m <= ~64).
std::vector<unsigned> primes_up_to(unsigned n) {
  std::vector<unsigned> ps;
  for (unsigned c = 2; c <= n; ++c) {
    bool prime = true;
    for (unsigned p : ps) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) ps.push_back(c);
  }
  return ps;
}

}  // namespace

Int todd_scale(unsigned m) {
  Int t = 1;
  for (unsigned p : primes_up_to(m + 1)) t *= pow_int(p, m / (p - 1));
  return t;
}

Rat bernoulli(unsigned n) {
  static std::mutex mu;
  static std::vector<Rat> cache{Rat(1)};  // B_0 = 1
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= n) {
    unsigned k = static_cast<unsigned>(cache.size());
    // sum_{j=0}^{k} binom(k+1, j) B_j = 0  =>  solve for B_k.
    Rat s = 0;
    for (unsigned j = 0; j < k; ++j) s += Rat(binomial(Int(k) + 1, j)) * cache[j];
    cache.push_back(-s / Rat(Int(k) + 1));
  }
  return cache[n];
}

std::string to_string(const Int& n) { return n.get_str(); }

std::string to_string(const Rat& q) { return q.get_str(); }

}  // namespace igrr
