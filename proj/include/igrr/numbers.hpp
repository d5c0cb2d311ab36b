#pragma once

// Exact integer / rational arithmetic plus the number-theoretic constants
// used by the characteristic-class calculus: factorials, binomials, the
// universal Todd denominator constants T_m, and Bernoulli numbers.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace igrr {

// Arbitrary-precision integer / rational.  Rationals are kept canonical
// (reduced, positive denominator); all gmpxx operators preserve that.
using Int = mpz_class;
using Rat = mpq_class;

// Raised when an operation's stated precondition is violated (bad ranks,
// hypothesis bounds, malformed symmetric input, ...).  The CLI maps this to
// exit code 2, distinct from a verification FAIL (exit 1).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// num/den with canonicalization; den must be nonzero.
Rat make_rat(const Int& num, const Int& den);

inline const Int& numerator(const Rat& q) { return q.get_num(); }
inline const Int& denominator(const Rat& q) { return q.get_den(); }

// Exact: true iff q is an integer (denominator 1 after reduction).
inline bool is_integral(const Rat& q) { return q.get_den() == 1; }

// True iff a | b exactly (a != 0).
bool divides(const Int& a, const Int& b);

// True iff q lies in Z[1/n], i.e. every prime of q's denominator divides n.
// (Stronger than "denominator divides n": 720 ∉ divisors(120) but 1/720 is
// in Z[1/120].)  Requires n != 0.
bool denominator_in(const Rat& q, const Int& n);

Int factorial(unsigned n);

// Binomial coefficient for arbitrary integer n and k >= 0:
// n*(n-1)*...*(n-k+1)/k!.  Exact; zero when 0 <= n < k.
Int binomial(const Int& n, unsigned k);

Int pow_int(const Int& base, unsigned e);
Rat pow_rat(const Rat& base, unsigned e);

// p-adic valuation of n (n != 0, p >= 2 prime not checked).
unsigned valuation(const Int& n, const Int& p);

// Universal Todd denominator constant
//   T_m = prod over primes p <= m+1 of p^floor(m/(p-1)).
// T_m * Td_m(E) is integral for every vector bundle E; m! divides T_m and
// T_m divides T_{m+1}.  T_0..T_4 = 1, 2, 12, 24, 720.
Int todd_scale(unsigned m);

// Bernoulli number B_n in the convention B_1 = -1/2, i.e. the defining
// recurrence sum_{j=0}^{n} binom(n+1, j) B_j = 0 with B_0 = 1, so that
// x/(1 - e^{-x}) = sum_n (-1)^n B_n x^n / n!.  Memoized.
Rat bernoulli(unsigned n);

// Decimal rendering: "-691/2730", integers without "/1".
std::string to_string(const Int& n);
std::string to_string(const Rat& q);

}  // namespace igrr
