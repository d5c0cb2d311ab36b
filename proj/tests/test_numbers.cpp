#include <doctest.h>

#include "igrr/numbers.hpp"

using namespace igrr;

namespace {

// Independent oracle for the Todd denominator constants: the smallest
// positive integer of the shape prod p^{e_p} with e_p = floor(m/(p-1)),
// enumerated here by trial division from scratch.
Int todd_scale_oracle(unsigned m) {
  Int t = 1;
  for (unsigned p = 2; p <= m + 1; ++p) {
    bool prime = p >= 2;
    for (unsigned q = 2; q * q <= p; ++q)
      if (p % q == 0) prime = false;
    if (!prime) continue;
    for (unsigned e = 0; e < m / (p - 1); ++e) t *= p;
  }
  return t;
}

}  // namespace

TEST_CASE("factorial frozen values") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(1) == 1);
  CHECK(factorial(5) == 120);
  CHECK(factorial(12) == 479001600);
  CHECK(factorial(30) == Int("265252859812191058636308480000000"));
}

TEST_CASE("binomial handles negative upper argument and k > n") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(-1, 3) == -1);
  CHECK(binomial(-2, 2) == 3);
  CHECK(binomial(0, 0) == 1);
}

TEST_CASE("todd scale constants: frozen values") {
  const long expected[] = {1,       2,       12,      24,        720,       1440, 60480,
                           120960, 3628800, 7257600, 479001600, 958003200};
  for (unsigned m = 0; m < 12; ++m) CHECK(todd_scale(m) == expected[m]);
  CHECK(todd_scale(12) == Int("2615348736000"));
  CHECK(todd_scale(30) == Int("30391611665841602734313680404480000000"));
}

TEST_CASE("todd scale constants: prime-enumeration oracle and divisibilities") {
  for (unsigned m = 0; m <= 30; ++m) {
    CHECK(todd_scale(m) == todd_scale_oracle(m));
    CHECK(divides(factorial(m), todd_scale(m)));     // m! | T_m
    CHECK(divides(todd_scale(m), todd_scale(m + 1)));  // T_m | T_{m+1}
  }
}

TEST_CASE("bernoulli numbers: convention B_1 = -1/2 and frozen values") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == make_rat(-1, 2));
  CHECK(bernoulli(2) == make_rat(1, 6));
  CHECK(bernoulli(4) == make_rat(-1, 30));
  CHECK(bernoulli(12) == make_rat(-691, 2730));
  for (unsigned n = 3; n <= 29; n += 2) CHECK(bernoulli(n) == 0);
}

TEST_CASE("bernoulli numbers satisfy the defining recurrence") {
  for (unsigned n = 1; n <= 30; ++n) {
    Rat s = 0;
    for (unsigned j = 0; j <= n; ++j) s += Rat(binomial(Int(n) + 1, j)) * bernoulli(j);
    CHECK(s == 0);
  }
}

TEST_CASE("rationals are canonical and integrality is exact") {
  Rat q = make_rat(6, -4);
  CHECK(numerator(q) == -3);
  CHECK(denominator(q) == 2);
  CHECK_FALSE(is_integral(q));
  CHECK(is_integral(make_rat(-8, 4)));
  CHECK(is_integral(Rat(0)));
  CHECK_THROWS_AS(make_rat(1, 0), PreconditionError);
}

TEST_CASE("membership in Z[1/n] tests prime support, not literal divisibility") {
  CHECK(denominator_in(make_rat(1, 720), 120));   // 720 | 120^k for some k
  CHECK(denominator_in(make_rat(5, 6), 6));
  CHECK_FALSE(denominator_in(make_rat(1, 7), 720));
  CHECK(denominator_in(Rat(3), 1));               // integers lie in Z[1/1]
  CHECK_FALSE(denominator_in(make_rat(1, 2), 1));
}

TEST_CASE("divides and valuation") {
  CHECK(divides(3, 12));
  CHECK_FALSE(divides(5, 12));
  CHECK(divides(1, 0));
  CHECK(valuation(720, 2) == 4);
  CHECK(valuation(720, 3) == 2);
  CHECK(valuation(720, 7) == 0);
}
