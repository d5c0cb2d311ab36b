#pragma once

// Sparse multivariate polynomials over Rat in a ring with
//   - a weight (degree) per variable,
//   - a global truncation degree (monomials above it vanish),
//   - optional per-variable power relations x^cap = <replacement>,
//     used for Chow rings like Z[h]/(h^{n+1}) and projective-bundle rings.
// Every operation returns classes in normal form: relations applied to
// exhaustion, truncation enforced, zero coefficients erased.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "igrr/numbers.hpp"

namespace igrr {

using Expo = std::vector<int>;  // one exponent per ring variable
using TermMap = std::map<Expo, Rat>;

struct RingSpec {
  struct Var {
    std::string name;
    int weight = 1;
    // cap == 0: free variable.  cap == m > 0: x^m is rewritten to `rewrite`
    // (a polynomial whose terms must already be normal in this variable).
    int cap = 0;
    TermMap rewrite;
  };

  std::vector<Var> vars;
  int trunc = 0;  // weighted-degree cutoff, inclusive

  int degree(const Expo& e) const;
};

using RingPtr = std::shared_ptr<const RingSpec>;

RingPtr make_ring(std::vector<RingSpec::Var> vars, int trunc);

class Poly {
 public:
  Poly() = default;  // zero in a null ring; only assignment is meaningful
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly zero(RingPtr ring) { return Poly(std::move(ring)); }
  static Poly constant(RingPtr ring, const Rat& c);
  static Poly variable(RingPtr ring, size_t index);
  // Normalizing constructor from raw terms.
  static Poly from_terms(RingPtr ring, TermMap terms);

  const RingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_integral() const;
  // Largest weighted degree with a nonzero term (-1 for the zero class).
  int max_degree() const;

  Rat coeff(const Expo& e) const;
  Rat constant_term() const;

  // Homogeneous part of weighted degree k.
  Poly component(int k) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const Rat& c);
  friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
  friend Poly operator*(const Rat& c, Poly a) { return a *= c; }
  Poly& operator/=(const Rat& c);

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly pow(unsigned e) const;

  // Multiplicative inverse; requires a nonzero constant term (the rest is
  // nilpotent in a truncated ring, so a geometric series terminates).
  Poly inverse() const;

  // Ring morphism: variable i maps to images[i] (all in the target ring).
  Poly map_vars(const std::vector<Poly>& images, const RingPtr& target) const;

  // Deterministic rendering, terms ordered by (degree, lex), e.g.
  // "12 + 6·c1 + c1^2".  Zero renders as "0".
  std::string str() const;

 private:
  void normalize();

  RingPtr ring_;
  TermMap terms_;
};

}  // namespace igrr
