#include <doctest.h>

#include "igrr/poly.hpp"

using namespace igrr;

namespace {

// Z[h]/(h^{n+1}), truncated at degree n.
RingPtr proj_ring(int n) {
  return make_ring({{"h", 1, n + 1, {}}}, n);
}

}  // namespace

TEST_CASE("arithmetic and normal form in a truncated ring") {
  RingPtr r = proj_ring(2);
  Poly h = Poly::variable(r, 0);
  Poly p = (Poly::constant(r, 1) + h).pow(3);  // 1 + 3h + 3h^2 (h^3 dies)
  CHECK(p.coeff({0}) == 1);
  CHECK(p.coeff({1}) == 3);
  CHECK(p.coeff({2}) == 3);
  CHECK(p.max_degree() == 2);
  CHECK(p.component(1) == h * Rat(3));
  CHECK((h.pow(3)).is_zero());
  CHECK(p.str() == "1 + 3·h + 3·h^2");
}

TEST_CASE("relations rewrite instead of truncating when a replacement is given") {
  // z^2 = -2hz on a 2-dimensional model (h^2 = 0).
  TermMap rw{{{1, 1}, Rat(-2)}};
  RingPtr r = make_ring({{"h", 1, 2, {}}, {"z", 1, 2, rw}}, 2);
  Poly h = Poly::variable(r, 0), z = Poly::variable(r, 1);
  Poly z2 = z * z;
  CHECK(z2 == h * z * Rat(-2));
  CHECK((z2 * z).is_zero());  // z^3 -> -2hz^2 -> 4h^2z = 0
  CHECK((h * h).is_zero());
}

TEST_CASE("inverse of a unit in a truncated ring") {
  RingPtr r = proj_ring(3);
  Poly h = Poly::variable(r, 0);
  Poly u = Poly::constant(r, 1) - h;
  Poly v = u.inverse();  // 1 + h + h^2 + h^3
  CHECK(v.coeff({3}) == 1);
  CHECK(u * v == Poly::constant(r, 1));
  Poly w = (Poly::constant(r, 2) + h).inverse();
  CHECK(w * (Poly::constant(r, 2) + h) == Poly::constant(r, 1));
  CHECK_THROWS_AS(h.inverse(), PreconditionError);
}

TEST_CASE("map_vars implements ring morphisms") {
  RingPtr src = make_ring({{"a", 1, 0, {}}, {"b", 1, 0, {}}}, 2);
  Poly a = Poly::variable(src, 0), b = Poly::variable(src, 1);
  Poly p = a * a + a * b * Rat(2);
  RingPtr dst = proj_ring(2);
  Poly h = Poly::variable(dst, 0);
  // a -> h, b -> 3h
  Poly q = p.map_vars({h, h * Rat(3)}, dst);
  CHECK(q == h * h * Rat(7));
}

TEST_CASE("weighted variables truncate by weighted degree") {
  // c1 of weight 1, c2 of weight 2, truncation 3.
  RingPtr r = make_ring({{"c1", 1, 0, {}}, {"c2", 2, 0, {}}}, 3);
  Poly c1 = Poly::variable(r, 0), c2 = Poly::variable(r, 1);
  CHECK((c2 * c2).is_zero());           // degree 4 > 3
  CHECK_FALSE((c1 * c2).is_zero());     // degree 3
  CHECK((c1 * c1 * c2).is_zero());      // degree 4
  CHECK((c1 * c2).max_degree() == 3);
}

TEST_CASE("mixed-ring operations are rejected") {
  RingPtr r1 = proj_ring(2), r2 = proj_ring(2);
  Poly a = Poly::variable(r1, 0), b = Poly::variable(r2, 0);
  CHECK_THROWS_AS(a + b, PreconditionError);
}

TEST_CASE("integrality of coefficient vectors") {
  RingPtr r = proj_ring(2);
  Poly h = Poly::variable(r, 0);
  Poly p = Poly::constant(r, 1) + h * make_rat(1, 2);
  CHECK_FALSE(p.is_integral());
  CHECK((p * Rat(2)).is_integral());
}
