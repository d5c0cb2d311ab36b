#include "igrr/orbitcat.hpp"

#include <map>

#include "doctest.h"
#include "igrr/chow.hpp"
#include "igrr/ktheory.hpp"
#include "igrr/numbers.hpp"

using namespace igrr;

namespace {

KClass line_on(const VarietyPtr& X, const std::vector<int>& twists,
               const Int& mult = 1) {
  return KClass::line(X, LineData{twists, 0}) * mult;
}

// Correspondence [O(s) ⊠ O(t)] : P^m -> P^n.
KMCorrespondence line_corr(int m, int s, int n, int t) {
  return km_external(line_on(Variety::projective_space(m), {s}),
                     line_on(Variety::projective_space(n), {t}));
}

ChowClass hpow(const ChowClass& h, int e) {
  ChowClass r = ChowClass::one(h.variety());
  for (int i = 0; i < e; ++i) r = r * h;
  return r;
}

}  // namespace

TEST_CASE("correspondences over a point multiply ranks") {
  const VarietyPtr pt = Variety::point();
  const KMCorrespondence a = make_km(pt, pt, KClass::structure_sheaf(pt) * Int(3));
  const KMCorrespondence b = make_km(pt, pt, KClass::structure_sheaf(pt) * Int(-5));
  const KMCorrespondence c = compose_km(a, b);
  CHECK(c.source == pt);
  CHECK(c.target == pt);
  CHECK(c.cls.rank() == Int(-15));
  CHECK(c.cls == KClass::structure_sheaf(pt) * Int(-15));
}

TEST_CASE("diagonal correspondence is a two-sided unit") {
  for (int n = 0; n <= 2; ++n) {
    const KMCorrespondence d = diagonal_k_class(n);
    // Right unit: a ∘ d = a for a : P^1 -> P^n.
    for (int s = -1; s <= 1; ++s) {
      for (int t = -1; t <= n; ++t) {
        const KMCorrespondence a = line_corr(1, s, n, t);
        const KMCorrespondence ad = compose_km(a, d);
        CHECK(ad.cls == a.cls);
        // Left unit: d ∘ b = b for b : P^n -> P^2.
        const KMCorrespondence b = line_corr(n, t, 2, s);
        const KMCorrespondence db = compose_km(d, b);
        CHECK(db.cls == b.cls);
      }
    }
  }
  // The resolved diagonal of P^3 also acts as a unit on line classes.
  const KMCorrespondence d3 = diagonal_k_class(3);
  const KMCorrespondence a = line_corr(2, 1, 3, -2);
  CHECK(compose_km(a, d3).cls == a.cls);
}

TEST_CASE("composition kills a middle factor of zero Euler characteristic") {
  const VarietyPtr pt = Variety::point();
  const VarietyPtr P1 = Variety::projective_space(1);
  // a = [O_pt ⊠ O(-1)] : pt -> P^1 followed by b = [O ⊠ O] : P^1 -> pt
  // pairs O(-1) with O over the middle P^1, and chi(P^1, O(-1)) = 0.
  const KMCorrespondence a = km_external(KClass::structure_sheaf(pt),
                                         line_on(P1, {-1}));
  const KMCorrespondence b = km_external(KClass::structure_sheaf(P1),
                                         KClass::structure_sheaf(pt));
  CHECK(compose_km(a, b).cls.is_zero());
  // Replacing O(-1) by O pairs to chi(O) = 1 and survives.
  const KMCorrespondence a1 = km_external(KClass::structure_sheaf(pt),
                                          KClass::structure_sheaf(P1));
  CHECK(compose_km(a1, b).cls == KClass::structure_sheaf(pt));
}

TEST_CASE("correspondence composition is associative") {
  // P^1 -> P^1 -> P^2 -> P^1 with mixed line classes.
  const KMCorrespondence a = line_corr(1, 1, 1, -1);
  const KMCorrespondence b = line_corr(1, 0, 2, 2);
  const KMCorrespondence c = line_corr(2, -1, 1, 1);
  const KMCorrespondence left = compose_km(compose_km(a, b), c);
  const KMCorrespondence right = compose_km(a, compose_km(b, c));
  CHECK(left.cls == right.cls);
  // A second braid through the diagonal of P^2.
  const KMCorrespondence d = diagonal_k_class(2);
  CHECK(compose_km(compose_km(b, d), c).cls ==
        compose_km(b, compose_km(d, c)).cls);
}

TEST_CASE("correspondence preconditions") {
  const VarietyPtr pt = Variety::point();
  const VarietyPtr P1 = Variety::projective_space(1);
  const VarietyPtr P2 = Variety::projective_space(2);
  CHECK_THROWS_AS(diagonal_k_class(4), PreconditionError);
  CHECK_THROWS_AS(diagonal_k_class(-1), PreconditionError);
  // Mismatched middle models do not compose.
  const KMCorrespondence a = line_corr(1, 0, 1, 0);
  const KMCorrespondence b = line_corr(2, 0, 1, 0);
  CHECK_THROWS_AS(compose_km(a, b), PreconditionError);
  // The class must live on source×target.
  CHECK_THROWS_AS(make_km(P1, P2, KClass::structure_sheaf(P1)),
                  PreconditionError);
  // Bundle models are rejected as ends.
  const VarietyPtr F = Variety::projective_bundle(P1, {{2}});
  CHECK_THROWS_AS(make_km(F, F, KClass::structure_sheaf(product_model(F, F))),
                  PreconditionError);
  (void)pt;
}

TEST_CASE("diagonal classes of product models") {
  // P^k diagonals match the closed form sum h1^i h2^j.
  for (int k = 0; k <= 3; ++k) {
    CHECK(diagonal_chow_of(Variety::projective_space(k)) == diagonal_class(k));
  }
  // On (P^1×P^1)^2 the diagonal is the product of the per-factor diagonals.
  const VarietyPtr X = Variety::projective_product({1, 1});
  const ChowClass d = diagonal_chow_of(X);
  const VarietyPtr XX = product_model(X, X);
  const ChowClass h0 = hyperplane(XX, 0), h1 = hyperplane(XX, 1);
  const ChowClass h2 = hyperplane(XX, 2), h3 = hyperplane(XX, 3);
  CHECK(d == (h0 + h2) * (h1 + h3));
  // Pairing against a point class integrates to 1.
  CHECK(degree0(d * hpow(h0, 1) * hpow(h1, 1)) == Rat(1));
}

TEST_CASE("graded morphisms: purity validation and identity") {
  const VarietyPtr P1 = Variety::projective_space(1);
  const VarietyPtr P2 = Variety::projective_space(2);
  const VarietyPtr XY = product_model(P1, P2);
  const ChowClass h1 = hyperplane(XY, 0), h2 = hyperplane(XY, 1);

  // Component 0 of a morphism into P^2 must be pure of codimension 2.
  std::map<int, ChowClass> good{{0, h1 * h2}, {-1, h2}};
  const OrbitMorphism f = make_orbit(P1, P2, good);
  CHECK(f.components.size() == 2);

  std::map<int, ChowClass> mixed{{0, h1 * h2 + h2}};
  CHECK_THROWS_AS(make_orbit(P1, P2, mixed), PreconditionError);
  std::map<int, ChowClass> negative{{-3, ChowClass::one(XY)}};
  CHECK_THROWS_AS(make_orbit(P1, P2, negative), PreconditionError);
  std::map<int, ChowClass> wrong_model{{0, hyperplane(P2, 0)}};
  CHECK_THROWS_AS(make_orbit(P1, P2, wrong_model), PreconditionError);

  // Zero components are dropped.
  std::map<int, ChowClass> with_zero{{0, h1 * h2}, {1, ChowClass::zero(XY)}};
  CHECK(make_orbit(P1, P2, with_zero).components.size() == 1);

  const OrbitMorphism id1 = orbit_identity(P1);
  CHECK(id1.components.size() == 1);
  CHECK(id1.components.at(0) == diagonal_class(1));
}

TEST_CASE("graded composition: units, degrees, associativity") {
  const VarietyPtr P1 = Variety::projective_space(1);
  const VarietyPtr P2 = Variety::projective_space(2);
  const VarietyPtr A = product_model(P1, P2);

  // A two-component morphism P^1 -> P^2.
  const ChowClass a1 = hyperplane(A, 0), a2 = hyperplane(A, 1);
  const OrbitMorphism f = make_orbit(
      P1, P2,
      {{-1, a1 + a2 * Rat(2)}, {1, a1 * hpow(a2, 2) * Rat(make_rat(1, 3))}});

  SUBCASE("identity is a two-sided unit") {
    CHECK(orbit_equal(compose_orbit(orbit_identity(P1), f), f));
    CHECK(orbit_equal(compose_orbit(f, orbit_identity(P2)), f));
  }

  SUBCASE("single components compose by adding degrees") {
    const VarietyPtr B = product_model(P2, P1);
    const OrbitMorphism g = make_orbit(
        P2, P1, {{2, hpow(hyperplane(B, 0), 2) * hyperplane(B, 1)}});
    const OrbitMorphism h = make_orbit(
        P1, P2, {{-1, hyperplane(A, 0) + hyperplane(A, 1)}});
    const OrbitMorphism gh = compose_orbit(h, g);
    REQUIRE(gh.components.size() == 1);
    CHECK(gh.components.begin()->first == 1);
  }

  SUBCASE("associativity over P^1, P^1, P^2") {
    const VarietyPtr C = product_model(P1, P1);
    const ChowClass c1 = hyperplane(C, 0), c2 = hyperplane(C, 1);
    const OrbitMorphism u =
        make_orbit(P1, P1, {{0, c1 + c2}, {1, c1 * c2 * Rat(make_rat(-1, 2))}});
    const VarietyPtr D = product_model(P2, P2);
    const OrbitMorphism w = make_orbit(
        P2, P2,
        {{0, diagonal_chow_of(P2)},
         {-2, ChowClass::one(D)},
         {2, hpow(hyperplane(D, 0), 2) * hpow(hyperplane(D, 1), 2)}});
    const OrbitMorphism left = compose_orbit(compose_orbit(u, f), w);
    const OrbitMorphism right = compose_orbit(u, compose_orbit(f, w));
    CHECK(orbit_equal(left, right));
    CHECK(!left.components.empty());
  }

  SUBCASE("mismatched middle models are rejected") {
    CHECK_THROWS_AS(compose_orbit(f, f), PreconditionError);
  }
}

TEST_CASE("character functor on simple correspondences") {
  const VarietyPtr pt = Variety::point();
  const VarietyPtr P2 = Variety::projective_space(2);

  SUBCASE("over a point it reads off the rank") {
    const KMCorrespondence a =
        make_km(pt, pt, KClass::structure_sheaf(pt) * Int(3));
    const OrbitMorphism m = phi(a, 0);
    REQUIRE(m.components.size() == 1);
    CHECK(m.components.at(0) == ChowClass::scalar(pt, Rat(3)));
  }

  SUBCASE("[O ⊠ O(1)] : pt -> P^2 lists ch(O(1))·Td(T)") {
    const KMCorrespondence a = km_external(
        KClass::structure_sheaf(pt), line_on(P2, {1}));
    const OrbitMorphism m = phi(a, 6);
    const ChowClass h = hyperplane(P2, 0);
    // Codim 0 component is the rank, stored at index -dim = -2.
    CHECK(m.components.at(-2) == ChowClass::one(P2));
    // ch(O(1))·Td(T_{P^2}) in codim 1: h + (3/2)h.
    CHECK(m.components.at(-1) == h * Rat(make_rat(5, 2)));
    // Top component integrates to chi(O(1)) = 3.
    CHECK(m.components.at(0) == hpow(h, 2) * Rat(3));
    CHECK(degree0(m.components.at(0)) == Rat(3));
  }

  SUBCASE("level hypothesis is enforced") {
    const KMCorrespondence a = km_external(
        KClass::structure_sheaf(pt), line_on(P2, {1}));
    CHECK_THROWS_AS(phi(a, 5), PreconditionError);
    CHECK_THROWS_AS(phi(a, -1), PreconditionError);
    CHECK(phi_required_level(pt, P2) == 6);
    CHECK(phi_required_level(pt, pt) == 0);
  }
}

TEST_CASE("character functor preserves identities") {
  for (int n = 0; n <= 2; ++n) {
    const VerificationReport rep =
        verify_phi_identity(n, 3 * n, "idn" + std::to_string(n));
    CHECK(rep.pass);
    CHECK(rep.rational_equal);
    for (const auto& line : rep.degrees) CHECK(line.equal);
  }
  // Component content for n = 1: exactly one component, the diagonal.
  const OrbitMorphism m = phi(diagonal_k_class(1), 3);
  REQUIRE(m.components.size() == 1);
  CHECK(m.components.at(0) == diagonal_class(1));
  CHECK_THROWS_AS(verify_phi_identity(3, 9, "id3"), PreconditionError);
}

TEST_CASE("character-image denominators stay within the level bound") {
  const VarietyPtr P1 = Variety::projective_space(1);
  const VarietyPtr P2 = Variety::projective_space(2);
  const KMCorrespondence a =
      km_external(line_on(P2, {-2}), line_on(P1, {3}, Int(-4)));
  const VerificationReport rep = verify_phi_denominators(a, 6, "den");
  CHECK(rep.pass);
  CHECK(rep.lhs_integral);  // the literal divisibility by (l+1)! also holds
  CHECK(!rep.degrees.empty());
  for (const auto& line : rep.degrees) {
    CHECK(line.equal);
    CHECK(line.lhs_integral);
  }
}

TEST_CASE("character functor is monoidal for composition") {
  const VarietyPtr pt = Variety::point();
  const VarietyPtr P1 = Variety::projective_space(1);
  const VarietyPtr P2 = Variety::projective_space(2);

  SUBCASE("pt -> P^1 -> pt") {
    const KMCorrespondence a =
        km_external(KClass::structure_sheaf(pt), line_on(P1, {1}));
    const KMCorrespondence b =
        km_external(line_on(P1, {1}), KClass::structure_sheaf(pt));
    const VerificationReport rep = verify_phi_functoriality(a, b, 6, "ptP1pt");
    CHECK(rep.pass);
  }

  SUBCASE("P^1 -> P^1 -> P^2") {
    const KMCorrespondence a = line_corr(1, 1, 1, -1);
    const KMCorrespondence b = line_corr(1, 0, 2, 2);
    const VerificationReport rep = verify_phi_functoriality(a, b, 6, "112");
    CHECK(rep.pass);
    for (const auto& line : rep.degrees) CHECK(line.equal);
  }

  SUBCASE("P^2 -> P^2 -> P^1 through the diagonal") {
    const KMCorrespondence d = diagonal_k_class(2);
    const KMCorrespondence b = line_corr(2, -1, 1, 1);
    const VerificationReport rep = verify_phi_functoriality(d, b, 6, "d-2-1");
    CHECK(rep.pass);
  }

  SUBCASE("sums of line classes") {
    const VarietyPtr X = product_model(P1, P2);
    const KMCorrespondence a = make_km(
        P1, P2,
        KClass::line(X, LineData{{1, -1}, 0}) * Int(2) -
            KClass::line(X, LineData{{0, 1}, 0}));
    const KMCorrespondence b = line_corr(2, 1, 2, -2);
    const VerificationReport rep = verify_phi_functoriality(a, b, 6, "sum");
    CHECK(rep.pass);
  }

  SUBCASE("level and shape preconditions") {
    const KMCorrespondence a = line_corr(1, 0, 2, 0);
    const KMCorrespondence b = line_corr(2, 0, 1, 0);
    CHECK_THROWS_AS(verify_phi_functoriality(a, b, 5, "low"),
                    PreconditionError);
    const KMCorrespondence c = line_corr(1, 0, 1, 0);
    CHECK_THROWS_AS(verify_phi_functoriality(a, c, 6, "shape"),
                    PreconditionError);
    const KMCorrespondence big = line_corr(3, 0, 1, 0);
    const KMCorrespondence after = line_corr(1, 0, 1, 0);
    CHECK_THROWS_AS(verify_phi_functoriality(big, after, 9, "dim"),
                    PreconditionError);
  }
}
