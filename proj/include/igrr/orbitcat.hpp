#pragma once

// K-theoretic correspondences between desk-scale models, the graded
// category of Chow correspondences with twist bookkeeping, and the
// character functor between them — with verification of identity
// preservation, functoriality, and coefficient-denominator bounds.

#include <map>
#include <string>

#include "igrr/chow.hpp"
#include "igrr/ktheory.hpp"
#include "igrr/report.hpp"

namespace igrr {

// A K-theory class on source×target, read as a morphism source -> target.
// Both ends must be product models.
struct KMCorrespondence {
  VarietyPtr source, target;
  KClass cls;
};

KMCorrespondence make_km(const VarietyPtr& src, const VarietyPtr& dst, KClass cls);
// The external product [x ⊠ y] as a correspondence src -> dst.
KMCorrespondence km_external(const KClass& x, const KClass& y);
// Identity correspondence of P^n (n <= 3): the resolved diagonal class.
KMCorrespondence diagonal_k_class(int n);
// p13_*(p12^* a · p23^* b): composition X -> Y -> Z over the middle factor.
KMCorrespondence compose_km(const KMCorrespondence& a, const KMCorrespondence& b);

// Graded correspondence morphism: finitely many components, component i a
// class on source×target of pure codimension (dim target + i).
struct OrbitMorphism {
  VarietyPtr source, target;
  std::map<int, ChowClass> components;
};

// Validates purity and drops zero components.
OrbitMorphism make_orbit(const VarietyPtr& src, const VarietyPtr& dst,
                         std::map<int, ChowClass> components);
// Class of the diagonal X ⊂ X×X of a product model.
ChowClass diagonal_chow_of(const VarietyPtr& X);
// Identity morphism: single component 0 = [Δ_X].
OrbitMorphism orbit_identity(const VarietyPtr& X);
bool orbit_equal(const OrbitMorphism& f, const OrbitMorphism& g);
// (g∘f)_l = sum_r (g_{l-r}, twisted by r) ∘ f_r, each summand composed as
// Chow correspondences by pull-multiply-push over the middle factor.
OrbitMorphism compose_orbit(const OrbitMorphism& f, const OrbitMorphism& g);

// Level hypothesis for the character functor between X and Y: twice the
// larger dimension (graded pieces live on the product) plus the larger
// dimension again as the linear-embedding bound.
int phi_required_level(const VarietyPtr& X, const VarietyPtr& Y);

// Φ(a) = ch(a)·p2^*Td(T_target), split into components by codimension
// (component i sits in codimension dim target + i).  Requires l at least
// the level hypothesis; l also sets the denominator bound checked by
// verify_phi_denominators.
OrbitMorphism phi(const KMCorrespondence& a, int l);

// FAIL diagnostic when any coefficient of any component of Φ(a) falls
// outside Z[1/(l+1)!].  Each line also records (in lhs_integral) the
// stronger literal fact that the component's denominators divide (l+1)!.
VerificationReport verify_phi_denominators(const KMCorrespondence& a, int l,
                                           const std::string& key);

// Φ of the diagonal correspondence of P^n equals the identity morphism
// (stated for n <= 2).
VerificationReport verify_phi_identity(int n, int l, const std::string& key);

// Φ(compose_km(a, b)) = compose_orbit(Φ(a), Φ(b)) component-wise, for
// a: X -> Y, b: Y -> Z with all three models of dimension <= 2.
VerificationReport verify_phi_functoriality(const KMCorrespondence& a,
                                            const KMCorrespondence& b, int l,
                                            const std::string& key);

}  // namespace igrr
