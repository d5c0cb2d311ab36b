#pragma once

// Grothendieck groups of the supported models with exact integer
// coefficients, in the line-bundle window basis:
//   - product models: [O(t_1,..,t_f)] with 0 <= t_j <= n_j,
//   - bundle models:  additionally a fiber power [O_P(c)], 0 <= c <= rank N,
// reduced by the Koszul presentation of each factor and of the relative
// tautological relation.  Every class is kept in reduced canonical form, so
// equality is coefficient-wise.

#include <map>
#include <string>
#include <vector>

#include "igrr/chow.hpp"

namespace igrr {

class KClass {
 public:
  // Per-factor twist, then the fiber power on bundle models.
  using Key = std::vector<int>;

  KClass() = default;
  static KClass zero(const VarietyPtr& X);
  static KClass structure_sheaf(const VarietyPtr& X);  // [O]
  static KClass line(const VarietyPtr& X, const LineData& L);
  static KClass of_bundle(const VarietyPtr& X, const BundleData& E);
  static KClass from_terms(const VarietyPtr& X, const std::map<Key, Int>& raw);

  const VarietyPtr& variety() const { return X_; }
  const std::map<Key, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Int rank() const;

  KClass operator-() const;
  KClass& operator+=(const KClass& o);
  KClass& operator-=(const KClass& o);
  friend KClass operator+(KClass a, const KClass& b) { return a += b; }
  friend KClass operator-(KClass a, const KClass& b) { return a -= b; }
  friend KClass operator*(const KClass& a, const KClass& b);  // tensor product
  friend KClass operator*(KClass a, const Int& c);
  friend KClass operator*(const Int& c, KClass a) { return std::move(a) * c; }
  bool operator==(const KClass& o) const;
  bool operator!=(const KClass& o) const { return !(*this == o); }

  std::string str() const;

 private:
  explicit KClass(VarietyPtr X) : X_(std::move(X)) {}

  VarietyPtr X_;
  std::map<Key, Int> terms_;
};

// chi(P^n, O(k)) = binom(k+n, n), exact for every integer k.
Int euler_characteristic(int n, int k);
// chi of a class on a product model (pushforward to the point).
Int euler_characteristic(const KClass& x);

KClass external_product_k(const KClass& x, const KClass& y);

// Projection XY -> X between product models (sel as in the Chow maps).
KClass pullback_projection_k(const KClass& x, const VarietyPtr& XY,
                             const std::vector<size_t>& sel);
KClass pushforward_projection_k(const KClass& xy, const VarietyPtr& X,
                                const std::vector<size_t>& sel);

// Structure maps of a bundle model P = P_X(N⊕1).
KClass pullback_bundle_k(const KClass& x, const VarietyPtr& P);
// Zero-section pushforward via the Koszul resolution of the section of the
// universal quotient bundle: f_* x = (sum_p (-1)^p [Λ^p Q^dual]) · p^* x.
KClass pushforward_zero_section_k(const KClass& x, const VarietyPtr& P);

// [O of a linear P^k ⊂ P^n] = sum_j (-1)^j binom(n-k, j) [O(-j)].
KClass structure_sheaf_linear(int k, int n);

// Pushforward along a product of per-factor linear maps (embedding when
// k_j <= n_j, collapse to a point factor when n_j == 0), mirroring
// pushforward_product_linear on the Chow side.
KClass pushforward_product_linear_k(const KClass& x, const VarietyPtr& T);

// Structure sheaf of the diagonal P^n ⊂ P^n × P^n via the tautological
// resolution: sum_i (-1)^i [O(-i)] ⊠ [Ω^i(i)].
KClass diagonal_structure_sheaf(int n);

// Canonical identification P_pt(O^rho ⊕ 1) ≅ P^rho on classes.
KClass reinterpret_trivial_bundle_over_point(const KClass& x);

// Chern character, landing in the rational Chow ring of the same model.
ChowClass chern_character_map(const KClass& x);

}  // namespace igrr
