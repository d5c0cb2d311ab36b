#pragma once

// Chow rings with exact integral grading by codimension, for the supported
// variety models:
//   - finite products of projective spaces (the empty product is a point),
//   - projective completions P_X(N ⊕ 1) of split bundles N over such
//     products, presented by the rank-(r+1) relation in the class
//     z = c_1(O_P(1)).
// Models are canonical: factories return the same shared object for equal
// parameters, so classes from independent call sites are comparable.

#include <memory>
#include <string>
#include <vector>

#include "igrr/poly.hpp"

namespace igrr {

// A line bundle on a model: one twist per base factor, plus a power of
// O_P(1) on bundle models.  c_1 = sum_j twists[j]·h_j + fiber·z.
struct LineData {
  std::vector<int> twists;
  int fiber = 0;

  bool operator==(const LineData&) const = default;
};

// Formal integer combination of line bundles — rich enough for every
// tangent class and test bundle in the supported universe.
struct BundleData {
  std::vector<std::pair<int, LineData>> lines;  // (multiplicity, line)

  int rank() const {
    int r = 0;
    for (const auto& [m, l] : lines) r += m;
    return r;
  }
};

class Variety;
using VarietyPtr = std::shared_ptr<const Variety>;

class Variety {
 public:
  static VarietyPtr projective_product(const std::vector<int>& dims);
  static VarietyPtr projective_space(int n) { return projective_product({n}); }
  static VarietyPtr point() { return projective_product({}); }
  // P_base(N ⊕ 1), N = ⊕_s O(twists[s]); each twist has one entry per base
  // factor.  The base must be a product model.
  static VarietyPtr projective_bundle(const VarietyPtr& base,
                                      const std::vector<std::vector<int>>& twists);

  bool is_bundle() const { return bundle_; }
  const std::vector<int>& factor_dims() const { return dims_; }
  size_t factor_count() const { return dims_.size(); }
  const std::vector<std::vector<int>>& bundle_twists() const { return twists_; }
  const VarietyPtr& base() const { return base_; }  // null unless bundle
  int bundle_rank() const { return static_cast<int>(twists_.size()); }

  int dim() const { return dim_; }
  // Dimension of a standard ambient projective space (Segre / generic
  // bound); used for embedding-hypothesis validation only.
  int embed_dim() const;
  const RingPtr& ring() const { return ring_; }
  size_t var_count() const { return ring_->vars.size(); }

  // Tangent class as a virtual sum of line bundles (Euler sequences).
  BundleData tangent() const;

  std::string describe() const;

 private:
  Variety() = default;
  friend VarietyPtr make_product_model(const std::vector<int>&);
  friend VarietyPtr make_bundle_model(const VarietyPtr&,
                                      const std::vector<std::vector<int>>&);

  std::vector<int> dims_;
  bool bundle_ = false;
  std::vector<std::vector<int>> twists_;
  VarietyPtr base_;
  RingPtr ring_;
  int dim_ = 0;
};

class ChowClass {
 public:
  ChowClass() = default;
  ChowClass(VarietyPtr X, Poly p);
  static ChowClass zero(const VarietyPtr& X);
  static ChowClass one(const VarietyPtr& X);
  static ChowClass scalar(const VarietyPtr& X, const Rat& c);

  const VarietyPtr& variety() const { return X_; }
  const Poly& poly() const { return p_; }

  bool is_zero() const { return p_.is_zero(); }
  bool is_integral() const { return p_.is_integral(); }
  ChowClass component(int codim) const { return {X_, p_.component(codim)}; }
  int max_codim() const { return p_.max_degree(); }

  ChowClass operator-() const { return {X_, -p_}; }
  ChowClass& operator+=(const ChowClass& o);
  ChowClass& operator-=(const ChowClass& o);
  friend ChowClass operator+(ChowClass a, const ChowClass& b) { return a += b; }
  friend ChowClass operator-(ChowClass a, const ChowClass& b) { return a -= b; }
  friend ChowClass operator*(const ChowClass& a, const ChowClass& b);
  friend ChowClass operator*(ChowClass a, const Rat& c) {
    a.p_ *= c;
    return a;
  }
  friend ChowClass operator*(const Rat& c, ChowClass a) {
    a.p_ *= c;
    return a;
  }
  bool operator==(const ChowClass& o) const;
  bool operator!=(const ChowClass& o) const { return !(*this == o); }

  std::string str() const { return p_.str(); }

 private:
  VarietyPtr X_;
  Poly p_;
};

// Generators.
ChowClass hyperplane(const VarietyPtr& X, size_t factor);
ChowClass zeta(const VarietyPtr& X);  // c_1(O_P(1)) on bundle models
ChowClass first_chern(const VarietyPtr& X, const LineData& L);

// Characteristic classes of bundle data (exact; negative multiplicities use
// the inverse series, which exists in the truncated ring).
ChowClass chern_character_of(const VarietyPtr& X, const BundleData& E);
ChowClass todd_of(const VarietyPtr& X, const BundleData& E);
ChowClass total_chern_of(const VarietyPtr& X, const BundleData& E);

// Universal quotient bundle Q = p^*(N⊕1)/O_P(-1) on a bundle model:
// c(Q) = p^*c(N⊕1)/(1 - z); its top class c_rank(N)(Q) realizes the
// zero-section self-intersection.
ChowClass quotient_total_chern(const VarietyPtr& P);
ChowClass quotient_top_chern(const VarietyPtr& P);

// Coefficient of the point class (exact rational "number of points").
Rat degree0(const ChowClass& x);
ChowClass point_class(const VarietyPtr& X);
// Class of the diagonal P^k ⊂ P^k × P^k: sum_{i+j=k} h1^i h2^j.
ChowClass diagonal_class(int k);

// Products of product models (canonical, associative via dims concat).
VarietyPtr product_model(const VarietyPtr& X, const VarietyPtr& Y);
ChowClass external_product(const ChowClass& x, const ChowClass& y);

// Projection XY -> X between product models; sel[i] names the factor of XY
// carrying X's i-th factor, the complementary factors are integrated out.
ChowClass pullback_projection(const ChowClass& x, const VarietyPtr& XY,
                              const std::vector<size_t>& sel);
ChowClass pushforward_projection(const ChowClass& xy, const VarietyPtr& X,
                                 const std::vector<size_t>& sel);

// Structure maps of a bundle model P = P_X(N⊕1).
ChowClass pullback_bundle(const ChowClass& x, const VarietyPtr& P);
ChowClass pushforward_bundle(const ChowClass& y);       // to the base
ChowClass pullback_zero_section(const ChowClass& y);    // z -> 0
ChowClass pushforward_zero_section(const ChowClass& x, const VarietyPtr& P);

// Pushforward along a product of per-factor linear maps between product
// models with equally many factors: factor j is either a linear embedding
// P^{k_j} ⊂ P^{n_j} (k_j <= n_j, class shift h^i -> h^{i+n_j-k_j}) or a
// collapse to a point factor (n_j == 0).
ChowClass pushforward_product_linear(const ChowClass& x, const VarietyPtr& T);

// Helper: indices begin..begin+count-1.
std::vector<size_t> factor_range(size_t begin, size_t count);

}  // namespace igrr
