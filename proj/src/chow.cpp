#include "igrr/chow.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "igrr/symring.hpp"

namespace igrr {

namespace {

std::string factor_var_name(size_t j, size_t nfactors) {
  if (nfactors == 1) return "h";
  return "h" + std::to_string(j + 1);
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw PreconditionError(msg);
}

// Elementary symmetric classes e_1..e_r of a list of ring elements.
std::vector<Poly> elementary_of_forms(const std::vector<Poly>& forms, const RingPtr& ring) {
  std::vector<Poly> e(forms.size() + 1, Poly::zero(ring));
  e[0] = Poly::constant(ring, 1);
  size_t used = 0;
  for (const Poly& f : forms) {
    ++used;
    for (size_t i = std::min(used, forms.size()); i >= 1; --i) {
      e[i] += e[i - 1] * f;
    }
  }
  return e;
}

Poly todd_univariate(const Poly& c1) {
  const RingPtr& ring = c1.ring();
  Poly acc = Poly::zero(ring);
  Poly power = Poly::constant(ring, 1);
  for (int n = 0; n <= ring->trunc; ++n) {
    acc += power * todd_coefficient(static_cast<unsigned>(n));
    power = power * c1;
    if (power.is_zero()) break;
  }
  return acc;
}

Poly power_with_sign(const Poly& base, int mult) {
  if (mult >= 0) return base.pow(static_cast<unsigned>(mult));
  return base.inverse().pow(static_cast<unsigned>(-mult));
}

}  // namespace

// ---------------------------------------------------------------------------
// Variety factories (canonical caches)

VarietyPtr make_product_model(const std::vector<int>& dims);
VarietyPtr make_bundle_model(const VarietyPtr& base,
                             const std::vector<std::vector<int>>& twists);

VarietyPtr make_product_model(const std::vector<int>& dims) {
  static std::map<std::vector<int>, VarietyPtr> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(dims);
  if (it != cache.end()) return it->second;

  for (int n : dims) require(n >= 0, "projective factor dimension must be nonnegative");

  std::shared_ptr<Variety> v(new Variety());
  v->dims_ = dims;
  int dim = 0;
  std::vector<RingSpec::Var> vars;
  for (size_t j = 0; j < dims.size(); ++j) {
    vars.push_back({factor_var_name(j, dims.size()), 1, dims[j] + 1, {}});
    dim += dims[j];
  }
  v->dim_ = dim;
  v->ring_ = make_ring(std::move(vars), dim);
  VarietyPtr out = v;
  cache.emplace(dims, out);
  return out;
}

VarietyPtr make_bundle_model(const VarietyPtr& base,
                             const std::vector<std::vector<int>>& twists) {
  require(base != nullptr, "bundle model needs a base");
  require(!base->is_bundle(), "bundle models are built over product models");
  for (const auto& t : twists) {
    require(t.size() == base->factor_count(),
            "bundle twist vectors must have one entry per base factor");
  }

  using Key = std::pair<std::vector<int>, std::vector<std::vector<int>>>;
  static std::map<Key, VarietyPtr> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  Key key{base->factor_dims(), twists};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const int rho = static_cast<int>(twists.size());
  const size_t nbase = base->factor_count();

  // Chern classes c_i(N) in the base ring, N = ⊕ O(twists[s]).
  std::vector<Poly> forms;
  for (const auto& t : twists) {
    TermMap tm;
    for (size_t j = 0; j < nbase; ++j) {
      if (t[j] == 0) continue;
      Expo e(nbase, 0);
      e[j] = 1;
      tm[e] = Rat(t[j]);
    }
    forms.push_back(Poly::from_terms(base->ring(), std::move(tm)));
  }
  std::vector<Poly> cN = elementary_of_forms(forms, base->ring());

  // Relation z^{rho+1} = -sum_{i=1}^{rho} c_i(N) z^{rho+1-i}.
  TermMap rewrite;
  for (int i = 1; i <= rho; ++i) {
    for (const auto& [e, c] : cN[i].terms()) {
      Expo ez = e;
      ez.push_back(rho + 1 - i);
      rewrite[ez] = -c;
    }
  }

  std::vector<RingSpec::Var> vars;
  for (size_t j = 0; j < nbase; ++j) {
    vars.push_back({factor_var_name(j, nbase), 1, base->factor_dims()[j] + 1, {}});
  }
  vars.push_back({"z", 1, rho + 1, std::move(rewrite)});

  std::shared_ptr<Variety> v(new Variety());
  v->dims_ = base->factor_dims();
  v->bundle_ = true;
  v->twists_ = twists;
  v->base_ = base;
  v->dim_ = base->dim() + rho;
  v->ring_ = make_ring(std::move(vars), v->dim_);
  VarietyPtr out = v;
  cache.emplace(std::move(key), out);
  return out;
}

VarietyPtr Variety::projective_product(const std::vector<int>& dims) {
  return make_product_model(dims);
}

VarietyPtr Variety::projective_bundle(const VarietyPtr& base,
                                      const std::vector<std::vector<int>>& twists) {
  return make_bundle_model(base, twists);
}

int Variety::embed_dim() const {
  if (bundle_) return 2 * dim_ + 1;  // generic projection bound
  int prod = 1;  // Segre embedding of the product
  for (int n : dims_) prod *= n + 1;
  return prod - 1;
}

BundleData Variety::tangent() const {
  BundleData T;
  const size_t f = dims_.size();
  const std::vector<int> zero_twist(f, 0);
  for (size_t j = 0; j < f; ++j) {
    LineData L;
    L.twists = zero_twist;
    L.twists[j] = 1;
    T.lines.push_back({dims_[j] + 1, L});
  }
  if (f > 0) T.lines.push_back({-static_cast<int>(f), LineData{zero_twist, 0}});
  if (bundle_) {
    // Relative Euler sequence: T_{P/X} = Q ⊗ O_P(1)^... presented as
    // sum_s O_P(1)⊗p^*O(t_s) + O_P(1) - O.
    for (const auto& t : twists_) T.lines.push_back({1, LineData{t, 1}});
    T.lines.push_back({1, LineData{zero_twist, 1}});
    T.lines.push_back({-1, LineData{zero_twist, 0}});
  }
  return T;
}

std::string Variety::describe() const {
  std::ostringstream os;
  if (bundle_) {
    os << "P(";
    for (const auto& t : twists_) {
      if (t.empty()) {
        os << "O";
      } else {
        os << "O(";
        for (size_t j = 0; j < t.size(); ++j) os << (j ? "," : "") << t[j];
        os << ")";
      }
      os << "⊕";
    }
    os << "1)/";
  }
  if (dims_.empty()) {
    os << "pt";
  } else {
    for (size_t j = 0; j < dims_.size(); ++j) os << (j ? "x" : "") << "P" << dims_[j];
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// ChowClass

ChowClass::ChowClass(VarietyPtr X, Poly p) : X_(std::move(X)), p_(std::move(p)) {
  require(X_ != nullptr, "class needs a variety");
  require(p_.ring() == X_->ring(), "class polynomial must live in the variety's ring");
}

ChowClass ChowClass::zero(const VarietyPtr& X) { return {X, Poly::zero(X->ring())}; }
ChowClass ChowClass::one(const VarietyPtr& X) { return {X, Poly::constant(X->ring(), 1)}; }
ChowClass ChowClass::scalar(const VarietyPtr& X, const Rat& c) {
  return {X, Poly::constant(X->ring(), c)};
}

namespace {
void require_same_variety(const ChowClass& a, const ChowClass& b) {
  require(a.variety() != nullptr && b.variety() != nullptr, "uninitialized class");
  require(a.variety() == b.variety(), "classes live on different varieties");
}
}  // namespace

ChowClass& ChowClass::operator+=(const ChowClass& o) {
  require_same_variety(*this, o);
  p_ += o.p_;
  return *this;
}

ChowClass& ChowClass::operator-=(const ChowClass& o) {
  require_same_variety(*this, o);
  p_ -= o.p_;
  return *this;
}

ChowClass operator*(const ChowClass& a, const ChowClass& b) {
  require_same_variety(a, b);
  return {a.X_, a.p_ * b.p_};
}

bool ChowClass::operator==(const ChowClass& o) const {
  require_same_variety(*this, o);
  return p_ == o.p_;
}

// ---------------------------------------------------------------------------
// Generators and characteristic classes

ChowClass hyperplane(const VarietyPtr& X, size_t factor) {
  require(factor < X->factor_count(), "no such factor");
  return {X, Poly::variable(X->ring(), factor)};
}

ChowClass zeta(const VarietyPtr& X) {
  require(X->is_bundle(), "zeta lives on bundle models");
  return {X, Poly::variable(X->ring(), X->factor_count())};
}

ChowClass first_chern(const VarietyPtr& X, const LineData& L) {
  require(L.twists.size() == X->factor_count(),
          "line bundle twists must have one entry per factor");
  require(L.fiber == 0 || X->is_bundle(), "fiber twist needs a bundle model");
  Poly acc = Poly::zero(X->ring());
  for (size_t j = 0; j < L.twists.size(); ++j) {
    if (L.twists[j] != 0) acc += Poly::variable(X->ring(), j) * Rat(L.twists[j]);
  }
  if (L.fiber != 0) acc += Poly::variable(X->ring(), X->factor_count()) * Rat(L.fiber);
  return {X, acc};
}

ChowClass chern_character_of(const VarietyPtr& X, const BundleData& E) {
  Poly acc = Poly::zero(X->ring());
  for (const auto& [mult, L] : E.lines) {
    acc += exp_full(first_chern(X, L).poly()) * Rat(mult);
  }
  return {X, acc};
}

ChowClass todd_of(const VarietyPtr& X, const BundleData& E) {
  Poly acc = Poly::constant(X->ring(), 1);
  for (const auto& [mult, L] : E.lines) {
    acc *= power_with_sign(todd_univariate(first_chern(X, L).poly()), mult);
  }
  return {X, acc};
}

ChowClass total_chern_of(const VarietyPtr& X, const BundleData& E) {
  Poly acc = Poly::constant(X->ring(), 1);
  const Poly one = Poly::constant(X->ring(), 1);
  for (const auto& [mult, L] : E.lines) {
    acc *= power_with_sign(one + first_chern(X, L).poly(), mult);
  }
  return {X, acc};
}

ChowClass quotient_total_chern(const VarietyPtr& P) {
  require(P->is_bundle(), "quotient bundle lives on bundle models");
  const Poly one = Poly::constant(P->ring(), 1);
  Poly num = one;
  for (const auto& t : P->bundle_twists()) {
    num *= one + first_chern(P, LineData{t, 0}).poly();
  }
  Poly z = Poly::variable(P->ring(), P->factor_count());
  return {P, num * (one - z).inverse()};
}

ChowClass quotient_top_chern(const VarietyPtr& P) {
  return quotient_total_chern(P).component(P->bundle_rank());
}

// ---------------------------------------------------------------------------
// Degrees, points, diagonals

ChowClass point_class(const VarietyPtr& X) {
  Expo e(X->var_count(), 0);
  for (size_t j = 0; j < X->factor_count(); ++j) e[j] = X->factor_dims()[j];
  if (X->is_bundle()) e.back() = X->bundle_rank();
  return {X, Poly::from_terms(X->ring(), {{e, Rat(1)}})};
}

Rat degree0(const ChowClass& x) {
  const VarietyPtr& X = x.variety();
  Expo e(X->var_count(), 0);
  for (size_t j = 0; j < X->factor_count(); ++j) e[j] = X->factor_dims()[j];
  if (X->is_bundle()) e.back() = X->bundle_rank();
  return x.poly().coeff(e);
}

ChowClass diagonal_class(int k) {
  VarietyPtr XX = product_model(Variety::projective_space(k), Variety::projective_space(k));
  TermMap tm;
  for (int i = 0; i <= k; ++i) tm[{i, k - i}] = Rat(1);
  return {XX, Poly::from_terms(XX->ring(), std::move(tm))};
}

// ---------------------------------------------------------------------------
// Products of models

VarietyPtr product_model(const VarietyPtr& X, const VarietyPtr& Y) {
  require(!X->is_bundle() && !Y->is_bundle(), "products are formed from product models");
  std::vector<int> dims = X->factor_dims();
  dims.insert(dims.end(), Y->factor_dims().begin(), Y->factor_dims().end());
  return Variety::projective_product(dims);
}

ChowClass external_product(const ChowClass& x, const ChowClass& y) {
  VarietyPtr XY = product_model(x.variety(), y.variety());
  TermMap tm;
  for (const auto& [ex, cx] : x.poly().terms()) {
    for (const auto& [ey, cy] : y.poly().terms()) {
      Expo e = ex;
      e.insert(e.end(), ey.begin(), ey.end());
      tm[e] += cx * cy;
    }
  }
  return {XY, Poly::from_terms(XY->ring(), std::move(tm))};
}

// ---------------------------------------------------------------------------
// Projections between product models

namespace {
void validate_projection(const VarietyPtr& X, const VarietyPtr& XY,
                         const std::vector<size_t>& sel) {
  require(!X->is_bundle() && !XY->is_bundle(), "projection maps act on product models");
  require(sel.size() == X->factor_count(), "selection must list every factor of the sub-product");
  std::vector<bool> seen(XY->factor_count(), false);
  for (size_t i = 0; i < sel.size(); ++i) {
    require(sel[i] < XY->factor_count(), "selected factor out of range");
    require(!seen[sel[i]], "selection repeats a factor");
    seen[sel[i]] = true;
    require(XY->factor_dims()[sel[i]] == X->factor_dims()[i],
            "selected factor dimensions do not match");
  }
}
}  // namespace

ChowClass pullback_projection(const ChowClass& x, const VarietyPtr& XY,
                              const std::vector<size_t>& sel) {
  validate_projection(x.variety(), XY, sel);
  TermMap tm;
  for (const auto& [e, c] : x.poly().terms()) {
    Expo en(XY->factor_count(), 0);
    for (size_t i = 0; i < sel.size(); ++i) en[sel[i]] = e[i];
    tm[en] = c;
  }
  return {XY, Poly::from_terms(XY->ring(), std::move(tm))};
}

ChowClass pushforward_projection(const ChowClass& xy, const VarietyPtr& X,
                                 const std::vector<size_t>& sel) {
  const VarietyPtr& XY = xy.variety();
  validate_projection(X, XY, sel);
  std::vector<int> where(XY->factor_count(), -1);  // factor of X, or -1 = integrated
  for (size_t i = 0; i < sel.size(); ++i) where[sel[i]] = static_cast<int>(i);
  TermMap tm;
  for (const auto& [e, c] : xy.poly().terms()) {
    Expo en(X->factor_count(), 0);
    bool keep = true;
    for (size_t j = 0; j < e.size(); ++j) {
      if (where[j] >= 0) {
        en[where[j]] = e[j];
      } else if (e[j] != XY->factor_dims()[j]) {  // fiber integral of h^{<dim} is 0
        keep = false;
        break;
      }
    }
    if (keep) tm[en] += c;
  }
  return {X, Poly::from_terms(X->ring(), std::move(tm))};
}

// ---------------------------------------------------------------------------
// Bundle structure maps

ChowClass pullback_bundle(const ChowClass& x, const VarietyPtr& P) {
  require(P->is_bundle(), "pullback target must be a bundle model");
  require(x.variety() == P->base(), "class must live on the bundle's base");
  TermMap tm;
  for (const auto& [e, c] : x.poly().terms()) {
    Expo en = e;
    en.push_back(0);
    tm[en] = c;
  }
  return {P, Poly::from_terms(P->ring(), std::move(tm))};
}

ChowClass pushforward_bundle(const ChowClass& y) {
  const VarietyPtr& P = y.variety();
  require(P->is_bundle(), "bundle pushforward needs a bundle model");
  const int rho = P->bundle_rank();
  TermMap tm;
  for (const auto& [e, c] : y.poly().terms()) {
    if (e.back() != rho) continue;  // fiber integral of z^{<rho} vanishes
    Expo en(e.begin(), e.end() - 1);
    tm[en] += c;
  }
  return {P->base(), Poly::from_terms(P->base()->ring(), std::move(tm))};
}

ChowClass pullback_zero_section(const ChowClass& y) {
  const VarietyPtr& P = y.variety();
  require(P->is_bundle(), "zero-section pullback needs a bundle model");
  TermMap tm;
  for (const auto& [e, c] : y.poly().terms()) {
    if (e.back() != 0) continue;  // z restricts to 0 along the zero section
    Expo en(e.begin(), e.end() - 1);
    tm[en] += c;
  }
  return {P->base(), Poly::from_terms(P->base()->ring(), std::move(tm))};
}

ChowClass pushforward_zero_section(const ChowClass& x, const VarietyPtr& P) {
  return pullback_bundle(x, P) * quotient_top_chern(P);
}

// ---------------------------------------------------------------------------
// Products of per-factor linear maps

ChowClass pushforward_product_linear(const ChowClass& x, const VarietyPtr& T) {
  const VarietyPtr& S = x.variety();
  require(!S->is_bundle() && !T->is_bundle(), "per-factor linear maps act on product models");
  require(S->factor_count() == T->factor_count(),
          "source and target must have equally many factors");
  const size_t f = S->factor_count();
  std::vector<int> shift(f, 0);
  std::vector<bool> collapse(f, false);
  for (size_t j = 0; j < f; ++j) {
    const int k = S->factor_dims()[j], n = T->factor_dims()[j];
    if (n == 0) {
      collapse[j] = true;
    } else {
      require(k <= n, "factor map must be a linear embedding or a collapse to a point");
      shift[j] = n - k;
    }
  }
  TermMap tm;
  for (const auto& [e, c] : x.poly().terms()) {
    Expo en(f, 0);
    bool keep = true;
    for (size_t j = 0; j < f; ++j) {
      if (collapse[j]) {
        if (e[j] != S->factor_dims()[j]) {  // degree of h^{<dim} under collapse is 0
          keep = false;
          break;
        }
        en[j] = 0;
      } else {
        en[j] = e[j] + shift[j];
      }
    }
    if (keep) tm[en] += c;
  }
  return {T, Poly::from_terms(T->ring(), std::move(tm))};
}

std::vector<size_t> factor_range(size_t begin, size_t count) {
  std::vector<size_t> out(count);
  for (size_t i = 0; i < count; ++i) out[i] = begin + i;
  return out;
}

}  // namespace igrr
