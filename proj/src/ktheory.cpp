#include "igrr/ktheory.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "igrr/symring.hpp"

namespace igrr {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw PreconditionError(msg);
}

size_t key_length(const VarietyPtr& X) {
  return X->factor_count() + (X->is_bundle() ? 1 : 0);
}

// Lines of V = N ⊕ 1 as twist vectors (the last one trivial).
std::vector<std::vector<int>> extended_lines(const VarietyPtr& X) {
  std::vector<std::vector<int>> v = X->bundle_twists();
  v.emplace_back(X->factor_count(), 0);
  return v;
}

// Rewrites a raw (key, coefficient) pair into the window basis, adding the
// reduced terms to `out`.  The relations used:
//   factor j:  (1 - [O_j(-1)])^{n_j + 1} = 0,
//   fiber:     prod_s (τ - [L_s^dual]) = 0  over the lines of N ⊕ 1
// (the Koszul relation of the nowhere-zero section of p^*(N⊕1) ⊗ O_P(1)).
void reduce_into(const VarietyPtr& X, std::map<KClass::Key, Int>& out, KClass::Key key0,
                 Int c0) {
  const auto& dims = X->factor_dims();
  const size_t f = dims.size();
  const bool bundle = X->is_bundle();
  const int rho = bundle ? X->bundle_rank() : 0;
  std::vector<std::vector<int>> vlines;
  if (bundle) vlines = extended_lines(X);

  std::vector<std::pair<KClass::Key, Int>> work;
  work.emplace_back(std::move(key0), std::move(c0));
  while (!work.empty()) {
    auto [k, c] = std::move(work.back());
    work.pop_back();
    if (c == 0) continue;

    if (bundle && (k[f] > rho || k[f] < 0)) {
      // tau^m = sum_{S != empty} (-1)^{|S|+1} [O(∓t_S)] tau^{m ∓ |S|}
      // (downward tensors by duals of lines of V, upward by the lines).
      const bool down = k[f] > rho;
      const unsigned nlines = static_cast<unsigned>(rho) + 1;
      for (unsigned mask = 1; mask < (1u << nlines); ++mask) {
        KClass::Key nk = k;
        int size = 0;
        for (unsigned s = 0; s < nlines; ++s) {
          if (!(mask & (1u << s))) continue;
          ++size;
          for (size_t j = 0; j < f; ++j) {
            nk[j] += down ? -vlines[s][j] : vlines[s][j];
          }
        }
        nk[f] += down ? -size : size;
        work.emplace_back(std::move(nk), (size % 2 == 1) ? c : -c);
      }
      continue;
    }

    size_t bad = f;
    for (size_t j = 0; j < f; ++j) {
      if (k[j] < 0 || k[j] > dims[j]) {
        bad = j;
        break;
      }
    }
    if (bad == f) {
      Int& slot = out[k];
      slot += c;
      if (slot == 0) out.erase(k);
      continue;
    }

    const int n = dims[bad];
    if (k[bad] > n) {
      // [O(t)] = sum_{i=1}^{n+1} (-1)^{i+1} binom(n+1, i) [O(t-i)]
      for (int i = 1; i <= n + 1; ++i) {
        KClass::Key nk = k;
        nk[bad] -= i;
        work.emplace_back(std::move(nk), ((i % 2 == 1) ? c : -c) *
                                             binomial(Int(n + 1), static_cast<unsigned>(i)));
      }
    } else {
      // [O(t)] = sum_{i=0}^{n} (-1)^{n+i} binom(n+1, i) [O(t+n+1-i)]
      for (int i = 0; i <= n; ++i) {
        KClass::Key nk = k;
        nk[bad] += n + 1 - i;
        work.emplace_back(std::move(nk), (((n + i) % 2 == 0) ? c : -c) *
                                             binomial(Int(n + 1), static_cast<unsigned>(i)));
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// KClass basics

KClass KClass::zero(const VarietyPtr& X) {
  require(X != nullptr, "class needs a variety");
  return KClass(X);
}

KClass KClass::structure_sheaf(const VarietyPtr& X) {
  KClass out(X);
  out.terms_[Key(key_length(X), 0)] = 1;
  return out;
}

KClass KClass::line(const VarietyPtr& X, const LineData& L) {
  require(L.twists.size() == X->factor_count(),
          "line bundle twists must have one entry per factor");
  require(L.fiber == 0 || X->is_bundle(), "fiber twist needs a bundle model");
  KClass out(X);
  Key k(L.twists.begin(), L.twists.end());
  if (X->is_bundle()) k.push_back(L.fiber);
  reduce_into(X, out.terms_, std::move(k), 1);
  return out;
}

KClass KClass::of_bundle(const VarietyPtr& X, const BundleData& E) {
  KClass out = KClass::zero(X);
  for (const auto& [mult, L] : E.lines) out += KClass::line(X, L) * Int(mult);
  return out;
}

KClass KClass::from_terms(const VarietyPtr& X, const std::map<Key, Int>& raw) {
  KClass out(X);
  for (const auto& [k, c] : raw) {
    require(k.size() == key_length(X), "key length does not match the model");
    reduce_into(X, out.terms_, k, c);
  }
  return out;
}

Int KClass::rank() const {
  Int r = 0;
  for (const auto& [k, c] : terms_) r += c;
  return r;
}

namespace {
void require_same_variety_k(const KClass& a, const KClass& b) {
  require(a.variety() != nullptr && b.variety() != nullptr, "uninitialized class");
  require(a.variety() == b.variety(), "classes live on different varieties");
}
}  // namespace

KClass KClass::operator-() const {
  KClass out(X_);
  for (const auto& [k, c] : terms_) out.terms_[k] = -c;
  return out;
}

KClass& KClass::operator+=(const KClass& o) {
  require_same_variety_k(*this, o);
  for (const auto& [k, c] : o.terms_) {
    Int& slot = terms_[k];
    slot += c;
    if (slot == 0) terms_.erase(k);
  }
  return *this;
}

KClass& KClass::operator-=(const KClass& o) {
  require_same_variety_k(*this, o);
  for (const auto& [k, c] : o.terms_) {
    Int& slot = terms_[k];
    slot -= c;
    if (slot == 0) terms_.erase(k);
  }
  return *this;
}

KClass operator*(const KClass& a, const KClass& b) {
  require_same_variety_k(a, b);
  KClass out(a.X_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      KClass::Key k = ka;
      for (size_t i = 0; i < k.size(); ++i) k[i] += kb[i];
      reduce_into(a.X_, out.terms_, std::move(k), ca * cb);
    }
  }
  return out;
}

KClass operator*(KClass a, const Int& c) {
  if (c == 0) return KClass::zero(a.X_);
  for (auto& [k, v] : a.terms_) v *= c;
  return a;
}

bool KClass::operator==(const KClass& o) const {
  require_same_variety_k(*this, o);
  return terms_ == o.terms_;
}

std::string KClass::str() const {
  if (terms_.empty()) return "0";
  const size_t f = X_->factor_count();
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << (c >= 0 ? " + " : " - ");
    if (first && c < 0) os << "-";
    first = false;
    Int a = abs(c);
    if (a != 1) os << a.get_str() << "·";
    os << "[O";
    if (f > 0) {
      os << "(";
      for (size_t j = 0; j < f; ++j) os << (j ? "," : "") << k[j];
      os << ")";
    }
    if (X_->is_bundle() && k[f] != 0) os << "⊗O_P(" << k[f] << ")";
    os << "]";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Euler characteristics

Int euler_characteristic(int n, int k) {
  require(n >= 0, "Euler characteristic needs a nonnegative dimension");
  return binomial(Int(k + n), static_cast<unsigned>(n));
}

Int euler_characteristic(const KClass& x) {
  const VarietyPtr& X = x.variety();
  require(!X->is_bundle(), "Euler characteristic acts on product models");
  Int total = 0;
  for (const auto& [k, c] : x.terms()) {
    Int term = c;
    for (size_t j = 0; j < X->factor_count(); ++j) {
      term *= euler_characteristic(X->factor_dims()[j], k[j]);
    }
    total += term;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Products and projections

KClass external_product_k(const KClass& x, const KClass& y) {
  VarietyPtr XY = product_model(x.variety(), y.variety());
  std::map<KClass::Key, Int> raw;
  for (const auto& [kx, cx] : x.terms()) {
    for (const auto& [ky, cy] : y.terms()) {
      KClass::Key k = kx;
      k.insert(k.end(), ky.begin(), ky.end());
      raw[k] += cx * cy;
    }
  }
  return KClass::from_terms(XY, raw);
}

namespace {
void validate_projection_k(const VarietyPtr& X, const VarietyPtr& XY,
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

KClass pullback_projection_k(const KClass& x, const VarietyPtr& XY,
                             const std::vector<size_t>& sel) {
  validate_projection_k(x.variety(), XY, sel);
  std::map<KClass::Key, Int> raw;
  for (const auto& [k, c] : x.terms()) {
    KClass::Key nk(XY->factor_count(), 0);
    for (size_t i = 0; i < sel.size(); ++i) nk[sel[i]] = k[i];
    raw[nk] += c;
  }
  return KClass::from_terms(XY, raw);
}

KClass pushforward_projection_k(const KClass& xy, const VarietyPtr& X,
                                const std::vector<size_t>& sel) {
  const VarietyPtr& XY = xy.variety();
  validate_projection_k(X, XY, sel);
  std::vector<int> where(XY->factor_count(), -1);
  for (size_t i = 0; i < sel.size(); ++i) where[sel[i]] = static_cast<int>(i);
  std::map<KClass::Key, Int> raw;
  for (const auto& [k, c] : xy.terms()) {
    KClass::Key nk(X->factor_count(), 0);
    Int coeff = c;
    for (size_t j = 0; j < k.size(); ++j) {
      if (where[j] >= 0) {
        nk[where[j]] = k[j];
      } else {
        coeff *= euler_characteristic(XY->factor_dims()[j], k[j]);
      }
    }
    raw[nk] += coeff;
  }
  return KClass::from_terms(X, raw);
}

// ---------------------------------------------------------------------------
// Bundle structure maps

KClass pullback_bundle_k(const KClass& x, const VarietyPtr& P) {
  require(P->is_bundle(), "pullback target must be a bundle model");
  require(x.variety() == P->base(), "class must live on the bundle's base");
  std::map<KClass::Key, Int> raw;
  for (const auto& [k, c] : x.terms()) {
    KClass::Key nk = k;
    nk.push_back(0);
    raw[nk] += c;
  }
  return KClass::from_terms(P, raw);
}

KClass pushforward_zero_section_k(const KClass& x, const VarietyPtr& P) {
  require(P->is_bundle(), "zero-section pushforward needs a bundle model");
  require(x.variety() == P->base(), "class must live on the bundle's base");
  const int rho = P->bundle_rank();
  const size_t f = P->factor_count();
  const auto vlines = extended_lines(P);
  const unsigned nlines = static_cast<unsigned>(rho) + 1;

  // sum over subsets S of the lines of N⊕1 and fiber powers i with
  // |S| + i <= rho:  (-1)^{|S|} [O(-t_S)] [O_P(i)].
  std::map<KClass::Key, Int> raw;
  for (unsigned mask = 0; mask < (1u << nlines); ++mask) {
    KClass::Key base(f + 1, 0);
    int size = 0;
    for (unsigned s = 0; s < nlines; ++s) {
      if (!(mask & (1u << s))) continue;
      ++size;
      for (size_t j = 0; j < f; ++j) base[j] -= vlines[s][j];
    }
    if (size > rho) continue;
    for (int i = 0; i + size <= rho; ++i) {
      KClass::Key k = base;
      k[f] = i;
      raw[k] += (size % 2 == 0) ? 1 : -1;
    }
  }
  return KClass::from_terms(P, raw) * pullback_bundle_k(x, P);
}

// ---------------------------------------------------------------------------
// Linear subspaces and diagonals

KClass structure_sheaf_linear(int k, int n) {
  require(0 <= k && k <= n, "linear subspace needs 0 <= k <= n");
  VarietyPtr Pn = Variety::projective_space(n);
  std::map<KClass::Key, Int> raw;
  for (int j = 0; j <= n - k; ++j) {
    raw[{-j}] += ((j % 2 == 0) ? 1 : -1) * binomial(Int(n - k), static_cast<unsigned>(j));
  }
  return KClass::from_terms(Pn, raw);
}

KClass pushforward_product_linear_k(const KClass& x, const VarietyPtr& T) {
  const VarietyPtr& S = x.variety();
  require(!S->is_bundle() && !T->is_bundle(), "per-factor linear maps act on product models");
  require(S->factor_count() == T->factor_count(),
          "source and target must have equally many factors");
  const size_t f = S->factor_count();
  for (size_t j = 0; j < f; ++j) {
    const int k = S->factor_dims()[j], n = T->factor_dims()[j];
    require(n == 0 || k <= n, "factor map must be a linear embedding or a collapse to a point");
  }

  std::map<KClass::Key, Int> raw;
  for (const auto& [key, c] : x.terms()) {
    // Per-factor images: an embedding multiplies by the Koszul resolution of
    // the linear subspace, a collapse takes the factor's chi.
    std::vector<std::vector<std::pair<int, Int>>> lists(f);
    for (size_t j = 0; j < f; ++j) {
      const int k = S->factor_dims()[j], n = T->factor_dims()[j], a = key[j];
      if (n == 0) {
        lists[j].push_back({0, euler_characteristic(k, a)});
      } else {
        for (int i = 0; i <= n - k; ++i) {
          lists[j].push_back({a - i, ((i % 2 == 0) ? Int(1) : Int(-1)) *
                                         binomial(Int(n - k), static_cast<unsigned>(i))});
        }
      }
    }
    KClass::Key nk(f, 0);
    Int coeff;
    auto emit = [&](auto&& self, size_t j, const Int& acc) -> void {
      if (j == f) {
        raw[nk] += acc;
        return;
      }
      for (const auto& [t, w] : lists[j]) {
        nk[j] = t;
        self(self, j + 1, acc * w);
      }
    };
    emit(emit, 0, c);
  }
  return KClass::from_terms(T, raw);
}

KClass diagonal_structure_sheaf(int n) {
  require(n >= 0, "diagonal needs a nonnegative dimension");
  VarietyPtr XX =
      product_model(Variety::projective_space(n), Variety::projective_space(n));
  std::map<KClass::Key, Int> raw;
  // sum_i (-1)^i [O(-i)] ⊠ [Ω^i(i)],  [Ω^i(i)] = sum_t (-1)^t binom(n+1, i-t) [O(t)].
  for (int i = 0; i <= n; ++i) {
    for (int t = 0; t <= i; ++t) {
      raw[{-i, t}] += (((i + t) % 2 == 0) ? Int(1) : Int(-1)) *
                      binomial(Int(n + 1), static_cast<unsigned>(i - t));
    }
  }
  return KClass::from_terms(XX, raw);
}

KClass reinterpret_trivial_bundle_over_point(const KClass& x) {
  const VarietyPtr& X = x.variety();
  require(X->is_bundle() && X->base() == Variety::point(),
          "reinterpretation needs a bundle over the point");
  VarietyPtr Pr = Variety::projective_space(X->bundle_rank());
  std::map<KClass::Key, Int> raw;
  for (const auto& [k, c] : x.terms()) raw[k] += c;
  return KClass::from_terms(Pr, raw);
}

// ---------------------------------------------------------------------------
// Chern character

ChowClass chern_character_map(const KClass& x) {
  const VarietyPtr& X = x.variety();
  const size_t f = X->factor_count();
  Poly acc = Poly::zero(X->ring());
  for (const auto& [k, c] : x.terms()) {
    LineData L;
    L.twists.assign(k.begin(), k.begin() + f);
    if (X->is_bundle()) L.fiber = k[f];
    acc += exp_full(first_chern(X, L).poly()) * Rat(c);
  }
  return {X, acc};
}

}  // namespace igrr
