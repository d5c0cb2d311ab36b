#include "igrr/orbitcat.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "igrr/numbers.hpp"

namespace igrr {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw PreconditionError(msg);
}

// Factor selections of the three pairwise projections out of X×Y×Z.
struct TripleSelections {
  VarietyPtr XYZ, XZ;
  std::vector<size_t> s12, s23, s13;
};

TripleSelections triple_selections(const VarietyPtr& X, const VarietyPtr& Y,
                                   const VarietyPtr& Z) {
  const size_t fx = X->factor_count();
  const size_t fy = Y->factor_count();
  const size_t fz = Z->factor_count();
  TripleSelections t;
  t.XYZ = product_model(product_model(X, Y), Z);
  t.XZ = product_model(X, Z);
  t.s12.resize(fx + fy);
  std::iota(t.s12.begin(), t.s12.end(), size_t{0});
  t.s23.resize(fy + fz);
  std::iota(t.s23.begin(), t.s23.end(), fx);
  t.s13.resize(fx + fz);
  std::iota(t.s13.begin(), t.s13.begin() + static_cast<std::ptrdiff_t>(fx),
            size_t{0});
  std::iota(t.s13.begin() + static_cast<std::ptrdiff_t>(fx), t.s13.end(),
            fx + fy);
  return t;
}

void require_product_model(const VarietyPtr& X, const char* role) {
  require(X != nullptr, std::string("null ") + role + " model");
  require(!X->is_bundle(),
          std::string("correspondences are defined between product models; ") +
              role + " is a bundle model");
}

// Fills one comparison line per component index present on either side and
// sets the equality verdicts on the report.
void compare_components(VerificationReport& rep, const OrbitMorphism& lhs,
                        const OrbitMorphism& rhs) {
  const VarietyPtr XY = product_model(lhs.source, lhs.target);
  std::set<int> indices;
  for (const auto& [i, c] : lhs.components) indices.insert(i);
  for (const auto& [i, c] : rhs.components) indices.insert(i);
  if (indices.empty()) indices.insert(0);
  bool all_equal = true;
  for (int i : indices) {
    const auto li = lhs.components.find(i);
    const auto ri = rhs.components.find(i);
    const ChowClass lc =
        li == lhs.components.end() ? ChowClass::zero(XY) : li->second;
    const ChowClass rc =
        ri == rhs.components.end() ? ChowClass::zero(XY) : ri->second;
    DegreeLine line;
    line.degree = i;
    line.lhs = lc.str();
    line.rhs = rc.str();
    line.equal = (lc == rc);
    line.lhs_integral = lc.is_integral();
    line.rhs_integral = rc.is_integral();
    all_equal = all_equal && line.equal;
    rep.degrees.push_back(std::move(line));
  }
  rep.rational_equal = all_equal;
  rep.pass = all_equal;
}

}  // namespace

KMCorrespondence make_km(const VarietyPtr& src, const VarietyPtr& dst,
                         KClass cls) {
  require_product_model(src, "source");
  require_product_model(dst, "target");
  require(cls.variety() == product_model(src, dst),
          "correspondence class must live on source×target");
  return KMCorrespondence{src, dst, std::move(cls)};
}

KMCorrespondence km_external(const KClass& x, const KClass& y) {
  return make_km(x.variety(), y.variety(), external_product_k(x, y));
}

KMCorrespondence diagonal_k_class(int n) {
  require(n >= 0 && n <= 3,
          "diagonal correspondence is provided for dimensions 0..3");
  const VarietyPtr X = Variety::projective_space(n);
  return make_km(X, X, diagonal_structure_sheaf(n));
}

KMCorrespondence compose_km(const KMCorrespondence& a,
                            const KMCorrespondence& b) {
  require(a.target == b.source,
          "correspondences compose only when the middle models agree");
  const TripleSelections t = triple_selections(a.source, a.target, b.target);
  const KClass prod = pullback_projection_k(a.cls, t.XYZ, t.s12) *
                      pullback_projection_k(b.cls, t.XYZ, t.s23);
  return make_km(a.source, b.target,
                 pushforward_projection_k(prod, t.XZ, t.s13));
}

OrbitMorphism make_orbit(const VarietyPtr& src, const VarietyPtr& dst,
                         std::map<int, ChowClass> components) {
  require_product_model(src, "source");
  require_product_model(dst, "target");
  const VarietyPtr XY = product_model(src, dst);
  const int d = dst->dim();
  OrbitMorphism f{src, dst, {}};
  for (auto& [i, c] : components) {
    if (c.is_zero()) continue;
    require(c.variety() == XY, "component must live on source×target");
    require(d + i >= 0 && c == c.component(d + i),
            "component " + std::to_string(i) +
                " is not pure of codimension dim(target)+" + std::to_string(i));
    f.components.emplace(i, std::move(c));
  }
  return f;
}

ChowClass diagonal_chow_of(const VarietyPtr& X) {
  require_product_model(X, "diagonal");
  const VarietyPtr XX = product_model(X, X);
  const size_t F = X->factor_count();
  ChowClass acc = ChowClass::one(XX);
  for (size_t f = 0; f < F; ++f) {
    const int n = X->factor_dims()[f];
    const ChowClass h1 = hyperplane(XX, f);
    const ChowClass h2 = hyperplane(XX, F + f);
    ChowClass sum = ChowClass::zero(XX);
    for (int i = 0; i <= n; ++i) {
      ChowClass term = ChowClass::one(XX);
      for (int p = 0; p < i; ++p) term = term * h1;
      for (int p = 0; p < n - i; ++p) term = term * h2;
      sum += term;
    }
    acc = acc * sum;
  }
  return acc;
}

OrbitMorphism orbit_identity(const VarietyPtr& X) {
  std::map<int, ChowClass> comps;
  comps.emplace(0, diagonal_chow_of(X));
  return make_orbit(X, X, std::move(comps));
}

bool orbit_equal(const OrbitMorphism& f, const OrbitMorphism& g) {
  if (f.source != g.source || f.target != g.target) return false;
  if (f.components.size() != g.components.size()) return false;
  for (const auto& [i, c] : f.components) {
    const auto it = g.components.find(i);
    if (it == g.components.end() || !(it->second == c)) return false;
  }
  return true;
}

OrbitMorphism compose_orbit(const OrbitMorphism& f, const OrbitMorphism& g) {
  require(f.target == g.source,
          "graded morphisms compose only when the middle models agree");
  const TripleSelections t = triple_selections(f.source, f.target, g.target);
  std::map<int, ChowClass> comps;
  for (const auto& [r, fr] : f.components) {
    const ChowClass fr3 = pullback_projection(fr, t.XYZ, t.s12);
    for (const auto& [s, gs] : g.components) {
      const ChowClass gs3 = pullback_projection(gs, t.XYZ, t.s23);
      const ChowClass pushed =
          pushforward_projection(fr3 * gs3, t.XZ, t.s13);
      if (pushed.is_zero()) continue;
      const auto [it, inserted] = comps.emplace(r + s, pushed);
      if (!inserted) it->second += pushed;
    }
  }
  return make_orbit(f.source, g.target, std::move(comps));
}

int phi_required_level(const VarietyPtr& X, const VarietyPtr& Y) {
  require_product_model(X, "source");
  require_product_model(Y, "target");
  const int d = std::max(X->dim(), Y->dim());
  return 3 * d;
}

OrbitMorphism phi(const KMCorrespondence& a, int l) {
  const int bound = phi_required_level(a.source, a.target);
  require(l >= bound, "character-functor level l=" + std::to_string(l) +
                          " is below the hypothesis bound " +
                          std::to_string(bound) + " for " +
                          a.source->describe() + " -> " +
                          a.target->describe());
  const VarietyPtr XY = product_model(a.source, a.target);
  std::vector<size_t> sel(a.target->factor_count());
  std::iota(sel.begin(), sel.end(), a.source->factor_count());
  const ChowClass td = pullback_projection(
      todd_of(a.target, a.target->tangent()), XY, sel);
  const ChowClass cls = chern_character_map(a.cls) * td;
  const int d = a.target->dim();
  std::map<int, ChowClass> comps;
  for (int c = 0; c <= XY->dim(); ++c) {
    ChowClass part = cls.component(c);
    if (!part.is_zero()) comps.emplace(c - d, std::move(part));
  }
  return make_orbit(a.source, a.target, std::move(comps));
}

VerificationReport verify_phi_denominators(const KMCorrespondence& a, int l,
                                           const std::string& key) {
  VerificationReport rep;
  rep.key = key;
  rep.kind = "phi_denominators";
  rep.statement = "every coefficient of the character image at level l=" +
                  std::to_string(l) + " lies in Z[1/(l+1)!]";
  const OrbitMorphism im = phi(a, l);
  const Int bound = factorial(static_cast<unsigned>(l) + 1);
  bool all_member = true;
  bool all_divide = true;
  for (const auto& [i, c] : im.components) {
    bool member = true;
    bool divide = true;
    for (const auto& [mono, q] : c.poly().terms()) {
      member = member && denominator_in(q, bound);
      divide = divide && divides(denominator(q), bound);
    }
    DegreeLine line;
    line.degree = i;
    line.lhs = c.str();
    line.rhs = "Z[1/" + to_string(bound) + "]";
    line.equal = member;
    line.lhs_integral = divide;
    line.rhs_integral = true;
    all_member = all_member && member;
    all_divide = all_divide && divide;
    rep.degrees.push_back(std::move(line));
  }
  rep.rational_equal = all_member;
  rep.lhs_integral = all_divide;
  rep.pass = all_member;
  if (!all_member) {
    rep.note = "a component has a denominator outside Z[1/(l+1)!]";
  } else if (!all_divide) {
    rep.note = "denominators stay in Z[1/(l+1)!] but one exceeds (l+1)!";
  } else {
    rep.note = "all component denominators divide (l+1)! = " + to_string(bound);
  }
  return rep;
}

VerificationReport verify_phi_identity(int n, int l, const std::string& key) {
  require(n >= 0 && n <= 2,
          "identity preservation is stated for dimensions 0..2");
  VerificationReport rep;
  rep.key = key;
  rep.kind = "phi_identity";
  rep.statement =
      "the character functor sends the diagonal correspondence of a " +
      std::to_string(n) + "-dimensional projective space to the identity "
      "morphism (level l=" + std::to_string(l) + ")";
  const OrbitMorphism lhs = phi(diagonal_k_class(n), l);
  const OrbitMorphism rhs = orbit_identity(Variety::projective_space(n));
  compare_components(rep, lhs, rhs);
  return rep;
}

VerificationReport verify_phi_functoriality(const KMCorrespondence& a,
                                            const KMCorrespondence& b, int l,
                                            const std::string& key) {
  require(a.target == b.source,
          "functoriality needs composable correspondences");
  require(a.source->dim() <= 2 && a.target->dim() <= 2 && b.target->dim() <= 2,
          "functoriality fixtures keep every model of dimension <= 2");
  VerificationReport rep;
  rep.key = key;
  rep.kind = "phi_functoriality";
  rep.statement = "character functor turns correspondence composition " +
                  a.source->describe() + " -> " + a.target->describe() +
                  " -> " + b.target->describe() +
                  " into graded composition (level l=" + std::to_string(l) +
                  ")";
  const OrbitMorphism lhs = phi(compose_km(a, b), l);
  const OrbitMorphism rhs = compose_orbit(phi(a, l), phi(b, l));
  compare_components(rep, lhs, rhs);
  return rep;
}

}  // namespace igrr
