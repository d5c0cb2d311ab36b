// Acceptance gate: eight criteria, one pass/fail line each, exit 0 only if
// every criterion holds.  Each criterion re-derives its expected values from
// an independent in-file oracle where one exists, and drives the library
// through its public headers only.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "igrr/chow.hpp"
#include "igrr/driver.hpp"
#include "igrr/grrcheck.hpp"
#include "igrr/ktheory.hpp"
#include "igrr/numbers.hpp"
#include "igrr/orbitcat.hpp"
#include "igrr/poly.hpp"
#include "igrr/symring.hpp"

using namespace igrr;

namespace {

int g_failures = 0;

// Runs one criterion, enforcing a wall-clock budget when budget_s > 0.
void criterion(int index, const std::string& name, double budget_s,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (ok && budget_s > 0 && secs > budget_s) {
    ok = false;
    detail = "over budget";
  }
  std::ostringstream line;
  line << "[" << index << "] " << name << ": " << (ok ? "PASS" : "FAIL");
  line.setf(std::ios::fixed);
  line.precision(2);
  line << " (" << secs << " s";
  if (budget_s > 0) line << ", budget " << budget_s << " s";
  line << ")";
  if (!ok && !detail.empty()) line << "  -- " << detail;
  std::cout << line.str() << "\n";
  if (!ok) ++g_failures;
}

bool fail(std::string& detail, const std::string& msg) {
  if (detail.empty()) detail = msg;
  return false;
}

// ---------------------------------------------------------------------------
// 1. constants

bool prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

Int scale_oracle(int m) {
  Int t = 1;
  for (int p = 2; p <= m + 1; ++p)
    if (prime(p)) t *= pow_int(Int(p), static_cast<unsigned>(m / (p - 1)));
  return t;
}

bool constants_suite(std::string& detail) {
  const Int first[] = {Int(1), Int(2), Int(12), Int(24), Int(720)};
  for (int m = 0; m <= 4; ++m)
    if (todd_scale(static_cast<unsigned>(m)) != first[m])
      return fail(detail, "small scale constant mismatch");
  for (int m = 0; m <= 10; ++m)
    if (todd_scale(static_cast<unsigned>(m)) != scale_oracle(m))
      return fail(detail, "prime-enumeration oracle mismatch at m=" +
                              std::to_string(m));
  for (int l = 0; l <= 30; ++l) {
    if (todd_scale(static_cast<unsigned>(l)) %
            factorial(static_cast<unsigned>(l)) !=
        0)
      return fail(detail, "T_l not divisible by l! at l=" + std::to_string(l));
  }
  for (int m = 0; m <= 30; ++m)
    if (todd_scale(static_cast<unsigned>(m + 1)) %
            todd_scale(static_cast<unsigned>(m)) !=
        0)
      return fail(detail, "T_m does not divide T_{m+1} at m=" +
                              std::to_string(m));
  // Defining recurrence: sum_{j=0}^{n} binom(n+1, j) B_j = 0 for n >= 1.
  std::vector<Rat> oracle{Rat(1)};
  for (int n = 1; n <= 30; ++n) {
    Rat s(0);
    for (int j = 0; j < n; ++j)
      s += Rat(binomial(Int(n + 1), static_cast<unsigned>(j))) *
           oracle[static_cast<size_t>(j)];
    oracle.push_back(-s / Rat(n + 1));
  }
  for (int n = 0; n <= 30; ++n)
    if (bernoulli(static_cast<unsigned>(n)) != oracle[static_cast<size_t>(n)])
      return fail(detail, "Bernoulli recurrence mismatch at n=" +
                              std::to_string(n));
  if (bernoulli(12) != make_rat(-691, 2730))
    return fail(detail, "B_12 mismatch");
  return true;
}

// ---------------------------------------------------------------------------
// 2. integrality of scaled classes for split bundles

void multisets(int size, int lo, int hi, int min,
               std::vector<int>& cur,
               const std::function<void(const std::vector<int>&)>& fn) {
  if (static_cast<int>(cur.size()) == size) {
    fn(cur);
    return;
  }
  for (int a = min; a <= hi; ++a) {
    cur.push_back(a);
    multisets(size, lo, hi, a, cur, fn);
    cur.pop_back();
  }
}

bool integrality_suite(std::string& detail) {
  bool ok = true;
  for (int d = 0; d <= 6 && ok; ++d) {
    const RingPtr R = make_ring({RingSpec::Var{"h", 1, 0, {}}}, d);
    const Poly h = Poly::variable(R, 0);
    for (int r = 0; r <= 4 && ok; ++r) {
      std::vector<int> cur;
      multisets(r, -3, 3, -3, cur, [&](const std::vector<int>& twists) {
        if (!ok) return;
        Poly ch = Poly::zero(R);
        Poly td = Poly::constant(R, 1);
        Poly tdi = Poly::constant(R, 1);
        for (int a : twists) {
          const Poly x = h * Rat(a);
          ch += exp_full(x);
          Poly f = Poly::zero(R);
          Poly g = Poly::zero(R);
          Poly xp = Poly::constant(R, 1);
          for (int m = 0; m <= d; ++m) {
            f += xp * todd_coefficient(static_cast<unsigned>(m));
            g += xp * (Rat(m % 2 ? -1 : 1) /
                       Rat(factorial(static_cast<unsigned>(m) + 1)));
            xp = xp * x;
          }
          td = td * f;
          tdi = tdi * g;
        }
        for (int l : {d, d + 1, d + 3}) {
          const Rat fl = Rat(factorial(static_cast<unsigned>(l)));
          const Rat tl = Rat(todd_scale(static_cast<unsigned>(l)));
          if (!(ch * fl).is_integral() || !(td * tl).is_integral() ||
              !(tdi * tl).is_integral() ||
              (td * tl) * (tdi * tl) != Poly::constant(R, tl * tl)) {
            ok = false;
            std::ostringstream os;
            os << "failure at d=" << d << " l=" << l << " twists=";
            for (int a : twists) os << a << ",";
            detail = os.str();
            return;
          }
        }
      });
    }
  }
  return ok;
}

// ---------------------------------------------------------------------------
// 3. formula suite

bool formula_suite(std::string& detail) {
  for (int r1 = 1; r1 <= 3; ++r1)
    for (int r2 = 1; r2 <= 3; ++r2)
      for (int d = 1; d <= 5; ++d)
        for (int l : std::set<int>{d, 6}) {
          if (!additivity_check(r1, r2, d, l).pass)
            return fail(detail, "additivity failed");
          if (!multiplicativity_check(r1, r2, d, l).pass)
            return fail(detail, "multiplicativity failed");
          if (!tensor_character_check(r1, r2, d, l).pass)
            return fail(detail, "tensor formula failed");
        }
  for (int r = 1; r <= 3; ++r)
    for (int l : std::set<int>{r, 6})
      if (!verify_exterior_identity(r, r, l).pass)
        return fail(detail, "exterior identity failed at r=" +
                                std::to_string(r));
  for (int l = 1; l <= 6; ++l)
    for (int d : std::set<int>{3, 5})
      if (!verify_exp_product_rule(l, d).pass)
        return fail(detail, "truncated-exponential bound failed at l=" +
                                std::to_string(l));
  return true;
}

// ---------------------------------------------------------------------------
// 4. Euler-characteristic spot checks

bool hrr_suite(std::string& detail) {
  for (int n = 0; n <= 5; ++n) {
    const VarietyPtr X = Variety::projective_space(n);
    const ChowClass td = todd_of(X, X->tangent());
    for (int k = -5; k <= 5; ++k) {
      const KClass line = KClass::line(X, LineData{{k}, 0});
      const Rat got = degree0(chern_character_map(line) * td);
      if (got != Rat(euler_characteristic(n, k)))
        return fail(detail, "chi mismatch at n=" + std::to_string(n) +
                                " k=" + std::to_string(k));
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 5. scaled pushforward identities

BundleData line_class(std::vector<int> twists, int mult = 1) {
  BundleData E;
  E.lines.emplace_back(mult, LineData{std::move(twists), 0});
  return E;
}

bool check_instance(const Instance& inst, std::string& detail) {
  const VerificationReport rep = verify_instance(inst);
  if (rep.pass && rep.rational_equal && rep.lhs_integral && rep.rhs_integral)
    return true;
  detail = "instance failed: " + rep.key;
  return false;
}

bool grr_suite(std::string& detail) {
  std::vector<Instance> instances;

  // Zero sections: base in {pt, P1, P2}, line-sum rank <= 2.
  const std::vector<std::vector<int>> bases = {{}, {1}, {2}};
  for (const auto& base : bases) {
    std::vector<std::vector<std::vector<int>>> bundles;
    const std::vector<int> range =
        base.empty() ? std::vector<int>{0} : std::vector<int>{-2, -1, 0, 1, 2};
    for (int t : range) {
      if (base.empty())
        bundles.push_back({{}});
      else
        bundles.push_back({{t}});
    }
    if (base.empty()) {
      bundles.push_back({{}, {}});
    } else {
      for (int a = -1; a <= 1; ++a)
        for (int b = a; b <= 1; ++b) bundles.push_back({{a}, {b}});
    }
    for (const auto& N : bundles) {
      for (int xt : {0, 1}) {
        Instance inst;
        inst.kind = Instance::Kind::ZeroSection;
        inst.base_dims = base;
        inst.twists = N;
        inst.x = line_class(std::vector<int>(base.size(), xt));
        inst.l = required_level(inst);
        instances.push_back(std::move(inst));
      }
    }
  }

  // Projections: X in {pt, P1, P2}, fiber dimension m <= 3.
  for (const auto& base : bases) {
    for (int m = 0; m <= 3; ++m) {
      for (int xt : {-1, 2}) {
        Instance inst;
        inst.kind = Instance::Kind::Projection;
        inst.base_dims = base;
        inst.m = m;
        std::vector<int> tw(base.size(), 1);
        tw.push_back(xt);
        inst.x = line_class(std::move(tw));
        inst.l = required_level(inst);
        instances.push_back(std::move(inst));
      }
    }
  }

  // Linear embeddings: every P^k inside P^n with n <= 4.
  for (int n = 0; n <= 4; ++n) {
    for (int k = 0; k <= n; ++k) {
      for (int xt : {-2, 1}) {
        Instance inst;
        inst.kind = Instance::Kind::LinearEmbedding;
        inst.k = k;
        inst.n = n;
        inst.x = line_class({xt}, xt < 0 ? -2 : 1);
        inst.l = required_level(inst);
        instances.push_back(std::move(inst));
      }
    }
  }

  // Composites through a graph embedding and a projection.
  const std::vector<std::array<int, 3>> shapes = {
      {0, 1, 1}, {0, 2, 2}, {0, 2, 1}, {1, 1, 1}, {1, 2, 1}, {1, 2, 2},
      {1, 3, 2}, {2, 2, 2}, {2, 3, 3}, {1, 2, 0}, {2, 3, 0}, {1, 3, 3}};
  for (const auto& s : shapes) {
    for (int xt : {1, -2}) {
      Instance inst;
      inst.kind = Instance::Kind::Composed;
      inst.k = s[0];
      inst.n = s[1];
      inst.e = s[2];
      inst.x = line_class({xt});
      inst.l = required_level(inst);
      instances.push_back(std::move(inst));
    }
  }

  for (const Instance& inst : instances)
    if (!check_instance(inst, detail)) return false;
  detail = "";
  return true;
}

// ---------------------------------------------------------------------------
// 6. graded parts, degreewise pushforwards, single-scale variant

bool graded_suite(std::string& detail) {
  struct Fixture {
    VarietyPtr X;
    std::vector<KClass> classes;
  };
  std::vector<Fixture> fixtures;
  const VarietyPtr P1 = Variety::projective_space(1);
  const VarietyPtr P2 = Variety::projective_space(2);
  const VarietyPtr P11 = Variety::projective_product({1, 1});
  const VarietyPtr F2 = Variety::projective_bundle(P1, {{2}});
  auto lines = [](const VarietyPtr& X,
                  const std::vector<LineData>& ls) {
    std::vector<KClass> out;
    out.push_back(KClass::structure_sheaf(X));
    for (const LineData& L : ls) out.push_back(KClass::line(X, L));
    out.push_back(KClass::line(X, ls[0]) * Int(2) -
                  KClass::structure_sheaf(X));
    return out;
  };
  fixtures.push_back({P1, lines(P1, {{{1}, 0}, {{-2}, 0}})});
  fixtures.push_back({P2, lines(P2, {{{1}, 0}, {{-1}, 0}})});
  fixtures.push_back({P11, lines(P11, {{{1, 0}, 0}, {{-1, 2}, 0}})});
  fixtures.push_back({F2, lines(F2, {{{1}, 1}, {{0}, -1}})});

  for (const Fixture& fx : fixtures) {
    for (const KClass& x : fx.classes) {
      const VerificationReport rep =
          verify_graded_parts(fx.X, x, fx.X->dim(), "graded");
      if (!rep.pass)
        return fail(detail, "graded parts failed on " + fx.X->describe());
      // Every graded part must itself be an integral class.
      const GradedParts parts = graded_parts(fx.X, x);
      for (const auto& v : {parts.s, parts.td, parts.ct})
        for (const ChowClass& c : v)
          if (!c.is_integral())
            return fail(detail, "non-integral part on " + fx.X->describe());
    }
  }

  // Degreewise pushforward cases (a) d >= 0 and (b) d < 0, plus the
  // single-scale variant on the same morphisms.
  struct MorphFixture {
    MorphismData f;
    std::vector<KClass> classes;
  };
  std::vector<MorphFixture> morphs;
  const VarietyPtr Ppt = Variety::projective_bundle(Variety::point(), {{}});
  morphs.push_back({zero_section_morphism(Ppt),
                    {KClass::structure_sheaf(Variety::point()),
                     KClass::structure_sheaf(Variety::point()) * Int(3)}});
  morphs.push_back({zero_section_morphism(F2),
                    {KClass::structure_sheaf(P1),
                     KClass::line(P1, LineData{{1}, 0})}});
  morphs.push_back({projection_morphism(P1, 1),
                    {KClass::structure_sheaf(product_model(P1, P1)),
                     KClass::line(product_model(P1, P1), LineData{{1, 2}, 0})}});
  morphs.push_back({projection_morphism(P2, 1),
                    {KClass::line(product_model(P2, P1), LineData{{1, 1}, 0})}});
  morphs.push_back({projection_morphism(Variety::point(), 2),
                    {KClass::line(Variety::projective_space(2),
                                  LineData{{-1}, 0})}});
  morphs.push_back({identity_morphism(P2),
                    {KClass::line(P2, LineData{{2}, 0})}});
  for (const auto& kn :
       std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {1, 3}, {2, 3}}) {
    const VarietyPtr Pk = Variety::projective_space(kn.first);
    morphs.push_back({linear_embedding_morphism(kn.first, kn.second),
                      {KClass::structure_sheaf(Pk),
                       KClass::line(Pk, LineData{{1}, 0})}});
  }
  for (const MorphFixture& mf : morphs) {
    for (const KClass& x : mf.classes) {
      if (!verify_pappas_graded(mf.f, x, "pappas").pass)
        return fail(detail, "degreewise pushforward failed: " + mf.f.desc);
      const int l = std::max(mf.f.src->dim(), mf.f.dst->dim());
      if (!verify_single_scale(mf.f, x, l, "single").pass)
        return fail(detail, "single-scale variant failed: " + mf.f.desc);
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 7. correspondence category and the character functor

KMCorrespondence km_identity(const VarietyPtr& X) {
  if (X->factor_count() == 0)
    return make_km(X, X, KClass::structure_sheaf(X));
  return diagonal_k_class(X->dim());
}

KMCorrespondence simple_corr(const VarietyPtr& X, const VarietyPtr& Y, int s,
                             int t) {
  const VarietyPtr XY = product_model(X, Y);
  std::vector<int> tw;
  for (size_t i = 0; i < X->factor_count(); ++i) tw.push_back(s);
  for (size_t i = 0; i < Y->factor_count(); ++i) tw.push_back(t);
  return make_km(X, Y, KClass::line(XY, LineData{tw, 0}));
}

bool orbit_suite(std::string& detail) {
  const std::vector<VarietyPtr> models = {Variety::point(),
                                          Variety::projective_space(1),
                                          Variety::projective_space(2)};
  const int l = 2 * 2 + 2;

  // Identity preservation for n <= 2.
  for (int n = 0; n <= 2; ++n)
    if (!verify_phi_identity(n, l, "id").pass)
      return fail(detail, "identity preservation failed at n=" +
                              std::to_string(n));

  for (const VarietyPtr& X : models)
    for (const VarietyPtr& Y : models)
      for (const VarietyPtr& Z : models) {
        const KMCorrespondence a = simple_corr(X, Y, 1, -1);
        const KMCorrespondence b = simple_corr(Y, Z, 0, 1);
        const KMCorrespondence c = simple_corr(Z, X, 1, 0);
        const std::string where =
            X->describe() + "," + Y->describe() + "," + Z->describe();

        // Unit laws in the correspondence category.
        if (!(compose_km(km_identity(X), a).cls == a.cls) ||
            !(compose_km(a, km_identity(Y)).cls == a.cls))
          return fail(detail, "correspondence unit law failed on " + where);
        // Associativity in the correspondence category.
        if (!(compose_km(compose_km(a, b), c).cls ==
              compose_km(a, compose_km(b, c)).cls))
          return fail(detail, "correspondence associativity failed on " + where);

        // Functoriality of the character functor.
        if (!verify_phi_functoriality(a, b, l, "fn").pass)
          return fail(detail, "functoriality failed on " + where);

        // Denominators of every character image divide (l+1)!.
        for (const KMCorrespondence& corr :
             {a, b, compose_km(a, b)}) {
          const VerificationReport den =
              verify_phi_denominators(corr, l, "den");
          if (!den.pass || !den.lhs_integral)
            return fail(detail, "denominator bound failed on " + where);
        }

        // Unit laws and associativity for graded composition, on the
        // character images.
        const OrbitMorphism fa = phi(a, l);
        const OrbitMorphism fb = phi(b, l);
        const OrbitMorphism fc = phi(c, l);
        if (!orbit_equal(compose_orbit(orbit_identity(X), fa), fa) ||
            !orbit_equal(compose_orbit(fa, orbit_identity(Y)), fa))
          return fail(detail, "graded unit law failed on " + where);
        if (!orbit_equal(compose_orbit(compose_orbit(fa, fb), fc),
                         compose_orbit(fa, compose_orbit(fb, fc))))
          return fail(detail, "graded associativity failed on " + where);
      }
  return true;
}

// ---------------------------------------------------------------------------
// 8. limitation header

bool limitation_suite(std::string& detail) {
  const std::string header = limitation_header();
  const std::string rendered = render_run_text({}, false);
  for (const char* needle :
       {"torsion-free Chow groups", "(i) integrality", "(ii) the scaled"}) {
    if (header.find(needle) == std::string::npos)
      return fail(detail, std::string("header misses: ") + needle);
    if (rendered.find(needle) == std::string::npos)
      return fail(detail, std::string("report misses: ") + needle);
  }
  return true;
}

}  // namespace

int main() {
  std::cout << "# " << limitation_header() << "\n";
  criterion(1, "constants suite", 1.0, constants_suite);
  criterion(2, "scaled-class integrality suite", 30.0, integrality_suite);
  criterion(3, "formula suite", -1.0, formula_suite);
  criterion(4, "Euler-characteristic spot suite", -1.0, hrr_suite);
  criterion(5, "scaled pushforward suite", 120.0, grr_suite);
  criterion(6, "graded-part suite", -1.0, graded_suite);
  criterion(7, "correspondence and character-functor suite", 120.0,
            orbit_suite);
  criterion(8, "limitation header", -1.0, limitation_suite);
  if (g_failures == 0) {
    std::cout << "acceptance: 8/8 criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << (8 - g_failures) << "/8 criteria passed\n";
  return 1;
}
