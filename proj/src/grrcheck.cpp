#include "igrr/grrcheck.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace igrr {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw PreconditionError(msg);
}

// Fills the per-degree trace of a report from two classes on the same model
// and sets the aggregate flags.  `pass` additionally folds in rational_equal,
// which the caller sets beforehand.
void trace_degrees(VerificationReport& rep, const ChowClass& lhs, const ChowClass& rhs) {
  const int dmax = lhs.variety()->dim();
  bool all_equal = true;
  for (int d = 0; d <= dmax; ++d) {
    const ChowClass lc = lhs.component(d), rc = rhs.component(d);
    DegreeLine line;
    line.degree = d;
    line.lhs = lc.str();
    line.rhs = rc.str();
    line.equal = (lc == rc);
    line.lhs_integral = lc.is_integral();
    line.rhs_integral = rc.is_integral();
    all_equal = all_equal && line.equal;
    rep.lhs_integral = rep.lhs_integral && line.lhs_integral;
    rep.rhs_integral = rep.rhs_integral && line.rhs_integral;
    rep.degrees.push_back(std::move(line));
  }
  rep.pass = rep.rational_equal && all_equal && rep.lhs_integral && rep.rhs_integral;
}

ChowClass todd_tangent(const VarietyPtr& X) { return todd_of(X, X->tangent()); }

std::string join_ints(const std::vector<int>& v, char sep) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << sep;
    os << v[i];
  }
  return os.str();
}

std::string line_desc(const LineData& L) {
  std::string s = "O";
  if (!L.twists.empty()) s += "(" + join_ints(L.twists, ',') + ")";
  if (L.fiber != 0) s += "{" + std::to_string(L.fiber) + "}";
  return s;
}

std::string lines_desc(const std::vector<std::vector<int>>& twists) {
  if (twists.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < twists.size(); ++i) {
    if (i) s += "⊕";
    s += line_desc(LineData{twists[i], 0});
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Morphisms

MorphismData identity_morphism(const VarietyPtr& X) {
  require(X != nullptr, "identity needs a model");
  MorphismData f;
  f.src = X;
  f.dst = X;
  f.push_k = [](const KClass& x) { return x; };
  f.push_chow = [](const ChowClass& a) { return a; };
  f.desc = "id " + X->describe();
  return f;
}

MorphismData zero_section_morphism(const VarietyPtr& P) {
  require(P != nullptr && P->is_bundle(), "zero section needs a bundle model");
  MorphismData f;
  f.src = P->base();
  f.dst = P;
  f.push_k = [P](const KClass& x) { return pushforward_zero_section_k(x, P); };
  f.push_chow = [P](const ChowClass& a) { return pushforward_zero_section(a, P); };
  f.desc = "zero section " + P->base()->describe() + " -> " + P->describe();
  return f;
}

MorphismData projection_morphism(const VarietyPtr& X, int m) {
  require(X != nullptr && !X->is_bundle(), "projection base must be a product model");
  require(m >= 0, "projection fiber dimension must be >= 0");
  VarietyPtr XY = product_model(X, Variety::projective_space(m));
  std::vector<size_t> sel(X->factor_count());
  for (size_t i = 0; i < sel.size(); ++i) sel[i] = i;
  MorphismData f;
  f.src = XY;
  f.dst = X;
  f.push_k = [X, sel](const KClass& x) { return pushforward_projection_k(x, X, sel); };
  f.push_chow = [X, sel](const ChowClass& a) { return pushforward_projection(a, X, sel); };
  f.desc = "projection " + XY->describe() + " -> " + X->describe();
  return f;
}

MorphismData product_linear_morphism(const VarietyPtr& S, const VarietyPtr& T) {
  // The pushforward validates the shape; run it once on zero to fail early.
  pushforward_product_linear(ChowClass::zero(S), T);
  MorphismData f;
  f.src = S;
  f.dst = T;
  f.push_k = [T](const KClass& x) { return pushforward_product_linear_k(x, T); };
  f.push_chow = [T](const ChowClass& a) { return pushforward_product_linear(a, T); };
  f.desc = "linear " + S->describe() + " -> " + T->describe();
  return f;
}

MorphismData linear_embedding_morphism(int k, int n) {
  require(0 <= k && k <= n, "linear embedding needs 0 <= k <= n");
  return product_linear_morphism(Variety::projective_space(k),
                                 Variety::projective_space(n));
}

MorphismData graph_morphism(int k, int n, int e) {
  require(k >= 0 && n >= 0 && e >= 0, "graph shape needs nonnegative dimensions");
  require((n >= k || n == 0) && (e >= k || e == 0),
          "each graph factor must be a linear embedding or a collapse");
  require(n >= k || e >= k, "at least one graph factor must embed the source");
  VarietyPtr S = Variety::projective_space(k);
  VarietyPtr SS = product_model(S, S);
  VarietyPtr T = Variety::projective_product({n, e});
  const ChowClass diag_c = diagonal_class(k);
  const KClass diag_k = diagonal_structure_sheaf(k);
  MorphismData f;
  f.src = S;
  f.dst = T;
  // (g1,g2)∘Δ: pull back along the first projection, cut with the diagonal,
  // then push the product of per-factor linear maps.
  f.push_k = [diag_k, SS, T](const KClass& x) {
    return pushforward_product_linear_k(diag_k * pullback_projection_k(x, SS, {0}), T);
  };
  f.push_chow = [diag_c, SS, T](const ChowClass& a) {
    return pushforward_product_linear(diag_c * pullback_projection(a, SS, {0}), T);
  };
  f.desc = "graph P" + std::to_string(k) + " -> " + T->describe();
  return f;
}

// ---------------------------------------------------------------------------
// Instances

std::string kind_name(Instance::Kind k) {
  switch (k) {
    case Instance::Kind::ZeroSection: return "zero_section";
    case Instance::Kind::Projection: return "projection";
    case Instance::Kind::LinearEmbedding: return "linear_embedding";
    case Instance::Kind::Composed: return "composed";
  }
  return "?";
}

std::string bundle_desc(const BundleData& E) {
  if (E.lines.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mult, L] : E.lines) {
    if (!first) os << (mult >= 0 ? " + " : " - ");
    if (first && mult < 0) os << "-";
    first = false;
    const int a = mult >= 0 ? mult : -mult;
    if (a != 1) os << a << "·";
    os << line_desc(L);
  }
  return os.str();
}

std::string instance_key(const Instance& inst) {
  std::ostringstream os;
  os << kind_name(inst.kind) << " ";
  switch (inst.kind) {
    case Instance::Kind::ZeroSection:
      os << Variety::projective_product(inst.base_dims)->describe() << " N="
         << lines_desc(inst.twists);
      break;
    case Instance::Kind::Projection:
      os << Variety::projective_product(inst.base_dims)->describe() << " m=" << inst.m;
      break;
    case Instance::Kind::LinearEmbedding:
      os << "P" << inst.k << "->P" << inst.n;
      break;
    case Instance::Kind::Composed:
      os << "P" << inst.k << "->P" << inst.n << "xP" << inst.e << "->P" << inst.n;
      break;
  }
  os << " x=" << bundle_desc(inst.x) << " l=" << inst.l;
  return os.str();
}

int required_level(const Instance& inst) {
  switch (inst.kind) {
    case Instance::Kind::ZeroSection: {
      int d = 0;
      for (int nj : inst.base_dims) d += nj;
      return d + static_cast<int>(inst.twists.size());
    }
    case Instance::Kind::Projection: {
      int d = inst.m;
      for (int nj : inst.base_dims) d += nj;
      return d;
    }
    case Instance::Kind::LinearEmbedding:
      return inst.n;
    case Instance::Kind::Composed:
      return std::max(inst.k, inst.n) + std::max({inst.e, inst.k, inst.n});
  }
  return 0;
}

VarietyPtr instance_source(const Instance& inst) {
  switch (inst.kind) {
    case Instance::Kind::ZeroSection:
      return Variety::projective_product(inst.base_dims);
    case Instance::Kind::Projection:
      return product_model(Variety::projective_product(inst.base_dims),
                           Variety::projective_space(inst.m));
    case Instance::Kind::LinearEmbedding:
    case Instance::Kind::Composed:
      return Variety::projective_space(inst.k);
  }
  return nullptr;
}

MorphismData instance_morphism(const Instance& inst) {
  switch (inst.kind) {
    case Instance::Kind::ZeroSection: {
      VarietyPtr base = Variety::projective_product(inst.base_dims);
      return zero_section_morphism(Variety::projective_bundle(base, inst.twists));
    }
    case Instance::Kind::Projection:
      return projection_morphism(Variety::projective_product(inst.base_dims), inst.m);
    case Instance::Kind::LinearEmbedding:
      return linear_embedding_morphism(inst.k, inst.n);
    case Instance::Kind::Composed: {
      // Direct map of the composite: the per-factor linear map P^k -> P^n.
      require((inst.n >= inst.k || inst.n == 0) && (inst.e >= inst.k || inst.e == 0) &&
                  (inst.n >= inst.k || inst.e >= inst.k),
              "composed shape must embed into at least one factor");
      return product_linear_morphism(Variety::projective_space(inst.k),
                                     Variety::projective_space(inst.n));
    }
  }
  throw PreconditionError("unknown instance kind");
}

// ---------------------------------------------------------------------------
// Core checks

VerificationReport verify_grr(const MorphismData& f, const KClass& x, int l,
                              const std::string& key) {
  require(l >= 0, "scaling level must be >= 0");
  require(x.variety() == f.src, "test class must live on the source");

  VerificationReport rep;
  rep.key = key;
  rep.kind = "grr";
  {
    std::ostringstream st;
    st << "(l!)^2·T_l^2·ch(f_*x)·Td = f_*((l!)^2·T_l^2·ch(x)·Td) for f: " << f.desc
       << ", x = " << x.str() << ", l = " << l;
    rep.statement = st.str();
  }

  const ChowClass lhs_u = chern_character_map(f.push_k(x)) * todd_tangent(f.dst);
  const ChowClass rhs_u = f.push_chow(chern_character_map(x) * todd_tangent(f.src));
  rep.rational_equal = (lhs_u == rhs_u);

  const Int fl = factorial(static_cast<unsigned>(l));
  const Int tl = todd_scale(static_cast<unsigned>(l));
  const Rat scale = Rat(fl * fl * tl * tl);
  trace_degrees(rep, lhs_u * scale, rhs_u * scale);
  return rep;
}

VerificationReport verify_instance(const Instance& inst, bool enforce_hypothesis) {
  const int need = required_level(inst);
  if (enforce_hypothesis && inst.l < need) {
    std::ostringstream os;
    os << "scaling level l=" << inst.l << " is below the hypothesis bound " << need
       << " for " << kind_name(inst.kind);
    throw PreconditionError(os.str());
  }
  const std::string key = inst.key.empty() ? instance_key(inst) : inst.key;

  if (inst.kind != Instance::Kind::Composed) {
    const MorphismData f = instance_morphism(inst);
    const KClass x = KClass::of_bundle(f.src, inst.x);
    VerificationReport rep = verify_grr(f, x, inst.l, key);
    rep.kind = kind_name(inst.kind);
    return rep;
  }

  // Composed: verify the graph-embedding stage, the projection stage, the
  // direct map, and that the two routes push forward identically.
  const MorphismData graph = graph_morphism(inst.k, inst.n, inst.e);
  const MorphismData proj =
      projection_morphism(Variety::projective_space(inst.n), inst.e);
  const MorphismData direct = instance_morphism(inst);
  require(graph.dst == proj.src, "composed stages must share the middle model");

  const KClass x = KClass::of_bundle(graph.src, inst.x);
  const VerificationReport rep_graph = verify_grr(graph, x, inst.l, key + "/stage-embed");
  const KClass y = graph.push_k(x);
  const VerificationReport rep_proj = verify_grr(proj, y, inst.l, key + "/stage-project");

  VerificationReport rep = verify_grr(direct, x, inst.l, key);
  rep.kind = kind_name(inst.kind);

  const bool routes_k = (proj.push_k(y) == direct.push_k(x));
  const ChowClass alpha = chern_character_map(x) * todd_tangent(graph.src);
  const bool routes_chow =
      (proj.push_chow(graph.push_chow(alpha)) == direct.push_chow(alpha));

  {
    std::ostringstream os;
    os << "stage embed: " << (rep_graph.pass ? "PASS" : "FAIL")
       << "; stage project: " << (rep_proj.pass ? "PASS" : "FAIL")
       << "; route agreement: K " << (routes_k ? "yes" : "NO") << ", Chow "
       << (routes_chow ? "yes" : "NO");
    rep.note = os.str();
  }
  rep.rational_equal =
      rep.rational_equal && rep_graph.rational_equal && rep_proj.rational_equal;
  rep.pass = rep.pass && rep_graph.pass && rep_proj.pass && routes_k && routes_chow;
  return rep;
}

// ---------------------------------------------------------------------------
// Graded parts

GradedParts graded_parts(const VarietyPtr& X, const KClass& x) {
  require(X != nullptr && x.variety() == X, "class must live on the given model");
  GradedParts g;
  const ChowClass ch = chern_character_map(x);
  const ChowClass td = todd_tangent(X);
  const ChowClass both = ch * td;
  for (int m = 0; m <= X->dim(); ++m) {
    const unsigned mu = static_cast<unsigned>(m);
    g.s.push_back(ch.component(m) * Rat(factorial(mu)));
    g.td.push_back(td.component(m) * Rat(todd_scale(mu)));
    g.ct.push_back(both.component(m) * Rat(todd_scale(mu)));
  }
  return g;
}

VerificationReport verify_graded_parts(const VarietyPtr& X, const KClass& x, int l,
                                       const std::string& key) {
  require(l >= X->dim(), "scaling level must be at least the dimension");

  VerificationReport rep;
  rep.key = key;
  rep.kind = "graded";
  {
    std::ostringstream st;
    st << "graded parts of x = " << x.str() << " on " << X->describe()
       << ": integrality, reconstruction of T_l·ch·Td at l = " << l
       << ", and ct from (s, td)";
    rep.statement = st.str();
  }

  const GradedParts g = graded_parts(X, x);
  const Int tl = todd_scale(static_cast<unsigned>(l));
  const ChowClass full =
      chern_character_map(x) * todd_tangent(X) * Rat(tl);

  bool all_equal = true;
  bool ratios_ok = true;
  for (int m = 0; m <= X->dim(); ++m) {
    const unsigned mu = static_cast<unsigned>(m);
    const Int tm = todd_scale(mu);

    // Integrality of the three parts at this degree.
    const bool parts_integral =
        g.s[m].is_integral() && g.td[m].is_integral() && g.ct[m].is_integral();
    rep.lhs_integral = rep.lhs_integral && parts_integral;

    // Reconstruction: (T_l / T_m) · ct_m must give the degree-m piece of
    // T_l·ch·Td, with an integer ratio.
    ratios_ok = ratios_ok && divides(tm, tl);
    const ChowClass recon = g.ct[m] * Rat(tl / tm);
    const ChowClass target = full.component(m);

    // Convolution from the finer parts, with integer ratios
    // T_m / (j!·T_{m-j}).
    ChowClass conv = ChowClass::zero(X);
    for (int j = 0; j <= m; ++j) {
      const Int den = factorial(static_cast<unsigned>(j)) *
                      todd_scale(static_cast<unsigned>(m - j));
      ratios_ok = ratios_ok && divides(den, tm);
      conv += g.s[j] * g.td[m - j] * Rat(tm / den);
    }

    DegreeLine line;
    line.degree = m;
    line.lhs = g.ct[m].str();
    line.rhs = target.str();
    line.equal = (recon == target) && (conv == g.ct[m]);
    line.lhs_integral = parts_integral;
    line.rhs_integral = target.is_integral();
    rep.rhs_integral = rep.rhs_integral && line.rhs_integral;
    all_equal = all_equal && line.equal;
    rep.degrees.push_back(std::move(line));
  }
  if (!ratios_ok) rep.note = "non-integral scale ratio";
  rep.pass = all_equal && ratios_ok && rep.lhs_integral && rep.rhs_integral;
  return rep;
}

VerificationReport verify_pappas_graded(const MorphismData& f, const KClass& x,
                                        const std::string& key) {
  require(x.variety() == f.src, "test class must live on the source");
  const int d = f.relative_dim();

  VerificationReport rep;
  rep.key = key;
  rep.kind = "pappas";
  {
    std::ostringstream st;
    if (d >= 0) {
      st << "(T_{n+" << d << "}/T_n)·ct_n(f_*x) = f_*(ct_{n+" << d << "}(x))";
    } else {
      st << "ct_n(f_*x) = (T_n/T_{n-" << -d << "})·f_*(ct_{n-" << -d
         << "}(x)), zero when n < " << -d;
    }
    st << " for f: " << f.desc << ", x = " << x.str();
    rep.statement = st.str();
  }

  const GradedParts gs = graded_parts(f.src, x);
  const GradedParts gd = graded_parts(f.dst, f.push_k(x));

  bool all_equal = true;
  bool ratios_ok = true;
  for (int n = 0; n <= f.dst->dim(); ++n) {
    ChowClass lhs = ChowClass::zero(f.dst), rhs = ChowClass::zero(f.dst);
    if (d >= 0) {
      const Int tn = todd_scale(static_cast<unsigned>(n));
      const Int tdn = todd_scale(static_cast<unsigned>(n + d));
      ratios_ok = ratios_ok && divides(tn, tdn);
      lhs = gd.ct[n] * Rat(tdn / tn);
      rhs = f.push_chow(gs.ct[n + d]);
    } else if (n + d < 0) {
      lhs = gd.ct[n];  // rhs stays zero: no graded part to push
    } else {
      const Int tn = todd_scale(static_cast<unsigned>(n));
      const Int tdn = todd_scale(static_cast<unsigned>(n + d));
      ratios_ok = ratios_ok && divides(tdn, tn);
      lhs = gd.ct[n];
      rhs = f.push_chow(gs.ct[n + d]) * Rat(tn / tdn);
    }

    DegreeLine line;
    line.degree = n;
    line.lhs = lhs.str();
    line.rhs = rhs.str();
    line.equal = (lhs == rhs);
    line.lhs_integral = lhs.is_integral();
    line.rhs_integral = rhs.is_integral();
    rep.lhs_integral = rep.lhs_integral && line.lhs_integral;
    rep.rhs_integral = rep.rhs_integral && line.rhs_integral;
    all_equal = all_equal && line.equal;
    rep.degrees.push_back(std::move(line));
  }
  if (!ratios_ok) rep.note = "non-integral scale ratio";
  rep.pass = all_equal && ratios_ok && rep.lhs_integral && rep.rhs_integral;
  return rep;
}

VerificationReport verify_single_scale(const MorphismData& f, const KClass& x, int l,
                                       const std::string& key) {
  require(x.variety() == f.src, "test class must live on the source");
  require(l >= std::max(f.src->dim(), f.dst->dim()),
          "scaling level must cover both source and target dimensions");

  VerificationReport rep;
  rep.key = key;
  rep.kind = "single_scale";
  {
    std::ostringstream st;
    st << "f_*(T_l·ch(x)·Td) = T_l·ch(f_*x)·Td for f: " << f.desc << ", x = " << x.str()
       << ", l = " << l;
    rep.statement = st.str();
  }

  const ChowClass lhs_u = chern_character_map(f.push_k(x)) * todd_tangent(f.dst);
  const ChowClass rhs_u = f.push_chow(chern_character_map(x) * todd_tangent(f.src));
  rep.rational_equal = (lhs_u == rhs_u);

  const Rat scale = Rat(todd_scale(static_cast<unsigned>(l)));
  trace_degrees(rep, lhs_u * scale, rhs_u * scale);
  return rep;
}

int smallest_integral_level(const MorphismData& f, const KClass& x, int hi) {
  require(hi >= 0, "exploration bound must be >= 0");
  const ChowClass lhs_u = chern_character_map(f.push_k(x)) * todd_tangent(f.dst);
  const ChowClass rhs_u = f.push_chow(chern_character_map(x) * todd_tangent(f.src));
  for (int l = 0; l <= hi; ++l) {
    const Int fl = factorial(static_cast<unsigned>(l));
    const Int tl = todd_scale(static_cast<unsigned>(l));
    const Rat scale = Rat(fl * fl * tl * tl);
    if ((lhs_u * scale).is_integral() && (rhs_u * scale).is_integral()) return l;
  }
  return -1;
}

}  // namespace igrr
