#pragma once

// Verification of the scaled Riemann-Roch identities on concrete proper
// maps: zero sections of projectivized bundles, product projections, linear
// embeddings, and composites routed through a graph embedding followed by a
// projection.  Every identity is checked three ways: the unscaled rational
// equality (an independent oracle), the scaled per-degree equality, and
// integrality of both scaled sides.  A violated hypothesis (scaling level
// below its stated bound, malformed shape) raises PreconditionError rather
// than producing a FAIL report.

#include <functional>
#include <string>
#include <vector>

#include "igrr/chow.hpp"
#include "igrr/ktheory.hpp"
#include "igrr/report.hpp"

namespace igrr {

// A proper map packaged with its pushforwards in both theories.
struct MorphismData {
  VarietyPtr src, dst;
  std::function<KClass(const KClass&)> push_k;
  std::function<ChowClass(const ChowClass&)> push_chow;
  std::string desc;

  int relative_dim() const { return src->dim() - dst->dim(); }
};

MorphismData identity_morphism(const VarietyPtr& X);
// Zero section X -> P_X(N⊕1) of a bundle model.
MorphismData zero_section_morphism(const VarietyPtr& P);
// Projection X × P^m -> X from a product model.
MorphismData projection_morphism(const VarietyPtr& X, int m);
// Product of per-factor linear embeddings / collapses S -> T.
MorphismData product_linear_morphism(const VarietyPtr& S, const VarietyPtr& T);
// Linear embedding P^k ⊂ P^n (k <= n).
MorphismData linear_embedding_morphism(int k, int n);
// Closed map P^k -> P^n × P^e through the diagonal, (g1, g2)∘Δ, with each
// g_i a linear embedding (dim >= k) or the collapse to P^0 (dim == 0); at
// least one factor must embed.
MorphismData graph_morphism(int k, int n, int e);

// One verification instance, as read from a fixture file or built in tests.
struct Instance {
  enum class Kind { ZeroSection, Projection, LinearEmbedding, Composed };

  Kind kind = Kind::ZeroSection;
  int l = 0;                             // scaling level
  std::string key;                       // report key; derived when empty
  std::vector<int> base_dims;            // factors of the base / source X
  std::vector<std::vector<int>> twists;  // zero section: the lines of N
  int m = 0;                             // projection: fiber dimension
  int k = 0, n = 0, e = 0;               // embedding / composed shape
  BundleData x;                          // test class on the source
};

std::string kind_name(Instance::Kind k);
std::string bundle_desc(const BundleData& E);
std::string instance_key(const Instance& inst);

// Smallest scaling level admitted by the hypothesis of the instance's
// statement: dim P for zero sections, dim(X × P^m) for projections, n for
// P^k ⊂ P^n, and max(k,n) + max(e,k,n) for composites.
int required_level(const Instance& inst);
VarietyPtr instance_source(const Instance& inst);
MorphismData instance_morphism(const Instance& inst);

// Core identity at level l >= 0:
//   (l!)^2·T_l^2 · ch(f_* x) · Td(T_dst)  =  f_*((l!)^2·T_l^2 · ch(x) · Td(T_src))
// with both scaled sides integral; the unscaled equality is recorded as
// rational_equal.  The caller enforces any level hypothesis.
VerificationReport verify_grr(const MorphismData& f, const KClass& x, int l,
                              const std::string& key);

// Kind-dispatched check.  Composed instances verify both stages, the direct
// map, and agreement of the two routes; `pass` is their conjunction.
// Throws PreconditionError when l < required_level (unless disabled).
VerificationReport verify_instance(const Instance& inst,
                                   bool enforce_hypothesis = true);

// Integral graded parts on X, for m = 0..dim X:
//   s[m]  = m!  · ch_m(x),
//   td[m] = T_m · Td_m(T_X),
//   ct[m] = T_m · (ch(x)·Td(T_X))_m.
struct GradedParts {
  std::vector<ChowClass> s, td, ct;
};
GradedParts graded_parts(const VarietyPtr& X, const KClass& x);

// Integrality of every part; reconstruction of T_l·ch(x)·Td(T_X) from the
// ct parts via the integral ratios T_l/T_m; and the convolution
// ct[m] = sum_j (T_m / (j!·T_{m-j})) · s[j]·td[m-j], again with integral
// ratios.  Requires l >= dim X.
VerificationReport verify_graded_parts(const VarietyPtr& X, const KClass& x,
                                       int l, const std::string& key);

// Degreewise pushforward comparison across f with d = dim src - dim dst:
//   d >= 0:  (T_{d+n}/T_n) · ct_n(f_* x) = f_*(ct_{d+n}(x))
//   d <  0:  ct_n(f_* x) = (T_n/T_{d+n}) · f_*(ct_{d+n}(x)), and both sides
//            vanish when d + n < 0.
// All scale ratios must be integers.
VerificationReport verify_pappas_graded(const MorphismData& f, const KClass& x,
                                        const std::string& key);

// Single-scale variant at one level l >= max(dim src, dim dst):
//   f_*(T_l · ch(x)·Td(T_src)) = T_l · ch(f_* x)·Td(T_dst),
// both sides integral.
VerificationReport verify_single_scale(const MorphismData& f, const KClass& x,
                                       int l, const std::string& key);

// Smallest level in [0, hi] at which both scaled sides of verify_grr are
// integral, or -1 if none is.  (The equality itself holds at every level;
// integrality is what the level buys.)
int smallest_integral_level(const MorphismData& f, const KClass& x, int hi);

}  // namespace igrr
