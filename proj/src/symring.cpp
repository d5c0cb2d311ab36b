#include "igrr/symring.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

namespace igrr {

namespace {

const char* kRootLetter[] = {"a", "b", "u", "v", "w", "t", "y", "z"};

std::string chern_var_name(size_t nblocks, size_t block, int i) {
  std::string n = "c" + std::to_string(i);
  if (nblocks > 1) n += "(E" + std::to_string(block + 1) + ")";
  return n;
}

void require_nonnegative(const std::vector<int>& shape, const char* what) {
  for (int s : shape)
    if (s < 0) throw PreconditionError(std::string(what) + ": negative block size");
}

// Elementary symmetric polynomial of an explicit variable list.
Poly elementary_of(const std::vector<Poly>& vars, int i, const RingPtr& ring) {
  if (i == 0) return Poly::constant(ring, 1);
  if (i < 0 || i > static_cast<int>(vars.size())) return Poly::zero(ring);
  std::vector<Poly> e(static_cast<size_t>(i) + 1, Poly::zero(ring));
  e[0] = Poly::constant(ring, 1);
  for (size_t j = 0; j < vars.size(); ++j) {
    for (int k = std::min<int>(i, static_cast<int>(j) + 1); k >= 1; --k)
      e[k] += e[k - 1] * vars[j];
  }
  return e[static_cast<size_t>(i)];
}

// All size-p index subsets of {0..n-1}, passed to fn as sorted vectors.
template <typename Fn>
void for_each_subset(int n, int p, Fn&& fn) {
  if (p < 0 || p > n) return;
  std::vector<int> idx(p);
  for (int i = 0; i < p; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = p - 1;
    while (i >= 0 && idx[i] == n - p + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < p; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Poly ChernRing::c(size_t block, int i) const {
  if (i == 0) return one();
  if (i < 0) throw PreconditionError("Chern class index must be nonnegative");
  if (block >= ranks.size()) throw PreconditionError("Chern ring: no such block");
  if (i > ranks[block]) return zero();
  return Poly::variable(ring, offset[block] + static_cast<size_t>(i) - 1);
}

Poly SplitRing::root(size_t block, int i) const {
  if (block >= sizes.size() || i < 1 || i > sizes[block])
    throw PreconditionError("split ring: no such root");
  return Poly::variable(ring, offset[block] + static_cast<size_t>(i) - 1);
}

Poly SplitRing::elementary(size_t block, int i) const {
  if (block >= sizes.size()) throw PreconditionError("split ring: no such block");
  std::vector<Poly> vars;
  for (int j = 1; j <= sizes[block]; ++j) vars.push_back(root(block, j));
  return elementary_of(vars, i, ring);
}

ChernRing chern_basis_ring(const std::vector<int>& ranks, int trunc) {
  require_nonnegative(ranks, "chern_basis_ring");
  if (trunc < 0) throw PreconditionError("chern_basis_ring: negative truncation");
  static std::mutex mu;
  static std::map<std::pair<std::vector<int>, int>, ChernRing> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(ranks, trunc);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  ChernRing cr;
  cr.ranks = ranks;
  cr.trunc = trunc;
  std::vector<RingSpec::Var> vars;
  for (size_t b = 0; b < ranks.size(); ++b) {
    cr.offset.push_back(vars.size());
    for (int i = 1; i <= ranks[b]; ++i)
      vars.push_back({chern_var_name(ranks.size(), b, i), i, 0, {}});
  }
  cr.ring = make_ring(std::move(vars), trunc);
  cache.emplace(std::move(key), cr);
  return cr;
}

SplitRing split_root_ring(const std::vector<int>& sizes, int trunc) {
  require_nonnegative(sizes, "split_root_ring");
  if (trunc < 0) throw PreconditionError("split_root_ring: negative truncation");
  if (sizes.size() > sizeof(kRootLetter) / sizeof(kRootLetter[0]))
    throw PreconditionError("split_root_ring: too many blocks");
  static std::mutex mu;
  static std::map<std::pair<std::vector<int>, int>, SplitRing> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(sizes, trunc);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  SplitRing sr;
  sr.sizes = sizes;
  sr.trunc = trunc;
  std::vector<RingSpec::Var> vars;
  for (size_t b = 0; b < sizes.size(); ++b) {
    sr.offset.push_back(vars.size());
    for (int i = 1; i <= sizes[b]; ++i)
      vars.push_back({std::string(kRootLetter[b]) + std::to_string(i), 1, 0, {}});
  }
  sr.ring = make_ring(std::move(vars), trunc);
  cache.emplace(std::move(key), sr);
  return sr;
}

Rat todd_coefficient(unsigned n) {
  Rat b = bernoulli(n);
  if (n % 2 == 1) b = -b;
  return b / Rat(factorial(n));
}

Poly exp_truncated(const Poly& x, int l) {
  if (l < 0) throw PreconditionError("exp_truncated: negative order");
  if (x.constant_term() != 0)
    throw PreconditionError("exp_truncated: argument must have zero constant term");
  Poly acc = Poly::constant(x.ring(), 1);
  Poly pw = acc;
  for (int n = 1; n <= l; ++n) {
    pw = pw * x;
    if (pw.is_zero()) break;
    acc += pw * make_rat(1, factorial(static_cast<unsigned>(n)));
  }
  return acc;
}

Poly exp_full(const Poly& x) { return exp_truncated(x, x.ring()->trunc); }

namespace {

// Power sums p_1..p_d of a rank-r bundle in the Chern basis, via Newton's
// identities: p_m = sum_{i=1}^{m-1} (-1)^{i-1} c_i p_{m-i} + (-1)^{m-1} m c_m.
std::vector<Poly> power_sums(const ChernRing& cr, int r, int d) {
  std::vector<Poly> p(static_cast<size_t>(d) + 1, cr.zero());
  for (int m = 1; m <= d; ++m) {
    Poly pm = cr.zero();
    for (int i = 1; i < m; ++i) {
      Poly t = cr.c(0, i) * p[static_cast<size_t>(m - i)];
      pm += (i % 2 == 1) ? t : -t;
    }
    Poly top = cr.c(0, m) * Rat(m);
    pm += (m % 2 == 1) ? top : -top;
    p[static_cast<size_t>(m)] = pm;
  }
  (void)r;
  return p;
}

std::vector<Rat> series_mul(const std::vector<Rat>& a, const std::vector<Rat>& b, int d) {
  std::vector<Rat> out(static_cast<size_t>(d) + 1, Rat(0));
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d && j <= d; ++j)
      if (i < static_cast<int>(a.size()) && j < static_cast<int>(b.size()))
        out[static_cast<size_t>(i + j)] += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
  return out;
}

// Coefficients of log(x/(1-e^{-x})) up to degree d.
std::vector<Rat> todd_log_series(int d) {
  std::vector<Rat> u(static_cast<size_t>(d) + 1, Rat(0));
  for (int n = 1; n <= d; ++n) u[static_cast<size_t>(n)] = todd_coefficient(static_cast<unsigned>(n));
  std::vector<Rat> kappa(static_cast<size_t>(d) + 1, Rat(0));
  std::vector<Rat> upow{Rat(1)};  // u^0
  for (int k = 1; k <= d; ++k) {
    upow = series_mul(upow, u, d);
    Rat sign = (k % 2 == 1) ? Rat(1) : Rat(-1);
    for (int n = 0; n <= d; ++n) kappa[static_cast<size_t>(n)] += sign * upow[static_cast<size_t>(n)] / Rat(k);
  }
  return kappa;
}

Poly todd_signed(int r, int d, int sign) {
  ChernRing cr = chern_basis_ring({r}, d);
  std::vector<Poly> p = power_sums(cr, r, d);
  std::vector<Rat> kappa = todd_log_series(d);
  Poly logtd = cr.zero();
  for (int m = 1; m <= d; ++m) logtd += p[static_cast<size_t>(m)] * kappa[static_cast<size_t>(m)];
  if (sign < 0) logtd = -logtd;
  return exp_full(logtd);
}

template <typename K, typename Fn>
Poly memoized(std::map<K, Poly>& cache, std::mutex& mu, const K& key, Fn&& compute) {
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Poly v = compute();
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(v)).first->second;
}

void require_rank_trunc(int r, int d, const char* what) {
  if (r < 0) throw PreconditionError(std::string(what) + ": negative rank");
  if (d < 0) throw PreconditionError(std::string(what) + ": negative truncation");
}

}  // namespace

Poly chern_character(int r, int d) {
  require_rank_trunc(r, d, "chern_character");
  static std::mutex mu;
  static std::map<std::pair<int, int>, Poly> cache;
  return memoized(cache, mu, std::make_pair(r, d), [&] {
    ChernRing cr = chern_basis_ring({r}, d);
    std::vector<Poly> p = power_sums(cr, r, d);
    Poly ch = Poly::constant(cr.ring, r);
    for (int m = 1; m <= d; ++m)
      ch += p[static_cast<size_t>(m)] * make_rat(1, factorial(static_cast<unsigned>(m)));
    return ch;
  });
}

Poly todd_class(int r, int d) {
  require_rank_trunc(r, d, "todd_class");
  static std::mutex mu;
  static std::map<std::pair<int, int>, Poly> cache;
  return memoized(cache, mu, std::make_pair(r, d), [&] { return todd_signed(r, d, +1); });
}

Poly todd_inverse(int r, int d) {
  require_rank_trunc(r, d, "todd_inverse");
  static std::mutex mu;
  static std::map<std::pair<int, int>, Poly> cache;
  return memoized(cache, mu, std::make_pair(r, d), [&] { return todd_signed(r, d, -1); });
}

namespace {

void require_matching_shape(const ChernRing& cr, const SplitRing& sr, const char* what) {
  bool ok = cr.ranks.size() == sr.sizes.size() && cr.trunc == sr.trunc;
  if (ok)
    for (size_t b = 0; b < cr.ranks.size(); ++b) ok = ok && cr.ranks[b] == sr.sizes[b];
  if (!ok) throw PreconditionError(std::string(what) + ": ring shapes do not match");
}

}  // namespace

Poly elementary_expand(const ChernRing& cr, const Poly& x, const SplitRing& sr) {
  require_matching_shape(cr, sr, "elementary_expand");
  if (x.ring() != cr.ring)
    throw PreconditionError("elementary_expand: class does not live in the given Chern ring");
  std::vector<Poly> images;
  for (size_t b = 0; b < cr.ranks.size(); ++b)
    for (int i = 1; i <= cr.ranks[b]; ++i) images.push_back(sr.elementary(b, i));
  return x.map_vars(images, sr.ring);
}

Poly express_in_elementary(const SplitRing& sr, const Poly& sym, const ChernRing& cr) {
  require_matching_shape(cr, sr, "express_in_elementary");
  if (sym.ring() != sr.ring)
    throw PreconditionError("express_in_elementary: class does not live in the given split ring");

  // Symmetry check: invariance under adjacent transpositions per block.
  const size_t nv = sr.ring->vars.size();
  for (size_t b = 0; b < sr.sizes.size(); ++b) {
    for (int i = 1; i + 1 <= sr.sizes[b]; ++i) {
      std::vector<Poly> images;
      images.reserve(nv);
      for (size_t v = 0; v < nv; ++v) images.push_back(Poly::variable(sr.ring, v));
      std::swap(images[sr.offset[b] + static_cast<size_t>(i) - 1],
                images[sr.offset[b] + static_cast<size_t>(i)]);
      if (sym.map_vars(images, sr.ring) != sym)
        throw PreconditionError("express_in_elementary: input is not symmetric within blocks");
    }
  }

  Poly rem = sym;
  Poly out = cr.zero();
  size_t guard = 0;
  while (!rem.is_zero()) {
    if (++guard > 1000000)
      throw PreconditionError("express_in_elementary: elimination failed to terminate");
    auto it = rem.terms().rbegin();  // lex-greatest monomial
    const Expo& e = it->first;
    Rat coef = it->second;
    Expo ce(cr.ring->vars.size(), 0);
    for (size_t b = 0; b < sr.sizes.size(); ++b) {
      for (int i = 0; i < sr.sizes[b]; ++i) {
        int lam = e[sr.offset[b] + static_cast<size_t>(i)];
        int lam_next = (i + 1 < sr.sizes[b]) ? e[sr.offset[b] + static_cast<size_t>(i) + 1] : 0;
        if (lam < lam_next)
          throw PreconditionError("express_in_elementary: input is not symmetric within blocks");
        ce[cr.offset[b] + static_cast<size_t>(i)] = lam - lam_next;
      }
    }
    Poly mono = Poly::from_terms(cr.ring, TermMap{{ce, coef}});
    out += mono;
    rem -= elementary_expand(cr, mono, sr);
  }
  return out;
}

WhitneyProduct whitney_product(const ChernRing& ra, const Poly& a, const ChernRing& rb,
                               const Poly& b) {
  if (ra.ranks.size() != 1 || rb.ranks.size() != 1)
    throw PreconditionError("whitney_product: operands must be single-bundle classes");
  if (ra.trunc != rb.trunc)
    throw PreconditionError("whitney_product: mismatched truncation degrees");
  if (a.constant_term() != 1 || b.constant_term() != 1)
    throw PreconditionError("whitney_product: operands must be total Chern classes");
  ChernRing joint = chern_basis_ring({ra.ranks[0], rb.ranks[0]}, ra.trunc);
  Poly ea = embed_block(ra, a, joint, 0);
  Poly eb = embed_block(rb, b, joint, 1);
  return {joint, ea * eb};
}

Poly embed_block(const ChernRing& src, const Poly& x, const ChernRing& joint, size_t block) {
  if (src.ranks.size() != 1)
    throw PreconditionError("embed_block: source must be a single-bundle ring");
  if (block >= joint.ranks.size() || joint.ranks[block] != src.ranks[0] ||
      joint.trunc != src.trunc)
    throw PreconditionError("embed_block: incompatible target block");
  if (x.ring() != src.ring)
    throw PreconditionError("embed_block: class does not live in the source ring");
  std::vector<Poly> images;
  for (int i = 1; i <= src.ranks[0]; ++i) images.push_back(joint.c(block, i));
  return x.map_vars(images, joint.ring);
}

Poly dual_chern(const ChernRing& cr, const Poly& x) {
  if (x.ring() != cr.ring)
    throw PreconditionError("dual_chern: class does not live in the given ring");
  std::vector<Poly> images;
  for (size_t b = 0; b < cr.ranks.size(); ++b)
    for (int i = 1; i <= cr.ranks[b]; ++i) {
      Poly v = cr.c(b, i);
      images.push_back(i % 2 == 1 ? -v : v);
    }
  return x.map_vars(images, cr.ring);
}

Poly exterior_chern(int p, int r, int d) {
  require_rank_trunc(r, d, "exterior_chern");
  if (p < 0 || p > r) throw PreconditionError("exterior_chern: requires 0 <= p <= rank");
  SplitRing sr = split_root_ring({r}, d);
  Poly total = sr.one();
  for_each_subset(r, p, [&](const std::vector<int>& idx) {
    Poly lin = sr.zero();
    for (int i : idx) lin += sr.root(0, i + 1);
    total = total * (sr.one() + lin);
  });
  return express_in_elementary(sr, total, chern_basis_ring({r}, d));
}

VerificationReport verify_exp_product_rule(int l, int d) {
  if (l < 0 || d < 0) throw PreconditionError("verify_exp_product_rule: l, d must be >= 0");
  SplitRing sr = split_root_ring({1, 1}, d);
  Poly a = sr.root(0, 1), b = sr.root(1, 1);
  Poly err = exp_truncated(a, l) * exp_truncated(b, l) - exp_truncated(a + b, l);

  VerificationReport rep;
  rep.key = "exp-rule l=" + std::to_string(l) + " d=" + std::to_string(d);
  rep.kind = "exp_product_rule";
  rep.statement = "exp^(" + std::to_string(l) + ")(a)·exp^(" + std::to_string(l) +
                  ")(b) - exp^(" + std::to_string(l) + ")(a+b) vanishes below degree " +
                  std::to_string(l + 1) + " with coefficients in Z[1/" + std::to_string(l) + "!]";
  Int lf = factorial(static_cast<unsigned>(l));
  bool ok = true;
  for (int k = 0; k <= d; ++k) {
    Poly comp = err.component(k);
    if (comp.is_zero()) continue;
    DegreeLine line;
    line.degree = k;
    line.lhs = comp.str();
    line.rhs = "0 required below degree " + std::to_string(l + 1);
    line.equal = k > l;
    line.lhs_integral = true;
    for (const auto& [e, c] : comp.terms())
      line.lhs_integral = line.lhs_integral && denominator_in(c, lf);
    ok = ok && line.equal && line.lhs_integral;
    rep.degrees.push_back(std::move(line));
  }
  rep.pass = ok;
  return rep;
}

namespace {

// Fill per-degree trace lines comparing two classes in the same ring.
void trace_degrees(VerificationReport& rep, const Poly& lhs, const Poly& rhs, int d) {
  bool equal = true, li = true, ri = true;
  for (int k = 0; k <= d; ++k) {
    Poly a = lhs.component(k), b = rhs.component(k);
    DegreeLine line;
    line.degree = k;
    line.lhs = a.str();
    line.rhs = b.str();
    line.equal = a == b;
    line.lhs_integral = a.is_integral();
    line.rhs_integral = b.is_integral();
    equal = equal && line.equal;
    li = li && line.lhs_integral;
    ri = ri && line.rhs_integral;
    rep.degrees.push_back(std::move(line));
  }
  rep.lhs_integral = li;
  rep.rhs_integral = ri;
  rep.pass = equal && li && ri && rep.rational_equal;
}

}  // namespace

VerificationReport tensor_character_check(int r1, int r2, int d, int l) {
  require_rank_trunc(r1, d, "tensor_character_check");
  require_rank_trunc(r2, d, "tensor_character_check");
  if (l < d) throw PreconditionError("tensor_character_check: requires l >= d");
  SplitRing sr = split_root_ring({r1, r2}, d);
  Poly chA = sr.zero(), chB = sr.zero(), chT = sr.zero();
  for (int i = 1; i <= r1; ++i) chA += exp_full(sr.root(0, i));
  for (int j = 1; j <= r2; ++j) chB += exp_full(sr.root(1, j));
  for (int i = 1; i <= r1; ++i)
    for (int j = 1; j <= r2; ++j) chT += exp_full(sr.root(0, i) + sr.root(1, j));

  Rat lf(factorial(static_cast<unsigned>(l)));
  Poly lhs = chT * (lf * lf);
  Poly rhs = (chA * lf) * (chB * lf);

  ChernRing cr = chern_basis_ring({r1, r2}, d);
  Poly elhs = express_in_elementary(sr, lhs, cr);
  Poly erhs = express_in_elementary(sr, rhs, cr);

  VerificationReport rep;
  rep.key = "tensor r=(" + std::to_string(r1) + "," + std::to_string(r2) + ") d=" +
            std::to_string(d) + " l=" + std::to_string(l);
  rep.kind = "tensor_character";
  rep.statement = "l!^2·ch(E1⊗E2) = (l!·ch E1)·(l!·ch E2) in the rank-(" + std::to_string(r1) +
                  "," + std::to_string(r2) + ") Chern basis, degree <= " + std::to_string(d);
  rep.rational_equal = chT == chA * chB;
  trace_degrees(rep, elhs, erhs, d);
  return rep;
}

VerificationReport verify_exterior_identity(int r, int d, int l) {
  require_rank_trunc(r, d, "verify_exterior_identity");
  if (r != d)
    throw PreconditionError("verify_exterior_identity: implemented for rank equal to truncation");
  if (l < d) throw PreconditionError("verify_exterior_identity: requires l >= d");
  SplitRing sr = split_root_ring({r}, d);

  Poly lhs_u = sr.zero();
  for (int p = 0; p <= r; ++p) {
    Poly part = sr.zero();
    for_each_subset(r, p, [&](const std::vector<int>& idx) {
      Poly lin = sr.zero();
      for (int i : idx) lin -= sr.root(0, i + 1);
      part += exp_full(lin);
    });
    lhs_u += (p % 2 == 0) ? part : -part;
  }

  Poly td = sr.one();
  for (int i = 1; i <= r; ++i) {
    Poly q = sr.zero();
    Poly pw = sr.one();
    for (int n = 0; n <= d; ++n) {
      q += pw * todd_coefficient(static_cast<unsigned>(n));
      pw = pw * sr.root(0, i);
    }
    td = td * q;
  }
  Poly rhs_u = td.inverse() * sr.elementary(0, r);

  Rat tl(todd_scale(static_cast<unsigned>(l)));
  ChernRing cr = chern_basis_ring({r}, d);
  Poly elhs = express_in_elementary(sr, lhs_u * tl, cr);
  Poly erhs = express_in_elementary(sr, rhs_u * tl, cr);

  VerificationReport rep;
  rep.key = "exterior r=" + std::to_string(r) + " d=" + std::to_string(d) + " l=" +
            std::to_string(l);
  rep.kind = "exterior_identity";
  rep.statement =
      "T_l·sum_p (-1)^p ch(Λ^p E^dual) = T_l·Td(E)^{-1}·c_" + std::to_string(r) +
      "(E), rank " + std::to_string(r) + ", degree <= " + std::to_string(d);
  rep.rational_equal = lhs_u == rhs_u;
  trace_degrees(rep, elhs, erhs, d);
  return rep;
}

VerificationReport additivity_check(int r1, int r2, int d, int l) {
  require_rank_trunc(r1, d, "additivity_check");
  require_rank_trunc(r2, d, "additivity_check");
  if (l < d) throw PreconditionError("additivity_check: requires l >= d");
  SplitRing sr = split_root_ring({r1, r2}, d);

  std::vector<Poly> all_roots;
  for (int i = 1; i <= r1; ++i) all_roots.push_back(sr.root(0, i));
  for (int j = 1; j <= r2; ++j) all_roots.push_back(sr.root(1, j));

  Poly ch_sum = chern_character(r1 + r2, d);
  std::vector<Poly> images;
  for (int i = 1; i <= r1 + r2; ++i) images.push_back(elementary_of(all_roots, i, sr.ring));
  Rat lf(factorial(static_cast<unsigned>(l)));
  Poly lhs = ch_sum.map_vars(images, sr.ring) * lf;

  std::vector<Poly> img1, img2;
  for (int i = 1; i <= r1; ++i) img1.push_back(sr.elementary(0, i));
  for (int j = 1; j <= r2; ++j) img2.push_back(sr.elementary(1, j));
  Poly rhs = chern_character(r1, d).map_vars(img1, sr.ring) * lf +
             chern_character(r2, d).map_vars(img2, sr.ring) * lf;

  ChernRing cr = chern_basis_ring({r1, r2}, d);
  Poly elhs = express_in_elementary(sr, lhs, cr);
  Poly erhs = express_in_elementary(sr, rhs, cr);

  VerificationReport rep;
  rep.key = "additivity r=(" + std::to_string(r1) + "," + std::to_string(r2) + ") d=" +
            std::to_string(d) + " l=" + std::to_string(l);
  rep.kind = "character_additivity";
  rep.statement = "l!·ch(E1⊕E2) = l!·ch(E1) + l!·ch(E2), ranks (" + std::to_string(r1) + "," +
                  std::to_string(r2) + "), degree <= " + std::to_string(d);
  rep.rational_equal = lhs * make_rat(1, factorial(static_cast<unsigned>(l))) ==
                       rhs * make_rat(1, factorial(static_cast<unsigned>(l)));
  trace_degrees(rep, elhs, erhs, d);
  return rep;
}

VerificationReport multiplicativity_check(int r1, int r2, int d, int l) {
  require_rank_trunc(r1, d, "multiplicativity_check");
  require_rank_trunc(r2, d, "multiplicativity_check");
  if (l < d) throw PreconditionError("multiplicativity_check: requires l >= d");
  SplitRing sr = split_root_ring({r1, r2}, d);

  std::vector<Poly> all_roots;
  for (int i = 1; i <= r1; ++i) all_roots.push_back(sr.root(0, i));
  for (int j = 1; j <= r2; ++j) all_roots.push_back(sr.root(1, j));
  std::vector<Poly> images;
  for (int i = 1; i <= r1 + r2; ++i) images.push_back(elementary_of(all_roots, i, sr.ring));

  Rat tl(todd_scale(static_cast<unsigned>(l)));
  Poly lhs = todd_class(r1 + r2, d).map_vars(images, sr.ring) * (tl * tl);

  std::vector<Poly> img1, img2;
  for (int i = 1; i <= r1; ++i) img1.push_back(sr.elementary(0, i));
  for (int j = 1; j <= r2; ++j) img2.push_back(sr.elementary(1, j));
  Poly rhs = (todd_class(r1, d).map_vars(img1, sr.ring) * tl) *
             (todd_class(r2, d).map_vars(img2, sr.ring) * tl);

  ChernRing cr = chern_basis_ring({r1, r2}, d);
  Poly elhs = express_in_elementary(sr, lhs, cr);
  Poly erhs = express_in_elementary(sr, rhs, cr);

  VerificationReport rep;
  rep.key = "multiplicativity r=(" + std::to_string(r1) + "," + std::to_string(r2) + ") d=" +
            std::to_string(d) + " l=" + std::to_string(l);
  rep.kind = "todd_multiplicativity";
  rep.statement = "T_l^2·Td(E1⊕E2) = (T_l·Td E1)·(T_l·Td E2), ranks (" + std::to_string(r1) +
                  "," + std::to_string(r2) + "), degree <= " + std::to_string(d);
  rep.rational_equal = lhs * make_rat(1, tl.get_num() * tl.get_num()) ==
                       rhs * make_rat(1, tl.get_num() * tl.get_num());
  trace_degrees(rep, elhs, erhs, d);
  return rep;
}

VerificationReport todd_inverse_check(int r, int d, int l) {
  require_rank_trunc(r, d, "todd_inverse_check");
  if (l < d) throw PreconditionError("todd_inverse_check: requires l >= d");
  ChernRing cr = chern_basis_ring({r}, d);
  Rat tl(todd_scale(static_cast<unsigned>(l)));
  Poly f = todd_class(r, d) * tl;
  Poly g = todd_inverse(r, d) * tl;
  Poly lhs = f * g;
  Poly rhs = Poly::constant(cr.ring, tl * tl);

  VerificationReport rep;
  rep.key = "todd-inverse r=" + std::to_string(r) + " d=" + std::to_string(d) + " l=" +
            std::to_string(l);
  rep.kind = "todd_inverse";
  rep.statement = "(T_l·Td E)·(T_l·Td(E)^{-1}) = T_l^2, rank " + std::to_string(r) +
                  ", degree <= " + std::to_string(d);
  rep.rational_equal = true;
  trace_degrees(rep, lhs, rhs, d);
  rep.pass = rep.pass && f.is_integral() && g.is_integral();
  if (!f.is_integral()) rep.lhs_integral = false;
  if (!g.is_integral()) rep.rhs_integral = false;
  return rep;
}

}  // namespace igrr
