#pragma once

// Truncated rings of symmetric functions — the universal Chern-class
// calculus.  Classes live either in a "Chern basis" ring (variables
// c_1..c_r per bundle block, deg c_i = i, all homogeneous parts of degree
// > d discarded) or in a "split ring" of formal Chern roots (one block of
// degree-1 roots per bundle, classes symmetric per block).  Universal
// classes are computed with power-sum intermediates (Newton's identities)
// and can be cross-converted and checked against direct root expansions.

#include <vector>

#include "igrr/poly.hpp"
#include "igrr/report.hpp"

namespace igrr {

struct ChernRing {
  RingPtr ring;
  std::vector<int> ranks;       // Chern variables per block
  std::vector<size_t> offset;   // variable index of c_1 of each block
  int trunc = 0;

  // c_i of a block, 1-based; i > rank gives 0, i == 0 gives 1.
  Poly c(size_t block, int i) const;
  Poly one() const { return Poly::constant(ring, 1); }
  Poly zero() const { return Poly::zero(ring); }
};

struct SplitRing {
  RingPtr ring;
  std::vector<int> sizes;      // roots per block
  std::vector<size_t> offset;  // variable index of the first root per block
  int trunc = 0;

  Poly root(size_t block, int i) const;  // 1-based
  // Elementary symmetric polynomial sigma_i of one block's roots.
  Poly elementary(size_t block, int i) const;
  Poly one() const { return Poly::constant(ring, 1); }
  Poly zero() const { return Poly::zero(ring); }
};

// Canonical (cached) rings: calls with equal parameters return rings backed
// by the same RingSpec, so their classes can be combined and compared.
ChernRing chern_basis_ring(const std::vector<int>& ranks, int trunc);
SplitRing split_root_ring(const std::vector<int>& sizes, int trunc);

// n-th coefficient of the Todd series x/(1-e^{-x}) = sum (-1)^n B_n x^n/n!.
Rat todd_coefficient(unsigned n);

// Truncated exponential  exp^(l)(x) = sum_{n=0}^{l} x^n/n!  (x must have no
// constant term).  exp_full sums until the ring truncation kills the tail.
Poly exp_truncated(const Poly& x, int l);
Poly exp_full(const Poly& x);

// Universal classes of a rank-r bundle in the single-block Chern basis ring
// chern_basis_ring({r}, d); memoized per (r, d).
Poly chern_character(int r, int d);  // includes the degree-0 part r
Poly todd_class(int r, int d);
Poly todd_inverse(int r, int d);  // the inverse Todd class, same ring

// Substitute c_i -> sigma_i(roots of block i): Chern basis -> split ring.
// Requires matching block ranks/sizes and equal truncation.
Poly elementary_expand(const ChernRing& cr, const Poly& x, const SplitRing& sr);

// Inverse of elementary_expand by leading-monomial elimination.  Rejects
// input that is not symmetric per block (PreconditionError).
Poly express_in_elementary(const SplitRing& sr, const Poly& sym, const ChernRing& cr);

// Whitney product: total Chern classes of two bundles (constant term 1,
// equal truncation) multiplied in the joint two-block Chern basis ring.
struct WhitneyProduct {
  ChernRing ring;  // blocks: {rank of first, rank of second}
  Poly product;
};
WhitneyProduct whitney_product(const ChernRing& ra, const Poly& a, const ChernRing& rb,
                               const Poly& b);

// Send a single-block Chern-basis class into block `block` of a joint ring.
Poly embed_block(const ChernRing& src, const Poly& x, const ChernRing& joint, size_t block);

// c_i -> (-1)^i c_i in every block (Chern classes of the dual bundle).
Poly dual_chern(const ChernRing& cr, const Poly& x);

// Total Chern class of the p-th exterior power of a rank-r bundle, in the
// single-block Chern basis ring ({r}, d); roots are p-fold sums of roots.
Poly exterior_chern(int p, int r, int d);

// exp^(l)(a)·exp^(l)(b) - exp^(l)(a+b): all surviving monomials must have
// degree >= l+1 with coefficients in Z[1/l!].
VerificationReport verify_exp_product_rule(int l, int d);

// l!^2·ch(E ⊗ E') = (l!·ch E)·(l!·ch E') for ranks (r1, r2), truncation d,
// l >= d; equality in the two-block split ring, integrality in the
// two-block Chern basis.
VerificationReport tensor_character_check(int r1, int r2, int d, int l);

// T_l·sum_p (-1)^p ch(Λ^p E^dual) = T_l·Td(E)^{-1}·c_r(E), requires r == d,
// l >= d; both sides integral in the Chern basis.
VerificationReport verify_exterior_identity(int r, int d, int l);

// l!·ch(E1 ⊕ E2) = l!·ch(E1) + l!·ch(E2) with the left side specialized
// from the universal rank-(r1+r2) character (l >= d).
VerificationReport additivity_check(int r1, int r2, int d, int l);

// T_l^2·Td(E1 ⊕ E2) = (T_l·Td E1)·(T_l·Td E2), same setup.
VerificationReport multiplicativity_check(int r1, int r2, int d, int l);

// (T_l·Td(E))·(T_l·Td(E)^{-1}) = T_l^2 with both factors integral (l >= d).
VerificationReport todd_inverse_check(int r, int d, int l);

}  // namespace igrr
