#pragma once

#include <iosfwd>

#include "fieldred/linset.hpp"

namespace fieldred {

struct BlockingReport {
  bool blocking = false;
  bool minimal = false;
  bool minimal_checked = false;
  bool small = false;   // |B| < 3(q^{n-k}+1)/2
  bool redei = false;   // a hyperplane holds |B| - q^{n-k} points
  std::vector<Vec> removable;  // points whose removal keeps the set blocking
};

// Blocking w.r.t. the k-dimensional subspaces of the space; minimality is
// certified by exhaustive point removal.
BlockingReport is_blocking(const Space& sp, const std::vector<Vec>& pts, int k,
                           bool check_minimal, unsigned long long budget = kDefaultEnumBudget);

struct LinearBlockingResult {
  LinearSet linear_set;
  BlockingReport report;
};
// B(pi) for the first coordinate subspace pi of rank nt-kt+1; a blocking set
// w.r.t. (k-1)-spaces of PG(n-1, q^t).
LinearBlockingResult linear_blocking_set(int n, int t, long long q, int k,
                                         unsigned long long budget = kDefaultEnumBudget);

// tangent-line counts of a planar point set, one entry per set point
std::vector<int> tangent_counts(const Space& plane, const std::vector<Vec>& pts);
bool is_semioval(const Space& plane, const std::vector<Vec>& pts);

struct ConeBlockingResult {
  std::vector<Vec> cone_points;      // K, in the reduced space
  std::vector<Vec> blocking_points;  // B(K), in the source space
  BlockingReport report;
};
// Cone over a planar minimal blocking set that is not a semioval; base is
// given in the internal coordinates of the base plane.
ConeBlockingResult cone_blocking_set(const ReductionContext& ctx, const ProjSubspace& vertex,
                                     const ProjSubspace& base_plane,
                                     const std::vector<Vec>& base_internal, int k,
                                     unsigned long long budget = kDefaultEnumBudget);

// Explicit multiplication table of a presemifield/semifield on GF(p)^m;
// addition is digitwise mod p on the element index, index 0 is zero and
// index 1 the multiplicative identity.
struct SemifieldTable {
  long long p = 0;
  int m = 0;
  uint32_t n = 0;  // p^m
  std::vector<uint32_t> table;

  uint32_t mul(uint32_t x, uint32_t y) const { return table[x * n + y]; }
  uint32_t add(uint32_t x, uint32_t y) const;
  uint32_t neg(uint32_t x) const;
  uint32_t circ_pow(uint32_t x, long long e) const;

  static SemifieldTable from_field(const FieldTower& f);
  // Dickson commutative semifield of order 81: (a,b)(c,d) =
  // (ac + j b^s d^s, ad + bc) over GF(9), s the order-2 automorphism,
  // j the smallest non-square
  static SemifieldTable dickson81();
  static SemifieldTable parse(std::istream& in);
  std::string serialize() const;
};

struct SemifieldReport {
  bool additive_group = false;
  bool left_distributive = false;
  bool right_distributive = false;
  bool no_zero_divisors = false;
  bool has_identity = false;
  uint32_t identity = 0;
  std::optional<std::pair<uint32_t, uint32_t>> zero_divisor;
  std::vector<uint32_t> left_nucleus, middle_nucleus, right_nucleus;
  std::vector<uint32_t> nucleus, commutative_center, center;
  bool nuclei_are_fields = false;
  bool proper = false;  // nucleus is smaller than the whole algebra
  bool pass() const {
    return additive_group && left_distributive && right_distributive && no_zero_divisors &&
           has_identity;
  }
};
SemifieldReport check_semifield(const SemifieldTable& t);

struct SemifieldSpreadSet {
  size_t component_count = 0;  // |S| + 1
  bool partition_ok = false;
  bool components_additive = false;
  bool endomorphisms_invertible = false;
  int l = 0;                     // dimension over the left nucleus
  long long left_nucleus_order = 0;
  int rank = 0;                  // n = dim over the chosen central subfield
  LinearSet linear_set;          // L(S) = B(U) in PG(l^2 - 1, q^{n/l})
};
// The spread {S_x} + {S_inf} of S x S and the linear set of the spread-set
// subspace of right multiplications, written over the central subfield of
// the given order.
SemifieldSpreadSet semifield_spread(const SemifieldTable& t, long long central_subfield_order);

}  // namespace fieldred
