#pragma once

#include <map>
#include <optional>

#include "fieldred/projspace.hpp"

namespace fieldred {

// The field reduction map between PG(r-1, q^t) and PG(rt-1, q), with the
// generator power basis {1, g, ..., g^(t-1)} of the big field over GF(q).
// Source coordinate i expands to target block [i*t, (i+1)*t).
class ReductionContext {
public:
  ReductionContext(int r, int t, long long q);

  int r() const { return r_; }
  int t() const { return t_; }
  long long q() const { return q_; }
  int subfield_deg() const { return d_; }
  const FieldTower& tower() const { return *tower_; }
  Space source() const { return make_space(*tower_, tower_->h(), r_); }
  Space target() const { return make_space(*tower_, d_, r_ * t_); }
  // PG(rt-1, q^t), the extension space holding the canonical subgeometry
  Space extension() const { return make_space(*tower_, tower_->h(), r_ * t_); }

  Vec reduce_vector(const Vec& src) const;
  Vec lift_vector(const Vec& tgt) const;
  ProjSubspace reduce(const ProjSubspace& s) const;
  // source point whose reduction contains the given target point
  Vec lift_point(const Vec& tgt_point) const;

private:
  int r_, t_, d_;
  long long q_;
  const FieldTower* tower_;
};

// A set of pairwise disjoint (t-1)-spaces partitioning the points of the
// ambient space; construction verifies the partition exhaustively.
class Spread {
public:
  static Spread from_elements(const Space& ambient, std::vector<ProjSubspace> elements);

  const Space& ambient() const { return ambient_; }
  int element_dim() const { return elt_dim_; }
  size_t size() const { return elements_.size(); }
  const std::vector<ProjSubspace>& elements() const { return elements_; }
  const ProjSubspace& member_through(const Vec& point) const;
  size_t index_through(const Vec& point) const;
  bool contains_element(const ProjSubspace& e) const;

private:
  Space ambient_;
  int elt_dim_ = 0;
  std::vector<ProjSubspace> elements_;
  std::map<Vec, size_t> through_;
};

// 2-(v, k, 1) design from the Andre/Bruck-Bose construction.
struct DesignInstance {
  unsigned long long v = 0;       // point count
  unsigned long long k = 0;       // block size
  unsigned long long lambda = 0;  // pair index
  std::vector<std::vector<uint32_t>> blocks;  // sorted point indices

  // exhaustive pair count; returns a violating pair if any
  std::optional<std::pair<uint32_t, uint32_t>> pair_violation() const;
};

ProjSubspace field_reduce(const ReductionContext& ctx, const ProjSubspace& s);
Spread desarguesian_spread(const ReductionContext& ctx,
                           unsigned long long budget = kDefaultEnumBudget);

// The unique regulus through three mutually disjoint (t-1)-spaces whose span
// has projective dimension 2t-1: decompose V = V1 + V2 along s1, s2, write
// s3 as the graph of an invertible map V1 -> V2 and scale the graph.
std::vector<ProjSubspace> regulus_through(const ProjSubspace& s1, const ProjSubspace& s2,
                                          const ProjSubspace& s3);

// every subspace spanned by a pair of spread elements is partitioned by
// spread elements
bool is_normal(const Spread& sp);

// Swap one regulus of a spanned PG(2t-1, q) for its opposite; yields a valid
// spread that fails normality when the ambient has more than one pair-span.
Spread regulus_swapped_spread(const Spread& sp);

// first (r-1)-space of PG(rt-1, q^t) disjoint from the canonical subgeometry
ProjSubspace find_skew_subspace(const ReductionContext& ctx);

// Conjugate construction: for each point P of the skew space, the span of
// its Frobenius conjugates meets the canonical subgeometry in a spread
// element.
Spread spread_via_conjugates(const ReductionContext& ctx, const ProjSubspace& skew);

// span of the Frobenius conjugates of a point of the extension space
ProjSubspace conjugate_span(const ReductionContext& ctx, const Vec& point);

DesignInstance abb_design(const Spread& sp);

// GL/GammaL(r, q^t) -> GL/GammaL(rt, q) along the reduction.
SemilinearMap blow_up_map(const ReductionContext& ctx, const SemilinearMap& m);

// Segre map and variety in PG((l+1)(k+1)-1, q), row-major coordinates.
Vec segre_point(const Space& target, const Vec& x, const Vec& y);
bool is_on_segre(const Space& sp, const Vec& pt, int l, int k);

struct SegreSystemReport {
  bool ok = false;
  std::vector<ProjSubspace> system;  // the (t-1)-space system, one per input point
  Vec offending_point;               // set when ok is false
};

// Checks that the reduction of a set of canonical-subgeometry points lands
// on the Segre variety S_{r-1,t-1} pointwise.
SegreSystemReport subgeometry_on_segre(const ReductionContext& ctx,
                                       const std::vector<Vec>& subgeo_points);

// points of the canonical subgeometry of order p^e inside the given space
std::vector<Vec> canonical_subgeometry_points(const Space& sp, int e);

}  // namespace fieldred
