#pragma once

#include <map>

#include "fieldred/reduction.hpp"

namespace fieldred {

// B(U) for an F_q-subspace U of F_{q^t}^r: the set of big-field spans of the
// nonzero vectors of U, carried with per-point weights.
struct LinearSet {
  ReductionContext ctx;
  ProjSubspace subspace;      // U, as a subspace of PG(rt-1, q)
  std::vector<Vec> points;    // sorted canonical points of PG(r-1, q^t)
  std::vector<int> weights;   // parallel to points

  int rank() const { return subspace.rank(); }
  size_t size() const { return points.size(); }
  bool contains(const Vec& source_point) const;
  std::map<int, int> weight_histogram() const;  // weight -> x_weight
};

LinearSet make_linear_set(const ReductionContext& ctx, const ProjSubspace& U);

struct WeightReport {
  std::map<int, int> histogram;
  bool size_matches_sum = false;      // |S| = sum x_i
  bool weighted_identity = false;     // sum x_i (q^i-1)/(q-1) = (q^k-1)/(q-1)
  bool size_bound = false;            // |S| <= (q^k-1)/(q-1)
  bool size_mod_q = false;            // |S| = 1 mod q
  bool all() const { return size_matches_sum && weighted_identity && size_bound && size_mod_q; }
};
WeightReport weight_distribution(const LinearSet& L);

// true iff every point has weight 1; asserts the rank bound 2*rank <= rt
bool is_scattered(const LinearSet& L);
bool is_club(const LinearSet& L);  // rank 3 of size q^2 + 1

// All subspaces of the same dimension through R defining the same linear
// set: the scalar collineations applied to U first, then an exhaustive sweep.
std::vector<ProjSubspace> alt_subspaces_through(const LinearSet& L, const Vec& R,
                                                unsigned long long budget = kDefaultEnumBudget);

// Projection of a canonical subgeometry PG(k-1, q) of PG(k-1, q^t) from a
// center onto a screen, returned as the linear set it defines on the screen.
struct ProjectionSpec {
  int k = 0, r = 0, t = 0;
  long long q = 0;
  ProjSubspace center;  // dim k-r-1 subspace of PG(k-1, q^t); empty when k == r
  ProjSubspace screen;  // dim r-1, disjoint from the center
};

struct ProjectionResult {
  LinearSet linear_set;            // on the screen, in PG(r-1, q^t) coordinates
  std::vector<Vec> image_points;   // projection computed pointwise, sorted
  bool spans_screen = false;
};
ProjectionResult project_subgeometry(const ProjectionSpec& spec);

// The unique subline of order p^e through three distinct collinear points;
// points are vectors of any PG(r-1, q^t).
std::vector<Vec> subline_through(const Space& sp, const Vec& p1, const Vec& p2, const Vec& p3,
                                 int e);

struct IntersectionReport {
  std::vector<Vec> points;
  size_t count = 0;
};
// Point-set intersection; theorem bounds for subline-vs-rank-k and
// rank-3-vs-rank-3 are enforced as internal assertions.
IntersectionReport intersect_linear_sets(const LinearSet& a, const LinearSet& b);

struct SubgeometryDecomposition {
  std::vector<std::vector<Vec>> components;
  std::vector<ProjSubspace> spans;
  int component_order_exp = 0;  // components have order p^gcd(t, t')
  bool components_ok = false;   // every component is a subgeometry of that order
  bool independent = false;     // the component spans are independent
  bool count_bound_ok = false;  // k <= (q-1)/(p^{t'} - 1)
};
// G, G' subgeometry point sets of orders p^te, p^tpe inside the given space.
SubgeometryDecomposition intersect_subgeometries(const Space& sp, const std::vector<Vec>& g1,
                                                 int te, const std::vector<Vec>& g2, int tpe);

bool is_subgeometry(const Space& sp, const std::vector<Vec>& pts, int e);

// Scattered linear set of pseudoregulus type: the graph construction
// u + rho*f(u) between two disjoint (r-1)-spaces, f sigma-semilinear with
// Fix(sigma) = F_q.
LinearSet build_L_rho_f(const ReductionContext& ctx, const ProjSubspace& t1,
                        const ProjSubspace& t2, int sigma_exp, uint32_t rho);

struct Pseudoregulus {
  std::vector<ProjSubspace> secants;          // (q^2+q+1)-secant lines
  ProjSubspace t1, t2;                        // the two transversal spaces
  std::map<size_t, size_t> line_spectrum;     // |line meet L| -> line count
};
// Requires t = 3 and L maximum scattered; exhaustive line sweep.
Pseudoregulus pseudoregulus_of(const LinearSet& L);

enum class LinsetFamily { Clubs, ScatteredRank3 };
enum class EquivMethod { Auto, Direct, Stabilizer };

struct EquivalenceReport {
  int pgl_classes = 0;
  int pgammal_classes = 0;
  std::vector<std::vector<uint32_t>> representatives;  // point-id sets on PG(1, q^t)
  std::string method;
};
// Equivalence classes of the family in PG(1, q^t) under PGL and PGammaL.
// The stabilizer method acts on projection centers in PG(2, q^t); the direct
// method enumerates rank-3 subspaces and partitions into group orbits.
EquivalenceReport equivalence_classes(LinsetFamily fam, int t, long long q,
                                      EquivMethod method = EquivMethod::Auto,
                                      unsigned long long budget = kDefaultEnumBudget);

}  // namespace fieldred
