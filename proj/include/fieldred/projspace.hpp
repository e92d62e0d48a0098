#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fieldred/gf.hpp"

namespace fieldred {

using Vec = std::vector<uint32_t>;
using Mat = std::vector<Vec>;

// PG(n-1, p^d): the subfield view of a tower with a fixed vector dimension.
// Spaces over the full tower use d = h.
struct Space {
  const FieldTower* tower = nullptr;
  int field_deg = 0;  // field = GF(p^field_deg), field_deg | tower->h()
  int n = 0;          // vector dimension; projective dimension n-1

  uint32_t field_order() const;
  const std::vector<uint32_t>& field_elements() const;
  friend bool operator==(const Space& a, const Space& b) {
    return a.tower == b.tower && a.field_deg == b.field_deg && a.n == b.n;
  }
  friend bool operator!=(const Space& a, const Space& b) { return !(a == b); }
};

Space make_space(const FieldTower& tower, int field_deg, int n);

// leftmost nonzero coordinate scaled to 1
Vec normalize_point(const Space& sp, Vec v);
bool is_zero_vec(const Vec& v);

// A projective subspace held as its reduced row-echelon generator matrix;
// the unique canonical representative of the row space.  The empty subspace
// has no rows and projective dimension -1.
class ProjSubspace {
public:
  ProjSubspace() = default;

  static ProjSubspace canonical(const Space& sp, const Mat& generators);
  static ProjSubspace empty(const Space& sp);
  static ProjSubspace full(const Space& sp);
  static ProjSubspace point(const Space& sp, const Vec& v);

  const Space& space() const { return space_; }
  const Mat& rows() const { return rows_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  int dim() const { return rank() - 1; }  // projective dimension

  bool contains_point(const Vec& v) const;
  bool contains(const ProjSubspace& other) const;
  std::vector<Vec> points() const;        // canonical reps, sorted
  std::vector<Vec> vectors() const;       // all nonzero vectors of the row space

  // coordinates of a point of this subspace w.r.t. the canonical rows
  Vec internal_coords(const Vec& v) const;
  Vec from_internal(const Vec& coords) const;

  std::string to_text() const;            // rows ';'-separated, entries ','-separated
  static ProjSubspace from_text(const Space& sp, const std::string& text);

  friend bool operator==(const ProjSubspace& a, const ProjSubspace& b) {
    return a.space_ == b.space_ && a.rows_ == b.rows_;
  }
  friend bool operator!=(const ProjSubspace& a, const ProjSubspace& b) { return !(a == b); }
  friend bool operator<(const ProjSubspace& a, const ProjSubspace& b);

private:
  Space space_;
  Mat rows_;
};

ProjSubspace span_of(const ProjSubspace& a, const ProjSubspace& b);
ProjSubspace meet_of(const ProjSubspace& a, const ProjSubspace& b);

enum class LatticeMode { Span, Meet };
inline ProjSubspace lattice(const ProjSubspace& a, const ProjSubspace& b, LatticeMode m) {
  return m == LatticeMode::Span ? span_of(a, b) : meet_of(a, b);
}

constexpr unsigned long long kDefaultEnumBudget = 10'000'000ULL;

// Gaussian binomial [n choose k]_q; throws BudgetExceeded past the cap.
unsigned long long gaussian_binomial(int n, int k, unsigned long long q,
                                     unsigned long long cap = ~0ULL);

// All canonical points, ordered lexicographically on the coordinate vector
// (field elements ordered by index).
std::vector<Vec> enumerate_points(const Space& sp);
unsigned long long count_points(const Space& sp);

// Every subspace of projective dimension k exactly once, sorted by the
// canonical matrix read row-major.
std::vector<ProjSubspace> enumerate_subspaces(const Space& sp, int k,
                                              unsigned long long budget = kDefaultEnumBudget);

// Subspaces of projective dimension k through a given point.
std::vector<ProjSubspace> subspaces_through(const Space& sp, const Vec& pt, int k,
                                            unsigned long long budget = kDefaultEnumBudget);

// v |-> frobenius^s(v) * A, rows as row vectors acting on the right.
struct SemilinearMap {
  Space space;
  Mat A;     // invertible n x n
  int frob;  // companion automorphism x -> x^(p^frob)

  static SemilinearMap identity(const Space& sp);
  static SemilinearMap linear(const Space& sp, const Mat& A);
};

Vec act_point(const SemilinearMap& m, const Vec& v);
ProjSubspace act(const SemilinearMap& m, const ProjSubspace& s);
SemilinearMap compose(const SemilinearMap& first, const SemilinearMap& then);
SemilinearMap inverse(const SemilinearMap& m);

// solve x * rows = w over the space's field
std::optional<Vec> solve_in_rows(const Space& sp, const Mat& rows, const Vec& w);

// visit every projective point of the subspace once (ambient coordinates,
// not normalized); stops early when the callback returns false
bool for_each_point(const ProjSubspace& s, const std::function<bool(const Vec&)>& cb);

// dense matrix helpers over the space's field
Mat mat_identity(const Space& sp);
Mat mat_mul(const Space& sp, const Mat& a, const Mat& b);
Mat mat_inverse(const Space& sp, const Mat& a);  // throws on singular
bool mat_invertible(const Space& sp, const Mat& a);
Vec mat_apply(const Space& sp, const Vec& v, const Mat& a);  // v * a
Mat rref(const Space& sp, Mat m);                            // drops zero rows

}  // namespace fieldred
