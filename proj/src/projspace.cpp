#include "fieldred/projspace.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fieldred {

uint32_t Space::field_order() const {
  uint32_t q = 1;
  for (int i = 0; i < field_deg; ++i) q *= static_cast<uint32_t>(tower->p());
  return q;
}

const std::vector<uint32_t>& Space::field_elements() const {
  return tower->subfield_elements(field_deg);
}

Space make_space(const FieldTower& tower, int field_deg, int n) {
  if (tower.h() % field_deg != 0)
    throw std::invalid_argument("field degree does not divide the tower degree");
  if (n < 1) throw std::invalid_argument("vector dimension must be positive");
  return Space{&tower, field_deg, n};
}

bool is_zero_vec(const Vec& v) {
  for (uint32_t x : v)
    if (x) return false;
  return true;
}

Vec normalize_point(const Space& sp, Vec v) {
  for (uint32_t x : v) {
    if (x == 0) continue;
    if (x != 1) {
      uint32_t s = sp.tower->inv(x);
      for (auto& e : v) e = sp.tower->mul(e, s);
    }
    return v;
  }
  throw std::invalid_argument("zero vector does not define a point");
}

namespace {

void check_entries(const Space& sp, const Mat& m) {
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != sp.n)
      throw std::invalid_argument("generator length mismatch");
    for (uint32_t x : row)
      if (!sp.tower->in_subfield(x, sp.field_deg))
        throw std::invalid_argument("matrix entry outside the space's field");
  }
}

}  // namespace

Mat rref(const Space& sp, Mat m) {
  const FieldTower& tw = *sp.tower;
  size_t r = 0;
  for (int c = 0; c < sp.n && r < m.size(); ++c) {
    size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    uint32_t s = tw.inv(m[r][c]);
    if (s != 1)
      for (auto& e : m[r]) e = tw.mul(e, s);
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      uint32_t f = m[i][c];
      for (int j = 0; j < sp.n; ++j) m[i][j] = tw.sub(m[i][j], tw.mul(f, m[r][j]));
    }
    ++r;
  }
  m.resize(r);
  return m;
}

ProjSubspace ProjSubspace::canonical(const Space& sp, const Mat& generators) {
  check_entries(sp, generators);
  ProjSubspace s;
  s.space_ = sp;
  s.rows_ = rref(sp, generators);
  return s;
}

ProjSubspace ProjSubspace::empty(const Space& sp) {
  ProjSubspace s;
  s.space_ = sp;
  return s;
}

ProjSubspace ProjSubspace::full(const Space& sp) {
  Mat id(sp.n, Vec(sp.n, 0));
  for (int i = 0; i < sp.n; ++i) id[i][i] = 1;
  return canonical(sp, id);
}

ProjSubspace ProjSubspace::point(const Space& sp, const Vec& v) {
  if (is_zero_vec(v)) throw std::invalid_argument("zero vector does not define a point");
  return canonical(sp, Mat{v});
}

bool ProjSubspace::contains_point(const Vec& v) const {
  Vec w = v;
  const FieldTower& tw = *space_.tower;
  for (const auto& row : rows_) {
    int piv = 0;
    while (row[piv] == 0) ++piv;
    if (w[piv] == 0) continue;
    uint32_t f = w[piv];
    for (int j = 0; j < space_.n; ++j) w[j] = tw.sub(w[j], tw.mul(f, row[j]));
  }
  return is_zero_vec(w);
}

bool ProjSubspace::contains(const ProjSubspace& other) const {
  if (space_ != other.space_) throw std::invalid_argument("ambient space mismatch");
  for (const auto& row : other.rows_)
    if (!contains_point(row)) return false;
  return true;
}

std::vector<Vec> ProjSubspace::vectors() const {
  std::vector<Vec> out;
  int k = rank();
  if (k == 0) return out;
  const auto& elems = space_.field_elements();
  std::vector<size_t> odo(k, 0);
  const FieldTower& tw = *space_.tower;
  while (true) {
    Vec v(space_.n, 0);
    bool nonzero = false;
    for (int i = 0; i < k; ++i) {
      uint32_t c = elems[odo[i]];
      if (c == 0) continue;
      nonzero = true;
      for (int j = 0; j < space_.n; ++j) v[j] = tw.add(v[j], tw.mul(c, rows_[i][j]));
    }
    if (nonzero) out.push_back(std::move(v));
    int i = 0;
    while (i < k && ++odo[i] == elems.size()) odo[i++] = 0;
    if (i == k) break;
  }
  return out;
}

std::vector<Vec> ProjSubspace::points() const {
  std::vector<Vec> pts;
  for (auto& v : vectors()) {
    Vec p = normalize_point(space_, std::move(v));
    pts.push_back(std::move(p));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

Vec ProjSubspace::internal_coords(const Vec& v) const {
  Vec w = v, coords(rank(), 0);
  const FieldTower& tw = *space_.tower;
  for (int i = 0; i < rank(); ++i) {
    int piv = 0;
    while (rows_[i][piv] == 0) ++piv;
    coords[i] = w[piv];
    if (w[piv] == 0) continue;
    uint32_t f = w[piv];
    for (int j = 0; j < space_.n; ++j) w[j] = tw.sub(w[j], tw.mul(f, rows_[i][j]));
  }
  if (!is_zero_vec(w)) throw std::invalid_argument("point not in subspace");
  return coords;
}

Vec ProjSubspace::from_internal(const Vec& coords) const {
  if (coords.size() != static_cast<size_t>(rank()))
    throw std::invalid_argument("coordinate length mismatch");
  const FieldTower& tw = *space_.tower;
  Vec v(space_.n, 0);
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < space_.n; ++j) v[j] = tw.add(v[j], tw.mul(coords[i], rows_[i][j]));
  return v;
}

std::string ProjSubspace::to_text() const {
  std::string s;
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (i) s += ";";
    for (int j = 0; j < space_.n; ++j) {
      if (j) s += ",";
      // prime-subfield entries are plain digits regardless of the tower
      if (space_.field_deg == 1)
        s += std::to_string(rows_[i][j]);
      else
        s += space_.tower->format(rows_[i][j]);
    }
  }
  return s;
}

ProjSubspace ProjSubspace::from_text(const Space& sp, const std::string& text) {
  Mat rows;
  std::stringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    Vec v;
    // split on commas outside brackets
    std::string item;
    int depth = 0;
    for (char c : row) {
      if (c == '[') ++depth;
      if (c == ']') --depth;
      if (c == ',' && depth == 0) {
        v.push_back(sp.tower->parse_element(item));
        item.clear();
      } else {
        item += c;
      }
    }
    if (!item.empty()) v.push_back(sp.tower->parse_element(item));
    rows.push_back(std::move(v));
  }
  return canonical(sp, rows);
}

bool operator<(const ProjSubspace& a, const ProjSubspace& b) {
  if (a.rows_.size() != b.rows_.size()) return a.rows_.size() < b.rows_.size();
  return a.rows_ < b.rows_;
}

ProjSubspace span_of(const ProjSubspace& a, const ProjSubspace& b) {
  if (a.space() != b.space()) throw std::invalid_argument("ambient space mismatch");
  Mat gens = a.rows();
  for (const auto& r : b.rows()) gens.push_back(r);
  return ProjSubspace::canonical(a.space(), gens);
}

// Zassenhaus: row reduce [A|A; B|0]; rows with zero left block carry a basis
// of the intersection in the right block.
ProjSubspace meet_of(const ProjSubspace& a, const ProjSubspace& b) {
  if (a.space() != b.space()) throw std::invalid_argument("ambient space mismatch");
  const Space& sp = a.space();
  int n = sp.n;
  Mat big;
  for (const auto& r : a.rows()) {
    Vec row(2 * n, 0);
    for (int j = 0; j < n; ++j) row[j] = row[n + j] = r[j];
    big.push_back(std::move(row));
  }
  for (const auto& r : b.rows()) {
    Vec row(2 * n, 0);
    for (int j = 0; j < n; ++j) row[j] = r[j];
    big.push_back(std::move(row));
  }
  Space dbl = sp;
  dbl.n = 2 * n;
  Mat red = rref(dbl, big);
  Mat inter;
  for (const auto& row : red) {
    bool left_zero = true;
    for (int j = 0; j < n; ++j)
      if (row[j]) {
        left_zero = false;
        break;
      }
    if (!left_zero) continue;
    Vec right(row.begin() + n, row.end());
    if (!is_zero_vec(right)) inter.push_back(std::move(right));
  }
  return ProjSubspace::canonical(sp, inter);
}

unsigned long long gaussian_binomial(int n, int k, unsigned long long q,
                                     unsigned long long cap) {
  if (k < 0 || k > n) return 0;
  // prod_{i<k} (q^{n-i} - 1) / (q^{k-i} - 1), computed with exact division
  unsigned long long num = 1;
  std::vector<unsigned long long> dens;
  auto qpow = [&](int e) {
    unsigned long long r = 1;
    for (int i = 0; i < e; ++i) r *= q;
    return r;
  };
  for (int i = 0; i < k; ++i) dens.push_back(qpow(k - i) - 1);
  for (int i = 0; i < k; ++i) {
    unsigned long long f = qpow(n - i) - 1;
    for (auto& d : dens) {
      if (d > 1) {
        unsigned long long g = std::gcd(f, d);
        f /= g;
        d /= g;
      }
    }
    if (f != 0 && num > cap / f)
      throw BudgetExceeded("gaussian binomial exceeds cap", cap);
    num *= f;
  }
  for (auto d : dens)
    if (d != 1) throw std::logic_error("gaussian binomial not integral");
  return num;
}

unsigned long long count_points(const Space& sp) {
  unsigned long long q = sp.field_order(), total = 1;
  constexpr unsigned long long kCap = 1ULL << 62;
  for (int i = 0; i < sp.n; ++i) {
    if (total > kCap / q) throw BudgetExceeded("point count overflows the counter", kCap);
    total *= q;
  }
  return (total - 1) / (q - 1);
}

std::vector<Vec> enumerate_points(const Space& sp) {
  const auto& elems = sp.field_elements();
  std::vector<Vec> pts;
  pts.reserve(count_points(sp));
  for (int piv = 0; piv < sp.n; ++piv) {
    int free_count = sp.n - piv - 1;
    std::vector<size_t> odo(free_count, 0);
    while (true) {
      Vec v(sp.n, 0);
      v[piv] = 1;
      for (int i = 0; i < free_count; ++i) v[piv + 1 + i] = elems[odo[i]];
      pts.push_back(std::move(v));
      int i = free_count - 1;
      while (i >= 0 && ++odo[i] == elems.size()) odo[i--] = 0;
      if (i < 0) break;
    }
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

std::vector<ProjSubspace> enumerate_subspaces(const Space& sp, int k,
                                              unsigned long long budget) {
  if (k < -1 || k >= sp.n) throw std::invalid_argument("projective dimension out of range");
  if (k == -1) return {ProjSubspace::empty(sp)};
  int m = k + 1;  // rank
  unsigned long long total = gaussian_binomial(sp.n, m, sp.field_order(), budget);
  if (total > budget)
    throw BudgetExceeded("subspace enumeration exceeds budget", total);

  const auto& elems = sp.field_elements();
  std::vector<ProjSubspace> out;
  out.reserve(total);

  std::vector<int> pivots(m);
  for (int i = 0; i < m; ++i) pivots[i] = i;
  auto next_combination = [&]() {
    int i = m - 1;
    while (i >= 0 && pivots[i] == sp.n - m + i) --i;
    if (i < 0) return false;
    ++pivots[i];
    for (int j = i + 1; j < m; ++j) pivots[j] = pivots[j - 1] + 1;
    return true;
  };

  do {
    // free slots: row i, columns past pivots[i] that are not pivots
    std::vector<std::pair<int, int>> free_slots;
    std::vector<bool> is_pivot(sp.n, false);
    for (int c : pivots) is_pivot[c] = true;
    for (int i = 0; i < m; ++i)
      for (int c = pivots[i] + 1; c < sp.n; ++c)
        if (!is_pivot[c]) free_slots.emplace_back(i, c);

    std::vector<size_t> odo(free_slots.size(), 0);
    while (true) {
      Mat rows(m, Vec(sp.n, 0));
      for (int i = 0; i < m; ++i) rows[i][pivots[i]] = 1;
      for (size_t s = 0; s < free_slots.size(); ++s)
        rows[free_slots[s].first][free_slots[s].second] = elems[odo[s]];
      ProjSubspace sub;
      sub = ProjSubspace::canonical(sp, rows);  // already in RREF; canonical verifies
      out.push_back(std::move(sub));
      size_t i = 0;
      while (i < odo.size() && ++odo[i] == elems.size()) odo[i++] = 0;
      if (i == odo.size()) break;
      if (free_slots.empty()) break;
    }
  } while (next_combination());

  if (out.size() != total) throw std::logic_error("subspace enumeration count mismatch");
  std::sort(out.begin(), out.end(), [](const ProjSubspace& a, const ProjSubspace& b) {
    return a.rows() < b.rows();
  });
  return out;
}

std::vector<ProjSubspace> subspaces_through(const Space& sp, const Vec& pt, int k,
                                            unsigned long long budget) {
  if (k < 0 || k >= sp.n) throw std::invalid_argument("projective dimension out of range");
  Vec base = normalize_point(sp, pt);
  if (k == 0) return {ProjSubspace::point(sp, base)};
  int piv = 0;
  while (base[piv] == 0) ++piv;
  // complement coordinates: standard basis vectors away from the pivot
  std::vector<int> comp;
  for (int i = 0; i < sp.n; ++i)
    if (i != piv) comp.push_back(i);
  Space quo = sp;
  quo.n = sp.n - 1;
  auto subs = enumerate_subspaces(quo, k - 1, budget);
  std::vector<ProjSubspace> out;
  out.reserve(subs.size());
  for (const auto& w : subs) {
    Mat gens;
    gens.push_back(base);
    for (const auto& row : w.rows()) {
      Vec lift(sp.n, 0);
      for (int j = 0; j < quo.n; ++j) lift[comp[j]] = row[j];
      gens.push_back(std::move(lift));
    }
    out.push_back(ProjSubspace::canonical(sp, gens));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Vec> solve_in_rows(const Space& sp, const Mat& rows, const Vec& w) {
  const FieldTower& tw = *sp.tower;
  size_t k = rows.size();
  Mat sys(sp.n, Vec(k + 1, 0));
  for (int j = 0; j < sp.n; ++j) {
    for (size_t i = 0; i < k; ++i) sys[j][i] = rows[i][j];
    sys[j][k] = w[j];
  }
  size_t row = 0;
  std::vector<int> pivot_of_row;
  for (size_t col = 0; col < k && row < sys.size(); ++col) {
    size_t piv = row;
    while (piv < sys.size() && sys[piv][col] == 0) ++piv;
    if (piv == sys.size()) continue;
    std::swap(sys[row], sys[piv]);
    uint32_t s = tw.inv(sys[row][col]);
    for (auto& e : sys[row]) e = tw.mul(e, s);
    for (size_t i = 0; i < sys.size(); ++i) {
      if (i == row || sys[i][col] == 0) continue;
      uint32_t f = sys[i][col];
      for (size_t j = 0; j <= k; ++j) sys[i][j] = tw.sub(sys[i][j], tw.mul(f, sys[row][j]));
    }
    pivot_of_row.push_back(static_cast<int>(col));
    ++row;
  }
  for (size_t i = row; i < sys.size(); ++i)
    if (sys[i][k] != 0) return std::nullopt;
  Vec x(k, 0);
  for (size_t i = 0; i < row; ++i) x[pivot_of_row[i]] = sys[i][k];
  return x;
}

bool for_each_point(const ProjSubspace& s, const std::function<bool(const Vec&)>& cb) {
  int k = s.rank();
  if (k == 0) return true;
  const Space& sp = s.space();
  const auto& elems = sp.field_elements();
  const FieldTower& tw = *sp.tower;
  // internal coordinates run over the canonical points of PG(k-1, q)
  for (int piv = 0; piv < k; ++piv) {
    int free_count = k - piv - 1;
    std::vector<size_t> odo(free_count, 0);
    while (true) {
      Vec v(sp.n, 0);
      for (int j = 0; j < sp.n; ++j) v[j] = s.rows()[piv][j];
      for (int i = 0; i < free_count; ++i) {
        uint32_t c = elems[odo[i]];
        if (c) {
          const Vec& row = s.rows()[piv + 1 + i];
          for (int j = 0; j < sp.n; ++j) v[j] = tw.add(v[j], tw.mul(c, row[j]));
        }
      }
      if (!cb(v)) return false;
      int i = free_count - 1;
      while (i >= 0 && ++odo[i] == elems.size()) odo[i--] = 0;
      if (i < 0) break;
    }
  }
  return true;
}

SemilinearMap SemilinearMap::identity(const Space& sp) {
  return SemilinearMap{sp, mat_identity(sp), 0};
}

SemilinearMap SemilinearMap::linear(const Space& sp, const Mat& A) {
  if (!mat_invertible(sp, A)) throw std::invalid_argument("singular matrix");
  return SemilinearMap{sp, A, 0};
}

Vec act_point(const SemilinearMap& m, const Vec& v) {
  const FieldTower& tw = *m.space.tower;
  Vec w(v.size());
  for (size_t i = 0; i < v.size(); ++i) w[i] = tw.frobenius(v[i], m.frob);
  return mat_apply(m.space, w, m.A);
}

ProjSubspace act(const SemilinearMap& m, const ProjSubspace& s) {
  if (s.space() != m.space) throw std::invalid_argument("dimension mismatch");
  Mat gens;
  for (const auto& row : s.rows()) gens.push_back(act_point(m, row));
  return ProjSubspace::canonical(m.space, gens);
}

SemilinearMap compose(const SemilinearMap& first, const SemilinearMap& then) {
  if (first.space != then.space) throw std::invalid_argument("dimension mismatch");
  const FieldTower& tw = *first.space.tower;
  // (v^{s1} A1)^{s2} A2 = v^{s1+s2} (A1^{s2} A2)
  Mat a1f = first.A;
  for (auto& row : a1f)
    for (auto& e : row) e = tw.frobenius(e, then.frob);
  SemilinearMap out{first.space, mat_mul(first.space, a1f, then.A),
                    (first.frob + then.frob) % tw.h()};
  return out;
}

SemilinearMap inverse(const SemilinearMap& m) {
  const FieldTower& tw = *m.space.tower;
  int s = (tw.h() - m.frob % tw.h()) % tw.h();
  Mat ai = mat_inverse(m.space, m.A);
  for (auto& row : ai)
    for (auto& e : row) e = tw.frobenius(e, s);
  return SemilinearMap{m.space, ai, s};
}

Mat mat_identity(const Space& sp) {
  Mat id(sp.n, Vec(sp.n, 0));
  for (int i = 0; i < sp.n; ++i) id[i][i] = 1;
  return id;
}

Mat mat_mul(const Space& sp, const Mat& a, const Mat& b) {
  const FieldTower& tw = *sp.tower;
  int n = sp.n;
  Mat c(n, Vec(n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < n; ++j) c[i][j] = tw.add(c[i][j], tw.mul(a[i][k], b[k][j]));
    }
  return c;
}

Vec mat_apply(const Space& sp, const Vec& v, const Mat& a) {
  const FieldTower& tw = *sp.tower;
  int n = sp.n;
  Vec w(n, 0);
  for (int i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < n; ++j) w[j] = tw.add(w[j], tw.mul(v[i], a[i][j]));
  }
  return w;
}

Mat mat_inverse(const Space& sp, const Mat& a) {
  const FieldTower& tw = *sp.tower;
  int n = sp.n;
  Mat m = a, inv = mat_identity(sp);
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int piv = -1;
    for (int i = row; i < n; ++i)
      if (m[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::invalid_argument("singular matrix");
    std::swap(m[piv], m[row]);
    std::swap(inv[piv], inv[row]);
    uint32_t s = tw.inv(m[row][col]);
    for (int j = 0; j < n; ++j) {
      m[row][j] = tw.mul(m[row][j], s);
      inv[row][j] = tw.mul(inv[row][j], s);
    }
    for (int i = 0; i < n; ++i) {
      if (i == row || m[i][col] == 0) continue;
      uint32_t f = m[i][col];
      for (int j = 0; j < n; ++j) {
        m[i][j] = tw.sub(m[i][j], tw.mul(f, m[row][j]));
        inv[i][j] = tw.sub(inv[i][j], tw.mul(f, inv[row][j]));
      }
    }
    ++row;
  }
  if (row < n) throw std::invalid_argument("singular matrix");
  return inv;
}

bool mat_invertible(const Space& sp, const Mat& a) {
  if (static_cast<int>(a.size()) != sp.n) return false;
  return static_cast<int>(rref(sp, a).size()) == sp.n;
}

}  // namespace fieldred
