#include "fieldred/apps.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>

namespace fieldred {

BlockingReport is_blocking(const Space& sp, const std::vector<Vec>& pts, int k,
                           bool check_minimal, unsigned long long budget) {
  BlockingReport rep;
  std::vector<Vec> b;
  for (const auto& p : pts) b.push_back(normalize_point(sp, p));
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());

  auto subs = enumerate_subspaces(sp, k, budget);
  std::vector<std::vector<size_t>> hit(subs.size());
  rep.blocking = true;
  for (size_t si = 0; si < subs.size(); ++si) {
    for (size_t bi = 0; bi < b.size(); ++bi)
      if (subs[si].contains_point(b[bi])) hit[si].push_back(bi);
    if (hit[si].empty()) rep.blocking = false;
  }

  if (check_minimal) {
    rep.minimal_checked = true;
    std::vector<bool> essential(b.size(), false);
    for (const auto& h : hit)
      if (h.size() == 1) essential[h[0]] = true;
    rep.minimal = rep.blocking;
    for (size_t bi = 0; bi < b.size(); ++bi) {
      if (!essential[bi]) {
        rep.minimal = false;
        rep.removable.push_back(b[bi]);
      }
    }
  }

  long long q = sp.field_order();
  int n = sp.n - 1;  // projective dimension
  long long qq = 1;
  for (int i = 0; i < n - k; ++i) qq *= q;
  rep.small = (2 * static_cast<long long>(b.size()) < 3 * (qq + 1));

  for (const auto& hplane : enumerate_subspaces(sp, sp.n - 2, budget)) {
    long long inside = 0;
    for (const auto& p : b)
      if (hplane.contains_point(p)) ++inside;
    if (inside == static_cast<long long>(b.size()) - qq) {
      rep.redei = true;
      break;
    }
  }
  return rep;
}

LinearBlockingResult linear_blocking_set(int n, int t, long long q, int k,
                                         unsigned long long budget) {
  ReductionContext ctx(n, t, q);
  int rank = n * t - k * t + 1;
  if (rank < 1 || rank > n * t) throw std::invalid_argument("blocking rank out of range");
  Space tgt = ctx.target();
  Mat gens;
  for (int i = 0; i < rank; ++i) {
    Vec e(tgt.n, 0);
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  LinearBlockingResult out{make_linear_set(ctx, ProjSubspace::canonical(tgt, gens)), {}};
  out.report = is_blocking(ctx.source(), out.linear_set.points, k - 1, true, budget);
  return out;
}

std::vector<int> tangent_counts(const Space& plane, const std::vector<Vec>& pts) {
  if (plane.n != 3) throw std::invalid_argument("tangent counts expect a plane");
  std::vector<Vec> b;
  for (const auto& p : pts) b.push_back(normalize_point(plane, p));
  std::sort(b.begin(), b.end());
  auto lines = enumerate_subspaces(plane, 1);
  std::vector<int> counts(b.size(), 0);
  for (const auto& l : lines) {
    int inside = 0;
    size_t last = 0;
    for (size_t i = 0; i < b.size(); ++i)
      if (l.contains_point(b[i])) {
        ++inside;
        last = i;
      }
    if (inside == 1) counts[last]++;
  }
  return counts;
}

bool is_semioval(const Space& plane, const std::vector<Vec>& pts) {
  for (int c : tangent_counts(plane, pts))
    if (c != 1) return false;
  return true;
}

ConeBlockingResult cone_blocking_set(const ReductionContext& ctx, const ProjSubspace& vertex,
                                     const ProjSubspace& base_plane,
                                     const std::vector<Vec>& base_internal, int k,
                                     unsigned long long budget) {
  Space tgt = ctx.target();
  int n = ctx.r(), t = ctx.t();
  if (vertex.space() != tgt || base_plane.space() != tgt)
    throw std::invalid_argument("vertex/base live in the wrong space");
  if (vertex.dim() != n * t - k * t - 2) throw std::invalid_argument("vertex has the wrong dimension");
  if (base_plane.dim() != 2) throw std::invalid_argument("base must lie in a plane");
  if (meet_of(vertex, base_plane).rank() != 0)
    throw std::invalid_argument("vertex meets the base plane");

  // the base must be a minimal planar blocking set and not a semioval
  Space plane2 = make_space(*tgt.tower, tgt.field_deg, 3);
  if (is_semioval(plane2, base_internal))
    throw std::invalid_argument("base is a semioval; the cone theorem does not apply");
  BlockingReport base_rep = is_blocking(plane2, base_internal, 1, true, budget);
  if (!base_rep.blocking || !base_rep.minimal)
    throw std::invalid_argument("base is not a minimal planar blocking set");

  ConeBlockingResult out;
  std::set<Vec> cone;
  for (const auto& bc : base_internal) {
    Vec ambient = base_plane.from_internal(normalize_point(plane2, bc));
    Mat gens = vertex.rows();
    gens.push_back(ambient);
    ProjSubspace line = ProjSubspace::canonical(tgt, gens);
    for (const auto& p : line.points()) cone.insert(p);
  }
  out.cone_points.assign(cone.begin(), cone.end());

  std::set<Vec> blocked;
  for (const auto& p : out.cone_points) blocked.insert(ctx.lift_point(p));
  out.blocking_points.assign(blocked.begin(), blocked.end());
  out.report = is_blocking(ctx.source(), out.blocking_points, k - 1, true, budget);
  return out;
}

// ---------------------------------------------------------------------------
// semifields

uint32_t SemifieldTable::add(uint32_t x, uint32_t y) const {
  if (p == 2) return x ^ y;
  uint32_t r = 0, mult = 1;
  while (x || y) {
    r += ((x % p + y % p) % p) * mult;
    mult *= static_cast<uint32_t>(p);
    x /= static_cast<uint32_t>(p);
    y /= static_cast<uint32_t>(p);
  }
  return r;
}

uint32_t SemifieldTable::neg(uint32_t x) const {
  if (p == 2) return x;
  uint32_t r = 0, mult = 1;
  while (x) {
    uint32_t d = x % p;
    r += (d ? static_cast<uint32_t>(p) - d : 0) * mult;
    mult *= static_cast<uint32_t>(p);
    x /= static_cast<uint32_t>(p);
  }
  return r;
}

uint32_t SemifieldTable::circ_pow(uint32_t x, long long e) const {
  if (e < 1) throw std::invalid_argument("positive powers only");
  uint32_t acc = x;
  for (long long i = 1; i < e; ++i) acc = mul(acc, x);
  return acc;
}

SemifieldTable SemifieldTable::from_field(const FieldTower& f) {
  SemifieldTable t;
  t.p = f.p();
  t.m = f.h();
  t.n = f.order();
  t.table.resize(static_cast<size_t>(t.n) * t.n);
  for (uint32_t x = 0; x < t.n; ++x)
    for (uint32_t y = 0; y < t.n; ++y) t.table[x * t.n + y] = f.mul(x, y);
  return t;
}

SemifieldTable SemifieldTable::dickson81() {
  const FieldTower& f9 = FieldTower::get(3, 2);
  uint32_t j = 0;
  for (uint32_t c = 2; c < 9; ++c)
    if (!f9.is_square(c)) {
      j = c;
      break;
    }
  SemifieldTable t;
  t.p = 3;
  t.m = 4;
  t.n = 81;
  t.table.resize(81 * 81);
  auto pack = [](uint32_t a, uint32_t b) { return a + 9 * b; };
  for (uint32_t a = 0; a < 9; ++a)
    for (uint32_t b = 0; b < 9; ++b)
      for (uint32_t c = 0; c < 9; ++c)
        for (uint32_t d = 0; d < 9; ++d) {
          uint32_t first = f9.add(f9.mul(a, c),
                                  f9.mul(j, f9.mul(f9.frobenius(b, 1), f9.frobenius(d, 1))));
          uint32_t second = f9.add(f9.mul(a, d), f9.mul(b, c));
          t.table[pack(a, b) * 81 + pack(c, d)] = pack(first, second);
        }
  return t;
}

SemifieldTable SemifieldTable::parse(std::istream& in) {
  SemifieldTable t;
  if (!(in >> t.p >> t.m)) throw std::invalid_argument("bad semifield header");
  if (!is_prime(t.p) || t.m < 1) throw std::invalid_argument("bad semifield parameters");
  long long n = 1;
  for (int i = 0; i < t.m; ++i) n *= t.p;
  t.n = static_cast<uint32_t>(n);
  t.table.resize(static_cast<size_t>(t.n) * t.n);
  for (size_t i = 0; i < t.table.size(); ++i) {
    long long v;
    if (!(in >> v) || v < 0 || v >= n) throw std::invalid_argument("bad semifield table entry");
    t.table[i] = static_cast<uint32_t>(v);
  }
  return t;
}

std::string SemifieldTable::serialize() const {
  std::ostringstream out;
  out << p << " " << m << "\n";
  for (uint32_t x = 0; x < n; ++x) {
    for (uint32_t y = 0; y < n; ++y) {
      if (y) out << " ";
      out << table[x * n + y];
    }
    out << "\n";
  }
  return out.str();
}

namespace {

bool subset_is_field(const SemifieldTable& t, const std::vector<uint32_t>& s,
                     uint32_t identity) {
  std::set<uint32_t> in(s.begin(), s.end());
  if (!in.count(0) || !in.count(identity)) return false;
  for (uint32_t a : s)
    for (uint32_t b : s) {
      if (!in.count(t.add(a, b)) || !in.count(t.mul(a, b))) return false;
      if (t.mul(a, b) != t.mul(b, a)) return false;
      for (uint32_t c : s)
        if (t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c))) return false;
    }
  for (uint32_t a : s) {
    if (a == 0) continue;
    bool has_inv = false;
    for (uint32_t b : s)
      if (t.mul(a, b) == identity && t.mul(b, a) == identity) {
        has_inv = true;
        break;
      }
    if (!has_inv) return false;
  }
  return true;
}

}  // namespace

SemifieldReport check_semifield(const SemifieldTable& t) {
  SemifieldReport rep;
  uint32_t n = t.n;

  rep.additive_group = true;
  for (uint32_t x = 0; x < n && rep.additive_group; ++x) {
    if (t.add(x, 0) != x) rep.additive_group = false;
    for (uint32_t y = 0; y < n; ++y)
      if (t.add(x, y) != t.add(y, x)) rep.additive_group = false;
  }

  rep.left_distributive = rep.right_distributive = true;
  for (uint32_t x = 0; x < n; ++x)
    for (uint32_t y = 0; y < n; ++y)
      for (uint32_t z = 0; z < n; ++z) {
        if (t.mul(x, t.add(y, z)) != t.add(t.mul(x, y), t.mul(x, z)))
          rep.left_distributive = false;
        if (t.mul(t.add(x, y), z) != t.add(t.mul(x, z), t.mul(y, z)))
          rep.right_distributive = false;
      }

  rep.no_zero_divisors = true;
  for (uint32_t x = 1; x < n && rep.no_zero_divisors; ++x)
    for (uint32_t y = 1; y < n; ++y)
      if (t.mul(x, y) == 0) {
        rep.no_zero_divisors = false;
        rep.zero_divisor = {x, y};
        break;
      }

  for (uint32_t e = 1; e < n; ++e) {
    bool id = true;
    for (uint32_t x = 0; x < n; ++x)
      if (t.mul(e, x) != x || t.mul(x, e) != x) {
        id = false;
        break;
      }
    if (id) {
      rep.has_identity = true;
      rep.identity = e;
      break;
    }
  }

  for (uint32_t x = 0; x < n; ++x) {
    bool nl = true, nm = true, nr = true, cc = true;
    for (uint32_t y = 0; y < n; ++y) {
      if (t.mul(x, y) != t.mul(y, x)) cc = false;
      for (uint32_t z = 0; z < n; ++z) {
        if (t.mul(x, t.mul(y, z)) != t.mul(t.mul(x, y), z)) nl = false;
        if (t.mul(y, t.mul(x, z)) != t.mul(t.mul(y, x), z)) nm = false;
        if (t.mul(y, t.mul(z, x)) != t.mul(t.mul(y, z), x)) nr = false;
      }
      if (!nl && !nm && !nr && !cc) break;
    }
    if (nl) rep.left_nucleus.push_back(x);
    if (nm) rep.middle_nucleus.push_back(x);
    if (nr) rep.right_nucleus.push_back(x);
    if (cc) rep.commutative_center.push_back(x);
  }
  std::set_intersection(rep.left_nucleus.begin(), rep.left_nucleus.end(),
                        rep.middle_nucleus.begin(), rep.middle_nucleus.end(),
                        std::back_inserter(rep.nucleus));
  {
    std::vector<uint32_t> tmp;
    std::set_intersection(rep.nucleus.begin(), rep.nucleus.end(), rep.right_nucleus.begin(),
                          rep.right_nucleus.end(), std::back_inserter(tmp));
    rep.nucleus = std::move(tmp);
  }
  std::set_intersection(rep.nucleus.begin(), rep.nucleus.end(), rep.commutative_center.begin(),
                        rep.commutative_center.end(), std::back_inserter(rep.center));

  if (rep.has_identity) {
    rep.nuclei_are_fields = subset_is_field(t, rep.left_nucleus, rep.identity) &&
                            subset_is_field(t, rep.middle_nucleus, rep.identity) &&
                            subset_is_field(t, rep.right_nucleus, rep.identity) &&
                            subset_is_field(t, rep.nucleus, rep.identity) &&
                            subset_is_field(t, rep.center, rep.identity);
  }
  rep.proper = (rep.nucleus.size() < n);
  return rep;
}

SemifieldSpreadSet semifield_spread(const SemifieldTable& t, long long central_subfield_order) {
  SemifieldReport rep = check_semifield(t);
  if (!rep.pass()) throw std::invalid_argument("multiplication table violates the semifield axioms");
  uint32_t n = t.n;
  uint32_t e = rep.identity;

  size_t component_count = static_cast<size_t>(n) + 1;

  // spread partition of S x S
  bool partition_ok = true;
  bool components_additive = true;
  std::vector<uint32_t> cover(static_cast<size_t>(n) * n, 0);
  for (uint32_t x = 0; x < n; ++x)
    for (uint32_t y = 1; y < n; ++y) cover[static_cast<size_t>(y) * n + t.mul(y, x)]++;
  for (uint32_t z = 1; z < n; ++z) cover[z]++;  // S_inf = {(0, z)}
  for (uint32_t y = 0; y < n; ++y)
    for (uint32_t z = 0; z < n; ++z) {
      if (y == 0 && z == 0) continue;
      if (cover[static_cast<size_t>(y) * n + z] != 1) partition_ok = false;
    }
  for (uint32_t x = 0; x < n && components_additive; ++x)
    for (uint32_t y1 = 0; y1 < n && components_additive; ++y1)
      for (uint32_t y2 = 0; y2 < n; ++y2)
        if (t.mul(t.add(y1, y2), x) != t.add(t.mul(y1, x), t.mul(y2, x))) {
          components_additive = false;
          break;
        }

  // left vector space over the left nucleus
  const std::vector<uint32_t>& nl = rep.left_nucleus;
  long long left_nucleus_order = static_cast<long long>(nl.size());
  long long p = t.p;
  int a = 0;
  {
    long long v = left_nucleus_order;
    while (v > 1) {
      if (v % p) throw std::logic_error("left nucleus order is not a p-power");
      v /= p;
      ++a;
    }
  }
  if (t.m % a) throw std::logic_error("left nucleus degree does not divide the dimension");
  int l = t.m / a;

  // greedy left-nucleus basis and coordinates
  std::vector<uint32_t> basis;
  std::set<uint32_t> span{0};
  auto rebuild_span = [&]() {
    span.clear();
    std::vector<size_t> odo(basis.size(), 0);
    while (true) {
      uint32_t acc = 0;
      for (size_t i = 0; i < basis.size(); ++i) acc = t.add(acc, t.mul(nl[odo[i]], basis[i]));
      span.insert(acc);
      size_t i = 0;
      while (i < odo.size() && ++odo[i] == nl.size()) odo[i++] = 0;
      if (i == odo.size()) break;
      if (basis.empty()) break;
    }
  };
  for (uint32_t x = 1; x < n && static_cast<int>(basis.size()) < l; ++x) {
    if (span.count(x)) continue;
    basis.push_back(x);
    rebuild_span();
  }
  if (static_cast<int>(basis.size()) != l || span.size() != n)
    throw std::logic_error("failed to build a left-nucleus basis");

  std::vector<std::vector<uint32_t>> coord_of(n);
  {
    std::vector<size_t> odo(l, 0);
    while (true) {
      uint32_t acc = 0;
      std::vector<uint32_t> c(l);
      for (int i = 0; i < l; ++i) {
        c[i] = nl[odo[i]];
        acc = t.add(acc, t.mul(c[i], basis[i]));
      }
      coord_of[acc] = std::move(c);
      size_t i = 0;
      while (i < odo.size() && ++odo[i] == nl.size()) odo[i++] = 0;
      if (i == odo.size()) break;
    }
  }

  // right-multiplication matrices over the left nucleus, column-major action
  std::set<uint32_t> nl_set(nl.begin(), nl.end());
  auto matrix_of = [&](uint32_t x) {
    std::vector<std::vector<uint32_t>> mcols(l);
    for (int j = 0; j < l; ++j) mcols[j] = coord_of[t.mul(basis[j], x)];
    return mcols;  // mcols[j][i]: coefficient of basis[i] in basis[j] o x
  };
  auto apply_matrix = [&](const std::vector<std::vector<uint32_t>>& mcols,
                          const std::vector<uint32_t>& c) {
    std::vector<uint32_t> out_c(l, 0);
    for (int j = 0; j < l; ++j)
      for (int i = 0; i < l; ++i)
        out_c[i] = t.add(out_c[i], t.mul(c[j], mcols[j][i]));
    return out_c;
  };
  for (uint32_t x = 0; x < n; ++x) {
    auto mc = matrix_of(x);
    for (uint32_t y = 0; y < n; ++y)
      if (coord_of[t.mul(y, x)] != apply_matrix(mc, coord_of[y]))
        throw std::logic_error("right multiplication is not left-nucleus linear");
  }

  // invertibility of the nonzero endomorphisms: Gaussian elimination over N_l
  auto nl_inv = [&](uint32_t v) {
    for (uint32_t b : nl)
      if (t.mul(v, b) == e) return b;
    throw std::logic_error("left nucleus misses an inverse");
  };
  bool endomorphisms_invertible = true;
  for (uint32_t x = 1; x < n; ++x) {
    auto mc = matrix_of(x);
    // row-reduce the l x l matrix rows[i][j] = mc[j][i]
    std::vector<std::vector<uint32_t>> rows(l, std::vector<uint32_t>(l));
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) rows[i][j] = mc[j][i];
    int rank = 0;
    for (int col = 0; col < l && rank < l; ++col) {
      int piv = -1;
      for (int i = rank; i < l; ++i)
        if (rows[i][col]) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      std::swap(rows[piv], rows[rank]);
      uint32_t s = nl_inv(rows[rank][col]);
      for (int j = 0; j < l; ++j) rows[rank][j] = t.mul(s, rows[rank][j]);
      for (int i = 0; i < l; ++i) {
        if (i == rank || rows[i][col] == 0) continue;
        uint32_t f = rows[i][col];
        for (int j = 0; j < l; ++j)
          rows[i][j] = t.add(rows[i][j], t.neg(t.mul(f, rows[rank][j])));
      }
      ++rank;
    }
    if (rank < l) {
      endomorphisms_invertible = false;
      break;
    }
  }

  // central subfield F_q of the requested order
  long long f_ord = central_subfield_order;
  std::vector<uint32_t> fq;
  for (uint32_t z : rep.center)
    if (z == 0 || t.circ_pow(z, f_ord) == z) fq.push_back(z);
  if (static_cast<long long>(fq.size()) != f_ord)
    throw std::invalid_argument("center has no subfield of the requested order");
  int e_deg = 0;
  {
    long long v = f_ord;
    while (v > 1) {
      v /= p;
      ++e_deg;
    }
  }
  int set_rank = t.m / e_deg;

  // identify the left nucleus with a field tower and reduce the matrix space
  ReductionContext ctx(l * l, a / e_deg, f_ord);
  const FieldTower& tw = ctx.tower();
  std::vector<uint32_t> to_nl(tw.order());
  {
    // root of the tower modulus inside the left nucleus
    uint32_t root = 0;
    bool found = false;
    // z = 0 is the root of the degenerate prime-field modulus x
    for (uint32_t z : nl) {
      uint32_t acc = 0, zp = e;  // z^0
      const auto& mod = tw.modulus();
      for (size_t i = 0; i < mod.size(); ++i) {
        uint32_t term = 0;
        for (long long c = 0; c < mod[i]; ++c) term = t.add(term, zp);
        acc = t.add(acc, term);
        zp = t.mul(zp, z);
      }
      if (acc == 0) {
        root = z;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("left nucleus misses a modulus root");
    for (uint32_t idx = 0; idx < tw.order(); ++idx) {
      auto c = tw.coeffs(idx);
      uint32_t acc = 0, rp = e;
      for (int i = 0; i < tw.h(); ++i) {
        uint32_t term = 0;
        for (int cc = 0; cc < c[i]; ++cc) term = t.add(term, rp);
        acc = t.add(acc, term);
        rp = t.mul(rp, root);
      }
      to_nl[idx] = acc;
    }
  }
  std::vector<uint32_t> from_nl(n, 0);
  for (uint32_t idx = 0; idx < tw.order(); ++idx) from_nl[to_nl[idx]] = idx;

  // F_q-basis of the semifield and the spread-set subspace U
  std::vector<uint32_t> fbasis;
  {
    std::set<uint32_t> fspan{0};
    auto rebuild = [&]() {
      fspan.clear();
      std::vector<size_t> odo(fbasis.size(), 0);
      while (true) {
        uint32_t acc = 0;
        for (size_t i = 0; i < fbasis.size(); ++i) acc = t.add(acc, t.mul(fq[odo[i]], fbasis[i]));
        fspan.insert(acc);
        size_t i = 0;
        while (i < odo.size() && ++odo[i] == fq.size()) odo[i++] = 0;
        if (i == odo.size() || fbasis.empty()) break;
      }
    };
    for (uint32_t x = 1; x < n && static_cast<int>(fbasis.size()) < set_rank; ++x) {
      if (fspan.count(x)) continue;
      fbasis.push_back(x);
      rebuild();
    }
    if (static_cast<int>(fbasis.size()) != set_rank)
      throw std::logic_error("failed to build a central-subfield basis");
  }

  Mat ugens;
  for (uint32_t x : fbasis) {
    auto mc = matrix_of(x);
    Vec flat(static_cast<size_t>(l) * l);
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) flat[i * l + j] = from_nl[mc[j][i]];
    ugens.push_back(ctx.reduce_vector(flat));
  }
  ProjSubspace U = ProjSubspace::canonical(ctx.target(), ugens);
  if (U.rank() != set_rank) throw std::logic_error("spread-set subspace dropped rank");
  return SemifieldSpreadSet{component_count, partition_ok,          components_additive,
                            endomorphisms_invertible, l, left_nucleus_order,
                            set_rank,        make_linear_set(ctx, U)};
}

}  // namespace fieldred
