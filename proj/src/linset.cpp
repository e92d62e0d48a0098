#include "fieldred/linset.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

namespace fieldred {

bool LinearSet::contains(const Vec& source_point) const {
  Vec n = normalize_point(ctx.source(), source_point);
  return std::binary_search(points.begin(), points.end(), n);
}

std::map<int, int> LinearSet::weight_histogram() const {
  std::map<int, int> h;
  for (int w : weights) h[w]++;
  return h;
}

LinearSet make_linear_set(const ReductionContext& ctx, const ProjSubspace& U) {
  if (U.space() != ctx.target()) throw std::invalid_argument("subspace not in the reduced space");
  if (U.rank() == 0) throw std::invalid_argument("empty subspace defines no linear set");
  Space src = ctx.source();
  std::map<Vec, long long> mult;
  for (const auto& v : U.vectors()) mult[normalize_point(src, ctx.lift_vector(v))]++;

  LinearSet L{ctx, U, {}, {}};
  long long q = ctx.q();
  for (auto& [pt, m] : mult) {
    long long w = 0, acc = 1;
    while (acc - 1 < m) {
      acc *= q;
      ++w;
    }
    if (acc - 1 != m) throw std::logic_error("point multiplicity is not of the form q^w - 1");
    int meet_rank = meet_of(ctx.reduce(ProjSubspace::point(src, pt)), U).rank();
    if (meet_rank != w)
      throw std::logic_error("weight disagrees between vector counting and spread meet");
    L.points.push_back(pt);
    L.weights.push_back(static_cast<int>(w));
  }
  return L;
}

WeightReport weight_distribution(const LinearSet& L) {
  WeightReport rep;
  rep.histogram = L.weight_histogram();
  long long q = L.ctx.q();
  int k = L.rank();
  auto geom = [&](int e) {  // (q^e - 1)/(q - 1)
    long long acc = 0, p = 1;
    for (int i = 0; i < e; ++i) {
      acc += p;
      p *= q;
    }
    return acc;
  };
  long long sum = 0, weighted = 0;
  for (auto [w, x] : rep.histogram) {
    sum += x;
    weighted += x * geom(w);
  }
  rep.size_matches_sum = (sum == static_cast<long long>(L.size()));
  rep.weighted_identity = (weighted == geom(k));
  rep.size_bound = (static_cast<long long>(L.size()) <= geom(k));
  rep.size_mod_q = (static_cast<long long>(L.size()) % q == 1);
  return rep;
}

bool is_scattered(const LinearSet& L) {
  for (int w : L.weights)
    if (w != 1) return false;
  if (2 * L.rank() > L.ctx.r() * L.ctx.t())
    throw std::logic_error("scattered linear set beyond the rank bound");
  return true;
}

bool is_club(const LinearSet& L) {
  long long q = L.ctx.q();
  return L.rank() == 3 && static_cast<long long>(L.size()) == q * q + 1;
}

namespace {

// every point of the candidate subspace lifts into L and the lifted set is
// all of L
bool defines_same_linear_set(const LinearSet& L, const ProjSubspace& cand) {
  const ReductionContext& ctx = L.ctx;
  Space src = ctx.source();
  bool ok = for_each_point(cand, [&](const Vec& v) {
    return L.contains(normalize_point(src, ctx.lift_vector(v)));
  });
  if (!ok) return false;
  std::set<Vec> lifted;
  for_each_point(cand, [&](const Vec& v) {
    lifted.insert(normalize_point(src, ctx.lift_vector(v)));
    return true;
  });
  return lifted.size() == L.size();
}

}  // namespace

std::vector<ProjSubspace> alt_subspaces_through(const LinearSet& L, const Vec& R,
                                                unsigned long long budget) {
  const ReductionContext& ctx = L.ctx;
  Space tgt = ctx.target();
  Vec Rn = normalize_point(tgt, R);
  if (!L.contains(ctx.lift_point(Rn)))
    throw std::invalid_argument("point is not covered by the linear set");

  std::set<ProjSubspace> found;
  // scalar collineations phi_omega first: they always preserve B(U)
  const FieldTower& tw = ctx.tower();
  for (uint32_t w = 1; w < tw.order(); ++w) {
    Mat rows;
    for (const auto& row : L.subspace.rows()) {
      Vec lifted = ctx.lift_vector(row);
      for (auto& x : lifted) x = tw.mul(x, w);
      rows.push_back(ctx.reduce_vector(lifted));
    }
    ProjSubspace img = ProjSubspace::canonical(tgt, rows);
    if (img.contains_point(Rn)) found.insert(img);
  }
  // exhaustive completion
  for (const auto& cand : subspaces_through(tgt, Rn, L.subspace.dim(), budget))
    if (defines_same_linear_set(L, cand)) found.insert(cand);
  return std::vector<ProjSubspace>(found.begin(), found.end());
}

ProjectionResult project_subgeometry(const ProjectionSpec& spec) {
  if (spec.k < spec.r || spec.r < 1) throw std::invalid_argument("projection needs k >= r >= 1");
  ReductionContext big(spec.k, spec.t, spec.q);
  Space sstar = big.source();
  int expected_center = spec.k - spec.r - 1;  // projective dimension
  if (spec.center.dim() != expected_center)
    throw std::invalid_argument("center has the wrong dimension");
  if (spec.screen.dim() != spec.r - 1) throw std::invalid_argument("screen has the wrong dimension");
  if (spec.center.rank() > 0) {
    if (spec.center.space() != sstar || spec.screen.space() != sstar)
      throw std::invalid_argument("center/screen live in the wrong space");
    if (meet_of(spec.center, spec.screen).rank() != 0)
      throw std::invalid_argument("center meets the screen");
  }

  Mat basis = spec.screen.rows();
  for (const auto& row : spec.center.rows()) basis.push_back(row);
  {
    Mat chk = basis;
    if (static_cast<int>(rref(sstar, chk).size()) != spec.k)
      throw std::invalid_argument("screen and center do not span the space");
  }

  ReductionContext ctx(spec.r, spec.t, spec.q);
  // the projection is the quotient by the center, written in screen coordinates
  Mat pr_rows;
  for (int i = 0; i < spec.k; ++i) {
    Vec e(spec.k, 0);
    e[i] = 1;
    auto coords = solve_in_rows(sstar, basis, e);
    if (!coords) throw std::logic_error("basis does not span the space");
    pr_rows.push_back(Vec(coords->begin(), coords->begin() + spec.r));
  }

  Mat ugens;
  for (const auto& row : pr_rows) ugens.push_back(ctx.reduce_vector(row));
  ProjSubspace U = ProjSubspace::canonical(ctx.target(), ugens);
  if (U.rank() != spec.k)
    throw std::logic_error("projected subspace dropped rank; center meets the subgeometry?");

  ProjectionResult out{make_linear_set(ctx, U), {}, false};

  std::set<Vec> img;
  Space dst = ctx.source();
  for (const auto& x : canonical_subgeometry_points(sstar, big.subfield_deg())) {
    if (spec.center.rank() > 0 && spec.center.contains_point(x))
      throw std::invalid_argument("a subgeometry point lies in the center");
    auto coords = solve_in_rows(sstar, basis, x);
    Vec pr(coords->begin(), coords->begin() + spec.r);
    img.insert(normalize_point(dst, pr));
  }
  out.image_points.assign(img.begin(), img.end());
  if (out.image_points != out.linear_set.points)
    throw std::logic_error("pointwise projection disagrees with the linear set");

  Space over_big = dst;
  Mat lift = pr_rows;
  out.spans_screen = (static_cast<int>(rref(over_big, lift).size()) == spec.r);
  return out;
}

std::vector<Vec> subline_through(const Space& sp, const Vec& p1, const Vec& p2, const Vec& p3,
                                 int e) {
  const FieldTower& tw = *sp.tower;
  if (sp.tower->h() % e != 0) throw std::invalid_argument("no subfield of that order");
  Vec a = normalize_point(sp, p1), b = normalize_point(sp, p2), c = normalize_point(sp, p3);
  if (a == b || a == c || b == c) throw std::invalid_argument("subline needs distinct points");
  auto coords = solve_in_rows(sp, Mat{a, b}, c);
  if (!coords) throw std::invalid_argument("subline needs collinear points");
  uint32_t x = (*coords)[0], y = (*coords)[1];
  if (x == 0 || y == 0) throw std::logic_error("distinct collinear points give nonzero parts");
  Vec ap(sp.n), bp(sp.n);
  for (int j = 0; j < sp.n; ++j) {
    ap[j] = tw.mul(x, a[j]);
    bp[j] = tw.mul(y, b[j]);
  }
  std::set<Vec> pts;
  pts.insert(normalize_point(sp, bp));
  for (uint32_t lam : tw.subfield_elements(e)) {
    Vec v(sp.n);
    for (int j = 0; j < sp.n; ++j) v[j] = tw.add(ap[j], tw.mul(lam, bp[j]));
    pts.insert(normalize_point(sp, v));
  }
  return std::vector<Vec>(pts.begin(), pts.end());
}

IntersectionReport intersect_linear_sets(const LinearSet& a, const LinearSet& b) {
  if (a.ctx.source() != b.ctx.source()) throw std::invalid_argument("ambient space mismatch");
  IntersectionReport rep;
  std::set_intersection(a.points.begin(), a.points.end(), b.points.begin(), b.points.end(),
                        std::back_inserter(rep.points));
  rep.count = rep.points.size();

  long long q = a.ctx.q();
  auto check_subline_bound = [&](const LinearSet& sub, const LinearSet& other) {
    if (sub.rank() != 2) return;
    for (int w : sub.weights)
      if (w != 1) return;  // a rank-2 set with a fat point is a single point
    long long bound = std::min<long long>(q + 1, other.rank());
    if (static_cast<long long>(rep.count) > bound &&
        static_cast<long long>(rep.count) != q + 1)
      throw std::logic_error("subline intersection exceeds the theorem bound");
  };
  check_subline_bound(a, b);
  check_subline_bound(b, a);
  if (a.rank() == 3 && b.rank() == 3 && q > 3 && a.ctx.r() == 2) {
    long long bound = (q % 2) ? 2 * q + 2 : 2 * q + 3;
    if (static_cast<long long>(rep.count) > bound)
      throw std::logic_error("rank-3 intersection exceeds the theorem bound");
  }
  return rep;
}

bool is_subgeometry(const Space& sp, const std::vector<Vec>& pts, int e) {
  if (sp.field_deg % e != 0) return false;
  if (pts.empty()) return false;
  std::vector<Vec> norm;
  for (const auto& p : pts) norm.push_back(normalize_point(sp, p));
  std::sort(norm.begin(), norm.end());
  norm.erase(std::unique(norm.begin(), norm.end()), norm.end());
  if (norm.size() == 1) return true;  // a point is a PG(0, p^e)

  Mat basis;
  {
    Mat acc;
    for (const auto& p : norm) {
      Mat trial = acc;
      trial.push_back(p);
      if (rref(sp, trial).size() > acc.size()) {
        acc = std::move(trial);
        basis.push_back(p);
      }
    }
  }
  int d = static_cast<int>(basis.size()) - 1;  // projective dimension of the span
  long long sub_order = 1;
  for (int i = 0; i < e; ++i) sub_order *= sp.tower->p();
  long long expected = 0, pw = 1;
  for (int i = 0; i <= d; ++i) {
    expected += pw;
    pw *= sub_order;
  }
  if (static_cast<long long>(norm.size()) != expected) return false;

  // find a unit point and rescale the basis into a frame
  Mat frame;
  for (const auto& p : norm) {
    auto coords = solve_in_rows(sp, basis, p);
    if (!coords) return false;
    bool unit = true;
    for (uint32_t c : *coords)
      if (c == 0) {
        unit = false;
        break;
      }
    if (!unit) continue;
    frame = basis;
    for (size_t i = 0; i < frame.size(); ++i)
      for (auto& x : frame[i]) x = sp.tower->mul(x, (*coords)[i]);
    break;
  }
  if (frame.empty()) return false;

  for (const auto& p : norm) {
    auto coords = solve_in_rows(sp, frame, p);
    if (!coords) return false;
    Space cs = sp;
    cs.n = static_cast<int>(frame.size());
    Vec nc = normalize_point(cs, *coords);
    for (uint32_t c : nc)
      if (!sp.tower->in_subfield(c, e)) return false;
  }
  return true;
}

SubgeometryDecomposition intersect_subgeometries(const Space& sp, const std::vector<Vec>& g1,
                                                 int te, const std::vector<Vec>& g2, int tpe) {
  if (!is_subgeometry(sp, g1, te) || !is_subgeometry(sp, g2, tpe))
    throw std::invalid_argument("inputs are not subgeometries");
  SubgeometryDecomposition out;
  out.component_order_exp = std::gcd(te, tpe);

  std::vector<Vec> a, b, inter;
  for (const auto& p : g1) a.push_back(normalize_point(sp, p));
  for (const auto& p : g2) b.push_back(normalize_point(sp, p));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
  if (inter.empty()) {
    out.components_ok = out.independent = out.count_bound_ok = true;
    return out;
  }

  // components: connect two points when the line through them carries a
  // third intersection point
  size_t n = inter.size();
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t i) {
    return parent[i] == i ? i : parent[i] = find(parent[i]);
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      ProjSubspace line = ProjSubspace::canonical(sp, Mat{inter[i], inter[j]});
      for (size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (line.contains_point(inter[k])) {
          parent[find(i)] = find(j);
          break;
        }
      }
    }
  std::map<size_t, std::vector<Vec>> comps;
  for (size_t i = 0; i < n; ++i) comps[find(i)].push_back(inter[i]);

  out.components_ok = true;
  Mat all_rows;
  int rank_sum = 0;
  for (auto& [root, pts] : comps) {
    out.components.push_back(pts);
    ProjSubspace span = ProjSubspace::canonical(sp, Mat(pts.begin(), pts.end()));
    rank_sum += span.rank();
    for (const auto& row : span.rows()) all_rows.push_back(row);
    out.spans.push_back(std::move(span));
    if (!is_subgeometry(sp, pts, out.component_order_exp)) out.components_ok = false;
  }
  out.independent = (static_cast<int>(rref(sp, all_rows).size()) == rank_sum);

  long long ppow = 1;
  for (int i = 0; i < tpe; ++i) ppow *= sp.tower->p();
  out.count_bound_ok =
      (static_cast<long long>(out.components.size()) <= (sp.field_order() - 1) / (ppow - 1));
  return out;
}

LinearSet build_L_rho_f(const ReductionContext& ctx, const ProjSubspace& t1,
                        const ProjSubspace& t2, int sigma_exp, uint32_t rho) {
  if (ctx.r() % 2) throw std::invalid_argument("the ambient space must be PG(2r-1, q^t)");
  int r = ctx.r() / 2;
  Space src = ctx.source();
  if (t1.space() != src || t2.space() != src)
    throw std::invalid_argument("transversal spaces live in the wrong space");
  if (t1.rank() != r || t2.rank() != r)
    throw std::invalid_argument("transversal spaces have the wrong dimension");
  if (meet_of(t1, t2).rank() != 0) throw std::invalid_argument("transversal spaces must be disjoint");
  if (rho == 0) throw std::invalid_argument("rho must be nonzero");
  const FieldTower& tw = ctx.tower();
  int h = tw.h();
  int fixed = std::gcd(((sigma_exp % h) + h) % h, h);
  if (fixed != ctx.subfield_deg())
    throw std::invalid_argument("companion automorphism must fix exactly F_q");

  Mat ugens;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < ctx.t(); ++j) {
      uint32_t gj = tw.pow(tw.generator(), j);
      uint32_t gjs = tw.frobenius(gj, sigma_exp);
      Vec v(src.n, 0);
      for (int c = 0; c < src.n; ++c) {
        uint32_t left = tw.mul(gj, t1.rows()[i][c]);
        uint32_t right = tw.mul(tw.mul(rho, gjs), t2.rows()[i][c]);
        v[c] = tw.add(left, right);
      }
      ugens.push_back(ctx.reduce_vector(v));
    }
  }
  ProjSubspace U = ProjSubspace::canonical(ctx.target(), ugens);
  if (U.rank() != r * ctx.t()) throw std::logic_error("graph subspace dropped rank");
  LinearSet L = make_linear_set(ctx, U);
  if (!is_scattered(L)) throw std::logic_error("graph linear set is not scattered");
  return L;
}

Pseudoregulus pseudoregulus_of(const LinearSet& L) {
  const ReductionContext& ctx = L.ctx;
  if (ctx.t() != 3) throw std::invalid_argument("pseudoregulus needs t = 3");
  if (ctx.r() % 2) throw std::invalid_argument("pseudoregulus needs PG(2r-1, q^3)");
  int r = ctx.r() / 2;
  if (L.rank() != 3 * r || !is_scattered(L))
    throw std::invalid_argument("linear set is not maximum scattered");
  long long q = ctx.q();
  Space src = ctx.source();

  Pseudoregulus out;
  std::vector<ProjSubspace> lines = enumerate_subspaces(src, 1);
  std::vector<size_t> secant_idx;
  for (size_t li = 0; li < lines.size(); ++li) {
    size_t hits = 0;
    for_each_point(lines[li], [&](const Vec& v) {
      if (L.contains(v)) ++hits;
      return true;
    });
    out.line_spectrum[hits]++;
    if (hits == static_cast<size_t>(q * q + q + 1)) {
      out.secants.push_back(lines[li]);
      secant_idx.push_back(li);
    }
  }
  for (auto& [hits, cnt] : out.line_spectrum) {
    if (hits != 0 && hits != 1 && hits != static_cast<size_t>(q + 1) &&
        hits != static_cast<size_t>(q * q + q + 1))
      throw std::logic_error("unexpected line intersection size");
    (void)cnt;
  }
  unsigned long long expected = 1;
  for (int i = 0; i < 3 * r; ++i) expected *= q;
  expected = (expected - 1) / (q * q * q - 1);
  if (out.secants.size() != expected) throw std::logic_error("wrong number of long secants");
  for (size_t i = 0; i < out.secants.size(); ++i)
    for (size_t j = i + 1; j < out.secants.size(); ++j)
      if (meet_of(out.secants[i], out.secants[j]).rank() != 0)
        throw std::logic_error("long secants are not disjoint");
  for (const auto& p : L.points) {
    size_t on = 0;
    for (const auto& s : out.secants)
      if (s.contains_point(p)) ++on;
    if (on != 1) throw std::logic_error("a point is not on exactly one long secant");
  }

  // transversal spaces: (r-1)-spaces disjoint from L meeting every secant
  std::vector<ProjSubspace> transversals;
  auto candidates = (r == 2) ? lines : enumerate_subspaces(src, r - 1);
  for (const auto& c : candidates) {
    bool disjoint = for_each_point(c, [&](const Vec& v) { return !L.contains(v); });
    if (!disjoint) continue;
    bool meets_all = true;
    for (const auto& s : out.secants)
      if (meet_of(c, s).rank() == 0) {
        meets_all = false;
        break;
      }
    if (meets_all) transversals.push_back(c);
  }
  if (transversals.size() != 2) throw std::logic_error("expected exactly two transversal spaces");
  out.t1 = transversals[0];
  out.t2 = transversals[1];
  return out;
}

// ---------------------------------------------------------------------------
// equivalence engines

namespace {

struct PointIndex {
  std::vector<Vec> pts;
  std::map<Vec, uint32_t> id;
};

PointIndex index_points(const Space& sp) {
  PointIndex pi;
  pi.pts = enumerate_points(sp);
  for (uint32_t i = 0; i < pi.pts.size(); ++i) pi.id[pi.pts[i]] = i;
  return pi;
}

using Perm = std::vector<uint32_t>;

Perm perm_of_matrix(const Space& sp, const PointIndex& pi, const Mat& m) {
  Perm perm(pi.pts.size());
  for (uint32_t i = 0; i < pi.pts.size(); ++i)
    perm[i] = pi.id.at(normalize_point(sp, mat_apply(sp, pi.pts[i], m)));
  return perm;
}

Perm perm_of_frobenius(const Space& sp, const PointIndex& pi, int e) {
  const FieldTower& tw = *sp.tower;
  Perm perm(pi.pts.size());
  for (uint32_t i = 0; i < pi.pts.size(); ++i) {
    Vec v = pi.pts[i];
    for (auto& x : v) x = tw.frobenius(x, e);
    perm[i] = pi.id.at(normalize_point(sp, v));
  }
  return perm;
}

// transvections over all field scalars plus one dilation generate GL(n, q)
std::vector<Mat> gl_generators(const Space& sp) {
  const FieldTower& tw = *sp.tower;
  std::vector<Mat> gens;
  for (int i = 0; i < sp.n; ++i)
    for (int j = 0; j < sp.n; ++j) {
      if (i == j) continue;
      for (uint32_t lam : sp.field_elements()) {
        if (lam == 0) continue;
        Mat m = mat_identity(sp);
        m[i][j] = lam;
        gens.push_back(std::move(m));
      }
    }
  if (sp.field_order() > 2) {
    uint32_t zeta = tw.pow(tw.generator(), (tw.order() - 1) / (sp.field_order() - 1));
    Mat m = mat_identity(sp);
    m[0][0] = zeta;
    gens.push_back(std::move(m));
  }
  return gens;
}

std::vector<uint32_t> apply_perm_to_set(const Perm& perm, const std::vector<uint32_t>& s) {
  std::vector<uint32_t> out;
  out.reserve(s.size());
  for (uint32_t x : s) out.push_back(perm[x]);
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::vector<uint32_t>> set_orbit(const std::vector<Perm>& perms,
                                          const std::vector<uint32_t>& seed) {
  std::set<std::vector<uint32_t>> orbit{seed};
  std::queue<std::vector<uint32_t>> work;
  work.push(seed);
  while (!work.empty()) {
    auto cur = work.front();
    work.pop();
    for (const auto& p : perms) {
      auto img = apply_perm_to_set(p, cur);
      if (orbit.insert(img).second) work.push(img);
    }
  }
  return orbit;
}

// orbit representative per point under the generated permutation group
std::vector<uint32_t> point_orbit_reps(const std::vector<Perm>& perms, size_t n) {
  std::vector<uint32_t> rep(n);
  std::iota(rep.begin(), rep.end(), 0u);
  std::vector<bool> seen(n, false);
  for (uint32_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::queue<uint32_t> work;
    work.push(s);
    seen[s] = true;
    rep[s] = s;
    while (!work.empty()) {
      uint32_t cur = work.front();
      work.pop();
      for (const auto& p : perms) {
        uint32_t img = p[cur];
        if (!seen[img]) {
          seen[img] = true;
          rep[img] = s;
          work.push(img);
        }
      }
    }
  }
  return rep;
}

struct FamilySets {
  std::vector<std::vector<uint32_t>> sets;  // distinct, sorted ids
};

EquivalenceReport direct_engine(LinsetFamily fam, int t, long long q,
                                unsigned long long budget) {
  ReductionContext ctx(2, t, q);
  Space src = ctx.source();
  PointIndex pi = index_points(src);

  std::set<std::vector<uint32_t>> family;
  long long club_size = q * q + 1, scat_size = q * q + q + 1;
  for (const auto& U : enumerate_subspaces(ctx.target(), 2, budget)) {
    std::set<uint32_t> ids;
    for (const auto& v : U.vectors())
      ids.insert(pi.id.at(normalize_point(src, ctx.lift_vector(v))));
    long long sz = static_cast<long long>(ids.size());
    if ((fam == LinsetFamily::Clubs && sz == club_size) ||
        (fam == LinsetFamily::ScatteredRank3 && sz == scat_size))
      family.insert(std::vector<uint32_t>(ids.begin(), ids.end()));
  }

  std::vector<Perm> lin;
  for (const auto& m : gl_generators(src)) lin.push_back(perm_of_matrix(src, pi, m));
  Perm frob = perm_of_frobenius(src, pi, 1);

  EquivalenceReport rep;
  rep.method = "direct";
  std::map<std::vector<uint32_t>, int> cls;
  for (const auto& s : family) {
    if (cls.count(s)) continue;
    int c = rep.pgl_classes++;
    rep.representatives.push_back(s);
    for (const auto& o : set_orbit(lin, s)) {
      auto it = family.find(o);
      if (it != family.end()) cls[o] = c;
    }
  }
  // merge classes under the Frobenius action
  std::vector<int> parent(rep.pgl_classes);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) {
    return parent[i] == i ? i : parent[i] = find(parent[i]);
  };
  for (const auto& [s, c] : cls) {
    auto img = apply_perm_to_set(frob, s);
    parent[find(c)] = find(cls.at(img));
  }
  std::set<int> roots;
  for (int c = 0; c < rep.pgl_classes; ++c) roots.insert(find(c));
  rep.pgammal_classes = static_cast<int>(roots.size());
  return rep;
}

EquivalenceReport stabilizer_engine(LinsetFamily fam, int t, long long q) {
  long long p;
  int d;
  factor_prime_power(q, p, d);
  const FieldTower& tw = FieldTower::get(p, d * t);
  Space plane = make_space(tw, tw.h(), 3);     // PG(2, q^t)
  Space line_sp = make_space(tw, tw.h(), 2);   // abstract PG(1, q^t)
  PointIndex ppi = index_points(plane);
  PointIndex lpi = index_points(line_sp);

  // the canonical subplane of order q and its extended lines
  std::vector<Vec> sub = canonical_subgeometry_points(plane, d);
  std::set<uint32_t> sub_ids;
  for (const auto& x : sub) sub_ids.insert(ppi.id.at(x));
  std::set<ProjSubspace> ext_lines;
  for (size_t i = 0; i < sub.size(); ++i)
    for (size_t j = i + 1; j < sub.size(); ++j)
      ext_lines.insert(ProjSubspace::canonical(plane, Mat{sub[i], sub[j]}));
  std::set<uint32_t> on_ext;
  for (const auto& l : ext_lines)
    for (const auto& x : l.points()) on_ext.insert(ppi.id.at(x));

  std::vector<uint32_t> centers;
  for (uint32_t i = 0; i < ppi.pts.size(); ++i) {
    if (sub_ids.count(i)) continue;
    bool club_center = on_ext.count(i) > 0;
    if ((fam == LinsetFamily::Clubs) == club_center) centers.push_back(i);
  }

  // stabilizer of the subplane: GL(3, q) matrices plus the Frobenius x -> x^p
  Space q_plane = make_space(tw, d, 3);
  std::vector<Perm> lin;
  for (const auto& m : gl_generators(q_plane)) lin.push_back(perm_of_matrix(plane, ppi, m));
  std::vector<Perm> semi = lin;
  semi.push_back(perm_of_frobenius(plane, ppi, 1));

  auto semi_reps = point_orbit_reps(semi, ppi.pts.size());
  auto lin_reps = point_orbit_reps(lin, ppi.pts.size());
  std::set<uint32_t> semi_orbits, lin_orbits;
  for (uint32_t c : centers) {
    semi_orbits.insert(semi_reps[c]);
    lin_orbits.insert(lin_reps[c]);
  }

  // project a center onto a deterministic screen and read off the point set
  auto lines = enumerate_subspaces(plane, 1);
  auto project = [&](uint32_t center_id) {
    const Vec& c = ppi.pts[center_id];
    const ProjSubspace* screen = nullptr;
    for (const auto& l : lines)
      if (!l.contains_point(c)) {
        screen = &l;
        break;
      }
    std::set<uint32_t> ids;
    for (const auto& x : sub) {
      ProjSubspace thru = ProjSubspace::canonical(plane, Mat{c, x});
      ProjSubspace pt = meet_of(thru, *screen);
      if (pt.rank() != 1) throw std::logic_error("projection line misses the screen");
      Vec coords = screen->internal_coords(pt.rows()[0]);
      ids.insert(lpi.id.at(normalize_point(line_sp, coords)));
    }
    return std::vector<uint32_t>(ids.begin(), ids.end());
  };

  // refine the candidate linear orbits by direct PGL(2, q^t) tests
  std::vector<Perm> line_lin;
  for (const auto& m : gl_generators(line_sp)) line_lin.push_back(perm_of_matrix(line_sp, lpi, m));
  Perm line_frob = perm_of_frobenius(line_sp, lpi, 1);

  EquivalenceReport rep;
  rep.method = "stabilizer";
  std::vector<std::set<std::vector<uint32_t>>> class_orbits;
  std::vector<std::vector<uint32_t>> class_reps;
  for (uint32_t c : lin_orbits) {
    auto s = project(c);
    bool merged = false;
    for (auto& orb : class_orbits)
      if (orb.count(s)) {
        merged = true;
        break;
      }
    if (!merged) {
      class_orbits.push_back(set_orbit(line_lin, s));
      class_reps.push_back(s);
    }
  }
  rep.pgl_classes = static_cast<int>(class_orbits.size());
  rep.representatives = class_reps;

  // the semilinear count from the stabilizer orbits, cross-checked against
  // merging the projective classes under Frobenius
  rep.pgammal_classes = static_cast<int>(semi_orbits.size());
  {
    std::vector<int> parent(class_orbits.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int i) {
      return parent[i] == i ? i : parent[i] = find(parent[i]);
    };
    for (size_t i = 0; i < class_reps.size(); ++i) {
      auto img = apply_perm_to_set(line_frob, class_reps[i]);
      for (size_t j = 0; j < class_orbits.size(); ++j)
        if (class_orbits[j].count(img)) {
          parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
          break;
        }
    }
    std::set<int> roots;
    for (size_t i = 0; i < class_orbits.size(); ++i) roots.insert(find(static_cast<int>(i)));
    if (static_cast<int>(roots.size()) != rep.pgammal_classes)
      throw std::logic_error("stabilizer and direct semilinear counts disagree");
  }
  return rep;
}

}  // namespace

EquivalenceReport equivalence_classes(LinsetFamily fam, int t, long long q, EquivMethod method,
                                      unsigned long long budget) {
  if (method == EquivMethod::Direct) return direct_engine(fam, t, q, budget);
  if (method == EquivMethod::Stabilizer) return stabilizer_engine(fam, t, q);
  // the stabilizer reduction acts on ~q^{2t} centers instead of the rank-3
  // subspace lattice; prefer it
  return stabilizer_engine(fam, t, q);
}

}  // namespace fieldred
