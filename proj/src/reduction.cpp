#include "fieldred/reduction.hpp"

#include <algorithm>
#include <set>

namespace fieldred {

ReductionContext::ReductionContext(int r, int t, long long q) : r_(r), t_(t), q_(q) {
  if (r < 1 || t < 1) throw std::invalid_argument("rank and degree must be positive");
  long long p;
  int d;
  factor_prime_power(q, p, d);
  d_ = d;
  tower_ = &FieldTower::get(p, d * t);
}

Vec ReductionContext::reduce_vector(const Vec& src) const {
  if (static_cast<int>(src.size()) != r_) throw std::invalid_argument("source length mismatch");
  Vec out;
  out.reserve(r_ * t_);
  for (uint32_t x : src) {
    auto block = tower_->to_vector(x, d_);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

Vec ReductionContext::lift_vector(const Vec& tgt) const {
  if (static_cast<int>(tgt.size()) != r_ * t_) throw std::invalid_argument("target length mismatch");
  Vec out(r_);
  for (int i = 0; i < r_; ++i) {
    std::vector<uint32_t> block(tgt.begin() + i * t_, tgt.begin() + (i + 1) * t_);
    out[i] = tower_->from_vector(block, d_);
  }
  return out;
}

ProjSubspace ReductionContext::reduce(const ProjSubspace& s) const {
  if (s.space() != source()) throw std::invalid_argument("subspace not in the source space");
  Mat gens;
  for (const auto& row : s.rows()) {
    for (int j = 0; j < t_; ++j) {
      uint32_t gj = tower_->pow(tower_->generator(), j);
      Vec scaled(row.size());
      for (size_t i = 0; i < row.size(); ++i) scaled[i] = tower_->mul(row[i], gj);
      gens.push_back(reduce_vector(scaled));
    }
  }
  return gens.empty() ? ProjSubspace::empty(target()) : ProjSubspace::canonical(target(), gens);
}

Vec ReductionContext::lift_point(const Vec& tgt_point) const {
  return normalize_point(source(), lift_vector(tgt_point));
}

Spread Spread::from_elements(const Space& ambient, std::vector<ProjSubspace> elements) {
  if (elements.empty()) throw std::invalid_argument("spread needs at least one element");
  Spread sp;
  sp.ambient_ = ambient;
  sp.elt_dim_ = elements.front().dim();
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  sp.elements_ = std::move(elements);
  unsigned long long covered = 0;
  for (size_t i = 0; i < sp.elements_.size(); ++i) {
    const auto& e = sp.elements_[i];
    if (e.space() != ambient) throw std::invalid_argument("spread element in wrong space");
    if (e.dim() != sp.elt_dim_)
      throw std::invalid_argument("spread elements have mixed dimensions");
    for (auto& pt : e.points()) {
      auto [it, fresh] = sp.through_.emplace(pt, i);
      if (!fresh) throw std::invalid_argument("spread elements are not disjoint");
      ++covered;
    }
  }
  if (covered != count_points(ambient))
    throw std::invalid_argument("spread does not cover the ambient space");
  return sp;
}

const ProjSubspace& Spread::member_through(const Vec& point) const {
  return elements_[index_through(point)];
}

size_t Spread::index_through(const Vec& point) const {
  auto it = through_.find(normalize_point(ambient_, point));
  if (it == through_.end()) throw std::invalid_argument("point outside the ambient space");
  return it->second;
}

bool Spread::contains_element(const ProjSubspace& e) const {
  return std::binary_search(elements_.begin(), elements_.end(), e);
}

ProjSubspace field_reduce(const ReductionContext& ctx, const ProjSubspace& s) {
  return ctx.reduce(s);
}

Spread desarguesian_spread(const ReductionContext& ctx, unsigned long long budget) {
  Space src = ctx.source();
  unsigned long long n_points = count_points(src);
  if (n_points > budget) throw BudgetExceeded("source point enumeration exceeds budget", n_points);
  std::vector<ProjSubspace> elems;
  elems.reserve(n_points);
  for (const auto& p : enumerate_points(src))
    elems.push_back(ctx.reduce(ProjSubspace::point(src, p)));
  return Spread::from_elements(ctx.target(), std::move(elems));
}

std::vector<ProjSubspace> regulus_through(const ProjSubspace& s1, const ProjSubspace& s2,
                                          const ProjSubspace& s3) {
  const Space& sp = s1.space();
  if (s2.space() != sp || s3.space() != sp) throw std::invalid_argument("ambient space mismatch");
  int t = s1.rank();
  if (s2.rank() != t || s3.rank() != t)
    throw std::invalid_argument("regulus inputs must share a dimension");
  if (meet_of(s1, s2).rank() != 0 || meet_of(s1, s3).rank() != 0 ||
      meet_of(s2, s3).rank() != 0)
    throw std::invalid_argument("regulus inputs must be mutually disjoint");
  ProjSubspace joint = span_of(span_of(s1, s2), s3);
  if (joint.dim() != 2 * t - 1) throw std::invalid_argument("regulus inputs span too small a space");

  const FieldTower& tw = *sp.tower;
  // basis of <s1, s2>; write each generator of s3 as a + b with a in s1, b in s2
  Mat both = s1.rows();
  for (const auto& r : s2.rows()) both.push_back(r);
  Mat a_part, b_part;
  for (const auto& w : s3.rows()) {
    auto coords = solve_in_rows(sp, both, w);
    if (!coords) throw std::logic_error("regulus: third space not inside the span");
    Vec a(sp.n, 0), b(sp.n, 0);
    for (int i = 0; i < t; ++i) {
      for (int j = 0; j < sp.n; ++j) {
        a[j] = tw.add(a[j], tw.mul((*coords)[i], s1.rows()[i][j]));
        b[j] = tw.add(b[j], tw.mul((*coords)[t + i], s2.rows()[i][j]));
      }
    }
    a_part.push_back(std::move(a));
    b_part.push_back(std::move(b));
  }

  std::vector<ProjSubspace> out;
  for (uint32_t lambda : sp.field_elements()) {
    Mat gens;
    for (int i = 0; i < t; ++i) {
      Vec g(sp.n, 0);
      for (int j = 0; j < sp.n; ++j)
        g[j] = tw.add(a_part[i][j], tw.mul(lambda, b_part[i][j]));
      gens.push_back(std::move(g));
    }
    out.push_back(ProjSubspace::canonical(sp, gens));
  }
  out.push_back(s2);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() != sp.field_order() + 1) throw std::logic_error("regulus has wrong cardinality");
  return out;
}

bool is_normal(const Spread& sp) {
  const auto& elems = sp.elements();
  for (size_t i = 0; i < elems.size(); ++i) {
    for (size_t j = i + 1; j < elems.size(); ++j) {
      ProjSubspace w = span_of(elems[i], elems[j]);
      if (w.dim() == sp.ambient().n - 1) continue;  // the whole space partitions trivially
      for (const auto& e : elems) {
        int m = meet_of(e, w).rank();
        if (m != 0 && m != e.rank()) return false;
      }
    }
  }
  return true;
}

Spread regulus_swapped_spread(const Spread& sp) {
  if (sp.element_dim() != 1)
    throw std::invalid_argument("regulus swap implemented for line spreads only");
  const auto& elems = sp.elements();
  ProjSubspace w = span_of(elems[0], elems[1]);
  std::vector<ProjSubspace> inside;
  for (const auto& e : elems)
    if (meet_of(e, w).rank() == e.rank()) inside.push_back(e);
  if (inside.size() < 3) throw std::invalid_argument("no regulus available to swap");
  auto reg = regulus_through(inside[0], inside[1], inside[2]);
  // opposite regulus: the transversal lines through the points of reg[0]
  std::set<ProjSubspace> opposite;
  for (const auto& p : reg[0].points()) {
    ProjSubspace pt = ProjSubspace::point(sp.ambient(), p);
    ProjSubspace tr = meet_of(span_of(pt, reg[1]), span_of(pt, reg[2]));
    if (tr.dim() != 1) throw std::logic_error("transversal is not a line");
    opposite.insert(tr);
  }
  if (opposite.size() != reg.size()) throw std::logic_error("opposite regulus size mismatch");
  std::vector<ProjSubspace> swapped;
  std::set<ProjSubspace> removed(reg.begin(), reg.end());
  for (const auto& e : elems)
    if (!removed.count(e)) swapped.push_back(e);
  for (const auto& e : opposite) swapped.push_back(e);
  return Spread::from_elements(sp.ambient(), std::move(swapped));
}

namespace {

bool point_in_subgeometry(const Space& ext, const Vec& pt, int d) {
  Vec n = normalize_point(ext, pt);
  for (uint32_t x : n)
    if (!ext.tower->in_subfield(x, d)) return false;
  return true;
}

}  // namespace

ProjSubspace find_skew_subspace(const ReductionContext& ctx) {
  Space ext = ctx.extension();
  for (const auto& cand : enumerate_subspaces(ext, ctx.r() - 1)) {
    bool skew = true;
    for (const auto& p : cand.points()) {
      if (point_in_subgeometry(ext, p, ctx.subfield_deg())) {
        skew = false;
        break;
      }
    }
    if (skew) return cand;
  }
  throw std::logic_error("no skew subspace found");
}

ProjSubspace conjugate_span(const ReductionContext& ctx, const Vec& point) {
  Space ext = ctx.extension();
  const FieldTower& tw = ctx.tower();
  Mat gens;
  Vec cur = point;
  for (int i = 0; i < ctx.t(); ++i) {
    gens.push_back(cur);
    for (auto& x : cur) x = tw.frobenius(x, ctx.subfield_deg());
  }
  return ProjSubspace::canonical(ext, gens);
}

Spread spread_via_conjugates(const ReductionContext& ctx, const ProjSubspace& skew) {
  Space ext = ctx.extension();
  if (skew.space() != ext) throw std::invalid_argument("skew space not in the extension space");
  int d = ctx.subfield_deg();
  for (const auto& p : skew.points())
    if (point_in_subgeometry(ext, p, d))
      throw std::invalid_argument("skew space meets the canonical subgeometry");

  std::vector<ProjSubspace> elems;
  for (const auto& p : skew.points()) {
    ProjSubspace lp = conjugate_span(ctx, p);
    if (lp.dim() != ctx.t() - 1)
      throw std::invalid_argument("conjugates of a point do not span a (t-1)-space");
    Mat rational;
    for (const auto& q : lp.points())
      if (point_in_subgeometry(ext, q, d)) rational.push_back(normalize_point(ext, q));
    elems.push_back(ProjSubspace::canonical(ctx.target(), rational));
  }
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return Spread::from_elements(ctx.target(), std::move(elems));
}

DesignInstance abb_design(const Spread& sp) {
  const Space& h = sp.ambient();
  Space big = make_space(*h.tower, h.field_deg, h.n + 1);
  const FieldTower& tw = *h.tower;
  unsigned long long q = h.field_order();

  // affine points: last coordinate normalized to 1, indexed by the remaining
  // coordinates in field-element order
  const auto& elems = h.field_elements();
  std::vector<uint32_t> elem_rank(tw.order(), 0);
  for (size_t i = 0; i < elems.size(); ++i) elem_rank[elems[i]] = static_cast<uint32_t>(i);
  auto affine_id = [&](const Vec& v) {
    // v has big.n entries, last nonzero; rescale so last = 1
    Vec w = v;
    if (w[h.n] != 1) {
      uint32_t s = tw.inv(w[h.n]);
      for (auto& e : w) e = tw.mul(e, s);
    }
    unsigned long long id = 0;
    for (int i = h.n - 1; i >= 0; --i) id = id * q + elem_rank[w[i]];
    return static_cast<uint32_t>(id);
  };

  DesignInstance d;
  d.v = 1;
  for (int i = 0; i < h.n; ++i) d.v *= q;
  unsigned long long k = 1;
  for (int i = 0; i < sp.element_dim() + 1; ++i) k *= q;
  d.k = k;
  d.lambda = 1;

  std::set<std::vector<uint32_t>> blocks;
  std::vector<Vec> affine;
  for (const auto& e : elems) (void)e;
  {
    // all affine points (x_0..x_{n-1}, 1)
    std::vector<size_t> odo(h.n, 0);
    while (true) {
      Vec v(big.n, 0);
      for (int i = 0; i < h.n; ++i) v[i] = elems[odo[i]];
      v[h.n] = 1;
      affine.push_back(v);
      int i = 0;
      while (i < h.n && ++odo[i] == elems.size()) odo[i++] = 0;
      if (i == h.n) break;
    }
  }

  for (const auto& e : sp.elements()) {
    Mat lifted;
    for (const auto& row : e.rows()) {
      Vec r = row;
      r.push_back(0);
      lifted.push_back(std::move(r));
    }
    for (const auto& a : affine) {
      Mat gens = lifted;
      gens.push_back(a);
      ProjSubspace blk = ProjSubspace::canonical(big, gens);
      std::vector<uint32_t> ids;
      for (const auto& p : blk.points())
        if (p[h.n] != 0) ids.push_back(affine_id(p));
      std::sort(ids.begin(), ids.end());
      if (ids.size() != d.k) throw std::logic_error("block has wrong size");
      blocks.insert(std::move(ids));
    }
  }
  d.blocks.assign(blocks.begin(), blocks.end());
  return d;
}

std::optional<std::pair<uint32_t, uint32_t>> DesignInstance::pair_violation() const {
  std::map<std::pair<uint32_t, uint32_t>, unsigned long long> counts;
  for (const auto& blk : blocks)
    for (size_t i = 0; i < blk.size(); ++i)
      for (size_t j = i + 1; j < blk.size(); ++j) counts[{blk[i], blk[j]}]++;
  for (uint32_t i = 0; i < v; ++i)
    for (uint32_t j = i + 1; j < v; ++j) {
      auto it = counts.find({i, j});
      unsigned long long c = (it == counts.end()) ? 0 : it->second;
      if (c != lambda) return std::make_pair(i, j);
    }
  return std::nullopt;
}

SemilinearMap blow_up_map(const ReductionContext& ctx, const SemilinearMap& m) {
  if (m.space != ctx.source()) throw std::invalid_argument("map not on the source space");
  if (!mat_invertible(m.space, m.A)) throw std::invalid_argument("singular input");
  Space tgt = ctx.target();
  Mat rows;
  rows.reserve(tgt.n);
  for (int i = 0; i < tgt.n; ++i) {
    Vec e(tgt.n, 0);
    e[i] = 1;
    Vec src = ctx.lift_vector(e);
    rows.push_back(ctx.reduce_vector(act_point(m, src)));
  }
  return SemilinearMap{tgt, rows, m.frob % ctx.subfield_deg()};
}

Vec segre_point(const Space& target, const Vec& x, const Vec& y) {
  if (is_zero_vec(x) || is_zero_vec(y)) throw std::invalid_argument("zero vector input");
  if (static_cast<int>(x.size() * y.size()) != target.n)
    throw std::invalid_argument("target dimension mismatch");
  const FieldTower& tw = *target.tower;
  Vec z(target.n);
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j) z[i * y.size() + j] = tw.mul(x[i], y[j]);
  return normalize_point(target, z);
}

bool is_on_segre(const Space& sp, const Vec& pt, int l, int k) {
  if ((l + 1) * (k + 1) != sp.n) throw std::invalid_argument("dimension mismatch");
  if (is_zero_vec(pt)) throw std::invalid_argument("zero vector input");
  Mat m(l + 1, Vec(k + 1));
  for (int i = 0; i <= l; ++i)
    for (int j = 0; j <= k; ++j) m[i][j] = pt[i * (k + 1) + j];
  Space rows_sp = sp;
  rows_sp.n = k + 1;
  return rref(rows_sp, m).size() == 1;
}

SegreSystemReport subgeometry_on_segre(const ReductionContext& ctx,
                                       const std::vector<Vec>& subgeo_points) {
  Space src = ctx.source();
  Space tgt = ctx.target();
  SegreSystemReport rep;
  for (const auto& p : subgeo_points) {
    Vec n = normalize_point(src, p);
    for (uint32_t x : n)
      if (!ctx.tower().in_subfield(x, ctx.subfield_deg()))
        throw std::invalid_argument("point not in the canonical subgeometry");
    ProjSubspace img = ctx.reduce(ProjSubspace::point(src, n));
    for (const auto& q : img.points()) {
      if (!is_on_segre(tgt, q, ctx.r() - 1, ctx.t() - 1)) {
        rep.ok = false;
        rep.offending_point = q;
        return rep;
      }
    }
    rep.system.push_back(std::move(img));
  }
  rep.ok = true;
  return rep;
}

std::vector<Vec> canonical_subgeometry_points(const Space& sp, int e) {
  if (sp.field_deg % e != 0)
    throw std::invalid_argument("subgeometry order is not a subfield order");
  Space sub = make_space(*sp.tower, e, sp.n);
  return enumerate_points(sub);
}

}  // namespace fieldred
