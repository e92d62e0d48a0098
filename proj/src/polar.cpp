#include "fieldred/polar.hpp"

#include <algorithm>

namespace fieldred {

const char* to_string(PolarLabel label) {
  switch (label) {
    case PolarLabel::Hyperbolic: return "hyperbolic";
    case PolarLabel::Elliptic: return "elliptic";
    case PolarLabel::Parabolic: return "parabolic";
    case PolarLabel::Hermitian: return "hermitian";
    case PolarLabel::Symplectic: return "symplectic";
    case PolarLabel::PseudoSymplectic: return "pseudo-symplectic";
    case PolarLabel::Atypical: return "atypical";
    case PolarLabel::Degenerate: return "degenerate";
  }
  return "?";
}

const char* to_string(StandardKind kind) {
  switch (kind) {
    case StandardKind::Hyperbolic: return "hyperbolic";
    case StandardKind::Elliptic: return "elliptic";
    case StandardKind::Parabolic: return "parabolic";
    case StandardKind::Hermitian: return "hermitian";
    case StandardKind::Alternating: return "alternating";
    case StandardKind::PseudoSymplectic: return "pseudo-symplectic";
  }
  return "?";
}

uint32_t FormSpec::eval_quadratic(const Vec& v) const {
  const FieldTower& tw = *space.tower;
  uint32_t acc = 0;
  for (int i = 0; i < space.n; ++i) {
    if (v[i] == 0) continue;
    for (int j = i; j < space.n; ++j) {
      if (gram[i][j] == 0 || v[j] == 0) continue;
      acc = tw.add(acc, tw.mul(gram[i][j], tw.mul(v[i], v[j])));
    }
  }
  return acc;
}

uint32_t FormSpec::eval_sesquilinear(const Vec& x, const Vec& y) const {
  const FieldTower& tw = *space.tower;
  uint32_t acc = 0;
  for (int i = 0; i < space.n; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < space.n; ++j) {
      if (gram[i][j] == 0 || y[j] == 0) continue;
      acc = tw.add(acc, tw.mul(x[i], tw.mul(gram[i][j], tw.frobenius(y[j], sigma))));
    }
  }
  return acc;
}

uint32_t FormSpec::polar_form(const Vec& x, const Vec& y) const {
  if (kind == FormKind::Sesquilinear) return eval_sesquilinear(x, y);
  const FieldTower& tw = *space.tower;
  Vec s(space.n);
  for (int i = 0; i < space.n; ++i) s[i] = tw.add(x[i], y[i]);
  return tw.sub(tw.sub(eval_quadratic(s), eval_quadratic(x)), eval_quadratic(y));
}

Mat FormSpec::polarization_gram() const {
  const FieldTower& tw = *space.tower;
  Mat b(space.n, Vec(space.n, 0));
  for (int i = 0; i < space.n; ++i) {
    for (int j = i; j < space.n; ++j) {
      if (i == j) {
        b[i][i] = tw.add(gram[i][i], gram[i][i]);
      } else {
        b[i][j] = gram[i][j];
        b[j][i] = gram[i][j];
      }
    }
  }
  return b;
}

namespace {

Mat zero_gram(int n) { return Mat(n, Vec(n, 0)); }

// rows spanning {x : x * m^T = 0}, i.e. m treated as constraints beta(x, e_j)
std::vector<Vec> left_nullspace(const Space& sp, const Mat& constraints) {
  const FieldTower& tw = *sp.tower;
  int vars = static_cast<int>(constraints.empty() ? 0 : constraints[0].size());
  Space cs = sp;
  cs.n = vars;
  Mat red = rref(cs, constraints);
  std::vector<bool> is_piv(vars, false);
  std::vector<int> piv_col;
  for (const auto& row : red) {
    int c = 0;
    while (row[c] == 0) ++c;
    is_piv[c] = true;
    piv_col.push_back(c);
  }
  std::vector<Vec> basis;
  for (int free = 0; free < vars; ++free) {
    if (is_piv[free]) continue;
    Vec v(vars, 0);
    v[free] = 1;
    for (size_t r = 0; r < red.size(); ++r) v[piv_col[r]] = tw.neg(red[r][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

// radical of the (polarized) form as a list of spanning rows
std::vector<Vec> radical_rows(const FormSpec& f) {
  const Space& sp = f.space;
  Mat b = (f.kind == FormKind::Quadratic) ? f.polarization_gram() : f.gram;
  // x in radical iff sum_i x_i b[i][j] = 0 for all j: constraints matrix is b^T
  Mat bt(sp.n, Vec(sp.n));
  for (int i = 0; i < sp.n; ++i)
    for (int j = 0; j < sp.n; ++j) bt[i][j] = b[j][i];
  return left_nullspace(sp, bt);
}

std::vector<Vec> span_vectors(const Space& sp, const Mat& rows) {
  if (rows.empty()) return {};
  return ProjSubspace::canonical(sp, rows).vectors();
}

bool quadratic_degenerate(const FormSpec& f, Vec* witness) {
  for (auto& v : span_vectors(f.space, radical_rows(f))) {
    if (f.eval_quadratic(v) == 0) {
      if (witness) *witness = v;
      return true;
    }
  }
  return false;
}

// Greedy extension of a totally singular/isotropic subspace over the listed
// candidate points; for nondegenerate forms every maximal such subspace has
// the Witt index as its dimension.
int witt_greedy(const FormSpec& f, const std::vector<Vec>& isotropic_points) {
  const Space& sp = f.space;
  Mat picked;
  Mat span_rref;
  auto in_span = [&](const Vec& v) {
    const FieldTower& tw = *sp.tower;
    Vec w = v;
    for (const auto& row : span_rref) {
      int piv = 0;
      while (row[piv] == 0) ++piv;
      if (w[piv] == 0) continue;
      uint32_t fct = w[piv];
      for (int j = 0; j < sp.n; ++j) w[j] = tw.sub(w[j], tw.mul(fct, row[j]));
    }
    return is_zero_vec(w);
  };
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& c : isotropic_points) {
      if (in_span(c)) continue;
      bool ok = true;
      for (const auto& b : picked) {
        if (f.polar_form(b, c) != 0 || (f.kind == FormKind::Sesquilinear &&
                                        f.eval_sesquilinear(c, b) != 0)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      picked.push_back(c);
      span_rref = rref(sp, picked);
      grew = true;
      break;
    }
  }
  return static_cast<int>(picked.size());
}

bool gram_symmetric(const FormSpec& f) {
  for (int i = 0; i < f.space.n; ++i)
    for (int j = 0; j < f.space.n; ++j)
      if (f.gram[i][j] != f.gram[j][i]) return false;
  return true;
}

bool gram_alternating(const FormSpec& f) {
  const FieldTower& tw = *f.space.tower;
  for (int i = 0; i < f.space.n; ++i) {
    if (f.gram[i][i] != 0) return false;
    for (int j = i + 1; j < f.space.n; ++j)
      if (f.gram[i][j] != tw.neg(f.gram[j][i])) return false;
  }
  return true;
}

bool gram_hermitian(const FormSpec& f) {
  const FieldTower& tw = *f.space.tower;
  int d = f.space.field_deg;
  int s = f.sigma % d;
  if (s == 0) return false;            // companion must be nontrivial
  if ((2 * s) % d != 0) return false;  // and involutory on the field
  for (int i = 0; i < f.space.n; ++i)
    for (int j = 0; j < f.space.n; ++j)
      if (f.gram[i][j] != tw.frobenius(f.gram[j][i], s)) return false;
  return true;
}

}  // namespace

FormSpec standard_form(StandardKind kind, int n, const Space& sp,
                       std::optional<uint32_t> gamma) {
  if (sp.n != n) throw std::invalid_argument("space dimension mismatch");
  const FieldTower& tw = *sp.tower;
  FormSpec f;
  f.space = sp;
  f.gram = zero_gram(n);
  switch (kind) {
    case StandardKind::Hyperbolic: {
      if (n % 2) throw std::invalid_argument("hyperbolic form needs even vector dimension");
      f.kind = FormKind::Quadratic;
      for (int i = 0; i < n; i += 2) f.gram[i][i + 1] = 1;
      break;
    }
    case StandardKind::Elliptic: {
      if (n % 2) throw std::invalid_argument("elliptic form needs even vector dimension");
      f.kind = FormKind::Quadratic;
      // smallest (b, c) in field order making X^2 + bX + c irreducible
      bool found = false;
      for (uint32_t b : sp.field_elements()) {
        for (uint32_t c : sp.field_elements()) {
          if (c == 0) continue;
          bool irred = true;
          for (uint32_t x : sp.field_elements()) {
            uint32_t val = tw.add(tw.add(tw.mul(x, x), tw.mul(b, x)), c);
            if (val == 0) {
              irred = false;
              break;
            }
          }
          if (irred) {
            f.gram[0][0] = 1;
            f.gram[0][1] = b;
            f.gram[1][1] = c;
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (!found) throw std::logic_error("no irreducible binary quadratic found");
      for (int i = 2; i < n; i += 2) f.gram[i][i + 1] = 1;
      break;
    }
    case StandardKind::Parabolic: {
      if (n % 2 == 0) throw std::invalid_argument("parabolic form needs odd vector dimension");
      f.kind = FormKind::Quadratic;
      f.gram[0][0] = gamma.value_or(1);
      if (f.gram[0][0] == 0) throw std::invalid_argument("parabolic coefficient must be nonzero");
      for (int i = 1; i < n; i += 2) f.gram[i][i + 1] = 1;
      break;
    }
    case StandardKind::Hermitian: {
      if (sp.field_deg % 2) throw std::invalid_argument("hermitian form needs a square field order");
      f.kind = FormKind::Sesquilinear;
      f.sigma = sp.field_deg / 2;
      for (int i = 0; i < n; ++i) f.gram[i][i] = 1;
      break;
    }
    case StandardKind::Alternating: {
      if (n % 2) throw std::invalid_argument("alternating form needs even vector dimension");
      f.kind = FormKind::Sesquilinear;
      f.sigma = 0;
      for (int i = 0; i < n; i += 2) {
        f.gram[i][i + 1] = 1;
        f.gram[i + 1][i] = tw.neg(1);
      }
      break;
    }
    case StandardKind::PseudoSymplectic: {
      if (tw.p() != 2) throw std::invalid_argument("pseudo-symplectic forms live over even fields");
      f.kind = FormKind::Sesquilinear;
      f.sigma = 0;
      for (int i = 0; i < n; ++i) f.gram[i][i] = 1;
      break;
    }
  }
  return f;
}

PolarType classify(const FormSpec& f) {
  const Space& sp = f.space;
  const FieldTower& tw = *sp.tower;
  PolarType out;

  if (f.kind == FormKind::Quadratic) {
    if (quadratic_degenerate(f, nullptr)) {
      out.label = PolarLabel::Degenerate;
      return out;
    }
    std::vector<Vec> singular;
    for (auto& p : enumerate_points(sp))
      if (f.eval_quadratic(p) == 0) singular.push_back(std::move(p));
    out.witt = witt_greedy(f, singular);
    if (sp.n % 2 == 0) {
      int m = sp.n / 2;
      if (out.witt == m) {
        out.label = PolarLabel::Hyperbolic;
      } else if (out.witt == m - 1) {
        out.label = PolarLabel::Elliptic;
      } else {
        throw std::logic_error("nondegenerate quadric with unexpected Witt index");
      }
    } else {
      out.label = PolarLabel::Parabolic;
      if (out.witt != sp.n / 2)
        throw std::logic_error("nondegenerate parabolic quadric with unexpected Witt index");
      auto dec = orthogonal_decompose(f);
      if (dec.leftover.size() != 1) throw std::logic_error("parabolic leftover is not a point");
      out.gamma = f.eval_quadratic(dec.leftover[0]);
      if (tw.p() != 2) out.sign = tw.is_square(*out.gamma) ? 1 : -1;
    }
    return out;
  }

  // sesquilinear kinds are classified structurally
  Space sq = sp;
  Mat g = f.gram;
  if (static_cast<int>(rref(sq, g).size()) < sp.n) {
    out.label = PolarLabel::Degenerate;
    return out;
  }
  std::vector<Vec> isotropic;
  auto fill_isotropic = [&]() {
    for (auto& p : enumerate_points(sp))
      if (f.eval_sesquilinear(p, p) == 0) isotropic.push_back(std::move(p));
  };
  int s = f.sigma % sp.field_deg;
  if (s != 0) {
    if (gram_hermitian(f)) {
      out.label = PolarLabel::Hermitian;
      fill_isotropic();
      out.witt = witt_greedy(f, isotropic);
    } else {
      out.label = PolarLabel::Atypical;
    }
    return out;
  }
  if (gram_alternating(f)) {
    out.label = PolarLabel::Symplectic;
    out.witt = sp.n / 2;
    return out;
  }
  if (gram_symmetric(f)) {
    if (tw.p() == 2) {
      out.label = PolarLabel::PseudoSymplectic;
      return out;
    }
    // odd characteristic: the symmetric form is the polarization of
    // Q(x) = beta(x,x)/2; classify that quadric
    FormSpec q;
    q.space = sp;
    q.kind = FormKind::Quadratic;
    q.gram = zero_gram(sp.n);
    uint32_t half = tw.inv(tw.add(1, 1));
    for (int i = 0; i < sp.n; ++i) {
      q.gram[i][i] = tw.mul(half, f.gram[i][i]);
      for (int j = i + 1; j < sp.n; ++j) q.gram[i][j] = f.gram[i][j];
    }
    return classify(q);
  }
  out.label = PolarLabel::Atypical;
  return out;
}

FormSpec trace_compose(const ReductionContext& ctx, const FormSpec& f, uint32_t alpha) {
  if (alpha == 0) throw std::invalid_argument("trace functional needs a nonzero multiplier");
  if (f.space != ctx.source()) throw std::invalid_argument("form not on the source space");
  const FieldTower& tw = ctx.tower();
  int d = ctx.subfield_deg();
  Space tgt = ctx.target();

  // reduction basis vectors w_I = lift of the target unit vectors
  std::vector<Vec> w;
  for (int i = 0; i < tgt.n; ++i) {
    Vec e(tgt.n, 0);
    e[i] = 1;
    w.push_back(ctx.lift_vector(e));
  }

  FormSpec out;
  out.space = tgt;
  out.gram = zero_gram(tgt.n);
  if (f.kind == FormKind::Quadratic) {
    out.kind = FormKind::Quadratic;
    for (int i = 0; i < tgt.n; ++i) {
      out.gram[i][i] = tw.trace_to(tw.mul(alpha, f.eval_quadratic(w[i])), d);
      for (int j = i + 1; j < tgt.n; ++j)
        out.gram[i][j] = tw.trace_to(tw.mul(alpha, f.polar_form(w[i], w[j])), d);
    }
  } else {
    out.kind = FormKind::Sesquilinear;
    out.sigma = f.sigma % d;
    for (int i = 0; i < tgt.n; ++i)
      for (int j = 0; j < tgt.n; ++j)
        out.gram[i][j] = tw.trace_to(tw.mul(alpha, f.eval_sesquilinear(w[i], w[j])), d);
  }
  return out;
}

PolarLabel predicted_type(StandardKind kind, const ReductionContext& ctx, uint32_t alpha,
                          std::optional<uint32_t> gamma) {
  if (alpha == 0) throw std::invalid_argument("trace functional needs a nonzero multiplier");
  const FieldTower& tw = ctx.tower();
  bool q_even = (tw.p() == 2);
  int r = ctx.r(), t = ctx.t();

  switch (kind) {
    case StandardKind::Hyperbolic:
      if (q_even && r % 2) return PolarLabel::Degenerate;
      return PolarLabel::Hyperbolic;
    case StandardKind::Elliptic:
      if (q_even && r % 2) return PolarLabel::Degenerate;
      return PolarLabel::Elliptic;
    case StandardKind::Parabolic: {
      if (q_even) return PolarLabel::Degenerate;  // r is odd for parabolic input
      if (t % 2) return PolarLabel::Parabolic;
      if (!gamma || *gamma == 0)
        throw std::invalid_argument("parabolic prediction needs the decomposition witness");
      unsigned long long qt2 = 1;
      for (int i = 0; i < t / 2; ++i) qt2 = qt2 * static_cast<unsigned long long>(ctx.q()) % 4;
      bool ag_square = tw.is_square(tw.mul(alpha, *gamma));
      bool hyper = (qt2 == 1 && !ag_square) || (qt2 == 3 && ag_square);
      return hyper ? PolarLabel::Hyperbolic : PolarLabel::Elliptic;
    }
    case StandardKind::Hermitian: {
      if (tw.h() % 2) throw std::invalid_argument("hermitian input needs a square field order");
      uint32_t sa = tw.frobenius(alpha, tw.h() / 2);
      if (t % 2) return sa == alpha ? PolarLabel::Hermitian : PolarLabel::Atypical;
      if (q_even) return sa == alpha ? PolarLabel::Symplectic : PolarLabel::Atypical;
      if (sa == tw.neg(alpha)) return PolarLabel::Symplectic;
      if (sa == alpha) return r % 2 ? PolarLabel::Elliptic : PolarLabel::Hyperbolic;
      return PolarLabel::Atypical;
    }
    case StandardKind::Alternating:
      return PolarLabel::Symplectic;
    case StandardKind::PseudoSymplectic:
      if (!q_even) throw std::invalid_argument("pseudo-symplectic input needs an even field");
      return PolarLabel::PseudoSymplectic;
  }
  return PolarLabel::Atypical;
}

bool predicted_nondegenerate(StandardKind kind, const ReductionContext& ctx, uint32_t alpha) {
  if (alpha == 0) return false;
  bool quadratic = (kind == StandardKind::Hyperbolic || kind == StandardKind::Elliptic ||
                    kind == StandardKind::Parabolic);
  if (!quadratic) return true;
  return !(ctx.tower().p() == 2 && ctx.r() % 2);
}

unsigned long long count_projective_zeros(const FormSpec& f) {
  unsigned long long count = 0;
  for (const auto& p : enumerate_points(f.space)) {
    uint32_t v = (f.kind == FormKind::Quadratic) ? f.eval_quadratic(p)
                                                 : f.eval_sesquilinear(p, p);
    if (v == 0) ++count;
  }
  return count;
}

unsigned long long expected_zero_count(PolarLabel label, int n, unsigned long long q) {
  auto qpow = [&](int e) {
    unsigned long long r = 1;
    for (int i = 0; i < e; ++i) r *= q;
    return r;
  };
  switch (label) {
    case PolarLabel::Hyperbolic: {
      int m = n / 2;
      return (qpow(m - 1) + 1) * (qpow(m) - 1) / (q - 1);
    }
    case PolarLabel::Elliptic: {
      int m = n / 2;
      return (qpow(m - 1) - 1) * (qpow(m) + 1) / (q - 1);
    }
    case PolarLabel::Parabolic: {
      return (qpow(n - 1) - 1) / (q - 1);
    }
    default:
      return 0;
  }
}

bool subspace_totally_isotropic(const FormSpec& f, const ProjSubspace& s) {
  const auto& rows = s.rows();
  for (size_t i = 0; i < rows.size(); ++i) {
    if (f.kind == FormKind::Quadratic && f.eval_quadratic(rows[i]) != 0) return false;
    if (f.kind == FormKind::Sesquilinear && f.eval_sesquilinear(rows[i], rows[i]) != 0)
      return false;
    for (size_t j = 0; j < rows.size(); ++j) {
      if (i == j) continue;
      if (f.polar_form(rows[i], rows[j]) != 0) return false;
    }
  }
  return true;
}

bool absolute_image_check(const ReductionContext& ctx, const FormSpec& f, uint32_t alpha) {
  FormSpec composed = trace_compose(ctx, f, alpha);
  if (classify(composed).label == PolarLabel::Degenerate)
    throw std::invalid_argument("composed form is degenerate");
  Space src = ctx.source();
  for (int k = 0; k < ctx.r(); ++k) {
    for (const auto& s : enumerate_subspaces(src, k)) {
      if (!subspace_totally_isotropic(f, s)) continue;
      if (!subspace_totally_isotropic(composed, ctx.reduce(s))) return false;
    }
  }
  return true;
}

OrthogonalDecomposition orthogonal_decompose(const FormSpec& f) {
  if (f.kind != FormKind::Quadratic)
    throw std::invalid_argument("decomposition implemented for quadratic forms");
  const Space& sp = f.space;
  const FieldTower& tw = *sp.tower;
  OrthogonalDecomposition out;
  Mat w = mat_identity(sp);
  while (!w.empty()) {
    // find a singular vector in the span of w
    Vec u;
    {
      Space ws = sp;
      ProjSubspace span = ProjSubspace::canonical(ws, w);
      for (const auto& p : span.points()) {
        if (f.eval_quadratic(p) == 0) {
          u = p;
          break;
        }
      }
    }
    if (u.empty()) break;
    // partner with nonzero polarization against u
    Vec v;
    for (const auto& row : w) {
      if (f.polar_form(u, row) != 0) {
        v = row;
        break;
      }
    }
    if (v.empty()) throw std::logic_error("degenerate restriction in decomposition");
    uint32_t s = tw.inv(f.polar_form(u, v));
    for (auto& e : v) e = tw.mul(e, s);
    uint32_t lam = tw.neg(f.eval_quadratic(v));
    for (int j = 0; j < sp.n; ++j) v[j] = tw.add(v[j], tw.mul(lam, u[j]));
    out.hyperbolic_pairs.emplace_back(u, v);
    // restrict to the perp of <u, v> inside w
    Mat ct(2, Vec(w.size()));
    for (size_t i = 0; i < w.size(); ++i) {
      ct[0][i] = f.polar_form(u, w[i]);
      ct[1][i] = f.polar_form(v, w[i]);
    }
    auto combos = left_nullspace(sp, ct);
    Mat neww;
    for (const auto& c : combos) {
      Vec nv(sp.n, 0);
      for (size_t i = 0; i < w.size(); ++i)
        for (int j = 0; j < sp.n; ++j) nv[j] = tw.add(nv[j], tw.mul(c[i], w[i][j]));
      neww.push_back(std::move(nv));
    }
    Space ws = sp;
    neww = rref(ws, neww);
    if (neww.size() != w.size() - 2) throw std::logic_error("perp restriction has wrong dimension");
    w = std::move(neww);
  }
  out.leftover = w;
  if (out.leftover.size() > 2)
    throw std::logic_error("anisotropic leftover larger than a line; degenerate input?");
  return out;
}

}  // namespace fieldred
