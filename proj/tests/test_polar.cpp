#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fieldred/polar.hpp"

using namespace fieldred;

namespace {

Space space_over(long long q, int n) {
  long long p;
  int d;
  factor_prime_power(q, p, d);
  return make_space(FieldTower::get(p, d), d, n);
}

}  // namespace

TEST_CASE("standard forms and their zero counts over GF(2)") {
  Space s4 = space_over(2, 4);
  auto hyp = standard_form(StandardKind::Hyperbolic, 4, s4);
  auto t = classify(hyp);
  CHECK(t.label == PolarLabel::Hyperbolic);
  CHECK(t.witt == 2);
  CHECK(count_projective_zeros(hyp) == 9);  // (q+1)^2

  auto ell = standard_form(StandardKind::Elliptic, 4, s4);
  CHECK(classify(ell).label == PolarLabel::Elliptic);
  CHECK(count_projective_zeros(ell) == 5);  // q^2+1

  Space s3 = space_over(2, 3);
  auto par = standard_form(StandardKind::Parabolic, 3, s3);
  CHECK(par.gram[0][0] == 1);
  CHECK(par.gram[1][2] == 1);
  auto tp = classify(par);
  CHECK(tp.label == PolarLabel::Parabolic);
  CHECK(tp.sign == 0);  // no sign in characteristic 2

  CHECK_THROWS_AS(standard_form(StandardKind::Alternating, 3, s3), std::invalid_argument);
  CHECK_THROWS_AS(standard_form(StandardKind::Hyperbolic, 3, s3), std::invalid_argument);
  CHECK_THROWS_AS(standard_form(StandardKind::Hermitian, 2, space_over(2, 2)),
                  std::invalid_argument);
}

TEST_CASE("alternating forms make every point absolute") {
  Space s4 = space_over(2, 4);
  auto alt = standard_form(StandardKind::Alternating, 4, s4);
  CHECK(classify(alt).label == PolarLabel::Symplectic);
  unsigned long long pts = 0, iso = 0;
  for (const auto& p : enumerate_points(s4)) {
    ++pts;
    if (alt.eval_sesquilinear(p, p) == 0) ++iso;
  }
  CHECK(pts == iso);
}

TEST_CASE("parabolic signs in odd characteristic") {
  Space s3 = space_over(3, 3);
  auto plus = classify(standard_form(StandardKind::Parabolic, 3, s3, 1));
  CHECK(plus.label == PolarLabel::Parabolic);
  CHECK(plus.sign == 1);
  // 2 is a non-square mod 3
  auto minus = classify(standard_form(StandardKind::Parabolic, 3, s3, 2));
  CHECK(minus.sign == -1);
}

TEST_CASE("witt index from the greedy search matches the decomposition") {
  for (long long q : {2, 3}) {
    for (int n : {2, 4, 6}) {
      Space sp = space_over(q, n);
      for (auto kind : {StandardKind::Hyperbolic, StandardKind::Elliptic}) {
        auto f = standard_form(kind, n, sp);
        auto dec = orthogonal_decompose(f);
        CHECK(static_cast<int>(dec.hyperbolic_pairs.size()) == classify(f).witt);
        CHECK(dec.leftover.size() == (kind == StandardKind::Hyperbolic ? 0 : 2));
      }
    }
  }
}

TEST_CASE("degeneracy of composed quadratics follows the parity rule") {
  // q = 2, t = 2, r = 1: Q(X0) = X0^2 composes to a degenerate form
  ReductionContext ctx(1, 2, 2);
  auto q1 = standard_form(StandardKind::Parabolic, 1, ctx.source());
  for (uint32_t a = 1; a < 4; ++a) {
    CHECK(classify(trace_compose(ctx, q1, a)).label == PolarLabel::Degenerate);
    CHECK(predicted_type(StandardKind::Parabolic, ctx, a, 1) == PolarLabel::Degenerate);
    CHECK_FALSE(predicted_nondegenerate(StandardKind::Parabolic, ctx, a));
  }
}

TEST_CASE("trace composition preserves hyperbolic and elliptic types") {
  ReductionContext ctx(2, 2, 2);
  auto ell = standard_form(StandardKind::Elliptic, 2, ctx.source());
  CHECK(classify(trace_compose(ctx, ell, 1)).label == PolarLabel::Elliptic);
  auto hyp = standard_form(StandardKind::Hyperbolic, 2, ctx.source());
  CHECK(classify(trace_compose(ctx, hyp, 1)).label == PolarLabel::Hyperbolic);
  CHECK_THROWS_AS(trace_compose(ctx, hyp, 0), std::invalid_argument);
}

TEST_CASE("the composed form evaluates as the trace of the source form") {
  ReductionContext ctx(2, 2, 3);
  const FieldTower& tw = ctx.tower();
  auto f = standard_form(StandardKind::Elliptic, 2, ctx.source());
  for (uint32_t alpha = 1; alpha < tw.order(); ++alpha) {
    FormSpec comp = trace_compose(ctx, f, alpha);
    for (const auto& v : enumerate_points(ctx.target())) {
      uint32_t lifted = f.eval_quadratic(ctx.lift_vector(v));
      CHECK(comp.eval_quadratic(v) == tw.trace_to(tw.mul(alpha, lifted), ctx.subfield_deg()));
    }
  }
}

TEST_CASE("parabolic table rows over GF(9)") {
  // q = 3, t = 2: q^{t/2} = 3 mod 4, so alpha*gamma square means hyperbolic
  ReductionContext ctx(1, 2, 3);
  const FieldTower& f9 = ctx.tower();
  auto par = standard_form(StandardKind::Parabolic, 1, ctx.source(), 1);
  for (uint32_t a = 1; a < 9; ++a) {
    auto pred = predicted_type(StandardKind::Parabolic, ctx, a, 1);
    CHECK(pred == (f9.is_square(a) ? PolarLabel::Hyperbolic : PolarLabel::Elliptic));
    CHECK(classify(trace_compose(ctx, par, a)).label == pred);
  }
}

TEST_CASE("hermitian table rows") {
  // t even, q even, sigma(alpha) = alpha -> symplectic; else atypical
  ReductionContext ctx(2, 2, 2);
  auto herm = standard_form(StandardKind::Hermitian, 2, ctx.source());
  CHECK(classify(herm).label == PolarLabel::Hermitian);
  CHECK(predicted_type(StandardKind::Hermitian, ctx, 1) == PolarLabel::Symplectic);
  CHECK(classify(trace_compose(ctx, herm, 1)).label == PolarLabel::Symplectic);
  CHECK(predicted_type(StandardKind::Hermitian, ctx, 2) == PolarLabel::Atypical);
  CHECK(classify(trace_compose(ctx, herm, 2)).label == PolarLabel::Atypical);

  // t odd needs a square q: q = 4, t = 3
  ReductionContext c43(1, 3, 4);
  const FieldTower& f64 = c43.tower();
  auto h1 = standard_form(StandardKind::Hermitian, 1, c43.source());
  int hermitian_rows = 0, atypical_rows = 0;
  for (uint32_t a = 1; a < f64.order(); ++a) {
    auto pred = predicted_type(StandardKind::Hermitian, c43, a);
    auto got = classify(trace_compose(c43, h1, a)).label;
    CHECK(pred == got);
    bool fixed = f64.frobenius(a, f64.h() / 2) == a;
    CHECK(pred == (fixed ? PolarLabel::Hermitian : PolarLabel::Atypical));
    if (pred == PolarLabel::Hermitian) ++hermitian_rows;
    if (pred == PolarLabel::Atypical) ++atypical_rows;
  }
  CHECK(hermitian_rows == 7);  // |F_8^*|: the sigma-fixed subfield
  CHECK(atypical_rows == 56);

  // t even, q odd: sigma(alpha) = -alpha gives symplectic, = alpha gives a quadric
  ReductionContext c23(2, 2, 3);
  const FieldTower& f9 = c23.tower();
  auto h23 = standard_form(StandardKind::Hermitian, 2, c23.source());
  for (uint32_t a = 1; a < 9; ++a) {
    uint32_t sa = f9.frobenius(a, 1);
    auto pred = predicted_type(StandardKind::Hermitian, c23, a);
    if (sa == a) CHECK(pred == PolarLabel::Hyperbolic);  // r = 2 even
    else if (sa == f9.neg(a)) CHECK(pred == PolarLabel::Symplectic);
    else CHECK(pred == PolarLabel::Atypical);
    CHECK(classify(trace_compose(c23, h23, a)).label == pred);
  }
}

TEST_CASE("alternating forms stay symplectic under composition") {
  for (auto [r, t, q] : std::vector<std::tuple<int, int, long long>>{{2, 2, 2}, {2, 3, 2}, {2, 2, 5}}) {
    ReductionContext ctx(r, t, q);
    auto alt = standard_form(StandardKind::Alternating, r, ctx.source());
    for (uint32_t a = 1; a < ctx.tower().order(); ++a)
      CHECK(classify(trace_compose(ctx, alt, a)).label == PolarLabel::Symplectic);
  }
}

TEST_CASE("absolute subspaces reduce to absolute subspaces") {
  // points of an elliptic line over GF(4) into Q-(3,2)
  ReductionContext ctx(2, 2, 2);
  CHECK(absolute_image_check(ctx, standard_form(StandardKind::Elliptic, 2, ctx.source()), 1));
  // lines of a hyperbolic quadric over GF(4) into singular 3-spaces
  ReductionContext c42(4, 2, 2);
  CHECK(absolute_image_check(c42, standard_form(StandardKind::Hyperbolic, 4, c42.source()), 1));
  // symplectic PG(1,q^2)
  CHECK(absolute_image_check(ctx, standard_form(StandardKind::Alternating, 2, ctx.source()), 1));
  // degenerate composition is refused
  ReductionContext c12(1, 2, 2);
  CHECK_THROWS_AS(
      absolute_image_check(c12, standard_form(StandardKind::Parabolic, 1, c12.source()), 1),
      std::invalid_argument);
}

TEST_CASE("characteristic-2 classification never relies on the polarization alone") {
  // the polarization of a char-2 parabolic quadric is degenerate, yet the
  // quadric itself is nonsingular and classified as parabolic
  Space s3 = space_over(2, 3);
  auto par = standard_form(StandardKind::Parabolic, 3, s3);
  Space s3b = s3;
  Mat pol = par.polarization_gram();
  CHECK(static_cast<int>(rref(s3b, pol).size()) < 3);
  CHECK(classify(par).label == PolarLabel::Parabolic);
}
