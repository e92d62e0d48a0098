#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "fieldred/projspace.hpp"

using namespace fieldred;

namespace {

// independent oracle for subspace counts
unsigned long long gauss_oracle(int n, int k, unsigned long long q) {
  // prod_{i=0}^{k-1} (q^n - q^i) / (q^k - q^i)
  long double acc = 1.0L;
  auto qpow = [&](int e) {
    long double r = 1;
    for (int i = 0; i < e; ++i) r *= q;
    return r;
  };
  for (int i = 0; i < k; ++i) acc *= (qpow(n) - qpow(i)) / (qpow(k) - qpow(i));
  return static_cast<unsigned long long>(acc + 0.5L);
}

}  // namespace

TEST_CASE("canonical form merges generator sets with equal span") {
  const auto& f2 = FieldTower::get(2, 1);
  Space sp = make_space(f2, 1, 3);
  auto s = ProjSubspace::canonical(sp, {{0, 1, 1}, {0, 1, 0}});
  CHECK(s.rows() == Mat{{0, 1, 0}, {0, 0, 1}});

  const auto& f9 = FieldTower::get(3, 2);
  Space sp9 = make_space(f9, 2, 3);
  auto pt = ProjSubspace::canonical(sp9, {{0, 2, 1}});
  CHECK(pt.rows()[0][1] == 1);  // leading coefficient scaled to 1

  CHECK(ProjSubspace::canonical(sp, {}).dim() == -1);
  CHECK_THROWS_AS(ProjSubspace::canonical(sp, {{1, 0}}), std::invalid_argument);
}

TEST_CASE("lattice operations and the dimension identity") {
  const auto& f4 = FieldTower::get(2, 2);
  Space pg2 = make_space(f4, 2, 3);
  auto l1 = ProjSubspace::canonical(pg2, {{1, 0, 0}, {0, 1, 0}});
  auto l2 = ProjSubspace::canonical(pg2, {{1, 0, 0}, {0, 0, 1}});
  CHECK(meet_of(l1, l2).dim() == 0);  // two lines of a plane meet in a point
  CHECK(span_of(l1, ProjSubspace::empty(pg2)) == l1);

  // exhaustive dimension identity on PG(3,2) and PG(2,3)
  {
    const auto& f2 = FieldTower::get(2, 1);
    Space sp = make_space(f2, 1, 4);
    std::vector<ProjSubspace> all{ProjSubspace::empty(sp)};
    for (int k = 0; k < 4; ++k)
      for (auto& s : enumerate_subspaces(sp, k)) all.push_back(std::move(s));
    unsigned long long bad = 0;
    for (const auto& a : all)
      for (const auto& b : all) {
        auto sp_ = span_of(a, b), mt = meet_of(a, b);
        bad += a.dim() + b.dim() != sp_.dim() + mt.dim();
        bad += !sp_.contains(a) || !sp_.contains(b) || !a.contains(mt) || !b.contains(mt);
      }
    CHECK(bad == 0);
  }
  {
    const auto& f3 = FieldTower::get(3, 1);
    Space sp = make_space(f3, 1, 3);
    std::vector<ProjSubspace> all{ProjSubspace::empty(sp)};
    for (int k = 0; k < 3; ++k)
      for (auto& s : enumerate_subspaces(sp, k)) all.push_back(std::move(s));
    unsigned long long bad = 0;
    for (const auto& a : all)
      for (const auto& b : all) bad += a.dim() + b.dim() != span_of(a, b).dim() + meet_of(a, b).dim();
    CHECK(bad == 0);
  }
}

TEST_CASE("enumeration counts match the Gaussian binomial oracle") {
  const auto& f2 = FieldTower::get(2, 1);
  CHECK(enumerate_points(make_space(f2, 1, 3)).size() == 7);
  CHECK(enumerate_subspaces(make_space(f2, 1, 4), 1).size() == 35);
  CHECK(enumerate_subspaces(make_space(f2, 1, 6), 2).size() == 1395);
  CHECK(gauss_oracle(4, 2, 2) == 35);
  CHECK(gauss_oracle(6, 3, 2) == 1395);
  CHECK(gaussian_binomial(4, 2, 2) == 35);
  CHECK(gaussian_binomial(6, 3, 2) == 1395);

  const auto& f3 = FieldTower::get(3, 1);
  for (int n = 2; n <= 4; ++n)
    for (int k = 0; k < n; ++k)
      CHECK(enumerate_subspaces(make_space(f3, 1, n), k).size() ==
            gauss_oracle(n, k + 1, 3));
}

TEST_CASE("enumeration is sorted and duplicate-free") {
  const auto& f3 = FieldTower::get(3, 1);
  auto lines = enumerate_subspaces(make_space(f3, 1, 4), 1);
  for (size_t i = 1; i < lines.size(); ++i) CHECK(lines[i - 1].rows() < lines[i].rows());
}

TEST_CASE("enumeration budget") {
  const auto& f3 = FieldTower::get(3, 1);
  CHECK_THROWS_AS(enumerate_subspaces(make_space(f3, 1, 4), 1, 10), BudgetExceeded);
}

TEST_CASE("subspaces through a point") {
  const auto& f2 = FieldTower::get(2, 1);
  Space sp = make_space(f2, 1, 4);
  Vec pt = {1, 0, 1, 0};
  auto lines = subspaces_through(sp, pt, 1);
  CHECK(lines.size() == 7);  // [3 choose 1]_2
  for (const auto& l : lines) CHECK(l.contains_point(pt));
  auto planes = subspaces_through(sp, pt, 2);
  CHECK(planes.size() == 7);  // [3 choose 2]_2
}

TEST_CASE("semilinear action") {
  const auto& f4 = FieldTower::get(2, 2);
  Space sp = make_space(f4, 2, 2);
  auto id = SemilinearMap::identity(sp);
  for (const auto& p : enumerate_points(sp))
    CHECK(act(id, ProjSubspace::point(sp, p)) == ProjSubspace::point(sp, p));

  // Frobenius fixes prime-field subspaces
  SemilinearMap frob{sp, mat_identity(sp), 1};
  auto rational = ProjSubspace::canonical(sp, {{1, 1}});
  CHECK(act(frob, rational) == rational);

  // orbit of a point under PGL(2,4) covers the whole line
  std::set<ProjSubspace> orbit;
  const auto& elems = sp.field_elements();
  for (uint32_t a : elems)
    for (uint32_t b : elems)
      for (uint32_t c : elems)
        for (uint32_t d : elems) {
          Mat m = {{a, b}, {c, d}};
          if (!mat_invertible(sp, m)) continue;
          orbit.insert(act(SemilinearMap::linear(sp, m), ProjSubspace::point(sp, {1, 0})));
        }
  CHECK(orbit.size() == 5);
}

TEST_CASE("action preserves dimension and incidence and composes") {
  const auto& f3 = FieldTower::get(3, 1);
  Space sp = make_space(f3, 1, 3);
  std::mt19937_64 rng(0);
  auto rand_map = [&]() {
    while (true) {
      Mat m(3, Vec(3));
      for (auto& row : m)
        for (auto& e : row) e = static_cast<uint32_t>(rng() % 3);
      if (mat_invertible(sp, m)) return SemilinearMap::linear(sp, m);
    }
  };
  auto subs = enumerate_subspaces(sp, 1);
  for (int trial = 0; trial < 25; ++trial) {
    auto m1 = rand_map(), m2 = rand_map();
    for (const auto& s : subs) {
      CHECK(act(m1, s).dim() == s.dim());
      CHECK(act(m1, act(m2, s)) == act(compose(m2, m1), s));
      CHECK(act(inverse(m1), act(m1, s)) == s);
    }
    for (const auto& p : enumerate_points(sp)) {
      auto pt = ProjSubspace::point(sp, p);
      for (const auto& s : subs)
        CHECK(s.contains(pt) == act(m1, s).contains(act(m1, pt)));
    }
  }
}

TEST_CASE("canonical uniqueness over random generator pairs") {
  const auto& f3 = FieldTower::get(3, 1);
  Space sp = make_space(f3, 1, 4);
  std::mt19937_64 rng(0);
  auto rand_elt = [&]() { return static_cast<uint32_t>(rng() % 3); };
  for (int trial = 0; trial < 10000; ++trial) {
    Mat gens(2, Vec(4));
    for (auto& row : gens)
      for (auto& e : row) e = rand_elt();
    auto s = ProjSubspace::canonical(sp, gens);
    // a second generating set: random invertible row mixes of the first
    Mat mixed = gens;
    for (int ops = 0; ops < 6; ++ops) {
      size_t i = rng() % mixed.size(), j = rng() % mixed.size();
      uint32_t lam = 1 + rand_elt() % 2;
      if (i == j) continue;
      for (int c = 0; c < 4; ++c) mixed[i][c] = f3.add(mixed[i][c], f3.mul(lam, mixed[j][c]));
    }
    CHECK(ProjSubspace::canonical(sp, mixed) == s);
  }
}

TEST_CASE("text round trip") {
  const auto& f4 = FieldTower::get(2, 2);
  Space sp = make_space(f4, 2, 3);
  auto s = ProjSubspace::canonical(sp, {{1, 0, 2}, {0, 1, 3}});
  CHECK(ProjSubspace::from_text(sp, s.to_text()) == s);

  Space sub = make_space(f4, 1, 3);
  auto r = ProjSubspace::canonical(sub, {{1, 0, 1}, {0, 1, 1}});
  CHECK(r.to_text() == "1,0,1;0,1,1");
  CHECK(ProjSubspace::from_text(sub, "1,0,1;0,1,1") == r);
}

TEST_CASE("internal coordinates round trip") {
  const auto& f4 = FieldTower::get(2, 2);
  Space sp = make_space(f4, 2, 4);
  auto s = ProjSubspace::canonical(sp, {{1, 0, 2, 1}, {0, 1, 1, 3}});
  for (const auto& p : s.points()) {
    Vec c = s.internal_coords(p);
    CHECK(normalize_point(sp, s.from_internal(c)) == p);
  }
  CHECK_THROWS_AS(s.internal_coords(Vec{1, 1, 1, 1}), std::invalid_argument);
}
