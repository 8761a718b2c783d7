#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "enr/arith.hpp"
#include "enr/gf.hpp"
#include "enr/surface.hpp"

using namespace enr;

TEST_CASE("triplet validity") {
  CHECK(Triplet{12, 111, 13}.valid());
  CHECK(Triplet{1, 1, 1}.valid());
  CHECK(!Triplet{0, 1, 1}.valid());
  CHECK(!Triplet{-3, 1, 1}.valid());
  CHECK(!Triplet{1, 2, 1}.valid());   // 2a = b degenerates the second quadric
  CHECK(!Triplet{1, 1, 10}.valid());  // c^2 - 100ab = 0
  CHECK(!Triplet{2, 2, 20}.valid());
  CHECK(!Triplet{10000001, 1, 1}.valid());
}

TEST_CASE("smoothness factors of the reference triplet") {
  Triplet t{12, 111, 13};
  auto f = smoothness_factors(t);
  CHECK(f[0] == 12);
  CHECK(f[1] == 111);
  CHECK(f[2] == 13);
  CHECK(f[3] == 628);      // 5a+5b+c
  CHECK(f[4] == 821);      // 20a+5b+2c
  CHECK(f[5] == 12897);    // 4a^2+b^2
  CHECK(f[6] == -133031);  // c^2-100ab
  CHECK(f[7] == 42244);    // c^2+5bc+10ac+25ab
  // product via BigInt equals the i128 product here (it fits)
  i128 prod = 1;
  for (auto x : f) prod *= x;
  CHECK(smoothness_product(t).str() == to_string(prod));
}

TEST_CASE("bad primes of the reference triplet") {
  std::vector<i128> want{2, 3, 5, 13, 37, 59, 151, 157, 179, 821, 881, 1433};
  CHECK(bad_primes(Triplet{12, 111, 13}) == want);
  // 2 and 5 always appear even when no factor needs them
  auto bp = bad_primes(Triplet{1, 1, 1});
  CHECK(std::find(bp.begin(), bp.end(), 2) != bp.end());
  CHECK(std::find(bp.begin(), bp.end(), 5) != bp.end());
}

TEST_CASE("family quadrics evaluate to the defining equations") {
  Triplet t{12, 111, 13};
  auto s = family(t);
  // a rational point candidate plugged into each d*Q_i - Qt_i:
  // (s,t,u,x,y,z) integer vector, equations hold iff all three evaluate to 0
  auto eq = [&](const std::vector<i128> &v, int i) {
    return eval_quadric(s.full_gram(i), v);
  };
  // Q1: s^2 - (xy + 5 z^2)
  CHECK(eq({1, 0, 0, 1, 1, 0}, 0) == 0);      // 1 = 1*1
  CHECK(eq({3, 0, 0, 1, 4, 1}, 0) == 0);      // 9 = 4 + 5
  CHECK(eq({2, 0, 0, 1, 1, 0}, 0) == 3);      // 4 - 1
  // Q2: (s^2 - 5 t^2) - (x+y)(x+2y)
  CHECK(eq({1, 0, 0, 1, 0, 0}, 1) == 0);      // 1 = 1*1
  CHECK(eq({4, 1, 0, 1, 1, 0}, 1) == 11 - 6);
  // Q3: u^2 - (a x^2 + b y^2 + c z^2)
  CHECK(eq({0, 0, 5, 1, 0, 1}, 2) == 0);      // 25 = 12 + 13
  CHECK(eq({0, 0, 1, 1, 0, 0}, 2) == 1 - 12);
}

TEST_CASE("twist scales the left-hand sides only") {
  Triplet t{12, 111, 13};
  auto s = family(t);
  auto s2 = twist(s, -7);
  CHECK(s2.d == -7);
  for (int i = 0; i < 3; ++i) {
    CHECK(s2.Qt[i] == s.Qt[i]);
    // d*Q on (s,t,u) = y scales pointwise
    std::vector<i128> v{2, 3, 1};
    i128 left = eval_quadric(s.Q[size_t(i)], v);
    CHECK(eval_quadric(s2.Q[size_t(i)], v) == -7 * left);
  }
  CHECK_THROWS(twist(s, 12));  // not squarefree
  CHECK_THROWS(twist(s, 0));
  CHECK_THROWS(twist(s2, 3));  // twisting an already twisted surface
}

TEST_CASE("parse_triplet") {
  auto [t, d] = parse_triplet("12,111,13");
  CHECK(t.a == 12);
  CHECK(t.b == 111);
  CHECK(t.c == 13);
  CHECK(d == 1);
  auto [t2, d2] = parse_triplet("1,2,3,-5");
  CHECK(t2.c == 3);
  CHECK(d2 == -5);
  CHECK_THROWS(parse_triplet("1,2"));
  CHECK_THROWS(parse_triplet("1,2,3,4,5"));
  CHECK_THROWS(parse_triplet("1,x,3"));
  CHECK_THROWS(parse_triplet(""));
}

TEST_CASE("reduction mod p flags good and bad primes") {
  Triplet t{12, 111, 13};
  auto s = family(t);
  CHECK(reduce_mod_p(s, 7).good);
  CHECK(reduce_mod_p(s, 11).good);
  CHECK(!reduce_mod_p(s, 3).good);    // 3 | a
  CHECK(!reduce_mod_p(s, 13).good);   // 13 | c
  CHECK(!reduce_mod_p(s, 157).good);  // 157 | 5a+5b+c
  CHECK(!reduce_mod_p(s, 821).good);
  CHECK(reduce_mod_p(s, 17).good);
  CHECK_THROWS(reduce_mod_p(s, 2));
  CHECK_THROWS(reduce_mod_p(s, 5));
  auto sd = twist(s, -7);
  CHECK_THROWS(reduce_mod_p(sd, 7));  // p | d
  CHECK(reduce_mod_p(sd, 11).d == 11 - 7);
}

TEST_CASE("good reduction is smooth, bad reduction is singular") {
  Triplet t{12, 111, 13};
  auto s = family(t);
  CHECK(singular_points_mod_p(s, 7).empty());
  CHECK(singular_points_mod_p(s, 11).empty());
  CHECK(!singular_points_mod_p(s, 3).empty());
  // at 13 the singular locus is not rational over the prime field...
  CHECK(singular_points_mod_p(s, 13).empty());
  // ...but over F_169 the point (sqrt5, 1, 0, 0, 0, 1) is singular: it lies on
  // all three quadrics (13 | c kills the third) and the third gradient
  // (0,0,2u,-2ax,-2by,-2cz) vanishes there outright, leaving rank 2
  {
    const FieldDesc *F = FieldDesc::get(13, 2);
    Fq five(F, 5);
    CHECK(five.is_square());  // 5 is a non-residue mod 13, so this needs F_169
    Fq r5 = five.sqrt();
    std::array<Fq, 6> P{r5, Fq(F, 1), Fq(F, 0), Fq(F, 0), Fq(F, 0), Fq(F, 1)};
    for (int i = 0; i < 3; ++i) {
      Mat G = s.full_gram(i);
      // value = P^T G P / 2 and gradient = G P, computed in F_169
      Fq val(F, 0);
      std::array<Fq, 6> grad{Fq(F, 0), Fq(F, 0), Fq(F, 0), Fq(F, 0), Fq(F, 0), Fq(F, 0)};
      for (int r = 0; r < 6; ++r)
        for (int cc = 0; cc < 6; ++cc) {
          Fq g(F, G.at(r, cc));
          grad[size_t(r)] = grad[size_t(r)] + g * P[size_t(cc)];
        }
      for (int r = 0; r < 6; ++r) val = val + P[size_t(r)] * grad[size_t(r)];
      CHECK(val.is_zero());  // 2*Q(P), and the characteristic is odd
      if (i == 2)
        for (auto &g : grad) CHECK(g.is_zero());
    }
  }
  // another good triplet at small primes
  Triplet t2{1, 1, 2};
  auto s2 = family(t2);
  // factors: 1,1,2,12,29,5,-96,59 -> support {2,3,5,29,59}; 7 and 11 good
  CHECK(singular_points_mod_p(s2, 7).empty());
  CHECK(singular_points_mod_p(s2, 11).empty());
}
