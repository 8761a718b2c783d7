#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "enr/weil.hpp"

using namespace enr;

namespace {

const Triplet kRef{12, 111, 13};

i128 ip(i128 b, int e) {
  i128 r = 1;
  while (e-- > 0) r = mul_ck(r, b);
  return r;
}

// product form of the normalized polynomial, times p^21
IntPoly product_form(u64 p) {
  IntPoly m1({-1, 1}), p1({1, 1});
  if (p == 7) {
    IntPoly f({7, 6, 9, 4, 9, 6, 7});
    for (int i = 0; i < 8; ++i) f = f * m1 * p1;
    return f;
  }
  IntPoly f({11, -2, 1, 12, 1, -2, 11});
  IntPoly t2({1, 0, 1});
  f = f * t2 * t2;
  for (int i = 0; i < 8; ++i) f = f * m1;
  for (int i = 0; i < 4; ++i) f = f * p1;
  return f;
}

// psi(pT) == p^21 * product: an exact integer comparison
bool matches_product(const WeilPolynomial &w) {
  IntPoly prod = product_form(w.p);
  for (int j = 0; j <= 22; ++j)
    if (mul_ck(w.psi.coeff(j), ip(i128(w.p), j)) != mul_ck(prod.coeff(j), ip(i128(w.p), 21)))
      return false;
  return true;
}

WeilPolynomial reconstruct_at(u64 p, std::vector<u64> *counts_out = nullptr) {
  auto N = counts_for_weil(kRef, p);
  std::vector<u64> counts(N.begin(), N.end());
  if (counts_out) *counts_out = counts;
  auto ps = power_sums_from_counts(counts, p);
  auto cands = reconstruct(ps, frobenius_action(kRef, p), p);
  REQUIRE(cands.size() == 1);
  return cands[0];
}

}  // namespace

TEST_CASE("power sums from counts") {
  CHECK(power_sums_from_counts({44, 3096, 117980, 5795736}, 7)[0] == -6);
  CHECK(power_sums_from_counts({168, 15592, 1772472, 214576280}, 11)[0] == 46);

  // a count of exactly 1 + p^{2i} carries no trace
  std::vector<u64> flat;
  for (int i = 1; i <= 4; ++i) flat.push_back(u64(1) + u64(ip(3, 2 * i)));
  for (i128 t : power_sums_from_counts(flat, 3)) CHECK(t == 0);

  CHECK_THROWS_AS(power_sums_from_counts({u64(1) << 40, 1, 1, 1}, 3), std::logic_error);
  CHECK_THROWS_AS(power_sums_from_counts({44, 3096}, 7), std::logic_error);
}

TEST_CASE("Frobenius action on the lattice") {
  FrobeniusAction fr = frobenius_action(kRef, 7);
  CHECK(fr.p == 7);
  CHECK(fr.cp.deg() == 15);
  CHECK(fr.cp.coeff(15) == 1);

  Mat G = build_Lprime().fine.gram;
  CHECK(fr.matrix.transposed() * G * fr.matrix == G);

  // 5 is not a square mod 7, so Frobenius swaps the rulings that a root of 5
  // tells apart
  CHECK(legendre(5, 7) == -1);
  CurveAction act = frobenius_action_on_curves(make_curve_system(kRef, 7));
  CHECK(act.y[0] == 14);   // F1 -> G1
  CHECK(act.y[14] == 0);   // G1 -> F1

  IntPoly knownf = fr.known_factor();
  CHECK(knownf.deg() == 15);
  CHECK(knownf.coeff(15) == 1);
  CHECK(knownf.coeff(0) % ip(7, 15) == 0);

  // primes colliding with a construction denominator are refused
  CHECK_THROWS_AS(frobenius_action(kRef, 2), std::logic_error);
  CHECK_THROWS_AS(frobenius_action(kRef, 5), std::logic_error);
  CHECK_THROWS_AS(frobenius_action(kRef, 3), std::logic_error);  // 3 | a
}

TEST_CASE("reconstruction reproduces the closed product forms") {
  std::vector<u64> counts7;
  WeilPolynomial w7 = reconstruct_at(7, &counts7);
  CHECK(w7.sign == 1);
  CHECK(matches_product(w7));
  CHECK(unit_root_count(w7) == 16);
  CHECK(artin_tate_disc_class(w7, 8) == 3);

  // the known degree-15 factor divides exactly
  CHECK(divide_exact(w7.psi, frobenius_action(kRef, 7).known_factor()).has_value());

  // normalized form: monic with the expected subleading coefficient
  auto norm = w7.normalized();
  CHECK(norm[22] == Rational(1));
  CHECK(norm[21] == Rational(6, 7));
  CHECK(norm[0] == Rational(1));

  SUBCASE("regenerated counts reproduce the candidate") {
    auto ps = weil_power_sums(w7, 4);
    std::vector<u64> regen;
    for (int i = 1; i <= 4; ++i)
      regen.push_back(u64(ps[size_t(i - 1)] + 1 + ip(7, 2 * i)));
    CHECK(regen == counts7);
    auto again = reconstruct(power_sums_from_counts(regen, 7), frobenius_action(kRef, 7), 7);
    REQUIRE(again.size() == 1);
    CHECK(again[0].psi == w7.psi);
  }

  SUBCASE("wrong rank is rejected") {
    CHECK_THROWS_AS(artin_tate_disc_class(w7, 7), std::logic_error);
    CHECK_THROWS_AS(artin_tate_disc_class(w7, 9), std::logic_error);
  }

  SUBCASE("corrupted power sums cannot be completed") {
    auto ps = power_sums_from_counts(counts7, 7);
    for (auto &v : ps) v = -v;
    CHECK_THROWS_AS(reconstruct(ps, frobenius_action(kRef, 7), 7), std::logic_error);
  }
}

TEST_CASE("the second prime gives a different square class") {
  WeilPolynomial w11 = reconstruct_at(11);
  CHECK(w11.sign == 1);
  CHECK(matches_product(w11));
  CHECK(unit_root_count(w11) == 16);
  CHECK(artin_tate_disc_class(w11, 8) == 2);
}

TEST_CASE("rank bound from two reductions") {
  CHECK(rank_bound(3, 2, 16, 16) == 15);
  CHECK(rank_bound(3, 3, 16, 16) == 16);
  CHECK(rank_bound(3, 2, 16, 18) == 16);
  CHECK(rank_bound(2, 3, 14, 16) == 14);
}

TEST_CASE("unit roots of a pure power") {
  WeilPolynomial w;
  w.p = 7;
  IntPoly lin({-7, 1}), acc({1});
  for (int i = 0; i < 22; ++i) acc = acc * lin;
  w.psi = acc;
  CHECK(unit_root_count(w) == 22);
}

TEST_CASE("functional equation holds as an integer identity") {
  for (u64 p : {u64(7), u64(11)}) {
    WeilPolynomial w = reconstruct_at(p);
    for (int k = 0; k <= 11; ++k)
      CHECK(w.psi.coeff(k) ==
            mul_ck(i128(w.sign), mul_ck(w.psi.coeff(22 - k), ip(i128(p), 22 - 2 * k))));
  }
}
