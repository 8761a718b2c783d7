#include "enr/weil.hpp"

#include <cmath>

namespace enr {

namespace {

i128 ipow(i128 b, int e) {
  i128 r = 1;
  while (e-- > 0) r = mul_ck(r, b);
  return r;
}

// strip every cyclotomic divisor, with multiplicity (index bound 1000)
IntPoly strip_cyclotomic(IntPoly f, int *weighted_count) {
  for (unsigned n = 1; n <= 1000; ++n) {
    IntPoly cyc = cyclotomic(n);
    if (cyc.deg() > f.deg()) continue;
    for (;;) {
      auto q = divide_exact(f, cyc);
      if (!q) break;
      f = *q;
      if (weighted_count) *weighted_count += cyc.deg();
    }
  }
  return f;
}

// same, for divisors with roots p * zeta: p^phi(n) Phi_n(T/p)
IntPoly strip_scaled_cyclotomic(IntPoly f, u64 p, int *weighted_count) {
  for (unsigned n = 1; n <= 1000; ++n) {
    IntPoly cyc = cyclotomic(n);
    int phi = cyc.deg();
    if (phi > f.deg()) continue;
    std::vector<i128> c(size_t(phi) + 1, 0);
    for (int j = 0; j <= phi; ++j) c[size_t(j)] = mul_ck(cyc.coeff(j), ipow(i128(p), phi - j));
    IntPoly scaled(c);
    for (;;) {
      auto q = divide_exact(f, scaled);
      if (!q) break;
      f = *q;
      if (weighted_count) *weighted_count += phi;
    }
  }
  return f;
}

}  // namespace

std::vector<Rational> WeilPolynomial::normalized() const {
  std::vector<Rational> out;
  i128 scale = ipow(i128(p), 22);
  for (int j = 0; j <= 22; ++j)
    out.push_back(Rational(mul_ck(psi.coeff(j), ipow(i128(p), j)), scale));
  return out;
}

IntPoly FrobeniusAction::known_factor() const {
  std::vector<i128> c(16, 0);
  for (int j = 0; j <= 15; ++j) c[size_t(j)] = mul_ck(cp.coeff(j), ipow(i128(p), 15 - j));
  return IntPoly(c);
}

std::vector<i128> power_sums_from_counts(const std::vector<u64> &counts, u64 p) {
  ENR_CHECK(counts.size() == 4 || counts.size() == 5, "need N_1..N_4, optionally N_5");
  std::vector<i128> t;
  for (size_t i = 0; i < counts.size(); ++i) {
    i128 q = ipow(i128(p), 2 * int(i + 1));
    i128 ti = i128(counts[i]) - 1 - q;
    ENR_CHECK(abs128(ti) <= 22 * q, "power sum outside the Weil range");
    t.push_back(ti);
  }
  return t;
}

FrobeniusAction frobenius_action(const Triplet &t, u64 p) {
  ENR_CHECK(is_prime(p) && p % 2 == 1 && p != 5, "need a good odd prime");
  CurveSystem C = make_curve_system(t, p);
  CurveAction fr = frobenius_action_on_curves(C);
  FrobeniusAction A;
  A.p = p;
  A.matrix = to_fine_basis(build_Lprime(), y_perm_matrix_L(fr.y));
  A.cp = charpoly(A.matrix);
  ENR_CHECK(A.cp.deg() == 15 && A.cp.coeff(15) == 1, "characteristic polynomial shape");
  // the permutation image has finite order, so every root is a root of
  // unity: exact statement, no numerics involved
  IntPoly rest = strip_cyclotomic(A.cp, nullptr);
  ENR_CHECK(rest.deg() == 0, "known factor must split into cyclotomics");
  return A;
}

std::vector<i128> weil_power_sums(const WeilPolynomial &w, int upto) {
  // Newton, with e_j the coefficient of T^{22-j}
  std::vector<i128> ps;
  for (int k = 1; k <= upto; ++k) {
    i128 s = mul_ck(i128(k), w.psi.coeff(22 - k));
    for (int i = 1; i < k; ++i)
      s = add_ck(s, mul_ck(w.psi.coeff(22 - i), ps[size_t(k - i - 1)]));
    ps.push_back(-s);
  }
  return ps;
}

std::vector<WeilPolynomial> reconstruct(const std::vector<i128> &power_sums,
                                        const FrobeniusAction &known, u64 p) {
  ENR_CHECK(power_sums.size() >= 4, "need four power sums");
  ENR_CHECK(known.p == p && known.cp.deg() == 15, "mismatched Frobenius data");
  const i128 pp = i128(p);

  // Newton's identities give the coefficients of T^21..T^18
  std::vector<i128> e{1};
  for (int k = 1; k <= 4; ++k) {
    i128 s = power_sums[size_t(k - 1)];
    for (int i = 1; i < k; ++i)
      s = add_ck(s, mul_ck(e[size_t(i)], power_sums[size_t(k - i - 1)]));
    ENR_CHECK(s % k == 0, "power sums fail Newton integrality");
    e.push_back(-s / k);
  }

  IntPoly P = known.known_factor();
  auto Pc = [&](int j) { return P.coeff(j); };

  // top-down triangular solve for the cofactor's leading coefficients
  std::array<i128, 8> g{};
  g[7] = 1;
  g[6] = e[1] - Pc(14);
  g[5] = e[2] - Pc(13) - mul_ck(Pc(14), g[6]);
  g[4] = e[3] - Pc(12) - mul_ck(Pc(13), g[6]) - mul_ck(Pc(14), g[5]);
  g[3] = e[4] - Pc(11) - mul_ck(Pc(12), g[6]) - mul_ck(Pc(13), g[5]) - mul_ck(Pc(14), g[4]);

  std::vector<WeilPolynomial> out;
  for (int eps : {1, -1}) {
    // the cofactor's own functional equation: g_{7-j} = eps p^{2j-7} g_j
    if (g[3] != mul_ck(i128(eps), mul_ck(pp, g[4]))) continue;
    std::array<i128, 8> h = g;
    h[2] = mul_ck(i128(eps), mul_ck(ipow(pp, 3), g[5]));
    h[1] = mul_ck(i128(eps), mul_ck(ipow(pp, 5), g[6]));
    h[0] = mul_ck(i128(eps), ipow(pp, 7));
    IntPoly cof(std::vector<i128>(h.begin(), h.end()));

    WeilPolynomial w;
    w.p = p;
    w.psi = P * cof;
    ENR_CHECK(w.psi.deg() == 22 && w.psi.coeff(22) == 1, "candidate must be monic of degree 22");

    // exact functional equation with a recorded sign
    i128 c0 = w.psi.coeff(0), p22 = ipow(pp, 22);
    ENR_CHECK(c0 == p22 || c0 == -p22, "constant term must be +-p^22");
    int s = (c0 == p22) ? 1 : -1;
    bool fe = true;
    for (int k = 0; k <= 11 && fe; ++k)
      fe = (w.psi.coeff(k) ==
            mul_ck(i128(s), mul_ck(w.psi.coeff(22 - k), ipow(pp, 22 - 2 * k))));
    if (!fe) continue;
    w.sign = s;

    // Root-modulus screen.  The known factor's roots are exactly p times a
    // root of unity, so the numeric check only needs to cover the cofactor.
    // Its own p-scaled cyclotomic pieces are stripped exactly first, keeping
    // high-multiplicity clusters away from the iteration.
    bool weil = true;
    IntPoly hard = strip_scaled_cyclotomic(cof, p, nullptr);
    if (hard.deg() >= 1)
      for (const auto &r : complex_roots(hard))
        if (std::abs(std::abs(r) - double(p)) > 1e-6 * double(p)) weil = false;
    if (!weil) continue;

    out.push_back(std::move(w));
  }

  if (power_sums.size() >= 5 && out.size() > 1) {
    std::vector<WeilPolynomial> kept;
    for (auto &w : out)
      if (weil_power_sums(w, 5)[4] == power_sums[4]) kept.push_back(w);
    out = kept;
  }
  ENR_CHECK(!out.empty(), "no candidate is consistent with the counts");
  return out;
}

int unit_root_count(const WeilPolynomial &w) {
  int count = 0;
  strip_scaled_cyclotomic(w.psi, w.p, &count);
  return count;
}

i128 artin_tate_disc_class(const WeilPolynomial &w, int rank) {
  ENR_CHECK(rank >= 0 && rank <= 22, "rank out of range");
  IntPoly h = w.psi;
  IntPoly lin({-i128(w.p), 1});
  for (int i = 0; i < rank; ++i) {
    auto q = divide_exact(h, lin);
    ENR_CHECK(q.has_value(), "rank exceeds the multiplicity of T = p");
    h = *q;
  }
  i128 hp = h.eval(i128(w.p));
  ENR_CHECK(hp != 0, "rank must exhaust the multiplicity of T = p");
  Rational delta(hp, ipow(i128(w.p), 21 - rank));
  i128 cls = squarefree_part(mul_ck(delta.num, delta.den));
  return cls < 0 ? -cls : cls;
}

int rank_bound(i128 class7, i128 class11, int bound7, int bound11) {
  int m = bound7 < bound11 ? bound7 : bound11;
  if (class7 != class11 && bound7 == bound11) m -= 1;
  return m;
}

}  // namespace enr
