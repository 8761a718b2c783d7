#include "enr/local.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "enr/matrix.hpp"

namespace enr {

namespace {

const Triplet kReference{12, 111, 13};

i128 pow_i128(u64 p, int k) {
  i128 r = 1;
  while (k-- > 0) r = mul_ck(r, i128(p));
  return r;
}

i128 norm_mod(i128 v, i128 m) {
  v %= m;
  return v < 0 ? v + m : v;
}

// The three quadrics of the d-twist at an integer point, reduced mod m.
// Entries of w may exceed m; m must stay below 2^61 so products fit.
std::array<i128, 3> eval_mod(const Triplet &t, i64 d, const std::array<u64, 6> &w, i128 m) {
  auto sq = [&](int i) { return i128(w[size_t(i)]) * i128(w[size_t(i)]) % m; };
  auto at = [&](int i) { return i128(w[size_t(i)]) % m; };
  i128 dm = norm_mod(d, m);
  i128 xy = at(3) * at(4) % m;
  i128 e1 = dm * sq(0) % m - xy - 5 * sq(5) % m;
  i128 e2 = dm * sq(0) % m - (5 * dm % m) * sq(1) % m - sq(3) - 3 * xy % m - 2 * sq(4) % m;
  i128 e3 = dm * sq(2) % m - (i128(t.a) % m) * sq(3) % m - (i128(t.b) % m) * sq(4) % m -
            (i128(t.c) % m) * sq(5) % m;
  return {norm_mod(e1, m), norm_mod(e2, m), norm_mod(e3, m)};
}

// Gradient rows of the three quadrics at w, reduced mod m.
std::array<std::array<i128, 6>, 3> jacobian_mod(const Triplet &t, i64 d,
                                                const std::array<u64, 6> &w, i128 m) {
  auto at = [&](int i) { return i128(w[size_t(i)]) % m; };
  i128 dm = norm_mod(d, m);
  std::array<std::array<i128, 6>, 3> J{};
  J[0] = {2 * dm % m * at(0), 0, 0, -at(4), -at(3), -10 * at(5)};
  J[1] = {2 * dm % m * at(0), -(10 * dm % m) * at(1), 0, -(2 * at(3) + 3 * at(4)),
          -(3 * at(3) + 4 * at(4)), 0};
  J[2] = {0, 0, 2 * dm % m * at(2), -(2 * i128(t.a) % m) * at(3),
          -(2 * i128(t.b) % m) * at(4), -(2 * i128(t.c) % m) * at(5)};
  for (auto &row : J)
    for (auto &v : row) v = norm_mod(v, m);
  return J;
}

int fp_rank6(const std::array<std::array<i128, 6>, 3> &J, u64 p) {
  std::vector<std::vector<u64>> A(3, std::vector<u64>(6));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 6; ++j) A[size_t(i)][size_t(j)] = u64(J[size_t(i)][size_t(j)]);
  auto sol = fp_solve(A, {0, 0, 0}, p);
  return 6 - int(sol->kernel.size());
}

// All ways to push one solution mod p^k one digit deeper.  The coordinate
// `lead` stays fixed at 1, which keeps each projective class represented
// exactly once.
std::vector<std::array<u64, 6>> lift_children(const Triplet &t, i64 d,
                                              const std::array<u64, 6> &w, int k, u64 p,
                                              int lead) {
  i128 Pk = pow_i128(p, k), Pk1 = Pk * i128(p);
  auto E = eval_mod(t, d, w, Pk1);
  auto J = jacobian_mod(t, d, w, i128(p));
  std::vector<std::vector<u64>> A(3, std::vector<u64>(5));
  std::vector<u64> b(3);
  for (int i = 0; i < 3; ++i) {
    ENR_CHECK(E[size_t(i)] % Pk == 0, "lift invariant broken");
    u64 q = u64((E[size_t(i)] / Pk) % i128(p));
    b[size_t(i)] = (p - q) % p;
    int cj = 0;
    for (int j = 0; j < 6; ++j)
      if (j != lead) A[size_t(i)][size_t(cj++)] = u64(J[size_t(i)][size_t(j)]);
  }
  std::vector<std::array<u64, 6>> out;
  auto sol = fp_solve(A, b, p);
  if (!sol) return out;
  u64 combos = 1;
  for (size_t i = 0; i < sol->kernel.size(); ++i) {
    combos *= p;
    ENR_CHECK(combos <= (u64(1) << 24), "lift fan-out too large");
  }
  for (u64 idx = 0; idx < combos; ++idx) {
    std::vector<u64> e = sol->particular;
    u64 rem = idx;
    for (const auto &kv : sol->kernel) {
      u64 coef = rem % p;
      rem /= p;
      if (coef)
        for (size_t j = 0; j < 5; ++j) e[j] = (e[j] + coef * kv[j]) % p;
    }
    std::array<u64, 6> w2 = w;
    int cj = 0;
    for (int j = 0; j < 6; ++j) {
      if (j == lead) continue;
      w2[size_t(j)] = u64((i128(w[size_t(j)]) + Pk * i128(e[size_t(cj)])) % Pk1);
      ++cj;
    }
    out.push_back(w2);
  }
  return out;
}

int lead_index(const std::array<u64, 6> &w) {
  int lead = 0;
  while (lead < 6 && w[size_t(lead)] == 0) ++lead;
  return lead;
}

std::string fp_point_str(const std::array<u64, 6> &w) {
  std::string s = "(";
  for (int i = 0; i < 6; ++i) s += (i ? ":" : "") + std::to_string(w[size_t(i)]);
  return s + ")";
}

std::string rat_str(const Rational &r) { return r.str(); }

}  // namespace

std::string radpoint_str(const RadPoint &pt) {
  std::string s = "(";
  for (int i = 0; i < 6; ++i) {
    const RadCoord &c = pt[size_t(i)];
    if (i) s += ":";
    if (c.is_zero()) {
      s += "0";
      continue;
    }
    std::string part;
    if (c.rad == Rational(1)) {
      part = rat_str(c.mult);
    } else {
      if (c.mult == Rational(-1))
        part = "-";
      else if (!(c.mult == Rational(1)))
        part = rat_str(c.mult) + "*";
      part += "sqrt(" + rat_str(c.rad) + ")";
    }
    s += part;
  }
  return s + ")";
}

bool verify_explicit_point(const RadPoint &pt, const Triplet &t, i64 d, u64 p) {
  t.require_valid();
  ENR_CHECK(d != 0, "twist must be nonzero");
  ENR_CHECK(pt[3].rad == Rational(1) || pt[3].mult == Rational(0), "x must be rational");
  ENR_CHECK(pt[4].rad == Rational(1) || pt[4].mult == Rational(0), "y must be rational");
  bool any = false;
  for (const auto &c : pt) any = any || !c.is_zero();
  if (!any) return false;
  for (const auto &c : pt)
    if (!c.is_zero() && !is_qp_square(c.rad, p)) return false;
  auto sq = [&](int i) {
    const RadCoord &c = pt[size_t(i)];
    return c.mult * c.mult * c.rad;
  };
  Rational X = pt[3].is_zero() ? Rational(0) : pt[3].mult;
  Rational Y = pt[4].is_zero() ? Rational(0) : pt[4].mult;
  Rational S = sq(0), T = sq(1), U = sq(2), Z = sq(5);
  Rational D{i128(d)};
  Rational zero{0};
  Rational e1 = D * S - (X * Y + Rational(5) * Z);
  Rational e2 = D * (S - Rational(5) * T) - (X + Y) * (X + Rational(2) * Y);
  Rational e3 = D * U - (Rational(i128(t.a)) * X * X + Rational(i128(t.b)) * Y * Y +
                         Rational(i128(t.c)) * Z);
  return e1 == zero && e2 == zero && e3 == zero;
}

RadPoint stored_witness(u64 p) {
  auto R = [](i128 n, i128 dn = 1) { return Rational(n, dn); };
  if (p == 2)
    return {RadCoord{R(1), R(129)},  RadCoord{R(2), R(21, 5)}, RadCoord{R(1), R(2113)},
            RadCoord{R(1), R(1)},    RadCoord{R(4), R(1)},     RadCoord{R(5), R(1)}};
  if (p == 3)
    return {RadCoord{R(0), R(1)},  RadCoord{R(0), R(1)}, RadCoord{R(1), R(821, 5)},
            RadCoord{R(-2), R(1)}, RadCoord{R(1), R(1)}, RadCoord{R(1), R(2, 5)}};
  ENR_CHECK(p == 5, "witnesses are stored for 2, 3 and 5");
  return {RadCoord{R(1), R(1)}, RadCoord{R(2), R(-1)}, RadCoord{R(1), R(1801)},
          RadCoord{R(1), R(1)}, RadCoord{R(-4), R(1)}, RadCoord{R(1), R(1)}};
}

bool real_points_empty(const Triplet &t, i64 d) {
  t.require_valid();
  ENR_CHECK(d != 0, "twist must be nonzero");
  // the third equation pins a positive-definite form against d * u^2
  if (d < 0) return true;
  RadPoint w{RadCoord{Rational(1), Rational(4, d)},
             RadCoord{Rational(1), Rational(4, 5 * i128(d))},
             RadCoord{Rational(1), Rational(i128(t.a) + t.b + t.c, d)},
             RadCoord{Rational(1), Rational(1)},
             RadCoord{Rational(-1), Rational(1)},
             RadCoord{Rational(1), Rational(1)}};
  ENR_CHECK(verify_explicit_point(w, t, d, 0), "real witness must verify");
  return false;
}

std::vector<std::array<u64, 6>> modp_solutions(const Triplet &t, i64 d, u64 p) {
  t.require_valid();
  ENR_CHECK(is_prime(p) && p <= 23, "enumeration expects a prime at most 23");
  u64 p3 = p * p * p;
  u64 dm = u64(((d % i64(p)) + i64(p)) % i64(p));
  u64 am = u64(t.a % i64(p)), bm = u64(t.b % i64(p)), cm = u64(t.c % i64(p));
  // join the two variable blocks on the values of the three quadrics
  std::vector<std::vector<u32>> bucket(p3);
  for (u64 s = 0; s < p; ++s)
    for (u64 tt = 0; tt < p; ++tt)
      for (u64 u = 0; u < p; ++u) {
        u64 l1 = dm * (s * s % p) % p;
        u64 l2 = (l1 + p - dm * (5 * (tt * tt % p) % p) % p) % p;
        u64 l3 = dm * (u * u % p) % p;
        bucket[(l1 * p + l2) * p + l3].push_back(u32((s * p + tt) * p + u));
      }
  std::vector<std::array<u64, 6>> out;
  for (u64 x = 0; x < p; ++x)
    for (u64 y = 0; y < p; ++y)
      for (u64 z = 0; z < p; ++z) {
        u64 r1 = (x * y % p + 5 * (z * z % p)) % p;
        u64 r2 = (x + y) % p * ((x + 2 * y) % p) % p;
        u64 r3 = (am * (x * x % p) + bm * (y * y % p) + cm * (z * z % p)) % p;
        for (u32 packed : bucket[(r1 * p + r2) * p + r3]) {
          u64 u = packed % p, tt = packed / p % p, s = packed / (p * p);
          std::array<u64, 6> v{s, tt, u, x, y, z};
          int lead = lead_index(v);
          if (lead == 6 || v[size_t(lead)] != 1) continue;
          out.push_back(v);
          ENR_CHECK(out.size() <= (u64(1) << 24), "solution list too large");
        }
      }
  return out;
}

std::vector<std::array<u64, 6>> zp2_points(const Triplet &t, i64 d, u64 p) {
  ENR_CHECK(d != 0 && is_squarefree(d), "twist must be a nonzero squarefree integer");
  std::vector<std::array<u64, 6>> out;
  for (const auto &w : modp_solutions(t, d, p))
    for (const auto &w2 : lift_children(t, d, w, 1, p, lead_index(w))) {
      out.push_back(w2);
      ENR_CHECK(out.size() <= (u64(1) << 24), "solution list too large");
    }
  return out;
}

bool congruence_certificate(const Triplet &t, u64 p) {
  t.require_valid();
  ENR_CHECK(is_prime(p) && p != 2 && p != 5, "the congruence argument needs p away from 2 and 5");
  // reducing mod p kills the twisted left sides; the middle quadric splits
  // into x = -y and x = -2y, and each branch leaves a 2x2 system in
  // (y^2, z^2) whose determinant is one of the two coupling constants
  i128 f1 = 5 * i128(t.a) + 5 * i128(t.b) + i128(t.c);
  i128 f2 = 20 * i128(t.a) + 5 * i128(t.b) + 2 * i128(t.c);
  bool branch1 = f1 % i128(p) != 0 || legendre(5, p) == -1;
  bool branch2 = f2 % i128(p) != 0 || legendre(10, p) == -1;
  return branch1 && branch2;
}

bool fp_point_smooth(const Triplet &t, i64 d, u64 p, const std::array<u64, 6> &pt) {
  ENR_CHECK(is_prime(p), "p must be prime");
  auto E = eval_mod(t, d, pt, i128(p));
  ENR_CHECK(E[0] == 0 && E[1] == 0 && E[2] == 0, "point is not on the reduction");
  return fp_rank6(jacobian_mod(t, d, pt, i128(p)), p) == 3;
}

std::optional<std::array<u64, 6>> smooth_fp_point(const Triplet &t, i64 d, u64 p) {
  t.require_valid();
  if (p < 3 || p == 5 || !is_prime(p)) return std::nullopt;
  u64 dm = u64(((d % i64(p)) + i64(p)) % i64(p));
  if (dm == 0) return std::nullopt;
  u64 am = u64(t.a % i64(p)), bm = u64(t.b % i64(p)), cm = u64(t.c % i64(p));
  u64 inv_d = invmod(dm, p);
  u64 inv_5d = invmod(5 % p * dm % p, p);
  // with s, t, u all nonzero the (s,t,u) Jacobian block has determinant
  // -40 d^3 stu, a unit, so any hit is smooth and Hensel applies
  auto attempt = [&](u64 x, u64 y, u64 z) -> std::optional<std::array<u64, 6>> {
    u64 r1 = (x * y % p + 5 * (z * z % p)) % p;
    u64 r2 = (x + y) % p * ((x + 2 * y) % p) % p;
    u64 r3 = (am * (x * x % p) + bm * (y * y % p) + cm * (z * z % p)) % p;
    u64 s2 = r1 * inv_d % p;
    u64 t2 = (r1 + p - r2) % p * inv_5d % p;
    u64 u2 = r3 * inv_d % p;
    if (!s2 || !t2 || !u2) return std::nullopt;
    if (legendre(i128(s2), p) != 1 || legendre(i128(t2), p) != 1 || legendre(i128(u2), p) != 1)
      return std::nullopt;
    std::array<u64, 6> w{sqrt_mod_p(s2, p), sqrt_mod_p(t2, p), sqrt_mod_p(u2, p), x, y, z};
    ENR_CHECK(fp_point_smooth(t, d, p, w), "scan hit must be smooth");
    return w;
  };
  for (u64 y = 0; y < p; ++y)
    for (u64 z = 0; z < p; ++z)
      if (auto w = attempt(1, y, z)) return w;
  for (u64 z = 0; z < p; ++z)
    if (auto w = attempt(0, 1, z)) return w;
  return attempt(0, 0, 1);
}

namespace {

// valuation of the best 3x3 Jacobian minor at w read mod p^k, or k when every
// minor vanishes at that precision; 2v + 1 <= k certifies that Newton
// iteration converges from w to an exact p-adic solution agreeing mod p^(k-v)
int minor_valuation(const Triplet &t, i64 d, const std::array<u64, 6> &w, int k, u64 p) {
  i128 Pk = pow_i128(p, k);
  auto J = jacobian_mod(t, d, w, Pk);
  int best = k;
  for (int c0 = 0; c0 < 4 && best > 0; ++c0)
    for (int c1 = c0 + 1; c1 < 5 && best > 0; ++c1)
      for (int c2 = c1 + 1; c2 < 6 && best > 0; ++c2) {
        i128 det = J[0][size_t(c0)] * norm_mod(J[1][size_t(c1)] * J[2][size_t(c2)] -
                                                   J[1][size_t(c2)] * J[2][size_t(c1)],
                                               Pk) -
                   J[0][size_t(c1)] * norm_mod(J[1][size_t(c0)] * J[2][size_t(c2)] -
                                                   J[1][size_t(c2)] * J[2][size_t(c0)],
                                               Pk) +
                   J[0][size_t(c2)] * norm_mod(J[1][size_t(c0)] * J[2][size_t(c1)] -
                                                   J[1][size_t(c1)] * J[2][size_t(c0)],
                                               Pk);
        det = norm_mod(det, Pk);
        if (det == 0) continue;
        int v = 0;
        while (det % i128(p) == 0) {
          det /= i128(p);
          ++v;
        }
        best = std::min(best, v);
      }
  return best;
}

} // namespace

DigitSearch digit_search(const Triplet &t, i64 d, u64 p, int effort) {
  t.require_valid();
  ENR_CHECK(d != 0 && is_squarefree(d), "twist must be a nonzero squarefree integer");
  ENR_CHECK(is_prime(p) && p <= 23, "digit search expects a prime at most 23");
  if (effort < 1) effort = 1;
  int maxk = 9 + 2 * effort;
  {
    i128 P = p;
    int fit = 0;
    while (P <= (i128(1) << 61) / i128(p)) {
      P *= i128(p);
      ++fit;
    }
    maxk = std::min(maxk, fit);
  }
  u64 node_cap = 200000ull * u64(effort);
  struct Node {
    std::array<u64, 6> w;
    int k;
    int lead;
  };
  DigitSearch res;
  res.verdict = Verdict::unknown;
  bool capped = false;
  std::vector<Node> stack;
  for (const auto &w : modp_solutions(t, d, p)) stack.push_back({w, 1, lead_index(w)});
  u64 visited = 0;
  int deepest = stack.empty() ? 0 : 1;
  while (!stack.empty()) {
    Node n = stack.back();
    stack.pop_back();
    if (++visited > node_cap) {
      capped = true;
      break;
    }
    deepest = std::max(deepest, n.k);
    int best = minor_valuation(t, d, n.w, n.k, p);
    if (2 * best + 1 <= n.k) {
      res.verdict = Verdict::solvable;
      res.point = n.w;
      res.level = n.k;
      res.minor_valuation = best;
      return res;
    }
    if (n.k >= maxk) {
      capped = true;
      continue;
    }
    for (const auto &w2 : lift_children(t, d, n.w, n.k, p, n.lead))
      stack.push_back({w2, n.k + 1, n.lead});
  }
  res.level = deepest;
  if (!capped) {
    res.verdict = Verdict::empty;
    res.exhaustive = true;
  }
  return res;
}

PlaceReport qp_points(const Triplet &t, i64 d, u64 p, int effort) {
  t.require_valid();
  ENR_CHECK(d != 0 && is_squarefree(d), "twist must be a nonzero squarefree integer");
  PlaceReport rep;
  rep.place = i64(p);
  if (p == 0) {
    if (real_points_empty(t, d)) {
      rep.verdict = Verdict::empty;
      rep.certificate = "positivity";
      rep.detail = "negative twist against a positive-definite right side";
    } else {
      RadPoint w{RadCoord{Rational(1), Rational(4, d)},
                 RadCoord{Rational(1), Rational(4, 5 * i128(d))},
                 RadCoord{Rational(1), Rational(i128(t.a) + t.b + t.c, d)},
                 RadCoord{Rational(1), Rational(1)},
                 RadCoord{Rational(-1), Rational(1)},
                 RadCoord{Rational(1), Rational(1)}};
      rep.verdict = Verdict::solvable;
      rep.certificate = "explicit-witness";
      rep.detail = radpoint_str(w);
    }
    return rep;
  }
  ENR_CHECK(is_prime(p), "place must be prime or 0");
  if (quadform4_anisotropic({i128(t.a), i128(t.b), i128(t.c), -i128(d)}, p)) {
    rep.verdict = Verdict::empty;
    rep.certificate = "anisotropy";
    rep.detail = "the diagonal quadric in (x,y,z,u) has no nontrivial zero";
    return rep;
  }
  bool divides_d = i128(d) % i128(p) == 0;
  if (divides_d && p != 2 && p != 5 && congruence_certificate(t, p)) {
    rep.verdict = Verdict::empty;
    rep.certificate = "congruence-lemma";
    rep.detail = "both congruence branches close mod " + std::to_string(p);
    return rep;
  }
  bool good = !divides_d && p != 2 && p != 5;
  if (good)
    for (i128 f : smoothness_factors(t))
      if (norm_mod(f, i128(p)) == 0) good = false;
  if (good && p >= 23) {
    ENR_CHECK(1 + i128(p) * i128(p) - 22 * i128(p) > 0, "point-count threshold");
    rep.verdict = Verdict::solvable;
    rep.certificate = "weil-threshold";
    rep.detail = "good reduction and 1 + p^2 - 22p > 0 force a smooth point";
    return rep;
  }
  if (!divides_d && p != 2 && p != 5) {
    if (auto w = smooth_fp_point(t, d, p)) {
      rep.verdict = Verdict::solvable;
      rep.certificate = "hensel";
      rep.detail = "smooth point " + fp_point_str(*w) + " mod " + std::to_string(p);
      rep.fp_point = *w;
      return rep;
    }
    if (p <= 23) {
      for (const auto &w : modp_solutions(t, d, p))
        if (fp_rank6(jacobian_mod(t, d, w, i128(p)), p) == 3) {
          rep.verdict = Verdict::solvable;
          rep.certificate = "hensel";
          rep.detail = "smooth point " + fp_point_str(w) + " mod " + std::to_string(p);
          rep.fp_point = w;
          return rep;
        }
    }
  }
  if (t.a == kReference.a && t.b == kReference.b && t.c == kReference.c && d == 1 &&
      (p == 2 || p == 3 || p == 5)) {
    RadPoint w = stored_witness(p);
    if (verify_explicit_point(w, t, d, p)) {
      rep.verdict = Verdict::solvable;
      rep.certificate = "explicit-witness";
      rep.detail = radpoint_str(w);
      return rep;
    }
  }
  if (p <= 23) {
    DigitSearch ds = digit_search(t, d, p, effort);
    if (ds.verdict == Verdict::solvable) {
      rep.verdict = Verdict::solvable;
      rep.certificate = "hensel";
      rep.detail = "lift certified at precision " + std::to_string(p) + "^" +
                   std::to_string(ds.level) + " (minor valuation " +
                   std::to_string(ds.minor_valuation) + ")";
      for (int i = 0; i < 6; ++i) rep.fp_point[size_t(i)] = ds.point[size_t(i)] % p;
      return rep;
    }
    if (ds.verdict == Verdict::empty && ds.exhaustive) {
      rep.verdict = Verdict::empty;
      rep.certificate = "enumeration";
      rep.detail = "every branch dies by precision " + std::to_string(p) + "^" +
                   std::to_string(ds.level + 1);
      return rep;
    }
  }
  rep.verdict = Verdict::unknown;
  rep.detail = "no certificate within the search budget";
  return rep;
}

Conditions14 conditions_1_to_4(const Triplet &t) {
  t.require_valid();
  Conditions14 r;
  auto nonresidue_at_support = [&](i128 form, i128 n) {
    bool ok = true;
    for (const auto &[q, e] : factor(form).pe) {
      if (q == 2) {
        r.even_support = true;
        continue;
      }
      if (q == 5) {
        r.five_support = true;
        continue;
      }
      if (legendre(n, u64(q)) != -1) ok = false;
    }
    return ok;
  };
  r.c1 = nonresidue_at_support(5 * i128(t.a) + 5 * i128(t.b) + i128(t.c), 5);
  r.c2 = nonresidue_at_support(20 * i128(t.a) + 5 * i128(t.b) + 2 * i128(t.c), 10);
  r.c3 = quadform4_anisotropic({i128(t.a), i128(t.b), i128(t.c), 1}, 3);
  r.c4 = legendre(-i128(t.b) * i128(t.c), 5) == -1;
  return r;
}

AdelicReport adelic_nonempty(const Triplet &t, int effort) {
  t.require_valid();
  std::set<i64> places{0};
  for (u64 q : {2, 3, 5, 7, 11, 13, 17, 19}) places.insert(i64(q));
  for (i128 q : bad_primes(t)) places.insert(i64(q));
  AdelicReport rep;
  rep.yes = true;
  for (i64 v : places) {
    rep.places.push_back(qp_points(t, 1, u64(v), effort));
    rep.yes = rep.yes && rep.places.back().solvable();
  }
  return rep;
}

std::vector<std::array<u64, 6>> padic_samples(const Triplet &t, i64 d, u64 p, int k, int n,
                                              u64 seed) {
  t.require_valid();
  ENR_CHECK(d != 0 && is_squarefree(d), "twist must be a nonzero squarefree integer");
  ENR_CHECK(is_prime(p) && p <= 23, "sampling expects a prime at most 23");
  ENR_CHECK(k >= 1, "precision must be positive");
  {
    i128 P = p;
    int fit = 1;
    while (P <= (i128(1) << 61) / i128(p)) {
      P *= i128(p);
      ++fit;
    }
    ENR_CHECK(k <= fit, "requested precision overflows the modulus bound");
  }
  std::mt19937_64 rng(seed);
  auto roots = modp_solutions(t, d, p);
  std::shuffle(roots.begin(), roots.end(), rng);
  std::set<std::array<u64, 6>> found;
  struct Node {
    std::array<u64, 6> w;
    int k;
  };
  for (const auto &root : roots) {
    if (int(found.size()) >= n) break;
    int lead = lead_index(root);
    std::vector<Node> stack{{root, 1}};
    u64 budget = 20000;
    // depth-first with the child order shuffled, so distinct roots (and
    // distinct seeds) spread over different residue branches
    while (!stack.empty() && budget-- > 0) {
      Node nd = stack.back();
      stack.pop_back();
      if (nd.k == k) {
        if (2 * minor_valuation(t, d, nd.w, k, p) + 1 <= k) {
          found.insert(nd.w);
          break;
        }
        continue;
      }
      auto children = lift_children(t, d, nd.w, nd.k, p, lead);
      std::shuffle(children.begin(), children.end(), rng);
      for (const auto &c : children) stack.push_back({c, nd.k + 1});
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace enr
