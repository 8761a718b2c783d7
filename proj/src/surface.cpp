#include "enr/surface.hpp"

#include <algorithm>

#include "enr/arith.hpp"

namespace enr {

namespace {
constexpr i64 kCoeffCap = 10000000;  // keeps every smoothness factor below 2^63
}

bool Triplet::valid() const {
  if (a < 1 || b < 1 || c < 1) return false;
  if (a > kCoeffCap || b > kCoeffCap || c > kCoeffCap) return false;
  if (2 * a == b) return false;
  for (i128 f : smoothness_factors(*this))
    if (f == 0) return false;
  return true;
}

std::pair<Triplet, i64> parse_triplet(const std::string &s) {
  std::vector<i64> parts;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    std::string tok = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
    ENR_CHECK(!tok.empty(), "empty triplet component");
    size_t used = 0;
    i64 v = std::stoll(tok, &used);
    ENR_CHECK(used == tok.size(), "malformed triplet component");
    parts.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  ENR_CHECK(parts.size() == 3 || parts.size() == 4, "triplet needs 3 or 4 components");
  Triplet t{parts[0], parts[1], parts[2]};
  i64 d = parts.size() == 4 ? parts[3] : 1;
  return {t, d};
}

std::array<i128, 8> smoothness_factors(const Triplet &t) {
  i128 a = t.a, b = t.b, c = t.c;
  return {a,
          b,
          c,
          5 * a + 5 * b + c,
          20 * a + 5 * b + 2 * c,
          4 * a * a + b * b,
          c * c - 100 * a * b,
          c * c + 5 * b * c + 10 * a * c + 25 * a * b};
}

BigInt smoothness_product(const Triplet &t) {
  BigInt r(1);
  bool neg = false;
  for (i128 f : smoothness_factors(t)) {
    if (f == 0) return BigInt(0);
    if (f < 0) {
      neg = !neg;
      f = -f;
    }
    ENR_CHECK(f < (i128(1) << 63), "smoothness factor overflow");
    r *= u64(f);
  }
  r.neg = neg;
  return r;
}

std::vector<i128> bad_primes(const Triplet &t) {
  std::set<i128> ps{2, 5};
  for (i128 f : smoothness_factors(t)) {
    ENR_CHECK(f != 0, "smoothness product vanishes");
    for (auto &[p, e] : factor(f).pe) ps.insert(p);
  }
  return {ps.begin(), ps.end()};
}

namespace {
Mat gram3(i128 m00, i128 m01, i128 m02, i128 m11, i128 m12, i128 m22) {
  Mat m(3, 3);
  m.at(0, 0) = m00;
  m.at(0, 1) = m.at(1, 0) = m01;
  m.at(0, 2) = m.at(2, 0) = m02;
  m.at(1, 1) = m11;
  m.at(1, 2) = m.at(2, 1) = m12;
  m.at(2, 2) = m22;
  return m;
}
}  // namespace

TwistedSurface family(const Triplet &t) {
  t.require_valid();
  TwistedSurface s;
  s.t = t;
  s.d = 1;
  // s^2 = xy + 5z^2
  s.Q[0] = gram3(2, 0, 0, 0, 0, 0);
  s.Qt[0] = gram3(0, 1, 0, 0, 0, 10);
  // s^2 - 5t^2 = (x+y)(x+2y) = x^2 + 3xy + 2y^2
  s.Q[1] = gram3(2, 0, 0, -10, 0, 0);
  s.Qt[1] = gram3(2, 3, 0, 4, 0, 0);
  // u^2 = a x^2 + b y^2 + c z^2
  s.Q[2] = gram3(0, 0, 0, 0, 0, 2);
  s.Qt[2] = gram3(2 * t.a, 0, 0, 2 * t.b, 0, 2 * t.c);
  return s;
}

TwistedSurface twist(const TwistedSurface &s, i64 d) {
  ENR_CHECK(s.d == 1, "twist of an already twisted surface");
  ENR_CHECK(d != 0 && is_squarefree(d), "twist parameter must be squarefree nonzero");
  TwistedSurface r = s;
  r.d = d;
  for (auto &q : r.Q)
    for (auto &e : q.a) e = mul_ck(e, d);
  return r;
}

Mat TwistedSurface::full_gram(int i) const {
  Mat m(6, 6);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      m.at(r, c) = Q[size_t(i)].at(r, c);
      m.at(r + 3, c + 3) = -Qt[size_t(i)].at(r, c);
    }
  return m;
}

i128 eval_quadric(const Mat &gram, const std::vector<i128> &v) {
  ENR_CHECK(gram.rows == gram.cols && int(v.size()) == gram.rows, "eval shape");
  i128 r = 0;
  for (int i = 0; i < gram.rows; ++i) {
    ENR_CHECK(gram.at(i, i) % 2 == 0, "doubled Gram needs even diagonal");
    r = add_ck(r, mul_ck(gram.at(i, i) / 2, mul_ck(v[size_t(i)], v[size_t(i)])));
    for (int j = i + 1; j < gram.cols; ++j)
      r = add_ck(r, mul_ck(gram.at(i, j), mul_ck(v[size_t(i)], v[size_t(j)])));
  }
  return r;
}

SurfaceModP reduce_mod_p(const TwistedSurface &s, u64 p) {
  ENR_CHECK(p > 2 && p != 5 && is_prime(p), "reduction prime must be odd, not 5");
  ENR_CHECK(i128(s.d) % i128(p) != 0, "reduction prime divides the twist");
  auto md = [&](i128 v) {
    i128 r = v % i128(p);
    if (r < 0) r += p;
    return u64(r);
  };
  SurfaceModP r;
  r.p = p;
  r.a = md(s.t.a);
  r.b = md(s.t.b);
  r.c = md(s.t.c);
  r.d = md(s.d);
  r.good = true;
  for (i128 f : smoothness_factors(s.t))
    if (f % i128(p) == 0) r.good = false;
  return r;
}

std::vector<std::array<u64, 6>> singular_points_mod_p(const TwistedSurface &s, u64 p) {
  ENR_CHECK(p <= 13 && is_prime(p), "enumeration bound");
  std::array<Mat, 3> G;
  for (int i = 0; i < 3; ++i) G[size_t(i)] = s.full_gram(i);
  auto md = [&](i128 v) {
    i128 r = v % i128(p);
    if (r < 0) r += p;
    return u64(r);
  };
  std::vector<std::array<u64, 6>> out;
  std::vector<i128> v(6, 0);
  // representatives: first nonzero coordinate = 1
  for (int lead = 0; lead < 6; ++lead) {
    std::fill(v.begin(), v.end(), 0);
    v[size_t(lead)] = 1;
    u64 total = 1;
    for (int j = lead + 1; j < 6; ++j) total *= p;
    for (u64 idx = 0; idx < total; ++idx) {
      u64 m = idx;
      for (int j = lead + 1; j < 6; ++j) {
        v[size_t(j)] = i128(m % p);
        m /= p;
      }
      bool on = true;
      for (int i = 0; i < 3 && on; ++i)
        if (md(eval_quadric(G[size_t(i)], v)) != 0) on = false;
      if (!on) continue;
      // Jacobian rows: gradient of v^T M v / 2 is M v
      u64 jac[3][6];
      for (int i = 0; i < 3; ++i) {
        auto g = G[size_t(i)].apply(v);
        for (int j = 0; j < 6; ++j) jac[i][j] = md(g[size_t(j)]);
      }
      // rank mod p by elimination
      int rank = 0;
      for (int col = 0; col < 6 && rank < 3; ++col) {
        int piv = -1;
        for (int row = rank; row < 3; ++row)
          if (jac[row][col]) {
            piv = row;
            break;
          }
        if (piv < 0) continue;
        std::swap(jac[piv], jac[rank]);
        u64 inv = powmod(jac[rank][col], p - 2, p);
        for (int row = rank + 1; row < 3; ++row) {
          u64 f = mulmod(jac[row][col], inv, p);
          if (f)
            for (int j = col; j < 6; ++j)
              jac[row][j] = (jac[row][j] + (p - f) * jac[rank][j]) % p;
        }
        ++rank;
      }
      if (rank < 3) {
        std::array<u64, 6> pt;
        for (int j = 0; j < 6; ++j) pt[size_t(j)] = u64(v[size_t(j)]);
        out.push_back(pt);
      }
    }
  }
  return out;
}

}  // namespace enr
