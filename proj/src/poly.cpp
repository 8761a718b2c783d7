#include "enr/poly.hpp"

#include <functional>
#include <map>
#include <mutex>

namespace enr {

std::string IntPoly::str(const char *var) const {
  if (is_zero()) return "0";
  std::string s;
  for (size_t i = c.size(); i-- > 0;) {
    i128 a = c[i];
    if (!a) continue;
    if (!s.empty()) s += a > 0 ? " + " : " - ";
    else if (a < 0) s += "-";
    i128 m = abs128(a);
    bool unit = (m == 1 && i > 0);
    if (!unit) s += to_string(m);
    if (i > 0) {
      if (!unit) s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

std::optional<IntPoly> divide_exact(const IntPoly &a, const IntPoly &b) {
  ENR_CHECK(!b.is_zero(), "division by zero polynomial");
  if (a.is_zero()) return IntPoly{};
  if (a.deg() < b.deg()) return std::nullopt;
  IntPoly r = a;
  std::vector<i128> q(size_t(a.deg() - b.deg()) + 1, 0);
  i128 lead = b.c.back();
  for (int d = a.deg(); d >= b.deg(); --d) {
    i128 top = r.coeff(d);
    if (top == 0) continue;
    if (top % lead != 0) return std::nullopt;
    i128 f = top / lead;
    q[size_t(d - b.deg())] = f;
    for (int i = 0; i <= b.deg(); ++i)
      r.c[size_t(d - b.deg() + i)] =
          sub_ck(r.c[size_t(d - b.deg() + i)], mul_ck(f, b.coeff(i)));
  }
  r.trim();
  if (!r.is_zero()) return std::nullopt;
  IntPoly out(std::move(q));
  return out;
}

IntPoly cyclotomic(unsigned n) {
  static std::map<unsigned, IntPoly> cache;
  static std::mutex mx;
  std::lock_guard lk(mx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  ENR_CHECK(n >= 1, "cyclotomic(0)");
  std::function<IntPoly(unsigned)> phi = [&](unsigned m) -> IntPoly {
    auto jt = cache.find(m);
    if (jt != cache.end()) return jt->second;
    IntPoly xm;  // x^m - 1
    xm.c.assign(m + 1, 0);
    xm.c[0] = -1;
    xm.c[m] = 1;
    IntPoly q = xm;
    for (unsigned d = 1; d < m; ++d)
      if (m % d == 0) {
        auto dv = divide_exact(q, phi(d));
        ENR_CHECK(dv.has_value(), "cyclotomic recursion");
        q = *dv;
      }
    cache.emplace(m, q);
    return q;
  };
  return phi(n);
}

IntPoly scale_arg_sign(const IntPoly &f, int s) {
  ENR_CHECK(s == 1 || s == -1, "sign scale");
  IntPoly r = f;
  if (s == -1)
    for (size_t i = 1; i < r.c.size(); i += 2) r.c[i] = -r.c[i];
  return r;
}

std::vector<std::complex<double>> complex_roots(const IntPoly &f) {
  int n = f.deg();
  ENR_CHECK(n >= 1, "roots of a constant");
  std::vector<std::complex<double>> a(size_t(n) + 1);
  for (int i = 0; i <= n; ++i) a[size_t(i)] = double(f.coeff(i));
  for (auto &x : a) x /= double(f.c.back());

  // Durand–Kerner from a non-symmetric spiral start
  std::vector<std::complex<double>> z(size_t(n), std::complex<double>{});
  double radius = 0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(a[size_t(i)]));
  radius = 1.0 + radius;
  for (int i = 0; i < n; ++i)
    z[size_t(i)] = std::polar(radius * (0.5 + 0.5 * (i + 1.0) / n),
                              0.4 + 6.283185307179586 * i / n);
  auto eval = [&](std::complex<double> x) {
    std::complex<double> r = 0;
    for (int i = n; i >= 0; --i) r = r * x + a[size_t(i)];
    return r;
  };
  double prev = 1e300;
  for (int it = 0; it < 2000; ++it) {
    double moved = 0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> d = eval(z[size_t(i)]);
      for (int j = 0; j < n; ++j)
        if (j != i) d /= (z[size_t(i)] - z[size_t(j)]);
      z[size_t(i)] -= d;
      moved = std::max(moved, std::abs(d));
    }
    if (moved < 1e-13) return z;
    prev = moved;
  }
  ENR_CHECK(prev < 1e-8, "root iteration stalled");
  return z;
}

}  // namespace enr
