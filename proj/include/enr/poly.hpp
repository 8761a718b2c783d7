#pragma once

#include <algorithm>
#include <complex>
#include <optional>

#include "enr/util.hpp"

namespace enr {

// Dense integer polynomial, coeff[i] multiplies x^i, no trailing zeros.
struct IntPoly {
  std::vector<i128> c;

  IntPoly() = default;
  IntPoly(std::initializer_list<i128> v) : c(v) { trim(); }
  explicit IntPoly(std::vector<i128> v) : c(std::move(v)) { trim(); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  int deg() const { return int(c.size()) - 1; }  // deg(0) = -1
  bool is_zero() const { return c.empty(); }
  i128 coeff(int i) const { return (i >= 0 && i < int(c.size())) ? c[size_t(i)] : 0; }

  friend IntPoly operator+(const IntPoly &a, const IntPoly &b) {
    IntPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i)
      r.c[i] = add_ck(a.coeff(int(i)), b.coeff(int(i)));
    r.trim();
    return r;
  }
  friend IntPoly operator-(const IntPoly &a, const IntPoly &b) {
    IntPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i)
      r.c[i] = sub_ck(a.coeff(int(i)), b.coeff(int(i)));
    r.trim();
    return r;
  }
  friend IntPoly operator*(const IntPoly &a, const IntPoly &b) {
    if (a.is_zero() || b.is_zero()) return {};
    IntPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i)
      if (a.c[i])
        for (size_t j = 0; j < b.c.size(); ++j)
          r.c[i + j] = add_ck(r.c[i + j], mul_ck(a.c[i], b.c[j]));
    r.trim();
    return r;
  }
  friend bool operator==(const IntPoly &a, const IntPoly &b) { return a.c == b.c; }

  i128 eval(i128 x) const {
    i128 r = 0;
    for (size_t i = c.size(); i-- > 0;) r = add_ck(mul_ck(r, x), c[i]);
    return r;
  }
  Rational eval(const Rational &x) const {
    Rational r(0);
    for (size_t i = c.size(); i-- > 0;) r = r * x + Rational(c[i]);
    return r;
  }
  // coefficients reversed: x^deg * f(1/x)
  IntPoly reversed() const {
    IntPoly r = *this;
    std::reverse(r.c.begin(), r.c.end());
    r.trim();
    return r;
  }
  std::string str(const char *var = "T") const;
};

// Quotient a / b when b divides a exactly over Z (monic-leading b or exact);
// returns nullopt if not exactly divisible.
std::optional<IntPoly> divide_exact(const IntPoly &a, const IntPoly &b);

IntPoly cyclotomic(unsigned n);

// f(x) -> f(s*x) with s = +-1 (enough for the functional-equation bookkeeping)
IntPoly scale_arg_sign(const IntPoly &f, int s);

// All complex roots by Durand–Kerner; f squarefree not required, but
// convergence is checked and an invariant failure is raised if it stalls.
std::vector<std::complex<double>> complex_roots(const IntPoly &f);

}  // namespace enr
