#pragma once

#include <array>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace enr {

using i32 = std::int32_t;
using u32 = std::uint32_t;
using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// Internal invariant check. Unlike assert() it survives NDEBUG builds:
// every throw here means a broken mathematical invariant, not bad user input.
#define ENR_CHECK(cond, msg)                                                   \
  do {                                                                         \
    if (!(cond)) throw std::logic_error(std::string("invariant: ") + (msg));   \
  } while (0)

inline std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 a = neg ? u128(0) - u128(v) : u128(v);
  std::string s;
  while (a) {
    s.push_back(char('0' + int(a % 10)));
    a /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

// Overflow-checked i128 ops. 128 bits hold every intermediate in this
// project except smoothness products of adversarial triplets, which fall
// back to BigInt below.
inline i128 add_ck(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("i128 add");
  return r;
}
inline i128 sub_ck(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("i128 sub");
  return r;
}
inline i128 mul_ck(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("i128 mul");
  return r;
}

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

inline i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline i128 pow_ck(i128 base, unsigned e) {
  i128 r = 1;
  while (e--) r = mul_ck(r, base);
  return r;
}

// Sign-magnitude big integer. Only multiplication/addition/compare/decimal
// output: enough for products of prime powers that overflow i128.
struct BigInt {
  bool neg = false;
  std::vector<std::uint32_t> d;  // base 2^32, little endian, no leading zeros

  BigInt() = default;
  BigInt(i128 v) {
    neg = v < 0;
    u128 a = neg ? u128(0) - u128(v) : u128(v);
    while (a) {
      d.push_back(std::uint32_t(a));
      a >>= 32;
    }
  }
  bool is_zero() const { return d.empty(); }

  BigInt &operator*=(u64 m) {
    if (m == 0 || is_zero()) {
      d.clear();
      neg = false;
      return *this;
    }
    u64 lo = std::uint32_t(m), hi = m >> 32;
    if (hi) {
      BigInt shifted = *this;
      shifted.mul_small(std::uint32_t(hi));
      shifted.d.insert(shifted.d.begin(), 0);
      mul_small(std::uint32_t(lo));
      add_mag(shifted);
    } else {
      mul_small(std::uint32_t(lo));
    }
    return *this;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::vector<std::uint32_t> w = d;
    std::string s;
    while (!w.empty()) {
      u64 rem = 0;
      for (size_t i = w.size(); i-- > 0;) {
        u64 cur = (rem << 32) | w[i];
        w[i] = std::uint32_t(cur / 1000000000u);
        rem = cur % 1000000000u;
      }
      while (!w.empty() && w.back() == 0) w.pop_back();
      char buf[16];
      auto *end = buf + std::snprintf(buf, sizeof buf, w.empty() ? "%llu" : "%09llu",
                                      (unsigned long long)rem);
      s.insert(0, buf, size_t(end - buf));
    }
    if (neg) s.insert(0, 1, '-');
    return s;
  }

 private:
  void mul_small(std::uint32_t m) {
    u64 carry = 0;
    for (auto &x : d) {
      u64 cur = u64(x) * m + carry;
      x = std::uint32_t(cur);
      carry = cur >> 32;
    }
    while (carry) {
      d.push_back(std::uint32_t(carry));
      carry >>= 32;
    }
    while (!d.empty() && d.back() == 0) d.pop_back();
  }
  void add_mag(const BigInt &o) {
    if (d.size() < o.d.size()) d.resize(o.d.size(), 0);
    u64 carry = 0;
    for (size_t i = 0; i < d.size(); ++i) {
      u64 cur = u64(d[i]) + (i < o.d.size() ? o.d[i] : 0) + carry;
      d[i] = std::uint32_t(cur);
      carry = cur >> 32;
    }
    if (carry) d.push_back(std::uint32_t(carry));
  }
};

// Exact rational with i128 parts, always normalized (den > 0, gcd = 1).
struct Rational {
  i128 num = 0, den = 1;

  Rational() = default;
  Rational(i128 n) : num(n), den(1) {}
  Rational(i128 n, i128 d) : num(n), den(d) { normalize(); }

  void normalize() {
    ENR_CHECK(den != 0, "rational zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  bool is_integer() const { return den == 1; }

  friend Rational operator+(const Rational &a, const Rational &b) {
    i128 g = gcd128(a.den, b.den);
    i128 bd = b.den / g;
    return Rational(add_ck(mul_ck(a.num, bd), mul_ck(b.num, a.den / g)),
                    mul_ck(a.den, bd));
  }
  friend Rational operator-(const Rational &a, const Rational &b) {
    return a + Rational(-b.num, b.den);
  }
  friend Rational operator*(const Rational &a, const Rational &b) {
    i128 g1 = gcd128(a.num, b.den), g2 = gcd128(b.num, a.den);
    return Rational(mul_ck(a.num / g1, b.num / g2),
                    mul_ck(a.den / g2, b.den / g1));
  }
  friend Rational operator/(const Rational &a, const Rational &b) {
    ENR_CHECK(b.num != 0, "rational division by zero");
    return a * Rational(b.den, b.num);
  }
  Rational operator-() const { return Rational(-num, den); }
  friend bool operator==(const Rational &a, const Rational &b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational &a, const Rational &b) { return !(a == b); }
  friend bool operator<(const Rational &a, const Rational &b) {
    return mul_ck(a.num, b.den) < mul_ck(b.num, a.den);
  }
  std::string str() const {
    return is_integer() ? to_string(num) : to_string(num) + "/" + to_string(den);
  }
};

inline std::size_t hash_mix(std::size_t seed, std::size_t v) {
  // splitmix-style avalanche, good enough for dedup sets
  v += 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
  return seed ^ (v ^ (v >> 31));
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

// All randomized algorithms take their seed from here so results are
// reproducible across runs and platforms.
inline std::mt19937_64 seeded_rng(u64 salt) {
  return std::mt19937_64(0x5eed0000c0ffeeull ^ salt);
}

}  // namespace enr
