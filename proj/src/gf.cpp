#include "enr/gf.hpp"

#include <map>
#include <mutex>

namespace enr {

namespace {

// dense poly arithmetic over F_p for the irreducibility search
using Pol = std::vector<u64>;  // coeff[i] = coefficient of x^i, no trailing zeros

void trim(Pol &a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Pol pmulmod(const Pol &a, const Pol &b, const Pol &f, u64 p) {
  if (a.empty() || b.empty()) return {};
  Pol r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  // reduce by monic f
  while (r.size() >= f.size()) {
    u64 lead = r.back();
    size_t shift = r.size() - f.size();
    if (lead)
      for (size_t i = 0; i < f.size(); ++i) {
        u64 s = mulmod(lead, f[i], p);
        u64 &t = r[shift + i];
        t = t >= s ? t - s : t + p - s;
      }
    r.pop_back();
  }
  trim(r);
  return r;
}

Pol ppowmod(Pol base, u128 e, const Pol &f, u64 p) {
  Pol r{1};
  while (e) {
    if (e & 1) r = pmulmod(r, base, f, p);
    base = pmulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Pol pgcd(Pol a, Pol b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b
    u64 binv = invmod(b.back(), p);
    while (a.size() >= b.size()) {
      u64 q = mulmod(a.back(), binv, p);
      size_t shift = a.size() - b.size();
      if (q)
        for (size_t i = 0; i < b.size(); ++i) {
          u64 s = mulmod(q, b[i], p);
          u64 &t = a[shift + i];
          t = t >= s ? t - s : t + p - s;
        }
      a.pop_back();
      trim(a);
      if (a.size() < b.size()) break;
    }
    std::swap(a, b);
  }
  return a;
}

bool irreducible(const Pol &f, u64 p, unsigned k) {
  // Rabin: x^{p^k} = x mod f, and gcd(x^{p^{k/l}} - x, f) = 1 for prime l | k
  u128 pk = 1;
  for (unsigned i = 0; i < k; ++i) pk *= p;
  Pol x{0, 1};
  Pol xpk = ppowmod(x, pk, f, p);
  Pol diff = xpk;
  // subtract x
  if (diff.size() < 2) diff.resize(2, 0);
  diff[1] = diff[1] >= 1 ? diff[1] - 1 : p - 1;
  trim(diff);
  if (!diff.empty()) return false;
  for (unsigned l = 2; l <= k; ++l) {
    if (!(k % l == 0 && is_prime(l))) continue;
    u128 pe = 1;
    for (unsigned i = 0; i < k / l; ++i) pe *= p;
    Pol xe = ppowmod(x, pe, f, p);
    Pol d2 = xe;
    if (d2.size() < 2) d2.resize(2, 0);
    d2[1] = d2[1] >= 1 ? d2[1] - 1 : p - 1;
    trim(d2);
    Pol g = pgcd(f, d2, p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::map<std::pair<u64, unsigned>, FieldDesc> g_fields;
std::mutex g_fields_mx;

}  // namespace

const FieldDesc *FieldDesc::get(u64 p, unsigned k) {
  ENR_CHECK(k >= 1 && k <= 4 && is_prime(p), "FieldDesc: need prime p, k in 1..4");
  std::lock_guard lk(g_fields_mx);
  auto it = g_fields.find({p, k});
  if (it != g_fields.end()) return &it->second;
  FieldDesc F;
  F.p = p;
  F.k = k;
  if (k > 1) {
    // smallest coefficient tuple, ordered as the base-p integer a0 + a1 p + ...
    u128 qk = 1;
    for (unsigned i = 0; i < k; ++i) qk *= p;
    bool found = false;
    for (u128 m = 0; m < qk && !found; ++m) {
      Pol f(k + 1, 0);
      u128 t = m;
      for (unsigned i = 0; i < k; ++i) {
        f[i] = u64(t % p);
        t /= p;
      }
      f[k] = 1;
      if (irreducible(f, p, k)) {
        for (unsigned i = 0; i < k; ++i) F.mod[i] = f[i];
        found = true;
      }
    }
    ENR_CHECK(found, "no irreducible polynomial found");
  }
  auto [pos, ok] = g_fields.emplace(std::make_pair(p, k), F);
  (void)ok;
  return &pos->second;
}

Fq operator*(const Fq &a, const Fq &b) {
  ENR_CHECK(a.F == b.F, "field mismatch");
  const auto *F = a.F;
  unsigned k = F->k;
  u64 p = F->p;
  std::array<u64, 7> w{};
  for (unsigned i = 0; i < k; ++i)
    if (a.c[i])
      for (unsigned j = 0; j < k; ++j)
        if (b.c[j]) w[i + j] = (w[i + j] + mulmod(a.c[i], b.c[j], p)) % p;
  // fold down x^{k+j} = -sum mod[i] x^{i+j}
  for (unsigned d = 2 * k - 2; d >= k && d < 7; --d) {
    u64 lead = w[d];
    if (lead) {
      w[d] = 0;
      for (unsigned i = 0; i < k; ++i) {
        u64 s = mulmod(lead, F->mod[i], p);
        u64 &t = w[d - k + i];
        t = t >= s ? t - s : t + p - s;
      }
    }
    if (d == k) break;
  }
  Fq r(F);
  for (unsigned i = 0; i < k; ++i) r.c[i] = w[i];
  return r;
}

Fq Fq::pow(u128 e) const {
  Fq r(F, 1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Fq Fq::inv() const {
  ENR_CHECK(!is_zero(), "inverse of 0");
  return pow(F->q() - 2);
}

bool Fq::is_square() const {
  if (is_zero()) return true;
  Fq e = pow((F->q() - 1) / 2);
  return e == Fq(F, 1);
}

Fq Fq::sqrt() const {
  if (is_zero()) return *this;
  ENR_CHECK(is_square(), "sqrt of a non-square");
  u128 q = F->q();
  Fq r(F);
  if (q % 4 == 3) {
    r = pow((q + 1) / 4);
  } else {
    // Tonelli–Shanks in F_q^*; non-square found by scanning packed order
    u128 s = q - 1;
    int e2 = 0;
    while (!(s & 1)) s >>= 1, ++e2;
    Fq z(F);
    // for even k the whole prime subfield consists of squares, skip it
    for (u64 m = (F->k % 2 == 0) ? F->p : 2;; ++m) {
      z = fq_from_packed(F, m);
      if (!z.is_zero() && !z.is_square()) break;
      ENR_CHECK(m < (u64(1) << 40), "non-square scan overflow");
    }
    Fq one(F, 1);
    u128 mm = e2;
    Fq c = z.pow(s), t = pow(s);
    r = pow((s + 1) / 2);
    while (!(t == one)) {
      Fq t2 = t;
      u128 i = 0;
      while (!(t2 == one)) {
        t2 = t2 * t2;
        ++i;
        ENR_CHECK(i < mm, "tonelli order overflow");
      }
      Fq b = c;
      for (u128 j = 0; j + i + 1 < mm; ++j) b = b * b;
      mm = i;
      c = b * b;
      t = t * c;
      r = r * b;
    }
  }
  ENR_CHECK(r * r == *this, "sqrt verification");
  Fq m = -r;
  // lexicographic tiebreak on (c0, c1, ...)
  for (unsigned i = 0; i < F->k; ++i) {
    if (r.c[i] < m.c[i]) return r;
    if (m.c[i] < r.c[i]) return m;
  }
  return r;
}

std::string Fq::str() const {
  std::string s = "[";
  for (unsigned i = 0; i < F->k; ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + "]";
}

Fq fq_from_packed(const FieldDesc *F, u64 m) {
  Fq r(F);
  for (unsigned i = 0; i < F->k; ++i) {
    r.c[i] = m % F->p;
    m /= F->p;
  }
  ENR_CHECK(m == 0, "packed value out of range");
  return r;
}

GFLog GFLog::build(u64 p, unsigned k) {
  ENR_CHECK(p > 2, "GFLog needs odd characteristic");
  const FieldDesc *F = FieldDesc::get(p, k);
  u128 qq = F->q();
  ENR_CHECK(qq <= (u128(1) << 20), "GFLog: field too large");
  GFLog T;
  T.p = p;
  T.k = k;
  T.q = u32(qq);
  T.qm1 = T.q - 1;

  // generator: order q-1 exactly
  auto fac = factor(i128(T.qm1));
  Fq g(F);
  for (u64 m = 2;; ++m) {
    g = fq_from_packed(F, m);
    if (g.is_zero()) continue;
    bool ok = true;
    for (auto &[pr, e] : fac.pe)
      if (g.pow(T.qm1 / u64(pr)) == Fq(F, 1)) {
        ok = false;
        break;
      }
    if (ok) break;
    ENR_CHECK(m + 1 < T.q, "no generator found");
  }

  T.expt.assign(T.qm1, 0);
  T.logt.assign(T.q, -1);
  Fq cur(F, 1);
  for (u32 i = 0; i < T.qm1; ++i) {
    u64 pk = cur.packed();
    T.expt[i] = u32(pk);
    ENR_CHECK(T.logt[pk] == -1, "generator order defect");
    T.logt[pk] = i32(i);
    cur = cur * g;
  }
  ENR_CHECK(cur == Fq(F, 1), "generator order defect");

  T.zech.assign(T.qm1, -1);
  for (u32 i = 0; i < T.qm1; ++i) {
    Fq e = fq_from_packed(F, T.expt[i]) + Fq(F, 1);
    T.zech[i] = e.is_zero() ? -1 : T.logt[e.packed()];
  }
  for (i64 n = 1; n <= 4; ++n) T.log_small[size_t(n - 1)] = T.log_of_int(n);
  return T;
}

}  // namespace enr
