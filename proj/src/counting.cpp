#include "enr/counting.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <map>
#include <mutex>
#include <thread>

namespace enr {

namespace {

std::map<std::pair<u64, unsigned>, GFLog> g_tables;
std::mutex g_tables_mx;

const GFLog &tables(u64 p, unsigned k) {
  std::lock_guard lk(g_tables_mx);
  auto it = g_tables.find({p, k});
  if (it == g_tables.end())
    it = g_tables.emplace(std::make_pair(p, k), GFLog::build(p, k)).first;
  return it->second;
}

u64 residue(i128 v, u64 p) {
  i128 r = v % i128(p);
  if (r < 0) r += p;
  return u64(r);
}

}  // namespace

bool ResidueClass::good() const {
  Triplet t{i64(a), i64(b), i64(c)};
  // factor expressions evaluated on residues are themselves residues
  for (i128 f : smoothness_factors(t))
    if (residue(f, p) == 0) return false;
  return true;
}

void CountRecord::validate() const {
  u64 base = q * q + q + 1;
  ENR_CHECK(N <= 8 * base, "count exceeds the 8-sheet bound");
  if (good) {
    // Weil: 22 eigenvalues of modulus q on H^2 of a smooth K3 reduction
    i128 dev = i128(N) - 1 - i128(q) * i128(q);
    ENR_CHECK(abs128(dev) <= 22 * i128(q), "count violates the Weil bound");
    ENR_CHECK(N <= 2 * base, "count exceeds 2(q^2+q+1)");
  }
}

CountRecord count_fibered_class(const ResidueClass &r, unsigned k, int threads) {
  ENR_CHECK(r.p > 2 && r.p != 5, "fibered count needs p odd, p != 5");
  ENR_CHECK(r.d % r.p != 0, "twist must be a unit mod p");
  const GFLog &T = tables(r.p, k);
  const i32 qm1 = i32(T.qm1);
  auto inv = [&](i32 l) { return l <= 0 ? l : qm1 - l; };

  const i32 l2 = T.log_of_int(2);
  const i32 l5 = T.log_of_int(5);
  const i32 la = T.log_of_int(i64(r.a));
  const i32 lb = T.log_of_int(i64(r.b));
  const i32 lc = T.log_of_int(i64(r.c));
  const int cd = T.chi(T.log_of_int(i64(r.d)));
  ENR_CHECK(cd != 0, "chi(d) vanished");
  const i32 lm15 = T.neg(inv(l5));  // log(-1/5)

  // chart z = 1: A = xy + 5, B = 1 - (x^2+2xy+2y^2)/5, C = a x^2 + b y^2 + c
  auto sum_range = [&](i32 lx_begin, i32 lx_end) -> u64 {
    u64 acc = 0;
    for (i32 lx = lx_begin; lx < lx_end; ++lx) {
      const i32 sqx = T.sq(lx);
      const i32 ax2 = T.mul(la, sqx);
      const i32 l2x = T.mul(l2, lx);
      for (i32 ly = -1; ly < qm1; ++ly) {
        const i32 lxy = T.mul(lx, ly);
        const i32 lA = T.add(lxy, l5);
        const int fA = 1 + cd * T.chi(lA);
        if (!fA) continue;
        const i32 sqy = T.sq(ly);
        const i32 lu = T.add(T.add(sqx, T.mul(l2x, ly)), T.mul(l2, sqy));
        const i32 lB = T.add(0, T.mul(lm15, lu));  // 1 + (-1/5)u
        const int fB = 1 + cd * T.chi(lB);
        if (!fB) continue;
        const i32 lC = T.add(T.add(ax2, T.mul(lb, sqy)), lc);
        acc += u64(fA * fB * (1 + cd * T.chi(lC)));
      }
    }
    return acc;
  };

  u64 N = 0;
  const i32 full_begin = -1, full_end = qm1;
  if (threads <= 1) {
    N = sum_range(full_begin, full_end);
  } else {
    int nt = std::min<int>(threads, 64);
    std::vector<u64> part(size_t(nt), 0);
    std::vector<std::thread> pool;
    i32 total = full_end - full_begin;
    for (int i = 0; i < nt; ++i)
      pool.emplace_back([&, i]() {
        i32 b = i32(full_begin + i64(total) * i / nt);
        i32 e = i32(full_begin + i64(total) * (i + 1) / nt);
        part[size_t(i)] = sum_range(b, e);
      });
    for (auto &th : pool) th.join();
    for (u64 v : part) N += v;
  }

  // chart (x, 1, 0): A = x, B = -(x^2+2x+2)/5, C = a x^2 + b
  for (i32 lx = -1; lx < qm1; ++lx) {
    const int fA = 1 + cd * T.chi(lx);
    if (!fA) continue;
    const i32 lu = T.add(T.add(T.sq(lx), T.mul(l2, lx)), l2);
    const i32 lB = T.mul(lm15, lu);
    const int fB = 1 + cd * T.chi(lB);
    if (!fB) continue;
    const i32 lC = T.add(T.mul(la, T.sq(lx)), lb);
    N += u64(fA * fB * (1 + cd * T.chi(lC)));
  }

  // chart (1, 0, 0): A = 0, B = -1/5, C = a
  N += u64(1 * (1 + cd * T.chi(lm15)) * (1 + cd * T.chi(la)));

  CountRecord rec;
  rec.p = r.p;
  rec.k = k;
  rec.q = T.q;
  rec.a = r.a;
  rec.b = r.b;
  rec.c = r.c;
  rec.d = r.d;
  rec.N = N;
  rec.good = r.good();
  rec.validate();
  return rec;
}

CountRecord count_fibered(const TwistedSurface &s, u64 p, unsigned k, int threads) {
  SurfaceModP m = reduce_mod_p(s, p);
  ResidueClass r{p, m.a, m.b, m.c, m.d};
  return count_fibered_class(r, k, threads);
}

CountRecord count_naive(const TwistedSurface &s, u64 p, unsigned k) {
  ENR_CHECK(p > 2 && p != 5, "characteristic 2 and 5 are out of scope");
  const GFLog &T = tables(p, k);
  ENR_CHECK(T.q <= 49, "naive enumeration bound");
  const i32 qm1 = i32(T.qm1);
  const u32 q = T.q;

  // logs of the three 6x6 quadric coefficient matrices
  i32 lM[3][6][6];  // lM[i][r][c]: log of entry; diagonal holds log(M_rr/2)
  for (int i = 0; i < 3; ++i) {
    Mat G = s.full_gram(i);
    for (int rr = 0; rr < 6; ++rr)
      for (int cc = 0; cc < 6; ++cc) {
        i128 e = rr == cc ? G.at(rr, cc) / 2 : G.at(rr, cc);
        i128 m = e % i128(p);
        if (m < 0) m += p;
        lM[i][rr][cc] = T.logt[size_t(m)];
      }
  }

  // value of quadric i at v (logs), coordinates j0..5 beyond j capped to zero
  auto eval_prefix = [&](int i, const i32 *lv, int upto) -> i32 {
    i32 acc = -1;
    for (int rr = 0; rr < upto; ++rr) {
      if (lv[rr] < 0) continue;
      acc = T.add(acc, T.mul(lM[i][rr][rr], T.sq(lv[rr])));
      for (int cc = rr + 1; cc < upto; ++cc)
        acc = T.add(acc, T.mul(lM[i][rr][cc], T.mul(lv[rr], lv[cc])));
    }
    return acc;
  };

  u64 N = 0;
  i32 lv[6];
  const i32 lzero = -1;
  for (int lead = 0; lead < 6; ++lead) {
    for (int j = 0; j < lead; ++j) lv[j] = lzero;
    lv[lead] = 0;  // log of 1
    if (lead == 5) {
      bool on = true;
      for (int i = 0; i < 3 && on; ++i) on = (T.mul(lM[i][5][5], 0) < 0);
      if (on) ++N;
      break;
    }
    // free coordinates lead+1 .. 5; innermost (index 5) handled by the
    // quadratic-in-z decomposition val = alpha + beta z + gamma z^2
    int nfree = 5 - lead;  // prefix coordinates lead+1..4 plus innermost 5
    u64 prefixes = 1;
    for (int j = 0; j < nfree - 1; ++j) prefixes *= q;
    for (u64 idx = 0; idx < prefixes; ++idx) {
      u64 m = idx;
      for (int j = lead + 1; j < 5; ++j) {
        u32 packed = u32(m % q);
        m /= q;
        lv[j] = T.logt[packed];
      }
      i32 alpha[3], lbeta[3];
      for (int i = 0; i < 3; ++i) {
        alpha[i] = eval_prefix(i, lv, 5);
        i32 bacc = -1;
        for (int j = 0; j < 5; ++j)
          if (lv[j] >= 0) bacc = T.add(bacc, T.mul(lM[i][5][j], lv[j]));
        lbeta[i] = bacc;
      }
      for (i32 lz = -1; lz < qm1; ++lz) {
        bool on = true;
        for (int i = 0; i < 3 && on; ++i) {
          i32 val = T.add(alpha[i], T.mul(lbeta[i], lz));
          val = T.add(val, T.mul(lM[i][5][5], T.sq(lz)));
          on = (val < 0);
        }
        if (on) ++N;
      }
    }
  }

  SurfaceModP mp{p, residue(s.t.a, p), residue(s.t.b, p), residue(s.t.c, p),
                 residue(s.d, p), false};
  ResidueClass r{p, mp.a, mp.b, mp.c, mp.d};
  CountRecord rec;
  rec.p = p;
  rec.k = k;
  rec.q = q;
  rec.a = r.a;
  rec.b = r.b;
  rec.c = r.c;
  rec.d = r.d;
  rec.N = N;
  rec.good = r.good() && r.d % p != 0;
  rec.validate();
  return rec;
}

CountCache::CountCache(std::string dir, u64 p) : p_(p) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  path_ = dir + "/counts_p" + std::to_string(p) + ".bin";
  load();
}

namespace {
constexpr char kMagic[4] = {'E', 'N', 'R', 'C'};
constexpr u64 kVersion = 1;
}  // namespace

void CountCache::load() {
  std::FILE *f = std::fopen(path_.c_str(), "rb");
  if (!f) return;
  char magic[4];
  u64 ver = 0, p = 0;
  if (std::fread(magic, 1, 4, f) == 4 && std::memcmp(magic, kMagic, 4) == 0 &&
      std::fread(&ver, 8, 1, f) == 1 && ver == kVersion &&
      std::fread(&p, 8, 1, f) == 1 && p == p_) {
    for (;;) {
      u64 rec[6];
      if (std::fread(rec, 8, 6, f) != 6) break;
      mem_.push_back({{rec[0], rec[1], rec[2], rec[3], rec[4]}, rec[5]});
    }
  }
  std::fclose(f);
}

std::optional<u64> CountCache::lookup(const ResidueClass &r, unsigned k) const {
  std::array<u64, 5> key{r.a, r.b, r.c, r.d, u64(k)};
  for (auto &[kk, n] : mem_)
    if (kk == key) {
      ++hits_;
      return n;
    }
  ++misses_;
  return std::nullopt;
}

void CountCache::store(const ResidueClass &r, unsigned k, u64 N) {
  std::array<u64, 5> key{r.a, r.b, r.c, r.d, u64(k)};
  for (auto &[kk, n] : mem_)
    if (kk == key) return;
  mem_.push_back({key, N});
  if (path_.empty()) return;
  bool fresh = !std::filesystem::exists(path_) || std::filesystem::file_size(path_) == 0;
  std::FILE *f = std::fopen(path_.c_str(), "ab");
  ENR_CHECK(f, "cache file open failed");
  if (fresh) {
    std::fwrite(kMagic, 1, 4, f);
    std::fwrite(&kVersion, 8, 1, f);
    std::fwrite(&p_, 8, 1, f);
  }
  u64 rec[6] = {key[0], key[1], key[2], key[3], key[4], N};
  std::fwrite(rec, 8, 6, f);
  std::fclose(f);
}

std::array<u64, 4> counts_for_weil(const Triplet &t, u64 p,
                                   const std::string &cache_dir, int threads) {
  t.require_valid();
  ENR_CHECK(p > 2 && p != 5 && is_prime(p), "counting prime must be odd, != 5");
  TwistedSurface s = family(t);
  SurfaceModP m = reduce_mod_p(s, p);
  ENR_CHECK(m.good, "prime of bad reduction rejected");
  ResidueClass r{p, m.a, m.b, m.c, m.d};
  CountCache cache(cache_dir, p);
  std::array<u64, 4> out{};
  for (unsigned i = 1; i <= 4; ++i) {
    if (auto hit = cache.lookup(r, i)) {
      out[i - 1] = *hit;
      // revalidate cached values: corrupt caches must not pass silently
      CountRecord rec{p, i, 1, r.a, r.b, r.c, r.d, *hit, true};
      rec.q = 1;
      for (unsigned j = 0; j < i; ++j) rec.q *= p;
      rec.validate();
    } else {
      CountRecord rec = count_fibered_class(r, i, threads);
      out[i - 1] = rec.N;
      cache.store(r, i, rec.N);
    }
  }
  return out;
}

}  // namespace enr
