#pragma once

#include <iosfwd>

#include "enr/brauer.hpp"
#include "enr/weil.hpp"

namespace enr {

enum class ConditionStatus { pass, fail, flagged, inconclusive };
const char *to_string(ConditionStatus s);

// Joint report on the eight coefficient conditions.
//   (1),(2)  quadratic nonresidue constraints on the odd prime factors of the
//            two coupling constants 5a+5b+c and 20a+5b+2c
//   (3)      anisotropy of the diagonal form over Q_3
//   (4)      -bc a nonresidue mod 5
//   (5),(6)  fixed residues mod 7 and mod 11
//   (7)      solvability of the untwisted cover at every place
//   (8)      splitting field as large as possible
// For a valid triplet, (1)-(7) always come out pass, fail or flagged; flagged
// means the condition holds but a factor of 2 or 5 had to be set aside, with
// the caveat recorded in the certificate.  (8) rests on sampled evidence and
// may stay inconclusive.
struct ConditionReport {
  Triplet t{0, 0, 0};
  bool valid = false;
  std::string validity;  // vanishing smoothness factor or 2a = b, when invalid
  std::array<ConditionStatus, 8> status{};
  std::array<std::string, 8> certificate{};
  std::array<double, 8> seconds{};
  double total_seconds = 0;
  u64 cache_hits = 0, cache_misses = 0;

  bool holds(int i) const;  // condition i in 1..8 came out pass or flagged
  bool all_hold() const;    // (1)-(7) hold and (8) is pass
};

// One condition in isolation; check_conditions is the fold of these, so the
// evaluation order cannot influence any status.
std::pair<ConditionStatus, std::string> condition_status(const Triplet &t, int i, int effort = 1);

ConditionReport check_conditions(const Triplet &t, int effort = 1);

// Verdict of one residue class of coefficients at one good prime: the
// multiplicity-weighted count of Frobenius eigenvalues of modulus p (the
// upper bound for the rank of the reduction) and the square class of the
// leading term at T = p.  Degenerate classes, where counting or the lattice
// action is undefined, carry the refusal reason instead.
struct ClassVerdict {
  u64 p = 0;
  u64 a = 0, b = 0, c = 0;
  bool degenerate = false;
  std::string reason;
  int bound = 0;
  int mult = 0;              // exact multiplicity of T = p in the candidate
  long long disc_class = 0;  // squarefree
  bool sharp() const { return !degenerate && bound == 16; }
};

// cache may be null: every count is then recomputed from scratch
ClassVerdict class_verdict(const ResidueClass &r, CountCache *cache, int threads = 1);

// All 7^3 + 11^3 coefficient classes with their verdicts.  A class mod 77 is
// a member when its mod-7 half and mod-11 half both have bound 16 and their
// square classes differ; members admit the rank bound 15 and hence survive
// the weakened residue conditions (5),(6).
struct CongruenceClassTable {
  std::vector<ClassVerdict> mod7;   // 343 entries, lexicographic in (a,b,c)
  std::vector<ClassVerdict> mod11;  // 1331 entries
  u64 cache_hits = 0, cache_misses = 0;
  double seconds = 0;

  const ClassVerdict &at(u64 p, u64 a, u64 b, u64 c) const;
  u64 degenerate_count(u64 p) const;
  u64 combined_count() const;  // member classes mod 77
  bool member(const Triplet &t) const;
};

CongruenceClassTable weak56_scan(const std::string &cache_dir, int threads = 1,
                                 std::ostream *log = nullptr);

// JSON persistence with a schema version; load validates shape and sizes.
void save_table(const CongruenceClassTable &table, const std::string &path);
CongruenceClassTable load_table(const std::string &path);

struct SearchStats {
  u64 candidates = 0;  // a,b,c >= 1 with a+b+c <= bound
  u64 valid = 0;       // smooth and 2a != b
  u64 weak56 = 0;      // class mod 77 in the table
  u64 congruence = 0;  // conditions (1)-(4) hold
  u64 adelic = 0;      // condition (7) holds: the hits
};

// Every triplet with coefficient sum at most bound that is valid, lies in a
// member class mod 77, and passes (1)-(4) and (7).  Filters run cheapest
// first; the local solvability check dominates and comes last.
std::vector<Triplet> search_triplets(int bound, const CongruenceClassTable &table,
                                     int effort = 1, SearchStats *stats = nullptr,
                                     std::ostream *log = nullptr);

struct ManifestItem {
  std::string id;
  std::string claim;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Claim-by-claim verification run for the reference coefficients (12,111,13).
struct Manifest {
  std::vector<ManifestItem> items;
  double total_seconds = 0;
  u64 cache_hits = 0, cache_misses = 0;
  bool all_pass() const;
  const ManifestItem *find(const std::string &id) const;
};

// cache_dir feeds the point counts; a corrupted cached count surfaces as a
// failing item, never as a crash.  When table_path names a persisted class
// table, its size and the reference-class membership are verified too.
Manifest verification_manifest(const std::string &cache_dir = "", int threads = 1,
                               const std::string &table_path = "");

}  // namespace enr
