#pragma once

// Brute-force oracle for the holomorph-style group G = Z/d ⋊ (Z/d)^× with
// operation (a1, b1)·(a2, b2) = (a1 + a2·b1, b1·b2): element arithmetic,
// closed-form powers, a complete subgroup census by two-generator closure,
// and the translation of the census into a lattice of labeled subfields.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "errors.hpp"

namespace northcott {

struct GroupElem {
  unsigned long a = 0;  // residue mod d
  unsigned long b = 1;  // unit mod d

  friend bool operator==(const GroupElem& x, const GroupElem& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator<(const GroupElem& x, const GroupElem& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  }
};

namespace groupdetail {

inline unsigned long gcd_ul(unsigned long x, unsigned long y) {
  while (y != 0) {
    unsigned long t = x % y;
    x = y;
    y = t;
  }
  return x;
}

inline void validate_elem(unsigned long d, const GroupElem& g) {
  if (d < 2) fail(ErrorCode::InvalidInput, "modulus must be at least 2");
  if (d > (1ul << 31)) fail(ErrorCode::InvalidInput, "modulus too large");
  if (g.a >= d) fail(ErrorCode::InvalidInput, "first coordinate out of range");
  if (g.b == 0 || g.b >= d || gcd_ul(g.b, d) != 1) {
    fail(ErrorCode::InvalidInput, "second coordinate must be a unit");
  }
}

inline unsigned long pow_mod(unsigned long base, unsigned long e, unsigned long d) {
  unsigned long long acc = 1, b = base % d;
  while (e != 0) {
    if (e & 1ul) acc = (acc * b) % d;
    b = (b * b) % d;
    e >>= 1;
  }
  return static_cast<unsigned long>(acc);
}

// Geometric sum 1 + b + ... + b^{s-1} mod d: the closed form
// (b^s - 1)/(b - 1) evaluated without division so any modulus works.
inline unsigned long geometric_sum_mod(unsigned long b, unsigned long s, unsigned long d) {
  if (s == 0) return 0;
  if (s == 1) return 1 % d;
  unsigned long half = geometric_sum_mod(b, s / 2, d);
  unsigned long long bh = pow_mod(b, s / 2, d);
  unsigned long long acc = (half + bh * half) % d;  // S(2k) = S(k)(1 + b^k)
  if (s & 1ul) acc = (acc + pow_mod(b, s - 1, d)) % d;
  return static_cast<unsigned long>(acc);
}

}  // namespace groupdetail

inline GroupElem multiply(unsigned long d, const GroupElem& g1, const GroupElem& g2) {
  groupdetail::validate_elem(d, g1);
  groupdetail::validate_elem(d, g2);
  unsigned long long a = (g1.a + static_cast<unsigned long long>(g2.a) * g1.b) % d;
  unsigned long long b = (static_cast<unsigned long long>(g1.b) * g2.b) % d;
  return GroupElem{static_cast<unsigned long>(a), static_cast<unsigned long>(b)};
}

inline GroupElem power(unsigned long d, const GroupElem& g, unsigned long s) {
  groupdetail::validate_elem(d, g);
  if (s == 0) fail(ErrorCode::InvalidInput, "exponent must be positive");
  if (g.b == 1) {
    unsigned long long a = (static_cast<unsigned long long>(g.a % d) * (s % d)) % d;
    return GroupElem{static_cast<unsigned long>(a), 1};
  }
  unsigned long long sum = groupdetail::geometric_sum_mod(g.b, s, d);
  unsigned long long a = (static_cast<unsigned long long>(g.a) * sum) % d;
  return GroupElem{static_cast<unsigned long>(a), groupdetail::pow_mod(g.b, s, d)};
}

inline GroupElem inverse(unsigned long d, const GroupElem& g) {
  groupdetail::validate_elem(d, g);
  // (a, b)^{-1} = (-a b^{-1}, b^{-1}); find b^{-1} by scanning (d is small).
  for (unsigned long y = 1; y < d; ++y) {
    if ((static_cast<unsigned long long>(g.b) * y) % d == 1) {
      unsigned long long x = (static_cast<unsigned long long>(d - g.a % d) * y) % d;
      return GroupElem{static_cast<unsigned long>(x), y};
    }
  }
  fail(ErrorCode::InvalidInput, "second coordinate must be a unit");
}

// ---------------------------------------------------------------------------
// Subgroup census

struct SubgroupCensus {
  unsigned long d = 0;
  std::vector<std::vector<GroupElem>> subgroups;  // each sorted; sorted by (size, members)
  std::map<unsigned long, unsigned long> counts;  // order -> number of subgroups
  bool unique_order_d = false;        // exactly one subgroup of order d
  bool d_many_order_dm1 = false;      // exactly d subgroups of order d-1
  bool divisible_contains_kernel = false;  // d | |H| implies H contains the order-d subgroup
  bool coprime_inside_stabilizer = false;  // gcd(|H|, d) = 1 implies H inside some order-(d-1) subgroup
  bool kernel_is_translations = false;     // the order-d subgroup is exactly {(a, 1)}
};

namespace groupdetail {

inline bool is_small_odd_prime(unsigned long d) {
  if (d < 3 || d % 2 == 0) return false;
  for (unsigned long t = 3; t * t <= d; t += 2) {
    if (d % t == 0) return false;
  }
  return true;
}

// Membership bitset for one subgroup; 1024 bits covers |G| <= 930.
struct SubgroupBits {
  std::array<std::uint64_t, 16> words{};
  unsigned long count = 0;

  void reset() {
    words.fill(0);
    count = 0;
  }
  bool test_and_set(std::uint16_t x) {
    std::uint64_t mask = 1ull << (x & 63);
    if (words[x >> 6] & mask) return true;
    words[x >> 6] |= mask;
    ++count;
    return false;
  }
  std::string key() const {
    return std::string(reinterpret_cast<const char*>(words.data()), sizeof(words));
  }
  std::vector<std::uint16_t> sorted_members() const {
    std::vector<std::uint16_t> out;
    out.reserve(count);
    for (unsigned w = 0; w < words.size(); ++w) {
      std::uint64_t bits = words[w];
      while (bits) {
        unsigned bit = static_cast<unsigned>(__builtin_ctzll(bits));
        out.push_back(static_cast<std::uint16_t>(64 * w + bit));
        bits &= bits - 1;
      }
    }
    return out;
  }
};

struct GroupTable {
  unsigned long d = 0;
  unsigned long n = 0;                 // |G| = d(d-1)
  std::vector<GroupElem> elems;        // index -> element
  std::vector<std::uint16_t> mult;     // n*n multiplication table
  std::uint16_t identity = 0;

  explicit GroupTable(unsigned long d_in) : d(d_in) {
    std::vector<std::uint16_t> idx_of(d * d, 0);
    for (unsigned long a = 0; a < d; ++a) {
      for (unsigned long b = 1; b < d; ++b) {
        idx_of[a * d + b] = static_cast<std::uint16_t>(elems.size());
        elems.push_back(GroupElem{a, b});
      }
    }
    n = elems.size();
    mult.resize(n * n);
    for (unsigned long i = 0; i < n; ++i) {
      for (unsigned long j = 0; j < n; ++j) {
        const GroupElem& x = elems[i];
        const GroupElem& y = elems[j];
        unsigned long a = (x.a + y.a * x.b) % d;
        unsigned long b = (x.b * y.b) % d;
        mult[i * n + j] = idx_of[a * d + b];
      }
    }
    identity = idx_of[0 * d + 1];
  }

  // Fills `cl` with the subgroup generated by `gens`. In a finite group the
  // set reachable from the identity by right-multiplication with generators
  // is already closed under inverses. Returns true (with `cl` left partial)
  // once more than half the group is reached: the only subgroup that large
  // is G itself.
  bool close(const std::vector<std::uint16_t>& gens, SubgroupBits& cl) const {
    thread_local std::vector<std::uint16_t> todo;
    todo.clear();
    cl.reset();
    cl.test_and_set(identity);
    todo.push_back(identity);
    while (!todo.empty()) {
      std::uint16_t x = todo.back();
      todo.pop_back();
      const std::uint16_t* row = mult.data() + static_cast<unsigned long>(x) * n;
      for (std::uint16_t g : gens) {
        std::uint16_t y = row[g];
        if (!cl.test_and_set(y)) {
          if (2 * cl.count > n) return true;
          todo.push_back(y);
        }
      }
    }
    return false;
  }

  std::vector<std::uint16_t> closure(const std::vector<std::uint16_t>& gens) const {
    groupdetail::SubgroupBits cl;
    if (close(gens, cl)) {
      std::vector<std::uint16_t> members(n);
      std::iota(members.begin(), members.end(), 0);
      return members;
    }
    return cl.sorted_members();
  }
};

inline unsigned long census_threads() {
  if (const char* env = std::getenv("NORTHCOTT_LAB_THREADS")) {
    long v = std::atol(env);
    if (v >= 1) return static_cast<unsigned long>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace groupdetail

inline SubgroupCensus subgroup_census(unsigned long d) {
  if (!groupdetail::is_small_odd_prime(d) || d > 31) {
    fail(ErrorCode::UnsupportedD, "census supports odd primes up to 31");
  }
  groupdetail::GroupTable table(d);
  const unsigned long n = table.n;

  using Found = std::unordered_map<std::string, std::vector<std::uint16_t>>;
  Found found;
  bool saw_full = false;
  {
    groupdetail::SubgroupBits cl;
    std::vector<std::uint16_t> gens;
    auto record = [&](Found& dst, bool& full) {
      if (table.close(gens, cl)) {
        full = true;
        return;
      }
      std::string key = cl.key();
      if (dst.find(key) == dst.end()) dst.emplace(std::move(key), cl.sorted_members());
    };
    record(found, saw_full);  // trivial subgroup from the empty generator set
    gens.resize(1);
    for (unsigned long i = 0; i < n; ++i) {
      gens[0] = static_cast<std::uint16_t>(i);
      record(found, saw_full);
    }
  }

  unsigned long threads = groupdetail::census_threads();
  if (threads > n) threads = n;
  std::mutex merge_mutex;
  std::vector<std::thread> pool;
  for (unsigned long t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      Found local;
      bool local_full = false;
      groupdetail::SubgroupBits cl;
      std::vector<std::uint16_t> gens(2);
      for (unsigned long i = t; i < n; i += threads) {
        gens[0] = static_cast<std::uint16_t>(i);
        for (unsigned long j = i + 1; j < n; ++j) {
          gens[1] = static_cast<std::uint16_t>(j);
          if (table.close(gens, cl)) {
            local_full = true;
            continue;
          }
          std::string key = cl.key();
          if (local.find(key) == local.end()) {
            local.emplace(std::move(key), cl.sorted_members());
          }
        }
      }
      std::lock_guard<std::mutex> lock(merge_mutex);
      saw_full = saw_full || local_full;
      for (auto& entry : local) {
        if (found.find(entry.first) == found.end()) found.insert(std::move(entry));
      }
    });
  }
  for (auto& th : pool) th.join();

  SubgroupCensus out;
  out.d = d;
  if (saw_full) {
    std::vector<GroupElem> whole = table.elems;
    std::sort(whole.begin(), whole.end());
    out.subgroups.push_back(std::move(whole));
  }
  for (const auto& [key, members] : found) {
    (void)key;
    std::vector<GroupElem> sub;
    sub.reserve(members.size());
    for (std::uint16_t idx : members) sub.push_back(table.elems[idx]);
    std::sort(sub.begin(), sub.end());
    out.subgroups.push_back(std::move(sub));
  }
  std::sort(out.subgroups.begin(), out.subgroups.end(),
            [](const std::vector<GroupElem>& x, const std::vector<GroupElem>& y) {
              if (x.size() != y.size()) return x.size() < y.size();
              return x < y;
            });
  for (const auto& sub : out.subgroups) ++out.counts[sub.size()];

  auto contains_all = [](const std::vector<GroupElem>& big, const std::vector<GroupElem>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
  };
  const std::vector<GroupElem>* kernel = nullptr;
  std::vector<const std::vector<GroupElem>*> stabilizers;
  for (const auto& sub : out.subgroups) {
    if (sub.size() == d) kernel = &sub;
    if (sub.size() == d - 1) stabilizers.push_back(&sub);
  }
  out.unique_order_d = out.counts.count(d) == 1 && out.counts.at(d) == 1;
  out.d_many_order_dm1 = out.counts.count(d - 1) == 1 && out.counts.at(d - 1) == d;
  if (kernel != nullptr) {
    out.kernel_is_translations = true;
    for (const GroupElem& g : *kernel) {
      if (g.b != 1) out.kernel_is_translations = false;
    }
    out.divisible_contains_kernel = true;
    out.coprime_inside_stabilizer = true;
    for (const auto& sub : out.subgroups) {
      if (sub.size() % d == 0) {
        if (!contains_all(sub, *kernel)) out.divisible_contains_kernel = false;
      } else {
        bool inside = false;
        for (const auto* stab : stabilizers) {
          if (contains_all(*stab, sub)) {
            inside = true;
            break;
          }
        }
        if (!inside) out.coprime_inside_stabilizer = false;
      }
    }
  }
  return out;
}

// Closure over every subset of G, for cross-checking that two generators
// already reach every subgroup. Exponential in |G|; only sensible for tiny d.
inline std::set<std::vector<GroupElem>> all_subset_closures(unsigned long d) {
  if (!groupdetail::is_small_odd_prime(d) || d > 5) {
    fail(ErrorCode::UnsupportedD, "subset sweep supports d = 3 and d = 5 only");
  }
  groupdetail::GroupTable table(d);
  const unsigned long n = table.n;
  std::set<std::vector<std::uint16_t>> found;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    std::vector<std::uint16_t> gens;
    for (unsigned long i = 0; i < n; ++i) {
      if (mask & (1ul << i)) gens.push_back(static_cast<std::uint16_t>(i));
    }
    found.insert(table.closure(gens));
  }
  std::set<std::vector<GroupElem>> out;
  for (const auto& members : found) {
    std::vector<GroupElem> sub;
    for (std::uint16_t idx : members) sub.push_back(table.elems[idx]);
    std::sort(sub.begin(), sub.end());
    out.insert(std::move(sub));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Field-lattice translation

struct FieldLatticeReport {
  unsigned long d = 0;
  // Degree-d fields fixed by the order-(d-1) subgroups, sorted by the power
  // of the root of unity in the label.
  std::vector<std::string> root_fields;
  std::string cyclotomic_field;  // the unique degree-(d-1) field
  bool unique_cyclotomic = false;
  // Lattice dichotomy read through the correspondence: a field of degree
  // divisible by d contains one of the labeled root fields; a field of
  // degree coprime to d lies inside the cyclotomic field.
  bool divisible_degree_contains_root_field = false;
  bool coprime_degree_inside_cyclotomic = false;
};

inline FieldLatticeReport field_lattice_report(unsigned long d) {
  SubgroupCensus census = subgroup_census(d);
  FieldLatticeReport out;
  out.d = d;
  out.cyclotomic_field = "K(zeta_" + std::to_string(d) + ")";
  out.unique_cyclotomic = census.unique_order_d;
  out.divisible_degree_contains_root_field = census.coprime_inside_stabilizer;
  out.coprime_degree_inside_cyclotomic = census.divisible_contains_kernel;

  // An order-(d-1) subgroup fixes zeta^k * alpha exactly when every member
  // satisfies a = k(1 - b); recover k from any member with b != 1.
  std::vector<long> ks;
  for (const auto& sub : census.subgroups) {
    if (sub.size() != d - 1) continue;
    long k = -1;
    for (const GroupElem& g : sub) {
      if (g.b == 1) continue;
      for (unsigned long cand = 0; cand < d; ++cand) {
        if ((cand * (1 + d - g.b)) % d == g.a % d) {
          k = static_cast<long>(cand);
          break;
        }
      }
      break;
    }
    if (k < 0) fail(ErrorCode::InvalidInput, "stabilizer without a label");
    for (const GroupElem& g : sub) {
      if ((static_cast<unsigned long>(k) * (1 + d - g.b)) % d != g.a % d) {
        fail(ErrorCode::InvalidInput, "stabilizer label inconsistent");
      }
    }
    ks.push_back(k);
  }
  std::sort(ks.begin(), ks.end());
  for (long k : ks) {
    if (k == 0) {
      out.root_fields.push_back("K(alpha)");
    } else if (k == 1) {
      out.root_fields.push_back("K(zeta*alpha)");
    } else {
      out.root_fields.push_back("K(zeta^" + std::to_string(k) + "*alpha)");
    }
  }
  return out;
}

}  // namespace northcott
