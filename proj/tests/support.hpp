#pragma once

#include <cstdint>
#include <map>
#include <cstddef>
#include <random>
#include <vector>

#include "gfdlog/afgroup.hpp"
#include "gfdlog/gfgroup.hpp"

namespace gfdlog::testing {

/// Evaluations a test provokes inside a VerifyOnlyScope on purpose; any other
/// violation fails the test binary.
inline std::uint64_t expected_violations = 0;

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline std::int64_t nonzero(std::mt19937_64& rng, std::int64_t bound) {
  std::int64_t v = 0;
  while (v == 0) v = uniform(rng, -bound, bound);
  return v;
}

/// Alternating word with up to `max_letters` letters and exponents in [-max_exp, max_exp].
inline GWord random_gword(std::mt19937_64& rng, int max_letters, std::int64_t max_exp) {
  std::vector<Letter> letters;
  const int len = static_cast<int>(uniform(rng, 0, max_letters));
  Gen gen = uniform(rng, 0, 1) == 0 ? Gen::F : Gen::s;
  for (int i = 0; i < len; ++i) {
    letters.push_back({gen, nonzero(rng, max_exp)});
    gen = gen == Gen::F ? Gen::s : Gen::F;
  }
  return normalize_letters(std::move(letters));
}

inline AWord random_aword(std::mt19937_64& rng, int max_terms, std::uint64_t max_index, std::int64_t max_exp,
                          std::uint64_t min_index = 0) {
  AWord w;
  const int len = static_cast<int>(uniform(rng, 0, max_terms));
  for (int i = 0; i < len; ++i) {
    const Family fam = uniform(rng, 0, 1) == 0 ? Family::A : Family::B;
    std::uint64_t idx = static_cast<std::uint64_t>(uniform(rng, static_cast<std::int64_t>(min_index),
                                                           static_cast<std::int64_t>(max_index)));
    if (fam == Family::B && idx == 0) idx = 1;
    w.terms.push_back({fam, idx, BigInt(static_cast<long>(uniform(rng, -max_exp, max_exp)))});
  }
  return w;
}

/// (F^{s^alpha})^k = s^alpha F^k s^-alpha as a word.
inline GWord alpha_word(std::int64_t alpha, const BigInt& k) {
  return normalize_letters({{Gen::s, BigInt(static_cast<long>(alpha))}, {Gen::F, k}, {Gen::s, BigInt(static_cast<long>(-alpha))}});
}

inline GWord commutator_of(const GWord& x, const GWord& y) {
  return concat(concat(x, y), concat(inverse_word(x), inverse_word(y)));
}

/// w^{s^c} = s^c w s^-c.
inline GWord conjugate_by_s(const GWord& w, std::int64_t c) {
  const GWord sc = normalize_letters({{Gen::s, BigInt(static_cast<long>(c))}});
  return concat(concat(sc, w), inverse_word(sc));
}

/// Psi(a_n^f(n) b_n^-1), trivial in G_f.
inline GWord relator_word(std::uint64_t n, FunctionOracle& ref) {
  return embed_aword(AWord{{{Family::A, n, ref.eval(n)}, {Family::B, n, BigInt(-1)}}});
}

/// A word equal to w in G_f but spelled differently: relator instances,
/// free cancellations, commutator shuffles w = uv -> [u,v] v u, and
/// trivial double commutators are spliced in at random cut points.
inline GWord equivalent_variant(std::mt19937_64& rng, const GWord& w, FunctionOracle& ref, int rounds) {
  GWord cur = w;
  for (int r = 0; r < rounds; ++r) {
    const auto cut = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(cur.letters.size())));
    const GWord u{std::vector<Letter>(cur.letters.begin(), cur.letters.begin() + static_cast<std::ptrdiff_t>(cut))};
    const GWord v{std::vector<Letter>(cur.letters.begin() + static_cast<std::ptrdiff_t>(cut), cur.letters.end())};
    GWord mid;
    switch (uniform(rng, 0, 3)) {
      case 0:
        mid = conjugate_by_s(relator_word(static_cast<std::uint64_t>(uniform(rng, 1, 3)), ref), uniform(rng, -3, 3));
        break;
      case 1: {
        const GWord x = random_gword(rng, 4, 3);
        mid = concat(x, inverse_word(x));
        break;
      }
      case 2:
        cur = concat(commutator_of(u, v), concat(v, u));
        continue;
      default: {
        const GWord x = alpha_word(uniform(rng, -3, 3), nonzero(rng, 2));
        const GWord y = alpha_word(uniform(rng, -3, 3), nonzero(rng, 2));
        const GWord z = alpha_word(uniform(rng, -3, 3), nonzero(rng, 2));
        mid = commutator_of(commutator_of(x, y), z);
        break;
      }
    }
    cur = concat(concat(u, mid), v);
  }
  return cur;
}

/// Brute-force discrete logarithm table: table[x] = m in [1, p-1] with g^m = x mod p.
inline std::map<std::uint64_t, std::uint64_t> dlog_table(std::uint64_t p, std::uint64_t g) {
  std::map<std::uint64_t, std::uint64_t> table;
  std::uint64_t cur = 1;
  for (std::uint64_t m = 1; m < p; ++m) {
    cur = cur * g % p;
    table.emplace(cur, m);
  }
  return table;
}

/// Multiplicative order of g mod p by exhaustion.
inline std::uint64_t order_by_exhaustion(std::uint64_t g, std::uint64_t p) {
  std::uint64_t cur = g % p;
  std::uint64_t k = 1;
  while (cur != 1) {
    cur = cur * g % p;
    ++k;
  }
  return k;
}

}  // namespace gfdlog::testing
