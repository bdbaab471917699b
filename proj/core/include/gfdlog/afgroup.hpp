#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gfdlog/bigint.hpp"
#include "gfdlog/errors.hpp"
#include "gfdlog/oracle.hpp"

// The countable abelian group
//   A_f = < a_n, b_n | all commute, a_n^f(n) = b_n >,
// which is free abelian on {a_n} with b_n = a_n^f(n).

namespace gfdlog {

enum class Family { A, B };

struct ATerm {
  Family family = Family::A;
  std::uint64_t index = 0;
  BigInt exponent;

  friend bool operator==(const ATerm&, const ATerm&) = default;
};

/// Arbitrary word over {a_n^±1, b_n^±1}.
struct AWord {
  std::vector<ATerm> terms;

  friend bool operator==(const AWord&, const AWord&) = default;
};

/// Terms sorted A before B, then by ascending index; one term per
/// (family, index); nonzero exponents; no cancelling a_n^k b_n^l pair.
struct ReducedAWord {
  std::vector<ATerm> terms;

  bool empty() const { return terms.empty(); }
  AWord word() const { return AWord{terms}; }

  friend bool operator==(const ReducedAWord&, const ReducedAWord&) = default;
};

struct DlpResult {
  enum class Kind { Unique, NoSolution, AllIntegers };

  Kind kind = Kind::NoSolution;
  BigInt x;                // meaningful for Unique only
  std::string diagnostic;  // optional note on why NoSolution was returned

  static DlpResult unique(BigInt value) { return {Kind::Unique, std::move(value), {}}; }
  static DlpResult none(std::string why = {}) { return {Kind::NoSolution, 0, std::move(why)}; }
  static DlpResult all_integers() { return {Kind::AllIntegers, 0, {}}; }

  bool is_unique() const { return kind == Kind::Unique; }
};

/// Sum of log2(max(1, |n*k|)) over all terms.
double length_A(const AWord& w);

/// Collects exponents and strips pairs a_n^k b_n^l with k = -l*f(n), using
/// only oracle.verify().
ReducedAWord reduce(const AWord& w, FunctionOracle& oracle);

/// True iff w is the identity of A_f. Verification only.
bool wp_A(const AWord& w, FunctionOracle& oracle);

/// Solves u^x = v in A_f. Requires f(n) for every index in the support of u.
DlpResult dlp_A(const AWord& u, const AWord& v, FunctionOracle& oracle);

/// Grammar: whitespace separated `a<index>`, `b<index>`, optionally `^<exp>`.
AWord parse_aword(std::string_view text);

/// Same grammar; the empty word prints as `1`.
std::string format_aword(const AWord& w);
std::string format_aword(const ReducedAWord& w);

}  // namespace gfdlog
