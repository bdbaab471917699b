#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gfdlog/afgroup.hpp"
#include "gfdlog/bigint.hpp"
#include "gfdlog/errors.hpp"
#include "gfdlog/oracle.hpp"

// The two-generated group G_f = <F, s> inside A_f wr <z> wr <s>.
// Conventions: g^h = h g h^-1 and [g, h] = g h g^-1 h^-1.

namespace gfdlog {

enum class Gen { F, s };

struct Letter {
  Gen gen = Gen::F;
  BigInt exponent;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Word over {F^±1, s^±1}; no zero exponents, no adjacent equal generators.
struct GWord {
  std::vector<Letter> letters;

  friend bool operator==(const GWord&, const GWord&) = default;
};

/// (F^{s^alpha})^k
struct AlphaTerm {
  std::int64_t alpha = 0;
  BigInt k;

  friend bool operator==(const AlphaTerm&, const AlphaTerm&) = default;
};

/// ([F, F^{s^beta}]^{s^gamma})^l, beta > 0.
struct CommTerm {
  std::int64_t beta = 1;
  std::int64_t gamma = 0;
  BigInt l;

  friend bool operator==(const CommTerm&, const CommTerm&) = default;
};

/// prod (F^{s^alpha_i})^k_i * prod ([F, F^{s^beta_j}]^{s^gamma_j})^l_j * s^y
/// with alphas strictly decreasing and (beta, gamma) strictly decreasing
/// lexicographically. alpha_part and y are invariants of the element;
/// comm_part is determined only up to the relations of A_f, so element
/// equality must go through equals().
struct CanonicalForm {
  std::vector<AlphaTerm> alpha_part;
  std::vector<CommTerm> comm_part;
  BigInt y;

  bool is_identity_form() const { return alpha_part.empty() && comm_part.empty() && y == 0; }
  std::size_t term_count() const { return alpha_part.size() + comm_part.size(); }

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

/// Uncollected decomposition prod (F^{s^alpha_i})^k_i * s^y in word order.
struct ConjugateForm {
  std::vector<AlphaTerm> factors;
  BigInt y;

  friend bool operator==(const ConjugateForm&, const ConjugateForm&) = default;
};

/// Thrown by power() when an intermediate result outgrows the term budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::size_t budget, std::size_t observed_terms);

  std::size_t budget() const { return budget_; }
  /// Term count of the intermediate that broke the budget.
  std::size_t observed_terms() const { return observed_terms_; }

 private:
  std::size_t budget_;
  std::size_t observed_terms_;
};

// --- words -----------------------------------------------------------------

/// Grammar: whitespace separated `F`, `s`, `F^<exp>`, `s^<exp>`.
GWord parse_gword(std::string_view text);

/// Merges adjacent equal generators and drops zero exponents.
GWord normalize_letters(std::vector<Letter> letters);

GWord concat(const GWord& lhs, const GWord& rhs);
GWord inverse_word(const GWord& w);
/// w^n as a word (n >= 0 repeats w, n < 0 repeats its inverse).
GWord repeat_word(const GWord& w, std::int64_t n);

/// Same grammar as parse_gword; exponent 1 is omitted. Empty prints as "".
std::string format_gword(const GWord& w);

/// log2(|k_0|+1) + log2(|l_{t+1}|+1) + sum log2(|k_i l_i|+1) over the
/// decomposition F^k_0 s^l_1 F^k_1 ... s^l_t F^k_t s^l_{t+1}.
double length_G(const GWord& w);

// --- canonical forms -------------------------------------------------------

ConjugateForm to_conjugate_form(const GWord& w);

/// Central correction created by rewriting left*right -> [left,right]*right*left.
/// Requires left.alpha != right.alpha.
std::vector<CommTerm> swap_commutator(const AlphaTerm& left, const AlphaTerm& right);

CanonicalForm canonicalize(const ConjugateForm& parts);
CanonicalForm canonical_form(const GWord& w);
CanonicalForm identity_form();

CanonicalForm multiply(const CanonicalForm& g1, const CanonicalForm& g2);
CanonicalForm invert(const CanonicalForm& g);

/// g^x by square-and-multiply. With a budget, throws BudgetExceeded as soon
/// as an intermediate form has more than `budget` terms.
CanonicalForm power(const CanonicalForm& g, const BigInt& x, std::optional<std::size_t> budget = std::nullopt);

/// A word spelling out the canonical form; canonical_form(to_gword(g)) == g.
GWord to_gword(const CanonicalForm& g);

/// `A(alpha)^k ... K(beta,gamma)^l ... s^y`, or `1` for the identity form.
std::string format_canonical(const CanonicalForm& g);

BigInt pi_s(const CanonicalForm& g);
BigInt deg_alpha(const CanonicalForm& g, std::int64_t alpha);

// --- the embedding of A_f --------------------------------------------------

/// [F, F^{s^beta}] = F s^beta F s^-beta F^-1 s^beta F^-1 s^-beta.
GWord commutator_word(std::int64_t beta);
/// [F^n, F^{s^i}] expanded.
GWord commutator_power_word(const BigInt& n, std::int64_t i);

/// Psi(a_i) = [F, F^{s^{2i+1}}].
GWord embed_a(std::uint64_t i);
/// Psi(b_i) = [F, F^{s^{2i}}]; i >= 1.
GWord embed_b(std::uint64_t i);
/// Image of an arbitrary A-word under Psi.
GWord embed_aword(const AWord& w);

/// Commutator terms sharing one gamma, mapped to A_f: beta odd -> a_{(beta-1)/2},
/// beta even -> b_{beta/2}.
AWord comm_to_aword(const std::vector<CommTerm>& block);

// --- algorithms ------------------------------------------------------------

bool wp_G(const GWord& w, FunctionOracle& oracle);
bool is_trivial(const CanonicalForm& g, FunctionOracle& oracle);
bool equals(const CanonicalForm& g, const CanonicalForm& h, FunctionOracle& oracle);

/// Budget multiplier for verifying candidate logarithms.
inline constexpr std::size_t kPowerBudgetFactor = 4;

/// Solves g^x = h.
DlpResult dlp_G(const CanonicalForm& g, const CanonicalForm& h, FunctionOracle& oracle);

}  // namespace gfdlog
