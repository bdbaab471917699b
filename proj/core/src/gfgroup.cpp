#include "gfdlog/gfgroup.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

namespace gfdlog {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("shift exceeds 64-bit range");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("shift exceeds 64-bit range");
  return r;
}

using CommKey = std::pair<std::int64_t, std::int64_t>;  // (beta, gamma)
using CommBag = std::map<CommKey, BigInt, std::greater<>>;

void add_comm(CommBag& bag, const CommTerm& t) {
  if (t.l == 0) return;
  auto [it, inserted] = bag.try_emplace({t.beta, t.gamma}, t.l);
  if (!inserted) {
    it->second += t.l;
    if (it->second == 0) bag.erase(it);
  }
}

// Maintains a sorted alpha product and the central commutator bag while
// factors are appended on the right.
class Collector {
 public:
  void push(AlphaTerm x) {
    if (x.k == 0) return;
    std::size_t pos = alphas_.size();
    // ... t x  ->  [t, x] x t  for every t with a smaller alpha.
    while (pos > 0 && alphas_[pos - 1].alpha < x.alpha) {
      for (const CommTerm& c : swap_commutator(alphas_[pos - 1], x)) add_comm(comms_, c);
      --pos;
    }
    if (pos > 0 && alphas_[pos - 1].alpha == x.alpha) {
      alphas_[pos - 1].k += x.k;
      if (alphas_[pos - 1].k == 0) alphas_.erase(alphas_.begin() + static_cast<std::ptrdiff_t>(pos - 1));
    } else {
      alphas_.insert(alphas_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(x));
    }
  }

  void central(const CommTerm& c) { add_comm(comms_, c); }

  CanonicalForm finish(BigInt y) && {
    CanonicalForm out;
    out.alpha_part = std::move(alphas_);
    out.comm_part.reserve(comms_.size());
    for (auto& [key, l] : comms_) out.comm_part.push_back({key.first, key.second, std::move(l)});
    out.y = std::move(y);
    return out;
  }

 private:
  std::vector<AlphaTerm> alphas_;
  CommBag comms_;
};

void check_budget(const CanonicalForm& g, std::optional<std::size_t> budget) {
  if (budget && g.term_count() > *budget) throw BudgetExceeded(*budget, g.term_count());
}

void append_power(std::vector<Letter>& out, Gen gen, BigInt exponent) {
  if (exponent != 0) out.push_back({gen, std::move(exponent)});
}

std::map<std::int64_t, std::vector<CommTerm>> blocks_by_gamma(const CanonicalForm& g) {
  std::map<std::int64_t, std::vector<CommTerm>> blocks;
  for (const CommTerm& c : g.comm_part) blocks[c.gamma].push_back(c);
  return blocks;
}

}  // namespace

BudgetExceeded::BudgetExceeded(std::size_t budget, std::size_t observed_terms)
    : std::runtime_error("canonical form grew to " + std::to_string(observed_terms) + " terms, budget " +
                         std::to_string(budget)),
      budget_(budget),
      observed_terms_(observed_terms) {}

// --- words -----------------------------------------------------------------

GWord normalize_letters(std::vector<Letter> letters) {
  GWord w;
  for (Letter& l : letters) {
    if (l.exponent == 0) continue;
    if (!w.letters.empty() && w.letters.back().gen == l.gen) {
      w.letters.back().exponent += l.exponent;
      if (w.letters.back().exponent == 0) w.letters.pop_back();
    } else {
      w.letters.push_back(std::move(l));
    }
  }
  return w;
}

GWord parse_gword(std::string_view text) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    std::size_t end = i;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    const std::string_view token = text.substr(start, end - start);
    i = end;

    Letter letter;
    if (token[0] == 'F') {
      letter.gen = Gen::F;
    } else if (token[0] == 's') {
      letter.gen = Gen::s;
    } else {
      throw ParseError("expected generator 'F' or 's'", start);
    }
    letter.exponent = 1;
    if (token.size() > 1) {
      if (token[1] != '^') throw ParseError("expected '^' after generator", start + 1);
      if (!parse_bigint(token.substr(2), letter.exponent)) throw ParseError("bad exponent", start + 2);
    }
    letters.push_back(std::move(letter));
  }
  return normalize_letters(std::move(letters));
}

GWord concat(const GWord& lhs, const GWord& rhs) {
  std::vector<Letter> letters = lhs.letters;
  letters.insert(letters.end(), rhs.letters.begin(), rhs.letters.end());
  return normalize_letters(std::move(letters));
}

GWord inverse_word(const GWord& w) {
  std::vector<Letter> letters;
  letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) letters.push_back({it->gen, -it->exponent});
  return normalize_letters(std::move(letters));
}

GWord repeat_word(const GWord& w, std::int64_t n) {
  const GWord unit = n < 0 ? inverse_word(w) : w;
  std::vector<Letter> letters;
  for (std::int64_t i = 0; i < (n < 0 ? -n : n); ++i) {
    letters.insert(letters.end(), unit.letters.begin(), unit.letters.end());
  }
  return normalize_letters(std::move(letters));
}

std::string format_gword(const GWord& w) {
  std::ostringstream out;
  bool first = true;
  for (const Letter& l : w.letters) {
    if (!first) out << ' ';
    first = false;
    out << (l.gen == Gen::F ? 'F' : 's');
    if (l.exponent != 1) out << '^' << l.exponent.get_str();
  }
  return out.str();
}

double length_G(const GWord& word) {
  const GWord w = normalize_letters(word.letters);
  const auto log_plus_one = [](const BigInt& v) { return log2_abs(BigInt(abs(v) + 1)); };
  double total = 0.0;
  std::size_t i = 0;
  if (!w.letters.empty() && w.letters[0].gen == Gen::F) {
    total += log_plus_one(w.letters[0].exponent);  // k_0
    i = 1;
  }
  while (i < w.letters.size()) {
    const BigInt& l = w.letters[i].exponent;
    if (i + 1 < w.letters.size()) {
      total += log_plus_one(l * w.letters[i + 1].exponent);  // s^l_i F^k_i
      i += 2;
    } else {
      total += log_plus_one(l);  // trailing s^l_{t+1}
      ++i;
    }
  }
  return total;
}

// --- canonical forms -------------------------------------------------------

ConjugateForm to_conjugate_form(const GWord& w) {
  // s^p F^l -> (F^{s^p})^l s^p, applied left to right.
  ConjugateForm out;
  BigInt prefix = 0;
  for (const Letter& l : w.letters) {
    if (l.gen == Gen::s) {
      prefix += l.exponent;
    } else if (l.exponent != 0) {
      out.factors.push_back({to_int64(prefix), l.exponent});
    }
  }
  out.y = prefix;
  return out;
}

std::vector<CommTerm> swap_commutator(const AlphaTerm& left, const AlphaTerm& right) {
  if (left.alpha == right.alpha) {
    throw std::invalid_argument("swap_commutator: equal alphas merge instead of commuting");
  }
  // [F^{s^a}, F^{s^b}] = [F, F^{s^{b-a}}]^{s^a}, bilinear in the exponents.
  const std::int64_t raw_beta = checked_sub(right.alpha, left.alpha);
  BigInt l = left.k * right.k;
  if (l == 0) return {};
  if (raw_beta > 0) return {CommTerm{raw_beta, left.alpha, std::move(l)}};
  // [F, F^{s^{-j}}]^{s^g} = (([F, F^{s^j}])^{s^{g-j}})^{-1}
  const std::int64_t j = checked_sub(0, raw_beta);
  return {CommTerm{j, checked_sub(left.alpha, j), -l}};
}

CanonicalForm canonicalize(const ConjugateForm& parts) {
  Collector c;
  for (const AlphaTerm& t : parts.factors) c.push(t);
  return std::move(c).finish(parts.y);
}

CanonicalForm canonical_form(const GWord& w) { return canonicalize(to_conjugate_form(w)); }

CanonicalForm identity_form() { return CanonicalForm{{}, {}, 0}; }

CanonicalForm multiply(const CanonicalForm& g1, const CanonicalForm& g2) {
  Collector c;
  for (const AlphaTerm& t : g1.alpha_part) c.push(t);
  for (const CommTerm& t : g1.comm_part) c.central(t);
  if (g2.term_count() > 0) {
    // g1 g2 = A1 C1 (A2 C2)^{s^{y1}} s^{y1+y2}; C1 is central in <F^{s^a}>.
    const std::int64_t shift = to_int64(g1.y);
    for (const CommTerm& t : g2.comm_part) c.central({t.beta, checked_add(t.gamma, shift), t.l});
    for (const AlphaTerm& t : g2.alpha_part) c.push({checked_add(t.alpha, shift), t.k});
  }
  return std::move(c).finish(g1.y + g2.y);
}

CanonicalForm invert(const CanonicalForm& g) {
  // (A C s^y)^-1 = (A^-1 C^-1)^{s^-y} s^-y
  Collector c;
  if (g.term_count() > 0) {
    const std::int64_t shift = to_int64(-g.y);
    for (const CommTerm& t : g.comm_part) c.central({t.beta, checked_add(t.gamma, shift), -t.l});
    for (auto it = g.alpha_part.rbegin(); it != g.alpha_part.rend(); ++it) {
      c.push({checked_add(it->alpha, shift), -it->k});
    }
  }
  return std::move(c).finish(-g.y);
}

CanonicalForm power(const CanonicalForm& g, const BigInt& x, std::optional<std::size_t> budget) {
  CanonicalForm result = identity_form();
  if (x == 0) return result;
  CanonicalForm base = x < 0 ? invert(g) : g;
  BigInt e = abs(x);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t()) != 0) {
      result = multiply(result, base);
      check_budget(result, budget);
    }
    e >>= 1;
    if (e > 0) {
      base = multiply(base, base);
      check_budget(base, budget);
    }
  }
  return result;
}

GWord to_gword(const CanonicalForm& g) {
  std::vector<Letter> letters;
  for (const AlphaTerm& t : g.alpha_part) {
    append_power(letters, Gen::s, from_int64(t.alpha));
    append_power(letters, Gen::F, t.k);
    append_power(letters, Gen::s, -from_int64(t.alpha));
  }
  for (const CommTerm& t : g.comm_part) {
    // ([F, F^{s^b}]^{s^c})^l = s^c [F^l, F^{s^b}] s^-c
    append_power(letters, Gen::s, from_int64(t.gamma));
    const GWord comm = commutator_power_word(t.l, t.beta);
    letters.insert(letters.end(), comm.letters.begin(), comm.letters.end());
    append_power(letters, Gen::s, -from_int64(t.gamma));
  }
  append_power(letters, Gen::s, g.y);
  return normalize_letters(std::move(letters));
}

std::string format_canonical(const CanonicalForm& g) {
  if (g.is_identity_form()) return "1";
  std::ostringstream out;
  for (const AlphaTerm& t : g.alpha_part) out << "A(" << t.alpha << ")^" << t.k.get_str() << ' ';
  for (const CommTerm& t : g.comm_part) out << "K(" << t.beta << ',' << t.gamma << ")^" << t.l.get_str() << ' ';
  out << "s^" << g.y.get_str();
  return out.str();
}

BigInt pi_s(const CanonicalForm& g) { return g.y; }

BigInt deg_alpha(const CanonicalForm& g, std::int64_t alpha) {
  for (const AlphaTerm& t : g.alpha_part) {
    if (t.alpha == alpha) return t.k;
  }
  return 0;
}

// --- the embedding of A_f --------------------------------------------------

GWord commutator_power_word(const BigInt& n, std::int64_t i) {
  const BigInt si = from_int64(i);
  return normalize_letters({{Gen::F, n}, {Gen::s, si}, {Gen::F, 1}, {Gen::s, -si},
                            {Gen::F, -n}, {Gen::s, si}, {Gen::F, -1}, {Gen::s, -si}});
}

GWord commutator_word(std::int64_t beta) { return commutator_power_word(1, beta); }

GWord embed_a(std::uint64_t i) {
  if (i > static_cast<std::uint64_t>((INT64_MAX - 1) / 2)) throw std::overflow_error("embed_a: index too large");
  return commutator_word(static_cast<std::int64_t>(2 * i + 1));
}

GWord embed_b(std::uint64_t i) {
  if (i == 0) throw std::invalid_argument("embed_b: index must be >= 1 (beta = 2i must be positive)");
  if (i > static_cast<std::uint64_t>(INT64_MAX / 2)) throw std::overflow_error("embed_b: index too large");
  return commutator_word(static_cast<std::int64_t>(2 * i));
}

GWord embed_aword(const AWord& w) {
  std::vector<Letter> letters;
  for (const ATerm& t : w.terms) {
    const GWord gen = t.family == Family::A ? embed_a(t.index) : embed_b(t.index);
    const std::int64_t beta = to_int64(gen.letters[1].exponent);
    const GWord image = commutator_power_word(t.exponent, beta);
    letters.insert(letters.end(), image.letters.begin(), image.letters.end());
  }
  return normalize_letters(std::move(letters));
}

AWord comm_to_aword(const std::vector<CommTerm>& block) {
  AWord out;
  out.terms.reserve(block.size());
  for (const CommTerm& c : block) {
    if (c.gamma != block.front().gamma) throw std::invalid_argument("comm_to_aword: mixed gammas in block");
    if (c.beta <= 0) throw std::invalid_argument("comm_to_aword: beta must be positive");
    const auto beta = static_cast<std::uint64_t>(c.beta);
    if (beta % 2 == 1) {
      out.terms.push_back({Family::A, (beta - 1) / 2, c.l});
    } else {
      out.terms.push_back({Family::B, beta / 2, c.l});
    }
  }
  return out;
}

// --- algorithms ------------------------------------------------------------

bool is_trivial(const CanonicalForm& g, FunctionOracle& oracle) {
  VerifyOnlyScope verify_only;
  if (!g.alpha_part.empty() || g.y != 0) return false;
  // Commutator terms at distinct gammas live on distinct s-coordinates.
  for (const auto& [gamma, block] : blocks_by_gamma(g)) {
    if (!wp_A(comm_to_aword(block), oracle)) return false;
  }
  return true;
}

bool wp_G(const GWord& w, FunctionOracle& oracle) {
  VerifyOnlyScope verify_only;
  return is_trivial(canonical_form(w), oracle);
}

bool equals(const CanonicalForm& g, const CanonicalForm& h, FunctionOracle& oracle) {
  return is_trivial(multiply(g, invert(h)), oracle);
}

DlpResult dlp_G(const CanonicalForm& g, const CanonicalForm& h, FunctionOracle& oracle) {
  if (is_trivial(g, oracle)) {
    return is_trivial(h, oracle) ? DlpResult::all_integers() : DlpResult::none("trivial base, nontrivial target");
  }

  const std::size_t budget = kPowerBudgetFactor * (h.term_count() + g.term_count() + 8);
  const auto check_candidate = [&](const BigInt& x) {
    try {
      if (equals(power(g, x, budget), h, oracle)) return DlpResult::unique(x);
      return DlpResult::none("candidate exponent " + x.get_str() + " fails verification");
    } catch (const BudgetExceeded& e) {
      return DlpResult::none(std::string("candidate exponent rejected: ") + e.what());
    } catch (const std::overflow_error& e) {
      return DlpResult::none(std::string("candidate exponent rejected: ") + e.what());
    }
  };
  const auto ratio = [](const BigInt& num, const BigInt& den) -> std::optional<BigInt> {
    if (mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()) == 0) return std::nullopt;
    return BigInt(num / den);
  };

  if (g.y != 0) {
    const auto x = ratio(h.y, g.y);
    if (!x) return DlpResult::none("pi_s(g) does not divide pi_s(h)");
    return check_candidate(*x);
  }
  if (h.y != 0) return DlpResult::none("pi_s(g) = 0 but pi_s(h) != 0");

  if (!g.alpha_part.empty()) {
    const AlphaTerm& lead = g.alpha_part.front();
    const auto x = ratio(deg_alpha(h, lead.alpha), lead.k);
    if (!x) return DlpResult::none("deg_alpha(g) does not divide deg_alpha(h)");
    return check_candidate(*x);
  }
  if (!h.alpha_part.empty()) return DlpResult::none("g lies in the commutator subgroup but h does not");

  // Both in F': solve one A_f logarithm per gamma.
  const auto gb = blocks_by_gamma(g);
  const auto hb = blocks_by_gamma(h);
  std::map<std::int64_t, std::pair<AWord, AWord>> paired;
  for (const auto& [gamma, block] : gb) paired[gamma].first = comm_to_aword(block);
  for (const auto& [gamma, block] : hb) paired[gamma].second = comm_to_aword(block);

  std::optional<BigInt> x;
  for (const auto& [gamma, uv] : paired) {
    DlpResult r = dlp_A(uv.first, uv.second, oracle);
    if (r.kind == DlpResult::Kind::NoSolution) {
      return DlpResult::none("no solution at gamma = " + std::to_string(gamma) +
                             (r.diagnostic.empty() ? "" : ": " + r.diagnostic));
    }
    if (r.kind == DlpResult::Kind::Unique) {
      if (x && *x != r.x) return DlpResult::none("per-gamma logarithms disagree");
      x = r.x;
    }
  }
  return x ? DlpResult::unique(*x) : DlpResult::all_integers();
}

}  // namespace gfdlog
