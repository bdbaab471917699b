#include "gfdlog/afgroup.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace gfdlog {

namespace {

using Key = std::pair<Family, std::uint64_t>;

// Exponent-summed terms keyed by (family, index), zeros dropped.
std::map<Key, BigInt> collect(const AWord& w) {
  std::map<Key, BigInt> acc;
  for (const ATerm& t : w.terms) acc[{t.family, t.index}] += t.exponent;
  std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
  return acc;
}

struct IndexExponents {
  BigInt a;  // exponent of a_n
  BigInt b;  // exponent of b_n
};

// Support of a reduced word as index -> (a-exponent, b-exponent).
std::map<std::uint64_t, IndexExponents> by_index(const ReducedAWord& w) {
  std::map<std::uint64_t, IndexExponents> out;
  for (const ATerm& t : w.terms) {
    auto& slot = out[t.index];
    (t.family == Family::A ? slot.a : slot.b) = t.exponent;
  }
  return out;
}

}  // namespace

double length_A(const AWord& w) {
  double total = 0.0;
  for (const ATerm& t : w.terms) total += log2_abs(from_uint64(t.index) * t.exponent);
  return total;
}

ReducedAWord reduce(const AWord& w, FunctionOracle& oracle) {
  VerifyOnlyScope verify_only;
  auto acc = collect(w);

  for (auto it = acc.lower_bound({Family::A, 0}); it != acc.end() && it->first.first == Family::A;) {
    const std::uint64_t n = it->first.second;
    auto b = acc.find({Family::B, n});
    if (b == acc.end()) {
      ++it;
      continue;
    }
    // a_n^k b_n^l is trivial iff k + l*f(n) = 0, i.e. f(n) = -k/l.
    const BigInt& k = it->second;
    const BigInt& l = b->second;
    if (mpz_divisible_p(k.get_mpz_t(), l.get_mpz_t()) != 0) {
      const BigInt candidate = -k / l;
      if (candidate >= 1 && oracle.verify(n, candidate)) {
        acc.erase(b);
        it = acc.erase(it);
        continue;
      }
    }
    ++it;
  }

  ReducedAWord out;
  out.terms.reserve(acc.size());
  for (auto& [key, exponent] : acc) out.terms.push_back({key.first, key.second, std::move(exponent)});
  return out;
}

bool wp_A(const AWord& w, FunctionOracle& oracle) {
  VerifyOnlyScope verify_only;
  return reduce(w, oracle).empty();
}

DlpResult dlp_A(const AWord& u_word, const AWord& v_word, FunctionOracle& oracle) {
  const ReducedAWord u = reduce(u_word, oracle);
  const ReducedAWord v = reduce(v_word, oracle);
  if (u.empty()) return v.empty() ? DlpResult::all_integers() : DlpResult::none("trivial base");

  const auto us = by_index(u);
  const auto vs = by_index(v);
  for (const auto& [n, unused] : vs) {
    if (!us.contains(n)) return DlpResult::none("target support not contained in base support");
  }

  // Over the free basis {a_n}: u has coordinate d_n = k_n + l_n f(n), v has d'_n.
  std::optional<BigInt> x;
  for (const auto& [n, ue] : us) {
    const BigInt fn = oracle.eval(n);
    const BigInt d = ue.a + ue.b * fn;
    BigInt dv = 0;
    if (auto it = vs.find(n); it != vs.end()) dv = it->second.a + it->second.b * fn;
    if (!x) {
      if (mpz_divisible_p(dv.get_mpz_t(), d.get_mpz_t()) == 0) {
        return DlpResult::none("exponent ratio is not integral");
      }
      x = dv / d;
    } else if (*x * d != dv) {
      return DlpResult::none("inconsistent exponent ratios");
    }
  }
  return DlpResult::unique(*x);
}

AWord parse_aword(std::string_view text) {
  AWord w;
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

    ATerm term;
    if (token[0] == 'a') {
      term.family = Family::A;
    } else if (token[0] == 'b') {
      term.family = Family::B;
    } else {
      throw ParseError("expected generator 'a<index>' or 'b<index>'", start);
    }
    const auto caret = token.find('^');
    const std::string_view index_text = token.substr(1, caret == std::string_view::npos ? token.npos : caret - 1);
    BigInt index;
    if (index_text.empty() || index_text[0] == '-' || index_text[0] == '+' || !parse_bigint(index_text, index) ||
        !index.fits_ulong_p()) {
      throw ParseError("bad generator index", start + 1);
    }
    term.index = index.get_ui();
    term.exponent = 1;
    if (caret != std::string_view::npos && !parse_bigint(token.substr(caret + 1), term.exponent)) {
      throw ParseError("bad exponent", start + caret + 1);
    }
    w.terms.push_back(std::move(term));
  }
  return w;
}

std::string format_aword(const AWord& w) {
  if (w.terms.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const ATerm& t : w.terms) {
    if (!first) out << ' ';
    first = false;
    out << (t.family == Family::A ? 'a' : 'b') << t.index;
    if (t.exponent != 1) out << '^' << t.exponent.get_str();
  }
  return out.str();
}

std::string format_aword(const ReducedAWord& w) { return format_aword(w.word()); }

}  // namespace gfdlog
