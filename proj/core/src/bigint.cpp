#include "gfdlog/bigint.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gfdlog {

namespace {
const BigInt kInt64Min = from_int64(std::numeric_limits<std::int64_t>::min());
const BigInt kInt64Max = from_int64(std::numeric_limits<std::int64_t>::max());
}  // namespace

BigInt from_int64(std::int64_t v) {
  static_assert(sizeof(long) == sizeof(std::int64_t));
  return BigInt(static_cast<long>(v));
}

BigInt from_uint64(std::uint64_t v) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return BigInt(static_cast<unsigned long>(v));
}

bool fits_int64(const BigInt& v) { return v >= kInt64Min && v <= kInt64Max; }

std::int64_t to_int64(const BigInt& v) {
  if (!fits_int64(v)) {
    throw std::overflow_error("integer " + v.get_str() + " exceeds 64-bit shift range");
  }
  return static_cast<std::int64_t>(v.get_si());
}

std::string to_string(const BigInt& v) { return v.get_str(); }

double log2_abs(const BigInt& v) {
  if (cmp(abs(v), 1) <= 0) return 0.0;
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

bool parse_bigint(std::string_view text, BigInt& out) {
  if (text.empty()) return false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') i = 1;
  if (i == text.size()) return false;
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') return false;
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return out.set_str(digits, 10) == 0;
}

}  // namespace gfdlog
