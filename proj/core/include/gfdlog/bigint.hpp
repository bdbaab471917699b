#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace gfdlog {

// Exponents and oracle values are unbounded integers.
using BigInt = mpz_class;

bool fits_int64(const BigInt& v);

// Throws std::overflow_error when v does not fit.
std::int64_t to_int64(const BigInt& v);

BigInt from_int64(std::int64_t v);
BigInt from_uint64(std::uint64_t v);

std::string to_string(const BigInt& v);

// log2(max(1, |v|)) to double precision, valid far beyond the double range of v.
double log2_abs(const BigInt& v);

// Parses an optionally signed decimal integer; returns false on any malformed input.
bool parse_bigint(std::string_view text, BigInt& out);

}  // namespace gfdlog
