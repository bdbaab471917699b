#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gfdlog/afgroup.hpp"
#include "gfdlog/bigint.hpp"
#include "gfdlog/gfgroup.hpp"
#include "gfdlog/oracle.hpp"

// Explicit model of A_f wr <z> wr <s>, used to check the symbolic G_f code on
// small instances. Materializing b_n = f(n) e_n calls eval(), so this is a
// test oracle for cheap functions (succ, affine), never a production path.

namespace gfdlog::semantics {

/// Element of A_f in the free basis {a_n}; zero coordinates are not stored.
struct AVec {
  std::map<std::uint64_t, BigInt> coords;

  bool is_zero() const { return coords.empty(); }
  friend bool operator==(const AVec&, const AVec&) = default;
};

AVec operator+(const AVec& x, const AVec& y);
AVec operator-(const AVec& x);
AVec operator*(const BigInt& c, const AVec& x);

/// a_n -> e_n, b_n -> f(n) e_n.
AVec avec_of(const AWord& w, FunctionOracle& oracle);

/// Element phi * z^zexp of L = <z, f_1, f_2, ...> < A_f wr <z>. Every base map
/// reachable from z and the f_i is affine in the z-exponent, so phi is stored
/// as phi(z^m) = m*slope + offset.
struct LElem {
  AVec slope;
  AVec offset;
  std::int64_t zexp = 0;

  bool is_identity() const { return slope.is_zero() && offset.is_zero() && zexp == 0; }
  /// phi(z^m), the base map evaluated at one point.
  AVec base_at(std::int64_t m) const;

  friend bool operator==(const LElem&, const LElem&) = default;
};

LElem l_identity();
LElem l_z();
/// f_i(z^m) = a_{(i-1)/2}^m for odd i, b_{i/2}^m for even i; i >= 1.
LElem l_f(std::uint64_t i, FunctionOracle& oracle);
LElem l_mul(const LElem& x, const LElem& y);
LElem l_inverse(const LElem& x);
LElem l_commutator(const LElem& x, const LElem& y);

/// Element Phi * s^sexp of L wr <s>. Phi is given by explicit values at
/// coordinates <= horizon (absent = identity) and, beyond the horizon, by the
/// product of f_{n+k}^{E_k} over the entries of `tail`.
struct ConcreteElement {
  std::map<std::int64_t, LElem> explicit_values;
  std::int64_t horizon = 0;
  std::map<std::int64_t, BigInt> tail;
  std::int64_t sexp = 0;
};

ConcreteElement identity();
ConcreteElement gen_F();
ConcreteElement gen_s();

/// Phi(s^n).
LElem coordinate(const ConcreteElement& x, std::int64_t n, FunctionOracle& oracle);

/// (Phi1 s^a)(Phi2 s^b) = Phi1 Phi2^{s^a} s^{a+b}, with Phi2^{s^a}(s^n) = Phi2(s^{n+a}).
ConcreteElement wr_mul(const ConcreteElement& x, const ConcreteElement& y, FunctionOracle& oracle);
ConcreteElement inverse(const ConcreteElement& x);
ConcreteElement power(const ConcreteElement& x, std::int64_t n, FunctionOracle& oracle);
ConcreteElement conjugate(const ConcreteElement& x, const ConcreteElement& by, FunctionOracle& oracle);
ConcreteElement commutator(const ConcreteElement& x, const ConcreteElement& y, FunctionOracle& oracle);

ConcreteElement eval_word(const GWord& w, FunctionOracle& oracle);

/// Exact for injective f (every registry oracle used with this module).
bool is_identity(const ConcreteElement& x);
bool same_element(const ConcreteElement& x, const ConcreteElement& y, FunctionOracle& oracle);

/// Coordinates carrying a non-identity value; valid when the tail is empty.
std::vector<std::int64_t> support(const ConcreteElement& x);

std::string describe(const AVec& v);
std::string describe(const LElem& x);
std::string describe(const ConcreteElement& x);

}  // namespace gfdlog::semantics
