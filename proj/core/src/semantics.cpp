#include "gfdlog/semantics.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gfdlog::semantics {

namespace {

void add_into(AVec& acc, const AVec& x, const BigInt& c = 1) {
  if (c == 0) return;
  for (const auto& [n, v] : x.coords) {
    BigInt& slot = acc.coords[n];
    slot += c * v;
    if (slot == 0) acc.coords.erase(n);
  }
}

// Value vector of f_i: e_{(i-1)/2} for odd i, f(i/2) e_{i/2} for even i.
AVec f_vector(std::uint64_t i, FunctionOracle& oracle) {
  if (i == 0) throw std::logic_error("f_0 is undefined");
  AVec v;
  if (i % 2 == 1) {
    v.coords[(i - 1) / 2] = 1;
  } else {
    v.coords[i / 2] = oracle.eval(i / 2);
  }
  return v;
}

LElem tail_value(const std::map<std::int64_t, BigInt>& tail, std::int64_t n, FunctionOracle& oracle) {
  LElem out;
  for (const auto& [k, e] : tail) {
    const std::int64_t i = n + k;
    if (i < 1) throw std::logic_error("tail evaluated below its horizon");
    add_into(out.slope, f_vector(static_cast<std::uint64_t>(i), oracle), e);
  }
  return out;
}

// Phi^{s^a}: coordinates move from m to m - a, tail shifts from k to k + a.
ConcreteElement shifted_map(const ConcreteElement& x, std::int64_t a) {
  ConcreteElement out;
  for (const auto& [m, v] : x.explicit_values) out.explicit_values.emplace(m - a, v);
  out.horizon = x.horizon - a;
  for (const auto& [k, e] : x.tail) out.tail.emplace(k + a, e);
  out.sexp = 0;
  return out;
}

}  // namespace

AVec operator+(const AVec& x, const AVec& y) {
  AVec out = x;
  add_into(out, y);
  return out;
}

AVec operator-(const AVec& x) {
  AVec out = x;
  for (auto& [n, v] : out.coords) v = -v;
  return out;
}

AVec operator*(const BigInt& c, const AVec& x) {
  AVec out;
  add_into(out, x, c);
  return out;
}

AVec avec_of(const AWord& w, FunctionOracle& oracle) {
  AVec out;
  for (const ATerm& t : w.terms) {
    AVec e;
    e.coords[t.index] = t.family == Family::A ? BigInt(1) : oracle.eval(t.index);
    add_into(out, e, t.exponent);
  }
  return out;
}

AVec LElem::base_at(std::int64_t m) const { return from_int64(m) * slope + offset; }

LElem l_identity() { return {}; }

LElem l_z() { return LElem{{}, {}, 1}; }

LElem l_f(std::uint64_t i, FunctionOracle& oracle) { return LElem{f_vector(i, oracle), {}, 0}; }

LElem l_mul(const LElem& x, const LElem& y) {
  // (phi1 z^e1)(phi2 z^e2) = phi1 phi2^{z^e1} z^{e1+e2}, phi2^{z^e1}(z^m) = phi2(z^{m+e1}).
  LElem out;
  out.slope = x.slope + y.slope;
  out.offset = x.offset + y.offset;
  add_into(out.offset, y.slope, from_int64(x.zexp));
  out.zexp = x.zexp + y.zexp;
  return out;
}

LElem l_inverse(const LElem& x) {
  // (phi z^e)^-1 = (phi^-1)^{z^-e} z^-e
  LElem out;
  out.slope = -x.slope;
  out.offset = -x.offset;
  add_into(out.offset, x.slope, from_int64(x.zexp));
  out.zexp = -x.zexp;
  return out;
}

LElem l_commutator(const LElem& x, const LElem& y) {
  return l_mul(l_mul(l_mul(x, y), l_inverse(x)), l_inverse(y));
}

ConcreteElement identity() { return {}; }

ConcreteElement gen_F() {
  ConcreteElement f;
  f.explicit_values.emplace(0, l_z());
  f.horizon = 0;
  f.tail.emplace(0, 1);  // F(s^n) = f_n for n > 0
  return f;
}

ConcreteElement gen_s() {
  ConcreteElement s;
  s.sexp = 1;
  return s;
}

LElem coordinate(const ConcreteElement& x, std::int64_t n, FunctionOracle& oracle) {
  if (n > x.horizon) return tail_value(x.tail, n, oracle);
  auto it = x.explicit_values.find(n);
  return it == x.explicit_values.end() ? l_identity() : it->second;
}

ConcreteElement wr_mul(const ConcreteElement& x, const ConcreteElement& y, FunctionOracle& oracle) {
  const ConcreteElement ys = shifted_map(y, x.sexp);
  ConcreteElement out;
  out.sexp = x.sexp + y.sexp;
  out.horizon = std::max(x.horizon, ys.horizon);

  std::set<std::int64_t> points;
  for (const auto& [n, v] : x.explicit_values) points.insert(n);
  for (const auto& [n, v] : ys.explicit_values) points.insert(n);
  // Between the two horizons one side is read from its tail.
  const auto& lower_side = x.horizon < ys.horizon ? x : ys;
  if (!lower_side.tail.empty()) {
    for (std::int64_t n = std::min(x.horizon, ys.horizon) + 1; n <= out.horizon; ++n) points.insert(n);
  }
  for (std::int64_t n : points) {
    if (n > out.horizon) continue;
    LElem v = l_mul(coordinate(x, n, oracle), coordinate(ys, n, oracle));
    if (!v.is_identity()) out.explicit_values.emplace(n, std::move(v));
  }

  out.tail = x.tail;
  for (const auto& [k, e] : ys.tail) {
    BigInt& slot = out.tail[k];
    slot += e;
    if (slot == 0) out.tail.erase(k);
  }
  return out;
}

ConcreteElement inverse(const ConcreteElement& x) {
  // (Phi s^e)^-1 = (Phi^-1)^{s^-e} s^-e
  ConcreteElement pointwise;
  for (const auto& [n, v] : x.explicit_values) pointwise.explicit_values.emplace(n, l_inverse(v));
  pointwise.horizon = x.horizon;
  for (const auto& [k, e] : x.tail) pointwise.tail.emplace(k, -e);
  ConcreteElement out = shifted_map(pointwise, -x.sexp);
  out.sexp = -x.sexp;
  return out;
}

ConcreteElement power(const ConcreteElement& x, std::int64_t n, FunctionOracle& oracle) {
  ConcreteElement base = n < 0 ? inverse(x) : x;
  ConcreteElement result = identity();
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  while (e > 0) {
    if (e & 1U) result = wr_mul(result, base, oracle);
    e >>= 1U;
    if (e > 0) base = wr_mul(base, base, oracle);
  }
  return result;
}

ConcreteElement conjugate(const ConcreteElement& x, const ConcreteElement& by, FunctionOracle& oracle) {
  return wr_mul(wr_mul(by, x, oracle), inverse(by), oracle);
}

ConcreteElement commutator(const ConcreteElement& x, const ConcreteElement& y, FunctionOracle& oracle) {
  return wr_mul(wr_mul(wr_mul(x, y, oracle), inverse(x), oracle), inverse(y), oracle);
}

ConcreteElement eval_word(const GWord& w, FunctionOracle& oracle) {
  ConcreteElement out = identity();
  const ConcreteElement f = gen_F();
  const ConcreteElement s = gen_s();
  for (const Letter& l : w.letters) {
    out = wr_mul(out, power(l.gen == Gen::F ? f : s, to_int64(l.exponent), oracle), oracle);
  }
  return out;
}

bool is_identity(const ConcreteElement& x) {
  return x.sexp == 0 && x.explicit_values.empty() && x.tail.empty();
}

bool same_element(const ConcreteElement& x, const ConcreteElement& y, FunctionOracle& oracle) {
  return is_identity(wr_mul(x, inverse(y), oracle));
}

std::vector<std::int64_t> support(const ConcreteElement& x) {
  if (!x.tail.empty()) throw std::logic_error("support: element has infinite support");
  std::vector<std::int64_t> out;
  for (const auto& [n, v] : x.explicit_values) out.push_back(n);
  return out;
}

std::string describe(const AVec& v) {
  if (v.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [n, c] : v.coords) {
    if (!first) out << " + ";
    first = false;
    out << c.get_str() << "*e" << n;
  }
  return out.str();
}

std::string describe(const LElem& x) {
  std::ostringstream out;
  out << "{m -> m*(" << describe(x.slope) << ") + (" << describe(x.offset) << "); z^" << x.zexp << '}';
  return out.str();
}

std::string describe(const ConcreteElement& x) {
  std::ostringstream out;
  out << "[";
  for (const auto& [n, v] : x.explicit_values) out << " s^" << n << ":" << describe(v);
  out << " | n>" << x.horizon << ":";
  for (const auto& [k, e] : x.tail) out << " f_{n+" << k << "}^" << e.get_str();
  out << " ] s^" << x.sexp;
  return out.str();
}

}  // namespace gfdlog::semantics
