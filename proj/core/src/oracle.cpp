#include "gfdlog/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

namespace gfdlog {

namespace {

thread_local int verify_only_depth = 0;
std::atomic<std::uint64_t> eval_violations{0};

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

// Square-and-multiply; `muls` receives the number of modular products performed.
std::uint64_t mod_pow_counted(std::uint64_t base, std::uint64_t exp, std::uint64_t mod,
                              std::uint64_t& muls) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1U) {
      result = mul_mod(result, base, mod);
      ++muls;
    }
    exp >>= 1U;
    if (exp > 0) {
      base = mul_mod(base, base, mod);
      ++muls;
    }
  }
  return result;
}

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_counted(std::uint64_t n, std::uint64_t& steps) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    ++steps;
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++r;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = mod_pow_counted(a, d, n, steps);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      ++steps;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::int64_t require_param(const OracleParams& params, const std::string& oracle,
                           const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw OracleSpecError(oracle + ": missing parameter '" + key + "'");
  }
  return it->second;
}

void reject_unknown_params(const OracleParams& params, const std::string& oracle,
                           std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : params) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw OracleSpecError(oracle + ": unknown parameter '" + key + "'");
    }
  }
}

class SuccOracle final : public FunctionOracle {
 public:
  SuccOracle() : FunctionOracle("succ", {}) {}
  std::unique_ptr<FunctionOracle> clone() const override { return std::make_unique<SuccOracle>(); }

 protected:
  Evaluation do_eval(std::uint64_t n) const override { return {from_uint64(n) + 1, 1}; }
  Verdict do_verify(std::uint64_t n, const BigInt& m) const override {
    return {m == from_uint64(n) + 1, 1};
  }
};

class AffineOracle final : public FunctionOracle {
 public:
  AffineOracle(std::int64_t a, std::int64_t b)
      : FunctionOracle("affine", {{"a", a}, {"b", b}}), a_(from_int64(a)), b_(from_int64(b)) {}
  std::unique_ptr<FunctionOracle> clone() const override {
    return std::make_unique<AffineOracle>(params().at("a"), params().at("b"));
  }

 protected:
  Evaluation do_eval(std::uint64_t n) const override { return {a_ * from_uint64(n) + b_, 1}; }
  Verdict do_verify(std::uint64_t n, const BigInt& m) const override {
    return {m == a_ * from_uint64(n) + b_, 1};
  }

 private:
  BigInt a_;
  BigInt b_;
};

// f(n) = the exponent m in [1, P-1] with g^m = x_n (mod P), where
// x_n = ((n - 1) mod (P - 1)) + 1, so x_n = n for 1 <= n < P.
class ToyDlogOracle final : public FunctionOracle {
 public:
  ToyDlogOracle(std::uint64_t p, std::uint64_t g)
      : FunctionOracle("toy_dlog", {{"P", static_cast<std::int64_t>(p)}, {"g", static_cast<std::int64_t>(g)}}),
        p_(p),
        g_(g) {}
  std::unique_ptr<FunctionOracle> clone() const override {
    return std::make_unique<ToyDlogOracle>(p_, g_);
  }

 protected:
  Evaluation do_eval(std::uint64_t n) const override {
    const std::uint64_t target = target_of(n);
    std::uint64_t cur = 1;
    for (std::uint64_t m = 1; m < p_; ++m) {
      cur = mul_mod(cur, g_, p_);
      if (cur == target) return {from_uint64(m), m};
    }
    throw std::logic_error("toy_dlog: generator does not reach every residue");
  }

  Verdict do_verify(std::uint64_t n, const BigInt& m) const override {
    if (m < 1 || m >= from_uint64(p_)) return {false, 1};
    std::uint64_t muls = 0;
    const bool ok = mod_pow_counted(g_, m.get_ui(), p_, muls) == target_of(n);
    return {ok, std::max<std::uint64_t>(muls, 1)};
  }

 private:
  std::uint64_t target_of(std::uint64_t n) const {
    const std::uint64_t order = p_ - 1;
    return n == 0 ? order : ((n - 1) % order) + 1;
  }

  std::uint64_t p_;
  std::uint64_t g_;
};

// Domain: semiprimes n = p*q. f(n) = min(p, q).
class SemiprimeFactorOracle final : public FunctionOracle {
 public:
  SemiprimeFactorOracle() : FunctionOracle("semiprime_factor", {}) {}
  std::unique_ptr<FunctionOracle> clone() const override {
    return std::make_unique<SemiprimeFactorOracle>();
  }

  bool in_domain(std::uint64_t n) const override {
    const std::uint64_t p = smallest_factor(n, nullptr);
    if (p == 0 || p == n) return false;
    std::uint64_t scratch = 0;
    return is_prime_counted(n / p, scratch);
  }

 protected:
  Evaluation do_eval(std::uint64_t n) const override {
    std::uint64_t steps = 0;
    const std::uint64_t p = smallest_factor(n, &steps);
    if (p == 0 || p == n) throw DomainError("semiprime_factor: " + std::to_string(n) + " is not a semiprime");
    std::uint64_t scratch = 0;
    if (!is_prime_counted(n / p, scratch)) {
      throw DomainError("semiprime_factor: " + std::to_string(n) + " is not a semiprime");
    }
    return {from_uint64(p), std::max<std::uint64_t>(steps, 1)};
  }

  Verdict do_verify(std::uint64_t n, const BigInt& m) const override {
    if (m < 2 || !m.fits_ulong_p()) return {false, 1};
    const std::uint64_t p = m.get_ui();
    std::uint64_t steps = 1;
    if (n % p != 0) return {false, steps};
    const std::uint64_t q = n / p;
    if (p > q) return {false, steps};
    const bool ok = is_prime_counted(p, steps) && is_prime_counted(q, steps);
    return {ok, steps};
  }

 private:
  // Trial division; 0 when n < 2.
  static std::uint64_t smallest_factor(std::uint64_t n, std::uint64_t* steps) {
    if (n < 2) return 0;
    for (std::uint64_t d = 2; d <= n / d; ++d) {
      if (steps) ++*steps;
      if (n % d == 0) return d;
    }
    return n;
  }
};

// f(n) = n + 1 with evaluation charged 2^min(n, k) and verification n + 1.
class SlowOracle final : public FunctionOracle {
 public:
  explicit SlowOracle(std::int64_t k) : FunctionOracle("slow", {{"k", k}}), k_(static_cast<std::uint64_t>(k)) {}
  std::unique_ptr<FunctionOracle> clone() const override {
    return std::make_unique<SlowOracle>(static_cast<std::int64_t>(k_));
  }

 protected:
  Evaluation do_eval(std::uint64_t n) const override {
    return {from_uint64(n) + 1, std::uint64_t{1} << std::min(n, k_)};
  }
  Verdict do_verify(std::uint64_t n, const BigInt& m) const override {
    return {m == from_uint64(n) + 1, n + 1};
  }

 private:
  std::uint64_t k_;
};

}  // namespace

StepMeter meter_delta(const StepMeter& before, const StepMeter& after) {
  return {after.eval_calls - before.eval_calls, after.verify_calls - before.verify_calls,
          after.charged_steps - before.charged_steps};
}

FunctionOracle::FunctionOracle(std::string name, OracleParams params)
    : name_(std::move(name)), params_(std::move(params)) {}

std::string FunctionOracle::spec() const {
  if (params_.empty()) return name_;
  std::ostringstream out;
  out << name_ << '(';
  bool first = true;
  for (const auto& [key, value] : params_) {
    if (!first) out << ',';
    first = false;
    out << key << '=' << value;
  }
  out << ')';
  return out.str();
}

BigInt FunctionOracle::eval(std::uint64_t n) {
  if (VerifyOnlyScope::active()) {
    eval_violations.fetch_add(1, std::memory_order_relaxed);
    throw std::logic_error("eval() called inside a verification-only region");
  }
  if (!in_domain(n)) {
    throw DomainError(name_ + ": input " + std::to_string(n) + " outside the oracle's domain");
  }
  Evaluation e = do_eval(n);
  eval_calls_.fetch_add(1, std::memory_order_relaxed);
  charged_steps_.fetch_add(e.steps, std::memory_order_relaxed);
  return e.value;
}

bool FunctionOracle::verify(std::uint64_t n, const BigInt& m) {
  verify_calls_.fetch_add(1, std::memory_order_relaxed);
  if (m <= 0) {
    charged_steps_.fetch_add(1, std::memory_order_relaxed);
    return false;
  }
  const Verdict v = do_verify(n, m);
  charged_steps_.fetch_add(v.steps, std::memory_order_relaxed);
  return v.accepted;
}

StepMeter FunctionOracle::snapshot_meter() const {
  return {eval_calls_.load(std::memory_order_relaxed), verify_calls_.load(std::memory_order_relaxed),
          charged_steps_.load(std::memory_order_relaxed)};
}

void FunctionOracle::reset_meter() {
  eval_calls_.store(0);
  verify_calls_.store(0);
  charged_steps_.store(0);
}

VerifyOnlyScope::VerifyOnlyScope() { ++verify_only_depth; }
VerifyOnlyScope::~VerifyOnlyScope() { --verify_only_depth; }
bool VerifyOnlyScope::active() { return verify_only_depth > 0; }

std::uint64_t eval_violation_count() { return eval_violations.load(); }

const std::vector<OracleInfo>& registry_entries() {
  static const std::vector<OracleInfo> entries = {
      {"succ", "f(n) = n + 1"},
      {"affine", "affine(a,b): f(n) = a*n + b, a >= 1, b >= 1"},
      {"toy_dlog", "toy_dlog(P,g): discrete log base g of x_n in Z_P^*, found by exhaustive search"},
      {"semiprime_factor", "smaller prime factor of a semiprime n = p*q"},
      {"slow", "slow(k): f(n) = n + 1, eval charged 2^min(n,k), verify charged n + 1"},
  };
  return entries;
}

std::unique_ptr<FunctionOracle> registry_get(std::string_view name_view, const OracleParams& params) {
  const std::string name(name_view);
  if (name == "succ") {
    reject_unknown_params(params, name, {});
    return std::make_unique<SuccOracle>();
  }
  if (name == "affine") {
    reject_unknown_params(params, name, {"a", "b"});
    const auto a = require_param(params, name, "a");
    const auto b = require_param(params, name, "b");
    if (a < 1 || b < 1) throw OracleSpecError("affine: a >= 1 and b >= 1 required");
    return std::make_unique<AffineOracle>(a, b);
  }
  if (name == "toy_dlog") {
    reject_unknown_params(params, name, {"P", "g"});
    const auto p = require_param(params, name, "P");
    const auto g = require_param(params, name, "g");
    if (p < 3 || p >= (std::int64_t{1} << 31) || !is_prime_u64(static_cast<std::uint64_t>(p))) {
      throw OracleSpecError("toy_dlog: P must be an odd prime below 2^31");
    }
    if (g < 1 || g >= p || !is_primitive_root(static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(p))) {
      throw OracleSpecError("toy_dlog: g must generate Z_P^*");
    }
    return std::make_unique<ToyDlogOracle>(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(g));
  }
  if (name == "semiprime_factor") {
    reject_unknown_params(params, name, {});
    return std::make_unique<SemiprimeFactorOracle>();
  }
  if (name == "slow") {
    reject_unknown_params(params, name, {"k"});
    const auto k = require_param(params, name, "k");
    if (k < 0 || k > 62) throw OracleSpecError("slow: k must lie in [0, 62]");
    return std::make_unique<SlowOracle>(k);
  }
  throw OracleSpecError("unknown oracle '" + name + "'");
}

OracleSpec parse_oracle_spec(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  OracleSpec spec;
  const auto open = text.find('(');
  if (open == std::string_view::npos) {
    spec.name = std::string(text);
  } else {
    if (text.back() != ')') throw OracleSpecError("oracle spec: missing ')'");
    spec.name = std::string(trim(text.substr(0, open)));
    std::string_view body = text.substr(open + 1, text.size() - open - 2);
    while (!trim(body).empty()) {
      const auto comma = body.find(',');
      std::string_view item = trim(body.substr(0, comma));
      body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw OracleSpecError("oracle spec: expected key=value");
      const std::string key(trim(item.substr(0, eq)));
      BigInt value;
      if (key.empty() || !parse_bigint(trim(item.substr(eq + 1)), value) || !fits_int64(value)) {
        throw OracleSpecError("oracle spec: bad parameter '" + std::string(item) + "'");
      }
      if (!spec.params.emplace(key, to_int64(value)).second) {
        throw OracleSpecError("oracle spec: duplicate parameter '" + key + "'");
      }
    }
  }
  if (spec.name.empty()) throw OracleSpecError("oracle spec: empty name");
  return spec;
}

std::unique_ptr<FunctionOracle> make_oracle(std::string_view spec_text) {
  const OracleSpec spec = parse_oracle_spec(spec_text);
  return registry_get(spec.name, spec.params);
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t muls = 0;
  return mod_pow_counted(base, exp, mod, muls);
}

bool is_prime_u64(std::uint64_t n) {
  std::uint64_t steps = 0;
  return is_prime_counted(n, steps);
}

bool is_primitive_root(std::uint64_t g, std::uint64_t p) {
  if (p < 2 || g % p == 0) return false;
  if (p == 2) return g % 2 == 1;
  std::uint64_t rest = p - 1;
  for (std::uint64_t q = 2; q <= rest / q; ++q) {
    if (rest % q != 0) continue;
    if (mod_pow(g, (p - 1) / q, p) == 1) return false;
    while (rest % q == 0) rest /= q;
  }
  if (rest > 1 && mod_pow(g, (p - 1) / rest, p) == 1) return false;
  return true;
}

}  // namespace gfdlog
