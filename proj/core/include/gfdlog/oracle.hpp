#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gfdlog/bigint.hpp"

namespace gfdlog {

/// Counters reported by a FunctionOracle. `charged_steps` is in abstract
/// unit-cost steps, as reported by the oracle implementation itself.
struct StepMeter {
  std::uint64_t eval_calls = 0;
  std::uint64_t verify_calls = 0;
  std::uint64_t charged_steps = 0;

  friend bool operator==(const StepMeter&, const StepMeter&) = default;
};

/// Difference of two snapshots taken from the same oracle, `after - before`.
StepMeter meter_delta(const StepMeter& before, const StepMeter& after);

using OracleParams = std::map<std::string, std::int64_t>;

/// Raised by eval() when the registry entry restricts its domain and n lies outside it.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Unknown oracle name, malformed spec string, or parameters failing validation.
class OracleSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computable f: N -> N with f(n) >= 1, exposing evaluation and verification
/// as separately metered operations.
///
/// The counters are atomics, so one instance may be shared across threads;
/// per-call charges are still only meaningful when each worker reads deltas
/// from its own instance.
class FunctionOracle {
 public:
  FunctionOracle(std::string name, OracleParams params);
  virtual ~FunctionOracle() = default;

  FunctionOracle(const FunctionOracle&) = delete;
  FunctionOracle& operator=(const FunctionOracle&) = delete;

  const std::string& name() const { return name_; }
  const OracleParams& params() const { return params_; }

  /// `name(key=value,...)`, or just `name` without parameters.
  std::string spec() const;

  /// f(n). Increments the eval counter and charges the oracle's evaluation cost.
  /// Throws DomainError outside a restricted domain, and std::logic_error when
  /// called inside a VerifyOnlyScope.
  BigInt eval(std::uint64_t n);

  /// True iff f(n) == m. Charges only the verifier's cost; never evaluates f.
  bool verify(std::uint64_t n, const BigInt& m);

  virtual bool in_domain(std::uint64_t /*n*/) const { return true; }

  StepMeter snapshot_meter() const;
  void reset_meter();

  /// Same function and parameters, fresh counters.
  virtual std::unique_ptr<FunctionOracle> clone() const = 0;

 protected:
  struct Evaluation {
    BigInt value;
    std::uint64_t steps = 1;
  };
  struct Verdict {
    bool accepted = false;
    std::uint64_t steps = 1;
  };

  virtual Evaluation do_eval(std::uint64_t n) const = 0;
  virtual Verdict do_verify(std::uint64_t n, const BigInt& m) const = 0;

 private:
  std::string name_;
  OracleParams params_;
  std::atomic<std::uint64_t> eval_calls_{0};
  std::atomic<std::uint64_t> verify_calls_{0};
  std::atomic<std::uint64_t> charged_steps_{0};
};

/// Marks a region (reduction, word problem) that must only verify. Any eval()
/// on the current thread while a scope is open is recorded and rejected.
class VerifyOnlyScope {
 public:
  VerifyOnlyScope();
  ~VerifyOnlyScope();
  VerifyOnlyScope(const VerifyOnlyScope&) = delete;
  VerifyOnlyScope& operator=(const VerifyOnlyScope&) = delete;

  static bool active();
};

/// Process-wide count of eval() attempts made inside a VerifyOnlyScope.
std::uint64_t eval_violation_count();

struct OracleInfo {
  std::string name;
  std::string description;
};

const std::vector<OracleInfo>& registry_entries();

/// Builds a registry oracle: succ, affine(a,b), toy_dlog(P,g),
/// semiprime_factor, slow(k).
std::unique_ptr<FunctionOracle> registry_get(std::string_view name, const OracleParams& params);

struct OracleSpec {
  std::string name;
  OracleParams params;
};

/// Parses `name(key=value,...)`; whitespace around tokens is ignored.
OracleSpec parse_oracle_spec(std::string_view text);

std::unique_ptr<FunctionOracle> make_oracle(std::string_view spec_text);

// Number theory shared by the oracles and the key-exchange instantiation.
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
bool is_prime_u64(std::uint64_t n);
bool is_primitive_root(std::uint64_t g, std::uint64_t p);

}  // namespace gfdlog
