#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "gfdlog/oracle.hpp"

namespace gfdlog {

/// Oracle charges for one index n: the word problem on the relator image
/// Psi(a_n^{f(n)} b_n^-1) and the logarithm of Psi(b_n) to base Psi(a_n).
struct BenchRecord {
  std::string oracle_name;
  std::uint64_t n = 0;
  std::uint64_t wp_charged_steps = 0;
  std::uint64_t dlp_charged_steps = 0;
  std::uint64_t wp_eval_calls = 0;
  std::uint64_t dlp_eval_calls = 0;
};

/// One record per n in [n_min, n_max] inside the oracle's domain. The probe
/// words are built with a private clone of the oracle, so only the measured
/// calls show up in the records. Throws std::invalid_argument when
/// n_min > n_max or n_min < 1.
std::vector<BenchRecord> run_bench(FunctionOracle& oracle, std::uint64_t n_min, std::uint64_t n_max);

inline constexpr const char* kBenchCsvHeader = "oracle,n,wp_steps,dlp_steps,wp_evals,dlp_evals";

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& rows);

}  // namespace gfdlog
