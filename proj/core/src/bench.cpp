#include "gfdlog/bench.hpp"

#include <stdexcept>

#include "gfdlog/gfgroup.hpp"

namespace gfdlog {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::vector<BenchRecord> run_bench(FunctionOracle& oracle, std::uint64_t n_min, std::uint64_t n_max) {
  if (n_min > n_max) throw std::invalid_argument("bench: n_min must not exceed n_max");
  if (n_min < 1) throw std::invalid_argument("bench: n must be >= 1 (Psi(b_n) needs n >= 1)");

  const auto builder = oracle.clone();
  std::vector<BenchRecord> rows;
  for (std::uint64_t n = n_min; n <= n_max; ++n) {
    if (!oracle.in_domain(n)) continue;
    const BigInt fn = builder->eval(n);
    const GWord relator = embed_aword(AWord{{{Family::A, n, fn}, {Family::B, n, -1}}});
    const CanonicalForm base = canonical_form(embed_a(n));
    const CanonicalForm target = canonical_form(embed_b(n));

    BenchRecord rec;
    rec.oracle_name = oracle.spec();
    rec.n = n;

    const StepMeter before_wp = oracle.snapshot_meter();
    if (!wp_G(relator, oracle)) throw std::logic_error("bench: relator image is not trivial");
    const StepMeter wp = meter_delta(before_wp, oracle.snapshot_meter());

    const StepMeter before_dlp = oracle.snapshot_meter();
    const DlpResult r = dlp_G(base, target, oracle);
    const StepMeter dlp = meter_delta(before_dlp, oracle.snapshot_meter());
    if (!r.is_unique() || r.x != fn) throw std::logic_error("bench: logarithm differs from f(n)");

    rec.wp_charged_steps = wp.charged_steps;
    rec.wp_eval_calls = wp.eval_calls;
    rec.dlp_charged_steps = dlp.charged_steps;
    rec.dlp_eval_calls = dlp.eval_calls;
    rows.push_back(std::move(rec));
    if (n == n_max) break;  // n_max may be UINT64_MAX
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& rows) {
  out << kBenchCsvHeader << '\n';
  for (const BenchRecord& r : rows) {
    out << csv_field(r.oracle_name) << ',' << r.n << ',' << r.wp_charged_steps << ',' << r.dlp_charged_steps << ','
        << r.wp_eval_calls << ',' << r.dlp_eval_calls << '\n';
  }
}

}  // namespace gfdlog
