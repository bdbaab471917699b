#include "gfdlog_cli/cli.hpp"

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "gfdlog/afgroup.hpp"
#include "gfdlog/bench.hpp"
#include "gfdlog/gfgroup.hpp"
#include "gfdlog/oracle.hpp"
#include "gfdlog/protocol.hpp"

namespace gfdlog::cli {

namespace {

struct Options {
  std::string oracle = "succ";

  std::string kind;  // a | g, or a | b for embed
  std::string word;
  std::string base;
  std::string target;
  std::uint64_t index = 0;

  std::uint64_t P = 23;
  std::uint64_t g0 = 5;
  std::uint64_t n = 2;
  std::optional<std::uint64_t> key_a;
  std::optional<std::uint64_t> key_b;
  std::optional<std::string> role;
  std::optional<std::uint64_t> key;

  std::vector<std::uint64_t> range;
};

std::string dlp_text(const DlpResult& r) {
  switch (r.kind) {
    case DlpResult::Kind::Unique:
      return "x=" + r.x.get_str();
    case DlpResult::Kind::AllIntegers:
      return "all-integers";
    case DlpResult::Kind::NoSolution:
      break;
  }
  return "no-solution";
}

int cmd_normalize(const Options& o, std::ostream& out) {
  if (o.kind == "a") {
    auto oracle = make_oracle(o.oracle);
    out << format_aword(reduce(parse_aword(o.word), *oracle)) << '\n';
  } else {
    out << format_canonical(canonical_form(parse_gword(o.word))) << '\n';
  }
  return kOk;
}

int cmd_wp(const Options& o, std::ostream& out) {
  auto oracle = make_oracle(o.oracle);
  const bool trivial = o.kind == "a" ? wp_A(parse_aword(o.word), *oracle) : wp_G(parse_gword(o.word), *oracle);
  out << (trivial ? "trivial" : "nontrivial") << '\n';
  return trivial ? kOk : kNegative;
}

int cmd_dlp(const Options& o, std::ostream& out) {
  auto oracle = make_oracle(o.oracle);
  DlpResult r;
  if (o.kind == "a") {
    r = dlp_A(parse_aword(o.base), parse_aword(o.target), *oracle);
  } else {
    r = dlp_G(canonical_form(parse_gword(o.base)), canonical_form(parse_gword(o.target)), *oracle);
  }
  out << dlp_text(r) << '\n';
  return r.kind == DlpResult::Kind::NoSolution ? kNegative : kOk;
}

int cmd_embed(const Options& o, std::ostream& out) {
  out << format_gword(o.kind == "a" ? embed_a(o.index) : embed_b(o.index)) << '\n';
  return kOk;
}

int keyex_in_process(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.key_a || !o.key_b) {
    err << "keyex: --key-a and --key-b are required without --role\n";
    return kUsage;
  }
  const protocol::ExchangeResult r = protocol::run_exchange({o.P, o.g0}, o.n, *o.key_a, *o.key_b);
  for (const auto& m : r.transcript) out << protocol::serialize(m) << '\n';
  if (r.shared_a != r.shared_b) {
    err << "keyex: parties disagree (" << r.shared_a << " vs " << r.shared_b << ")\n";
    return kNegative;
  }
  out << "shared index " << r.shared_a << '\n';
  return kOk;
}

// One party on the wire: messages for the peer go to `out`, the peer's
// messages come from `in`, the result goes to `err`.
int keyex_stream(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  if (!o.key) {
    err << "keyex: --key is required with --role\n";
    return kUsage;
  }
  protocol::Session session;
  if (*o.role == "initiator") {
    session = protocol::make_initiator({o.P, o.g0}, o.n, *o.key);
  } else {
    session = protocol::make_responder(*o.key);
  }

  const auto emit = [&](const protocol::StepResult& r) {
    for (const auto& m : r.outgoing) out << protocol::serialize(m) << '\n';
    out.flush();
    session = r.session;
  };

  if (session.role == protocol::Role::initiator) emit(protocol::step(session, std::nullopt));
  std::string line;
  while (session.state != protocol::SessionState::completed && std::getline(in, line)) {
    if (line.empty()) continue;
    emit(protocol::step(session, protocol::parse_message(line)));
  }
  if (!session.shared_index) {
    err << "keyex: peer closed the stream before the exchange completed\n";
    return kUsage;
  }
  err << "shared index " << *session.shared_index << '\n';
  return kOk;
}

int cmd_bench(const Options& o, std::ostream& out) {
  auto oracle = make_oracle(o.oracle);
  write_bench_csv(out, run_bench(*oracle, o.range.at(0), o.range.at(1)));
  return kOk;
}

int cmd_oracle_list(std::ostream& out) {
  for (const OracleInfo& e : registry_entries()) out << e.name << "  " << e.description << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Word problem, discrete logarithm and key exchange in the groups A_f and G_f", "gfdlog"};
  app.fallthrough();
  app.require_subcommand(1);

  Options o;
  app.add_option("--oracle", o.oracle, "Function oracle, e.g. succ or toy_dlog(P=23,g=5)")->capture_default_str();

  const auto kinds = CLI::IsMember({"a", "g"});

  auto* normalize = app.add_subcommand("normalize", "Print the reduced A-word or the canonical G-form");
  normalize->add_option("kind", o.kind, "a or g")->required()->check(kinds);
  normalize->add_option("word", o.word, "Word text")->required();

  auto* wp = app.add_subcommand("wp", "Decide whether a word is trivial (exit 0 iff trivial)");
  wp->add_option("kind", o.kind, "a or g")->required()->check(kinds);
  wp->add_option("word", o.word, "Word text")->required();

  auto* dlp = app.add_subcommand("dlp", "Solve base^x = target");
  dlp->add_option("kind", o.kind, "a or g")->required()->check(kinds);
  dlp->add_option("--base", o.base, "Base word")->required();
  dlp->add_option("--target", o.target, "Target word")->required();

  auto* embed = app.add_subcommand("embed", "Print Psi(a_i) or Psi(b_i) as a G-word");
  embed->add_option("family", o.kind, "a or b")->required()->check(CLI::IsMember({"a", "b"}));
  embed->add_option("index", o.index, "Generator index")->required();

  auto* keyex = app.add_subcommand("keyex", "Run the key exchange in-process, or one side of it on stdin/stdout");
  keyex->add_option("--P", o.P, "Prime modulus")->capture_default_str();
  keyex->add_option("--g0", o.g0, "Primitive root mod P")->capture_default_str();
  keyex->add_option("--n", o.n, "Public index")->capture_default_str();
  auto* key_a = keyex->add_option("--key-a", o.key_a, "Initiator private key");
  auto* key_b = keyex->add_option("--key-b", o.key_b, "Responder private key");
  auto* role = keyex->add_option("--role", o.role, "Stream mode: act as one party")
                   ->check(CLI::IsMember({"initiator", "responder"}));
  auto* key = keyex->add_option("--key", o.key, "Private key in stream mode");
  role->excludes(key_a)->excludes(key_b);
  key->needs(role);

  auto* bench = app.add_subcommand("bench", "CSV of oracle charges for wp_G and dlp_G");
  bench->add_option("--n", o.range, "n_min n_max")->required()->expected(2);

  auto* oracle_cmd = app.add_subcommand("oracle", "Oracle registry");
  oracle_cmd->require_subcommand(1);
  auto* list = oracle_cmd->add_subcommand("list", "List registered oracles");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*normalize) return cmd_normalize(o, out);
    if (*wp) return cmd_wp(o, out);
    if (*dlp) return cmd_dlp(o, out);
    if (*embed) return cmd_embed(o, out);
    if (*keyex) return o.role ? keyex_stream(o, in, out, err) : keyex_in_process(o, out, err);
    if (*bench) {
      if (o.range[0] > o.range[1]) {
        err << "bench: n_min must not exceed n_max\n";
        return kUsage;
      }
      return cmd_bench(o, out);
    }
    if (*list) return cmd_oracle_list(out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace gfdlog::cli
