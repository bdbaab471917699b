#include "gfdlog/protocol.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "gfdlog/oracle.hpp"

namespace gfdlog::protocol {

namespace {

std::uint64_t beta_offset(ShareFamily family) {
  switch (family) {
    case ShareFamily::A:
      return 1;
    case ShareFamily::B:
      return 2;
    case ShareFamily::C:
      return 3;
  }
  return 0;
}

void require_key(const ActionInstantiation& inst, std::uint64_t key) {
  if (!valid_key(inst, key)) {
    throw ProtocolError("private key " + std::to_string(key) + " must be >= 1 and coprime to P-1 = " +
                        std::to_string(inst.P - 1));
  }
}

std::uint64_t parse_field(std::string_view token, std::string_view key) {
  if (token.substr(0, key.size()) != key || token.size() <= key.size() || token[key.size()] != '=') {
    throw ProtocolError("expected field '" + std::string(key) + "='");
  }
  BigInt v;
  if (!parse_bigint(token.substr(key.size() + 1), v) || v < 0 || !v.fits_ulong_p()) {
    throw ProtocolError("bad value for field '" + std::string(key) + "'");
  }
  return v.get_ui();
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

Message share_message(Role sender, std::uint64_t index) {
  Message m;
  m.kind = Message::Kind::SHARE;
  m.sender = sender;
  m.word = encode_share(ShareFamily::B, index);
  return m;
}

Message params_message(const ActionInstantiation& inst, std::uint64_t n) {
  Message m;
  m.kind = Message::Kind::PARAMS;
  m.inst = inst;
  m.n = n;
  return m;
}

// b_{m'} received from the peer; our key maps it to c_{g(m', key)}.
Session complete_with(Session s, const Message& share) {
  if (share.sender == s.role) throw ProtocolError("SHARE carries our own role");
  const auto [family, index] = decode_share(share.word);
  if (family != ShareFamily::B) throw ProtocolError("peer share must encode a b-generator");
  if (index >= s.inst.P) throw ProtocolError("peer share index outside Z_P^*");
  s.shared_index = derive_pair(s.inst).eval_g(index, s.private_key);
  s.state = SessionState::completed;
  return s;
}

}  // namespace

void validate(const ActionInstantiation& inst) {
  if (inst.P < 3 || inst.P >= (std::uint64_t{1} << 31) || !is_prime_u64(inst.P)) {
    throw ProtocolError("P must be an odd prime below 2^31");
  }
  if (inst.g0 < 1 || inst.g0 >= inst.P || !is_primitive_root(inst.g0, inst.P)) {
    throw ProtocolError("g0 must generate Z_P^*");
  }
}

bool valid_key(const ActionInstantiation& inst, std::uint64_t key) {
  return key >= 1 && std::gcd(key, inst.P - 1) == 1;
}

PairFunctions derive_pair(const ActionInstantiation& inst) {
  validate(inst);
  PairFunctions pf;
  pf.eval_f = [inst](std::uint64_t n, std::uint64_t p) { return mod_pow(mod_pow(inst.g0, n, inst.P), p, inst.P); };
  pf.eval_g = [inst](std::uint64_t m, std::uint64_t q) { return mod_pow(m % inst.P, q, inst.P); };
  pf.description = "f(n,p) = (" + std::to_string(inst.g0) + "^n)^p mod " + std::to_string(inst.P) +
                   ", g(m,q) = m^q mod " + std::to_string(inst.P);
  return pf;
}

GWord encode_share(ShareFamily family, std::uint64_t index) {
  if (index < 1) throw ProtocolError("share index must be >= 1");
  if (index > (static_cast<std::uint64_t>(INT64_MAX) - 3) / 3) throw ProtocolError("share index too large");
  return commutator_word(static_cast<std::int64_t>(3 * index + beta_offset(family)));
}

std::pair<ShareFamily, std::uint64_t> decode_share(const GWord& w) {
  const CanonicalForm c = canonical_form(w);
  if (!c.alpha_part.empty() || c.y != 0 || c.comm_part.size() != 1) {
    throw ProtocolError("share is not a single commutator term");
  }
  const CommTerm& t = c.comm_part.front();
  if (t.gamma != 0 || t.l != 1 || t.beta < 4) throw ProtocolError("share is not a generator encoding");
  const auto beta = static_cast<std::uint64_t>(t.beta);
  switch (beta % 3) {
    case 1:
      return {ShareFamily::A, (beta - 1) / 3};
    case 2:
      return {ShareFamily::B, (beta - 2) / 3};
    default:
      return {ShareFamily::C, (beta - 3) / 3};
  }
}

std::string_view role_name(Role r) { return r == Role::initiator ? "initiator" : "responder"; }

std::string serialize(const Message& m) {
  std::ostringstream out;
  if (m.kind == Message::Kind::PARAMS) {
    out << "PARAMS P=" << m.inst.P << " g0=" << m.inst.g0 << " n=" << m.n;
  } else {
    std::string word = format_gword(m.word);
    std::replace(word.begin(), word.end(), ' ', '_');
    out << "SHARE role=" << role_name(m.sender) << " word=" << word;
  }
  return out.str();
}

Message parse_message(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
  const auto tokens = split_spaces(line);
  if (tokens.empty()) throw ProtocolError("empty message");
  Message m;
  if (tokens[0] == "PARAMS") {
    if (tokens.size() != 4) throw ProtocolError("PARAMS expects P, g0 and n");
    m.kind = Message::Kind::PARAMS;
    m.inst.P = parse_field(tokens[1], "P");
    m.inst.g0 = parse_field(tokens[2], "g0");
    m.n = parse_field(tokens[3], "n");
    return m;
  }
  if (tokens[0] == "SHARE") {
    if (tokens.size() != 3) throw ProtocolError("SHARE expects role and word");
    m.kind = Message::Kind::SHARE;
    if (tokens[1] == "role=initiator") {
      m.sender = Role::initiator;
    } else if (tokens[1] == "role=responder") {
      m.sender = Role::responder;
    } else {
      throw ProtocolError("bad SHARE role");
    }
    if (tokens[2].substr(0, 5) != "word=") throw ProtocolError("expected field 'word='");
    std::string word(tokens[2].substr(5));
    std::replace(word.begin(), word.end(), '_', ' ');
    try {
      m.word = parse_gword(word);
    } catch (const ParseError& e) {
      throw ProtocolError(std::string("malformed share word: ") + e.what());
    }
    return m;
  }
  throw ProtocolError("unknown message kind '" + std::string(tokens[0]) + "'");
}

Session make_initiator(const ActionInstantiation& inst, std::uint64_t n, std::uint64_t key) {
  validate(inst);
  require_key(inst, key);
  if (n < 1) throw ProtocolError("public index n must be >= 1");
  Session s;
  s.role = Role::initiator;
  s.inst = inst;
  s.public_n = n;
  s.private_key = key;
  return s;
}

Session make_responder(std::uint64_t key) {
  if (key < 1) throw ProtocolError("private key must be >= 1");
  Session s;
  s.role = Role::responder;
  s.private_key = key;
  return s;
}

StepResult step(const Session& session, const std::optional<Message>& incoming) {
  if (session.state == SessionState::completed) throw ProtocolError("session already completed");
  StepResult r{session, {}};
  Session& s = r.session;

  if (s.role == Role::initiator) {
    if (s.state == SessionState::init) {
      if (incoming) throw ProtocolError("initiator must start the exchange");
      r.outgoing.push_back(params_message(s.inst, s.public_n));
      r.outgoing.push_back(share_message(s.role, derive_pair(s.inst).eval_f(s.public_n, s.private_key)));
      s.state = SessionState::shared_sent;
      return r;
    }
    if (!incoming) throw ProtocolError("initiator is waiting for the responder");
    if (incoming->kind == Message::Kind::PARAMS) {
      // The responder's acknowledgement of the public data.
      if (incoming->inst != s.inst || incoming->n != s.public_n) throw ProtocolError("responder echoed other parameters");
      return r;
    }
    s = complete_with(s, *incoming);
    return r;
  }

  if (!incoming) throw ProtocolError("responder waits for PARAMS");
  if (s.state == SessionState::init) {
    if (incoming->kind != Message::Kind::PARAMS) throw ProtocolError("responder expects PARAMS first");
    validate(incoming->inst);
    require_key(incoming->inst, s.private_key);
    if (incoming->n < 1) throw ProtocolError("public index n must be >= 1");
    s.inst = incoming->inst;
    s.public_n = incoming->n;
    r.outgoing.push_back(params_message(s.inst, s.public_n));
    r.outgoing.push_back(share_message(s.role, derive_pair(s.inst).eval_f(s.public_n, s.private_key)));
    s.state = SessionState::shared_sent;
    return r;
  }
  if (incoming->kind != Message::Kind::SHARE) throw ProtocolError("responder expects the initiator's SHARE");
  s = complete_with(s, *incoming);
  return r;
}

ExchangeResult run_exchange(const ActionInstantiation& inst, std::uint64_t n, std::uint64_t key_a,
                            std::uint64_t key_b) {
  validate(inst);
  require_key(inst, key_a);
  require_key(inst, key_b);

  ExchangeResult out;
  Session alice = make_initiator(inst, n, key_a);
  Session bob = make_responder(key_b);

  StepResult first = step(alice, std::nullopt);
  alice = first.session;
  std::deque<Message> to_bob(first.outgoing.begin(), first.outgoing.end());
  out.transcript.insert(out.transcript.end(), first.outgoing.begin(), first.outgoing.end());
  std::deque<Message> to_alice;

  while (!to_bob.empty() || !to_alice.empty()) {
    if (!to_bob.empty()) {
      StepResult r = step(bob, to_bob.front());
      to_bob.pop_front();
      bob = r.session;
      for (auto& m : r.outgoing) {
        out.transcript.push_back(m);
        to_alice.push_back(std::move(m));
      }
      continue;
    }
    StepResult r = step(alice, to_alice.front());
    to_alice.pop_front();
    alice = r.session;
    for (auto& m : r.outgoing) {
      out.transcript.push_back(m);
      to_bob.push_back(std::move(m));
    }
  }

  if (!alice.shared_index || !bob.shared_index) throw ProtocolError("exchange ended before both sides completed");
  out.shared_a = *alice.shared_index;
  out.shared_b = *bob.shared_index;
  return out;
}

}  // namespace gfdlog::protocol
