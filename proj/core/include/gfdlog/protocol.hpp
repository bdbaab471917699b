#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gfdlog/gfgroup.hpp"

// Key agreement over the symbolic generators a_n, b_n, c_n, with
// a_n^p = b_{f(n,p)}, b_m^q = c_{g(m,q)} and g(f(n,p),q) = g(f(n,q),p).

namespace gfdlog::protocol {

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Z_P^* acted on by exponents coprime to P-1 (x -> x^e), with the one-way
/// permutation x -> g0^x. Elements are enumerated as x_n = n.
struct ActionInstantiation {
  std::uint64_t P = 23;
  std::uint64_t g0 = 5;

  friend bool operator==(const ActionInstantiation&, const ActionInstantiation&) = default;
};

/// Throws ProtocolError unless P is a prime below 2^31 and g0 generates Z_P^*.
void validate(const ActionInstantiation& inst);
bool valid_key(const ActionInstantiation& inst, std::uint64_t key);

struct PairFunctions {
  std::function<std::uint64_t(std::uint64_t, std::uint64_t)> eval_f;
  std::function<std::uint64_t(std::uint64_t, std::uint64_t)> eval_g;
  std::string description;
};

/// eval_f(n, p) = (g0^n)^p mod P, eval_g(m, q) = m^q mod P.
PairFunctions derive_pair(const ActionInstantiation& inst);

enum class ShareFamily { A, B, C };

/// [F, F^{s^beta}] with beta = 3*index + 1, 2, 3 for A, B, C; index >= 1.
GWord encode_share(ShareFamily family, std::uint64_t index);
/// Inverse of encode_share; throws ProtocolError on anything else.
std::pair<ShareFamily, std::uint64_t> decode_share(const GWord& w);

enum class Role { initiator, responder };
enum class SessionState { init, shared_sent, completed };

std::string_view role_name(Role r);

struct Message {
  enum class Kind { PARAMS, SHARE };

  Kind kind = Kind::PARAMS;
  // PARAMS
  ActionInstantiation inst;
  std::uint64_t n = 0;
  // SHARE
  Role sender = Role::initiator;
  GWord word;

  friend bool operator==(const Message&, const Message&) = default;
};

/// `PARAMS P=<int> g0=<int> n=<int>` or
/// `SHARE role=<initiator|responder> word=<G-word, spaces as underscores>`.
std::string serialize(const Message& m);
Message parse_message(std::string_view line);

struct Session {
  Role role = Role::initiator;
  ActionInstantiation inst;  // responder: filled from PARAMS
  std::uint64_t public_n = 0;
  std::uint64_t private_key = 0;
  SessionState state = SessionState::init;
  std::optional<std::uint64_t> shared_index;  // set only once completed
};

Session make_initiator(const ActionInstantiation& inst, std::uint64_t n, std::uint64_t key);
Session make_responder(std::uint64_t key);

struct StepResult {
  Session session;
  std::vector<Message> outgoing;
};

/// Pure state transition. The initiator starts with no incoming message.
/// Throws ProtocolError on out-of-order or malformed input.
StepResult step(const Session& session, const std::optional<Message>& incoming);

struct ExchangeResult {
  std::uint64_t shared_a = 0;
  std::uint64_t shared_b = 0;
  std::vector<Message> transcript;
};

ExchangeResult run_exchange(const ActionInstantiation& inst, std::uint64_t n, std::uint64_t key_a,
                            std::uint64_t key_b);

}  // namespace gfdlog::protocol
