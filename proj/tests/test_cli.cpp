#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "gfdlog/protocol.hpp"
#include "gfdlog_cli/cli.hpp"

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args, const std::string& input = {}) {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  Outcome o;
  o.code = gfdlog::cli::run(args, in, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("normalize") {
  auto r = invoke({"normalize", "a", "a3^4 b3^-1", "--oracle", "succ"});
  CHECK(r.code == 0);
  CHECK(r.out == "1\n");
  CHECK(invoke({"normalize", "g", "s^2 F^3 s^-2"}).out == "A(2)^3 s^0\n");
  CHECK(invoke({"normalize", "g", ""}).out == "1\n");
  CHECK(invoke({"normalize", "g", "F s F s"}).out == "A(1)^1 A(0)^1 K(1,0)^1 s^2\n");
  CHECK(invoke({"--oracle", "affine(a=3,b=2)", "normalize", "a", "b1 a1^-5 a2"}).out == "a2\n");

  r = invoke({"normalize", "g", "F ^2"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("position 2") != std::string::npos);
  CHECK(invoke({"normalize", "x", "F"}).code == 2);
  CHECK(invoke({"normalize", "g"}).code == 2);
}

TEST_CASE("wp") {
  auto r = invoke({"wp", "g", "F s F^-1 s^-1"});
  CHECK(r.code == 1);
  CHECK(r.out == "nontrivial\n");
  r = invoke({"wp", "a", ""});
  CHECK(r.code == 0);
  CHECK(r.out == "trivial\n");
  CHECK(invoke({"wp", "g", "F F^-1"}).code == 0);
  CHECK(invoke({"wp", "a", "a2^3 b2^-1"}).code == 0);
  CHECK(invoke({"wp", "a", "a2^3 b2^-1", "--oracle", "affine(a=3,b=2)"}).code == 1);
  CHECK(invoke({"wp", "a", "a1", "--oracle", "nosuch"}).code == 2);
}

TEST_CASE("dlp and embed") {
  const std::string a3 = lines(invoke({"embed", "a", "3"}).out).at(0);
  const std::string b3 = lines(invoke({"embed", "b", "3"}).out).at(0);
  auto r = invoke({"dlp", "g", "--base", a3, "--target", b3, "--oracle", "succ"});
  CHECK(r.code == 0);
  CHECK(r.out == "x=4\n");
  CHECK(invoke({"dlp", "g", "--base", a3, "--target", b3, "--oracle", "toy_dlog(P=23,g=5)"}).out == "x=16\n");
  CHECK(invoke({"dlp", "g", "--base", "s", "--target", "s^6"}).out == "x=6\n");
  r = invoke({"dlp", "g", "--base", "F", "--target", "s"});
  CHECK(r.code == 1);
  CHECK(r.out == "no-solution\n");
  CHECK(invoke({"dlp", "g", "--base", "", "--target", ""}).out == "all-integers\n");
  CHECK(invoke({"dlp", "a", "--base", "a4", "--target", "b4"}).out == "x=5\n");
  CHECK(invoke({"dlp", "g", "--base", "F"}).code == 2);

  CHECK(invoke({"embed", "a", "2"}).out == "F s^5 F s^-5 F^-1 s^5 F^-1 s^-5\n");
  CHECK(invoke({"embed", "b", "1"}).out == "F s^2 F s^-2 F^-1 s^2 F^-1 s^-2\n");
  r = invoke({"embed", "b", "0"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(invoke({"embed", "c", "1"}).code == 2);
}

TEST_CASE("keyex in-process") {
  auto r = invoke({"keyex", "--P", "23", "--g0", "5", "--n", "2", "--key-a", "3", "--key-b", "7"});
  CHECK(r.code == 0);
  const auto out = lines(r.out);
  REQUIRE(out.size() == 5);
  CHECK(out[0] == "PARAMS P=23 g0=5 n=2");
  CHECK(out[1] == "SHARE role=initiator word=F_s^26_F_s^-26_F^-1_s^26_F^-1_s^-26");
  CHECK(out[4] == "shared index 12");

  CHECK(invoke({"keyex", "--P", "23", "--g0", "5", "--n", "2", "--key-a", "11", "--key-b", "7"}).code != 0);
  CHECK(invoke({"keyex", "--P", "23", "--g0", "2", "--n", "2", "--key-a", "3", "--key-b", "7"}).code != 0);
  CHECK(invoke({"keyex", "--key-a", "3"}).code == 2);
}

TEST_CASE("keyex stream mode") {
  const std::vector<std::string> initiator{"keyex", "--role", "initiator", "--P", "23", "--g0", "5", "--n", "2",
                                           "--key", "3"};
  const std::vector<std::string> responder{"keyex", "--role", "responder", "--key", "7"};

  // The initiator writes its first two lines before reading anything.
  const Outcome first = invoke(initiator);
  CHECK(first.code == 2);
  const auto opening = lines(first.out);
  REQUIRE(opening.size() == 2);

  const Outcome bob = invoke(responder, first.out);
  CHECK(bob.code == 0);
  CHECK(bob.err == "shared index 12\n");
  const auto reply = lines(bob.out);
  REQUIRE(reply.size() == 2);
  CHECK(reply[0] == opening[0]);  // the echo is byte-identical

  const Outcome alice = invoke(initiator, bob.out);
  CHECK(alice.code == 0);
  CHECK(alice.out == first.out);
  CHECK(alice.err == "shared index 12\n");

  for (const auto& line : lines(first.out + bob.out)) {
    CHECK(gfdlog::protocol::serialize(gfdlog::protocol::parse_message(line)) == line);
  }

  CHECK(invoke(responder, "SHARE role=initiator word=F\n").code == 2);
  CHECK(invoke(responder, "garbage\n").code == 2);
  CHECK(invoke({"keyex", "--role", "responder"}).code == 2);
}

TEST_CASE("bench") {
  auto r = invoke({"bench", "--oracle", "slow(k=16)", "--n", "8", "16"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == "oracle,n,wp_steps,dlp_steps,wp_evals,dlp_evals");
  CHECK(rows[1] == "slow(k=16),8,9,256,0,1");
  CHECK(rows[9] == "slow(k=16),16,17,65536,0,1");

  CHECK(lines(invoke({"bench", "--oracle", "succ", "--n", "1", "10"}).out).size() == 11);
  CHECK(lines(invoke({"bench", "--oracle", "affine(a=3,b=2)", "--n", "1", "1"}).out).at(1) ==
        "\"affine(a=3,b=2)\",1,1,1,0,1");
  CHECK(invoke({"bench", "--n", "5", "2"}).code == 2);
  CHECK(invoke({"bench", "--n", "5"}).code == 2);
  // deterministic
  CHECK(invoke({"bench", "--oracle", "toy_dlog(P=23,g=5)", "--n", "1", "22"}).out ==
        invoke({"bench", "--oracle", "toy_dlog(P=23,g=5)", "--n", "1", "22"}).out);
}

TEST_CASE("oracle list and usage") {
  auto r = invoke({"oracle", "list"});
  CHECK(r.code == 0);
  for (const char* name : {"succ", "affine", "toy_dlog", "semiprime_factor", "slow"}) {
    CHECK(r.out.find(name) != std::string::npos);
  }
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"oracle"}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}
