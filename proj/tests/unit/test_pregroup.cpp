#include "doctest.h"

#include <random>

#include "frobcoord/errors.hpp"
#include "frobcoord/pregroup.hpp"
#include "support/oracles.hpp"

using namespace frobcoord;

namespace {

std::vector<PregroupType> types(std::initializer_list<const char*> texts) {
  std::vector<PregroupType> out;
  for (const char* t : texts) out.push_back(parse_type(t));
  return out;
}

std::vector<Link> links(std::initializer_list<std::pair<std::size_t, std::size_t>> ps) {
  std::vector<Link> out;
  for (auto [a, b] : ps) out.push_back({a, b});
  return out;
}

oracle::LinkList as_pairs(const Derivation& d) {
  oracle::LinkList out;
  for (const auto& l : d.links) out.push_back({l.left, l.right});
  return out;
}

std::vector<SimpleType> flatten(const std::vector<PregroupType>& ts) {
  std::vector<SimpleType> out;
  for (const auto& t : ts) out.insert(out.end(), t.begin(), t.end());
  return out;
}

}  // namespace

TEST_CASE("parse_type reads adjoint marks left to right") {
  const auto t = parse_type("n.r s n.l");
  REQUIRE(t.size() == 3);
  CHECK(t[0] == SimpleType{"n", 1});
  CHECK(t[1] == SimpleType{"s", 0});
  CHECK(t[2] == SimpleType{"n", -1});
  CHECK(parse_type("n.l.r")[0] == SimpleType{"n", 0});
  CHECK(parse_type("  s.r.r ")[0] == SimpleType{"s", 2});
  CHECK(format_type(parse_type("n.r  s\tn.l")) == "n.r s n.l");
  CHECK(format_simple({"n", -2}) == "n.l.l");
}

TEST_CASE("parse_type errors") {
  CHECK_THROWS_AS(parse_type(""), SyntaxError);
  CHECK_THROWS_AS(parse_type("n..r"), SyntaxError);
  CHECK_THROWS_AS(parse_type("n.x"), SyntaxError);
  CHECK_THROWS_AS(parse_type("n s,"), SyntaxError);
  const std::set<std::string> known{"n", "s"};
  CHECK_THROWS_AS(parse_type("n p", &known), UnknownBaseSymbol);
  CHECK_NOTHROW(parse_type("n s.l", &known));
}

TEST_CASE("adjoints of products reverse the order") {
  CHECK(format_type(adjoint_right(parse_type("n.r s"))) == "s.r n.r.r");
  CHECK(format_type(adjoint_left(parse_type("n.r s"))) == "s.l n");
  std::mt19937 gen(7);
  for (int trial = 0; trial < 100; ++trial) {
    PregroupType t;
    const int len = 1 + static_cast<int>(gen() % 5);
    for (int k = 0; k < len; ++k) {
      t.simples.push_back({gen() % 2 ? "n" : "s", static_cast<int>(gen() % 5) - 2});
    }
    CHECK(adjoint_left(adjoint_right(t)) == t);
    CHECK(adjoint_right(adjoint_left(t)) == t);
    CHECK(format_type(parse_type(format_type(t))) == format_type(t));
  }
}

TEST_CASE("coordinator types") {
  CHECK(format_type(coordinator_type(parse_type("n"))) == "n.r n n.l");
  CHECK(format_type(coordinator_type(parse_type("n.r s"))) == "s.r n.r.r n.r s s.l n");
  CHECK_THROWS_AS(coordinator_type(PregroupType{}), EmptyType);
  PregroupType x;
  CHECK(is_coordinator_type(parse_type("s.r n.r.r n.r s s.l n"), &x));
  CHECK(format_type(x) == "n.r s");
  CHECK_FALSE(is_coordinator_type(parse_type("n.r s n.l")));
  CHECK_FALSE(is_coordinator_type(parse_type("n")));
}

TEST_CASE("Mary likes musicals reduces with the expected links") {
  const auto d = reduce(types({"n", "n.r s n.l", "n"}), parse_type("s"));
  REQUIRE(d);
  CHECK(d->links == links({{0, 1}, {3, 4}}));
  CHECK(d->residual == std::vector<std::size_t>{2});
  CHECK(format_links(*d) == "(0.0–1.0) (1.2–2.0)");
  CHECK_FALSE(find_derivation_violation(*d));
  CHECK(d->locate(3) == TokenWire{1, 2});
  CHECK(d->flat_index({2, 0}) == 4);
}

TEST_CASE("John sleeps and ungrammatical orders") {
  const auto d = reduce(types({"n", "n.r s"}), parse_type("s"));
  REQUIRE(d);
  CHECK(d->links == links({{0, 1}}));
  CHECK_FALSE(reduce(types({"n.r s n.l", "n"}), parse_type("s")));
  CHECK_FALSE(reduce(types({"n", "n.r s"}), parse_type("n")));
  CHECK_THROWS_AS(reduce({}, parse_type("s")), EmptyType);
}

TEST_CASE("reduction to the unit yields a scalar derivation") {
  const auto d = reduce(types({"n.l", "n"}), PregroupType{});
  REQUIRE(d);
  CHECK(d->residual.empty());
  CHECK(d->links == links({{0, 1}}));
}

TEST_CASE("find_derivation_violation flags broken derivations") {
  Derivation d;
  d.token_types = types({"n", "n.r", "n", "n.r"});
  d.links = links({{0, 3}, {1, 2}});
  CHECK(find_derivation_violation(d));  // n.r then n does not contract
  d.token_types = types({"n", "n", "n.r", "n.r"});
  d.links = links({{0, 2}, {1, 3}});
  CHECK(find_derivation_violation(d));  // crossing
  d.links = links({{0, 3}, {1, 2}});
  CHECK_FALSE(find_derivation_violation(d));
  d.token_types = types({"n", "s", "n.r"});
  d.links = links({{0, 2}});
  d.residual = {1};
  CHECK(find_derivation_violation(d));  // residual under a cup
}

TEST_CASE("enumerate_reductions agrees with a brute-force matching enumerator") {
  std::mt19937 gen(2024);
  std::size_t grammatical = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<PregroupType> toks;
    std::size_t total = 0;
    const std::size_t want = 1 + gen() % 10;
    while (total < want) {
      PregroupType t;
      const std::size_t len = std::min<std::size_t>(1 + gen() % 3, want - total);
      for (std::size_t k = 0; k < len; ++k) {
        t.simples.push_back({gen() % 2 ? "n" : "s", static_cast<int>(gen() % 5) - 2});
      }
      total += len;
      toks.push_back(t);
    }
    PregroupType target;
    if (gen() % 4 != 0) target.simples.push_back({gen() % 2 ? "n" : "s", 0});

    const auto expected = oracle::brute_force_reductions(flatten(toks), target.simples);
    const auto got = enumerate_reductions(toks, target, 1 << 20);
    REQUIRE(got.size() == expected.size());
    for (std::size_t k = 0; k < got.size(); ++k) {
      CHECK(as_pairs(got[k]) == expected[k]);
      CHECK_FALSE(find_derivation_violation(got[k]));
    }
    const auto canonical = reduce(toks, target);
    CHECK(canonical.has_value() == !expected.empty());
    if (canonical) {
      ++grammatical;
      CHECK(as_pairs(*canonical) == expected.front());
    }
  }
  CHECK(grammatical > 0);
}

TEST_CASE("enumerate_reductions honours the cap") {
  const auto toks = types({"n", "n.r n n.r", "n", "n.r"});
  const auto all = enumerate_reductions(toks, PregroupType{}, 100);
  REQUIRE(all.size() >= 1);
  CHECK(enumerate_reductions(toks, PregroupType{}, 1).size() == 1);
  CHECK_THROWS_AS(enumerate_reductions(toks, PregroupType{}, 0), ArityError);
}

TEST_CASE("ascii diagram lists words, types and cups") {
  const auto d = reduce(types({"n", "n.r s n.l", "n"}), parse_type("s"));
  const auto text = ascii_diagram(*d, {"mary", "likes", "musicals"});
  CHECK(text.find("mary") != std::string::npos);
  CHECK(text.find("n.r") != std::string::npos);
  CHECK(text.find('+') != std::string::npos);
}
