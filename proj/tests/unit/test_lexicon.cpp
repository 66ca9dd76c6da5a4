#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "frobcoord/lexicon.hpp"
#include "support/oracles.hpp"

using namespace frobcoord;

namespace {

const char* kToy = R"(# toy
#semiring real
#type n 2
#type s 2

mary : n = [1, 0]
likes : n.r s n.l = [1, 0.5, 0.25, 0, 0, 0, 0, 1]
and : n.r n n.l = @conj
ball : n = @random(42)
id : n.r n = @identity
)";

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("SplitMix64 matches the reference stream") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xe220a8397b1dcdafULL);
  CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
  SplitMix64 unit(0);
  CHECK(unit.next_unit() == static_cast<double>(0xe220a8397b1dcdafULL >> 11) * 0x1.0p-53);
  SplitMix64 idx(5);
  for (int k = 0; k < 100; ++k) {
    const auto v = idx.next_index(2, 4);
    CHECK(v >= 2);
    CHECK(v <= 4);
  }
}

TEST_CASE("parse_lexicon reads directives and entries") {
  const auto file = parse_lexicon(kToy);
  CHECK(file.semiring == SemiringKind::real);
  REQUIRE(file.basic_types.size() == 2);
  CHECK(file.basic_types[0] == std::pair<std::string, std::size_t>{"n", 2});
  REQUIRE(file.entries.size() == 5);
  CHECK(file.entries[1].word == "likes");
  CHECK(format_type(file.entries[1].type) == "n.r s n.l");
  CHECK(std::get<LiteralSpec>(file.entries[1].spec)[1] == 0.5);
  CHECK(std::holds_alternative<ConjSpec>(file.entries[2].spec));
  CHECK(std::get<RandomSpec>(file.entries[3].spec).seed == 42);
  CHECK(std::holds_alternative<IdentitySpec>(file.entries[4].spec));
  CHECK(file.entries[1].line == 7);
}

TEST_CASE("lexicon text round-trips exactly") {
  auto file = parse_lexicon(kToy);
  SplitMix64 rng(9);
  LiteralSpec awkward;
  for (int k = 0; k < 4; ++k) awkward.push_back(rng.next_unit() * 1e-7 - 3.0 / 7.0);
  file.entries.push_back({"odd", parse_type("n.r n"), awkward, 0});
  const auto again = parse_lexicon(format_lexicon(file));
  CHECK(again.semiring == file.semiring);
  CHECK(again.basic_types == file.basic_types);
  CHECK(again.entries == file.entries);
  CHECK(format_lexicon(again) == format_lexicon(file));
}

TEST_CASE("realize builds typed meanings") {
  const auto lex = realize<RealSemiring>(parse_lexicon(kToy));
  const auto* likes = lex.find("likes", parse_type("n.r s n.l"));
  REQUIRE(likes);
  CHECK(likes->meaning.wires()[0] == Wire{"n", 1, 2});
  CHECK(likes->meaning.at({0, 0, 1}) == 0.5);
  const auto* conj = lex.find("and", parse_type("n.r n n.l"));
  REQUIRE(conj);
  CHECK(conj->coordinator);
  CHECK(approx_equal(conj->meaning, coordinator_tensor<RealSemiring>(parse_type("n"), lex.spaces())));
  SplitMix64 rng(42);
  CHECK(approx_equal(lex.find("ball", parse_type("n"))->meaning,
                     random_tensor<RealSemiring>({{"n", 0, 2}}, rng)));
  const auto& id = lex.find("id", parse_type("n.r n"))->meaning;
  CHECK(oracle::same_entries(id, {1, 0, 0, 1}));
  CHECK(lex.candidates("mary").size() == 1);
  CHECK(lex.candidates("nobody").empty());
}

TEST_CASE("boolean lexica threshold random draws and reject fractions") {
  const auto file = parse_lexicon("#semiring bool\n#type n 8\nx : n = @random(3)\n");
  const auto lex = realize<BooleanSemiring>(file);
  SplitMix64 rng(3);
  for (auto v : lex.words()[0].meaning.data()) CHECK(v == (rng.next_unit() >= 0.5 ? 1 : 0));
  CHECK_THROWS_AS(realize<BooleanSemiring>(parse_lexicon("#semiring bool\n#type n 2\nx : n = [1, 0.5]\n")),
                  ParseError);
  CHECK(std::holds_alternative<Lexicon<BooleanSemiring>>(realize_any(file)));
}

TEST_CASE("lexicon errors name the offending line or word") {
  CHECK_THROWS_AS(parse_lexicon("#type n 2\nx : n p = [1,2]\n"), UndeclaredSymbol);
  CHECK(message_of([] { parse_lexicon("#type n 2\nx : n p = [1,2]\n"); }).find("'x'") !=
        std::string::npos);
  CHECK_THROWS_AS(parse_lexicon("#type n 2\nx n = [1,2]\n"), ParseError);
  CHECK(message_of([] { parse_lexicon("#type n 2\n\nx n = [1,2]\n"); }).find("line 3") !=
        std::string::npos);
  CHECK_THROWS_AS(parse_lexicon("#type n 2\nx : n = [1,,2]\n"), ParseError);
  CHECK_THROWS_AS(parse_lexicon("#type n 2\nx : n = @magic\n"), ParseError);
  CHECK_THROWS_AS(parse_lexicon("#type n 0\n"), ParseError);
  CHECK_THROWS_AS(parse_lexicon("#type n 2\n#type n 3\n"), ParseError);
  CHECK_THROWS_AS(parse_lexicon("#semiring complex\n"), ParseError);
  CHECK_THROWS_AS(parse_lexicon("#type n 2\nx : n = [1,2]\nx : n = [3,4]\n"), ParseError);
  CHECK_NOTHROW(parse_lexicon("#type n 2\nx : n = [1,2]\nx : n.r = [3,4]\n"));
  CHECK_THROWS_AS(realize<RealSemiring>(parse_lexicon("#type n 2\nx : n = [1,2,3]\n")), DimMismatch);
  CHECK(message_of([] { realize<RealSemiring>(parse_lexicon("#type n 2\nx : n = [1,2,3]\n")); })
            .find("'x'") != std::string::npos);
  CHECK_THROWS_AS(realize<RealSemiring>(parse_lexicon("#type n 2\nx : n n = @conj\n")), ParseError);
  CHECK_THROWS_AS(realize<RealSemiring>(parse_lexicon("#type n 2\n#type s 3\nx : n s = @identity\n")),
                  DimMismatch);
}

TEST_CASE("lexicon files on disk") {
  const auto dir = std::filesystem::temp_directory_path() / "frobcoord_lexicon_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "toy.lex";
  save_lexicon(parse_lexicon(kToy), path);
  CHECK(read_lexicon_file(path).entries == parse_lexicon(kToy).entries);
  CHECK(std::holds_alternative<Lexicon<RealSemiring>>(load_lexicon(path)));
  CHECK_THROWS_AS(read_lexicon_file(dir / "missing.lex"), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("random lexica are reproducible and survive serialization") {
  const SpaceAssignment spaces{{"n", 3}, {"s", 2}};
  const std::vector<GrammarEntry> grammar{{"john", parse_type("n"), false},
                                          {"sleeps", parse_type("n.r s"), false},
                                          {"and", parse_type("s.r n.r.r n.r s s.l n"), true},
                                          {"snores", parse_type("n.r s"), false}};
  const auto a = generate_random_lexicon<RealSemiring>(grammar, spaces, 77);
  const auto b = generate_random_lexicon<RealSemiring>(grammar, spaces, 77);
  const auto c = generate_random_lexicon<RealSemiring>(grammar, spaces, 78);
  CHECK(a.words()[3].meaning.data()[0] == b.words()[3].meaning.data()[0]);
  CHECK_FALSE(approx_equal(a.words()[0].meaning, c.words()[0].meaning));

  const auto file = to_lexicon_file(a);
  CHECK(std::holds_alternative<ConjSpec>(file.entries[2].spec));
  const auto back = realize<RealSemiring>(parse_lexicon(format_lexicon(file)));
  for (std::size_t k = 0; k < a.words().size(); ++k) {
    const auto& x = a.words()[k].meaning;
    const auto& y = back.words()[k].meaning;
    CHECK(std::equal(x.data().begin(), x.data().end(), y.data().begin(), y.data().end()));
  }
  CHECK_THROWS_AS(generate_random_lexicon<RealSemiring>({{"and", parse_type("n s"), true}}, spaces, 1),
                  TypeMismatch);
}
