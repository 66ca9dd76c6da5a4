#include "doctest.h"

#include "frobcoord/format.hpp"
#include "frobcoord/lexicon.hpp"
#include "frobcoord/sentence.hpp"
#include "support/oracles.hpp"

using namespace frobcoord;

namespace {

const char* kLexicon = R"(#semiring real
#type n 2
#type s 2
john : n = [0.6, 0.8]
mary : n = [1, 0]
musicals : n = [0.3, 0.7]
likes : n.r s n.l = [1, 0.5, 0.2, 0.1, 0.4, 0.9, 0.3, 0.8]
sleeps : n.r s = [0.9, 0.1, 0.4, 0.6]
snores : n.r s = [0.2, 0.7, 0.5, 0.5]
and : n.r n n.l = @conj
and : s.r n.r.r n.r s s.l n = @conj
)";

}  // namespace

TEST_CASE("read_words picks the grammatical type assignment") {
  const auto lex = realize<RealSemiring>(parse_lexicon(kLexicon));
  const std::vector<std::string> words{"john", "sleeps", "and", "snores"};
  const auto reading = read_words<RealSemiring>(words, lex, parse_type("s"));
  REQUIRE(reading);
  CHECK(format_type(reading->words[2]->type) == "s.r n.r.r n.r s s.l n");

  const std::vector<std::string> bad{"likes", "mary"};
  CHECK_FALSE(read_words<RealSemiring>(bad, lex, parse_type("s")));
  const std::vector<std::string> unknown{"john", "runs"};
  CHECK_THROWS_AS(read_words<RealSemiring>(unknown, lex, parse_type("s")), UnknownWord);
}

TEST_CASE("sentence meanings by hand") {
  const auto lex = realize<RealSemiring>(parse_lexicon(kLexicon));
  const std::vector<SentenceToken> sleeps{{"john", "n"}, {"sleeps", "n.r s"}};
  const auto v = evaluate_sentence<RealSemiring>(sleeps, lex, "s", EvalMode::explicit_network);
  CHECK(oracle::same_entries(v, {0.6 * 0.9 + 0.8 * 0.4, 0.6 * 0.1 + 0.8 * 0.6}));

  const std::vector<SentenceToken> both{
      {"john", "n"}, {"sleeps", "n.r s"}, {"and", "s.r n.r.r n.r s s.l n"}, {"snores", "n.r s"}};
  const std::vector<double> expected{0.6 * 0.9 * 0.2 + 0.8 * 0.4 * 0.5,
                                     0.6 * 0.1 * 0.7 + 0.8 * 0.6 * 0.5};
  for (auto mode : {EvalMode::explicit_network, EvalMode::closed_form}) {
    CHECK(oracle::same_entries(evaluate_sentence<RealSemiring>(both, lex, "s", mode), expected));
  }
  CHECK(format_plain(evaluate_sentence<RealSemiring>(both, lex, "s", EvalMode::closed_form)) ==
        "0.268 0.282");

  const std::vector<SentenceToken> likes{{"mary", "n"}, {"likes", "n.r s n.l"}, {"musicals", "n"}};
  // mary = e_0, so only likes[0, s, j] contributes.
  CHECK(oracle::same_entries(evaluate_sentence<RealSemiring>(likes, lex, "s", EvalMode::closed_form),
                             {1 * 0.3 + 0.5 * 0.7, 0.2 * 0.3 + 0.1 * 0.7}));
}

TEST_CASE("typed sentence errors") {
  const auto lex = realize<RealSemiring>(parse_lexicon(kLexicon));
  const std::vector<SentenceToken> unknown{{"john", "n"}, {"sleeps", "n.r s n.l"}};
  CHECK_THROWS_AS(evaluate_sentence<RealSemiring>(unknown, lex, "s", EvalMode::explicit_network),
                  UnknownWord);
  const std::vector<SentenceToken> ungrammatical{{"sleeps", "n.r s"}, {"john", "n"}};
  CHECK_THROWS_AS(
      evaluate_sentence<RealSemiring>(ungrammatical, lex, "s", EvalMode::explicit_network),
      UngrammaticalSentence);
  CHECK_THROWS_AS(evaluate_sentence<RealSemiring>({}, lex, "s", EvalMode::explicit_network),
                  UngrammaticalSentence);
  CHECK_THROWS_AS(evaluate_sentence<RealSemiring>(unknown, lex, "q", EvalMode::explicit_network),
                  UnknownBaseSymbol);
}
