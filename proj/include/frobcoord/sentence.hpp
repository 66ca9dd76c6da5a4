#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "frobcoord/coordination.hpp"
#include "frobcoord/lexicon.hpp"
#include "frobcoord/network.hpp"
#include "frobcoord/pregroup.hpp"

namespace frobcoord {

struct SentenceToken {
  std::string word;
  std::string type;
};

/// A grammatical reading: the chosen lexicon entry per token and its derivation.
template <Semiring S>
struct Reading {
  std::vector<const LexiconWord<S>*> words;
  Derivation derivation;
};

/// Contracts a reading's meanings along its derivation.
template <Semiring S>
Tensor<S> evaluate_reading(const Reading<S>& reading, const SpaceAssignment& spaces,
                           EvalMode mode) {
  std::vector<Tensor<S>> tensors;
  std::vector<bool> coordinator;
  for (const auto* w : reading.words) {
    tensors.push_back(w->meaning);
    coordinator.push_back(w->coordinator);
  }
  if (mode == EvalMode::closed_form) {
    return evaluate_closed_form(reading.derivation, std::move(tensors), std::move(coordinator),
                                spaces);
  }
  return evaluate(build_network(reading.derivation, std::move(tensors), spaces));
}

/// Looks up each (word, type) token and reduces the sentence to `target`.
template <Semiring S>
Reading<S> read_typed(std::span<const SentenceToken> tokens, const Lexicon<S>& lexicon,
                      const PregroupType& target) {
  Reading<S> reading;
  std::vector<PregroupType> types;
  const auto symbols = lexicon.spaces().symbols();
  for (const auto& tok : tokens) {
    const auto type = parse_type(tok.type, &symbols);
    const auto* w = lexicon.find(tok.word, type);
    if (w == nullptr) throw UnknownWord("no entry for '" + tok.word + "' with type " + tok.type);
    reading.words.push_back(w);
    types.push_back(type);
  }
  if (types.empty()) throw UngrammaticalSentence("empty sentence");
  auto d = reduce(types, target);
  if (!d) throw UngrammaticalSentence("sentence does not reduce to " + format_type(target));
  reading.derivation = std::move(*d);
  return reading;
}

/// Picks a type for each word from its lexicon entries: the first assignment,
/// in declaration order with the last word varying fastest, that reduces to
/// `target`. Throws UnknownWord for words with no entry; returns nothing when
/// no assignment among the first `max_assignments` is grammatical.
template <Semiring S>
std::optional<Reading<S>> read_words(std::span<const std::string> words, const Lexicon<S>& lexicon,
                                     const PregroupType& target,
                                     std::size_t max_assignments = 1 << 16) {
  if (words.empty()) return std::nullopt;
  std::vector<std::vector<const LexiconWord<S>*>> choices;
  for (const auto& w : words) {
    auto c = lexicon.candidates(w);
    if (c.empty()) throw UnknownWord("unknown word '" + w + "'");
    choices.push_back(std::move(c));
  }
  std::vector<std::size_t> pick(words.size(), 0);
  for (std::size_t tried = 0; tried < max_assignments; ++tried) {
    std::vector<PregroupType> types;
    for (std::size_t k = 0; k < words.size(); ++k) types.push_back(choices[k][pick[k]]->type);
    if (auto d = reduce(types, target)) {
      Reading<S> r;
      for (std::size_t k = 0; k < words.size(); ++k) r.words.push_back(choices[k][pick[k]]);
      r.derivation = std::move(*d);
      return r;
    }
    std::size_t k = words.size();
    while (k-- > 0) {
      if (++pick[k] < choices[k].size()) break;
      pick[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return std::nullopt;
}

/// parse_type → reduce → build_network → evaluate. In closed-form mode every
/// coordinator is replaced by the element-wise product of its conjuncts.
template <Semiring S>
Tensor<S> evaluate_sentence(std::span<const SentenceToken> tokens, const Lexicon<S>& lexicon,
                            std::string_view target, EvalMode mode) {
  const auto symbols = lexicon.spaces().symbols();
  const auto reading = read_typed(tokens, lexicon, parse_type(target, &symbols));
  return evaluate_reading(reading, lexicon.spaces(), mode);
}

}  // namespace frobcoord
