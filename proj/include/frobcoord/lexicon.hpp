#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "frobcoord/coordination.hpp"
#include "frobcoord/errors.hpp"
#include "frobcoord/network.hpp"
#include "frobcoord/pregroup.hpp"
#include "frobcoord/tensor.hpp"

namespace frobcoord {

/// SplitMix64 stream. Unit draws take the top 53 bits, so every platform
/// produces the same doubles in [0, 1).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi].
  std::size_t next_index(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(next() % (hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

/// Real entries are unit draws; boolean entries threshold the same draw at 0.5.
template <Semiring S>
Tensor<S> random_tensor(std::vector<Wire> wires, SplitMix64& rng) {
  auto t = Tensor<S>::zeros(std::move(wires));
  for (auto& v : t.mutable_data()) {
    const double u = rng.next_unit();
    if constexpr (std::is_same_v<S, BooleanSemiring>) {
      v = u >= 0.5 ? 1 : 0;
    } else {
      v = static_cast<typename S::value_type>(u);
    }
  }
  return t;
}

enum class SemiringKind { real, boolean };

std::string_view semiring_name(SemiringKind kind);

struct ConjSpec {
  friend bool operator==(const ConjSpec&, const ConjSpec&) = default;
};
struct IdentitySpec {
  friend bool operator==(const IdentitySpec&, const IdentitySpec&) = default;
};
struct RandomSpec {
  std::uint64_t seed = 0;
  friend bool operator==(const RandomSpec&, const RandomSpec&) = default;
};
using LiteralSpec = std::vector<double>;
using TensorSpec = std::variant<LiteralSpec, ConjSpec, RandomSpec, IdentitySpec>;

std::string format_spec(const TensorSpec& spec);

struct LexiconEntry {
  std::string word;
  PregroupType type;
  TensorSpec spec;
  std::size_t line = 0;  // source line, 0 when not read from a file

  friend bool operator==(const LexiconEntry& a, const LexiconEntry& b) {
    return a.word == b.word && a.type == b.type && a.spec == b.spec;
  }
};

/// The textual lexicon before tensors are realized.
struct LexiconFile {
  std::vector<std::pair<std::string, std::size_t>> basic_types;
  SemiringKind semiring = SemiringKind::real;
  std::vector<LexiconEntry> entries;

  SpaceAssignment spaces() const;

  friend bool operator==(const LexiconFile&, const LexiconFile&) = default;
};

/// Parses the line format:
///   #semiring real|bool
///   #type <symbol> <dim>
///   <word> : <type> = [v, ...] | @conj | @random(<seed>) | @identity
/// Blank lines and other lines starting with '#' are skipped.
LexiconFile parse_lexicon(std::string_view text);

/// Serializes with 17 significant digits so that parse_lexicon inverts it.
std::string format_lexicon(const LexiconFile& file);

LexiconFile read_lexicon_file(const std::filesystem::path& path);
void save_lexicon(const LexiconFile& file, const std::filesystem::path& path);

template <Semiring S>
struct LexiconWord {
  std::string word;
  PregroupType type;
  Tensor<S> meaning;
  bool coordinator = false;
};

/// Realized word meanings, immutable once built.
template <Semiring S>
class Lexicon {
 public:
  Lexicon() = default;
  Lexicon(SpaceAssignment spaces, std::vector<LexiconWord<S>> words)
      : spaces_(std::move(spaces)), words_(std::move(words)) {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      check_token_wires(k, words_[k].type, words_[k].meaning, spaces_);
    }
  }

  const SpaceAssignment& spaces() const noexcept { return spaces_; }
  const std::vector<LexiconWord<S>>& words() const noexcept { return words_; }

  const LexiconWord<S>* find(std::string_view word, const PregroupType& type) const {
    for (const auto& w : words_) {
      if (w.word == word && w.type == type) return &w;
    }
    return nullptr;
  }

  /// Entries for a word in declaration order.
  std::vector<const LexiconWord<S>*> candidates(std::string_view word) const {
    std::vector<const LexiconWord<S>*> out;
    for (const auto& w : words_) {
      if (w.word == word) out.push_back(&w);
    }
    return out;
  }

 private:
  SpaceAssignment spaces_;
  std::vector<LexiconWord<S>> words_;
};

namespace detail {

template <Semiring S>
Tensor<S> realize_entry(const LexiconEntry& e, const SpaceAssignment& spaces) {
  auto wires = spaces.wires(e.type);
  const std::size_t volume = Tensor<S>::volume(wires);
  const std::string who = "word '" + e.word + "'";
  const std::string where = who + " (line " + std::to_string(e.line) + ")";
  return std::visit(
      [&](const auto& spec) -> Tensor<S> {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, LiteralSpec>) {
          if (spec.size() != volume) {
            throw DimMismatch(where + ": " + std::to_string(spec.size()) + " values, type " +
                              format_type(e.type) + " needs " + std::to_string(volume));
          }
          std::vector<typename S::value_type> data;
          data.reserve(spec.size());
          for (double v : spec) {
            if constexpr (std::is_same_v<S, BooleanSemiring>) {
              if (v != 0.0 && v != 1.0) {
                throw ParseError(who + ": boolean lexicon values must be 0 or 1", e.line);
              }
            }
            data.push_back(static_cast<typename S::value_type>(v));
          }
          return Tensor<S>(std::move(wires), std::move(data));
        } else if constexpr (std::is_same_v<T, ConjSpec>) {
          PregroupType x;
          if (!is_coordinator_type(e.type, &x)) {
            throw ParseError(who + ": @conj needs a type of the form x^r x x^l", e.line);
          }
          return coordinator_tensor<S>(x, spaces);
        } else if constexpr (std::is_same_v<T, RandomSpec>) {
          SplitMix64 rng(spec.seed);
          return random_tensor<S>(std::move(wires), rng);
        } else {
          if (wires.size() != 2 || wires[0].dim != wires[1].dim) {
            throw DimMismatch(where + ": @identity needs a square order-2 type");
          }
          const std::size_t d = wires[0].dim;
          auto t = Tensor<S>::zeros(std::move(wires));
          for (std::size_t k = 0; k < d; ++k) t.mutable_data()[k * d + k] = S::one();
          return t;
        }
      },
      e.spec);
}

}  // namespace detail

template <Semiring S>
Lexicon<S> realize(const LexiconFile& file) {
  const auto spaces = file.spaces();
  std::vector<LexiconWord<S>> words;
  for (const auto& e : file.entries) {
    words.push_back({e.word, e.type, detail::realize_entry<S>(e, spaces),
                     std::holds_alternative<ConjSpec>(e.spec)});
  }
  return Lexicon<S>(spaces, std::move(words));
}

using AnyLexicon = std::variant<Lexicon<RealSemiring>, Lexicon<BooleanSemiring>>;

AnyLexicon realize_any(const LexiconFile& file);
AnyLexicon load_lexicon(const std::filesystem::path& path);

/// Literal specs for every word except coordinators, which stay `@conj`.
template <Semiring S>
LexiconFile to_lexicon_file(const Lexicon<S>& lex) {
  LexiconFile file;
  file.semiring = std::is_same_v<S, BooleanSemiring> ? SemiringKind::boolean : SemiringKind::real;
  for (const auto& [sym, d] : lex.spaces().entries()) file.basic_types.push_back({sym, d});
  for (const auto& w : lex.words()) {
    TensorSpec spec = ConjSpec{};
    if (!w.coordinator) {
      LiteralSpec values;
      for (auto v : w.meaning.data()) values.push_back(static_cast<double>(v));
      spec = std::move(values);
    }
    file.entries.push_back({w.word, w.type, std::move(spec), 0});
  }
  return file;
}

struct GrammarEntry {
  std::string word;
  PregroupType type;
  bool coordinator = false;
};

/// Draws every non-coordinator meaning from one stream seeded with `seed`,
/// in grammar order.
template <Semiring S>
Lexicon<S> generate_random_lexicon(const std::vector<GrammarEntry>& grammar,
                                   const SpaceAssignment& spaces, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<LexiconWord<S>> words;
  for (const auto& g : grammar) {
    if (g.coordinator) {
      PregroupType x;
      if (!is_coordinator_type(g.type, &x)) {
        throw TypeMismatch("'" + g.word + "' is a coordinator but has type " + format_type(g.type));
      }
      words.push_back({g.word, g.type, coordinator_tensor<S>(x, spaces), true});
    } else {
      words.push_back({g.word, g.type, random_tensor<S>(spaces.wires(g.type), rng), false});
    }
  }
  return Lexicon<S>(spaces, std::move(words));
}

}  // namespace frobcoord
