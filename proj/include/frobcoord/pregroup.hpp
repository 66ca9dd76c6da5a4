#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace frobcoord {

/// An atomic type with an integer adjoint order: 0 plain, +k the k-th right
/// adjoint, -k the k-th left adjoint.
struct SimpleType {
  std::string base;
  int adjoint = 0;

  SimpleType left_adjoint() const { return {base, adjoint - 1}; }
  SimpleType right_adjoint() const { return {base, adjoint + 1}; }

  friend bool operator==(const SimpleType&, const SimpleType&) = default;
  friend auto operator<=>(const SimpleType&, const SimpleType&) = default;
};

/// A product of simple types; the empty product is the unit.
struct PregroupType {
  std::vector<SimpleType> simples;

  std::size_t size() const noexcept { return simples.size(); }
  bool empty() const noexcept { return simples.empty(); }
  const SimpleType& operator[](std::size_t k) const { return simples[k]; }
  auto begin() const noexcept { return simples.begin(); }
  auto end() const noexcept { return simples.end(); }

  friend bool operator==(const PregroupType&, const PregroupType&) = default;
};

PregroupType concat(const PregroupType& a, const PregroupType& b);

/// (a·b)^r = b^r·a^r
PregroupType adjoint_right(const PregroupType& t);
/// (a·b)^l = b^l·a^l
PregroupType adjoint_left(const PregroupType& t);

/// The type x^r·x·x^l of a word coordinating two phrases of type x.
PregroupType coordinator_type(const PregroupType& x);

/// True when t has the shape x^r·x·x^l for some non-empty x; stores x in `conjunct`.
bool is_coordinator_type(const PregroupType& t, PregroupType* conjunct = nullptr);

/// Parses whitespace-separated simples, each an identifier followed by any
/// number of `.l` / `.r` marks. Marks apply left to right. When `known_bases`
/// is given, every base must be a member of it.
PregroupType parse_type(std::string_view text, const std::set<std::string>* known_bases = nullptr);

std::string format_type(const PregroupType& t);
std::string format_simple(const SimpleType& s);

/// A contraction p^(z)·p^(z+1) <= 1 between two flattened positions, left < right.
struct Link {
  std::size_t left = 0;
  std::size_t right = 0;

  friend bool operator==(const Link&, const Link&) = default;
  friend auto operator<=>(const Link&, const Link&) = default;
};

/// Where a flattened simple-type position lives: token index and wire within the token.
struct TokenWire {
  std::size_t token = 0;
  std::size_t wire = 0;

  friend bool operator==(const TokenWire&, const TokenWire&) = default;
};

/// A planar contraction-only reduction of a token sequence.
struct Derivation {
  std::vector<PregroupType> token_types;
  std::vector<Link> links;  // sorted
  std::vector<std::size_t> residual;

  std::vector<SimpleType> flattened() const;
  TokenWire locate(std::size_t flat) const;
  std::size_t flat_index(TokenWire tw) const;
  PregroupType residual_type() const;

  friend bool operator==(const Derivation&, const Derivation&) = default;
};

/// Whether two flattened simples may be contracted with `left` preceding `right`.
bool can_contract(const SimpleType& left, const SimpleType& right);

/// Describes the first broken invariant, or nothing for a valid derivation:
/// disjoint sorted links, each contractible, no two links crossing, no residual
/// position nested under a link, residual exactly the unlinked positions.
std::optional<std::string> find_derivation_violation(const Derivation& d);

/// The canonical derivation of `target`, or nothing when the tokens do not
/// reduce to it. Among all reductions the canonical one has the
/// lexicographically smallest sorted link list: scanning left to right, each
/// position takes the nearest partner that still allows completion.
std::optional<Derivation> reduce(const std::vector<PregroupType>& tokens,
                                 const PregroupType& target);

/// Every reduction of the tokens to `target` in lexicographic order of link
/// lists, stopping after `cap`.
std::vector<Derivation> enumerate_reductions(const std::vector<PregroupType>& tokens,
                                             const PregroupType& target, std::size_t cap);

/// `(t.w–t.w)` notation, flattened positions written as token.wire.
std::string format_links(const Derivation& d);

/// Cups drawn as nested brackets beneath the token line.
std::string ascii_diagram(const Derivation& d, const std::vector<std::string>& words);

}  // namespace frobcoord
