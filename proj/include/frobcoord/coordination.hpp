#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "frobcoord/errors.hpp"
#include "frobcoord/network.hpp"
#include "frobcoord/pregroup.hpp"
#include "frobcoord/tensor.hpp"

namespace frobcoord {

enum class EvalMode { explicit_network, closed_form };

/// Wire layout of the coordinator for conjunct type x: wires of x^r·x·x^l.
struct CoordinatorSpec {
  PregroupType conjunct_type;
  std::vector<Wire> wire_layout;
};

inline CoordinatorSpec coordinator_spec(const PregroupType& x, const SpaceAssignment& spaces) {
  return {x, spaces.wires(coordinator_type(x))};
}

/// The coordinator state (1 ⊗ μ ⊗ 1)∘(η^r ⊗ η^l) in X^r ⊗ X ⊗ X^l.
///
/// Atomic factor f of x owns one 3-way copy spider joining position k-1-f of
/// the X^r block, position f of the X block, and position k-1-f of the X^l
/// block (k = |x|); the adjoint blocks list factors in reverse. The tensor is
/// written directly rather than by evaluating the cap-and-merge network.
template <Semiring S>
Tensor<S> coordinator_tensor(const PregroupType& x, const SpaceAssignment& spaces) {
  if (x.empty()) throw EmptyType("coordinator_tensor needs a non-empty conjunct type");
  auto spec = coordinator_spec(x, spaces);
  const std::size_t k = x.size();
  const auto strides = Tensor<S>::row_major_strides(spec.wire_layout);
  std::vector<std::size_t> step(k), dims(k);
  for (std::size_t f = 0; f < k; ++f) {
    step[f] = strides[k - 1 - f] + strides[k + f] + strides[3 * k - 1 - f];
    dims[f] = spec.wire_layout[k + f].dim;
  }
  auto t = Tensor<S>::zeros(std::move(spec.wire_layout));
  for (auto off : detail::offsets(dims, step)) t.mutable_data()[off] = S::one();
  return t;
}

/// Closed form of coordinating two meanings of one type: their element-wise product.
template <Semiring S>
Tensor<S> coordinate_closed_form(const Tensor<S>& a, const Tensor<S>& b) {
  return frobenius_mu(a, b);
}

/// "x1, x2, ... and xk": binary coordination folded from the left.
template <Semiring S>
Tensor<S> coordinate_fold(std::span<const Tensor<S>> conjuncts) {
  if (conjuncts.empty()) throw ArityError("coordinate_fold needs at least one conjunct");
  Tensor<S> acc = conjuncts.front();
  for (std::size_t k = 1; k < conjuncts.size(); ++k) acc = coordinate_closed_form(acc, conjuncts[k]);
  return acc;
}

namespace detail {

inline std::vector<std::size_t> token_starts(const Derivation& d) {
  std::vector<std::size_t> start(d.token_types.size() + 1, 0);
  for (std::size_t t = 0; t < d.token_types.size(); ++t) {
    start[t + 1] = start[t] + d.token_types[t].size();
  }
  return start;
}

inline std::size_t token_of(const std::vector<std::size_t>& start, std::size_t flat) {
  auto it = std::upper_bound(start.begin(), start.end(), flat);
  return static_cast<std::size_t>(it - start.begin()) - 1;
}

constexpr std::size_t kNoPartner = static_cast<std::size_t>(-1);

}  // namespace detail

/// Contracts a derivation with every coordinator node replaced by the
/// element-wise product of its two evaluated conjuncts. Each conjunct is the
/// contiguous run of tokens linked to the coordinator's outer blocks, closed
/// under links; nested coordinators inside a conjunct are handled recursively.
template <Semiring S>
Tensor<S> evaluate_closed_form(const Derivation& d, std::vector<Tensor<S>> tensors,
                               std::vector<bool> coordinator, const SpaceAssignment& spaces) {
  const auto c_it = std::find(coordinator.begin(), coordinator.end(), true);
  if (c_it == coordinator.end()) return evaluate(build_network(d, std::move(tensors), spaces));

  const std::size_t c = static_cast<std::size_t>(c_it - coordinator.begin());
  PregroupType x;
  if (!is_coordinator_type(d.token_types[c], &x)) {
    throw TypeMismatch("token " + std::to_string(c) + " is marked as a coordinator but has type " +
                       format_type(d.token_types[c]));
  }
  const std::size_t k = x.size();
  const auto start = detail::token_starts(d);
  const std::size_t n = start.back();
  std::vector<std::size_t> partner(n, detail::kNoPartner);
  for (const auto& l : d.links) {
    partner[l.left] = l.right;
    partner[l.right] = l.left;
  }
  const std::size_t xr_begin = start[c], x_begin = start[c] + k, xl_begin = start[c] + 2 * k;
  const std::size_t c_end = start[c + 1];
  auto fail = [&](const std::string& why) {
    return TypeMismatch("coordinator at token " + std::to_string(c) + ": " + why);
  };

  // Left conjunct: tokens [lo_tok, c).
  std::size_t lo_tok = c;
  for (std::size_t p = xr_begin; p < x_begin; ++p) {
    if (partner[p] == detail::kNoPartner || partner[p] >= xr_begin) {
      throw fail("left block is not bound to a preceding conjunct");
    }
    lo_tok = std::min(lo_tok, detail::token_of(start, partner[p]));
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t p = start[lo_tok]; p < xr_begin && !grew; ++p) {
      const auto q = partner[p];
      if (q == detail::kNoPartner) throw fail("left conjunct has an unbound wire");
      if (q < start[lo_tok]) {
        lo_tok = detail::token_of(start, q);
        grew = true;
      } else if (q >= x_begin) {
        throw fail("left conjunct is linked past the coordinator");
      }
    }
  }
  // Right conjunct: tokens (c, hi_tok].
  std::size_t hi_tok = c;
  for (std::size_t p = xl_begin; p < c_end; ++p) {
    if (partner[p] == detail::kNoPartner || partner[p] < c_end) {
      throw fail("right block is not bound to a following conjunct");
    }
    hi_tok = std::max(hi_tok, detail::token_of(start, partner[p]));
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t p = c_end; p < start[hi_tok + 1] && !grew; ++p) {
      const auto q = partner[p];
      if (q == detail::kNoPartner) throw fail("right conjunct has an unbound wire");
      if (q >= start[hi_tok + 1]) {
        hi_tok = detail::token_of(start, q);
        grew = true;
      } else if (q < xl_begin) {
        throw fail("right conjunct is linked before the coordinator");
      }
    }
  }

  auto conjunct = [&](std::size_t first_tok, std::size_t last_tok, std::size_t block_begin) {
    Derivation sub;
    const std::size_t base = start[first_tok], stop = start[last_tok + 1];
    for (auto t = first_tok; t <= last_tok; ++t) sub.token_types.push_back(d.token_types[t]);
    for (const auto& l : d.links) {
      if (l.left >= base && l.right < stop) sub.links.push_back({l.left - base, l.right - base});
    }
    for (std::size_t p = base; p < stop; ++p) {
      if (partner[p] >= block_begin && partner[p] < block_begin + k) sub.residual.push_back(p - base);
    }
    std::vector<Tensor<S>> sub_tensors(tensors.begin() + static_cast<std::ptrdiff_t>(first_tok),
                                       tensors.begin() + static_cast<std::ptrdiff_t>(last_tok + 1));
    std::vector<bool> sub_coord(coordinator.begin() + static_cast<std::ptrdiff_t>(first_tok),
                                coordinator.begin() + static_cast<std::ptrdiff_t>(last_tok + 1));
    return evaluate_closed_form(sub, std::move(sub_tensors), std::move(sub_coord), spaces);
  };
  const auto left = conjunct(lo_tok, c - 1, xr_begin);
  const auto right = conjunct(c + 1, hi_tok, xl_begin);
  auto merged = coordinate_closed_form(left, right);
  if (merged.wires() != spaces.wires(x)) throw fail("conjunct meanings do not have type x");

  // Splice: tokens [0, lo_tok) + merged + (hi_tok, end).
  const std::size_t cut_begin = start[lo_tok], cut_end = start[hi_tok + 1];
  auto remap = [&](std::size_t p) -> std::size_t {
    if (p < cut_begin) return p;
    if (p >= x_begin && p < xl_begin) return cut_begin + (p - x_begin);
    if (p >= cut_end) return p - (cut_end - cut_begin) + k;
    return detail::kNoPartner;
  };
  Derivation outer;
  std::vector<Tensor<S>> outer_tensors;
  std::vector<bool> outer_coord;
  for (std::size_t t = 0; t < d.token_types.size(); ++t) {
    if (t < lo_tok || t > hi_tok) {
      outer.token_types.push_back(d.token_types[t]);
      outer_tensors.push_back(std::move(tensors[t]));
      outer_coord.push_back(coordinator[t]);
    } else if (t == lo_tok) {
      outer.token_types.push_back(x);
      outer_tensors.push_back(std::move(merged));
      outer_coord.push_back(false);
    }
  }
  for (const auto& l : d.links) {
    const auto a = remap(l.left), b = remap(l.right);
    if (a != detail::kNoPartner && b != detail::kNoPartner) outer.links.push_back({a, b});
  }
  std::sort(outer.links.begin(), outer.links.end());
  for (auto r : d.residual) {
    const auto a = remap(r);
    if (a == detail::kNoPartner) throw fail("residual wire inside a conjunct");
    outer.residual.push_back(a);
  }
  return evaluate_closed_form(outer, std::move(outer_tensors), std::move(outer_coord), spaces);
}

/// Arguments of "subject verb1 indirect1 and verb2 indirect2 direct", with
/// ditransitive verbs typed n^r·s·n^l·n^l.
template <Semiring S>
struct DitransitiveArgs {
  Tensor<S> subject;
  Tensor<S> verb1;
  Tensor<S> indirect1;
  Tensor<S> verb2;
  Tensor<S> indirect2;
  Tensor<S> direct;
};

inline const PregroupType& ditransitive_verb_type() {
  static const PregroupType t = parse_type("n.r s n.l n.l");
  return t;
}

namespace detail {

template <Semiring S>
SpaceAssignment spaces_from(const Tensor<S>& noun, const Tensor<S>& verb) {
  if (noun.order() != 1 || verb.order() < 2) throw ArityError("expected a noun and a verb tensor");
  SpaceAssignment spaces;
  spaces.set("n", noun.wires()[0].dim);
  spaces.set("s", verb.wires()[1].dim);
  return spaces;
}

}  // namespace detail

/// subject^T × [(verb1 × indirect1) ⊙ (verb2 × indirect2)] × direct, either by
/// contracting the coordinator network or through the closed form.
template <Semiring S>
Tensor<S> ditransitive_coordination(const DitransitiveArgs<S>& args, EvalMode mode) {
  const auto spaces = detail::spaces_from(args.subject, args.verb1);
  const PregroupType n = parse_type("n");
  if (mode == EvalMode::explicit_network) {
    const PregroupType x = parse_type("n.r s n.l");
    const std::vector<PregroupType> types{n, ditransitive_verb_type(), n, coordinator_type(x),
                                          ditransitive_verb_type(), n, n};
    const auto d = reduce(types, parse_type("s"));
    if (!d) throw UngrammaticalSentence("ditransitive coordination does not reduce to s");
    return evaluate(build_network(*d,
                                  std::vector<Tensor<S>>{args.subject, args.verb1, args.indirect1,
                                                         coordinator_tensor<S>(x, spaces),
                                                         args.verb2, args.indirect2, args.direct},
                                  spaces));
  }
  for (const auto* v : {&args.verb1, &args.verb2}) {
    check_token_wires(1, ditransitive_verb_type(), *v, spaces);
  }
  // The indirect object binds the verb's last wire.
  const auto left = contract_between(args.verb1, args.indirect1, {{3, 0}});
  const auto right = contract_between(args.verb2, args.indirect2, {{3, 0}});
  const auto merged = coordinate_closed_form(left, right);
  const auto with_subject = contract_between(args.subject, merged, {{0, 0}});
  return contract_between(with_subject, args.direct, {{1, 0}});
}

/// The stripping coordinator: an identity carrying the first clause's sentence
/// wire, next to a copy spider merging the verb's object wire with both objects.
/// Wires: (s^r, s, n, n^r, n^l).
template <Semiring S>
Tensor<S> stripping_coordinator(const SpaceAssignment& spaces) {
  const std::size_t dn = spaces.dim("n");
  return tensor_product(eta_cap<S>("s", CapSide::right, spaces.dim("s")),
                        spider<S>({{"n", 0, dn}, {"n", 1, dn}, {"n", -1, dn}}));
}

/// Meaning of "subject verb obj1, and obj2 as well" for a transitive verb
/// typed n^r·s·n^l, equal to the meaning of "subject verb obj1 and obj2".
template <Semiring S>
Tensor<S> stripping_sentence(const Tensor<S>& subject, const Tensor<S>& verb, const Tensor<S>& obj1,
                             const Tensor<S>& obj2) {
  const auto spaces = detail::spaces_from(subject, verb);
  const PregroupType n = parse_type("n");
  check_token_wires(0, n, subject, spaces);
  check_token_wires(1, parse_type("n.r s n.l"), verb, spaces);
  check_token_wires(2, n, obj1, spaces);
  check_token_wires(4, n, obj2, spaces);

  TensorNetwork<S> net;
  net.nodes = {subject, verb, obj1, stripping_coordinator<S>(spaces), obj2};
  net.edges = {
      {{0, 0}, {1, 0}},  // subject into the verb
      {{1, 1}, {3, 0}},  // sentence wire through the identity
      {{1, 2}, {3, 2}},  // verb object wire into the spider
      {{2, 0}, {3, 3}},  // first object
      {{3, 4}, {4, 0}},  // second object
  };
  net.open_wires = {{3, 1}};
  validate_network(net, ContractCheck::typed);
  return evaluate(net);
}

}  // namespace frobcoord
