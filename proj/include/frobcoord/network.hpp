#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "frobcoord/errors.hpp"
#include "frobcoord/pregroup.hpp"
#include "frobcoord/tensor.hpp"

namespace frobcoord {

/// Dimension of the vector space assigned to each atomic symbol.
class SpaceAssignment {
 public:
  SpaceAssignment() = default;
  SpaceAssignment(std::initializer_list<std::pair<const std::string, std::size_t>> dims) {
    for (const auto& [sym, d] : dims) set(sym, d);
  }

  void set(const std::string& symbol, std::size_t dim) {
    if (dim == 0) throw DimMismatch("space for '" + symbol + "' must have dim >= 1");
    dims_[symbol] = dim;
  }

  bool contains(const std::string& symbol) const { return dims_.contains(symbol); }

  std::size_t dim(const std::string& symbol) const {
    auto it = dims_.find(symbol);
    if (it == dims_.end()) throw MissingSpace("no space assigned to '" + symbol + "'");
    return it->second;
  }

  std::vector<Wire> wires(const PregroupType& type) const {
    std::vector<Wire> out;
    out.reserve(type.size());
    for (const auto& s : type) out.push_back({s.base, s.adjoint, dim(s.base)});
    return out;
  }

  std::set<std::string> symbols() const {
    std::set<std::string> out;
    for (const auto& [sym, d] : dims_) out.insert(sym);
    return out;
  }

  const std::map<std::string, std::size_t>& entries() const noexcept { return dims_; }

  friend bool operator==(const SpaceAssignment&, const SpaceAssignment&) = default;

 private:
  std::map<std::string, std::size_t> dims_;
};

struct WireRef {
  std::size_t node = 0;
  std::size_t wire = 0;

  friend bool operator==(const WireRef&, const WireRef&) = default;
  friend auto operator<=>(const WireRef&, const WireRef&) = default;
};

/// A contraction between two node wires. In typed networks `b` carries the
/// adjoint order one above `a`.
struct NetworkEdge {
  WireRef a;
  WireRef b;

  friend bool operator==(const NetworkEdge&, const NetworkEdge&) = default;
};

template <Semiring S>
struct TensorNetwork {
  std::vector<Tensor<S>> nodes;
  std::vector<NetworkEdge> edges;
  std::vector<WireRef> open_wires;
};

/// Every node wire appears in exactly one edge or open slot, edge dims agree,
/// and in typed mode edges join a wire to its right adjoint.
template <Semiring S>
void validate_network(const TensorNetwork<S>& net, ContractCheck check = ContractCheck::typed) {
  std::vector<std::vector<int>> uses(net.nodes.size());
  for (std::size_t k = 0; k < net.nodes.size(); ++k) uses[k].assign(net.nodes[k].order(), 0);
  auto touch = [&](const WireRef& r) -> const Wire& {
    if (r.node >= net.nodes.size() || r.wire >= net.nodes[r.node].order()) {
      throw ArityError("network references a missing wire");
    }
    ++uses[r.node][r.wire];
    return net.nodes[r.node].wires()[r.wire];
  };
  for (const auto& e : net.edges) {
    const Wire& x = touch(e.a);
    const Wire& y = touch(e.b);
    if (x.dim != y.dim) throw DimMismatch("edge joins " + to_string(x) + " and " + to_string(y));
    if (check == ContractCheck::typed && (x.base != y.base || y.adjoint != x.adjoint + 1)) {
      throw TypeMismatch("edge joins " + to_string(x) + " and " + to_string(y));
    }
  }
  for (const auto& r : net.open_wires) touch(r);
  for (const auto& u : uses) {
    for (int c : u) {
      if (c != 1) throw ArityError("every wire must be used exactly once in a network");
    }
  }
}

/// Checks that tensor wires match a token's type under the space assignment.
template <Semiring S>
void check_token_wires(std::size_t token, const PregroupType& type, const Tensor<S>& tensor,
                       const SpaceAssignment& spaces) {
  const auto expected = spaces.wires(type);
  const auto& actual = tensor.wires();
  const std::size_t n = std::max(expected.size(), actual.size());
  for (std::size_t w = 0; w < n; ++w) {
    const std::string want = w < expected.size() ? to_string(expected[w]) : "no wire";
    const std::string got = w < actual.size() ? to_string(actual[w]) : "no wire";
    if (w >= expected.size() || w >= actual.size() || !(expected[w] == actual[w])) {
      throw WireTypeMismatch(token, w, want, got);
    }
  }
}

/// The functorial image of a derivation: one node per token, one edge per
/// link, open wires in residual order.
template <Semiring S>
TensorNetwork<S> build_network(const Derivation& derivation, std::vector<Tensor<S>> tensors,
                               const SpaceAssignment& spaces) {
  if (tensors.size() != derivation.token_types.size()) {
    throw ArityError("build_network: " + std::to_string(tensors.size()) + " tensors for " +
                     std::to_string(derivation.token_types.size()) + " tokens");
  }
  for (std::size_t k = 0; k < tensors.size(); ++k) {
    check_token_wires(k, derivation.token_types[k], tensors[k], spaces);
  }
  TensorNetwork<S> net;
  net.nodes = std::move(tensors);
  auto ref = [&](std::size_t flat) {
    const auto tw = derivation.locate(flat);
    return WireRef{tw.token, tw.wire};
  };
  for (const auto& l : derivation.links) net.edges.push_back({ref(l.left), ref(l.right)});
  for (auto r : derivation.residual) net.open_wires.push_back(ref(r));
  validate_network(net, ContractCheck::typed);
  return net;
}

namespace detail {

template <Semiring S>
struct Component {
  Tensor<S> tensor;
  std::vector<WireRef> labels;  // one per tensor wire
};

}  // namespace detail

/// Contracts the network, processing edges in `edge_order`. Joining two
/// components contracts every remaining edge between them at once; components
/// left unconnected are combined by tensor product in node order.
template <Semiring S>
Tensor<S> evaluate(const TensorNetwork<S>& net, std::span<const std::size_t> edge_order) {
  validate_network(net, ContractCheck::raw);
  if (edge_order.size() != net.edges.size()) throw BadPermutation("edge order has wrong length");
  {
    std::vector<bool> seen(net.edges.size(), false);
    for (auto e : edge_order) {
      if (e >= seen.size() || seen[e]) throw BadPermutation("edge order is not a permutation");
      seen[e] = true;
    }
  }

  std::vector<std::optional<detail::Component<S>>> comps(net.nodes.size());
  std::vector<std::size_t> owner(net.nodes.size());
  for (std::size_t k = 0; k < net.nodes.size(); ++k) {
    std::vector<WireRef> labels;
    for (std::size_t w = 0; w < net.nodes[k].order(); ++w) labels.push_back({k, w});
    comps[k] = detail::Component<S>{net.nodes[k], std::move(labels)};
    owner[k] = k;
  }
  auto position = [](const detail::Component<S>& c, const WireRef& r) {
    return static_cast<std::size_t>(std::find(c.labels.begin(), c.labels.end(), r) -
                                    c.labels.begin());
  };

  std::vector<bool> done(net.edges.size(), false);
  for (auto e : edge_order) {
    if (done[e]) continue;
    const auto& edge = net.edges[e];
    const std::size_t ca = owner[edge.a.node];
    const std::size_t cb = owner[edge.b.node];
    if (ca == cb) {
      auto& c = *comps[ca];
      const auto i = position(c, edge.a);
      const auto j = position(c, edge.b);
      c.tensor = contract(c.tensor, i, j);
      c.labels.erase(c.labels.begin() + static_cast<std::ptrdiff_t>(std::max(i, j)));
      c.labels.erase(c.labels.begin() + static_cast<std::ptrdiff_t>(std::min(i, j)));
      done[e] = true;
      continue;
    }
    const std::size_t lo = std::min(ca, cb), hi = std::max(ca, cb);
    auto& left = *comps[lo];
    auto& right = *comps[hi];
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t f = 0; f < net.edges.size(); ++f) {
      if (done[f]) continue;
      const auto& g = net.edges[f];
      const std::size_t ga = owner[g.a.node], gb = owner[g.b.node];
      if (ga == lo && gb == hi) {
        pairs.push_back({position(left, g.a), position(right, g.b)});
      } else if (ga == hi && gb == lo) {
        pairs.push_back({position(left, g.b), position(right, g.a)});
      } else {
        continue;
      }
      done[f] = true;
    }
    std::vector<bool> drop_l(left.labels.size(), false), drop_r(right.labels.size(), false);
    for (auto [i, j] : pairs) drop_l[i] = drop_r[j] = true;
    std::vector<WireRef> labels;
    for (std::size_t k = 0; k < left.labels.size(); ++k) {
      if (!drop_l[k]) labels.push_back(left.labels[k]);
    }
    for (std::size_t k = 0; k < right.labels.size(); ++k) {
      if (!drop_r[k]) labels.push_back(right.labels[k]);
    }
    left.tensor = contract_between(left.tensor, right.tensor,
                                   std::span<const std::pair<std::size_t, std::size_t>>(pairs));
    left.labels = std::move(labels);
    comps[hi].reset();
    for (auto& o : owner) {
      if (o == hi) o = lo;
    }
  }

  std::optional<detail::Component<S>> total;
  for (auto& c : comps) {
    if (!c) continue;
    if (!total) {
      total = std::move(c);
      continue;
    }
    total->tensor = tensor_product(total->tensor, c->tensor);
    total->labels.insert(total->labels.end(), c->labels.begin(), c->labels.end());
  }
  if (!total) return Tensor<S>::scalar(S::one());

  std::vector<std::size_t> perm;
  for (const auto& r : net.open_wires) perm.push_back(position(*total, r));
  return permute_wires(total->tensor, perm);
}

/// Greedy left-to-right schedule: edges ordered by the later node they touch,
/// so each node is absorbed into the running result in sentence order.
inline std::vector<std::size_t> left_to_right_order(std::span<const NetworkEdge> edges) {
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto key = [&](std::size_t e) {
    const auto& x = edges[e];
    return std::pair{std::max(x.a.node, x.b.node), std::min(x.a.node, x.b.node)};
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return key(x) < key(y); });
  return order;
}

template <Semiring S>
Tensor<S> evaluate(const TensorNetwork<S>& net) {
  const auto order = left_to_right_order(net.edges);
  return evaluate(net, std::span<const std::size_t>(order));
}

}  // namespace frobcoord
