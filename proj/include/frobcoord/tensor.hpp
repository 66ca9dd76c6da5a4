#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "frobcoord/errors.hpp"
#include "frobcoord/semiring.hpp"

namespace frobcoord {

/// Adjoint marks for an order: +2 -> ".r.r", -1 -> ".l".
inline std::string adjoint_suffix(int adjoint) {
  std::string out;
  for (int k = 0; k < adjoint; ++k) out += ".r";
  for (int k = 0; k > adjoint; --k) out += ".l";
  return out;
}

/// One tensor factor: an atomic symbol with its adjoint order and the
/// dimension of the space assigned to that symbol.
struct Wire {
  std::string base;
  int adjoint = 0;
  std::size_t dim = 1;

  friend bool operator==(const Wire&, const Wire&) = default;
};

inline std::string to_string(const Wire& w) {
  return w.base + adjoint_suffix(w.adjoint) + "[" + std::to_string(w.dim) + "]";
}

inline std::string to_string(std::span<const Wire> wires) {
  std::string out = "(";
  for (std::size_t i = 0; i < wires.size(); ++i) {
    if (i != 0) out += ", ";
    out += to_string(wires[i]);
  }
  return out + ")";
}

/// Dense tensor over a semiring. Data is row-major in wire order; a tensor
/// with no wires is a scalar holding exactly one element.
template <Semiring S>
class Tensor {
 public:
  using semiring = S;
  using value_type = typename S::value_type;

  Tensor() : data_{S::zero()} {}

  Tensor(std::vector<Wire> wires, std::vector<value_type> data)
      : wires_(std::move(wires)), data_(std::move(data)) {
    for (const auto& w : wires_) {
      if (w.dim == 0) throw DimMismatch("wire " + to_string(w) + " has dimension 0");
    }
    if (data_.size() != volume(wires_)) {
      throw DimMismatch("tensor data has " + std::to_string(data_.size()) +
                        " entries but wires " + to_string(wires_) + " need " +
                        std::to_string(volume(wires_)));
    }
  }

  static Tensor scalar(value_type v) { return Tensor({}, {v}); }

  static Tensor filled(std::vector<Wire> wires, value_type v) {
    const std::size_t n = volume(wires);
    return Tensor(std::move(wires), std::vector<value_type>(n, v));
  }

  static Tensor zeros(std::vector<Wire> wires) { return filled(std::move(wires), S::zero()); }

  static std::size_t volume(std::span<const Wire> wires) {
    std::size_t n = 1;
    for (const auto& w : wires) n *= w.dim;
    return n;
  }

  const std::vector<Wire>& wires() const noexcept { return wires_; }
  std::size_t order() const noexcept { return wires_.size(); }
  std::size_t size() const noexcept { return data_.size(); }
  std::span<const value_type> data() const noexcept { return data_; }
  std::vector<value_type>& mutable_data() noexcept { return data_; }

  std::vector<std::size_t> shape() const {
    std::vector<std::size_t> s;
    s.reserve(wires_.size());
    for (const auto& w : wires_) s.push_back(w.dim);
    return s;
  }

  std::vector<std::size_t> strides() const { return row_major_strides(wires_); }

  static std::vector<std::size_t> row_major_strides(std::span<const Wire> wires) {
    std::vector<std::size_t> st(wires.size(), 1);
    for (std::size_t k = wires.size(); k-- > 1;) st[k - 1] = st[k] * wires[k].dim;
    return st;
  }

  std::size_t offset(std::span<const std::size_t> index) const {
    if (index.size() != wires_.size()) throw ArityError("index arity does not match tensor order");
    std::size_t off = 0;
    for (std::size_t k = 0; k < index.size(); ++k) {
      if (index[k] >= wires_[k].dim) throw DimMismatch("index out of range");
      off = off * wires_[k].dim + index[k];
    }
    return off;
  }

  value_type at(std::span<const std::size_t> index) const { return data_[offset(index)]; }
  value_type at(std::initializer_list<std::size_t> index) const {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }
  value_type operator[](std::size_t flat) const { return data_[flat]; }

  /// The only scalar entry of an order-0 tensor.
  value_type value() const {
    if (!wires_.empty()) throw ArityError("value() requires a scalar tensor");
    return data_.front();
  }

  Tensor with_wires(std::vector<Wire> wires) const {
    if (volume(wires) != data_.size()) throw DimMismatch("relabelled wires change the volume");
    return Tensor(std::move(wires), data_);
  }

 private:
  std::vector<Wire> wires_;
  std::vector<value_type> data_;
};

/// Entry-wise comparison under the semiring's equality. Only dimensions
/// are compared, not wire labels.
template <Semiring S>
bool approx_equal(const Tensor<S>& a, const Tensor<S>& b) {
  if (a.shape() != b.shape()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!S::equal(a[k], b[k])) return false;
  }
  return true;
}

/// Largest absolute entry difference; requires equal shapes.
template <Semiring S>
double max_abs_difference(const Tensor<S>& a, const Tensor<S>& b) {
  if (a.shape() != b.shape()) throw ShapeMismatch("cannot compare tensors of different shapes");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = static_cast<double>(a[k]) - static_cast<double>(b[k]);
    worst = std::max(worst, d < 0 ? -d : d);
  }
  return worst;
}

namespace detail {

// Offsets of every multi-index over `dims`, each combined with `strides`,
// enumerated in row-major order.
inline std::vector<std::size_t> offsets(std::span<const std::size_t> dims,
                                        std::span<const std::size_t> strides) {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  std::vector<std::size_t> out(n, 0);
  std::vector<std::size_t> idx(dims.size(), 0);
  std::size_t off = 0;
  for (std::size_t flat = 0; flat < n; ++flat) {
    out[flat] = off;
    for (std::size_t k = dims.size(); k-- > 0;) {
      if (++idx[k] < dims[k]) {
        off += strides[k];
        break;
      }
      off -= strides[k] * (dims[k] - 1);
      idx[k] = 0;
    }
  }
  return out;
}

inline void check_wire_index(std::size_t i, std::size_t order, const char* what) {
  if (i >= order) {
    throw ArityError(std::string(what) + ": wire index " + std::to_string(i) +
                     " out of range for order " + std::to_string(order));
  }
}

}  // namespace detail

/// Outer product; output wires are a.wires followed by b.wires.
template <Semiring S>
Tensor<S> tensor_product(const Tensor<S>& a, const Tensor<S>& b) {
  std::vector<Wire> wires = a.wires();
  wires.insert(wires.end(), b.wires().begin(), b.wires().end());
  std::vector<typename S::value_type> data;
  data.reserve(a.size() * b.size());
  for (auto x : a.data()) {
    for (auto y : b.data()) data.push_back(S::mul(x, y));
  }
  return Tensor<S>(std::move(wires), std::move(data));
}

enum class ContractCheck { raw, typed };

namespace detail {

inline void check_pair(const Wire& x, const Wire& y, ContractCheck check) {
  if (x.dim != y.dim) {
    throw DimMismatch("cannot contract " + to_string(x) + " with " + to_string(y));
  }
  if (check == ContractCheck::typed) {
    const int gap = x.adjoint - y.adjoint;
    if (x.base != y.base || (gap != 1 && gap != -1)) {
      throw TypeMismatch("wires " + to_string(x) + " and " + to_string(y) +
                         " are not adjoint partners");
    }
  }
}

}  // namespace detail

/// Sums over the shared index of wires i and j. The output keeps the
/// remaining wires in their original order.
template <Semiring S>
Tensor<S> contract(const Tensor<S>& t, std::size_t i, std::size_t j,
                   ContractCheck check = ContractCheck::raw) {
  detail::check_wire_index(i, t.order(), "contract");
  detail::check_wire_index(j, t.order(), "contract");
  if (i == j) throw ArityError("contract needs two distinct wires");
  detail::check_pair(t.wires()[i], t.wires()[j], check);

  const auto strides = t.strides();
  std::vector<Wire> out_wires;
  std::vector<std::size_t> free_dims, free_strides;
  for (std::size_t k = 0; k < t.order(); ++k) {
    if (k == i || k == j) continue;
    out_wires.push_back(t.wires()[k]);
    free_dims.push_back(t.wires()[k].dim);
    free_strides.push_back(strides[k]);
  }
  const std::size_t diag_step = strides[i] + strides[j];
  const std::size_t dim = t.wires()[i].dim;
  const auto bases = detail::offsets(free_dims, free_strides);

  std::vector<typename S::value_type> data(bases.size(), S::zero());
  for (std::size_t o = 0; o < bases.size(); ++o) {
    auto acc = S::zero();
    for (std::size_t k = 0; k < dim; ++k) acc = S::add(acc, t[bases[o] + k * diag_step]);
    data[o] = acc;
  }
  return Tensor<S>(std::move(out_wires), std::move(data));
}

/// Contracts `pairs` (wire of a, wire of b) between two tensors in one pass.
/// Output wires are a's uncontracted wires followed by b's, each in order.
/// Equal to tensor_product followed by the same single contractions, without
/// materializing the product.
template <Semiring S>
Tensor<S> contract_between(const Tensor<S>& a, const Tensor<S>& b,
                           std::span<const std::pair<std::size_t, std::size_t>> pairs,
                           ContractCheck check = ContractCheck::raw) {
  std::vector<bool> used_a(a.order(), false), used_b(b.order(), false);
  const auto sa = a.strides();
  const auto sb = b.strides();
  std::vector<std::size_t> c_dims, c_sa, c_sb;
  for (auto [i, j] : pairs) {
    detail::check_wire_index(i, a.order(), "contract_between");
    detail::check_wire_index(j, b.order(), "contract_between");
    if (used_a[i] || used_b[j]) throw ArityError("contract_between: wire used twice");
    used_a[i] = used_b[j] = true;
    detail::check_pair(a.wires()[i], b.wires()[j], check);
    c_dims.push_back(a.wires()[i].dim);
    c_sa.push_back(sa[i]);
    c_sb.push_back(sb[j]);
  }

  std::vector<Wire> out_wires;
  std::vector<std::size_t> fa_dims, fa_strides, fb_dims, fb_strides;
  for (std::size_t k = 0; k < a.order(); ++k) {
    if (used_a[k]) continue;
    out_wires.push_back(a.wires()[k]);
    fa_dims.push_back(a.wires()[k].dim);
    fa_strides.push_back(sa[k]);
  }
  for (std::size_t k = 0; k < b.order(); ++k) {
    if (used_b[k]) continue;
    out_wires.push_back(b.wires()[k]);
    fb_dims.push_back(b.wires()[k].dim);
    fb_strides.push_back(sb[k]);
  }

  const auto fa = detail::offsets(fa_dims, fa_strides);
  const auto fb = detail::offsets(fb_dims, fb_strides);
  const auto ca = detail::offsets(c_dims, c_sa);
  const auto cb = detail::offsets(c_dims, c_sb);

  const auto ad = a.data();
  const auto bd = b.data();
  std::vector<typename S::value_type> data(fa.size() * fb.size(), S::zero());
  std::size_t o = 0;
  for (auto oa : fa) {
    for (auto ob : fb) {
      auto acc = S::zero();
      for (std::size_t c = 0; c < ca.size(); ++c) {
        acc = S::add(acc, S::mul(ad[oa + ca[c]], bd[ob + cb[c]]));
      }
      data[o++] = acc;
    }
  }
  return Tensor<S>(std::move(out_wires), std::move(data));
}

template <Semiring S>
Tensor<S> contract_between(const Tensor<S>& a, const Tensor<S>& b,
                           std::initializer_list<std::pair<std::size_t, std::size_t>> pairs,
                           ContractCheck check = ContractCheck::raw) {
  return contract_between(
      a, b, std::span<const std::pair<std::size_t, std::size_t>>(pairs.begin(), pairs.size()),
      check);
}

/// Reorders wires: output wire k is input wire perm[k].
template <Semiring S>
Tensor<S> permute_wires(const Tensor<S>& t, std::span<const std::size_t> perm) {
  if (perm.size() != t.order()) throw BadPermutation("permutation length does not match order");
  std::vector<bool> seen(perm.size(), false);
  for (auto p : perm) {
    if (p >= perm.size() || seen[p]) throw BadPermutation("not a permutation of wire indices");
    seen[p] = true;
  }
  const auto strides = t.strides();
  std::vector<Wire> wires;
  std::vector<std::size_t> dims, src_strides;
  for (auto p : perm) {
    wires.push_back(t.wires()[p]);
    dims.push_back(t.wires()[p].dim);
    src_strides.push_back(strides[p]);
  }
  const auto src = detail::offsets(dims, src_strides);
  std::vector<typename S::value_type> data(src.size());
  for (std::size_t o = 0; o < src.size(); ++o) data[o] = t[src[o]];
  return Tensor<S>(std::move(wires), std::move(data));
}

template <Semiring S>
Tensor<S> permute_wires(const Tensor<S>& t, std::initializer_list<std::size_t> perm) {
  return permute_wires(t, std::span<const std::size_t>(perm.begin(), perm.size()));
}

/// Swaps the two factors of a ⊗ b, giving the data of b ⊗ a.
template <Semiring S>
Tensor<S> swap_factors(const Tensor<S>& t, std::size_t split) {
  if (split > t.order()) throw BadPermutation("split beyond tensor order");
  std::vector<std::size_t> perm;
  for (std::size_t k = split; k < t.order(); ++k) perm.push_back(k);
  for (std::size_t k = 0; k < split; ++k) perm.push_back(k);
  return permute_wires(t, perm);
}

enum class CapSide { left, right };

/// The cap 1 -> p^r·p (right) or 1 -> p·p^l (left) as an identity matrix.
/// `adjoint` is the order of p; right caps have wires (p^r, p), left caps (p, p^l).
template <Semiring S>
Tensor<S> eta_cap(const std::string& base, CapSide side, std::size_t dim, int adjoint = 0) {
  if (dim == 0) throw DimMismatch("eta_cap needs dim >= 1");
  std::vector<Wire> wires = side == CapSide::right
                                ? std::vector<Wire>{{base, adjoint + 1, dim}, {base, adjoint, dim}}
                                : std::vector<Wire>{{base, adjoint, dim}, {base, adjoint - 1, dim}};
  auto t = Tensor<S>::zeros(std::move(wires));
  for (std::size_t k = 0; k < dim; ++k) t.mutable_data()[k * dim + k] = S::one();
  return t;
}

/// The copy-spider over equal-dimension wires: one iff all indices agree.
template <Semiring S>
Tensor<S> spider(std::vector<Wire> wires) {
  if (wires.empty()) throw ArityError("spider needs at least one wire");
  const std::size_t dim = wires.front().dim;
  for (const auto& w : wires) {
    if (w.dim != dim) throw DimMismatch("spider wires must share one dimension");
  }
  std::size_t diag = 0;
  for (std::size_t k = 0; k < wires.size(); ++k) diag = diag * dim + 1;
  auto t = Tensor<S>::zeros(std::move(wires));
  for (std::size_t k = 0; k < dim; ++k) t.mutable_data()[k * diag] = S::one();
  return t;
}

/// Copying: v -> diagonal matrix with v on the diagonal. Both output wires carry v's wire.
template <Semiring S>
Tensor<S> frobenius_delta(const Tensor<S>& v) {
  if (v.order() != 1) throw ArityError("frobenius_delta needs an order-1 tensor");
  const Wire w = v.wires().front();
  auto t = Tensor<S>::zeros({w, w});
  for (std::size_t k = 0; k < w.dim; ++k) t.mutable_data()[k * w.dim + k] = v[k];
  return t;
}

/// Merging of two equal-typed tensors: the element-wise product.
template <Semiring S>
Tensor<S> frobenius_mu(const Tensor<S>& a, const Tensor<S>& b) {
  if (a.wires() != b.wires()) {
    throw ShapeMismatch("frobenius_mu needs identical wires, got " + to_string(a.wires()) +
                        " and " + to_string(b.wires()));
  }
  std::vector<typename S::value_type> data(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) data[k] = S::mul(a[k], b[k]);
  return Tensor<S>(a.wires(), std::move(data));
}

/// Merging applied to a single order-2 tensor: its diagonal.
template <Semiring S>
Tensor<S> frobenius_mu_diagonal(const Tensor<S>& m) {
  if (m.order() != 2 || m.wires()[0].dim != m.wires()[1].dim) {
    throw ShapeMismatch("frobenius_mu_diagonal needs a square order-2 tensor");
  }
  const std::size_t d = m.wires()[0].dim;
  std::vector<typename S::value_type> data(d);
  for (std::size_t k = 0; k < d; ++k) data[k] = m[k * d + k];
  return Tensor<S>({m.wires()[0]}, std::move(data));
}

/// Deleting: every basis vector maps to one, so the image is the entry sum.
template <Semiring S>
typename S::value_type frobenius_iota(const Tensor<S>& v) {
  if (v.order() != 1) throw ArityError("frobenius_iota needs an order-1 tensor");
  auto acc = S::zero();
  for (auto x : v.data()) acc = S::add(acc, x);
  return acc;
}

/// Unit: the sum of all basis vectors.
template <Semiring S>
Tensor<S> frobenius_zeta(const Wire& wire) {
  return Tensor<S>::filled({wire}, S::one());
}

/// Entry-wise semiring sum of equal-shape tensors.
template <Semiring S>
Tensor<S> add(const Tensor<S>& a, const Tensor<S>& b) {
  if (a.shape() != b.shape()) throw ShapeMismatch("add needs equal shapes");
  std::vector<typename S::value_type> data(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) data[k] = S::add(a[k], b[k]);
  return Tensor<S>(a.wires(), std::move(data));
}

template <Semiring S>
Tensor<S> scale(const Tensor<S>& a, typename S::value_type s) {
  std::vector<typename S::value_type> data(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) data[k] = S::mul(s, a[k]);
  return Tensor<S>(a.wires(), std::move(data));
}

using RealTensor = Tensor<RealSemiring>;
using BoolTensor = Tensor<BooleanSemiring>;

}  // namespace frobcoord
