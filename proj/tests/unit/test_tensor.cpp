#include "doctest.h"

#include "frobcoord/lexicon.hpp"
#include "frobcoord/tensor.hpp"
#include "support/oracles.hpp"

using namespace frobcoord;
using oracle::einsum;
using oracle::same_entries;

namespace {

Wire w(const char* base, int adj, std::size_t dim) { return {base, adj, dim}; }

RealTensor rand_real(std::vector<Wire> wires, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return random_tensor<RealSemiring>(std::move(wires), rng);
}

}  // namespace

TEST_CASE("tensor construction checks volume and dims") {
  CHECK_THROWS_AS(RealTensor({w("n", 0, 2)}, {1.0}), DimMismatch);
  CHECK_THROWS_AS(RealTensor({w("n", 0, 0)}, {}), DimMismatch);
  const auto s = RealTensor::scalar(3.5);
  CHECK(s.order() == 0);
  CHECK(s.value() == 3.5);
  const RealTensor m({w("a", 0, 2), w("b", 0, 3)}, {0, 1, 2, 3, 4, 5});
  CHECK(m.at({1, 2}) == 5);
  CHECK(m.at({0, 1}) == 1);
}

TEST_CASE("approx_equal uses a relative tolerance") {
  const RealTensor a({w("n", 0, 2)}, {1.0, 1e6});
  CHECK(approx_equal(a, RealTensor({w("n", 0, 2)}, {1.0 + 1e-12, 1e6 + 1e-5})));
  CHECK_FALSE(approx_equal(a, RealTensor({w("n", 0, 2)}, {1.0 + 1e-8, 1e6})));
  CHECK(approx_equal(a, RealTensor({w("m", 0, 2)}, {1.0, 1e6})));
  CHECK_FALSE(approx_equal(a, RealTensor({w("n", 0, 1), w("n", 0, 2)}, {1.0, 1e6})));
  CHECK(max_abs_difference(a, RealTensor({w("n", 0, 2)}, {1.5, 1e6})) == doctest::Approx(0.5));
}

TEST_CASE("tensor_product matches the outer-product loop") {
  const auto a = rand_real({w("a", 0, 2), w("b", 0, 3)}, 1);
  const auto b = rand_real({w("c", 0, 4)}, 2);
  const auto t = tensor_product(a, b);
  CHECK(t.order() == 3);
  CHECK(same_entries(t, einsum<RealSemiring>({{&a, "ab"}, {&b, "c"}}, "abc")));
}

TEST_CASE("contract sums over one pair of wires") {
  const auto t = rand_real({w("n", 0, 3), w("s", 0, 2), w("n", 1, 3)}, 3);
  const auto c = contract(t, 0, 2, ContractCheck::typed);
  CHECK(c.order() == 1);
  CHECK(same_entries(c, einsum<RealSemiring>({{&t, "aba"}}, "b")));

  CHECK_THROWS_AS(contract(t, 0, 1, ContractCheck::raw), DimMismatch);
  const auto u = rand_real({w("n", 0, 3), w("n", 0, 3)}, 4);
  CHECK_THROWS_AS(contract(u, 0, 1, ContractCheck::typed), TypeMismatch);
  CHECK_NOTHROW(contract(u, 0, 1, ContractCheck::raw));
  CHECK_THROWS_AS(contract(u, 0, 0, ContractCheck::raw), ArityError);
}

TEST_CASE("contract_between matches einsum") {
  const auto a = rand_real({w("x", 0, 2), w("y", 0, 3), w("z", 0, 2)}, 5);
  const auto b = rand_real({w("z", 0, 2), w("u", 0, 4), w("x", 0, 2)}, 6);
  const auto c = contract_between(a, b, {{0, 2}, {2, 0}});
  CHECK(c.order() == 2);
  CHECK(same_entries(c, einsum<RealSemiring>({{&a, "xyz"}, {&b, "zux"}}, "yu")));
}

TEST_CASE("contracting in two steps equals contract_between") {
  const auto a = rand_real({w("n", 0, 3), w("s", 0, 2)}, 7);
  const auto b = rand_real({w("n", 1, 3), w("s", 1, 2)}, 8);
  const auto stepwise = contract(contract(tensor_product(a, b), 0, 2, ContractCheck::typed), 0, 1,
                                 ContractCheck::typed);
  CHECK(approx_equal(stepwise, contract_between(a, b, {{0, 0}, {1, 1}})));
}

TEST_CASE("permute_wires and swap_factors") {
  const auto t = rand_real({w("a", 0, 2), w("b", 0, 3), w("c", 0, 4)}, 9);
  const auto p = permute_wires(t, {2, 0, 1});
  CHECK(p.wires()[0].base == "c");
  CHECK(same_entries(p, einsum<RealSemiring>({{&t, "abc"}}, "cab")));
  CHECK_THROWS_AS(permute_wires(t, {0, 0, 1}), BadPermutation);
  CHECK_THROWS_AS(permute_wires(t, {0, 1}), BadPermutation);

  const auto s = swap_factors(t, 1);
  CHECK(same_entries(s, einsum<RealSemiring>({{&t, "abc"}}, "bca")));
}

TEST_CASE("caps are identities with adjoint-typed wires") {
  const auto r = eta_cap<RealSemiring>("n", CapSide::right, 3);
  CHECK(r.wires()[0] == w("n", 1, 3));
  CHECK(r.wires()[1] == w("n", 0, 3));
  const auto l = eta_cap<RealSemiring>("n", CapSide::left, 3);
  CHECK(l.wires()[0] == w("n", 0, 3));
  CHECK(l.wires()[1] == w("n", -1, 3));
  const auto id = oracle::identity<RealSemiring>(3);
  const std::vector<double> expected(id.data().begin(), id.data().end());
  CHECK(same_entries(r, expected));
  CHECK(same_entries(l, expected));
  CHECK(eta_cap<RealSemiring>("n", CapSide::right, 2, -1).wires()[0] == w("n", 0, 2));
}

TEST_CASE("snake equations hold for both caps") {
  for (std::size_t d = 1; d <= 5; ++d) {
    const auto v = rand_real({w("n", 0, d)}, 100 + d);
    const auto left =
        contract(tensor_product(v, eta_cap<RealSemiring>("n", CapSide::right, d)), 0, 1,
                 ContractCheck::typed);
    const auto right =
        contract(tensor_product(eta_cap<RealSemiring>("n", CapSide::left, d), v), 1, 2,
                 ContractCheck::typed);
    CHECK(approx_equal(left, v));
    CHECK(approx_equal(right, v));
  }
}

TEST_CASE("spider is one exactly on the diagonal") {
  const auto sp = spider<RealSemiring>({w("n", 0, 3), w("n", 1, 3), w("n", -1, 3)});
  const auto ref = oracle::copy_spider<RealSemiring>(3, 3);
  const std::vector<double> expected(ref.data().begin(), ref.data().end());
  CHECK(same_entries(sp, expected));
  CHECK_THROWS_AS(spider<RealSemiring>({w("n", 0, 3), w("n", 0, 2)}), DimMismatch);
}

TEST_CASE("Frobenius maps in closed form") {
  const auto a = rand_real({w("n", 0, 3), w("s", 0, 2)}, 11);
  const auto b = rand_real({w("n", 0, 3), w("s", 0, 2)}, 12);
  const auto m = frobenius_mu(a, b);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(m[k] == a[k] * b[k]);
  CHECK_THROWS_AS(frobenius_mu(a, rand_real({w("n", 0, 3), w("s", 0, 3)}, 1)), ShapeMismatch);
  CHECK_THROWS_AS(frobenius_mu(a, rand_real({w("n", 0, 3), w("n", 0, 2)}, 1)), ShapeMismatch);

  const auto v = rand_real({w("n", 0, 3)}, 13);
  const auto d = frobenius_delta(v);
  const auto sp = oracle::copy_spider<RealSemiring>(3, 3);
  CHECK(same_entries(d, einsum<RealSemiring>({{&v, "a"}, {&sp, "abc"}}, "bc")));
  CHECK(approx_equal(frobenius_mu_diagonal(d), v));
  CHECK(frobenius_iota(v) == doctest::Approx(v[0] + v[1] + v[2]));
  const auto z = frobenius_zeta<RealSemiring>(w("n", 0, 3));
  CHECK(same_entries(z, {1.0, 1.0, 1.0}));
}

TEST_CASE("boolean semiring arithmetic") {
  const BoolTensor a({w("n", 0, 3)}, {1, 0, 1});
  const BoolTensor b({w("n", 0, 3)}, {1, 1, 0});
  CHECK(same_entries(frobenius_mu(a, b), {1, 0, 0}));
  CHECK(same_entries(add(a, b), {1, 1, 1}));
  CHECK(frobenius_iota(a) == 1);
  const BoolTensor m({w("n", 0, 3), w("n", 1, 3)}, {0, 1, 0, 0, 0, 1, 1, 0, 0});
  const auto c = contract_between(a, m, {{0, 0}});
  CHECK(same_entries(c, einsum<BooleanSemiring>({{&a, "a"}, {&m, "ab"}}, "b")));
}

TEST_CASE("add and scale") {
  const RealTensor a({w("n", 0, 2)}, {1, 2});
  CHECK(same_entries(add(a, a), {2, 4}));
  CHECK(same_entries(scale(a, 0.5), {0.5, 1}));
  CHECK_THROWS_AS(add(a, RealTensor({w("n", 0, 1)}, {1})), ShapeMismatch);
}
