#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <string_view>

namespace frobcoord {

/// A commutative semiring given as a policy type with static operations.
template <typename S>
concept Semiring = requires(typename S::value_type a, typename S::value_type b) {
  { S::zero() } -> std::same_as<typename S::value_type>;
  { S::one() } -> std::same_as<typename S::value_type>;
  { S::add(a, b) } -> std::same_as<typename S::value_type>;
  { S::mul(a, b) } -> std::same_as<typename S::value_type>;
  { S::equal(a, b) } -> std::same_as<bool>;
  { S::name } -> std::convertible_to<std::string_view>;
};

/// Real numbers in double precision. Equality is relative with an absolute floor.
struct RealSemiring {
  using value_type = double;

  static constexpr std::string_view name = "real";
  static constexpr double relative_tolerance = 1e-10;
  static constexpr double absolute_tolerance = 1e-12;

  static constexpr double zero() { return 0.0; }
  static constexpr double one() { return 1.0; }
  static constexpr double add(double a, double b) { return a + b; }
  static constexpr double mul(double a, double b) { return a * b; }

  static bool equal(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= std::max(absolute_tolerance, relative_tolerance * scale);
  }
};

/// Booleans: add is OR, mul is AND. Elements are stored as 0/1 bytes.
struct BooleanSemiring {
  using value_type = std::uint8_t;

  static constexpr std::string_view name = "bool";

  static constexpr value_type zero() { return 0; }
  static constexpr value_type one() { return 1; }
  static constexpr value_type add(value_type a, value_type b) {
    return static_cast<value_type>((a | b) != 0);
  }
  static constexpr value_type mul(value_type a, value_type b) {
    return static_cast<value_type>((a & b) != 0);
  }
  static bool equal(value_type a, value_type b) { return (a != 0) == (b != 0); }
};

static_assert(Semiring<RealSemiring>);
static_assert(Semiring<BooleanSemiring>);

}  // namespace frobcoord
