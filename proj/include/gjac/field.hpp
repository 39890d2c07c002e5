#pragma once

#include <concepts>
#include <string>
#include <type_traits>

#include "gjac/fp.hpp"
#include "gjac/rat.hpp"

namespace gjac {

/// Elements of an exact field. Every element knows its field descriptor,
/// which creates constants (zero/one/integers) and answers square roots.
template <class K>
concept FieldElement = std::regular<K> && requires(const K a, const K b, long long n) {
  typename K::Field;
  { a + b } -> std::same_as<K>;
  { a - b } -> std::same_as<K>;
  { a * b } -> std::same_as<K>;
  { a / b } -> std::same_as<K>;
  { -a } -> std::same_as<K>;
  { a.inv() } -> std::same_as<K>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.field() } -> std::same_as<typename K::Field>;
  { a.to_string() } -> std::convertible_to<std::string>;
  { a < b } -> std::convertible_to<bool>;
  { a.field().from_int(n) } -> std::same_as<K>;
};

template <class K>
concept FiniteFieldElement = FieldElement<K> && K::Field::is_finite();

template <class K>
inline constexpr bool is_rational_v = std::is_same_v<K, Rat>;

}  // namespace gjac
