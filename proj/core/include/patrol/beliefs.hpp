#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace patrol {

/// One robot's opinion about one node, stored in half-units so that fusion
/// is exact: False = 0, Uncertain = 1/2, True = 1.
enum class Belief : std::uint8_t { False = 0, Uncertain = 1, True = 2 };

constexpr int half_units(Belief b) noexcept { return static_cast<int>(b); }

constexpr Belief belief_from_half_units(int h) noexcept {
  return h <= 0 ? Belief::False : (h >= 2 ? Belief::True : Belief::Uncertain);
}

constexpr Belief belief_from_observation(bool observed) noexcept {
  return observed ? Belief::True : Belief::False;
}

namespace detail {
// Rows: first operand, columns: second operand (0, 1/2, 1).
inline constexpr std::array<std::array<Belief, 3>, 3> kFusionTable{{
    {Belief::False, Belief::False, Belief::Uncertain},
    {Belief::False, Belief::Uncertain, Belief::True},
    {Belief::Uncertain, Belief::True, Belief::True},
}};
}  // namespace detail

/// Ternary fusion of two opinions. Conflicting certainties give Uncertain;
/// Uncertain is the identity. Commutative and idempotent but NOT associative.
constexpr Belief fuse(Belief a, Belief b) noexcept {
  return detail::kFusionTable[half_units(a)][half_units(b)];
}

/// Fuse a prior with a fresh sensor reading.
constexpr Belief measurement_update(Belief prior, bool observation) noexcept {
  return fuse(prior, belief_from_observation(observation));
}

using BeliefVector = std::vector<Belief>;

inline BeliefVector uncertain_beliefs(std::size_t node_count) {
  return BeliefVector(node_count, Belief::Uncertain);
}

/// Element-wise fuse. Both spans must have the same length (checked).
BeliefVector fuse_vectors(std::span<const Belief> lhs, std::span<const Belief> rhs);

/// Log form: "0", "0.5" or "1".
std::string_view to_string(Belief b) noexcept;

/// Numeric value in {0, 0.5, 1}.
constexpr double to_double(Belief b) noexcept { return half_units(b) * 0.5; }

}  // namespace patrol
