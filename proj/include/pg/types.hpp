#pragma once

#include <cstdint>

namespace pg {

using vertex_t = std::int32_t;

enum class Player : std::uint8_t { even = 0, odd = 1 };

constexpr Player opponent(Player p) {
    return p == Player::even ? Player::odd : Player::even;
}

/// Player that wins a play whose highest recurring priority is `priority`.
constexpr Player priority_winner(std::int32_t priority) {
    return (priority & 1) ? Player::odd : Player::even;
}

constexpr int player_index(Player p) {
    return static_cast<int>(p);
}

constexpr char player_char(Player p) {
    return p == Player::even ? '0' : '1';
}

} // namespace pg
