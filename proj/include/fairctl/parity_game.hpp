#pragma once

#include <cstdint>
#include <vector>

namespace fairctl
{

  /// Two-player min-parity game. Player 0 (Eve) wins a play when the least
  /// priority seen infinitely often is even.
  class ParityGame
  {
  public:
    std::uint32_t add_vertex(int owner, unsigned priority);
    void add_edge(std::uint32_t from, std::uint32_t to);

    std::size_t size() const { return owner_.size(); }
    int owner(std::uint32_t v) const { return owner_[v]; }
    unsigned priority(std::uint32_t v) const { return prio_[v]; }
    const std::vector<std::uint32_t>& successors(std::uint32_t v) const { return succ_[v]; }
    const std::vector<std::uint32_t>& predecessors(std::uint32_t v) const { return pred_[v]; }

  private:
    std::vector<int> owner_;
    std::vector<unsigned> prio_;
    std::vector<std::vector<std::uint32_t>> succ_, pred_;
  };

  struct GameSolution
  {
    /// Winner (0 or 1) of each vertex.
    std::vector<int> winner;
    /// Positional winning move for vertices owned by their winner, -1 elsewhere.
    std::vector<std::int64_t> strategy;
  };

  /// Recursive attractor-based solver. Every vertex must have a successor.
  GameSolution solve_parity_game(const ParityGame& g);

  /// Checks that `strategy` is winning for `player` from every vertex in its
  /// winning region: the region is closed under the opponent's moves and the
  /// player's chosen moves, and every cycle there has a least priority of the
  /// player's parity.
  bool verify_strategy(const ParityGame& g, const GameSolution& sol, int player);

} // namespace fairctl
