#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fairctl
{

  using NodeSet = boost::dynamic_bitset<>;
  using State = std::uint32_t;

  class ModelError : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  /// Finite serial transition system with a colouring, an optional root and
  /// optional deterministic successor maps f0/f1.
  class TransitionSystem
  {
  public:
    TransitionSystem() = default;
    explicit TransitionSystem(std::size_t n);

    std::size_t size() const { return succ_.size(); }

    void add_edge(State from, State to);
    void add_prop(std::string_view name);
    void set_colour(State s, std::string_view prop, bool value = true);
    void set_root(State s);
    void clear_root();
    /// Sets f_dir(from) = to and derives the corresponding edge.
    void set_successor(int dir, State from, State to);

    const std::vector<State>& successors(State s) const { return succ_[s]; }
    const std::vector<State>& predecessors(State s) const { return pred_[s]; }
    bool has_edge(State from, State to) const;

    /// Proposition names in sorted order.
    const std::vector<std::string>& props() const { return props_; }
    bool has_prop(std::string_view name) const;
    /// States where the proposition holds.
    const NodeSet& extension(std::string_view prop) const;
    std::vector<std::string> colour(State s) const;

    std::optional<State> root() const { return root_; }
    /// Rooted and the root has no incoming edge.
    bool has_strict_root() const;
    bool is_binary() const { return !f_[0].empty(); }
    State next(int dir, State s) const { return f_[dir][s]; }

    /// Throws ModelError when an invariant is violated.
    void validate() const;

    NodeSet empty_set() const { return NodeSet(size()); }
    NodeSet full_set() const { return ~NodeSet(size()); }

  private:
    std::vector<std::vector<State>> succ_, pred_;
    std::vector<std::string> props_;
    std::vector<NodeSet> ext_;
    std::optional<State> root_;
    std::vector<State> f_[2];
  };

  TransitionSystem load_system(std::string_view text);
  TransitionSystem load_system_file(const std::string& path);
  std::string save_system(const TransitionSystem& ts);

  /// Finite tree prefix of an unravelling. Node 0 is the root.
  struct UnravelTree
  {
    std::vector<std::int32_t> parent;
    std::vector<std::vector<std::uint32_t>> children;
    /// State of the generating system each node projects to.
    std::vector<State> state;
    /// Copy index within the parent's children for the same state (always 0
    /// for plain unravellings).
    std::vector<std::uint32_t> copy;
    std::vector<std::uint32_t> depth;
    /// Child direction in binary unravellings, -1 otherwise.
    std::vector<std::int8_t> dir;

    std::size_t size() const { return state.size(); }
  };

  /// Tree of height d whose branches are the R-paths from the root. Binary
  /// systems unravel along f0, f1 (two children per node, in order).
  UnravelTree unravel_to_depth(const TransitionSystem& ts, std::uint32_t depth);

  /// Truncated omega-expansion: every node receives `width` copies of each
  /// successor state.
  UnravelTree omega_expand_to_depth(const TransitionSystem& ts, std::uint32_t depth,
                                    std::uint32_t width);

} // namespace fairctl
