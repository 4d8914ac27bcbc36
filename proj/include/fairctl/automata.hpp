#pragma once

#include "fairctl/formula.hpp"
#include "fairctl/kripke.hpp"
#include "fairctl/random.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fairctl
{

  class AutomatonError : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  /// Labels are bitmasks over the automaton's proposition list (bit i set
  /// iff props[i] holds).
  using Label = std::uint32_t;

  struct ModalAutomaton
  {
    std::vector<std::string> props;
    std::vector<std::string> states;
    std::size_t init = 0;
    std::vector<unsigned> priority;
    /// (state, label) -> alternatives; each alternative is a sorted set of
    /// states. Missing entries mean no move.
    std::map<std::pair<std::size_t, Label>, std::vector<std::vector<std::size_t>>> delta;

    const std::vector<std::vector<std::size_t>>& moves(std::size_t q, Label a) const;
    void validate() const;
  };

  struct ParityTransition
  {
    std::size_t from;
    Label label;
    std::size_t left, right;
    auto operator<=>(const ParityTransition&) const = default;
  };

  struct ParityTreeAutomaton
  {
    std::vector<std::string> props;
    std::vector<std::string> states;
    std::size_t init = 0;
    std::vector<unsigned> priority;
    /// Sorted, without duplicates.
    std::vector<ParityTransition> delta;

    std::vector<ParityTransition> moves(std::size_t q, Label a) const;
    void validate() const;
  };

  using Automaton = std::variant<ModalAutomaton, ParityTreeAutomaton>;

  Automaton load_automaton(std::string_view text);
  Automaton load_automaton_file(const std::string& path);
  std::string save_automaton(const ModalAutomaton& a);
  std::string save_automaton(const ParityTreeAutomaton& a);

  /// Label of state s over `props`; throws AutomatonError when the system's
  /// propositions differ from `props`.
  Label label_of(const TransitionSystem& ts, State s, const std::vector<std::string>& props);
  void check_alphabet(const TransitionSystem& ts, const std::vector<std::string>& props);

  /// Conjunction of the literals fixing every proposition to its value in `a`.
  Formula valuation_formula(const std::vector<std::string>& props, Label a);

  struct AccTerm
  {
    Formula acc1, acc2, acc3;
    Formula combined() const { return Formula::land(Formula::land(acc1, acc2), acc3); }
  };

  AccTerm acc_parts_modal(const ModalAutomaton& aut);
  AccTerm acc_parts_binary(const ParityTreeAutomaton& aut);
  Formula compile_acc_modal(const ModalAutomaton& aut);
  Formula compile_acc_binary(const ParityTreeAutomaton& aut);

  // ---------------------------------------------------------------- runs

  /// Branch segment through a tree prefix whose last node repeats the
  /// (generator state, run state) pair found at `cycle_start`; the run
  /// restricted to the branch then cycles through path[cycle_start..end).
  struct Lasso
  {
    std::vector<std::uint32_t> path;
    std::size_t cycle_start = 0;
  };

  struct RunReport
  {
    bool initial_ok = true;
    std::size_t transitions_checked = 0;
    std::vector<std::string> transition_violations;
    std::vector<std::string> malformed_lassos;
    /// Lassos starting at the root of the prefix.
    std::size_t lassos_root = 0;
    std::vector<std::string> success_violations_root;
    /// Lassos starting anywhere.
    std::size_t lassos_suffix = 0;
    std::vector<std::string> success_violations_suffix;

    bool ok() const
    {
      return initial_ok && transition_violations.empty() && malformed_lassos.empty() &&
             success_violations_suffix.empty();
    }
    std::string summary() const;
  };

  /// `run[v]` is the automaton state at tree node v. Leaves have no
  /// transition obligation.
  RunReport check_run_prefix(const ModalAutomaton& aut, const TransitionSystem& ts,
                             const UnravelTree& tree, const std::vector<std::size_t>& run,
                             const std::vector<Lasso>& lassos = {});
  RunReport check_run_prefix(const ParityTreeAutomaton& aut, const TransitionSystem& ts,
                             const UnravelTree& tree, const std::vector<std::size_t>& run,
                             const std::vector<Lasso>& lassos = {});

  // ---------------------------------------------------------- acceptance

  using ProductVertex = std::pair<State, std::size_t>;

  struct AcceptanceResult
  {
    bool accepted = false;
    std::size_t game_vertices = 0;
    /// Eve's positional choice for every product vertex she wins, as an
    /// index into aut.delta.
    std::map<ProductVertex, std::size_t> choice;
  };

  /// Decides whether the automaton has a successful run on the binary tree
  /// generated by `gen` (binary, rooted).
  AcceptanceResult accepts_regular(const ParityTreeAutomaton& aut, const TransitionSystem& gen);

  /// Binary rooted system over the vertices reachable from (root, init)
  /// under `choice`. State 0 is a fresh copy of (root, init) without
  /// incoming edges; every state is coloured with its generator colour plus
  /// the name of its automaton state.
  TransitionSystem build_product(const ParityTreeAutomaton& aut, const TransitionSystem& gen,
                                 const std::map<ProductVertex, std::size_t>& choice,
                                 std::vector<ProductVertex>* vertices = nullptr);

  /// Run on the depth-d unravelling of gen induced by `choice`, with one
  /// lasso per branch that revisits a product vertex.
  std::vector<std::size_t> induced_run(const ParityTreeAutomaton& aut,
                                       const TransitionSystem& gen, const UnravelTree& tree,
                                       const std::map<ProductVertex, std::size_t>& choice,
                                       std::vector<Lasso>* lassos = nullptr);

  struct RefutationResult
  {
    bool witness_found = false;
    std::size_t labellings_checked = 0;
    bool exhausted = true;
  };

  /// Enumerates positional labellings of the product (one transition per
  /// reachable product vertex) and tests eval(acc) = all states on each.
  RefutationResult search_labellings(const ParityTreeAutomaton& aut,
                                     const TransitionSystem& gen, std::size_t cap);

  struct AutomatonGen
  {
    std::size_t props = 1;
    std::size_t states = 2;
    unsigned max_priority = 3;
    /// Probability that a (state, label) pair has no transition.
    double dead = 0.15;
    std::size_t max_moves = 2;
  };

  ParityTreeAutomaton random_parity_automaton(Rng& rng, const AutomatonGen& gen);

} // namespace fairctl
