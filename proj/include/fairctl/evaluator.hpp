#pragma once

#include "fairctl/formula.hpp"
#include "fairctl/kripke.hpp"

#include <map>
#include <string>
#include <unordered_map>

namespace fairctl
{

  class EvalError : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  /// Power-set algebra P(S) of a transition system.
  class ComplexAlgebra
  {
  public:
    /// Deliberate defects used to show that the axiom checks have teeth.
    enum class Mutation
    {
      None,
      EgLeastFixpoint,
    };

    explicit ComplexAlgebra(const TransitionSystem& ts, Mutation m = Mutation::None);

    const TransitionSystem& system() const { return ts_; }
    std::size_t size() const { return ts_.size(); }
    NodeSet bottom() const { return ts_.empty_set(); }
    NodeSet top() const { return ts_.full_set(); }

    NodeSet dia(const NodeSet& a) const;
    NodeSet box(const NodeSet& a) const;
    NodeSet next(int dir, const NodeSet& a) const;
    NodeSet root() const;

    NodeSet eu(const NodeSet& a, const NodeSet& b) const;
    NodeSet eg(const NodeSet& a, const NodeSet& b) const;
    NodeSet ar(const NodeSet& a, const NodeSet& b) const;
    NodeSet af(const NodeSet& a, const NodeSet& b) const;

    /// Largest number of Kleene rounds any fixpoint needed so far.
    std::size_t max_rounds() const { return max_rounds_; }

  private:
    void note_rounds(std::size_t r) const;

    const TransitionSystem& ts_;
    Mutation mutation_;
    mutable std::size_t max_rounds_ = 0;
  };

  using Valuation = std::map<std::string, NodeSet, std::less<>>;

  /// Valuation read off the colouring of the system.
  Valuation colouring_valuation(const TransitionSystem& ts);

  /// Memoising model checker. Variables are looked up in the valuation first
  /// and then in the colouring of the system.
  class Evaluator
  {
  public:
    explicit Evaluator(const TransitionSystem& ts, Valuation extra = {},
                       ComplexAlgebra::Mutation m = ComplexAlgebra::Mutation::None);

    const NodeSet& eval(Formula f);
    bool holds(Formula f, State s) { return eval(f)[s]; }
    const ComplexAlgebra& algebra() const { return alg_; }
    const TransitionSystem& system() const { return alg_.system(); }

  private:
    NodeSet compute(Formula f);

    ComplexAlgebra alg_;
    Valuation vals_;
    std::unordered_map<Formula, NodeSet> memo_;
  };

  /// One-shot evaluation.
  NodeSet eval(Formula f, const TransitionSystem& ts, const Valuation& extra = {});

  /// Path-enumeration oracles (independent of the fixpoint evaluator).
  /// EU: a simple path through b-states ending in an a-state. EG: a simple
  /// lasso inside a whose cycle meets b; on finite systems a fair infinite
  /// path exists iff such a lasso does.
  NodeSet brute_force_eu(const TransitionSystem& ts, const NodeSet& a, const NodeSet& b);
  NodeSet brute_force_eg(const TransitionSystem& ts, const NodeSet& a, const NodeSet& b);
  NodeSet brute_force_ar(const TransitionSystem& ts, const NodeSet& a, const NodeSet& b);
  NodeSet brute_force_af(const TransitionSystem& ts, const NodeSet& a, const NodeSet& b);

  inline constexpr std::size_t kBruteForceLimit = 10;

  std::string format_set(const NodeSet& s);

} // namespace fairctl
