#pragma once

#include "fairctl/closure.hpp"
#include "fairctl/evaluator.hpp"
#include "fairctl/formula.hpp"
#include "fairctl/kripke.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fairctl
{

  class TableauError : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  enum class Status : std::uint8_t
  {
    Active,
    Frozen,
    Extinguished,
  };

  char status_char(Status s);

  /// Sorted (FormulaLess), duplicate-free, shared between nodes.
  using FormulaSet = std::shared_ptr<const std::vector<Formula>>;

  struct TableauEntry
  {
    Formula theta;
    Status status = Status::Active;
    FormulaSet rho;
    Formula chi_prime;

    Formula phi() const { return theta.arg(0); }
    Formula psi() const { return theta.arg(1); }
    Formula chi() const { return theta.arg(2); }
    bool is_eu() const { return theta.is(Op::EU); }
    /// The eventuality with the context slot replaced by chi_prime.
    Formula strengthened() const;
  };

  struct TableauNode
  {
    std::int32_t parent = -1;
    std::vector<std::uint32_t> children;
    std::uint32_t depth = 0;
    State alpha = 0;
    std::vector<TableauEntry> beta;
    /// Plain children: the formula lambda with dia lambda that created the node.
    std::optional<Formula> lambda;
    /// Binary children: 0 or 1.
    std::int8_t dir = -1;
    /// Binary children: the lambdas (from dia lambda at the parent) this
    /// child is designated for.
    std::vector<Formula> designated;

    // Filled in when the node is unravelled.
    bool expanded = false;
    State jump = 0;
    /// Active index (0-based) used for the jump.
    std::optional<std::size_t> active;
    std::optional<Formula> gamma;
  };

  struct WfViolation
  {
    std::uint32_t node;
    /// 1-based list position.
    std::size_t index;
    char condition;
    std::string to_string() const;
  };

  struct UnravelOptions
  {
    Dialect dialect = Dialect::Plain;
    std::uint32_t depth = 4;
    std::size_t node_budget = 20000;
    /// Check well-formedness after every round.
    bool check_each_round = true;
  };

  /// Lowest state satisfying f; none when eval(f) is empty.
  std::optional<State> sat_in(Formula f, const TransitionSystem& ts, const Valuation& v = {});

  /// Partial tableau over the finite complex algebra of a transition system.
  class Tableau
  {
  public:
    /// phi0 must be satisfiable in the system. In the rooted dialect (and in
    /// the binary dialect on systems with a strict root) the construction
    /// starts from I & EU(phi0,true) & box AR(~I,false).
    Tableau(const TransitionSystem& ts, Formula phi0, Dialect dialect, Valuation extra = {});

    const TransitionSystem& system() const { return ts_; }
    Dialect dialect() const { return dialect_; }
    Formula input() const { return input_; }
    /// The formula the construction starts from (NNF, possibly wrapped).
    Formula root_formula() const { return phi0_; }
    bool rooted() const { return rooted_; }
    const ClosureSet& gamma0() const { return gamma0_; }
    const std::vector<Formula>& gamma0_eventualities() const { return ev_; }

    std::size_t size() const { return nodes_.size(); }
    const TableauNode& node(std::uint32_t i) const { return nodes_[i]; }
    std::vector<TableauNode>& mutable_nodes() { return nodes_; }
    std::vector<std::uint32_t> leaves() const;

    bool holds(Formula f, State s);
    Evaluator& evaluator() { return ev_eval_; }

    /// Propositions true at alpha(v), plus "I" when alpha(v) is the root
    /// state in a rooted construction.
    std::vector<std::string> colour(std::uint32_t v) const;

    /// Unravels every current leaf once. Stops early (returning false) when
    /// the node budget would be exceeded.
    bool one_step_unravel(std::size_t node_budget = SIZE_MAX);

    /// Jump target for `entry` at a node whose state is x: the lowest state
    /// agreeing with x on rho that satisfies the strengthened eventuality.
    std::pair<State, Formula> jump(State x, const TableauEntry& entry);

    /// Checks nodes with index >= from (and their edge to the parent).
    std::vector<WfViolation> well_formed(std::uint32_t from = 0);

  private:
    void init();
    void expand(std::uint32_t v);
    bool agrees(State a, State b, const std::vector<Formula>& rho);

    const TransitionSystem& ts_;
    Dialect dialect_;
    Formula input_;
    Formula phi0_;
    bool rooted_ = false;
    ClosureSet gamma0_;
    std::vector<Formula> ev_;
    FormulaSet gamma0_set_;
    Evaluator ev_eval_;
    std::vector<TableauNode> nodes_;
  };

  struct UnravelResult
  {
    std::unique_ptr<Tableau> tableau;
    std::uint32_t depth_reached = 0;
    bool budget_hit = false;
    std::size_t rounds_checked = 0;
    std::vector<WfViolation> violations;
  };

  UnravelResult unravel(const TransitionSystem& ts, Formula phi0, const UnravelOptions& opts,
                        const Valuation& extra = {});

  // ------------------------------------------------------------ verifiers

  enum class Truth : std::uint8_t
  {
    False = 0,
    Unknown = 1,
    True = 2,
  };

  /// Three-valued truth of f at every tableau node, reading the tree prefix
  /// as the beginning of an infinite tree whose continuation below the
  /// leaves is unknown.
  std::vector<Truth> prefix_truth(Tableau& t, Formula f);

  struct TruthReport
  {
    std::size_t obligations = 0;
    std::size_t verified = 0;
    std::size_t deferred = 0;
    std::vector<std::string> failures;
    std::size_t successor_checks = 0;
    std::vector<std::string> successor_failures;
    /// Rooted runs: number of nodes coloured I, and whether that is just the root.
    std::size_t root_coloured = 0;
    bool root_colour_ok = true;

    bool ok() const
    {
      return failures.empty() && successor_failures.empty() && root_colour_ok;
    }
    std::string summary() const;
  };

  TruthReport verify_truth_prefix(Tableau& t);

  struct MonitorReport
  {
    std::size_t branches = 0;
    std::size_t tracks = 0;
    std::size_t eu_extinguished = 0;
    std::size_t eu_pending = 0;
    std::size_t af_extinguished = 0;
    std::size_t af_frozen_tail = 0;
    std::size_t af_pending = 0;
    /// Largest |A_k| seen.
    std::size_t max_active = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    std::string summary() const;
  };

  /// Per branch and list position: status sequence, the active-position
  /// bound |A_k| <= t~ + 2^|rho| and pairwise distinct rho-types of the
  /// states at active positions after t~.
  MonitorReport monitor_eventualities(Tableau& t);

  /// JSON trace of the tableau.
  std::string tableau_trace_json(Tableau& t);

} // namespace fairctl
