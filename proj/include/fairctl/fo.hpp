#pragma once

#include "fairctl/evaluator.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace fairctl
{

  /// First-order formula over the algebra signature; atoms are equations
  /// between terms, quantifiers range over algebra elements.
  class FOFormula
  {
  public:
    enum class Kind
    {
      Eq,
      Not,
      And,
      Or,
      Implies,
      Forall,
      Exists,
    };

    static FOFormula eq(Formula lhs, Formula rhs);
    static FOFormula lnot(FOFormula f);
    static FOFormula land(FOFormula a, FOFormula b);
    static FOFormula lor(FOFormula a, FOFormula b);
    static FOFormula implies(FOFormula a, FOFormula b);
    static FOFormula forall(std::string var, FOFormula f);
    static FOFormula exists(std::string var, FOFormula f);

    Kind kind() const { return node_->kind; }
    Formula lhs() const { return node_->lhs; }
    Formula rhs() const { return node_->rhs; }
    const FOFormula& sub(std::size_t i) const { return node_->subs[i]; }
    std::size_t arity() const { return node_->subs.size(); }
    const std::string& var() const { return node_->var; }

    bool quantifier_free() const;
    std::size_t quantifier_count() const;
    std::set<std::string> free_variables() const;

  private:
    struct Node
    {
      Kind kind;
      Formula lhs, rhs;
      std::vector<FOFormula> subs;
      std::string var;
    };
    explicit FOFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
  };

  std::string to_string(const FOFormula& f);

  /// Quantifiers enumerate all subsets of the state space (at most 12 states).
  bool eval_fo(const FOFormula& f, const TransitionSystem& ts, const Valuation& v = {});
  /// Throws EvalError when f has a quantifier.
  bool eval_qf(const FOFormula& f, const TransitionSystem& ts, const Valuation& v = {});

} // namespace fairctl
