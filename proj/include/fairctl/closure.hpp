#pragma once

#include "fairctl/formula.hpp"

#include <map>
#include <string>
#include <vector>

namespace fairctl
{

  /// Fischer-Ladner closed set of NNF formulas.
  struct ClosureSet
  {
    Dialect dialect = Dialect::Plain;
    /// Members in structural order.
    std::vector<Formula> members;
    /// Rule that first added each member ("seed", "top", "sub", "EG", ...).
    std::map<Formula, std::string, FormulaLess> provenance;
    /// Size bound computed from the seed; |members| never exceeds it.
    std::size_t bound = 0;

    bool contains(Formula f) const { return provenance.count(f) > 0; }
    std::size_t size() const { return members.size(); }
  };

  /// Throws std::invalid_argument when a seed formula is not in NNF or does
  /// not fit the dialect.
  ClosureSet fischer_ladner_closure(std::span<const Formula> seed, Dialect dialect);

  /// EU/AF members of the closure, in structural order.
  std::vector<Formula> eventualities(const ClosureSet& gamma);

  /// kappa(x, rho): conjunction of the rho-members in `state` and negations of
  /// the others, in the order of `rho`.
  Formula characteristic_formula(std::span<const Formula> state,
                                 std::span<const Formula> rho);

} // namespace fairctl
