#pragma once

#include "fairctl/evaluator.hpp"
#include "fairctl/random.hpp"

#include <map>
#include <string>
#include <vector>

namespace fairctl
{

  struct AxiomTally
  {
    std::size_t checked = 0;
    /// Instances where an implication's antecedent held.
    std::size_t triggered = 0;
    std::size_t violations = 0;
  };

  struct AxiomReport
  {
    std::map<std::string, AxiomTally> tallies;
    /// First few violations, human readable.
    std::vector<std::string> examples;
    std::size_t triples = 0;
    bool exhaustive = false;

    std::size_t violations() const;
    void merge(const AxiomReport& other);
    std::string summary() const;
  };

  struct AxiomOptions
  {
    /// Enumerate every subset triple up to this many states.
    std::size_t exhaustive_limit = 4;
    /// Sampled triples above the limit.
    std::size_t samples = 100;
  };

  /// Quasi-equations of the theory (K, D, fixpoint axioms, derived AR/AF
  /// rules, rooted and binary axioms where the system supports them).
  AxiomReport check_axioms(const ComplexAlgebra& alg, Rng& rng, const AxiomOptions& opts = {});

  /// Contextual operators: Kleene characterisations, AF unfolding and both
  /// context rules.
  AxiomReport check_contextual(const TransitionSystem& ts, Rng& rng,
                               const AxiomOptions& opts = {});

} // namespace fairctl
