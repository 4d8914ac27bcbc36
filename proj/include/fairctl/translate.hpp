#pragma once

#include "fairctl/automata.hpp"
#include "fairctl/fo.hpp"
#include "fairctl/formula.hpp"
#include "fairctl/mso.hpp"

#include <string>

namespace fairctl
{

  /// Term t with: phi holds iff t evaluates to the full set (on rooted
  /// algebras). Throws std::invalid_argument on quantifiers.
  Formula qf_to_equation(const FOFormula& phi);
  /// I ∧ ¬EU(¬t, ⊤): phi holds iff this term is non-empty.
  Formula qf_to_nonbot(const FOFormula& phi);

  /// MSO formula with one free element variable `v` (plus the propositions
  /// of t as free set variables) defining the extension of t. X0/X1 need
  /// `s2s`.
  MSOFormula standard_translation(Formula t, bool s2s = false, const std::string& v = "v");

  /// Atomic t1 = t2 becomes all1 v. (t1(v) <-> t2(v)); quantifiers over
  /// algebra elements become set quantifiers.
  MSOFormula fo_to_mso(const FOFormula& phi, bool s2s = false);

  /// ∃q̄ (acc_aut = ⊤) with one existential per automaton state.
  FOFormula build_psi(const ModalAutomaton& aut);

} // namespace fairctl
