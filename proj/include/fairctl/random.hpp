#pragma once

#include "fairctl/formula.hpp"
#include "fairctl/kripke.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fairctl
{

  /// Seeded generator built on std::mt19937_64. Draws use plain modulo and
  /// 53-bit mantissa arithmetic rather than the std distributions, whose
  /// output differs between standard library implementations.
  class Rng
  {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    /// Uniform-ish integer in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) { return eng_() % n; }
    /// Integer in [lo, hi].
    std::int64_t range(std::int64_t lo, std::int64_t hi)
    {
      return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return unit() < p; }
    NodeSet subset(std::size_t n);
    /// Independent stream derived from this one.
    Rng fork() { return Rng(eng_() ^ 0x5851f42d4c957f2dULL); }

  private:
    std::mt19937_64 eng_;
  };

  std::vector<std::string> prop_names(std::size_t count);

  /// Serial system; each state gets 1-3 successors.
  TransitionSystem random_system(Rng& rng, std::size_t states, std::size_t props,
                                 double colour_density = 0.5);
  /// Root 0 has no incoming edge and reaches every state. Needs states >= 2.
  TransitionSystem random_rooted_system(Rng& rng, std::size_t states, std::size_t props);
  /// Binary system (f0, f1) rooted at 0; strict root when `strict` and states >= 2.
  TransitionSystem random_binary_system(Rng& rng, std::size_t states, std::size_t props,
                                        bool strict);

  struct FormulaGen
  {
    std::vector<std::string> props;
    Dialect dialect = Dialect::Plain;
    /// Include ternary EU/AF.
    bool contextual = true;
    /// Restrict to EU/EG/AR/AF-free formulas below this many fixpoint nodes.
    std::size_t max_fixpoints = 1000;
  };

  Formula random_formula(Rng& rng, const FormulaGen& gen, std::size_t depth);

} // namespace fairctl
