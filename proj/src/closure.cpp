#include "fairctl/closure.hpp"

#include <set>
#include <stdexcept>

namespace fairctl
{

  ClosureSet fischer_ladner_closure(std::span<const Formula> seed, Dialect dialect)
  {
    ClosureSet out;
    out.dialect = dialect;

    std::size_t sub_total = 0;
    for (Formula f : seed)
    {
      if (!is_nnf(f))
        throw std::invalid_argument("closure seed is not in negation normal form: " +
                                    to_string(f));
      if (!fits_dialect(f, dialect))
        throw DialectError("closure seed does not fit the " +
                           std::string(dialect_name(dialect)) + " dialect: " + to_string(f));
      sub_total += subformulas(f).size();
    }
    // each subformula contributes at most one rule formula plus its few new
    // subterms; the binary dialect adds X0/X1 copies of every diamond
    out.bound = 8 + 13 * (sub_total + 4);

    std::vector<std::pair<Formula, const char*>> work;
    auto add = [&](Formula f, const char* rule) { work.emplace_back(f, rule); };

    Formula t = Formula::top();
    add(Formula::eu(t, t, t), "top");
    for (Formula f : seed)
      add(f, "seed");

    while (!work.empty())
    {
      auto [f, rule] = work.back();
      work.pop_back();
      if (!out.provenance.emplace(f, rule).second)
        continue;
      if (out.provenance.size() > out.bound)
        throw std::logic_error("closure exceeded its size bound");

      for (std::size_t i = 0; i < f.arity(); ++i)
        add(f.arg(i), "sub");

      switch (f.op())
      {
        case Op::EG:
          add(Formula::dia(Formula::eu(Formula::land(f.arg(1), f), f.arg(0))), "EG");
          break;
        case Op::AR:
          add(Formula::box(f), "AR");
          break;
        case Op::EU:
          add(Formula::dia(Formula::land(f.arg(2), f)), "EU");
          break;
        case Op::AF:
          add(Formula::box(Formula::ar(Formula::lor(f.arg(1), f.arg(2)), f.arg(0))), "AF");
          break;
        case Op::Diamond:
          if (dialect == Dialect::Binary)
          {
            add(Formula::next(0, f.arg(0)), "X");
            add(Formula::next(1, f.arg(0)), "X");
          }
          break;
        default:
          break;
      }
    }

    out.members.reserve(out.provenance.size());
    for (auto& [f, rule] : out.provenance)
      out.members.push_back(f);
    return out;
  }

  std::vector<Formula> eventualities(const ClosureSet& gamma)
  {
    std::vector<Formula> out;
    for (Formula f : gamma.members)
      if (f.is_eventuality())
        out.push_back(f);
    return out;
  }

  Formula characteristic_formula(std::span<const Formula> state,
                                 std::span<const Formula> rho)
  {
    std::set<Formula, FormulaLess> in(state.begin(), state.end());
    std::vector<Formula> parts;
    parts.reserve(rho.size());
    for (Formula g : rho)
      parts.push_back(in.count(g) ? g : Formula::neg(g));
    return conjunction(parts);
  }

} // namespace fairctl
