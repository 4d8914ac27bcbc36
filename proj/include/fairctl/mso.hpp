#pragma once

#include "fairctl/kripke.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fairctl
{

  /// Monadic second-order formula. Element variables (ex1/all1) range over
  /// singletons; set variables over arbitrary subsets.
  class MSOFormula
  {
  public:
    enum class Kind
    {
      Sub,
      Edge,
      F0,
      F1,
      Not,
      Or,
      And,
      ExSet,
      AllSet,
      ExElem,
      AllElem,
    };

    static MSOFormula sub(std::string p, std::string q);
    static MSOFormula edge(std::string p, std::string q);
    static MSOFormula succ(int dir, std::string p, std::string q);
    static MSOFormula lnot(MSOFormula f);
    static MSOFormula lor(MSOFormula a, MSOFormula b);
    static MSOFormula land(MSOFormula a, MSOFormula b);
    static MSOFormula implies(MSOFormula a, MSOFormula b);
    static MSOFormula iff(MSOFormula a, MSOFormula b);
    static MSOFormula equal(std::string p, std::string q);
    static MSOFormula ex(std::string var, MSOFormula f);
    static MSOFormula all(std::string var, MSOFormula f);
    static MSOFormula ex1(std::string var, MSOFormula f);
    static MSOFormula all1(std::string var, MSOFormula f);

    Kind kind() const { return node_->kind; }
    const std::string& left() const { return node_->a; }
    const std::string& right() const { return node_->b; }
    const std::string& var() const { return node_->a; }
    const MSOFormula& child(std::size_t i) const { return node_->kids[i]; }
    std::size_t arity() const { return node_->kids.size(); }

    bool is_atom() const { return kind() <= Kind::F1; }
    bool is_quantifier() const { return kind() >= Kind::ExSet; }
    bool uses_successors() const;
    std::set<std::string> free_variables() const;
    std::size_t quantifier_count() const;
    std::size_t size() const;

  private:
    struct Node
    {
      Kind kind;
      std::string a, b;
      std::vector<MSOFormula> kids;
    };
    explicit MSOFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
  };

  std::string to_string(const MSOFormula& f);
  MSOFormula parse_mso(std::string_view text);

  /// Free set variables are taken from `assignment`, then from the colouring.
  /// Limited to 8 states.
  bool mso_eval(const MSOFormula& f, const TransitionSystem& ts,
                const std::map<std::string, NodeSet, std::less<>>& assignment = {});

  inline constexpr std::size_t kMsoStateLimit = 8;

} // namespace fairctl
