#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fairctl
{

  struct SelftestOptions
  {
    std::uint64_t seed = 7;
    /// Scales the sample counts; each criterion uses at least its own minimum.
    std::size_t samples = 200;
    /// Criteria to run (1-9); empty means all.
    std::vector<int> only;
  };

  struct CriterionResult
  {
    int id = 0;
    std::string title;
    bool pass = false;
    /// One line of counts, then the first few problems.
    std::vector<std::string> details;

    std::string line() const;
  };

  struct SelftestReport
  {
    std::vector<CriterionResult> criteria;

    bool ok() const;
    std::string text() const;
    std::string json() const;
  };

  inline constexpr int kCriteria = 9;

  CriterionResult run_criterion(int id, const SelftestOptions& opts);
  SelftestReport run_selftest(const SelftestOptions& opts);

} // namespace fairctl
