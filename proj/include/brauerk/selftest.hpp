#pragma once

#include <string>
#include <vector>

#include "brauerk/config.hpp"

namespace brauerk {

  struct CriterionResult {
    int         id = 0;
    std::string title;
    bool        pass = false;
    std::string detail;   // counts on success, the first failure otherwise
    double      seconds = 0;
  };

  // The ten acceptance criteria, in order. Deterministic; exceptions inside a
  // criterion are reported as its failure.
  std::vector<CriterionResult> run_selftest(Limits const& limits = default_limits());
  CriterionResult               run_criterion(int id, Limits const& limits = default_limits());

}  // namespace brauerk
