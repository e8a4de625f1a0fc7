#pragma once

#include "mecsim/types.hpp"

namespace mecsim::threshold {

enum class Reason { Feasible, MemInfeasible, BudgetInfeasible };

struct ThresholdDecision {
  bool feasible = false;  // the binary rule's output
  Reason reason = Reason::MemInfeasible;
};

// Binary offload-feasibility rule: feasible exactly when the task's memory
// fits the executor's available memory and its workload fits the executor's
// execution budget. Both comparisons are non-strict. Memory is checked first.
ThresholdDecision decide(const Task& task, const Executor& target);

}  // namespace mecsim::threshold
