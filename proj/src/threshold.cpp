#include "mecsim/threshold.hpp"

namespace mecsim::threshold {

ThresholdDecision decide(const Task& task, const Executor& target) {
  if (!(task.mem_mb <= target.mem_avail_mb)) {
    return {false, Reason::MemInfeasible};
  }
  if (!(task.workload <= target.exec_budget)) {
    return {false, Reason::BudgetInfeasible};
  }
  return {true, Reason::Feasible};
}

}  // namespace mecsim::threshold
