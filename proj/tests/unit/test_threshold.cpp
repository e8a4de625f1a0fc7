#include <doctest.h>

#include "mecsim/rng.hpp"
#include "mecsim/threshold.hpp"

using namespace mecsim;

namespace {

Task make_task(double mem_mb, double workload) {
  Task t;
  t.mem_mb = mem_mb;
  t.workload = workload;
  t.size_bits = 1;
  t.deadline_slots = 1;
  return t;
}

}  // namespace

TEST_CASE("feasible exactly when both memory and budget fit") {
  // All four combinations of (mem fits, budget fits).
  const Executor target{750.0, 10.0};
  struct Case {
    double mem, workload;
    bool expect;
    threshold::Reason reason;
  };
  const Case cases[] = {
      {500.0, 5.0, true, threshold::Reason::Feasible},
      {500.0, 20.0, false, threshold::Reason::BudgetInfeasible},
      {800.0, 5.0, false, threshold::Reason::MemInfeasible},
      {800.0, 20.0, false, threshold::Reason::MemInfeasible},
  };
  for (const auto& c : cases) {
    CAPTURE(c.mem);
    CAPTURE(c.workload);
    const auto d = threshold::decide(make_task(c.mem, c.workload), target);
    CHECK(d.feasible == c.expect);
    CHECK(d.reason == c.reason);
    CHECK((d.feasible == (d.reason == threshold::Reason::Feasible)));
  }
}

TEST_CASE("500 MB job fits a 750 MB executor") {
  const auto d = threshold::decide(make_task(500.0, 1.0), Executor{750.0, 10.0});
  CHECK(d.feasible);
  CHECK(d.reason == threshold::Reason::Feasible);
}

TEST_CASE("both inequalities are non-strict") {
  const auto d = threshold::decide(make_task(750.0, 10.0), Executor{750.0, 10.0});
  CHECK(d.feasible);
}

TEST_CASE("raising capacity never flips feasible to infeasible") {
  auto stream = rng::make_stream(33, rng::StreamId::TaskFields);
  for (int i = 0; i < 2000; ++i) {
    const Task t = make_task(stream.uniform(0.1, 1000.0), stream.uniform(0.1, 50.0));
    Executor e{stream.uniform(0.1, 1000.0), stream.uniform(0.1, 50.0)};
    const bool before = threshold::decide(t, e).feasible;
    e.mem_avail_mb += stream.uniform(0.0, 500.0);
    e.exec_budget += stream.uniform(0.0, 50.0);
    const bool after = threshold::decide(t, e).feasible;
    if (before) CHECK(after);
  }
}
