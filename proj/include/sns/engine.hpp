// engine.hpp — runs complete cardinal semantic transformations.
//
// A step executes all allowed operators once; a run iterates steps until
// no operator is allowed (Terminated) or a step budget is exhausted. The
// default Synchronous scheduler evaluates every operator against the
// step-start snapshot and applies all effects jointly; the sequential
// schedulers exist to demonstrate that acyclic networks reach the same
// fixpoint in any order.

#pragma once

#include "sns/core.hpp"
#include "sns/operators.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>

namespace sns {

struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SchedulerKind { Synchronous, SequentialDeclared, SequentialPermuted };

struct Scheduler {
    SchedulerKind kind = SchedulerKind::Synchronous;
    std::uint64_t seed = 0;  // SequentialPermuted only; equal seeds, equal orders

    static Scheduler synchronous() { return {}; }
    static Scheduler sequential_declared() { return {SchedulerKind::SequentialDeclared, 0}; }
    static Scheduler sequential_permuted(std::uint64_t seed) {
        return {SchedulerKind::SequentialPermuted, seed};
    }

    std::string label() const;  // "sync", "seq", "perm:<seed>"
};

/// Cardinals indexed by entity declaration order.
using CardinalState = std::vector<Cardinal>;

struct StepRecord {
    std::size_t step_index = 0;  // tau, 1-based
    std::vector<OperatorEffect> fired;
    CardinalState cardinals_after;  // aligned with cao.entities
};

enum class RunStatus { Terminated, BudgetExhausted };

struct RunResult {
    Multinumber final;
    Multicardinal final_multicardinal;
    std::size_t length = 0;  // omega: number of steps taken
    std::vector<StepRecord> trace;
    RunStatus status = RunStatus::Terminated;
};

inline constexpr std::size_t kDefaultMaxSteps = 1'000'000;

/// State holding each entity's init value (the initial assignment).
CardinalState initial_state(const Cao& cao);

/// All-zero state.
CardinalState zero_state(const Cao& cao);

/// The reset action: every entity mapped to zero.
std::map<EntityName, Cardinal> reset(const Cao& cao);

/// Named view of an indexed state.
std::map<EntityName, Cardinal> named_cardinals(const Cao& cao, const CardinalState& state);

/// Multiset view of an indexed state at step tau.
Multicardinal multicardinal_of(const Cao& cao, const CardinalState& state, std::size_t tau);

/// Operator visit order a scheduler uses (declaration order, or the
/// seed-determined permutation).
std::vector<std::size_t> scheduler_order(const Cao& cao, const Scheduler& scheduler);

/// True iff some operator can fire on `state`.
bool any_allowed(const Cao& cao, const CardinalState& state);

/// Executes one step in place and reports what fired. Throws
/// EngineError("no operator allowed") when the state is already a fixpoint.
StepRecord step(const Cao& cao, CardinalState& state,
                const Scheduler& scheduler = Scheduler::synchronous());

/// Runs from the initial assignment until fixpoint or the step budget.
RunResult run(const Cao& cao, const Scheduler& scheduler = Scheduler::synchronous(),
              std::size_t max_steps = kDefaultMaxSteps);

/// Runs from an explicit starting state.
RunResult run_from(const Cao& cao, CardinalState state,
                   const Scheduler& scheduler = Scheduler::synchronous(),
                   std::size_t max_steps = kDefaultMaxSteps);

struct ConfluenceReport {
    enum class Status {
        Confluent,     // all schedulers reached the same final cardinal map
        Divergent,     // two runs disagree; see divergent_pair
        Inconclusive,  // some run hit the step budget
    };
    Status status = Status::Confluent;
    std::vector<RunResult> runs;  // aligned with the scheduler list
    std::optional<std::pair<std::size_t, std::size_t>> divergent_pair;

    bool confluent() const { return status == Status::Confluent; }
};

/// Runs the network under every scheduler and compares final cardinal
/// maps entity by entity. Requires an acyclic network (throws
/// std::invalid_argument otherwise); budget-exhausted runs make the
/// outcome Inconclusive rather than false.
ConfluenceReport confluence_check(const Cao& cao, std::span<const Scheduler> schedulers,
                                  std::size_t max_steps = kDefaultMaxSteps);

}  // namespace sns
