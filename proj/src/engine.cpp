#include "sns/engine.hpp"

#include "sns/topology.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace sns {

std::string Scheduler::label() const {
    switch (kind) {
        case SchedulerKind::Synchronous: return "sync";
        case SchedulerKind::SequentialDeclared: return "seq";
        case SchedulerKind::SequentialPermuted: return "perm:" + std::to_string(seed);
    }
    return "?";
}

CardinalState initial_state(const Cao& cao) {
    CardinalState state;
    state.reserve(cao.entities.size());
    for (const auto& e : cao.entities) state.push_back(e.cardinal);
    return state;
}

CardinalState zero_state(const Cao& cao) { return CardinalState(cao.entities.size(), Cardinal(0)); }

std::map<EntityName, Cardinal> reset(const Cao& cao) {
    std::map<EntityName, Cardinal> zeros;
    for (const auto& e : cao.entities) zeros.emplace(e.name, Cardinal(0));
    return zeros;
}

std::map<EntityName, Cardinal> named_cardinals(const Cao& cao, const CardinalState& state) {
    std::map<EntityName, Cardinal> named;
    for (std::size_t i = 0; i < cao.entities.size(); ++i)
        named.emplace(cao.entities[i].name, state[i]);
    return named;
}

Multicardinal multicardinal_of(const Cao& cao, const CardinalState& state, std::size_t tau) {
    Multicardinal mc;
    mc.named = named_cardinals(cao, state);
    mc.step = tau;
    mc.values = state;
    std::sort(mc.values.begin(), mc.values.end());
    return mc;
}

std::vector<std::size_t> scheduler_order(const Cao& cao, const Scheduler& scheduler) {
    std::vector<std::size_t> order(cao.operators.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (scheduler.kind == SchedulerKind::SequentialPermuted) {
        std::mt19937_64 rng(scheduler.seed);
        std::shuffle(order.begin(), order.end(), rng);
    }
    return order;
}

namespace {

bool allowed_at(const Cao& cao, const CardinalState& state, std::size_t oi) {
    const auto& op = cao.operators[oi];
    const auto& idx = cao.op_operand_index[oi];
    switch (op.kind.tag) {
        case KindTag::RadixMultiplicity:
            for (std::size_t k = 0; k < idx.size(); ++k)
                if (state[idx[k]] < op.operands[k].radix) return false;
            return true;
        case KindTag::RadixExcessValue:
        case KindTag::RadixExcessFact:
            for (std::size_t k = 0; k < idx.size(); ++k)
                if (state[idx[k]] <= op.operands[k].radix) return false;
            return true;
        case KindTag::ArbitraryFunction:
            for (std::size_t k = 0; k < idx.size(); ++k)
                if (partial_carry(op.kind, state[idx[k]], op.operands[k].radix) < 1) return false;
            return true;
    }
    return false;
}

OperatorEffect eval_at(const Cao& cao, const CardinalState& state, std::size_t oi) {
    const auto& idx = cao.op_operand_index[oi];
    CardinalList values;
    values.reserve(idx.size());
    for (std::size_t e : idx) values.push_back(state[e]);
    return eval_operator(cao.operators[oi], {values.data(), values.size()});
}

void apply_remainders(const Cao& cao, CardinalState& state, std::size_t oi,
                      const OperatorEffect& effect) {
    const auto& idx = cao.op_operand_index[oi];
    for (std::size_t k = 0; k < idx.size(); ++k) state[idx[k]] = effect.new_operand_values[k];
}

void apply_transformants(const Cao& cao, CardinalState& state, std::size_t oi,
                         const OperatorEffect& effect) {
    const auto& idx = cao.op_image_index[oi];
    for (std::size_t k = 0; k < idx.size(); ++k) state[idx[k]] += effect.transformants[k];
}

// One step; empty `fired` means the state was already a fixpoint (a probe,
// never recorded by run). The state is untouched in that case.
StepRecord step_once(const Cao& cao, CardinalState& state, const Scheduler& scheduler,
                     std::span<const std::size_t> order) {
    StepRecord record;
    if (scheduler.kind == SchedulerKind::Synchronous) {
        // Evaluate everything against the step-start snapshot, then apply
        // jointly: remainders replace operand values, transformants add.
        std::vector<std::size_t> fired_ops;
        for (std::size_t oi = 0; oi < cao.operators.size(); ++oi) {
            if (!allowed_at(cao, state, oi)) continue;
            record.fired.push_back(eval_at(cao, state, oi));
            fired_ops.push_back(oi);
        }
        for (std::size_t k = 0; k < fired_ops.size(); ++k)
            apply_remainders(cao, state, fired_ops[k], record.fired[k]);
        for (std::size_t k = 0; k < fired_ops.size(); ++k)
            apply_transformants(cao, state, fired_ops[k], record.fired[k]);
    } else {
        // Visit operators in scheduler order; each allowed operator fires
        // against the current cardinals and is applied immediately.
        for (std::size_t oi : order) {
            if (!allowed_at(cao, state, oi)) continue;
            OperatorEffect effect = eval_at(cao, state, oi);
            apply_remainders(cao, state, oi, effect);
            apply_transformants(cao, state, oi, effect);
            record.fired.push_back(std::move(effect));
        }
    }
    return record;
}

}  // namespace

bool any_allowed(const Cao& cao, const CardinalState& state) {
    for (std::size_t oi = 0; oi < cao.operators.size(); ++oi)
        if (allowed_at(cao, state, oi)) return true;
    return false;
}

StepRecord step(const Cao& cao, CardinalState& state, const Scheduler& scheduler) {
    auto order = scheduler_order(cao, scheduler);
    StepRecord record = step_once(cao, state, scheduler, order);
    if (record.fired.empty()) throw EngineError("no operator allowed");
    record.step_index = 1;
    record.cardinals_after = state;
    return record;
}

RunResult run_from(const Cao& cao, CardinalState state, const Scheduler& scheduler,
                   std::size_t max_steps) {
    if (state.size() != cao.entities.size())
        throw EngineError("state size does not match entity count");
    auto order = scheduler_order(cao, scheduler);

    RunResult result;
    RunStatus status = RunStatus::Terminated;
    while (true) {
        if (result.trace.size() >= max_steps) {
            status = any_allowed(cao, state) ? RunStatus::BudgetExhausted : RunStatus::Terminated;
            break;
        }
        StepRecord record = step_once(cao, state, scheduler, order);
        if (record.fired.empty()) {
            status = RunStatus::Terminated;
            break;
        }
        record.step_index = result.trace.size() + 1;
        record.cardinals_after = state;
        result.trace.push_back(std::move(record));
    }

    result.status = status;
    result.length = result.trace.size();
    result.final.cao = &cao;
    result.final.cardinals = named_cardinals(cao, state);
    result.final.step = result.length;
    result.final_multicardinal = multicardinal_of(cao, state, result.length);
    return result;
}

RunResult run(const Cao& cao, const Scheduler& scheduler, std::size_t max_steps) {
    return run_from(cao, initial_state(cao), scheduler, max_steps);
}

ConfluenceReport confluence_check(const Cao& cao, std::span<const Scheduler> schedulers,
                                  std::size_t max_steps) {
    if (schedulers.empty()) throw std::invalid_argument("confluence check needs a scheduler list");
    if (!detect_cycles(cao).empty())
        throw std::invalid_argument("confluence check requires an acyclic network");

    ConfluenceReport report;
    report.runs.reserve(schedulers.size());
    for (const auto& s : schedulers) report.runs.push_back(run(cao, s, max_steps));

    for (const auto& r : report.runs) {
        if (r.status == RunStatus::BudgetExhausted) {
            report.status = ConfluenceReport::Status::Inconclusive;
            return report;
        }
    }
    for (std::size_t i = 1; i < report.runs.size(); ++i) {
        if (report.runs[i].final.cardinals != report.runs[0].final.cardinals) {
            report.status = ConfluenceReport::Status::Divergent;
            report.divergent_pair = {std::size_t{0}, i};
            return report;
        }
    }
    report.status = ConfluenceReport::Status::Confluent;
    return report;
}

}  // namespace sns
