#include "sns/operators.hpp"

namespace sns {

Cardinal partial_carry(const OperatorKind& kind, const Cardinal& value, const Cardinal& radix) {
    switch (kind.tag) {
        case KindTag::RadixMultiplicity:
            return value / radix;
        case KindTag::RadixExcessValue:
            return value > radix ? Cardinal(value - radix) : Cardinal(0);
        case KindTag::RadixExcessFact:
            return value > radix ? Cardinal(1) : Cardinal(0);
        case KindTag::ArbitraryFunction: {
            if (!kind.carry_hook) throw KernelError("missing carry hook");
            Cardinal c = kind.carry_hook(value, radix);
            if (c < 0) throw KernelError("invalid carry hook");
            return c;
        }
    }
    throw KernelError("unknown operator kind");
}

Cardinal remainder(const OperatorKind& kind, const Cardinal& value, const Cardinal& radix,
                   const Cardinal& applied) {
    switch (kind.tag) {
        case KindTag::RadixMultiplicity: {
            Cardinal taken = applied * radix;
            if (taken > value) throw KernelError("applied carry exceeds operand value");
            return value - taken;
        }
        case KindTag::RadixExcessValue:
            return 0;
        case KindTag::RadixExcessFact: {
            // Default rule: cap the operand at its threshold.
            Cardinal rem = kind.remainder_hook ? kind.remainder_hook(value, radix) : radix;
            if (rem < 0 || rem > value) throw KernelError("invalid remainder hook");
            return rem;
        }
        case KindTag::ArbitraryFunction: {
            if (!kind.remainder_hook) throw KernelError("missing remainder hook");
            Cardinal rem = kind.remainder_hook(value, radix);
            if (rem < 0 || rem > value) throw KernelError("invalid remainder hook");
            return rem;
        }
    }
    throw KernelError("unknown operator kind");
}

Cardinal common_carry(std::span<const Cardinal> partial_carries) {
    if (partial_carries.empty()) throw KernelError("empty carry list");
    const Cardinal* min = &partial_carries[0];
    for (const auto& p : partial_carries.subspan(1))
        if (p < *min) min = &p;
    return *min;
}

bool is_allowed(const OperatorSpec& op, std::span<const Cardinal> operand_values) {
    switch (op.kind.tag) {
        case KindTag::RadixMultiplicity:
            // floor(N/n) >= 1 for every operand <=> N >= n for every operand
            for (std::size_t i = 0; i < op.operands.size(); ++i)
                if (operand_values[i] < op.operands[i].radix) return false;
            return true;
        case KindTag::RadixExcessValue:
        case KindTag::RadixExcessFact:
            for (std::size_t i = 0; i < op.operands.size(); ++i)
                if (operand_values[i] <= op.operands[i].radix) return false;
            return true;
        case KindTag::ArbitraryFunction:
            for (std::size_t i = 0; i < op.operands.size(); ++i)
                if (partial_carry(op.kind, operand_values[i], op.operands[i].radix) < 1)
                    return false;
            return true;
    }
    return false;
}

namespace {

CardinalList gather(const OperatorSpec& op, const std::map<EntityName, Cardinal>& cardinals) {
    CardinalList values;
    values.reserve(op.operands.size());
    for (const auto& operand : op.operands) {
        auto it = cardinals.find(operand.entity);
        values.push_back(it == cardinals.end() ? Cardinal(0) : it->second);
    }
    return values;
}

}  // namespace

bool is_allowed(const OperatorSpec& op, const std::map<EntityName, Cardinal>& cardinals) {
    CardinalList values = gather(op, cardinals);
    return is_allowed(op, {values.data(), values.size()});
}

OperatorEffect eval_operator(const OperatorSpec& op, std::span<const Cardinal> operand_values) {
    const std::size_t w = op.operands.size();
    const std::size_t v = op.images.size();

    OperatorEffect effect;
    effect.op_id = op.op_id;
    effect.partial_carries.resize(w);
    for (std::size_t i = 0; i < w; ++i)
        effect.partial_carries[i] = partial_carry(op.kind, operand_values[i], op.operands[i].radix);

    effect.common_carry =
        common_carry({effect.partial_carries.data(), effect.partial_carries.size()});
    if (effect.common_carry < 1) throw KernelError("operator not allowed");

    effect.new_operand_values.resize(w);
    for (std::size_t i = 0; i < w; ++i)
        effect.new_operand_values[i] =
            remainder(op.kind, operand_values[i], op.operands[i].radix, effect.common_carry);

    effect.transformants.resize(v);
    for (std::size_t j = 0; j < v; ++j)
        effect.transformants[j] = effect.common_carry * op.images[j].rate;
    return effect;
}

OperatorEffect eval_operator(const OperatorSpec& op, const std::map<EntityName, Cardinal>& cardinals) {
    CardinalList values = gather(op, cardinals);
    return eval_operator(op, {values.data(), values.size()});
}

}  // namespace sns
