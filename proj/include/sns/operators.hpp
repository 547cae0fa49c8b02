// operators.hpp — pure carry/remainder/transformant kernels.
//
// Execution of a single operator, regardless of form, is one formula set:
//   p_i = partial carry per operand        (kind rule)
//   p   = min(p_i)                         (common carry)
//   N_i' = remainder(N_i, n_i, p)          (kind rule, common carry applied)
//   q_j = p * r_j                          (transformant per image)
// The L, D, F forms are the (1,1), (1,v), (w,1) specializations of M and
// go through the same kernel. All functions here are pure and total on
// their stated domains; every failure is a KernelError.

#pragma once

#include "sns/core.hpp"

#include <boost/container/small_vector.hpp>

#include <span>
#include <stdexcept>

namespace sns {

/// Inline-storage list sized for the common small valences.
using CardinalList = boost::container::small_vector<Cardinal, 4>;

struct KernelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Everything one firing did: per-operand carries, the common carry, the
/// operand remainders, and the per-image transformants.
struct OperatorEffect {
    std::string op_id;
    CardinalList partial_carries;
    Cardinal common_carry;
    CardinalList new_operand_values;
    CardinalList transformants;

    bool same_numbers(const OperatorEffect& o) const {
        return partial_carries == o.partial_carries && common_carry == o.common_carry &&
               new_operand_values == o.new_operand_values && transformants == o.transformants;
    }
};

/// Carry yielded by one operand holding `value` against radix `radix`.
///   RadixMultiplicity: floor(value / radix)
///   RadixExcessValue:  value - radix, clamped at 0
///   RadixExcessFact:   1 iff value > radix
///   ArbitraryFunction: carry hook(value, radix)
Cardinal partial_carry(const OperatorKind& kind, const Cardinal& value, const Cardinal& radix);

/// Operand value left after a carry of `applied` was extracted. For
/// RadixMultiplicity the applied carry may be smaller than the partial
/// carry (it is the common carry); it must not exceed floor(value/radix).
/// Hook results outside [0, value] raise "invalid remainder hook".
Cardinal remainder(const OperatorKind& kind, const Cardinal& value, const Cardinal& radix,
                   const Cardinal& applied);

/// Minimum of a non-empty carry list.
Cardinal common_carry(std::span<const Cardinal> partial_carries);

/// True iff the common carry over the operator's operands is at least 1.
/// `operand_values` is aligned with op.operands.
bool is_allowed(const OperatorSpec& op, std::span<const Cardinal> operand_values);

/// Name-resolving variant; entities absent from the map count as 0.
bool is_allowed(const OperatorSpec& op, const std::map<EntityName, Cardinal>& cardinals);

/// Fires the operator once against a snapshot of its operand values.
/// Requires is_allowed; throws KernelError("operator not allowed") otherwise.
OperatorEffect eval_operator(const OperatorSpec& op, std::span<const Cardinal> operand_values);

/// Name-resolving variant; entities absent from the map count as 0.
OperatorEffect eval_operator(const OperatorSpec& op, const std::map<EntityName, Cardinal>& cardinals);

}  // namespace sns
