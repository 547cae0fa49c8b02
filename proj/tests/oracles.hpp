// Independent ground-truth computations for checking the engine. Nothing
// here calls the operator kernels or the engine; the firing oracle walks
// the network one unit conversion at a time.

#pragma once

#include "sns/core.hpp"

#include <random>
#include <stdexcept>
#include <vector>

namespace testoracle {

// Fixpoint by chaotic unit firing: while some radix-multiplicity operator
// has every operand at or above its radix, pick one such operator at
// random, subtract each radix once, and add each rate once. Suitable for
// small cardinalities only.
inline std::map<sns::EntityName, sns::Cardinal> chaos_fixpoint(const sns::Cao& cao,
                                                               std::mt19937_64& rng,
                                                               std::size_t max_firings = 5'000'000) {
    for (const auto& op : cao.operators)
        if (op.kind.tag != sns::KindTag::RadixMultiplicity)
            throw std::invalid_argument("firing oracle handles radix-multiplicity only");

    std::vector<sns::Cardinal> state;
    state.reserve(cao.entities.size());
    for (const auto& e : cao.entities) state.push_back(e.cardinal);

    auto enabled = [&](std::size_t oi) {
        const auto& op = cao.operators[oi];
        for (std::size_t k = 0; k < op.operands.size(); ++k)
            if (state[cao.op_operand_index[oi][k]] < op.operands[k].radix) return false;
        return true;
    };

    std::size_t firings = 0;
    while (true) {
        std::vector<std::size_t> ready;
        for (std::size_t oi = 0; oi < cao.operators.size(); ++oi)
            if (enabled(oi)) ready.push_back(oi);
        if (ready.empty()) break;
        if (++firings > max_firings) throw std::runtime_error("firing oracle budget exhausted");

        std::size_t oi = ready[std::uniform_int_distribution<std::size_t>(0, ready.size() - 1)(rng)];
        const auto& op = cao.operators[oi];
        for (std::size_t k = 0; k < op.operands.size(); ++k)
            state[cao.op_operand_index[oi][k]] -= op.operands[k].radix;
        for (std::size_t k = 0; k < op.images.size(); ++k)
            state[cao.op_image_index[oi][k]] += op.images[k].rate;
    }

    std::map<sns::EntityName, sns::Cardinal> result;
    for (std::size_t i = 0; i < cao.entities.size(); ++i)
        result.emplace(cao.entities[i].name, state[i]);
    return result;
}

// Greedy positional conversion, written against plain integers.
inline std::vector<sns::Cardinal> greedy_digits(sns::Cardinal value,
                                                const std::vector<sns::Cardinal>& radices) {
    std::vector<sns::Cardinal> digits;
    for (const auto& radix : radices) {
        digits.push_back(value % radix);
        value /= radix;
    }
    digits.push_back(value);
    return digits;
}

}  // namespace testoracle
