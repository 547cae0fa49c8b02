// Random valid acyclic networks for property tests. Entities are indexed
// along a fixed topological order and every operator's images sit strictly
// above its operands, so generated networks are acyclic by construction;
// the one-output-per-entity rule is enforced by drawing operands from the
// not-yet-consumed pool.

#pragma once

#include "sns/core.hpp"
#include "sns/dsl.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace testgen {

struct GenOptions {
    std::size_t min_entities = 2;
    std::size_t max_entities = 12;
    std::size_t max_ops = 8;
    unsigned max_radix = 8;
    unsigned max_rate = 4;
    std::uint64_t max_init = 1'000'000;
    bool mixed_kinds = false;  // also emit delta/fact/fn operators
};

inline sns::Cao random_cao(std::mt19937_64& rng, const GenOptions& opt = {}) {
    auto pick = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };

    const std::size_t m = pick(opt.min_entities, opt.max_entities);
    std::vector<sns::CardinalAbstractEntity> entities;
    entities.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
        entities.push_back({sns::EntityName("e" + std::to_string(i)), 0});

    std::vector<bool> consumed(m, false);
    std::vector<sns::OperatorSpec> operators;
    const std::size_t target = pick(1, opt.max_ops);
    for (std::size_t t = 0; t < target; ++t) {
        std::vector<std::size_t> pool;
        for (std::size_t i = 0; i + 1 < m; ++i)
            if (!consumed[i]) pool.push_back(i);
        if (pool.empty()) break;

        std::shuffle(pool.begin(), pool.end(), rng);
        const std::size_t w = pick(1, std::min<std::size_t>(3, pool.size()));
        std::vector<std::size_t> operand_idx(pool.begin(), pool.begin() + w);
        const std::size_t hi = *std::max_element(operand_idx.begin(), operand_idx.end());

        std::vector<std::size_t> above;
        for (std::size_t i = hi + 1; i < m; ++i) above.push_back(i);
        std::shuffle(above.begin(), above.end(), rng);
        const std::size_t v = pick(1, std::min<std::size_t>(3, above.size()));
        std::vector<std::size_t> image_idx(above.begin(), above.begin() + v);

        sns::OperatorSpec op;
        op.op_id = "t" + std::to_string(operators.size());
        if (w == 1 && v == 1)
            op.form = pick(0, 1) ? sns::OperatorForm::L : sns::OperatorForm::M;
        else if (w == 1)
            op.form = pick(0, 1) ? sns::OperatorForm::D : sns::OperatorForm::M;
        else if (v == 1)
            op.form = pick(0, 1) ? sns::OperatorForm::F : sns::OperatorForm::M;
        else
            op.form = sns::OperatorForm::M;

        if (opt.mixed_kinds) {
            switch (pick(0, 5)) {
                case 0: op.kind = sns::OperatorKind::radix_excess_value(); break;
                case 1: op.kind = sns::OperatorKind::radix_excess_fact(); break;
                case 2: {
                    const auto& hooks = sns::default_hooks().at("div");
                    op.kind = sns::OperatorKind::arbitrary("div", hooks.first, hooks.second);
                    break;
                }
                default: break;  // radix-multiplicity
            }
        }

        for (std::size_t i : operand_idx) {
            consumed[i] = true;
            op.operands.push_back({entities[i].name, sns::Cardinal(pick(1, opt.max_radix))});
        }
        for (std::size_t i : image_idx)
            op.images.push_back({entities[i].name, sns::Cardinal(pick(0, opt.max_rate))});
        op.images[pick(0, v - 1)].rate = sns::Cardinal(pick(1, opt.max_rate));
        operators.push_back(std::move(op));
    }

    std::map<sns::EntityName, sns::Cardinal> init;
    for (std::size_t i = 0; i < m; ++i) {
        if (pick(0, 3) == 0) continue;  // leave some entities empty
        init.emplace(entities[i].name,
                     sns::Cardinal(std::uniform_int_distribution<std::uint64_t>(0, opt.max_init)(rng)));
    }

    sns::CaoBuildResult built =
        sns::new_cao("gen", std::move(entities), std::move(operators), std::move(init));
    if (!built.ok()) throw std::logic_error("generator produced an invalid network");
    return *std::move(built.cao);
}

}  // namespace testgen
