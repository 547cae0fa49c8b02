#include "sns/classic.hpp"

#include "sns/engine.hpp"
#include "sns/topology.hpp"

#include <stdexcept>

namespace sns {

namespace {

std::string slot_name(std::size_t k) { return "c" + std::to_string(k); }

Cao build_or_throw(std::string name, std::vector<CardinalAbstractEntity> entities,
                   std::vector<OperatorSpec> operators, std::map<EntityName, Cardinal> init) {
    CaoBuildResult built =
        new_cao(std::move(name), std::move(entities), std::move(operators), std::move(init));
    if (!built.ok()) {
        std::string what = "generator produced an invalid network";
        for (const auto& e : built.errors) what += "; " + e.message;
        throw std::invalid_argument(what);
    }
    return *std::move(built.cao);
}

}  // namespace

ChainSpec ChainSpec::uniform(std::size_t width, Cardinal radix, Cardinal rate) {
    ChainSpec spec;
    spec.width = width;
    if (width > 0) {
        spec.radices.assign(width - 1, radix);
        spec.rates.assign(width - 1, rate);
    }
    return spec;
}

bool ChainSpec::unit_rates() const {
    for (const auto& r : rates)
        if (r != 1) return false;
    return true;
}

Cao make_chain(const ChainSpec& spec) {
    if (spec.width == 0) throw std::invalid_argument("chain width must be at least 1");
    if (spec.radices.size() != spec.width - 1)
        throw std::invalid_argument("chain needs width-1 radices");
    if (!spec.rates.empty() && spec.rates.size() != spec.width - 1)
        throw std::invalid_argument("chain needs width-1 rates");

    std::vector<CardinalAbstractEntity> entities;
    entities.reserve(spec.width);
    for (std::size_t k = 0; k < spec.width; ++k) entities.push_back({EntityName(slot_name(k)), 0});

    std::vector<OperatorSpec> operators;
    operators.reserve(spec.width - 1);
    for (std::size_t k = 0; k + 1 < spec.width; ++k) {
        OperatorSpec op;
        op.op_id = "op" + std::to_string(k);
        op.form = OperatorForm::L;
        op.operands = {{EntityName(slot_name(k)), spec.radices[k]}};
        op.images = {{EntityName(slot_name(k + 1)), spec.rates.empty() ? Cardinal(1) : spec.rates[k]}};
        operators.push_back(std::move(op));
    }
    return build_or_throw("chain", std::move(entities), std::move(operators), {});
}

Cao make_fan_out(const Cardinal& radix, std::vector<Cardinal> rates) {
    if (rates.empty()) throw std::invalid_argument("fan-out needs at least one rate");
    std::vector<CardinalAbstractEntity> entities{{EntityName(slot_name(0)), 0}};
    OperatorSpec op;
    op.op_id = "op0";
    op.form = rates.size() == 1 ? OperatorForm::L : OperatorForm::D;
    op.operands = {{EntityName(slot_name(0)), radix}};
    for (std::size_t j = 0; j < rates.size(); ++j) {
        entities.push_back({EntityName(slot_name(j + 1)), 0});
        op.images.push_back({EntityName(slot_name(j + 1)), rates[j]});
    }
    return build_or_throw("fan_out", std::move(entities), {std::move(op)}, {});
}

Cao make_fan_in(std::vector<Cardinal> radices, const Cardinal& rate) {
    if (radices.empty()) throw std::invalid_argument("fan-in needs at least one radix");
    std::vector<CardinalAbstractEntity> entities;
    OperatorSpec op;
    op.op_id = "op0";
    op.form = radices.size() == 1 ? OperatorForm::L : OperatorForm::F;
    for (std::size_t i = 0; i < radices.size(); ++i) {
        entities.push_back({EntityName(slot_name(i)), 0});
        op.operands.push_back({EntityName(slot_name(i)), radices[i]});
    }
    entities.push_back({EntityName(slot_name(radices.size())), 0});
    op.images = {{EntityName(slot_name(radices.size())), rate}};
    return build_or_throw("fan_in", std::move(entities), {std::move(op)}, {});
}

Cao make_mixed(std::size_t w, std::size_t v, std::vector<Cardinal> radices,
               std::vector<Cardinal> rates) {
    if (w == 0 || v == 0) throw std::invalid_argument("mixed operator needs w >= 1 and v >= 1");
    if (radices.size() != w) throw std::invalid_argument("mixed operator needs w radices");
    if (rates.size() != v) throw std::invalid_argument("mixed operator needs v rates");

    std::vector<CardinalAbstractEntity> entities;
    OperatorSpec op;
    op.op_id = "op0";
    op.form = OperatorForm::M;
    for (std::size_t i = 0; i < w; ++i) {
        entities.push_back({EntityName(slot_name(i)), 0});
        op.operands.push_back({EntityName(slot_name(i)), radices[i]});
    }
    for (std::size_t j = 0; j < v; ++j) {
        entities.push_back({EntityName(slot_name(w + j)), 0});
        op.images.push_back({EntityName(slot_name(w + j)), rates[j]});
    }
    return build_or_throw("mixed", std::move(entities), {std::move(op)}, {});
}

std::vector<Cardinal> encode(const Cardinal& value, const ChainSpec& spec) {
    if (value < 0) throw std::invalid_argument("encode needs a non-negative value");
    Cao chain = make_chain(spec);
    CardinalState state = zero_state(chain);
    if (!state.empty()) state[0] = value;
    RunResult result = run_from(chain, std::move(state));
    std::vector<Cardinal> digits;
    digits.reserve(chain.entities.size());
    for (const auto& e : chain.entities) digits.push_back(result.final.cardinals.at(e.name));
    return digits;
}

Rational decode(std::span<const Cardinal> digits, const ChainSpec& spec) {
    if (digits.size() != spec.width)
        throw std::invalid_argument("digit list length must equal the chain width");
    Cao chain = make_chain(spec);
    WeightDerivation derivation = derive_weights(chain);
    if (!derivation.ok())
        throw std::invalid_argument("chain weights not derivable: " + derivation.detail);
    Rational total = 0;
    for (std::size_t k = 0; k < digits.size(); ++k)
        total += derivation.weights.weights.at(EntityName(slot_name(k))) * Rational(digits[k]);
    return total;
}

std::vector<Cardinal> oracle_digits(const Cardinal& value, std::span<const Cardinal> radices) {
    if (value < 0) throw std::invalid_argument("oracle needs a non-negative value");
    std::vector<Cardinal> digits;
    digits.reserve(radices.size() + 1);
    Cardinal rest = value;
    for (const Cardinal& radix : radices) {
        if (radix < 1) throw std::invalid_argument("oracle radices must be positive");
        digits.push_back(rest % radix);
        rest /= radix;
    }
    digits.push_back(rest);
    return digits;
}

std::size_t chain_width_for(const Cardinal& value, const Cardinal& radix) {
    if (radix < 2) throw std::invalid_argument("width calculation needs radix >= 2");
    std::size_t width = 1;
    Cardinal rest = value / radix;
    while (rest > 0) {
        ++width;
        rest /= radix;
    }
    return width;
}

}  // namespace sns
