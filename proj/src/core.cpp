#include "sns/core.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sns {

std::string EntityName::str() const {
    if (coords.empty()) return id;
    std::ostringstream out;
    out << id << '(';
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) out << ',';
        if (const auto* s = std::get_if<std::string>(&coords[i]))
            out << *s;
        else
            out << std::get<std::int64_t>(coords[i]);
    }
    out << ')';
    return out.str();
}

bool EntityName::operator<(const EntityName& o) const {
    if (id != o.id) return id < o.id;
    return coords < o.coords;
}

std::optional<std::size_t> Cao::index_of(const EntityName& n) const {
    auto it = entity_index.find(n);
    if (it == entity_index.end()) return std::nullopt;
    return it->second;
}

namespace {

const char* form_letter(OperatorForm f) {
    switch (f) {
        case OperatorForm::L: return "L";
        case OperatorForm::D: return "D";
        case OperatorForm::F: return "F";
        case OperatorForm::M: return "M";
        case OperatorForm::Assign: return "A";
        case OperatorForm::Zero: return "Z";
    }
    return "?";
}

}  // namespace

CaoBuildResult new_cao(std::string name, std::vector<CardinalAbstractEntity> entities,
                       std::vector<OperatorSpec> operators, std::map<EntityName, Cardinal> init) {
    std::vector<ValidationError> errors;
    auto fail = [&](std::string msg, std::string op_id = {}) {
        errors.push_back({std::move(msg), std::move(op_id)});
    };

    std::map<EntityName, std::size_t> index;
    for (std::size_t i = 0; i < entities.size(); ++i) {
        const auto& e = entities[i];
        if (e.name.id.empty()) fail("entity with empty name");
        if (!index.emplace(e.name, i).second) fail("duplicate entity " + e.name.str());
        if (e.cardinal < 0) fail("negative initial cardinal for " + e.name.str());
    }

    // Entities may carry their initial cardinal directly; fold it into the
    // init map, which is authoritative afterwards.
    for (auto& e : entities) {
        if (e.cardinal == 0) continue;
        auto [it, inserted] = init.emplace(e.name, e.cardinal);
        if (!inserted && it->second != e.cardinal)
            fail("conflicting initial cardinal for " + e.name.str());
    }

    std::set<std::string> op_ids;
    std::map<EntityName, std::string> output_of;  // entity -> operator consuming it
    for (const auto& op : operators) {
        const std::string& id = op.op_id;
        if (id.empty()) fail("operator with empty id");
        if (!op_ids.insert(id).second) fail("duplicate operator id " + id, id);

        if (op.family != OperatorFamily::Transforming)
            fail("operator " + id + " is not transforming; only transforming operators are executable",
                 id);

        const std::size_t w = op.operands.size();
        const std::size_t v = op.images.size();
        if (w == 0) fail("operator " + id + " has no operands", id);
        if (v == 0) fail("operator " + id + " has no images", id);

        switch (op.form) {
            case OperatorForm::L:
                if (w != 1 || v != 1) fail("form L requires valence (1,1)", id);
                break;
            case OperatorForm::D:
                if (w != 1 || v < 2) fail("form D requires one operand and at least two images", id);
                break;
            case OperatorForm::F:
                if (w < 2 || v != 1) fail("form F requires at least two operands and one image", id);
                break;
            case OperatorForm::M:
                break;
            case OperatorForm::Assign:
            case OperatorForm::Zero:
                fail(std::string("form ") + form_letter(op.form) +
                         " is an initialization directive, not a schedulable operator",
                     id);
                break;
        }

        if (op.kind.tag == KindTag::ArbitraryFunction &&
            (!op.kind.carry_hook || !op.kind.remainder_hook))
            fail("operator " + id + " needs carry and remainder hooks for its function kind", id);

        std::set<EntityName> operand_names;
        for (const auto& [entity, radix] : op.operands) {
            if (!index.count(entity)) fail("unknown entity " + entity.str(), id);
            if (radix < 1) fail("zero radix for " + entity.str(), id);
            if (!operand_names.insert(entity).second)
                fail("duplicate operand " + entity.str(), id);
        }
        std::set<EntityName> image_names;
        bool any_positive_rate = false;
        for (const auto& [entity, rate] : op.images) {
            if (!index.count(entity)) fail("unknown entity " + entity.str(), id);
            if (rate < 0) fail("negative rate for " + entity.str(), id);
            if (rate > 0) any_positive_rate = true;
            if (!image_names.insert(entity).second) fail("duplicate image " + entity.str(), id);
            if (operand_names.count(entity))
                fail("entity " + entity.str() + " appears as both operand and image", id);
        }
        if (!op.images.empty() && !any_positive_rate)
            fail("operator " + id + " has no positive conversion rate", id);

        // Each entity feeds at most one operator.
        for (const auto& name : operand_names) {
            auto [it, inserted] = output_of.emplace(name, id);
            if (!inserted) fail("entity " + name.str() + " has two outputs", id);
        }
    }

    for (const auto& [entity, value] : init) {
        if (!index.count(entity)) fail("unknown entity " + entity.str());
        if (value < 0) fail("negative initial cardinal for " + entity.str());
    }

    if (!errors.empty()) return {std::nullopt, std::move(errors)};

    Cao cao;
    cao.name = std::move(name);
    cao.entities = std::move(entities);
    cao.operators = std::move(operators);
    cao.init = std::move(init);
    cao.entity_index = std::move(index);
    for (auto& e : cao.entities) {
        auto it = cao.init.find(e.name);
        e.cardinal = it == cao.init.end() ? Cardinal(0) : it->second;
    }
    cao.op_operand_index.reserve(cao.operators.size());
    cao.op_image_index.reserve(cao.operators.size());
    for (const auto& op : cao.operators) {
        std::vector<std::size_t> opnd, img;
        opnd.reserve(op.operands.size());
        img.reserve(op.images.size());
        for (const auto& o : op.operands) opnd.push_back(cao.entity_index.at(o.entity));
        for (const auto& i : op.images) img.push_back(cao.entity_index.at(i.entity));
        cao.op_operand_index.push_back(std::move(opnd));
        cao.op_image_index.push_back(std::move(img));
    }
    return {std::move(cao), {}};
}

Multicardinal multicardinal_of(const std::map<EntityName, Cardinal>& cardinals, std::size_t tau) {
    Multicardinal mc;
    mc.named = cardinals;
    mc.step = tau;
    mc.values.reserve(cardinals.size());
    for (const auto& [_, v] : cardinals) mc.values.push_back(v);
    std::sort(mc.values.begin(), mc.values.end());
    return mc;
}

Multicardinal Multinumber::to_multicardinal() const { return multicardinal_of(cardinals, step); }

}  // namespace sns
