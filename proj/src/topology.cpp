#include "sns/topology.hpp"

#include <algorithm>
#include <functional>

namespace sns {

const char* to_string(EntityRole role) {
    switch (role) {
        case EntityRole::Initial: return "initial";
        case EntityRole::Intermediate: return "intermediate";
        case EntityRole::Final: return "final";
        case EntityRole::Detached: return "detached";
    }
    return "?";
}

const char* to_string(TopologyShape shape) {
    switch (shape) {
        case TopologyShape::Linear: return "linear";
        case TopologyShape::Tree: return "tree";
        case TopologyShape::Lattice: return "lattice";
        case TopologyShape::Cyclic: return "cyclic";
        case TopologyShape::Arbitrary: return "arbitrary";
    }
    return "?";
}

const char* to_string(Variability variability) {
    return variability == Variability::Homogeneous ? "homogeneous" : "heterogeneous";
}

const char* to_string(Uncertainty) { return "deterministic"; }

const char* to_string(KindLabel kind) {
    switch (kind) {
        case KindLabel::RadixMultiplicity: return "radix-multiplicity";
        case KindLabel::RadixExcessValue: return "radix-excess-value";
        case KindLabel::RadixExcessFact: return "radix-excess-fact";
        case KindLabel::ArbitraryFunction: return "arbitrary-function";
        case KindLabel::Mixed: return "mixed";
    }
    return "?";
}

const char* to_string(OperatorFamily family) {
    switch (family) {
        case OperatorFamily::Transforming: return "transforming";
        case OperatorFamily::Preserving: return "preserving";
        case OperatorFamily::Complex: return "complex";
    }
    return "?";
}

namespace {

struct Wiring {
    std::vector<bool> has_output;   // entity is an operand somewhere
    std::vector<int> input_count;   // number of operators imaging into the entity
};

Wiring wire(const Cao& cao) {
    Wiring w;
    w.has_output.assign(cao.entities.size(), false);
    w.input_count.assign(cao.entities.size(), 0);
    for (std::size_t oi = 0; oi < cao.operators.size(); ++oi) {
        for (std::size_t e : cao.op_operand_index[oi]) w.has_output[e] = true;
        for (std::size_t e : cao.op_image_index[oi]) ++w.input_count[e];
    }
    return w;
}

}  // namespace

std::map<EntityName, EntityRole> classify_entities(const Cao& cao) {
    Wiring w = wire(cao);
    std::map<EntityName, EntityRole> roles;
    for (std::size_t i = 0; i < cao.entities.size(); ++i) {
        bool out = w.has_output[i];
        bool in = w.input_count[i] > 0;
        EntityRole role = out ? (in ? EntityRole::Intermediate : EntityRole::Initial)
                              : (in ? EntityRole::Final : EntityRole::Detached);
        roles.emplace(cao.entities[i].name, role);
    }
    return roles;
}

std::vector<CyclePath> detect_cycles(const Cao& cao) {
    // Nodes 0..E-1 are entities, E..E+O-1 are operators.
    const std::size_t E = cao.entities.size();
    const std::size_t n = E + cao.operators.size();
    std::vector<std::vector<std::size_t>> out(n);
    for (std::size_t oi = 0; oi < cao.operators.size(); ++oi) {
        for (std::size_t e : cao.op_operand_index[oi]) out[e].push_back(E + oi);
        for (std::size_t e : cao.op_image_index[oi]) out[E + oi].push_back(e);
    }

    // Tarjan, iterative.
    constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, kUnvisited), low(n), comp(n, kUnvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::size_t next_index = 0, next_comp = 0;
    std::vector<std::vector<std::size_t>> components;

    struct Frame {
        std::size_t node;
        std::size_t edge = 0;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        std::vector<Frame> frames{{root}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.edge < out[f.node].size()) {
                std::size_t next = out[f.node][f.edge++];
                if (index[next] == kUnvisited) {
                    index[next] = low[next] = next_index++;
                    stack.push_back(next);
                    on_stack[next] = true;
                    frames.push_back({next});
                } else if (on_stack[next]) {
                    low[f.node] = std::min(low[f.node], index[next]);
                }
            } else {
                if (low[f.node] == index[f.node]) {
                    std::vector<std::size_t> component;
                    while (true) {
                        std::size_t v = stack.back();
                        stack.pop_back();
                        on_stack[v] = false;
                        comp[v] = next_comp;
                        component.push_back(v);
                        if (v == f.node) break;
                    }
                    ++next_comp;
                    if (component.size() > 1) components.push_back(std::move(component));
                }
                std::size_t finished = f.node;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().node] = std::min(low[frames.back().node], low[finished]);
            }
        }
    }

    auto label = [&](std::size_t node) {
        return node < E ? cao.entities[node].name.str() : cao.operators[node - E].op_id;
    };

    // One representative closed walk per nontrivial component.
    std::vector<CyclePath> cycles;
    for (const auto& component : components) {
        std::size_t start = *std::min_element(component.begin(), component.end());
        std::vector<std::size_t> path{start};
        std::vector<bool> seen(n, false);
        seen[start] = true;
        std::size_t cur = start;
        while (true) {
            std::size_t next = kUnvisited;
            for (std::size_t cand : out[cur]) {
                if (comp[cand] != comp[start]) continue;
                if (cand == start) {
                    next = cand;
                    break;
                }
                if (!seen[cand]) next = cand;
            }
            if (next == kUnvisited) break;  // should not happen inside an SCC
            path.push_back(next);
            if (next == start) break;
            seen[next] = true;
            cur = next;
        }
        CyclePath cycle;
        cycle.nodes.reserve(path.size());
        for (std::size_t node : path) cycle.nodes.push_back(label(node));
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

bool is_acyclic(const Cao& cao) { return detect_cycles(cao).empty(); }

namespace {

bool is_single_chain(const Cao& cao, const Wiring& w) {
    const std::size_t E = cao.entities.size();
    if (cao.operators.empty()) return E <= 1;
    for (const auto& op : cao.operators)
        if (op.form != OperatorForm::L) return false;

    // entity -> its (unique) consuming operator
    std::vector<std::size_t> out_op(E, static_cast<std::size_t>(-1));
    for (std::size_t oi = 0; oi < cao.operators.size(); ++oi)
        out_op[cao.op_operand_index[oi][0]] = oi;

    std::size_t head = E;
    for (std::size_t i = 0; i < E; ++i) {
        if (w.has_output[i] && w.input_count[i] == 0) {
            if (head != E) return false;  // two heads
            head = i;
        }
        if (w.input_count[i] > 1) return false;
    }
    if (head == E) return false;

    std::size_t entities_seen = 1, ops_seen = 0, cur = head;
    while (out_op[cur] != static_cast<std::size_t>(-1) && entities_seen <= E) {
        std::size_t oi = out_op[cur];
        ++ops_seen;
        cur = cao.op_image_index[oi][0];
        ++entities_seen;
    }
    return entities_seen == E && ops_seen == cao.operators.size();
}

}  // namespace

ClassificationRecord classify_sns(const Cao& cao) {
    ClassificationRecord record;
    record.name = cao.name;

    bool any_complex = false, any_preserving = false, any_transforming = false;
    for (const auto& op : cao.operators) {
        switch (op.family) {
            case OperatorFamily::Transforming: any_transforming = true; break;
            case OperatorFamily::Preserving: any_preserving = true; break;
            case OperatorFamily::Complex: any_complex = true; break;
        }
    }
    if (any_complex || (any_preserving && any_transforming))
        record.family_influence = OperatorFamily::Complex;
    else if (any_preserving)
        record.family_influence = OperatorFamily::Preserving;
    else
        record.family_influence = OperatorFamily::Transforming;

    record.uncertainty = Uncertainty::Deterministic;

    Wiring w = wire(cao);
    if (is_single_chain(cao, w)) {
        record.topology_shape = TopologyShape::Linear;
    } else if (!detect_cycles(cao).empty()) {
        record.topology_shape = TopologyShape::Cyclic;
    } else {
        bool tree = true;
        for (int c : w.input_count)
            if (c > 1) tree = false;
        record.topology_shape = tree ? TopologyShape::Tree : TopologyShape::Arbitrary;
    }

    record.variability = Variability::Homogeneous;
    for (std::size_t oi = 1; oi < cao.operators.size(); ++oi) {
        const auto& a = cao.operators[0];
        const auto& b = cao.operators[oi];
        auto params = [](const OperatorSpec& op) {
            std::pair<std::vector<Cardinal>, std::vector<Cardinal>> p;
            for (const auto& o : op.operands) p.first.push_back(o.radix);
            for (const auto& i : op.images) p.second.push_back(i.rate);
            return p;
        };
        if (params(a) != params(b)) {
            record.variability = Variability::Heterogeneous;
            break;
        }
    }

    if (cao.operators.empty()) {
        record.kind_label = KindLabel::RadixMultiplicity;
    } else {
        KindTag first = cao.operators[0].kind.tag;
        bool mixed = false;
        for (const auto& op : cao.operators)
            if (op.kind.tag != first) mixed = true;
        if (mixed) {
            record.kind_label = KindLabel::Mixed;
        } else {
            switch (first) {
                case KindTag::RadixMultiplicity:
                    record.kind_label = KindLabel::RadixMultiplicity;
                    break;
                case KindTag::RadixExcessValue:
                    record.kind_label = KindLabel::RadixExcessValue;
                    break;
                case KindTag::RadixExcessFact:
                    record.kind_label = KindLabel::RadixExcessFact;
                    break;
                case KindTag::ArbitraryFunction:
                    record.kind_label = KindLabel::ArbitraryFunction;
                    break;
            }
        }
    }
    return record;
}

WeightCheckResult check_weights(const Cao& cao, const WeightAssignment& weights) {
    auto weight_of = [&](const EntityName& name) -> const Rational& {
        auto it = weights.weights.find(name);
        if (it == weights.weights.end())
            throw std::invalid_argument("missing weight for entity " + name.str());
        return it->second;
    };

    WeightCheckResult result;
    result.ok = true;
    for (const auto& op : cao.operators) {
        if (op.kind.tag != KindTag::RadixMultiplicity) continue;
        Rational lhs = 0, rhs = 0;
        for (const auto& operand : op.operands)
            lhs += weight_of(operand.entity) * Rational(operand.radix);
        for (const auto& image : op.images)
            rhs += weight_of(image.entity) * Rational(image.rate);
        Rational residual = rhs - lhs;
        if (residual != 0) result.ok = false;
        result.residuals.emplace_back(op.op_id, std::move(residual));
    }
    return result;
}

WeightDerivation derive_weights(const Cao& cao) {
    if (!is_acyclic(cao))
        throw std::invalid_argument("weight derivation requires an acyclic network");

    const std::size_t E = cao.entities.size();
    std::vector<std::optional<Rational>> weight(E);
    auto roles = classify_entities(cao);
    for (std::size_t i = 0; i < E; ++i) {
        EntityRole role = roles.at(cao.entities[i].name);
        if (role == EntityRole::Initial || role == EntityRole::Detached) weight[i] = Rational(1);
    }

    WeightDerivation result;
    std::vector<bool> done(cao.operators.size(), false);
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t oi = 0; oi < cao.operators.size(); ++oi) {
            if (done[oi]) continue;
            const auto& op = cao.operators[oi];
            if (op.kind.tag != KindTag::RadixMultiplicity) {
                done[oi] = true;  // no conservation equation for this kind
                progress = true;
                continue;
            }
            const auto& operand_idx = cao.op_operand_index[oi];
            bool ready = true;
            for (std::size_t e : operand_idx)
                if (!weight[e]) ready = false;
            if (!ready) continue;

            Rational lhs = 0;
            for (std::size_t k = 0; k < operand_idx.size(); ++k)
                lhs += *weight[operand_idx[k]] * Rational(op.operands[k].radix);

            Rational known_rhs = 0;
            std::size_t open = static_cast<std::size_t>(-1);
            std::size_t open_count = 0;
            const auto& image_idx = cao.op_image_index[oi];
            for (std::size_t k = 0; k < image_idx.size(); ++k) {
                std::size_t e = image_idx[k];
                if (weight[e]) {
                    known_rhs += *weight[e] * Rational(op.images[k].rate);
                } else if (op.images[k].rate > 0) {
                    open = k;
                    ++open_count;
                }
                // zero-rate images without a weight stay open; they carry
                // no value and get the default weight at the end
            }

            if (open_count >= 2) {
                result.status = WeightDerivation::Status::Underdetermined;
                result.detail = "operator " + op.op_id + " leaves " + std::to_string(open_count) +
                                " images undetermined";
                return result;
            }
            if (open_count == 1) {
                Rational w = (lhs - known_rhs) / Rational(op.images[open].rate);
                if (w <= 0) {
                    result.status = WeightDerivation::Status::Inconsistent;
                    result.detail = "operator " + op.op_id + " forces a non-positive weight for " +
                                    op.images[open].entity.str();
                    return result;
                }
                weight[image_idx[open]] = std::move(w);
            } else if (lhs != known_rhs) {
                result.status = WeightDerivation::Status::Inconsistent;
                result.detail = "operator " + op.op_id +
                                " demands a conflicting weight for an already-fixed image";
                return result;
            }
            done[oi] = true;
            progress = true;
        }
    }

    for (std::size_t oi = 0; oi < cao.operators.size(); ++oi) {
        if (!done[oi]) {
            result.status = WeightDerivation::Status::Underdetermined;
            result.detail = "operand weights for operator " + cao.operators[oi].op_id +
                            " cannot be derived";
            return result;
        }
    }

    for (std::size_t i = 0; i < E; ++i) {
        if (!weight[i]) weight[i] = Rational(1);  // unconstrained leftovers
        result.weights.weights.emplace(cao.entities[i].name, *weight[i]);
    }
    result.status = WeightDerivation::Status::Derived;
    return result;
}

Rational weighted_total(const Cao& cao, const WeightAssignment& weights,
                        const CardinalState& state) {
    Rational total = 0;
    for (std::size_t i = 0; i < cao.entities.size(); ++i) {
        auto it = weights.weights.find(cao.entities[i].name);
        if (it == weights.weights.end())
            throw std::invalid_argument("missing weight for entity " + cao.entities[i].name.str());
        total += it->second * Rational(state[i]);
    }
    return total;
}

}  // namespace sns
