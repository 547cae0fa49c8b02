// topology.hpp — static analysis of networks.
//
// Entity roles, cycle detection over the bipartite entity/operator graph,
// the feature classification of a numeration method, and exact-rational
// conservation weights (the bridge between network fixpoints and classic
// positional value).

#pragma once

#include "sns/core.hpp"
#include "sns/engine.hpp"

#include <string>
#include <vector>

namespace sns {

/// Initial: feeds an operator, fed by none. Intermediate: both.
/// Final: fed only. Detached: neither.
enum class EntityRole { Initial, Intermediate, Final, Detached };

const char* to_string(EntityRole role);

std::map<EntityName, EntityRole> classify_entities(const Cao& cao);

/// A closed walk through the dependency graph, alternating entity and
/// operator labels, first label repeated at the end.
struct CyclePath {
    std::vector<std::string> nodes;
};

/// One representative cycle per strongly connected component of the
/// operand -> operator -> image graph. Empty iff the network is acyclic.
std::vector<CyclePath> detect_cycles(const Cao& cao);

bool is_acyclic(const Cao& cao);

enum class TopologyShape { Linear, Tree, Lattice, Cyclic, Arbitrary };
enum class Variability { Homogeneous, Heterogeneous };
enum class Uncertainty { Deterministic };
enum class KindLabel {
    RadixMultiplicity,
    RadixExcessValue,
    RadixExcessFact,
    ArbitraryFunction,
    Mixed,
};

const char* to_string(TopologyShape shape);
const char* to_string(Variability variability);
const char* to_string(Uncertainty uncertainty);
const char* to_string(KindLabel kind);
const char* to_string(OperatorFamily family);

/// The feature vector naming the numeration system a network belongs to.
struct ClassificationRecord {
    std::string name;
    OperatorFamily family_influence = OperatorFamily::Transforming;
    Uncertainty uncertainty = Uncertainty::Deterministic;
    TopologyShape topology_shape = TopologyShape::Arbitrary;
    Variability variability = Variability::Homogeneous;
    KindLabel kind_label = KindLabel::RadixMultiplicity;

    bool operator==(const ClassificationRecord&) const = default;
};

/// Derives the classification structurally:
///   Linear  — all operators are L and the entities form one chain
///             (networks without operators count as Linear when they have
///             at most one entity);
///   Cyclic  — the dependency graph has a cycle;
///   Tree    — acyclic and every entity is the image of at most one
///             operator;
///   Arbitrary otherwise. Lattice is never inferred from wiring; the
///   value exists for generated lattices only.
/// Variability is Homogeneous iff all operators carry identical radix and
/// rate vectors.
ClassificationRecord classify_sns(const Cao& cao);

/// Positive per-entity weights. Consistent when, for every
/// radix-multiplicity operator, the weighted radices of its operands
/// equal the weighted rates of its images — which makes the total
/// weighted cardinal invariant under every firing.
struct WeightAssignment {
    std::map<EntityName, Rational> weights;
};

struct WeightCheckResult {
    bool ok = false;
    // op_id -> (weighted image rates) - (weighted operand radices);
    // radix-multiplicity operators only.
    std::vector<std::pair<std::string, Rational>> residuals;
};

/// Exact consistency test. Throws std::invalid_argument when a referenced
/// entity has no weight.
WeightCheckResult check_weights(const Cao& cao, const WeightAssignment& weights);

struct WeightDerivation {
    enum class Status { Derived, Underdetermined, Inconsistent };
    Status status = Status::Derived;
    WeightAssignment weights;  // populated when Derived
    std::string detail;        // which operator/entity blocked or clashed

    bool ok() const { return status == Status::Derived; }
};

/// Seeds every initial (and detached) entity with weight 1 and propagates
/// through radix-multiplicity operators in dependency order. Solvable
/// exactly when each operator leaves at most one positive-rate image
/// undetermined; two operators demanding different weights for one image
/// is Inconsistent. Throws std::invalid_argument on cyclic networks.
WeightDerivation derive_weights(const Cao& cao);

/// Sum of weight(entity) * cardinal over the whole state.
Rational weighted_total(const Cao& cao, const WeightAssignment& weights, const CardinalState& state);

}  // namespace sns
