// core.hpp — domain model for semantic numeration networks.
//
// A network ("CAO") is a finite set of named counters (cardinal abstract
// entities) wired together by carry-propagating operators. Everything here
// is a plain value type; construction goes through new_cao(), which either
// returns a fully validated, immutable network or the complete list of
// violations. No arithmetic lives in this header — see operators.hpp and
// engine.hpp.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sns {

/// Non-negative arbitrary-precision count of semantic unit quanta.
/// Negativity is a contract violation everywhere, including mid-step.
using Cardinal = boost::multiprecision::cpp_int;

/// Exact rational, used for conservation weights and decoded values.
using Rational = boost::multiprecision::cpp_rational;

/// One coordinate of a composite entity name.
using Coordinate = std::variant<std::string, std::int64_t>;

/// Identifier of an entity; either elementary ("i") or composite with
/// coordinates ("bit(0,3)"). Composite names are an in-memory facility;
/// the text format only carries elementary names.
struct EntityName {
    std::string id;
    std::vector<Coordinate> coords;

    EntityName() = default;
    EntityName(std::string id_) : id(std::move(id_)) {}
    EntityName(const char* id_) : id(id_) {}
    EntityName(std::string id_, std::vector<Coordinate> coords_)
        : id(std::move(id_)), coords(std::move(coords_)) {}

    /// Rendered form: "i" or "i(0,k)".
    std::string str() const;

    bool operator==(const EntityName&) const = default;
    bool operator<(const EntityName& o) const;
};

/// A named counter: name plus its (initial) cardinal.
struct CardinalAbstractEntity {
    EntityName name;
    Cardinal cardinal = 0;

    bool operator==(const CardinalAbstractEntity&) const = default;
};

/// How an operator derives its per-operand carry and remainder.
enum class KindTag {
    RadixMultiplicity,  // carry = floor(N/n), remainder = N - p*n
    RadixExcessValue,   // carry = N - n (0 when N <= n), remainder = 0
    RadixExcessFact,    // carry = 1 iff N > n, remainder = hook(N, n), default n
    ArbitraryFunction,  // carry = hook(N, n), remainder = hook(N, n)
};

/// Pluggable carry/remainder rule: maps (value, radix) to a cardinal.
using Hook = std::function<Cardinal(const Cardinal& value, const Cardinal& radix)>;

struct OperatorKind {
    KindTag tag = KindTag::RadixMultiplicity;
    std::string hook_name;  // registry name for ArbitraryFunction hooks
    Hook carry_hook;        // ArbitraryFunction only
    Hook remainder_hook;    // RadixExcessFact (optional) and ArbitraryFunction

    static OperatorKind radix_multiplicity() { return {}; }
    static OperatorKind radix_excess_value() { return {KindTag::RadixExcessValue, {}, {}, {}}; }
    static OperatorKind radix_excess_fact(Hook remainder = {}) {
        return {KindTag::RadixExcessFact, {}, {}, std::move(remainder)};
    }
    static OperatorKind arbitrary(std::string name, Hook carry, Hook remainder) {
        return {KindTag::ArbitraryFunction, std::move(name), std::move(carry), std::move(remainder)};
    }

    // Structural identity; hook closures compare by registry name.
    bool operator==(const OperatorKind& o) const {
        return tag == o.tag && hook_name == o.hook_name;
    }
};

/// Operator shape: L = (1,1), D = (1,v>1), F = (w>1,1), M = (w>=1,v>=1).
/// Assign and Zero are initialization directives (the init map and
/// engine::reset); they are never schedulable and never pass validation
/// as network operators.
enum class OperatorForm { L, D, F, M, Assign, Zero };

/// Only Transforming operators execute; the other families exist so that
/// classification records can name them.
enum class OperatorFamily { Transforming, Preserving, Complex };

struct Operand {
    EntityName entity;
    Cardinal radix = 1;  // n >= 1

    bool operator==(const Operand&) const = default;
};

struct Image {
    EntityName entity;
    Cardinal rate = 1;  // r >= 0; at least one image of an operator has r > 0

    bool operator==(const Image&) const = default;
};

/// One carry-propagating operator: when every operand yields a carry, the
/// common carry (their minimum) is extracted from all operands and scaled
/// into each image by its conversion rate.
struct OperatorSpec {
    std::string op_id;
    OperatorForm form = OperatorForm::M;
    OperatorFamily family = OperatorFamily::Transforming;
    OperatorKind kind;
    std::vector<Operand> operands;
    std::vector<Image> images;

    std::size_t input_valence() const { return operands.size(); }
    std::size_t output_valence() const { return images.size(); }

    bool operator==(const OperatorSpec&) const = default;
};

/// A complete network: entities, operators, and the initial assignment.
/// The unit of parsing, validation, analysis, and execution. Instances
/// are immutable after new_cao(); the index tables below are derived
/// there and must not be edited by hand.
struct Cao {
    std::string name;
    std::vector<CardinalAbstractEntity> entities;  // declaration order
    std::vector<OperatorSpec> operators;           // declaration order
    std::map<EntityName, Cardinal> init;           // absent entries mean 0

    // Derived wiring tables (filled by new_cao).
    std::map<EntityName, std::size_t> entity_index;
    std::vector<std::vector<std::size_t>> op_operand_index;  // [op][k] -> entity slot
    std::vector<std::vector<std::size_t>> op_image_index;

    std::size_t entity_count() const { return entities.size(); }
    std::size_t operator_count() const { return operators.size(); }

    /// Slot of a named entity, if declared.
    std::optional<std::size_t> index_of(const EntityName& n) const;

    bool operator==(const Cao& o) const {
        return name == o.name && entities == o.entities && operators == o.operators &&
               init == o.init;
    }
};

struct ValidationError {
    std::string message;
    std::string op_id;  // offending operator, empty when not operator-scoped

    bool operator==(const ValidationError&) const = default;
};

struct CaoBuildResult {
    std::optional<Cao> cao;
    std::vector<ValidationError> errors;

    bool ok() const { return cao.has_value(); }
};

/// Validates and assembles a network. Returns either a Cao satisfying
/// every structural invariant (known references, one output per entity,
/// positive radices, executable operators only, ...) or the full list of
/// violations. Construction is pure: identical inputs yield identical
/// results.
CaoBuildResult new_cao(std::string name, std::vector<CardinalAbstractEntity> entities,
                       std::vector<OperatorSpec> operators, std::map<EntityName, Cardinal> init);

/// The order-free view of a state: the multiset of all cardinals after a
/// given step, plus the named map for reporting.
struct Multicardinal {
    std::vector<Cardinal> values;  // sorted ascending (canonical multiset form)
    std::map<EntityName, Cardinal> named;
    std::size_t step = 0;

    bool operator==(const Multicardinal&) const = default;
};

/// The structured view of a state: which network the cardinals belong to.
/// Projecting away the structure yields the Multicardinal of the same step.
struct Multinumber {
    const Cao* cao = nullptr;  // non-owning; valid while the network lives
    std::map<EntityName, Cardinal> cardinals;
    std::size_t step = 0;

    Multicardinal to_multicardinal() const;
};

/// Builds the multiset view of a named cardinal map at step tau.
Multicardinal multicardinal_of(const std::map<EntityName, Cardinal>& cardinals, std::size_t tau);

}  // namespace sns
