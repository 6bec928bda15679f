#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maltmaj/algebra.hpp"

namespace maltmaj {

using Tuple = std::vector<Element>;

// Unary or binary relation over a domain, stored as a membership bitmap of
// n^arity bits. Tuple (a, b) has index a*n + b; a unary tuple (a) has index a.
class Relation {
public:
    Relation(Domain domain, int arity, std::vector<bool> bitmap);

    static Relation empty(Domain domain, int arity);
    static Relation full(Domain domain, int arity);
    static Relation unary(Domain domain, const std::vector<Element>& values);
    static Relation binary(Domain domain, const std::vector<ElementPair>& pairs);
    // Bit t of bits is the membership of tuple index t. Needs n^arity <= 64.
    static Relation from_bits(Domain domain, int arity, std::uint64_t bits);

    const Domain& domain() const noexcept { return domain_; }
    int arity() const noexcept { return arity_; }
    std::size_t tuple_space() const noexcept { return bitmap_.size(); }
    std::size_t size() const noexcept { return members_.size(); }
    bool is_empty() const noexcept { return members_.empty(); }

    bool contains_index(std::size_t t) const noexcept { return bitmap_[t]; }
    bool contains(Element a) const;
    bool contains(Element a, Element b) const;

    // Member tuple indices, ascending.
    const std::vector<std::size_t>& members() const noexcept { return members_; }
    const std::vector<bool>& bitmap() const noexcept { return bitmap_; }
    std::uint64_t bits() const;

    Tuple tuple(std::size_t t) const;
    std::size_t index_of(const Tuple& tuple) const;

    friend bool operator==(const Relation& a, const Relation& b) {
        return a.domain_ == b.domain_ && a.arity_ == b.arity_ && a.bitmap_ == b.bitmap_;
    }

private:
    Domain domain_;
    int arity_;
    std::vector<bool> bitmap_;
    std::vector<std::size_t> members_;
};

Relation intersect(const Relation& a, const Relation& b);
std::string format_tuple(const Tuple& tuple);

struct NamedRelation {
    std::string name;
    Relation relation;
};

// A second-order constraint language. When conservative() is set the language
// also contains every unary relation over the domain; those are implied by the
// flag and never stored.
class Language {
public:
    Language(Domain domain, std::vector<NamedRelation> relations, bool conservative);

    const Domain& domain() const noexcept { return domain_; }
    const std::vector<NamedRelation>& relations() const noexcept { return relations_; }
    bool conservative() const noexcept { return conservative_; }

    const Relation* find(const std::string& name) const;

private:
    Domain domain_;
    std::vector<NamedRelation> relations_;
    bool conservative_;
};

// Three member tuples whose componentwise image leaves the relation.
struct PreservationWitness {
    std::array<Tuple, 3> rows;
    Tuple image;
};

// First violating triple, scanning member indices (i, j, k) lexicographically.
std::optional<PreservationWitness> find_violation(const TernaryOperation& op, const Relation& rel);
bool preserves(const TernaryOperation& op, const Relation& rel);

// Name used in reports for the implicit unary relations of a conservative language.
inline constexpr const char* kImplicitUnaryCheck = "implicit-unary-conservativity";

// For a non-conservative op: the first cell (x, y, z) with p(x,y,z) outside
// {x, y, z}, and the unary relation {x, y, z} that op fails to preserve.
struct ConservativityWitness {
    CellArgs args;
    Element image;
    Relation relation;
};

std::optional<ConservativityWitness> conservativity_witness(const TernaryOperation& op);

// True iff op is conservative. Otherwise builds the witness relation and
// confirms op does not preserve it; a witness that failed to refute would be
// a logic error and throws.
bool check_conservativity_via_witness(const TernaryOperation& op);

struct RelationViolation {
    std::string relation;
    PreservationWitness witness;
};

struct PolymorphismReport {
    std::vector<RelationViolation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

// Checks every listed relation; for a conservative language also requires op
// to be conservative, which stands in for all 2^n implicit unary relations.
PolymorphismReport check_polymorphism(const TernaryOperation& op, const Language& lang);
bool is_polymorphism(const TernaryOperation& op, const Language& lang);

// Least superset of seed closed under componentwise application of op.
Relation closure_under(const TernaryOperation& op, const Relation& seed);

// Every relation of the given arity preserved by op, ascending by bitmap.
// Requires n^arity <= 16.
std::vector<Relation> preserved_relations(const TernaryOperation& op, int arity);

}  // namespace maltmaj
