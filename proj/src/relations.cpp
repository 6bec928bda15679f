#include "maltmaj/relations.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "maltmaj/errors.hpp"

namespace maltmaj {

namespace {

std::size_t tuple_space_for(const Domain& domain, int arity) {
    if (arity != 1 && arity != 2)
        throw UsageError("relation arity must be 1 or 2, got " + std::to_string(arity));
    return arity == 1 ? domain.size() : domain.size() * domain.size();
}

}  // namespace

Relation::Relation(Domain domain, int arity, std::vector<bool> bitmap)
    : domain_(domain), arity_(arity), bitmap_(std::move(bitmap)) {
    if (bitmap_.size() != tuple_space_for(domain_, arity_))
        throw UsageError("relation bitmap has the wrong length");
    for (std::size_t t = 0; t < bitmap_.size(); ++t)
        if (bitmap_[t])
            members_.push_back(t);
}

Relation Relation::empty(Domain domain, int arity) {
    return Relation(domain, arity, std::vector<bool>(tuple_space_for(domain, arity), false));
}

Relation Relation::full(Domain domain, int arity) {
    return Relation(domain, arity, std::vector<bool>(tuple_space_for(domain, arity), true));
}

Relation Relation::unary(Domain domain, const std::vector<Element>& values) {
    std::vector<bool> bitmap(domain.size(), false);
    for (Element v : values) {
        domain.check(v);
        bitmap[v] = true;
    }
    return Relation(domain, 1, std::move(bitmap));
}

Relation Relation::binary(Domain domain, const std::vector<ElementPair>& pairs) {
    const std::size_t n = domain.size();
    std::vector<bool> bitmap(n * n, false);
    for (auto [a, b] : pairs) {
        domain.check(a);
        domain.check(b);
        bitmap[a * n + b] = true;
    }
    return Relation(domain, 2, std::move(bitmap));
}

Relation Relation::from_bits(Domain domain, int arity, std::uint64_t bits) {
    const std::size_t space = tuple_space_for(domain, arity);
    if (space > 64)
        throw UsageError("from_bits needs at most 64 tuples");
    if (space < 64 && (bits >> space) != 0)
        throw UsageError("bitmap has bits beyond the tuple space");
    std::vector<bool> bitmap(space);
    for (std::size_t t = 0; t < space; ++t)
        bitmap[t] = (bits >> t) & 1U;
    return Relation(domain, arity, std::move(bitmap));
}

bool Relation::contains(Element a) const {
    if (arity_ != 1)
        throw UsageError("unary membership query on a binary relation");
    domain_.check(a);
    return bitmap_[a];
}

bool Relation::contains(Element a, Element b) const {
    if (arity_ != 2)
        throw UsageError("binary membership query on a unary relation");
    domain_.check(a);
    domain_.check(b);
    return bitmap_[a * domain_.size() + b];
}

std::uint64_t Relation::bits() const {
    if (bitmap_.size() > 64)
        throw UsageError("relation does not fit in a 64-bit bitmap");
    std::uint64_t out = 0;
    for (std::size_t t : members_)
        out |= std::uint64_t{1} << t;
    return out;
}

Tuple Relation::tuple(std::size_t t) const {
    if (arity_ == 1)
        return {static_cast<Element>(t)};
    const std::size_t n = domain_.size();
    return {static_cast<Element>(t / n), static_cast<Element>(t % n)};
}

std::size_t Relation::index_of(const Tuple& tuple) const {
    if (tuple.size() != static_cast<std::size_t>(arity_))
        throw UsageError("tuple arity does not match relation arity");
    for (Element e : tuple)
        domain_.check(e);
    return arity_ == 1 ? tuple[0] : tuple[0] * domain_.size() + tuple[1];
}

Relation intersect(const Relation& a, const Relation& b) {
    if (a.domain() != b.domain() || a.arity() != b.arity())
        throw UsageError("intersection of relations with different domains or arities");
    std::vector<bool> bitmap(a.tuple_space());
    for (std::size_t t = 0; t < bitmap.size(); ++t)
        bitmap[t] = a.contains_index(t) && b.contains_index(t);
    return Relation(a.domain(), a.arity(), std::move(bitmap));
}

std::string format_tuple(const Tuple& tuple) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < tuple.size(); ++i)
        os << (i ? "," : "") << tuple[i];
    os << ')';
    return os.str();
}

Language::Language(Domain domain, std::vector<NamedRelation> relations, bool conservative)
    : domain_(domain), relations_(std::move(relations)), conservative_(conservative) {
    std::set<std::string> seen;
    for (const auto& [name, rel] : relations_) {
        if (!seen.insert(name).second)
            throw UsageError("duplicate relation name '" + name + "'");
        if (rel.domain() != domain_)
            throw UsageError("relation '" + name + "' is over a different domain than the language");
    }
}

const Relation* Language::find(const std::string& name) const {
    for (const auto& r : relations_)
        if (r.name == name)
            return &r.relation;
    return nullptr;
}

namespace {

void require_same_domain(const TernaryOperation& op, const Domain& d) {
    if (op.domain() != d)
        throw UsageError("operation over domain of size " + std::to_string(op.domain().size()) +
                         " used with a relation over domain of size " + std::to_string(d.size()));
}

// Componentwise image of three tuples, as a tuple index.
std::size_t image_index(const TernaryOperation& op, const Relation& rel, std::size_t a, std::size_t b,
                        std::size_t c) {
    if (rel.arity() == 1)
        return op(static_cast<Element>(a), static_cast<Element>(b), static_cast<Element>(c));
    const std::size_t n = rel.domain().size();
    const Element first = op(static_cast<Element>(a / n), static_cast<Element>(b / n), static_cast<Element>(c / n));
    const Element second = op(static_cast<Element>(a % n), static_cast<Element>(b % n), static_cast<Element>(c % n));
    return first * n + second;
}

}  // namespace

std::optional<PreservationWitness> find_violation(const TernaryOperation& op, const Relation& rel) {
    require_same_domain(op, rel.domain());
    const auto& m = rel.members();
    for (std::size_t a : m)
        for (std::size_t b : m)
            for (std::size_t c : m) {
                const std::size_t t = image_index(op, rel, a, b, c);
                if (!rel.contains_index(t))
                    return PreservationWitness{{rel.tuple(a), rel.tuple(b), rel.tuple(c)}, rel.tuple(t)};
            }
    return std::nullopt;
}

bool preserves(const TernaryOperation& op, const Relation& rel) {
    return !find_violation(op, rel).has_value();
}

std::optional<ConservativityWitness> conservativity_witness(const TernaryOperation& op) {
    const Domain& d = op.domain();
    const std::size_t cells = d.size() * d.size() * d.size();
    for (std::size_t i = 0; i < cells; ++i) {
        const CellArgs args = cell_args(d, i);
        const Element v = op.table()[i];
        if (v != args.x && v != args.y && v != args.z)
            return ConservativityWitness{args, v, Relation::unary(d, {args.x, args.y, args.z})};
    }
    return std::nullopt;
}

bool check_conservativity_via_witness(const TernaryOperation& op) {
    const auto w = conservativity_witness(op);
    if (!w)
        return true;
    if (preserves(op, w->relation))
        throw std::logic_error("conservativity witness relation is preserved by the operation");
    return false;
}

PolymorphismReport check_polymorphism(const TernaryOperation& op, const Language& lang) {
    require_same_domain(op, lang.domain());
    PolymorphismReport report;
    for (const auto& [name, rel] : lang.relations())
        if (auto w = find_violation(op, rel))
            report.violations.push_back({name, std::move(*w)});
    if (lang.conservative())
        if (auto cw = conservativity_witness(op)) {
            auto w = find_violation(op, cw->relation);
            if (!w)
                throw std::logic_error("conservativity witness relation is preserved by the operation");
            report.violations.push_back({kImplicitUnaryCheck, std::move(*w)});
        }
    return report;
}

bool is_polymorphism(const TernaryOperation& op, const Language& lang) {
    return check_polymorphism(op, lang).ok();
}

Relation closure_under(const TernaryOperation& op, const Relation& seed) {
    require_same_domain(op, seed.domain());
    std::vector<bool> bitmap = seed.bitmap();
    std::vector<std::size_t> members = seed.members();
    // Semi-naive fixed point: every round only considers triples that use at
    // least one tuple added in the previous round.
    std::size_t fresh_begin = 0;
    while (fresh_begin < members.size()) {
        const std::size_t old_end = members.size();
        std::vector<std::size_t> added;
        for (std::size_t i = 0; i < old_end; ++i)
            for (std::size_t j = 0; j < old_end; ++j)
                for (std::size_t k = 0; k < old_end; ++k) {
                    if (i < fresh_begin && j < fresh_begin && k < fresh_begin)
                        continue;
                    const std::size_t t = image_index(op, seed, members[i], members[j], members[k]);
                    if (!bitmap[t]) {
                        bitmap[t] = true;
                        added.push_back(t);
                    }
                }
        fresh_begin = old_end;
        members.insert(members.end(), added.begin(), added.end());
    }
    return Relation(seed.domain(), seed.arity(), std::move(bitmap));
}

std::vector<Relation> preserved_relations(const TernaryOperation& op, int arity) {
    const Domain& d = op.domain();
    const std::size_t space = tuple_space_for(d, arity);
    if (space > 16)
        throw UsageError("preserved_relations enumerates 2^(n^arity) candidates and needs n^arity <= 16; "
                         "sample invariant relations with closure_under instead");
    std::vector<Relation> out;
    const std::uint64_t count = std::uint64_t{1} << space;
    for (std::uint64_t bits = 0; bits < count; ++bits) {
        Relation r = Relation::from_bits(d, arity, bits);
        if (preserves(op, r))
            out.push_back(std::move(r));
    }
    return out;
}

}  // namespace maltmaj
