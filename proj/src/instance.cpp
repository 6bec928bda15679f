#include "maltmaj/instance.hpp"

#include "maltmaj/errors.hpp"

namespace maltmaj {

Instance::Instance(Language language, std::size_t num_vars, std::vector<Constraint> constraints)
    : language_(std::move(language)), num_vars_(num_vars), constraints_(std::move(constraints)) {
    for (const auto& c : constraints_) {
        const Relation* rel = language_.find(c.relation);
        if (rel == nullptr)
            throw UsageError("constraint refers to unknown relation '" + c.relation + "'");
        if (c.scope.size() != static_cast<std::size_t>(rel->arity()))
            throw UsageError("constraint on '" + c.relation + "' has " + std::to_string(c.scope.size()) +
                             " variables but the relation has arity " + std::to_string(rel->arity()));
        for (std::size_t v : c.scope)
            if (v >= num_vars_)
                throw UsageError("constraint on '" + c.relation + "' uses variable " + std::to_string(v) +
                                 " but the instance has " + std::to_string(num_vars_) + " variables");
    }
}

const Relation& Instance::relation_of(const Constraint& c) const {
    const Relation* rel = language_.find(c.relation);
    if (rel == nullptr)
        throw UsageError("unresolved relation name '" + c.relation + "'");
    return *rel;
}

bool satisfies(const Instance& inst, const Assignment& assignment) {
    if (assignment.size() != inst.num_vars())
        return false;
    const Domain& d = inst.language().domain();
    for (Element v : assignment)
        if (!d.contains(v))
            return false;
    for (const auto& c : inst.constraints()) {
        const Relation& rel = inst.relation_of(c);
        const bool ok = c.scope.size() == 1 ? rel.contains(assignment[c.scope[0]])
                                            : rel.contains(assignment[c.scope[0]], assignment[c.scope[1]]);
        if (!ok)
            return false;
    }
    return true;
}

}  // namespace maltmaj
