#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "maltmaj/relations.hpp"

namespace maltmaj {

// relation(scope...). A binary constraint with equal scope indices restricts
// the variable to the relation's diagonal.
struct Constraint {
    std::string relation;
    std::vector<std::size_t> scope;
};

class Instance {
public:
    // Throws UsageError on out-of-range scopes, unknown relation names, or a
    // scope whose length differs from the relation's arity.
    Instance(Language language, std::size_t num_vars, std::vector<Constraint> constraints);

    const Language& language() const noexcept { return language_; }
    std::size_t num_vars() const noexcept { return num_vars_; }
    const std::vector<Constraint>& constraints() const noexcept { return constraints_; }

    const Relation& relation_of(const Constraint& c) const;

private:
    Language language_;
    std::size_t num_vars_;
    std::vector<Constraint> constraints_;
};

using Assignment = std::vector<Element>;

// Direct membership check of every constraint; independent of any solver.
bool satisfies(const Instance& inst, const Assignment& assignment);

}  // namespace maltmaj
