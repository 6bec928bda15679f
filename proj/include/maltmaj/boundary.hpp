#pragma once

#include <array>
#include <iosfwd>
#include <optional>

#include "maltmaj/relations.hpp"

namespace maltmaj {

// Shows why the derivative construction is limited to unary and binary
// relations: the Boolean minority x^y^z is a conservative Maltsev
// polymorphism of the ternary relation {(a,b,c) : a^b^c = 0}, while its
// derivative (Boolean majority) is not.
struct BoundaryDemo {
    bool minority_is_maltsev = false;
    bool minority_is_conservative = false;
    bool minority_preserves = false;
    bool derivative_is_majority = false;
    bool derivative_is_boolean_majority = false;
    bool derivative_preserves = false;
    // First violation in member-index order.
    std::optional<PreservationWitness> first_violation;
    // Derivative applied to rows (0,1,1), (1,0,1), (1,1,0).
    PreservationWitness canonical;
    bool canonical_in_relation = true;

    bool reproduced() const;
};

BoundaryDemo run_boundary_demo();
void print_boundary_demo(const BoundaryDemo& demo, std::ostream& out);

}  // namespace maltmaj
