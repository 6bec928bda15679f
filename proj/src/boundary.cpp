#include "maltmaj/boundary.hpp"

#include <ostream>

namespace maltmaj {

namespace {

// Arity-3 relation over {0,1}, kept local so the language model stays binary.
struct TernaryRelation {
    std::vector<Tuple> members;  // ascending

    bool contains(const Tuple& t) const {
        for (const auto& m : members)
            if (m == t)
                return true;
        return false;
    }
};

TernaryRelation even_parity() {
    TernaryRelation r;
    for (Element a = 0; a < 2; ++a)
        for (Element b = 0; b < 2; ++b)
            for (Element c = 0; c < 2; ++c)
                if ((a ^ b ^ c) == 0)
                    r.members.push_back({a, b, c});
    return r;
}

Tuple apply_rows(const TernaryOperation& op, const Tuple& s, const Tuple& t, const Tuple& u) {
    Tuple out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        out[i] = op(s[i], t[i], u[i]);
    return out;
}

std::optional<PreservationWitness> find_ternary_violation(const TernaryOperation& op, const TernaryRelation& rel) {
    for (const auto& s : rel.members)
        for (const auto& t : rel.members)
            for (const auto& u : rel.members) {
                Tuple image = apply_rows(op, s, t, u);
                if (!rel.contains(image))
                    return PreservationWitness{{s, t, u}, std::move(image)};
            }
    return std::nullopt;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

bool BoundaryDemo::reproduced() const {
    const Tuple ones{1, 1, 1};
    return minority_is_maltsev && minority_is_conservative && minority_preserves && derivative_is_majority &&
           derivative_is_boolean_majority && !derivative_preserves && first_violation.has_value() &&
           canonical.image == ones && !canonical_in_relation;
}

BoundaryDemo run_boundary_demo() {
    const TernaryRelation parity = even_parity();
    const TernaryOperation minority = TernaryOperation::boolean_minority();
    const TernaryOperation d = derivative(minority);

    BoundaryDemo demo;
    demo.minority_is_maltsev = is_maltsev(minority);
    demo.minority_is_conservative = is_conservative(minority);
    demo.minority_preserves = !find_ternary_violation(minority, parity).has_value();
    demo.derivative_is_majority = is_majority(d);
    demo.derivative_is_boolean_majority = d == TernaryOperation::boolean_majority();
    demo.first_violation = find_ternary_violation(d, parity);
    demo.derivative_preserves = !demo.first_violation.has_value();

    const Tuple r1{0, 1, 1}, r2{1, 0, 1}, r3{1, 1, 0};
    demo.canonical = {{r1, r2, r3}, apply_rows(d, r1, r2, r3)};
    demo.canonical_in_relation = parity.contains(demo.canonical.image);
    return demo;
}

void print_boundary_demo(const BoundaryDemo& demo, std::ostream& out) {
    auto rows = [](const PreservationWitness& w) {
        return format_tuple(w.rows[0]) + " " + format_tuple(w.rows[1]) + " " + format_tuple(w.rows[2]) + " -> " +
               format_tuple(w.image);
    };
    out << "relation R = {(a,b,c) in {0,1}^3 : a^b^c = 0} = {(0,0,0) (0,1,1) (1,0,1) (1,1,0)}\n";
    out << "operation p(x,y,z) = x^y^z\n";
    out << "p is maltsev: " << yes_no(demo.minority_is_maltsev) << '\n';
    out << "p is conservative: " << yes_no(demo.minority_is_conservative) << '\n';
    out << "p preserves R: " << yes_no(demo.minority_preserves) << '\n';
    out << "derivative p' is majority: " << yes_no(demo.derivative_is_majority) << '\n';
    out << "derivative p' equals boolean majority: " << yes_no(demo.derivative_is_boolean_majority) << '\n';
    out << "derivative p' preserves R: " << yes_no(demo.derivative_preserves) << '\n';
    if (demo.first_violation)
        out << "first violation: " << rows(*demo.first_violation) << '\n';
    out << "p' on rows " << rows(demo.canonical) << ", in R: " << yes_no(demo.canonical_in_relation) << '\n';
    out << "boundary reproduced: " << yes_no(demo.reproduced()) << '\n';
}

}  // namespace maltmaj
