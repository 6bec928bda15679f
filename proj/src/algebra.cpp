#include "maltmaj/algebra.hpp"

#include "maltmaj/errors.hpp"

namespace maltmaj {

Domain::Domain(std::size_t size) : size_(size) {
    if (size == 0)
        throw UsageError("domain size must be at least 1");
    if (size > kMaxSize)
        throw UsageError("domain size " + std::to_string(size) + " exceeds the supported maximum of " +
                         std::to_string(kMaxSize));
}

void Domain::check(Element e) const {
    if (!contains(e))
        throw UsageError("element " + std::to_string(e) + " is outside the domain of size " +
                         std::to_string(size_));
}

TernaryOperation::TernaryOperation(Domain domain, std::vector<Element> table)
    : domain_(domain), table_(std::move(table)) {
    const std::size_t n = domain_.size();
    if (table_.size() != n * n * n)
        throw UsageError("operation table has " + std::to_string(table_.size()) + " entries, expected " +
                         std::to_string(n * n * n));
    for (Element v : table_)
        domain_.check(v);
}

namespace {

template <typename F>
TernaryOperation tabulate(Domain domain, F f) {
    const std::size_t n = domain.size();
    std::vector<Element> table;
    table.reserve(n * n * n);
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
            for (Element z = 0; z < n; ++z)
                table.push_back(f(x, y, z));
    return TernaryOperation(domain, std::move(table));
}

}  // namespace

TernaryOperation TernaryOperation::first_projection(Domain domain) {
    return tabulate(domain, [](Element x, Element, Element) { return x; });
}

TernaryOperation TernaryOperation::third_projection(Domain domain) {
    return tabulate(domain, [](Element, Element, Element z) { return z; });
}

TernaryOperation TernaryOperation::boolean_minority() {
    return tabulate(Domain(2), [](Element x, Element y, Element z) { return x ^ y ^ z; });
}

TernaryOperation TernaryOperation::boolean_majority() {
    return tabulate(Domain(2), [](Element x, Element y, Element z) -> Element { return x + y + z >= 2 ? 1 : 0; });
}

CellArgs cell_args(const Domain& domain, std::size_t index) {
    const std::size_t n = domain.size();
    return {static_cast<Element>(index / (n * n)), static_cast<Element>(index / n % n),
            static_cast<Element>(index % n)};
}

Element apply(const TernaryOperation& op, Element x, Element y, Element z) {
    const Domain& d = op.domain();
    d.check(x);
    d.check(y);
    d.check(z);
    return op(x, y, z);
}

bool is_conservative(const TernaryOperation& op) {
    const std::size_t n = op.domain().size();
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
            for (Element z = 0; z < n; ++z) {
                const Element v = op(x, y, z);
                if (v != x && v != y && v != z)
                    return false;
            }
    return true;
}

bool is_maltsev(const TernaryOperation& op) {
    const std::size_t n = op.domain().size();
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
            if (op(x, x, y) != y || op(y, x, x) != y)
                return false;
    return true;
}

bool is_majority(const TernaryOperation& op) {
    const std::size_t n = op.domain().size();
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
            if (op(x, x, y) != x || op(x, y, x) != x || op(y, x, x) != x)
                return false;
    return true;
}

TernaryOperation derivative(const TernaryOperation& op) {
    return tabulate(op.domain(), [&op](Element x, Element y, Element z) { return op(x, y, z) == x ? z : x; });
}

std::string to_string(CaseLabel label) {
    auto letter = [](ArgPosition p) {
        switch (p) {
            case ArgPosition::x: return 'x';
            case ArgPosition::y: return 'y';
            case ArgPosition::z: return 'z';
        }
        return '?';
    };
    return std::string{letter(label.first), '1', letter(label.second), '2'};
}

namespace {

ArgPosition position_of(Element value, Element x, Element y, Element z) {
    if (value == x)
        return ArgPosition::x;
    if (value == y)
        return ArgPosition::y;
    if (value == z)
        return ArgPosition::z;
    throw UsageError("operation returned a value that is none of its arguments");
}

}  // namespace

CaseLabel classify_case(ElementPair xs, ElementPair ys, ElementPair zs, const TernaryOperation& op) {
    if (!is_conservative(op))
        throw UsageError("classify_case requires a conservative operation");
    const Element t1 = apply(op, xs.first, ys.first, zs.first);
    const Element t2 = apply(op, xs.second, ys.second, zs.second);
    return {position_of(t1, xs.first, ys.first, zs.first), position_of(t2, xs.second, ys.second, zs.second)};
}

CaseLabel derivative_case(CaseLabel label) {
    auto flip = [](ArgPosition p) { return p == ArgPosition::x ? ArgPosition::z : ArgPosition::x; };
    return {flip(label.first), flip(label.second)};
}

Element select(ArgPosition pos, Element x, Element y, Element z) noexcept {
    switch (pos) {
        case ArgPosition::x: return x;
        case ArgPosition::y: return y;
        case ArgPosition::z: return z;
    }
    return x;
}

}  // namespace maltmaj
