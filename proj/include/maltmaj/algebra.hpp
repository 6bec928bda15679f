#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace maltmaj {

using Element = std::uint32_t;

// Finite set {0, ..., size-1}. Sizes above kMaxSize are rejected: the solver
// packs one domain into a 64-bit word.
class Domain {
public:
    static constexpr std::size_t kMaxSize = 64;

    explicit Domain(std::size_t size);

    std::size_t size() const noexcept { return size_; }
    bool contains(Element e) const noexcept { return e < size_; }

    // Throws UsageError when e is not an element.
    void check(Element e) const;

    friend bool operator==(const Domain&, const Domain&) = default;

private:
    std::size_t size_;
};

// Total function X^3 -> X. Entry x*n^2 + y*n + z holds p(x, y, z).
class TernaryOperation {
public:
    TernaryOperation(Domain domain, std::vector<Element> table);

    static TernaryOperation first_projection(Domain domain);
    static TernaryOperation third_projection(Domain domain);
    // x xor y xor z on {0, 1}.
    static TernaryOperation boolean_minority();
    static TernaryOperation boolean_majority();

    const Domain& domain() const noexcept { return domain_; }
    std::span<const Element> table() const noexcept { return table_; }

    std::size_t index(Element x, Element y, Element z) const noexcept {
        const std::size_t n = domain_.size();
        return (static_cast<std::size_t>(x) * n + y) * n + z;
    }

    // Unchecked lookup for hot loops.
    Element operator()(Element x, Element y, Element z) const noexcept {
        return table_[index(x, y, z)];
    }

    friend bool operator==(const TernaryOperation&, const TernaryOperation&) = default;

private:
    Domain domain_;
    std::vector<Element> table_;
};

struct CellArgs {
    Element x;
    Element y;
    Element z;
};

// Inverse of TernaryOperation::index.
CellArgs cell_args(const Domain& domain, std::size_t index);

Element apply(const TernaryOperation& op, Element x, Element y, Element z);

bool is_conservative(const TernaryOperation& op);
bool is_maltsev(const TernaryOperation& op);
bool is_majority(const TernaryOperation& op);

// p'(x,y,z) = z if p(x,y,z) = x, otherwise x. Defined for every operation.
TernaryOperation derivative(const TernaryOperation& op);

// Which argument a conservative operation returned, per coordinate.
enum class ArgPosition { x, y, z };

struct CaseLabel {
    ArgPosition first;
    ArgPosition second;

    friend bool operator==(const CaseLabel&, const CaseLabel&) = default;
};

std::string to_string(CaseLabel label);

using ElementPair = std::pair<Element, Element>;

// Labels the pair (p(x1,y1,z1), p(x2,y2,z2)) by which argument each coordinate
// equals, preferring x, then y, then z on ties. Throws UsageError if op is not
// conservative.
CaseLabel classify_case(ElementPair xs, ElementPair ys, ElementPair zs, const TernaryOperation& op);

// The derivative's output for a given case, read off the case alone:
// coordinate labelled x maps to z, anything else maps to x.
CaseLabel derivative_case(CaseLabel label);

// Picks the argument named by pos from (x, y, z).
Element select(ArgPosition pos, Element x, Element y, Element z) noexcept;

}  // namespace maltmaj
