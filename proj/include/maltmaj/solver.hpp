#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "maltmaj/algebra.hpp"
#include "maltmaj/instance.hpp"

namespace maltmaj {

// Binary constraint network: a candidate set per variable and a dense m x m
// matrix of allowed value pairs. Value sets are 64-bit masks, so n <= 64.
// Edge (i, j) row a is the set of b with (a, b) allowed; edge (j, i) is always
// its transpose and edge (i, i) is the diagonal of domains[i].
class Network {
public:
    using Mask = std::uint64_t;

    Network(Domain domain, std::size_t num_vars);

    const Domain& domain() const noexcept { return domain_; }
    std::size_t num_vars() const noexcept { return num_vars_; }

    Mask domain_of(std::size_t var) const { return domains_[var]; }
    Mask row(std::size_t i, std::size_t j, Element a) const { return edges_[(i * num_vars_ + j) * domain_.size() + a]; }
    bool allows(std::size_t i, std::size_t j, Element a, Element b) const { return (row(i, j, a) >> b) & 1U; }

    void restrict_domain(std::size_t var, Mask allowed);
    // Intersects rel into edge (i, j) and its mirror. For i == j the relation's
    // diagonal restricts domains[i].
    void restrict_edge(std::size_t i, std::size_t j, const Relation& rel);

    // Set bits across all domains and edges; tightening only ever lowers it.
    std::size_t bit_count() const;

    friend bool operator==(const Network&, const Network&) = default;

private:
    friend class PathConsistency;

    Mask& row_ref(std::size_t i, std::size_t j, Element a) { return edges_[(i * num_vars_ + j) * domain_.size() + a]; }
    void sync_diagonal(std::size_t var);

    Domain domain_;
    std::size_t num_vars_;
    std::vector<Mask> domains_;
    std::vector<Mask> edges_;
};

Network normalize(const Instance& inst);

struct PathConsistencyOptions {
    // When set, (i, j, k) triples are visited in a seeded random order each
    // sweep instead of lexicographically. The fixed point is the same.
    std::optional<std::uint64_t> shuffle_seed;
};

// Arc and path rules to the greatest common fixed point. nullopt means some
// domain or edge became empty.
std::optional<Network> establish_path_consistency(Network net, const PathConsistencyOptions& options = {});

inline constexpr std::uint64_t kDefaultBruteForceBudget = 10'000'000;

// Lexicographically least satisfying assignment, or nullopt for UNSAT.
// Throws UsageError when n^m exceeds budget.
std::optional<Assignment> brute_force_solve(const Instance& inst, std::uint64_t budget = kDefaultBruteForceBudget);

// Raised when greedy extension after path consistency gets stuck, which a
// genuine majority polymorphism rules out.
class GreedyDeadEnd : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Path consistency plus greedy extension (variables and values ascending).
// witness must be a majority polymorphism of the instance's language; this is
// checked up front and a failure throws UsageError naming the violation.
std::optional<Assignment> solve_majority(const Instance& inst, const TernaryOperation& witness);

}  // namespace maltmaj
