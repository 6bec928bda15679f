#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "maltmaj/algebra.hpp"
#include "maltmaj/relations.hpp"

namespace maltmaj {

enum class SearchMode { first_solution, count, enumerate_all };

// Cells are always assigned in flattened index order with values tried
// ascending, so the first solution is the lexicographically least table.
struct SearchSpec {
    bool require_maltsev = false;
    bool require_conservative = false;
    Language language;
    SearchMode mode = SearchMode::first_solution;
};

struct SearchResult {
    std::optional<TernaryOperation> first;
    std::uint64_t count = 0;
    std::vector<TernaryOperation> all;  // filled only in enumerate_all mode
};

// Backtracking over the operation table. A conservative language implies the
// conservative restriction. Throws UsageError when the spec asks for nothing
// (no property flags and no relations).
SearchResult search_polymorphisms(const SearchSpec& spec);

std::optional<TernaryOperation> find_polymorphism(SearchSpec spec);
std::uint64_t count_polymorphisms(SearchSpec spec);

// A Maltsev table has its cells p(x,x,y) and p(y,x,x) fixed; for a
// conservative Maltsev op each remaining cell ranges over the distinct values
// of its arguments.
struct FreeCell {
    std::size_t index;
    std::vector<Element> candidates;
};

struct MaltsevSkeleton {
    std::vector<Element> forced_table;  // free cells hold their first candidate
    std::vector<FreeCell> free_cells;
};

MaltsevSkeleton maltsev_conservative_skeleton(const Domain& domain);

// Every conservative Maltsev operation exactly once, in lexicographic table
// order. Exhaustive use is limited to n <= 3.
class MaltsevConservativeEnumerator {
public:
    explicit MaltsevConservativeEnumerator(Domain domain);

    std::optional<TernaryOperation> next();

private:
    Domain domain_;
    MaltsevSkeleton skeleton_;
    std::vector<std::size_t> choice_;
    bool started_ = false;
    bool exhausted_ = false;
};

void for_each_maltsev_conservative(const Domain& domain, const std::function<void(const TernaryOperation&)>& fn);

// Seeded 64-bit generator used by every sampler.
using Rng = std::mt19937_64;

TernaryOperation sample_maltsev_conservative(const Domain& domain, std::uint64_t seed);
TernaryOperation sample_maltsev_conservative(const Domain& domain, Rng& rng);

// Uniform over conservative operations (each cell from its distinct arguments).
TernaryOperation sample_conservative(const Domain& domain, Rng& rng);

// Uniform over tables that are not conservative, by rejection. Needs n >= 3.
TernaryOperation sample_non_conservative(const Domain& domain, Rng& rng);

std::size_t uniform_below(Rng& rng, std::size_t bound);

}  // namespace maltmaj
