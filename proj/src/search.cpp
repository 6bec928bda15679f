#include "maltmaj/search.hpp"

#include <algorithm>
#include <stdexcept>

#include "maltmaj/errors.hpp"

namespace maltmaj {

namespace {

constexpr Element kUnassigned = static_cast<Element>(-1);

std::vector<Element> distinct_args(const CellArgs& a) {
    std::vector<Element> v{a.x, a.y, a.z};
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::optional<Element> maltsev_forced(const CellArgs& a) {
    if (a.x == a.y)
        return a.z;
    if (a.y == a.z)
        return a.x;
    return std::nullopt;
}

// Binary preservation requirement on two cells: (p[first], p[second]) in rel.
struct Link {
    std::size_t other;
    const Relation* rel;
    bool self_first;
};

class TableSearch {
public:
    explicit TableSearch(const SearchSpec& spec) : spec_(spec), domain_(spec.language.domain()) {
        const std::size_t n = domain_.size();
        cells_ = n * n * n;
        conservative_ = spec.require_conservative || spec.language.conservative();
        build_candidates();
        build_links();
    }

    SearchResult run() {
        SearchResult result;
        std::vector<Element> values(cells_, kUnassigned);

        // Single-candidate cells (Maltsev-forced, or pinned by filters) are
        // placed before the search starts.
        std::vector<std::size_t> free;
        for (std::size_t c = 0; c < cells_; ++c) {
            if (candidates_[c].empty())
                return result;
            if (candidates_[c].size() == 1)
                values[c] = candidates_[c][0];
        }
        for (std::size_t c = 0; c < cells_; ++c) {
            if (candidates_[c].size() == 1) {
                if (!consistent(values, c))
                    return result;
            } else {
                free.push_back(c);
            }
        }

        const std::size_t depth = free.size();
        std::vector<std::size_t> choice(depth + 1, 0);
        std::size_t k = 0;
        while (true) {
            if (k == depth) {
                emit(values, result);
                if (spec_.mode == SearchMode::first_solution || depth == 0)
                    break;
                --k;
                values[free[k]] = kUnassigned;
                ++choice[k];
            }
            const std::size_t cell = free[k];
            const auto& cands = candidates_[cell];
            bool placed = false;
            while (choice[k] < cands.size()) {
                values[cell] = cands[choice[k]];
                if (consistent(values, cell)) {
                    placed = true;
                    break;
                }
                ++choice[k];
            }
            if (placed) {
                ++k;
                choice[k] = 0;
                continue;
            }
            values[cell] = kUnassigned;
            choice[k] = 0;
            if (k == 0)
                break;
            --k;
            values[free[k]] = kUnassigned;
            ++choice[k];
        }
        return result;
    }

private:
    void build_candidates() {
        candidates_.resize(cells_);
        for (std::size_t c = 0; c < cells_; ++c) {
            const CellArgs a = cell_args(domain_, c);
            std::vector<Element> cands;
            if (spec_.require_maltsev && maltsev_forced(a)) {
                cands = {*maltsev_forced(a)};
            } else if (conservative_) {
                cands = distinct_args(a);
            } else {
                for (Element v = 0; v < domain_.size(); ++v)
                    cands.push_back(v);
            }
            // Unary relations only constrain cells whose three arguments are members.
            for (const auto& [name, rel] : spec_.language.relations()) {
                if (rel.arity() != 1)
                    continue;
                if (rel.contains_index(a.x) && rel.contains_index(a.y) && rel.contains_index(a.z))
                    std::erase_if(cands, [&rel](Element v) { return !rel.contains_index(v); });
            }
            candidates_[c] = std::move(cands);
        }
    }

    void build_links() {
        links_.resize(cells_);
        const std::size_t n = domain_.size();
        for (const auto& [name, rel] : spec_.language.relations()) {
            if (rel.arity() != 2)
                continue;
            std::vector<bool> seen(cells_ * cells_, false);
            const auto& m = rel.members();
            for (std::size_t s : m)
                for (std::size_t t : m)
                    for (std::size_t u : m) {
                        const std::size_t c1 = ((s / n) * n + t / n) * n + u / n;
                        const std::size_t c2 = ((s % n) * n + t % n) * n + u % n;
                        if (seen[c1 * cells_ + c2])
                            continue;
                        seen[c1 * cells_ + c2] = true;
                        if (c1 == c2) {
                            std::erase_if(candidates_[c1], [&rel](Element v) { return !rel.contains(v, v); });
                            continue;
                        }
                        links_[c1].push_back({c2, &rel, true});
                        links_[c2].push_back({c1, &rel, false});
                    }
        }
    }

    bool consistent(const std::vector<Element>& values, std::size_t cell) const {
        const std::size_t n = domain_.size();
        const Element v = values[cell];
        for (const Link& l : links_[cell]) {
            const Element w = values[l.other];
            if (w == kUnassigned)
                continue;
            const std::size_t t = l.self_first ? v * n + w : w * n + v;
            if (!l.rel->contains_index(t))
                return false;
        }
        return true;
    }

    void emit(const std::vector<Element>& values, SearchResult& result) const {
        TernaryOperation op(domain_, values);
        // The incremental checks above are an optimisation; this is the contract.
        if (!is_polymorphism(op, spec_.language) || (spec_.require_maltsev && !is_maltsev(op)) ||
            (conservative_ && !is_conservative(op)))
            throw std::logic_error("table search produced an operation that fails the full check");
        ++result.count;
        if (!result.first)
            result.first = op;
        if (spec_.mode == SearchMode::enumerate_all)
            result.all.push_back(std::move(op));
    }

    const SearchSpec& spec_;
    Domain domain_;
    std::size_t cells_ = 0;
    bool conservative_ = false;
    std::vector<std::vector<Element>> candidates_;
    std::vector<std::vector<Link>> links_;
};

}  // namespace

SearchResult search_polymorphisms(const SearchSpec& spec) {
    if (!spec.require_maltsev && !spec.require_conservative && !spec.language.conservative() &&
        spec.language.relations().empty())
        throw UsageError("search needs a property requirement or at least one relation");
    return TableSearch(spec).run();
}

std::optional<TernaryOperation> find_polymorphism(SearchSpec spec) {
    spec.mode = SearchMode::first_solution;
    return search_polymorphisms(spec).first;
}

std::uint64_t count_polymorphisms(SearchSpec spec) {
    spec.mode = SearchMode::count;
    return search_polymorphisms(spec).count;
}

MaltsevSkeleton maltsev_conservative_skeleton(const Domain& domain) {
    const std::size_t n = domain.size();
    MaltsevSkeleton s;
    s.forced_table.resize(n * n * n);
    for (std::size_t c = 0; c < s.forced_table.size(); ++c) {
        const CellArgs a = cell_args(domain, c);
        if (auto f = maltsev_forced(a)) {
            s.forced_table[c] = *f;
        } else {
            FreeCell cell{c, distinct_args(a)};
            s.forced_table[c] = cell.candidates.front();
            s.free_cells.push_back(std::move(cell));
        }
    }
    return s;
}

MaltsevConservativeEnumerator::MaltsevConservativeEnumerator(Domain domain)
    : domain_(domain), skeleton_(maltsev_conservative_skeleton(domain)) {
    if (domain.size() > 3)
        throw UsageError("exhaustive enumeration of conservative Maltsev operations is limited to n <= 3; "
                         "use sample_maltsev_conservative for larger domains");
}

std::optional<TernaryOperation> MaltsevConservativeEnumerator::next() {
    if (exhausted_)
        return std::nullopt;
    const auto& free = skeleton_.free_cells;
    if (!started_) {
        started_ = true;
        choice_.assign(free.size(), 0);
    } else {
        // Odometer: the last free cell varies fastest, giving lexicographic order.
        std::size_t k = free.size();
        while (true) {
            if (k == 0) {
                exhausted_ = true;
                return std::nullopt;
            }
            --k;
            if (++choice_[k] < free[k].candidates.size())
                break;
            choice_[k] = 0;
        }
    }
    std::vector<Element> table = skeleton_.forced_table;
    for (std::size_t k = 0; k < free.size(); ++k)
        table[free[k].index] = free[k].candidates[choice_[k]];
    return TernaryOperation(domain_, std::move(table));
}

void for_each_maltsev_conservative(const Domain& domain, const std::function<void(const TernaryOperation&)>& fn) {
    MaltsevConservativeEnumerator e(domain);
    while (auto op = e.next())
        fn(*op);
}

std::size_t uniform_below(Rng& rng, std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

TernaryOperation sample_maltsev_conservative(const Domain& domain, Rng& rng) {
    MaltsevSkeleton s = maltsev_conservative_skeleton(domain);
    for (const FreeCell& cell : s.free_cells)
        s.forced_table[cell.index] = cell.candidates[uniform_below(rng, cell.candidates.size())];
    return TernaryOperation(domain, std::move(s.forced_table));
}

TernaryOperation sample_maltsev_conservative(const Domain& domain, std::uint64_t seed) {
    Rng rng(seed);
    return sample_maltsev_conservative(domain, rng);
}

TernaryOperation sample_conservative(const Domain& domain, Rng& rng) {
    const std::size_t cells = domain.size() * domain.size() * domain.size();
    std::vector<Element> table(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        const auto cands = distinct_args(cell_args(domain, c));
        table[c] = cands[uniform_below(rng, cands.size())];
    }
    return TernaryOperation(domain, std::move(table));
}

TernaryOperation sample_non_conservative(const Domain& domain, Rng& rng) {
    if (domain.size() < 2)
        throw UsageError("every operation on a one-element domain is conservative");
    const std::size_t cells = domain.size() * domain.size() * domain.size();
    while (true) {
        std::vector<Element> table(cells);
        for (auto& v : table)
            v = static_cast<Element>(uniform_below(rng, domain.size()));
        TernaryOperation op(domain, std::move(table));
        if (!is_conservative(op))
            return op;
    }
}

}  // namespace maltmaj
