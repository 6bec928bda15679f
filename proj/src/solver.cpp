#include "maltmaj/solver.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <tuple>

#include "maltmaj/errors.hpp"

namespace maltmaj {

namespace {

Network::Mask full_mask(std::size_t n) {
    return n == 64 ? ~Network::Mask{0} : (Network::Mask{1} << n) - 1;
}

}  // namespace

Network::Network(Domain domain, std::size_t num_vars)
    : domain_(domain),
      num_vars_(num_vars),
      domains_(num_vars, full_mask(domain.size())),
      edges_(num_vars * num_vars * domain.size(), full_mask(domain.size())) {
    for (std::size_t v = 0; v < num_vars_; ++v)
        sync_diagonal(v);
}

void Network::sync_diagonal(std::size_t var) {
    for (Element a = 0; a < domain_.size(); ++a)
        row_ref(var, var, a) = ((domains_[var] >> a) & 1U) ? Mask{1} << a : 0;
}

void Network::restrict_domain(std::size_t var, Mask allowed) {
    domains_[var] &= allowed;
    sync_diagonal(var);
}

void Network::restrict_edge(std::size_t i, std::size_t j, const Relation& rel) {
    if (rel.arity() != 2 || rel.domain() != domain_)
        throw UsageError("edge restriction needs a binary relation over the network's domain");
    const std::size_t n = domain_.size();
    if (i == j) {
        Mask diag = 0;
        for (Element a = 0; a < n; ++a)
            if (rel.contains_index(a * n + a))
                diag |= Mask{1} << a;
        restrict_domain(i, diag);
        return;
    }
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            if (!rel.contains_index(a * n + b)) {
                row_ref(i, j, a) &= ~(Mask{1} << b);
                row_ref(j, i, b) &= ~(Mask{1} << a);
            }
}

std::size_t Network::bit_count() const {
    std::size_t total = 0;
    for (Mask m : domains_)
        total += std::popcount(m);
    for (Mask m : edges_)
        total += std::popcount(m);
    return total;
}

Network normalize(const Instance& inst) {
    Network net(inst.language().domain(), inst.num_vars());
    for (const auto& c : inst.constraints()) {
        const Relation& rel = inst.relation_of(c);
        if (c.scope.size() == 1) {
            net.restrict_domain(c.scope[0], rel.bits());
        } else {
            net.restrict_edge(c.scope[0], c.scope[1], rel);
        }
    }
    return net;
}

class PathConsistency {
public:
    using Mask = Network::Mask;

    PathConsistency(Network& net, const PathConsistencyOptions& options) : net_(net), options_(options) {}

    bool run() {
        const std::size_t m = net_.num_vars_;
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> order;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                for (std::size_t k = 0; k < m; ++k)
                    if (k != i && k != j)
                        order.emplace_back(i, j, k);
        std::mt19937_64 rng(options_.shuffle_seed.value_or(0));

        if (!arc_sweep())
            return false;
        bool changed = true;
        while (changed) {
            changed = false;
            if (options_.shuffle_seed)
                std::shuffle(order.begin(), order.end(), rng);
            for (auto [i, j, k] : order) {
                if (tighten_pair(i, j, k)) {
                    changed = true;
                    if (!edge_nonempty(i, j))
                        return false;
                }
            }
            bool arc_changed = false;
            if (!arc_sweep(&arc_changed))
                return false;
            changed = changed || arc_changed;
        }
        return true;
    }

private:
    // Arc rule to a fixed point, also dropping edge pairs that leave the domains.
    bool arc_sweep(bool* changed_out = nullptr) {
        const std::size_t m = net_.num_vars_;
        const std::size_t n = net_.domain_.size();
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < m; ++i) {
                Mask keep = net_.domains_[i];
                for (std::size_t j = 0; j < m && keep; ++j) {
                    if (j == i)
                        continue;
                    for (Element a = 0; a < n; ++a)
                        if (((keep >> a) & 1U) && (net_.row(i, j, a) & net_.domains_[j]) == 0)
                            keep &= ~(Mask{1} << a);
                }
                if (keep != net_.domains_[i]) {
                    net_.restrict_domain(i, keep);
                    changed = true;
                    if (changed_out)
                        *changed_out = true;
                }
                if (keep == 0)
                    return false;
            }
        }
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                if (i == j)
                    continue;
                for (Element a = 0; a < n; ++a) {
                    Mask& r = net_.row_ref(i, j, a);
                    const Mask restricted = ((net_.domains_[i] >> a) & 1U) ? (r & net_.domains_[j]) : 0;
                    if (restricted != r) {
                        r = restricted;
                        if (changed_out)
                            *changed_out = true;
                    }
                }
            }
        return true;
    }

    // Path rule for edge (i, j) through k; updates the mirror edge as well.
    bool tighten_pair(std::size_t i, std::size_t j, std::size_t k) {
        const std::size_t n = net_.domain_.size();
        const Mask dk = net_.domains_[k];
        bool changed = false;
        for (Element a = 0; a < n; ++a) {
            Mask& r = net_.row_ref(i, j, a);
            if (r == 0)
                continue;
            Mask reach = 0;
            Mask via = net_.row(i, k, a) & dk;
            while (via) {
                const int c = std::countr_zero(via);
                via &= via - 1;
                reach |= net_.row(k, j, static_cast<Element>(c));
            }
            Mask dropped = r & ~reach;
            if (dropped == 0)
                continue;
            r &= reach;
            changed = true;
            while (dropped) {
                const int b = std::countr_zero(dropped);
                dropped &= dropped - 1;
                net_.row_ref(j, i, static_cast<Element>(b)) &= ~(Mask{1} << a);
            }
        }
        return changed;
    }

    bool edge_nonempty(std::size_t i, std::size_t j) const {
        for (Element a = 0; a < net_.domain_.size(); ++a)
            if (net_.row(i, j, a))
                return true;
        return false;
    }

    Network& net_;
    const PathConsistencyOptions& options_;
};

std::optional<Network> establish_path_consistency(Network net, const PathConsistencyOptions& options) {
    if (!PathConsistency(net, options).run())
        return std::nullopt;
    return net;
}

std::optional<Assignment> brute_force_solve(const Instance& inst, std::uint64_t budget) {
    const std::size_t n = inst.language().domain().size();
    const std::size_t m = inst.num_vars();
    std::uint64_t space = 1;
    for (std::size_t v = 0; v < m; ++v) {
        if (space > budget / n)
            throw UsageError("brute force would visit " + std::to_string(n) + "^" + std::to_string(m) +
                             " assignments, over the budget of " + std::to_string(budget));
        space *= n;
    }
    if (space > budget)
        throw UsageError("brute force search space exceeds the budget of " + std::to_string(budget));

    // Constraints are checked as soon as the last variable of their scope is set.
    std::vector<std::vector<const Constraint*>> due(m);
    for (const auto& c : inst.constraints())
        due[*std::max_element(c.scope.begin(), c.scope.end())].push_back(&c);

    auto ok_at = [&](const Assignment& a, std::size_t var) {
        for (const Constraint* c : due[var]) {
            const Relation& rel = inst.relation_of(*c);
            const bool member = c->scope.size() == 1 ? rel.contains_index(a[c->scope[0]])
                                                      : rel.contains_index(a[c->scope[0]] * n + a[c->scope[1]]);
            if (!member)
                return false;
        }
        return true;
    };

    Assignment a(m, 0);
    if (m == 0)
        return a;
    std::size_t var = 0;
    while (true) {
        if (ok_at(a, var)) {
            if (var + 1 == m)
                return a;
            ++var;
            a[var] = 0;
            continue;
        }
        // Advance the current variable, backing up past exhausted ones.
        while (a[var] + 1 >= n) {
            a[var] = 0;
            if (var == 0)
                return std::nullopt;
            --var;
        }
        ++a[var];
    }
}

std::optional<Assignment> solve_majority(const Instance& inst, const TernaryOperation& witness) {
    if (!is_majority(witness))
        throw UsageError("solver witness is not a majority operation");
    const PolymorphismReport report = check_polymorphism(witness, inst.language());
    if (!report.ok()) {
        const auto& v = report.violations.front();
        throw UsageError("solver witness does not preserve relation '" + v.relation + "': rows " +
                         format_tuple(v.witness.rows[0]) + " " + format_tuple(v.witness.rows[1]) + " " +
                         format_tuple(v.witness.rows[2]) + " map to " + format_tuple(v.witness.image));
    }

    const auto consistent = establish_path_consistency(normalize(inst));
    if (!consistent)
        return std::nullopt;
    const Network& net = *consistent;

    const std::size_t m = inst.num_vars();
    Assignment a(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        Network::Mask cands = net.domain_of(i);
        for (std::size_t j = 0; j < i; ++j)
            cands &= net.row(j, i, a[j]);
        if (cands == 0)
            throw GreedyDeadEnd("greedy extension found no value for variable " + std::to_string(i) +
                                " after path consistency; the witness cannot be a majority polymorphism");
        a[i] = static_cast<Element>(std::countr_zero(cands));
    }
    if (!satisfies(inst, a))
        throw GreedyDeadEnd("greedy extension produced an assignment that violates a constraint");
    return a;
}

}  // namespace maltmaj
