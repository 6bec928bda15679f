#include "maltmaj/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ostream>
#include <sstream>
#include <thread>

#include "maltmaj/errors.hpp"
#include "maltmaj/relations.hpp"
#include "maltmaj/search.hpp"

namespace maltmaj {

namespace {

constexpr std::size_t kMaxRecordedViolations = 10;
constexpr std::size_t kMaxRandomDomain = 8;

std::size_t idx(Claim c) { return static_cast<std::size_t>(c); }

// Per-unit stream seed. splitmix64 finaliser over (seed, phase, unit).
std::uint64_t unit_seed(std::uint64_t seed, std::uint64_t phase, std::uint64_t unit) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (phase * 0x100000001ULL + unit + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct UnitResult {
    std::array<ClaimTally, kClaimCount> tallies{};
    std::uint64_t operations = 0;
    std::uint64_t relations = 0;
    std::vector<std::string> notes;

    void record(Claim c, bool ok, const std::string& what) {
        auto& t = tallies[idx(c)];
        ++t.checks;
        if (!ok) {
            ++t.violations;
            if (notes.size() < kMaxRecordedViolations)
                notes.push_back(std::string(claim_label(c)) + ": " + what);
        }
    }
};

// Results land in a vector indexed by unit, so the reduction order never
// depends on scheduling.
template <typename F>
std::vector<UnitResult> run_units(std::size_t count, unsigned workers, F&& unit) {
    std::vector<UnitResult> results(count);
    const unsigned threads = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i)
            results[i] = unit(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++)
                results[i] = unit(i);
        });
    pool.clear();
    return results;
}

std::string table_string(const TernaryOperation& op) {
    std::string s;
    for (Element v : op.table())
        s += std::to_string(v);
    return s;
}

TernaryOperation op_from_index(const Domain& d, std::uint64_t index) {
    const std::size_t cells = d.size() * d.size() * d.size();
    std::vector<Element> table(cells);
    for (std::size_t c = cells; c-- > 0;) {
        table[c] = static_cast<Element>(index % d.size());
        index /= d.size();
    }
    return TernaryOperation(d, std::move(table));
}

Relation random_closure_seed(const Domain& d, Rng& rng) {
    const std::size_t space = d.size() * d.size();
    const std::size_t k = 1 + uniform_below(rng, std::min<std::size_t>(4, space));
    std::vector<bool> bitmap(space, false);
    for (std::size_t i = 0; i < k; ++i)
        bitmap[uniform_below(rng, space)] = true;
    return Relation(d, 2, std::move(bitmap));
}

class Harness {
public:
    explicit Harness(const VerifyOptions& o) : o_(o), domain_(o.n) {}

    VerifyReport run() {
        VerifyReport report;
        report.options = o_;
        absorb(report, run_units(l1_units(), o_.workers, [this](std::size_t i) { return l1(i); }));
        absorb(report, run_units(l2_units(), o_.workers, [this](std::size_t i) { return l2(i); }));
        const std::vector<TernaryOperation> ops = maltsev_ops();
        absorb(report, run_units(ops.size(), o_.workers, [&](std::size_t i) { return maltsev_unit(ops[i], i); }));
        return report;
    }

private:
    bool exhaustive_small() const { return o_.mode == VerifyMode::exhaustive && o_.n <= 2; }

    TernaryOperation derive(const TernaryOperation& op) const {
        return o_.derivative_override ? o_.derivative_override(op) : derivative(op);
    }

    // L1: at n <= 2 the whole table space is small enough to walk, which
    // covers both directions of the claim.
    std::size_t l1_units() const {
        if (o_.n <= 2) {
            std::size_t count = 1;
            for (std::size_t c = 0; c < o_.n * o_.n * o_.n; ++c)
                count *= o_.n;
            return count;
        }
        return o_.samples;
    }

    UnitResult l1(std::size_t i) const {
        UnitResult r;
        TernaryOperation op = [&] {
            if (o_.n <= 2)
                return op_from_index(domain_, i);
            Rng rng(unit_seed(o_.seed, 1, i));
            return sample_non_conservative(domain_, rng);
        }();
        const auto witness = conservativity_witness(op);
        if (is_conservative(op)) {
            // Contrapositive direction: no unary relation of at most three
            // elements is broken.
            bool all_preserved = !witness.has_value();
            for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << o_.n) && all_preserved; ++bits) {
                const Relation rel = Relation::from_bits(domain_, 1, bits);
                if (rel.size() <= 3 && !preserves(op, rel))
                    all_preserved = false;
            }
            r.record(Claim::conservativity_witness, all_preserved,
                     "conservative op " + table_string(op) + " breaks a small unary relation");
            return r;
        }
        const bool ok = witness && witness->relation.size() <= 3 && !witness->relation.contains(witness->image) &&
                        find_violation(op, witness->relation).has_value();
        r.record(Claim::conservativity_witness, ok,
                 "non-conservative op " + table_string(op) + " has no refuting unary witness");
        return r;
    }

    std::size_t l2_units() const {
        if (exhaustive_small())
            return l1_units();
        return o_.samples;
    }

    UnitResult l2(std::size_t i) const {
        UnitResult r;
        TernaryOperation op = [&] {
            if (exhaustive_small())
                return op_from_index(domain_, i);
            Rng rng(unit_seed(o_.seed, 2, i));
            return sample_conservative(domain_, rng);
        }();
        if (!is_conservative(op))
            return r;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << o_.n); ++bits) {
            const Relation rel = Relation::from_bits(domain_, 1, bits);
            r.record(Claim::conservative_preserves, preserves(op, rel),
                     "conservative op " + table_string(op) + " breaks unary relation bits " + std::to_string(bits));
        }
        return r;
    }

    std::vector<TernaryOperation> maltsev_ops() const {
        std::vector<TernaryOperation> ops;
        if (o_.mode == VerifyMode::exhaustive) {
            for_each_maltsev_conservative(domain_, [&](const TernaryOperation& op) { ops.push_back(op); });
        } else {
            ops.reserve(o_.samples);
            for (std::size_t i = 0; i < o_.samples; ++i)
                ops.push_back(sample_maltsev_conservative(domain_, unit_seed(o_.seed, 3, i)));
        }
        return ops;
    }

    UnitResult maltsev_unit(const TernaryOperation& op, std::size_t i) const {
        UnitResult r;
        r.operations = 1;
        const TernaryOperation d = derive(op);
        r.record(Claim::derivative_majority, is_majority(d),
                 "derivative of " + table_string(op) + " is not a majority operation");

        auto check = [&](const Relation& rel) {
            ++r.relations;
            const auto v = find_violation(d, rel);
            std::string what;
            if (v)
                what = "derivative of " + table_string(op) + " breaks binary relation bits " +
                       std::to_string(rel.bits()) + ": " + format_tuple(v->rows[0]) + " " + format_tuple(v->rows[1]) +
                       " " + format_tuple(v->rows[2]) + " -> " + format_tuple(v->image);
            r.record(Claim::derivative_preserves, !v, what);
        };

        if (exhaustive_small()) {
            for (const Relation& rel : preserved_relations(op, 2))
                check(rel);
        } else {
            Rng rng(unit_seed(o_.seed, 4, i));
            for (std::size_t k = 0; k < o_.relations_per_op; ++k) {
                const Relation rel = closure_under(op, random_closure_seed(domain_, rng));
                if (!preserves(op, rel)) {
                    r.record(Claim::derivative_preserves, false,
                             "closure of a seed under " + table_string(op) + " is not invariant");
                    continue;
                }
                check(rel);
            }
        }
        return r;
    }

    static void absorb(VerifyReport& report, const std::vector<UnitResult>& units) {
        for (const UnitResult& u : units) {
            for (std::size_t c = 0; c < kClaimCount; ++c) {
                report.tallies[c].checks += u.tallies[c].checks;
                report.tallies[c].violations += u.tallies[c].violations;
            }
            report.operations += u.operations;
            report.relations_checked += u.relations;
            for (const auto& note : u.notes)
                if (report.sample_violations.size() < kMaxRecordedViolations)
                    report.sample_violations.push_back(note);
        }
    }

    const VerifyOptions& o_;
    Domain domain_;
};

const char* mode_name(VerifyMode m) { return m == VerifyMode::exhaustive ? "exhaustive" : "random"; }

const char* claim_description(Claim c) {
    switch (c) {
        case Claim::conservativity_witness: return "polymorphism-of-conservative-language-is-conservative";
        case Claim::conservative_preserves: return "conservative-op-preserves-unary";
        case Claim::derivative_majority: return "derivative-is-majority";
        case Claim::derivative_preserves: return "derivative-preserves-binary";
    }
    return "";
}

}  // namespace

const char* claim_label(Claim c) {
    switch (c) {
        case Claim::conservativity_witness: return "L1";
        case Claim::conservative_preserves: return "L2";
        case Claim::derivative_majority: return "L3";
        case Claim::derivative_preserves: return "THM";
    }
    return "?";
}

std::uint64_t VerifyReport::total_violations() const {
    std::uint64_t total = 0;
    for (const auto& t : tallies)
        total += t.violations;
    return total;
}

VerifyReport run_verify(const VerifyOptions& options) {
    if (options.n == 0)
        throw UsageError("--n must be at least 1");
    if (options.mode == VerifyMode::exhaustive && options.n > 3)
        throw UsageError("exhaustive verification is limited to n <= 3 (n <= 2 enumerates every binary relation)");
    if (options.n > kMaxRandomDomain)
        throw UsageError("verification is limited to n <= " + std::to_string(kMaxRandomDomain));
    if (options.mode == VerifyMode::random && options.samples == 0)
        throw UsageError("random verification needs --samples >= 1");

    const auto start = std::chrono::steady_clock::now();
    VerifyReport report = Harness(options).run();
    report.wall_clock_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

void print_report(const VerifyReport& report, std::ostream& out) {
    const VerifyOptions& o = report.options;
    out << "verify n=" << o.n << " mode=" << mode_name(o.mode);
    if (o.mode == VerifyMode::random)
        out << " samples=" << o.samples;
    out << " relations-per-op=" << o.relations_per_op << " seed=" << o.seed << '\n';
    out << "maltsev operations: " << report.operations << '\n';
    out << "binary relations checked: " << report.relations_checked << '\n';
    for (std::size_t c = 0; c < kClaimCount; ++c) {
        const Claim claim = static_cast<Claim>(c);
        const ClaimTally& t = report.tallies[c];
        out << claim_label(claim) << ' ' << claim_description(claim) << " checks=" << t.checks
            << " violations=" << t.violations << ' ' << (t.violations == 0 ? "PASS" : "FAIL") << '\n';
    }
    if (!report.sample_violations.empty()) {
        out << "violations:\n";
        for (const auto& v : report.sample_violations)
            out << "  " << v << '\n';
    }
    out << "result: " << (report.passed() ? "PASS" : "FAIL") << '\n';
}

void print_report_tsv(const VerifyReport& report, std::ostream& out) {
    const VerifyOptions& o = report.options;
    out << "field\tvalue\n";
    out << "n\t" << o.n << '\n';
    out << "mode\t" << mode_name(o.mode) << '\n';
    out << "samples\t" << (o.mode == VerifyMode::random ? o.samples : 0) << '\n';
    out << "relations_per_op\t" << o.relations_per_op << '\n';
    out << "seed\t" << o.seed << '\n';
    out << "operations\t" << report.operations << '\n';
    out << "relations_checked\t" << report.relations_checked << '\n';
    for (std::size_t c = 0; c < kClaimCount; ++c) {
        const char* label = claim_label(static_cast<Claim>(c));
        out << label << "_checks\t" << report.tallies[c].checks << '\n';
        out << label << "_violations\t" << report.tallies[c].violations << '\n';
    }
    out << "result\t" << (report.passed() ? "PASS" : "FAIL") << '\n';
}

}  // namespace maltmaj
