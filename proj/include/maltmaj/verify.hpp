#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "maltmaj/algebra.hpp"

namespace maltmaj {

enum class VerifyMode { exhaustive, random };

struct VerifyOptions {
    std::size_t n = 2;
    VerifyMode mode = VerifyMode::exhaustive;
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    // Closure-generated binary relations per operation where relations are
    // sampled rather than enumerated.
    std::size_t relations_per_op = 100;
    unsigned workers = 1;
    // Test-only: replaces the derivative construction so the harness can be
    // shown to fail.
    std::function<TernaryOperation(const TernaryOperation&)> derivative_override;
};

// Checked claims, in report order.
enum class Claim : std::size_t {
    conservativity_witness,   // L1
    conservative_preserves,   // L2
    derivative_majority,      // L3
    derivative_preserves,     // THM
};
inline constexpr std::size_t kClaimCount = 4;

struct ClaimTally {
    std::uint64_t checks = 0;
    std::uint64_t violations = 0;
};

struct VerifyReport {
    VerifyOptions options;
    std::array<ClaimTally, kClaimCount> tallies{};
    std::uint64_t operations = 0;          // Maltsev operations fed to L3 and THM
    std::uint64_t relations_checked = 0;   // op-preserved binary relations tested in THM
    std::vector<std::string> sample_violations;  // first few, in work-unit order
    double wall_clock_ms = 0;              // kept out of the printed report

    const ClaimTally& tally(Claim c) const { return tallies[static_cast<std::size_t>(c)]; }
    std::uint64_t total_violations() const;
    bool passed() const { return total_violations() == 0; }
};

// Throws UsageError for out-of-range options: exhaustive needs n <= 3,
// random needs 1 <= n <= 8 and samples >= 1.
VerifyReport run_verify(const VerifyOptions& options);

// Byte-stable for fixed options regardless of worker count.
void print_report(const VerifyReport& report, std::ostream& out);
void print_report_tsv(const VerifyReport& report, std::ostream& out);

const char* claim_label(Claim c);

}  // namespace maltmaj
