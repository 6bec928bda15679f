#pragma once

#include <iosfwd>
#include <string>

#include "maltmaj/verify.hpp"

// Command implementations behind the CLI. Each returns the process exit code
// and writes results to out, diagnostics to err.
namespace maltmaj::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNegative = 3;  // UNSAT, not found, check failed

enum class SolverChoice { oracle, majority, automatic };

int cmd_analyze(const std::string& language_path, std::ostream& out, std::ostream& err);
int cmd_derive(const std::string& op_path, std::ostream& out, std::ostream& err);
int cmd_check(const std::string& op_path, const std::string& language_path, std::ostream& out, std::ostream& err);
int cmd_solve(const std::string& language_path, const std::string& instance_path, SolverChoice solver,
              std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& options, bool tsv, std::ostream& out, std::ostream& err);
int cmd_boundary_demo(std::ostream& out, std::ostream& err);

}  // namespace maltmaj::cli
