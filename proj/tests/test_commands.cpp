#include "doctest.h"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "maltmaj/commands.hpp"
#include "maltmaj/text_format.hpp"

using namespace maltmaj;
using namespace maltmaj::cli;

namespace {

namespace fs = std::filesystem;

class Scratch {
public:
    Scratch() : dir_(fs::temp_directory_path() / ("maltmaj_cmd_" + std::to_string(::getpid()))) {
        fs::create_directories(dir_);
    }
    ~Scratch() { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) const {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

private:
    fs::path dir_;
};

struct Run {
    int code;
    std::string out;
    std::string err;
};

template <typename F>
Run run(F f) {
    std::ostringstream out, err;
    const int code = f(out, err);
    return {code, out.str(), err.str()};
}

const char* kNeq2 = "domain 2\nconservative\nrel NEQ binary { (0,1) (1,0) }\n";
const char* kNeq3 = "domain 3\nconservative\nrel NEQ binary { (0,1) (0,2) (1,0) (1,2) (2,0) (2,1) }\n";

}  // namespace

TEST_CASE("analyze") {
    Scratch s;
    const auto neq = s.write("neq.lang", kNeq2);
    auto r = run([&](auto& o, auto& e) { return cmd_analyze(neq, o, e); });
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("maltsev polymorphism: found") != std::string::npos);
    CHECK(r.out.find("derivative is a majority polymorphism: yes") != std::string::npos);
    CHECK(r.out.find("op p'\n") != std::string::npos);

    const auto empty = s.write("empty.lang", "domain 3\nconservative\nrel E binary { }\n");
    CHECK(run([&](auto& o, auto& e) { return cmd_analyze(empty, o, e); }).code == kExitOk);

    const auto neq3 = s.write("neq3.lang", kNeq3);
    r = run([&](auto& o, auto& e) { return cmd_analyze(neq3, o, e); });
    CHECK(r.code == kExitNegative);
    CHECK(r.out.find("maltsev polymorphism: none") != std::string::npos);

    const auto bad = s.write("bad.lang", "domain 2\nrel R binary { (0,1 }\n");
    r = run([&](auto& o, auto& e) { return cmd_analyze(bad, o, e); });
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("bad.lang:2:") != std::string::npos);

    CHECK(run([&](auto& o, auto& e) { return cmd_analyze(s.write("x", "") + ".missing", o, e); }).code == kExitUsage);
}

TEST_CASE("derive") {
    Scratch s;
    const auto minority = s.write("min.op", serialize_operation({"minority", TernaryOperation::boolean_minority()}));
    auto r = run([&](auto& o, auto& e) { return cmd_derive(minority, o, e); });
    CHECK(r.code == kExitOk);
    CHECK(r.out == serialize_operation({"minority'", TernaryOperation::boolean_majority()}));

    const auto proj = s.write("proj.op", serialize_operation({"first", TernaryOperation::first_projection(Domain(3))}));
    r = run([&](auto& o, auto& e) { return cmd_derive(proj, o, e); });
    CHECK(parse_operation(r.out).op == TernaryOperation::third_projection(Domain(3)));
    CHECK(parse_operation(r.out).name == "first'");

    const auto incomplete = s.write("inc.op", "domain 2\nop p\n0 0 0 0\n");
    CHECK(run([&](auto& o, auto& e) { return cmd_derive(incomplete, o, e); }).code == kExitUsage);
}

TEST_CASE("check") {
    Scratch s;
    const auto neq = s.write("neq.lang", kNeq2);
    const auto minority = s.write("min.op", serialize_operation({"minority", TernaryOperation::boolean_minority()}));
    const auto majority = s.write("maj.op", serialize_operation({"majority", TernaryOperation::boolean_majority()}));

    auto r = run([&](auto& o, auto& e) { return cmd_check(minority, neq, o, e); });
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("relation NEQ: pass") != std::string::npos);
    CHECK(r.out.find("maltsev: yes") != std::string::npos);
    CHECK(run([&](auto& o, auto& e) { return cmd_check(majority, neq, o, e); }).code == kExitOk);

    std::vector<Element> table(27, 0);
    const auto constant = s.write("zero.op", serialize_operation({"zero", TernaryOperation(Domain(3), table)}));
    const auto cons3 = s.write("cons3.lang", "domain 3\nconservative\nrel R binary { (1,1) }\n");
    r = run([&](auto& o, auto& e) { return cmd_check(constant, cons3, o, e); });
    CHECK(r.code == kExitNegative);
    CHECK(r.out.find("implicit-unary-conservativity: fail p(1,1,1) = 0") != std::string::npos);
    CHECK(r.out.find("relation R: fail (1,1) (1,1) (1,1) -> (0,0)") != std::string::npos);

    CHECK(run([&](auto& o, auto& e) { return cmd_check(minority, cons3, o, e); }).code == kExitUsage);
}

TEST_CASE("solve") {
    Scratch s;
    const auto neq = s.write("neq.lang", kNeq2);
    const auto path = s.write("path.inst", "vars 3\nconstraint NEQ 0 1\nconstraint NEQ 1 2\n");
    const auto odd = s.write("odd.inst", "vars 3\nconstraint NEQ 0 1\nconstraint NEQ 1 2\nconstraint NEQ 2 0\n");
    const auto none = s.write("none.inst", "vars 0\n");

    for (auto solver : {SolverChoice::oracle, SolverChoice::majority, SolverChoice::automatic}) {
        auto r = run([&](auto& o, auto& e) { return cmd_solve(neq, path, solver, o, e); });
        CHECK(r.code == kExitOk);
        CHECK(r.out == "x0=0\nx1=1\nx2=0\n");
        r = run([&](auto& o, auto& e) { return cmd_solve(neq, odd, solver, o, e); });
        CHECK(r.code == kExitNegative);
        CHECK(r.out == "UNSAT\n");
        r = run([&](auto& o, auto& e) { return cmd_solve(neq, none, solver, o, e); });
        CHECK(r.code == kExitOk);
        CHECK(r.out.empty());
    }

    const auto neq3 = s.write("neq3.lang", kNeq3);
    const auto tri = s.write("tri.inst", "vars 3\nconstraint NEQ 0 1\nconstraint NEQ 1 2\nconstraint NEQ 2 0\n");
    CHECK(run([&](auto& o, auto& e) { return cmd_solve(neq3, tri, SolverChoice::majority, o, e); }).code == kExitUsage);
    auto r = run([&](auto& o, auto& e) { return cmd_solve(neq3, tri, SolverChoice::automatic, o, e); });
    CHECK(r.code == kExitOk);
    CHECK(r.out == "x0=0\nx1=1\nx2=2\n");
    CHECK(r.err.find("falling back") != std::string::npos);

    std::string big = "vars 40\n";
    const auto wide = s.write("wide.inst", big);
    CHECK(run([&](auto& o, auto& e) { return cmd_solve(neq, wide, SolverChoice::oracle, o, e); }).code == kExitUsage);
    CHECK(run([&](auto& o, auto& e) { return cmd_solve(neq, wide, SolverChoice::majority, o, e); }).code == kExitOk);

    const auto unknown = s.write("unknown.inst", "vars 2\nconstraint LT 0 1\n");
    CHECK(run([&](auto& o, auto& e) { return cmd_solve(neq, unknown, SolverChoice::oracle, o, e); }).code == kExitUsage);
}

TEST_CASE("verify and boundary-demo") {
    VerifyOptions o;
    o.n = 2;
    o.mode = VerifyMode::exhaustive;
    auto r = run([&](auto& out, auto& err) { return cmd_verify(o, false, out, err); });
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("result: PASS") != std::string::npos);
    r = run([&](auto& out, auto& err) { return cmd_verify(o, true, out, err); });
    CHECK(r.out.rfind("field\tvalue\n", 0) == 0);
    CHECK(r.out.find("THM_violations\t0\n") != std::string::npos);

    o.n = 4;
    CHECK(run([&](auto& out, auto& err) { return cmd_verify(o, false, out, err); }).code == kExitUsage);

    o.n = 3;
    o.mode = VerifyMode::random;
    o.samples = 20;
    o.relations_per_op = 5;
    o.derivative_override = [](const TernaryOperation& op) { return TernaryOperation::first_projection(op.domain()); };
    CHECK(run([&](auto& out, auto& err) { return cmd_verify(o, false, out, err); }).code == kExitNegative);

    CHECK(run([](auto& out, auto& err) { return cmd_boundary_demo(out, err); }).code == kExitOk);
}
