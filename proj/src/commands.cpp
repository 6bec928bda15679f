#include "maltmaj/commands.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "maltmaj/boundary.hpp"
#include "maltmaj/errors.hpp"
#include "maltmaj/search.hpp"
#include "maltmaj/solver.hpp"
#include "maltmaj/text_format.hpp"

namespace maltmaj::cli {

namespace {

// Carries the path so parse errors print as path:line:col.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

template <typename F>
auto parse_file(const std::string& path, F parse) {
    const std::string text = read_file(path);
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw InputError(path + ":" + e.what());
    } catch (const UsageError& e) {
        throw InputError(path + ": " + e.what());
    }
}

Language load_language(const std::string& path) {
    return parse_file(path, [](const std::string& t) { return parse_language(t); });
}

NamedOperation load_operation(const std::string& path) {
    return parse_file(path, [](const std::string& t) { return parse_operation(t); });
}

// Maps the shared error types onto exit codes.
template <typename F>
int guarded(std::ostream& err, F body) {
    try {
        return body();
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitUsage;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string witness_rows(const PreservationWitness& w) {
    return format_tuple(w.rows[0]) + " " + format_tuple(w.rows[1]) + " " + format_tuple(w.rows[2]) + " -> " +
           format_tuple(w.image);
}

void print_polymorphism_report(const TernaryOperation& op, const Language& lang, std::ostream& out) {
    const PolymorphismReport report = check_polymorphism(op, lang);
    for (const auto& [name, rel] : lang.relations()) {
        bool failed = false;
        for (const auto& v : report.violations)
            if (v.relation == name) {
                out << "relation " << name << ": fail " << witness_rows(v.witness) << '\n';
                failed = true;
            }
        if (!failed)
            out << "relation " << name << ": pass\n";
    }
    if (lang.conservative()) {
        if (auto w = conservativity_witness(op)) {
            out << kImplicitUnaryCheck << ": fail p(" << w->args.x << ',' << w->args.y << ',' << w->args.z
                << ") = " << w->image << " is not an argument; unary relation {";
            for (std::size_t i = 0; i < w->relation.members().size(); ++i)
                out << (i ? " " : "") << w->relation.members()[i];
            out << "} is not preserved\n";
        } else {
            out << kImplicitUnaryCheck << ": pass\n";
        }
    }
}

struct MajorityWitness {
    TernaryOperation maltsev;
    TernaryOperation majority;
};

std::optional<MajorityWitness> majority_from_language(const Language& lang) {
    SearchSpec spec{true, true, lang, SearchMode::first_solution};
    auto p = find_polymorphism(spec);
    if (!p)
        return std::nullopt;
    return MajorityWitness{*p, derivative(*p)};
}

void print_assignment(const Assignment& a, std::ostream& out) {
    for (std::size_t i = 0; i < a.size(); ++i)
        out << 'x' << i << '=' << a[i] << '\n';
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int cmd_analyze(const std::string& language_path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Language lang = load_language(language_path);
        out << "language: domain " << lang.domain().size() << ", " << lang.relations().size() << " relation(s), "
            << (lang.conservative() ? "conservative" : "not conservative") << '\n';
        SearchSpec spec{true, lang.conservative(), lang, SearchMode::first_solution};
        const auto p = find_polymorphism(spec);
        if (!p) {
            out << "maltsev polymorphism: none\n";
            return kExitNegative;
        }
        const TernaryOperation d = derivative(*p);
        out << "maltsev polymorphism: found\n";
        out << serialize_operation({"p", *p});
        out << "derivative:\n";
        out << serialize_operation({"p'", d});
        const bool majority = is_majority(d);
        const bool poly = is_polymorphism(d, lang);
        out << "derivative is a majority operation: " << yes_no(majority) << '\n';
        out << "derivative is a polymorphism: " << yes_no(poly) << '\n';
        if (!poly)
            print_polymorphism_report(d, lang, out);
        out << "derivative is a majority polymorphism: " << yes_no(majority && poly) << '\n';
        return kExitOk;
    });
}

int cmd_derive(const std::string& op_path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const NamedOperation named = load_operation(op_path);
        out << serialize_operation({named.name + "'", derivative(named.op)});
        return kExitOk;
    });
}

int cmd_check(const std::string& op_path, const std::string& language_path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const NamedOperation named = load_operation(op_path);
        const Language lang = load_language(language_path);
        if (named.op.domain() != lang.domain())
            throw UsageError("operation domain " + std::to_string(named.op.domain().size()) +
                             " does not match language domain " + std::to_string(lang.domain().size()));
        print_polymorphism_report(named.op, lang, out);
        const bool poly = is_polymorphism(named.op, lang);
        out << "conservative: " << yes_no(is_conservative(named.op)) << '\n';
        out << "maltsev: " << yes_no(is_maltsev(named.op)) << '\n';
        out << "majority: " << yes_no(is_majority(named.op)) << '\n';
        out << "polymorphism: " << yes_no(poly) << '\n';
        return poly ? kExitOk : kExitNegative;
    });
}

int cmd_solve(const std::string& language_path, const std::string& instance_path, SolverChoice solver,
              std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Language lang = load_language(language_path);
        const Instance inst =
            parse_file(instance_path, [&lang](const std::string& t) { return parse_instance(t, lang); });
        const auto start = std::chrono::steady_clock::now();

        std::optional<Assignment> result;
        const char* used = "oracle";
        if (solver == SolverChoice::oracle) {
            result = brute_force_solve(inst);
        } else {
            const auto witness = majority_from_language(lang);
            if (witness) {
                result = solve_majority(inst, witness->majority);
                used = "majority";
            } else if (solver == SolverChoice::majority) {
                throw UsageError("the language has no conservative Maltsev polymorphism, so no majority witness "
                                 "can be derived; use --solver=oracle");
            } else {
                err << "note: no conservative Maltsev polymorphism found; falling back to the oracle solver\n";
                result = brute_force_solve(inst);
            }
        }
        err << "solver: " << used << ", " << elapsed_ms(start) << " ms\n";
        if (!result) {
            out << "UNSAT\n";
            return kExitNegative;
        }
        print_assignment(*result, out);
        return kExitOk;
    });
}

int cmd_verify(const VerifyOptions& options, bool tsv, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const VerifyReport report = run_verify(options);
        if (tsv)
            print_report_tsv(report, out);
        else
            print_report(report, out);
        err << "wall clock: " << report.wall_clock_ms << " ms\n";
        return report.passed() ? kExitOk : kExitNegative;
    });
}

int cmd_boundary_demo(std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const BoundaryDemo demo = run_boundary_demo();
        print_boundary_demo(demo, out);
        return demo.reproduced() ? kExitOk : kExitNegative;
    });
}

}  // namespace maltmaj::cli
