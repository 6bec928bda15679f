#include <iostream>
#include <map>
#include <thread>

#include "CLI11.hpp"
#include "maltmaj/commands.hpp"

using namespace maltmaj;

int main(int argc, char** argv) {
    CLI::App app{"Conservative Maltsev to majority polymorphism toolkit"};
    app.require_subcommand(1);

    std::string language_path, op_path, instance_path;

    auto* analyze = app.add_subcommand("analyze", "find a Maltsev polymorphism and check its derivative");
    analyze->add_option("language", language_path)->required();

    auto* derive = app.add_subcommand("derive", "print the derivative of an operation");
    derive->add_option("op", op_path)->required();

    auto* check = app.add_subcommand("check", "check an operation against a language");
    check->add_option("op", op_path)->required();
    check->add_option("language", language_path)->required();

    cli::SolverChoice solver = cli::SolverChoice::automatic;
    const std::map<std::string, cli::SolverChoice> solver_names{
        {"oracle", cli::SolverChoice::oracle},
        {"majority", cli::SolverChoice::majority},
        {"auto", cli::SolverChoice::automatic}};
    auto* solve = app.add_subcommand("solve", "solve a CSP instance");
    solve->add_option("language", language_path)->required();
    solve->add_option("instance", instance_path)->required();
    solve->add_option("--solver", solver, "oracle, majority or auto")
        ->transform(CLI::CheckedTransformer(solver_names, CLI::ignore_case));

    VerifyOptions verify_options;
    bool tsv = false;
    std::string format = "text";
    const std::map<std::string, VerifyMode> mode_names{{"exhaustive", VerifyMode::exhaustive},
                                                       {"random", VerifyMode::random}};
    auto* verify = app.add_subcommand("verify", "run the exhaustive or sampled property checks");
    verify->add_option("--n", verify_options.n, "domain size")->required();
    verify->add_option("--mode", verify_options.mode, "exhaustive or random")
        ->transform(CLI::CheckedTransformer(mode_names, CLI::ignore_case));
    verify->add_option("--samples", verify_options.samples, "sampled operations per check");
    verify->add_option("--seed", verify_options.seed);
    verify->add_option("--relations", verify_options.relations_per_op,
                       "closure-generated binary relations per operation");
    verify_options.workers = std::max(1U, std::thread::hardware_concurrency());
    verify->add_option("--workers", verify_options.workers, "worker threads");
    verify->add_option("--format", format)->check(CLI::IsMember({"text", "tsv"}));

    auto* boundary = app.add_subcommand("boundary-demo", "show the construction fails for a ternary relation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : cli::kExitUsage;
    }

    try {
        if (*analyze)
            return cli::cmd_analyze(language_path, std::cout, std::cerr);
        if (*derive)
            return cli::cmd_derive(op_path, std::cout, std::cerr);
        if (*check)
            return cli::cmd_check(op_path, language_path, std::cout, std::cerr);
        if (*solve)
            return cli::cmd_solve(language_path, instance_path, solver, std::cout, std::cerr);
        if (*verify) {
            tsv = format == "tsv";
            return cli::cmd_verify(verify_options, tsv, std::cout, std::cerr);
        }
        if (*boundary)
            return cli::cmd_boundary_demo(std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return cli::kExitUsage;
}
