// permlog: exact logarithms of permutation evolution operators.
//
//   permlog cogwheel --n 4 --t 1
//   permlog spin --n 4 --word "P23 P12 P34" --t 1 --format json
//   permlog bch --n 4 --word "P23 P12 P34" --epsilon-sweep 0:0.05:6
//
// Exit codes: 0 all verifications passed, 1 a verification failed, 2 usage
// error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "permlog/cli/commands.h"

namespace {

using namespace permlog;
using namespace permlog::cli;

struct CommonFlags {
    std::string format = "pretty";
    std::optional<std::string> output;
    std::optional<double> tol;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--format", flags.format, "Output format: json, csv or pretty")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    cmd->add_option("--output", flags.output, "Write the report to this path instead of stdout");
    cmd->add_option("--tol", flags.tol, "Entrywise equality tolerance (overrides PERMLOG_TOL)");
}

int emit(const CommandReport& report, const CommonFlags& flags) {
    const std::string text = report.render(parse_format(flags.format));
    if (flags.output) {
        std::ofstream out(*flags.output, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open " << *flags.output << " for writing\n";
            return kExitUsage;
        }
        out << text;
    } else {
        std::cout << text;
    }
    for (const auto& w : report.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    if (!report.passed()) {
        for (const auto& name : report.failures()) {
            std::cerr << "FAILED " << name << "\n";
        }
        return kExitVerificationFailed;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Hamiltonians for permutation evolution operators"};
    app.require_subcommand(1);

    CommonFlags flags;

    CogwheelOptions cog;
    std::optional<std::string> phases_text;
    auto* cog_cmd = app.add_subcommand("cogwheel", "Standard-form permutation matrix and its logarithm");
    cog_cmd->add_option("--n", cog.n, "Number of states N")->required();
    cog_cmd->add_option("--t", cog.t, "Time step T")->capture_default_str();
    cog_cmd->add_option("--phases", phases_text, "Comma-separated phases phi_0..phi_{N-1} (radians)");
    add_common(cog_cmd, flags);

    SpinOptions spin;
    auto* spin_cmd = app.add_subcommand("spin", "Exchange-word dynamics on N Ising spins");
    spin_cmd->add_option("--n", spin.n_spins, "Number of spins (2..12)")->required();
    spin_cmd->add_option("--word", spin.word, "Exchange word, e.g. \"P23 P12 P34\"")->required();
    spin_cmd->add_option("--t", spin.t, "Time step T")->capture_default_str();
    add_common(spin_cmd, flags);

    BchOptions bch;
    std::optional<std::string> sweep_text;
    auto* bch_cmd = app.add_subcommand("bch", "Terminating BCH forms and coupling perturbations");
    bch_cmd->add_option("--n", bch.n_spins, "Number of spins (2..12)")->required();
    bch_cmd->add_option("--word", bch.word, "Exchange word")->required();
    bch_cmd->add_option("--t", bch.t, "Time step T")->capture_default_str();
    bch_cmd->add_option("--epsilon", bch.epsilon, "Coupling offset from pi/2");
    bch_cmd->add_option("--epsilon-sweep", sweep_text, "Sweep from:to:steps");
    add_common(bch_cmd, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        ToleranceConfig tol = ToleranceConfig::from_env();
        if (flags.tol) {
            tol.eq_tol = *flags.tol;
            tol.validate();
        }
        if (cog_cmd->parsed()) {
            if (phases_text) cog.phases = parse_real_list(*phases_text);
            return emit(run_cogwheel(cog, tol), flags);
        }
        if (spin_cmd->parsed()) {
            return emit(run_spin(spin, tol), flags);
        }
        if (sweep_text) bch.sweep = EpsilonSweep::parse(*sweep_text);
        return emit(run_bch(bch, tol), flags);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailed;
    }
}
