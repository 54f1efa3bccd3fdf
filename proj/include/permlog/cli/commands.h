#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "permlog/cli/json_writer.h"
#include "permlog/linalg.h"

namespace permlog::cli {

inline constexpr int kSchemaVersion = 1;

enum class OutputFormat { json, csv, pretty };

OutputFormat parse_format(std::string_view text);

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

struct Verification {
    std::string name;
    bool passed = false;
    double deviation = 0.0;
    double tolerance = 0.0;
};

/// `from:to:steps` with `steps` evenly spaced points including both ends.
struct EpsilonSweep {
    double from = 0.0;
    double to = 0.0;
    std::size_t steps = 2;

    static EpsilonSweep parse(std::string_view text);
    std::vector<double> points() const;
};

struct CogwheelOptions {
    std::size_t n = 0;
    double t = 1.0;
    std::optional<std::vector<double>> phases;
};

struct SpinOptions {
    int n_spins = 0;
    std::string word;
    double t = 1.0;
};

struct BchOptions {
    int n_spins = 0;
    std::string word;
    double t = 1.0;
    std::optional<double> epsilon;
    std::optional<EpsilonSweep> sweep;
};

struct CommandReport {
    std::string command;
    Json inputs = Json::object();
    Json results = Json::object();
    std::vector<Verification> verifications;
    std::vector<std::string> warnings;
    std::vector<std::string> csv_header;
    std::vector<std::vector<double>> csv_rows;
    std::string pretty;

    bool passed() const;
    std::vector<std::string> failures() const;

    /// Top-level fields: schema_version, command, inputs, results,
    /// verifications, failures, warnings.
    Json to_json() const;
    std::string render(OutputFormat format) const;
};

/// Each runner throws std::invalid_argument (or a subclass) on bad input;
/// verification failures are reported, not thrown.
CommandReport run_cogwheel(const CogwheelOptions& opts, const ToleranceConfig& tol);
CommandReport run_spin(const SpinOptions& opts, const ToleranceConfig& tol);
CommandReport run_bch(const BchOptions& opts, const ToleranceConfig& tol);

/// Parses a comma-separated list of reals ("0,0.5,1").
std::vector<double> parse_real_list(std::string_view text);

}  // namespace permlog::cli
