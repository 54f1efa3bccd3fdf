#include "permlog/cli/commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "permlog/bch.h"
#include "permlog/cogwheel.h"
#include "permlog/dynamics.h"
#include "permlog/spin.h"

namespace permlog::cli {

namespace {

constexpr std::size_t kMaxCogwheel = 4096;

std::string format_real(double value, int digits = 17) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value == 0.0 ? 0.0 : value);
    return buf;
}

double parse_real(std::string_view text, const char* what) {
    std::string copy(text);
    char* end = nullptr;
    const double value = std::strtod(copy.c_str(), &end);
    if (copy.empty() || end != copy.c_str() + copy.size() || !std::isfinite(value)) {
        throw std::invalid_argument(std::string("invalid ") + what + ": '" + copy + "'");
    }
    return value;
}

void require_positive_t(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("--t must be positive");
    }
}

Verification check(std::string name, double deviation, double tol) {
    return {std::move(name), deviation <= tol, deviation, tol};
}

Json verification_json(const Verification& v) {
    Json out;
    out["name"] = v.name;
    out["passed"] = v.passed;
    out["deviation"] = v.deviation;
    out["tolerance"] = v.tolerance;
    return out;
}

std::string verification_lines(const std::vector<Verification>& vs) {
    std::ostringstream out;
    for (const auto& v : vs) {
        out << "  [" << (v.passed ? "ok" : "FAIL") << "] " << v.name << ": deviation " << format_real(v.deviation, 3)
            << " (tol " << format_real(v.tolerance, 3) << ")\n";
    }
    return out.str();
}

ExchangeWord parse_checked_word(std::string_view text, int n_spins, std::vector<std::string>& warnings) {
    if (n_spins < 2 || n_spins > kMaxSpins) {
        throw std::invalid_argument("--n must be in 2.." + std::to_string(kMaxSpins) + ", got " +
                                    std::to_string(n_spins));
    }
    ExchangeWord word = parse_word(text, n_spins);
    const auto untouched = word.untouched_spins();
    if (!untouched.empty()) {
        std::string msg = "spins never exchanged by the word:";
        for (int k : untouched) {
            msg += ' ' + std::to_string(k);
        }
        warnings.push_back(msg);
    }
    return word;
}

Json word_json(const ExchangeWord& word) {
    Json factors = Json::array();
    for (const auto& [i, j] : word.factors) {
        factors.push_back(Json::array({i, j}));
    }
    return factors;
}

}  // namespace

OutputFormat parse_format(std::string_view text) {
    if (text == "json") return OutputFormat::json;
    if (text == "csv") return OutputFormat::csv;
    if (text == "pretty") return OutputFormat::pretty;
    throw std::invalid_argument("unknown format '" + std::string(text) + "' (expected json, csv or pretty)");
}

EpsilonSweep EpsilonSweep::parse(std::string_view text) {
    const auto first = text.find(':');
    const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
        throw std::invalid_argument("epsilon sweep must look like from:to:steps, got '" + std::string(text) + "'");
    }
    EpsilonSweep sweep;
    sweep.from = parse_real(text.substr(0, first), "sweep start");
    sweep.to = parse_real(text.substr(first + 1, second - first - 1), "sweep end");
    const double steps = parse_real(text.substr(second + 1), "sweep step count");
    if (steps < 2 || steps > 100000 || steps != std::floor(steps)) {
        throw std::invalid_argument("sweep step count must be an integer in 2..100000");
    }
    sweep.steps = static_cast<std::size_t>(steps);
    return sweep;
}

std::vector<double> EpsilonSweep::points() const {
    std::vector<double> out(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        out[k] = from + (to - from) * static_cast<double>(k) / static_cast<double>(steps - 1);
    }
    return out;
}

std::vector<double> parse_real_list(std::string_view text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        out.push_back(parse_real(piece, "number"));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

bool CommandReport::passed() const {
    return std::all_of(verifications.begin(), verifications.end(), [](const Verification& v) { return v.passed; });
}

std::vector<std::string> CommandReport::failures() const {
    std::vector<std::string> out;
    for (const auto& v : verifications) {
        if (!v.passed) out.push_back(v.name);
    }
    return out;
}

Json CommandReport::to_json() const {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = command;
    doc["inputs"] = inputs;
    doc["results"] = results;
    Json vs = Json::array();
    for (const auto& v : verifications) {
        vs.push_back(verification_json(v));
    }
    doc["verifications"] = std::move(vs);
    doc["failures"] = failures();
    doc["warnings"] = warnings;
    return doc;
}

std::string CommandReport::render(OutputFormat format) const {
    switch (format) {
        case OutputFormat::json:
            return dump_fixed(to_json());
        case OutputFormat::csv: {
            std::string out;
            for (std::size_t c = 0; c < csv_header.size(); ++c) {
                out += (c ? "," : "") + csv_header[c];
            }
            out += '\n';
            for (const auto& row : csv_rows) {
                for (std::size_t c = 0; c < row.size(); ++c) {
                    out += (c ? "," : "") + format_real(row[c]);
                }
                out += '\n';
            }
            return out;
        }
        case OutputFormat::pretty:
            return pretty + "verifications:\n" + verification_lines(verifications);
    }
    return {};
}

CommandReport run_cogwheel(const CogwheelOptions& opts, const ToleranceConfig& tol) {
    if (opts.n < 1 || opts.n > kMaxCogwheel) {
        throw std::invalid_argument("--n must be in 1.." + std::to_string(kMaxCogwheel));
    }
    require_positive_t(opts.t);
    const std::size_t n = opts.n;
    const PhaseVector phases = opts.phases ? PhaseVector{*opts.phases} : PhaseVector::zeros(n);
    if (phases.phases.size() != n) {
        throw std::invalid_argument("--phases needs exactly " + std::to_string(n) + " values");
    }

    const Matrix u = build_standard_form(n, phases);
    const Matrix u0 = build_standard_form(n);
    const CogwheelSpectrum energies = cogwheel_energies(n, opts.t, phases);
    const Diagonalizer diag = diagonalizer(n);
    const Matrix h = cogwheel_hamiltonian(n, opts.t);
    const std::vector<Complex> coeffs = polynomial_coefficients(n, opts.t);

    CommandReport report;
    report.command = "cogwheel";
    report.inputs["n"] = n;
    report.inputs["t"] = opts.t;
    report.inputs["phases"] = phases.phases;

    report.results["standard_form"] = to_json(u);
    report.results["energies"] = energies.energies;
    report.results["diagonalizer"] = to_json(diag.d);
    report.results["hamiltonian"] = to_json(h);
    report.results["polynomial_coefficients"] = to_json(coeffs);

    const Matrix expected_power = Matrix::identity(n) * std::polar(1.0, phases.total());
    report.verifications.push_back(
        check("power_identity", max_abs_diff(power(u, static_cast<unsigned>(n)), expected_power), tol.eq_tol));
    report.verifications.push_back(check(
        "diagonalizer_unitary", max_abs_diff(diag.d * dagger(diag.d), Matrix::identity(n)), tol.unitarity_tol));

    const CogwheelSpectrum zero_phase = cogwheel_energies(n, opts.t);
    std::vector<Complex> eigenvalues(n);
    for (std::size_t k = 0; k < n; ++k) {
        eigenvalues[k] = std::polar(1.0, -zero_phase.energies[k] * opts.t);
    }
    report.verifications.push_back(check("diagonalizes_standard_form",
                                         max_abs_diff(dagger(diag.d) * u0 * diag.d, Matrix::diagonal(eigenvalues)),
                                         tol.eq_tol));
    report.verifications.push_back(check("hamiltonian_self_adjoint", max_abs_diff(h, dagger(h)), tol.eq_tol));

    double closed_form = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            closed_form = std::max(closed_form, std::abs(h(r, c) - cogwheel_hamiltonian_entry(n, opts.t, r, c)));
        }
    }
    report.verifications.push_back(check("hamiltonian_closed_form", closed_form, tol.eq_tol));
    report.verifications.push_back(check("logarithm_round_trip",
                                         max_abs_diff(expm(h * Complex(0.0, -opts.t)), u0), tol.eq_tol));

    Matrix poly(n);
    Matrix step = Matrix::identity(n);
    for (Complex hk : coeffs) {
        poly += step * hk;
        step = step * u0;
    }
    report.verifications.push_back(check("polynomial_form", max_abs_diff(poly, h), tol.eq_tol));

    report.csv_header = {"n", "energy"};
    for (std::size_t k = 0; k < n; ++k) {
        report.csv_rows.push_back({static_cast<double>(k), energies.energies[k]});
    }

    std::ostringstream pretty;
    pretty << "cogwheel N=" << n << " T=" << format_real(opts.t, 6) << "\n";
    pretty << "energies:";
    for (double e : energies.energies) pretty << ' ' << format_real(e, 10);
    pretty << "\nstandard form U:\n" << to_string(u, 6) << "\nhamiltonian H:\n" << to_string(h, 10) << "\n";
    pretty << "polynomial coefficients h_k (H = sum h_k U^k):\n";
    for (std::size_t k = 0; k < n; ++k) {
        pretty << "  h_" << k << " = " << format_real(coeffs[k].real(), 10) << " + "
               << format_real(coeffs[k].imag(), 10) << "i\n";
    }
    report.pretty = pretty.str();
    return report;
}

CommandReport run_spin(const SpinOptions& opts, const ToleranceConfig& tol) {
    require_positive_t(opts.t);
    CommandReport report;
    report.command = "spin";
    const ExchangeWord word = parse_checked_word(opts.word, opts.n_spins, report.warnings);

    const Permutation perm = evolution_permutation(word);
    const OrbitDecomposition orbits = orbit_decomposition(perm);
    const BlockHamiltonianReport blocks = hamiltonian_from_permutation(perm, opts.t);
    const UniformPolynomial poly = uniform_polynomial_form(perm, opts.t);
    const SpectrumReport spec = spectrum(perm, opts.t);
    const Matrix u = perm.to_matrix();
    const Matrix& h = blocks.h;

    report.inputs["n"] = opts.n_spins;
    report.inputs["word"] = word.to_string();
    report.inputs["t"] = opts.t;

    report.results["factors"] = word_json(word);
    Json orbit_list = Json::array();
    for (const auto& cycle : orbits.cycles) {
        Json entry;
        entry["length"] = cycle.size();
        Json members = Json::array();
        Json labels = Json::array();
        for (std::size_t s : cycle) {
            const SpinConfiguration config{opts.n_spins, static_cast<std::uint32_t>(s)};
            members.push_back(config.to_string());
            if (opts.n_spins == 4) labels.push_back(four_spin_label(config));
        }
        entry["members"] = std::move(members);
        if (opts.n_spins == 4) entry["labels"] = std::move(labels);
        orbit_list.push_back(std::move(entry));
    }
    report.results["orbits"] = std::move(orbit_list);
    report.results["orbit_lengths"] = orbits.lengths;
    report.results["hamiltonian"] = to_json(h);
    report.results["polynomial"]["period"] = poly.period;
    report.results["polynomial"]["coefficients"] = to_json(poly.coefficients);
    Json levels = Json::array();
    for (const auto& level : spec.levels) {
        Json entry;
        entry["energy"] = level.energy;
        entry["multiplicity"] = level.multiplicity;
        entry["cycles"] = level.cycles;
        levels.push_back(std::move(entry));
    }
    report.results["spectrum"] = std::move(levels);

    report.verifications.push_back(
        check("round_trip", max_abs_diff(expm(h * Complex(0.0, -opts.t)), u), tol.eq_tol));
    report.verifications.push_back(check("self_adjoint", max_abs_diff(h, dagger(h)), tol.eq_tol));
    report.verifications.push_back(check(
        "polynomial_matches_blocks", max_abs_diff(polynomial_in_permutation(perm, poly.coefficients), h), tol.eq_tol));
    report.verifications.push_back(check("period", perm.pow(poly.period).is_identity() ? 0.0 : 1.0, tol.eq_tol));
    report.verifications.push_back(
        check("commutes_with_number_up", max_abs(commutator(h, number_up(opts.n_spins).matrix())), tol.eq_tol));
    report.verifications.push_back(
        check("commutes_with_number_down", max_abs(commutator(h, number_down(opts.n_spins).matrix())), tol.eq_tol));
    report.verifications.push_back(
        check("commutes_with_spinflip", max_abs(commutator(h, spinflip(opts.n_spins).matrix())), tol.eq_tol));
    report.verifications.push_back(check(
        "spectrum_multiplicity", static_cast<double>(spec.total_multiplicity() == perm.size() ? 0 : 1), tol.eq_tol));

    report.csv_header = {"energy", "multiplicity"};
    for (const auto& level : spec.levels) {
        report.csv_rows.push_back({level.energy, static_cast<double>(level.multiplicity)});
    }

    std::ostringstream pretty;
    pretty << "spin chain N=" << opts.n_spins << " word \"" << word.to_string() << "\" T=" << format_real(opts.t, 6)
           << "\n";
    for (const auto& w : report.warnings) pretty << "warning: " << w << "\n";
    pretty << "orbits (" << orbits.cycles.size() << "):\n";
    for (const auto& cycle : orbits.cycles) {
        pretty << "  length " << cycle.size() << ":";
        for (std::size_t s : cycle) {
            const SpinConfiguration config{opts.n_spins, static_cast<std::uint32_t>(s)};
            pretty << ' ' << config.to_string();
            if (opts.n_spins == 4) pretty << " |" << four_spin_label(config) << ">";
        }
        pretty << "\n";
    }
    pretty << "uniform polynomial form, period L=" << poly.period << ":\n";
    for (std::size_t k = 0; k < poly.coefficients.size(); ++k) {
        pretty << "  h_" << k << " = " << format_real(poly.coefficients[k].real(), 10) << " + "
               << format_real(poly.coefficients[k].imag(), 10) << "i\n";
    }
    pretty << "spectrum:\n";
    for (const auto& level : spec.levels) {
        pretty << "  E = " << format_real(level.energy, 10) << "  x" << level.multiplicity << "\n";
    }
    report.pretty = pretty.str();
    return report;
}

CommandReport run_bch(const BchOptions& opts, const ToleranceConfig& tol) {
    require_positive_t(opts.t);
    CommandReport report;
    report.command = "bch";
    const ExchangeWord word = parse_checked_word(opts.word, opts.n_spins, report.warnings);

    report.inputs["n"] = opts.n_spins;
    report.inputs["word"] = word.to_string();
    report.inputs["t"] = opts.t;
    report.inputs["epsilon"] = opts.epsilon ? Json(*opts.epsilon) : Json(nullptr);
    if (opts.sweep) {
        report.inputs["epsilon_sweep"] = {{"from", opts.sweep->from}, {"to", opts.sweep->to}, {"steps", opts.sweep->steps}};
    } else {
        report.inputs["epsilon_sweep"] = nullptr;
    }

    std::ostringstream pretty;
    pretty << "BCH chain for \"" << word.to_string() << "\" on " << opts.n_spins << " spins\n";
    for (const auto& w : report.warnings) pretty << "warning: " << w << "\n";

    try {
        const BchChainResult chain = bch_chain(word, opts.t);
        Json forms = Json::array();
        for (const auto& [label, m] : chain.forms) {
            forms.push_back({{"label", label}, {"deviation", max_abs_diff(m, chain.baseline)}});
        }
        report.results["chain"] = {{"forms", std::move(forms)}, {"max_deviation", chain.max_deviation}};
        report.verifications.push_back(check("bch_chain", chain.max_deviation, tol.eq_tol));
        if (chain.max_deviation <= tol.eq_tol) {
            pretty << "all " << chain.forms.size() << " forms agree, max deviation "
                   << format_real(chain.max_deviation, 3) << " < " << format_real(tol.eq_tol, 3) << "\n";
        } else {
            pretty << "forms disagree, max deviation " << format_real(chain.max_deviation, 3) << "\n";
        }

        Json variants = Json::array();
        for (CouplingFamily family : {CouplingFamily::plus_half, CouplingFamily::plus_three_half}) {
            const char* family_name = family == CouplingFamily::plus_half ? "plus_half" : "plus_three_half";
            for (int k = -2; k <= 2; ++k) {
                const CouplingVariantResult variant = coupling_variant_report(word, k, family, tol.eq_tol);
                double worst = 0.0;
                Json form_list = Json::array();
                for (const auto& f : variant.forms) {
                    worst = std::max(worst, f.deviation);
                    form_list.push_back({{"label", f.label}, {"sign", f.sign}, {"deviation", f.deviation}});
                }
                variants.push_back({{"family", family_name},
                                    {"k", k},
                                    {"coupling", coupling_angle(k, family)},
                                    {"passed", variant.passed},
                                    {"forms", std::move(form_list)}});
                report.verifications.push_back(
                    check(std::string("coupling_") + family_name + "_k" + std::to_string(k), worst, tol.eq_tol));
            }
        }
        report.results["coupling_variants"] = std::move(variants);
    } catch (const PreconditionViolation& e) {
        report.results["chain"] = {{"error", e.what()}};
        report.verifications.push_back({"bch_chain_precondition", false, 1.0, 0.0});
        pretty << "BCH chain not applicable: " << e.what() << "\n";
    }

    // Generic series on the two leftmost factors, for contrast.
    if (word.factors.size() >= 2) {
        const auto& [a1, b1] = word.factors[0];
        const auto& [a2, b2] = word.factors[1];
        const Complex coupling(0.0, -std::numbers::pi / 2);
        const Matrix x = exchange_permutation(word.n_spins, a1, b1).matrix() * coupling;
        const Matrix y = exchange_permutation(word.n_spins, a2, b2).matrix() * coupling;
        const Matrix z = bch_series_truncated(x, y, 4);
        report.results["generic_series_order4_deviation"] = max_abs_diff(expm(z), expm(x) * expm(y));
    }

    report.csv_header = {"epsilon", "leakage"};
    const double exact_leakage = superposition_leakage(perturb_coupling(word, {}), tol.unitarity_tol);
    report.verifications.push_back(check("exact_coupling_leakage", exact_leakage, tol.unitarity_tol));

    if (opts.epsilon) {
        const double leakage = superposition_leakage(perturb_coupling(word, {*opts.epsilon, 0, std::nullopt}));
        report.results["perturbation"] = {{"epsilon", *opts.epsilon}, {"leakage", leakage}};
        report.csv_rows.push_back({*opts.epsilon, leakage});
        pretty << "epsilon " << format_real(*opts.epsilon, 6) << ": leakage " << format_real(leakage, 6) << "\n";
    }
    if (opts.sweep) {
        Json points = Json::array();
        std::vector<double> leakages;
        for (double eps : opts.sweep->points()) {
            const double leakage = superposition_leakage(perturb_coupling(word, {eps, 0, std::nullopt}));
            leakages.push_back(leakage);
            points.push_back({{"epsilon", eps}, {"leakage", leakage}});
            report.csv_rows.push_back({eps, leakage});
            pretty << "  eps " << format_real(eps, 6) << "  leakage " << format_real(leakage, 10) << "\n";
        }
        report.results["sweep"] = {{"points", std::move(points)},
                                   {"nondecreasing", std::is_sorted(leakages.begin(), leakages.end())}};
    }

    report.pretty = pretty.str();
    return report;
}

}  // namespace permlog::cli
