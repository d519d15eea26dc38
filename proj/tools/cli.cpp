// cli.cpp — Subcommands, the worked-example replay and report rendering

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "qtf/qtf.hpp"

namespace qtf::cli {

namespace {

ojson to_ordered(const io::json& j) { return ojson(j); }

CMatrix load_matrix(const std::string& path) { return io::matrix_from_json(io::read_json_file(path)); }

void require_inputs(const RunConfig& config, std::size_t count, const char* usage)
{
    if (config.inputs.size() != count) throw Error(ErrorKind::kParse, std::string("usage: ") + usage);
}

ojson dbc_to_json(const DbcReport& r)
{
    return ojson{{"samples", r.samples},
                 {"symmetry_deviation", r.symmetry_deviation},
                 {"modular_commutation_deviation", r.modular_commutation_deviation},
                 {"stationarity_deviation", r.stationarity_deviation},
                 {"unit_deviation", r.unit_deviation},
                 {"tolerance", r.tolerance},
                 {"passed", r.passed}};
}

ojson diagnostics_to_json(const ChainDiagnostics& d)
{
    return ojson{{"max_row_sum", d.max_row_sum},
                 {"stationarity", d.stationarity},
                 {"detailed_balance", d.detailed_balance},
                 {"min_off_diagonal", d.min_off_diagonal}};
}

Outcome cmd_entropy(const RunConfig& config)
{
    require_inputs(config, 1, "qtf entropy <rho-file>");
    const DensityMatrix rho(load_matrix(config.inputs[0]));
    const double h = entropy(rho);
    const double hg = entropy_via_generator(rho);
    return {ojson{{"n", rho.dim()},
                  {"entropy", h},
                  {"entropy_via_generator", hg},
                  {"discrepancy", std::abs(h - hg)},
                  {"spectrum", to_ordered(io::real_vector_to_json(rho.eigenvalues()))}}};
}

Outcome cmd_equilibrium(const RunConfig& config)
{
    require_inputs(config, 1, "qtf equilibrium <hamiltonian-file>");
    return {to_ordered(io::equilibrium_to_json(equilibrium(load_matrix(config.inputs[0]))))};
}

Outcome cmd_generator(const RunConfig& config)
{
    std::optional<DbcGenerator> g;
    if (config.heat) {
        require_inputs(config, 0, "qtf generator --heat <n>");
        g = DbcGenerator::heat(*config.heat);
    } else {
        require_inputs(config, 1, "qtf generator <sigma-file> | --heat <n>");
        g = DbcGenerator::from_sigma(DensityMatrix(load_matrix(config.inputs[0])));
    }
    ojson report = to_ordered(io::generator_to_json(*g));
    report["weights"] = to_ordered(io::real_matrix_to_json(g->weights()));
    report["degenerate"] = g->degenerate();
    return {report};
}

Outcome cmd_evolve(const RunConfig& config)
{
    require_inputs(config, 2, "qtf evolve <generator-file> <state-file> --t <time> [--dual]");
    if (!config.t) throw Error(ErrorKind::kParse, "evolve requires --t");
    const DbcGenerator g = io::generator_from_json(io::read_json_file(config.inputs[0]));
    const CMatrix x = load_matrix(config.inputs[1]);
    if (config.dual) {
        const DensityMatrix out = g.evolve(*config.t, DensityMatrix(x));
        return {ojson{{"picture", "schrodinger"},
                      {"t", *config.t},
                      {"trace", out.matrix().trace().real()},
                      {"min_eigenvalue", out.min_eigenvalue()},
                      {"state", to_ordered(io::matrix_to_json(out.matrix()))}}};
    }
    return {ojson{{"picture", "heisenberg"},
                  {"t", *config.t},
                  {"state", to_ordered(io::matrix_to_json(g.evolve(*config.t, x)))}}};
}

Outcome cmd_classical(const RunConfig& config)
{
    require_inputs(config, 1, "qtf classical <sigma-file>");
    const DbcGenerator g = DbcGenerator::from_sigma(DensityMatrix(load_matrix(config.inputs[0])));
    const ClassicalChain chain = reduce(g);
    ojson report = to_ordered(io::chain_to_json(chain));
    report["diagnostics"] = diagnostics_to_json(diagnose(chain));
    return {report};
}

Outcome cmd_verify(const RunConfig& config)
{
    require_inputs(config, 1, "qtf verify <sigma-file> [--samples N] [--seed S]");
    const double tol = config.tolerance.value_or(1e-9);
    const DensityMatrix sigma(load_matrix(config.inputs[0]));
    const DbcGenerator g = DbcGenerator::from_sigma(sigma);

    const DbcReport dbc = check_dbc(g, config.samples, config.seed, tol);

    const ClassicalChain chain = reduce(g);
    const ChainDiagnostics diag = diagnose(chain);
    const double scale = std::max(1.0, chain.q.cwiseAbs().maxCoeff());
    const double classical_tol = config.tolerance.value_or(1e-10);
    const bool classical_ok = diag.max_row_sum <= std::min(classical_tol, 1e-12) * scale &&
                              diag.stationarity <= classical_tol * scale &&
                              diag.detailed_balance <= classical_tol * scale && diag.min_off_diagonal > 0.0;
    ojson classical = diagnostics_to_json(diag);
    classical["passed"] = classical_ok;

    const RateReport rate = verify_rate_infimum(sigma, config.samples, config.seed, tol);
    const ojson rate_json{{"entropy", rate.entropy},
                          {"infimum_estimate", rate.infimum_estimate},
                          {"min_sampled_value", rate.min_sampled_value},
                          {"samples", rate.samples},
                          {"violations", rate.violations},
                          {"tolerance", rate.tolerance},
                          {"passed", rate.passed}};

    const bool passed = dbc.passed && classical_ok && rate.passed;
    return {ojson{{"n", sigma.dim()},
                  {"seed", config.seed},
                  {"detailed_balance", dbc_to_json(dbc)},
                  {"classical", classical},
                  {"rate_infimum", rate_json},
                  {"passed", passed}},
            passed ? kExitOk : kExitVerification};
}

// ---------------------------------------------------------------------------
// Worked examples

struct Replay {
    std::optional<double> override_tol;
    ojson rows = ojson::array();
    bool passed = true;

    void check(const char* example, const std::string& quantity, double reference, double computed, double tol)
    {
        const double t = override_tol.value_or(tol);
        const double dev = std::abs(computed - reference);
        const bool ok = dev <= t;
        passed = passed && ok;
        rows.push_back(ojson{{"example", example},
                             {"quantity", quantity},
                             {"reference", reference},
                             {"computed", computed},
                             {"deviation", dev},
                             {"tolerance", t},
                             {"pass", ok}});
    }
};

std::string entry(const char* name, Eigen::Index i, Eigen::Index k)
{
    std::ostringstream os;
    os << name << '[' << i + 1 << ',' << k + 1 << ']';
    return os.str();
}

std::string entry(const char* name, Eigen::Index i)
{
    std::ostringstream os;
    os << name << '[' << i + 1 << ']';
    return os.str();
}

void replay_equilibrium(Replay& r)
{
    const char* ex = "equilibrium";
    CMatrix a = CMatrix::Zero(3, 3);
    a(0, 1) = a(1, 0) = 1.0;
    a(2, 2) = 2.0;
    const EquilibriumResult eq = equilibrium(a);
    r.check(ex, "kappa", 6.902, eq.kappa, 5e-4);
    const double density[3] = {0.186, 0.332, 0.482};
    for (Eigen::Index k = 0; k < 3; ++k) r.check(ex, entry("diag_density", k), density[k], eq.diagonal_density(k), 1e-3);
    const double rho[3][3] = {{0.259, 0.073, 0.0}, {0.073, 0.259, 0.0}, {0.0, 0.0, 0.482}};
    for (Eigen::Index i = 0; i < 3; ++i) {
        for (Eigen::Index k = 0; k < 3; ++k) {
            r.check(ex, entry("rho_A", i, k), rho[i][k], eq.rho.matrix()(i, k).real(), 1e-3);
        }
    }
    r.check(ex, "pressure", 0.902, eq.pressure, 2e-3);
    r.check(ex, "pressure - (kappa - 6)", 0.0, eq.pressure - (eq.kappa - 6.0), 1e-9);
}

void replay_chain(Replay& r, const char* ex, const CMatrix& sigma, const RVector& invariant, const RMatrix& q,
                  double tol)
{
    const DbcGenerator g = DbcGenerator::from_sigma(DensityMatrix(sigma));
    const ClassicalChain chain = reduce(g);
    for (Eigen::Index k = 0; k < invariant.size(); ++k) {
        r.check(ex, entry("sigma_eigenvalue", k), invariant(k), std::exp(-g.lambdas()(k)), 1e-12);
    }
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
        for (Eigen::Index k = 0; k < q.cols(); ++k) r.check(ex, entry("Q", i, k), q(i, k), chain.q(i, k), tol);
    }
    const RVector left = invariant.transpose() * chain.q;
    for (Eigen::Index k = 0; k < left.size(); ++k) r.check(ex, entry("(sigma Q)", k), 0.0, left(k), tol);
}

void replay_real_chain(Replay& r)
{
    const double s2 = std::sqrt(2.0);
    const double s3 = std::sqrt(3.0);
    const double s6 = std::sqrt(6.0);
    RMatrix q(3, 3);
    q << -s2 / s3 - 1.0 / s3, s2 / s3, 1.0 / s3,
         s3 / s2, -s3 / s2 - s3 / s6, s3 / s6,
         s3, s2, -s3 - s2;
    RVector p(3);
    p << 0.5, 1.0 / 3.0, 1.0 / 6.0;
    replay_chain(r, "rate matrix, diagonal sigma", p.cast<Complex>().asDiagonal(), p, 2.0 * q, 1e-12);
}

void replay_complex_chain(Replay& r)
{
    const double s3 = std::sqrt(3.0);
    const Complex i(0.0, 1.0);
    CMatrix sigma(3, 3);
    sigma << 0.25, 0.0, i / 8.0,
             0.0, 0.5, 0.0,
             -i / 8.0, 0.0, 0.25;
    RMatrix q(3, 3);
    q << -2.0 * (s3 + 2.0), 2.0 * s3, 4.0,
         2.0 / s3, -6.0 / s3, 4.0 / s3,
         1.0, s3, -(1.0 + s3);
    RVector p(3);
    p << 0.125, 0.375, 0.5;
    replay_chain(r, "rate matrix, complex sigma", sigma, p, q, 1e-10);
}

// ---------------------------------------------------------------------------
// Table rendering

std::string format_number(double x)
{
    std::ostringstream os;
    os << std::setprecision(6) << x;
    return os.str();
}

std::string scalar_text(const ojson& v)
{
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_number()) return format_number(v.get<double>());
    if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "-";
    return v.dump();
}

bool is_matrix(const ojson& v) { return v.is_object() && v.size() == 2 && v.contains("n") && v.contains("data"); }

bool is_number_array(const ojson& v)
{
    return v.is_array() && std::all_of(v.begin(), v.end(), [](const ojson& x) { return x.is_number(); });
}

bool is_row_array(const ojson& v)
{
    return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), is_number_array);
}

bool is_record_array(const ojson& v)
{
    return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const ojson& x) { return x.is_object(); });
}

void print_grid(const std::vector<std::vector<std::string>>& cells, int indent, bool header, std::ostream& os)
{
    std::vector<std::size_t> width;
    for (const auto& row : cells) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t k = 0; k < row.size(); ++k) width[k] = std::max(width[k], row[k].size());
    }
    for (std::size_t r = 0; r < cells.size(); ++r) {
        os << std::string(static_cast<std::size_t>(indent), ' ');
        for (std::size_t k = 0; k < cells[r].size(); ++k) {
            os << (k ? "  " : "") << std::setw(static_cast<int>(width[k])) << cells[r][k];
        }
        os << '\n';
        if (header && r == 0) {
            std::size_t total = 0;
            for (std::size_t w : width) total += w + 2;
            os << std::string(static_cast<std::size_t>(indent), ' ') << std::string(total - 2, '-') << '\n';
        }
    }
}

std::string complex_text(const ojson& pair)
{
    const double re = pair[0].get<double>();
    const double im = pair[1].get<double>();
    if (im == 0.0) return format_number(re);
    std::ostringstream os;
    os << format_number(re) << (im < 0 ? "-" : "+") << format_number(std::abs(im)) << 'i';
    return os.str();
}

void render(const ojson& v, int indent, std::ostream& os);

void render_value(const std::string& key, const ojson& v, std::size_t key_width, int indent, std::ostream& os)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (is_matrix(v)) {
        const auto n = v["n"].get<std::size_t>();
        std::vector<std::vector<std::string>> cells(n);
        for (std::size_t idx = 0; idx < v["data"].size(); ++idx) cells[idx / n].push_back(complex_text(v["data"][idx]));
        os << pad << key << ":\n";
        print_grid(cells, indent + 2, false, os);
    } else if (is_row_array(v)) {
        std::vector<std::vector<std::string>> cells;
        for (const ojson& row : v) {
            cells.emplace_back();
            for (const ojson& x : row) cells.back().push_back(scalar_text(x));
        }
        os << pad << key << ":\n";
        print_grid(cells, indent + 2, false, os);
    } else if (is_number_array(v)) {
        os << pad << std::left << std::setw(static_cast<int>(key_width)) << key << std::right << "  [";
        for (std::size_t k = 0; k < v.size(); ++k) os << (k ? ", " : "") << scalar_text(v[k]);
        os << "]\n";
    } else if (is_record_array(v)) {
        std::vector<std::vector<std::string>> cells(1);
        for (const auto& item : v.front().items()) cells[0].push_back(item.key());
        for (const ojson& rec : v) {
            cells.emplace_back();
            for (const std::string& col : cells[0]) cells.back().push_back(rec.contains(col) ? scalar_text(rec[col]) : "-");
        }
        os << pad << key << ":\n";
        print_grid(cells, indent + 2, true, os);
    } else if (v.is_object()) {
        os << pad << key << ":\n";
        render(v, indent + 2, os);
    } else {
        os << pad << std::left << std::setw(static_cast<int>(key_width)) << key << std::right << "  "
           << scalar_text(v) << '\n';
    }
}

void render(const ojson& v, int indent, std::ostream& os)
{
    if (!v.is_object()) {
        os << std::string(static_cast<std::size_t>(indent), ' ') << scalar_text(v) << '\n';
        return;
    }
    std::size_t key_width = 0;
    for (const auto& item : v.items()) key_width = std::max(key_width, item.key().size());
    for (const auto& item : v.items()) render_value(item.key(), item.value(), key_width, indent, os);
}

} // namespace

int exit_code(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::kParse:
        return kExitParse;
    case ErrorKind::kVerification:
    case ErrorKind::kNotConverged:
        return kExitVerification;
    default:
        return kExitValidation;
    }
}

Outcome replay_examples(std::optional<double> tolerance)
{
    Replay r{tolerance};
    replay_equilibrium(r);
    replay_real_chain(r);
    replay_complex_chain(r);
    return {ojson{{"checks", r.rows}, {"passed", r.passed}}, r.passed ? kExitOk : kExitVerification};
}

Outcome execute(const RunConfig& config)
{
    switch (config.command) {
    case Command::kEntropy:
        return cmd_entropy(config);
    case Command::kEquilibrium:
        return cmd_equilibrium(config);
    case Command::kGenerator:
        return cmd_generator(config);
    case Command::kEvolve:
        return cmd_evolve(config);
    case Command::kClassical:
        return cmd_classical(config);
    case Command::kVerify:
        return cmd_verify(config);
    case Command::kReplay:
        return replay_examples(config.tolerance);
    }
    throw Error(ErrorKind::kParse, "unknown command");
}

std::string render_table(const ojson& report)
{
    std::ostringstream os;
    render(report, 0, os);
    return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig config;
    CLI::App app{"Detailed-balance quantum Markov semigroups, Laplacian entropy and pressure", "qtf"};
    app.require_subcommand(1);
    app.fallthrough();

    double tolerance = 0.0;
    std::string out_path;
    app.add_flag("--json", config.json, "Emit JSON instead of a table");
    app.add_option("--seed", config.seed, "Seed for randomized checks (default 0)");
    auto* tol_opt = app.add_option("--tolerance", tolerance, "Override verification tolerances")
                        ->check(CLI::PositiveNumber);
    auto* out_opt = app.add_option("--out", out_path, "Write the JSON report to a file instead of stdout");

    auto* entropy = app.add_subcommand("entropy", "Entropy of a density matrix");
    entropy->add_option("rho-file", config.inputs, "Density matrix JSON");

    auto* equilibrium = app.add_subcommand("equilibrium", "Pressure and equilibrium density of a Hamiltonian");
    equilibrium->add_option("hamiltonian-file", config.inputs, "Hermitian matrix JSON");

    long heat = 0;
    auto* generator = app.add_subcommand("generator", "Detailed-balance generator of a faithful density");
    generator->add_option("sigma-file", config.inputs, "Faithful density JSON");
    auto* heat_opt = generator->add_option("--heat", heat, "Heat generator in dimension n instead");

    double t = 0.0;
    auto* evolve = app.add_subcommand("evolve", "Evolve a matrix under a stored generator");
    evolve->add_option("files", config.inputs, "Generator JSON, then state JSON")->expected(2);
    auto* t_opt = evolve->add_option("--t", t, "Evolution time");
    evolve->add_flag("--dual", config.dual, "Schrodinger picture (state must be a density)");

    auto* classical = app.add_subcommand("classical", "Classical rate matrix of a detailed-balance generator");
    classical->add_option("sigma-file", config.inputs, "Faithful density JSON");

    auto* verify = app.add_subcommand("verify", "Randomized structural checks for a faithful density");
    verify->add_option("sigma-file", config.inputs, "Faithful density JSON");
    verify->add_option("--samples", config.samples, "Random samples per check")->check(CLI::PositiveNumber);

    auto* replay = app.add_subcommand("replay", "Recompute the embedded worked examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParse;
    }

    if (*entropy) config.command = Command::kEntropy;
    if (*equilibrium) config.command = Command::kEquilibrium;
    if (*generator) config.command = Command::kGenerator;
    if (*evolve) config.command = Command::kEvolve;
    if (*classical) config.command = Command::kClassical;
    if (*verify) config.command = Command::kVerify;
    if (*replay) config.command = Command::kReplay;
    if (*tol_opt) config.tolerance = tolerance;
    if (*out_opt) config.out = out_path;
    if (*heat_opt) config.heat = heat;
    if (*t_opt) config.t = t;

    Outcome outcome;
    try {
        outcome = execute(config);
    } catch (const Error& e) {
        err << "qtf: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "qtf: " << e.what() << '\n';
        return kExitValidation;
    }

    // Files are always JSON so they can be fed back in (e.g. generator -> evolve).
    if (config.out) {
        std::ofstream file(*config.out);
        if (!file) {
            err << "qtf: ParseError: cannot write \"" << *config.out << "\"\n";
            return kExitParse;
        }
        file << outcome.report.dump(2) << '\n';
    } else {
        out << (config.json ? outcome.report.dump(2) + "\n" : render_table(outcome.report));
    }
    return outcome.code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv{"qtf"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace qtf::cli
