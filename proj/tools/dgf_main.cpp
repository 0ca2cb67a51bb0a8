// dgf — deformed Glauber-Fock lattice simulator.
//
// Subcommands: simulate (launch a state, record amplitudes over a z grid),
// green (analytic Green-function column), wigner (phase-space grid),
// compare (analytic vs numeric propagator), cat (cat-state decompositions).
//
// Exit codes: 0 success, 1 usage error, 2 runtime failure,
// 3 leakage / comparison threshold breached.

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dgf/cats.hpp"
#include "dgf/input_descriptor.hpp"
#include "dgf/io.hpp"
#include "dgf/lattice.hpp"
#include "dgf/wigner.hpp"

namespace {

using namespace dgf;

constexpr int kExitThreshold = 3;

std::string resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    if (const char* dir = std::getenv("DGF_OUTPUT_DIR"); dir && *dir)
        return (std::filesystem::path(dir) / p).string();
    return path;
}

bool json_format(const std::string& path, const std::string& format) {
    if (format == "json") return true;
    if (format == "csv") return false;
    return std::filesystem::path(path).extension() == ".json";
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i)
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return grid;
}

Complex parse_complex_pair(const std::string& text, const std::string& flag) {
    double re = 0.0, im = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    auto [p1, e1] = std::from_chars(begin, end, re);
    if (e1 != std::errc{} || p1 == end || *p1 != ',')
        throw CLI::ValidationError(flag, "expected <re>,<im>");
    auto [p2, e2] = std::from_chars(p1 + 1, end, im);
    if (e2 != std::errc{} || p2 != end)
        throw CLI::ValidationError(flag, "expected <re>,<im>");
    return {re, im};
}

// Basis size used for the run: the requested window, optionally padded so
// the launch state plus the full propagation stays clear of the boundary.
int padded_sites(const std::string& pad, int sites, const cli::InputDescriptor& desc,
                 double max_displacement_gain) {
    if (pad == "none" || pad.empty()) return sites;
    if (pad == "auto")
        return std::max(sites, desc.min_sites(max_displacement_gain) + kBoundaryMargin);
    int value = 0;
    auto [ptr, ec] = std::from_chars(pad.data(), pad.data() + pad.size(), value);
    if (ec != std::errc{} || ptr != pad.data() + pad.size() || value < 0)
        throw CLI::ValidationError("--pad", "expected none, auto, or a site count");
    return std::max(sites, value);
}

struct CommonOutput {
    std::string output;
    std::string format = "auto";  // auto: json when the extension is .json
};

void add_output_options(CLI::App* cmd, CommonOutput& out, const std::string& default_name) {
    out.output = default_name;
    cmd->add_option("-o,--output", out.output, "output file (relative paths go to $DGF_OUTPUT_DIR)");
    cmd->add_option("--format", out.format, "csv or json (default: by extension)")
        ->check(CLI::IsMember({"auto", "csv", "json"}));
}

int run_simulate(int sites, double g, const std::string& input, double zmax, int samples,
                 double leakage_tol, const std::string& pad, const CommonOutput& out) {
    const auto desc = cli::parse_input_descriptor(input);
    const int dim = padded_sites(pad, sites, desc, g * zmax);

    lattice::LatticeSpec spec{g, dim, leakage_tol};
    const StateVector launch = desc.build(dim);
    auto rec = lattice::evolve_numeric(spec, launch, linspace(0.0, zmax, samples), desc.label());

    double window_tail_max = 0.0;
    for (int j = 0; j < rec.fields.rows(); ++j)
        window_tail_max =
            std::max(window_tail_max, 1.0 - rec.fields.row(j).head(sites).squaredNorm());

    io::MetaMap meta{{"command", "simulate"},
                     {"sites", std::to_string(sites)},
                     {"g", io::format_double(g)},
                     {"input", desc.label()},
                     {"zmax", io::format_double(zmax)},
                     {"samples", std::to_string(samples)},
                     {"pad_sites", std::to_string(dim)},
                     {"leakage_tol", io::format_double(leakage_tol)},
                     {"max_leakage", io::format_double(rec.max_leakage)},
                     {"window_tail_max", io::format_double(window_tail_max)}};
    if (rec.leaked()) meta.emplace_back("warning", rec.warning);

    lattice::EvolutionRecord window = rec;
    window.fields = rec.fields.leftCols(sites);

    const std::string path = resolve_output(out.output);
    json_format(path, out.format) ? io::write_evolution_json(window, meta, path)
                                  : io::write_evolution_csv(window, meta, path);

    std::cout << "wrote " << path << "  basis=" << dim << "  max_leakage="
              << io::format_double(rec.max_leakage) << "\n";
    if (rec.leaked()) {
        std::cerr << "warning: " << rec.warning << "\n";
        return kExitThreshold;
    }
    return 0;
}

int run_green(int sites, double g, int k, double zmax, int samples, double leakage_tol,
              const CommonOutput& out) {
    lattice::LatticeSpec spec{g, sites, leakage_tol};
    const auto z_grid = linspace(0.0, zmax, samples);

    lattice::EvolutionRecord rec;
    rec.z_grid = Eigen::Map<const Eigen::VectorXd>(z_grid.data(), samples);
    rec.fields.resize(samples, sites);
    rec.leakage.resize(samples);
    double max_deficit = 0.0;
    std::string warning;
    for (int j = 0; j < samples; ++j) {
        auto col = lattice::green_column(k, spec, z_grid[j]);
        rec.fields.row(j) = col.amplitudes.transpose();
        rec.leakage[j] = col.norm_deficit;
        max_deficit = std::max(max_deficit, col.norm_deficit);
        if (warning.empty() && !col.warning.empty()) warning = col.warning;
    }
    rec.max_leakage = max_deficit;
    rec.input_label = "fock:" + std::to_string(k);

    io::MetaMap meta{{"command", "green"},
                     {"sites", std::to_string(sites)},
                     {"g", io::format_double(g)},
                     {"k", std::to_string(k)},
                     {"zmax", io::format_double(zmax)},
                     {"samples", std::to_string(samples)},
                     {"leakage_tol", io::format_double(leakage_tol)},
                     {"max_leakage", io::format_double(max_deficit)}};
    if (!warning.empty()) meta.emplace_back("warning", warning);

    const std::string path = resolve_output(out.output);
    json_format(path, out.format) ? io::write_evolution_json(rec, meta, path)
                                  : io::write_evolution_csv(rec, meta, path);
    std::cout << "wrote " << path << "  max_norm_deficit=" << io::format_double(max_deficit)
              << "\n";
    if (!warning.empty()) {
        std::cerr << "warning: " << warning << "\n";
        return kExitThreshold;
    }
    return 0;
}

int run_wigner(const std::string& state, double range, int resolution, int dim,
               const CommonOutput& out) {
    const auto desc = cli::parse_input_descriptor(state);
    if (dim <= 0) {
        // Far grid corner sets the largest displacement the basis must hold.
        const double corner = 2.0 * range * std::sqrt(2.0);
        dim = desc.min_sites(corner) + kBoundaryMargin;
    }
    const StateVector psi = desc.build(dim);
    const auto grid = wigner::wigner_grid(psi, {-range, range}, {-range, range}, resolution,
                                          desc.label());

    io::MetaMap meta{{"command", "wigner"},
                     {"state", desc.label()},
                     {"range", io::format_double(range)},
                     {"resolution", std::to_string(resolution)},
                     {"dim", std::to_string(dim)},
                     {"missing_points", std::to_string(grid.missing_count)}};
    const std::string path = resolve_output(out.output);
    json_format(path, out.format) ? io::write_wigner_json(grid, meta, path)
                                  : io::write_wigner_csv(grid, meta, path);
    std::cout << "wrote " << path << "  dim=" << dim << "  missing=" << grid.missing_count
              << "\n";
    return 0;
}

int run_compare(int sites, double g, const std::string& input, double zmax, int samples,
                double tol, double leakage_tol, const CommonOutput& out) {
    const auto desc = cli::parse_input_descriptor(input);
    lattice::LatticeSpec spec{g, sites, leakage_tol};
    const StateVector launch = desc.build(sites);
    const auto z_grid = linspace(0.0, zmax, samples);
    const auto rec = lattice::evolve_numeric(spec, launch, z_grid, desc.label());

    Eigen::MatrixXd abs_diff(samples, sites);
    for (int j = 0; j < samples; ++j) {
        const double theta = g * z_grid[static_cast<size_t>(j)];
        StateVector analytic = StateVector::Zero(sites);
        for (int k = 0; k < sites; ++k) {
            if (launch[k] == Complex{}) continue;
            for (int m = 0; m < sites; ++m)
                analytic[m] += lattice::green_analytic(m, k, theta) * launch[k];
        }
        abs_diff.row(j) = (analytic - rec.fields.row(j).transpose()).cwiseAbs();
    }
    const double max_diff = abs_diff.maxCoeff();

    Eigen::Index worst_j = 0, worst_m = 0;
    abs_diff.maxCoeff(&worst_j, &worst_m);

    io::MetaMap meta{{"command", "compare"},
                     {"sites", std::to_string(sites)},
                     {"g", io::format_double(g)},
                     {"input", desc.label()},
                     {"zmax", io::format_double(zmax)},
                     {"samples", std::to_string(samples)},
                     {"tol", io::format_double(tol)},
                     {"max_abs_diff", io::format_double(max_diff)},
                     {"max_leakage", io::format_double(rec.max_leakage)}};
    const std::string path = resolve_output(out.output);
    json_format(path, out.format) ? io::write_compare_json(z_grid, abs_diff, meta, path)
                                  : io::write_compare_csv(z_grid, abs_diff, meta, path);

    std::cout << "wrote " << path << "  max_abs_diff=" << io::format_double(max_diff) << "\n";
    if (max_diff > tol) {
        std::cerr << "comparison threshold breached: |diff| = " << io::format_double(max_diff)
                  << " at z = " << io::format_double(z_grid[static_cast<size_t>(worst_j)])
                  << ", m = " << worst_m << "\n";
        return kExitThreshold;
    }
    if (rec.leaked()) {
        std::cerr << "warning: " << rec.warning << "\n";
        return kExitThreshold;
    }
    return 0;
}

int run_cat(int sites, double g, const std::string& input, const std::string& alpha_text,
            double z, bool has_alpha, bool has_z, double tol, double leakage_tol,
            const std::string& pad, const CommonOutput& out) {
    if (has_alpha == has_z)
        throw CLI::ValidationError("cat", "exactly one of --alpha or --z is required");

    const auto desc = cli::parse_input_descriptor(input);
    if (desc.kind == cli::InputKind::cat)
        throw CLI::ValidationError("--input", "cat descriptors are outputs here; launch "
                                              "fock:, coherent:, or dfock: states");

    const Complex beta = desc.amplitude;
    const int k = desc.fock_index;

    cats::CatState result;
    double leakage = 0.0;
    std::string warning;
    double z_out = 0.0;
    int dim = sites;

    if (has_alpha) {
        const Complex alpha = parse_complex_pair(alpha_text, "--alpha");
        dim = padded_sites(pad, sites, desc, std::abs(alpha));
        result = (desc.kind == cli::InputKind::fock)
                     ? cats::cat_from_fock(alpha, k, dim)
                     : cats::cat_from_displaced(alpha, beta, k, dim);
    } else {
        dim = padded_sites(pad, sites, desc, g * z);
        lattice::LatticeSpec spec{g, dim, leakage_tol};
        auto prop = lattice::propagate_cat(spec, beta, k, z);
        result.state = std::move(prop.state);
        result.parts = std::move(prop.parts);
        leakage = prop.leakage;
        warning = prop.warning;
        z_out = z;
    }

    const double recon_err =
        (result.parts.reconstruct(dim) - result.state).cwiseAbs().maxCoeff();

    io::MetaMap meta{{"command", "cat"},
                     {"sites", std::to_string(sites)},
                     {"g", io::format_double(g)},
                     {"input", desc.label()},
                     {"pad_sites", std::to_string(dim)},
                     {"reconstruction_max_error", io::format_double(recon_err)},
                     {"max_leakage", io::format_double(leakage)}};
    if (has_alpha)
        meta.emplace_back("alpha", alpha_text);
    else
        meta.emplace_back("z", io::format_double(z));
    if (!warning.empty()) meta.emplace_back("warning", warning);

    const StateVector window = result.state.head(std::min(sites, dim));
    const std::string path = resolve_output(out.output);
    json_format(path, out.format)
        ? io::write_cat_json(result.parts, window, z_out, meta, path)
        : io::write_cat_csv(result.parts, window, z_out, meta, path);

    std::cout << "wrote " << path << "  components=" << result.parts.components.size()
              << "  reconstruction_max_error=" << io::format_double(recon_err) << "\n";
    if (recon_err > tol) {
        std::cerr << "reconstruction threshold breached: " << io::format_double(recon_err)
                  << " > " << io::format_double(tol) << "\n";
        return kExitThreshold;
    }
    if (!warning.empty()) {
        std::cerr << "warning: " << warning << "\n";
        return kExitThreshold;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deformed Glauber-Fock lattice simulator"};
    app.require_subcommand(1);

    // simulate
    int sites = 60, samples = 400, k = 0, resolution = 41, dim = 0;
    double g = 1.0, zmax = 1.0, leakage_tol = 1e-8, tol = 1e-8, range = 2.0, z = 0.0;
    std::string input, state, pad = "none", alpha_text;
    CommonOutput sim_out, green_out, wig_out, cmp_out, cat_out;

    auto* sim = app.add_subcommand("simulate", "propagate a launch state over a z grid");
    sim->add_option("--sites", sites, "waveguide count (emitted window)")->required();
    sim->add_option("--g", g, "coupling constant per unit length");
    sim->add_option("--input", input, "launch descriptor, e.g. fock:0 or coherent:n=50")
        ->required();
    sim->add_option("--zmax", zmax, "propagation length")->required()
        ->check(CLI::PositiveNumber);
    sim->add_option("--samples", samples, "z samples (>= 2)")->check(CLI::Range(2, 1 << 20));
    sim->add_option("--leakage-tol", leakage_tol, "boundary population budget");
    sim->add_option("--pad", pad,
                    "none | auto | <sites>: enlarge the internal basis so the run stays "
                    "clear of the truncation edge; emission keeps --sites columns");
    add_output_options(sim, sim_out, "simulate.csv");

    auto* grn = app.add_subcommand("green", "analytic Green-function column over a z grid");
    grn->add_option("--sites", sites, "waveguide count")->required();
    grn->add_option("--g", g, "coupling constant");
    grn->add_option("--k", k, "excited input site")->required()->check(CLI::NonNegativeNumber);
    grn->add_option("--zmax", zmax, "propagation length")->required()
        ->check(CLI::PositiveNumber);
    grn->add_option("--samples", samples, "z samples (>= 2)")->check(CLI::Range(2, 1 << 20));
    grn->add_option("--leakage-tol", leakage_tol, "norm-deficit budget");
    add_output_options(grn, green_out, "green.csv");

    auto* wig = app.add_subcommand("wigner", "Wigner function on a square phase-space grid");
    wig->add_option("--state", state, "state descriptor, e.g. fock:1")->required();
    wig->add_option("--range", range, "grid covers [-range, range]^2")
        ->check(CLI::PositiveNumber);
    wig->add_option("--resolution", resolution, "points per axis")->check(CLI::Range(2, 4096));
    wig->add_option("--dim", dim, "basis size (0 = pick automatically)");
    add_output_options(wig, wig_out, "wigner.csv");

    auto* cmp = app.add_subcommand("compare", "analytic vs numeric propagation differences");
    cmp->add_option("--sites", sites, "waveguide count")->required();
    cmp->add_option("--g", g, "coupling constant");
    cmp->add_option("--input", input, "launch descriptor")->required();
    cmp->add_option("--zmax", zmax, "propagation length")->required()
        ->check(CLI::PositiveNumber);
    cmp->add_option("--samples", samples, "z samples (>= 2)")->check(CLI::Range(2, 1 << 20));
    cmp->add_option("--tol", tol, "max |analytic - numeric| allowed");
    cmp->add_option("--leakage-tol", leakage_tol, "boundary population budget");
    add_output_options(cmp, cmp_out, "compare.csv");

    auto* cat = app.add_subcommand("cat", "cat-state decomposition tables");
    cat->add_option("--sites", sites, "waveguide count (emitted window)")->required();
    cat->add_option("--g", g, "coupling constant");
    cat->add_option("--input", input, "launch descriptor (fock:, coherent:, dfock:)")
        ->required();
    auto* alpha_opt = cat->add_option("--alpha", alpha_text,
                                      "deformed displacement <re>,<im> applied to the input");
    auto* z_opt = cat->add_option("--z", z, "lattice propagation distance instead of --alpha");
    cat->add_option("--tol", tol, "reconstruction mismatch allowed")->default_val(1e-6);
    cat->add_option("--leakage-tol", leakage_tol, "boundary population budget");
    cat->add_option("--pad", pad, "none | auto | <sites>: internal basis enlargement");
    add_output_options(cat, cat_out, "cat.csv");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed())
            return run_simulate(sites, g, input, zmax, samples, leakage_tol, pad, sim_out);
        if (grn->parsed())
            return run_green(sites, g, k, zmax, samples, leakage_tol, green_out);
        if (wig->parsed()) return run_wigner(state, range, resolution, dim, wig_out);
        if (cmp->parsed())
            return run_compare(sites, g, input, zmax, samples, tol, leakage_tol, cmp_out);
        if (cat->parsed())
            return run_cat(sites, g, input, alpha_text, z, alpha_opt->count() > 0,
                           z_opt->count() > 0, tol, leakage_tol, pad, cat_out);
    } catch (const cli::ParseError& e) {
        std::cerr << "input descriptor error at position " << e.position() << ": " << e.what()
                  << " (expected " << e.expected() << ")\n";
        return 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const TruncationError& e) {
        std::cerr << "truncation error: " << e.what()
                  << " (minimal safe dimension: " << e.min_safe_dim() << ")\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
