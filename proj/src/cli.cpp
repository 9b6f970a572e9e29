#include "rossby/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "rossby/config.hpp"
#include "rossby/csv.hpp"
#include "rossby/diagnostics.hpp"
#include "rossby/dispersion.hpp"
#include "rossby/equilibrium.hpp"
#include "rossby/error.hpp"
#include "rossby/params.hpp"
#include "rossby/spectral.hpp"
#include "rossby/stationary.hpp"

namespace rossby::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Options shared by every subcommand.
struct Common {
    std::string out_dir = ".";
    std::string config_path;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, Common& c, const char* config_help) {
    cmd->add_option("-o,--out", c.out_dir, "Output directory (created if missing)");
    cmd->add_option("-c,--config", c.config_path, config_help);
    cmd->add_option("--set", c.overrides, "Config override key=value (repeatable)");
}

std::string config_text(const Common& c) {
    std::string text = "{}";
    if (!c.config_path.empty()) {
        if (!fs::exists(c.config_path)) throw Error(Errc::config, "config file not found: " + c.config_path);
        text = read_text_file(c.config_path);
    }
    return apply_overrides(text, c.overrides);
}

fs::path prepare_out_dir(const Common& c) {
    const fs::path dir(c.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw Error(Errc::io, "cannot create output directory " + dir.string());
    return dir;
}

void write_json(const json& doc, const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, "cannot open " + path.string() + " for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw Error(Errc::io, "failed writing " + path.string());
}

template <class T>
T pick(const std::optional<T>& flag, const std::optional<T>& file, T fallback) {
    if (flag) return *flag;
    if (file) return *file;
    return fallback;
}

// dispersion -----------------------------------------------------------------

struct DispersionArgs {
    Common common;
    std::optional<double> v_r;
    std::vector<double> xi;
    double k_max = 5.0;
    int n_k = 501;
    double k_r = 0.0;
};

void run_dispersion(const DispersionArgs& a, std::ostream& out) {
    const ParameterFile pf = parse_parameter_file(config_text(a.common));
    ModelParams base;
    base.v_r = pick(a.v_r, pf.v_r_over_cs, 0.1);
    std::vector<double> xis = a.xi;
    if (xis.empty()) xis = pf.xi_over_r0 ? std::vector<double>{*pf.xi_over_r0} : std::vector<double>{0.0, 0.7, 1.3};
    if (a.n_k < 1) throw Error(Errc::config, "--n-k must be >= 1");
    if (!(a.k_max >= 0.0)) throw Error(Errc::config, "--k-max must be non-negative");

    std::vector<WaveVector> ks;
    for (int i = 0; i < a.n_k; ++i)
        ks.push_back({a.k_r, a.n_k == 1 ? a.k_max : a.k_max * i / (a.n_k - 1)});

    CsvTable table({"xi", "k_r", "k_theta", "omega", "c_ph_zonal", "cg_r", "cg_theta"});
    for (double xi : xis) {
        ModelParams m = base;
        m.xi = xi;
        for (const DispersionRow& r : dispersion_scan(ks, m))
            table.add_row({xi, r.k.k_r, r.k.k_theta, r.omega, r.c_ph_zonal, r.cg_r, r.cg_theta});
    }
    const fs::path path = prepare_out_dir(a.common) / "dispersion.csv";
    write_csv(table, path);
    out << "wrote " << path.string() << " (" << xis.size() << " curve(s), " << ks.size() << " points each)\n";
}

// equilibrium / stationary ------------------------------------------------------

struct TrapArgs {
    Common common;
    std::optional<double> omega_ratio, beta, mu;
    int n_r = 201;
};

TfEquilibrium resolve_equilibrium(const TrapArgs& a) {
    const ParameterFile pf = parse_parameter_file(config_text(a.common));
    return tf_radii(pick(a.mu, pf.mu_hbar_omega, 0.2), pick(a.omega_ratio, pf.omega_ratio, 2.4),
                    pick(a.beta, pf.beta, 1.6));
}

json equilibrium_json(const TfEquilibrium& eq) {
    const ProfilePeak peak = profile_peak(eq);
    json doc;
    doc["mu"] = eq.mu;
    doc["omega_ratio"] = eq.omega_ratio;
    doc["beta"] = eq.beta;
    doc["r_plus_sq"] = eq.r_plus_sq;
    doc["r_minus_sq"] = eq.r_minus_sq;
    doc["r_plus"] = eq.r_plus();
    doc["r_minus"] = eq.r_minus_sq > 0.0 ? json(std::sqrt(eq.r_minus_sq)) : json(nullptr);
    doc["annulus"] = eq.is_annulus();
    doc["peak_r"] = peak.r;
    doc["peak_density"] = peak.density;
    return doc;
}

void run_equilibrium(const TrapArgs& a, std::ostream& out) {
    if (a.n_r < 2) throw Error(Errc::config, "--n-r must be >= 2");
    const TfEquilibrium eq = resolve_equilibrium(a);
    const fs::path dir = prepare_out_dir(a.common);

    CsvTable table({"r", "n_over_ninf", "dlnn_dr"});
    const double r_max = eq.r_plus();
    for (int i = 0; i < a.n_r; ++i) {
        const double r = r_max * i / (a.n_r - 1);
        double grad = NAN;
        const double r2 = r * r;
        if (r2 < eq.r_plus_sq && r2 > eq.r_minus_sq) grad = log_density_gradient(r, eq);
        table.add_row({r, tf_profile(r, eq), grad});
    }
    write_csv(table, dir / "profile.csv");
    write_json(equilibrium_json(eq), dir / "radii.json");
    out << "R_+ = " << format_real(eq.r_plus()) << " a_ho"
        << (eq.is_annulus() ? ", R_- = " + format_real(eq.r_inner()) + " a_ho (annulus)" : std::string())
        << "\n";
}

struct StationaryArgs {
    TrapArgs trap;
    int mode = 1;
    int n_theta = 64;
    double xi = 0.0;
};

void run_stationary(const StationaryArgs& a, std::ostream& out) {
    if (a.trap.n_r < 16 || a.n_theta < 16) throw Error(Errc::config, "--n-r and --n-theta must be >= 16");
    const TfEquilibrium eq = resolve_equilibrium(a.trap);
    if (eq.mu == 0.0) throw Error(Errc::config, "mu = 0 is the annulus transition; no Bessel mode is defined");
    const StationaryStructure s = eq.is_annulus() ? solve_annulus_mode(eq, a.mode) : solve_disk_mode(eq, a.mode);
    const fs::path dir = prepare_out_dir(a.trap.common);

    const double peak = profile_peak(eq).density;
    CsvTable table({"r", "phi", "n_tf_over_peak"});
    for (int i = 0; i < a.trap.n_r; ++i) {
        const double r = s.r_outer * i / (a.trap.n_r - 1);
        const double phi = r < s.r_inner ? 0.0 : evaluate_structure(s, r);
        table.add_row({r, phi, tf_profile(r, eq) / peak});
    }
    write_csv(table, dir / "stationary.csv");

    const double residual = stationarity_residual(structure_field(s, a.trap.n_r, a.n_theta), a.xi);
    json doc = equilibrium_json(eq);
    doc["kappa"] = s.kappa;
    doc["a_coef"] = s.a_coef;
    doc["b_coef"] = s.b_coef;
    doc["r_inner"] = s.r_inner;
    doc["r_outer"] = s.r_outer;
    doc["mode_index"] = s.mode_index;
    doc["phi_inner"] = evaluate_structure(s, s.r_inner);
    doc["phi_outer"] = evaluate_structure(s, s.r_outer);
    doc["stationarity_residual"] = residual;
    if (eq.is_annulus()) doc["determinant"] = annulus_determinant(s.kappa, s.r_inner, s.r_outer);
    write_json(doc, dir / "structure.json");
    out << (eq.is_annulus() ? "annulus" : "disk") << " mode " << s.mode_index << ": kappa = "
        << format_real(s.kappa) << " / a_ho\n";
}

// simulate / triad ------------------------------------------------------------

struct RunArgs {
    Common common;
    std::optional<int> n_modes, output_every;
    std::optional<double> k_max, xi, v_r, dt, t_final, amplitude, k_peak, tol;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> init;
    std::string convolution = "auto";
    bool snapshots = false;
    std::optional<int> triad_index;
    double seed_ratio = 1e-3;
};

SimulationConfig resolve_run(const RunArgs& a) {
    SimulationConfig c = parse_simulation_config(config_text(a.common));
    if (a.n_modes) c.n_modes = *a.n_modes;
    if (a.output_every) c.output_every = *a.output_every;
    if (a.k_max) c.k_max = *a.k_max;
    if (a.xi) c.xi_over_r0 = *a.xi;
    if (a.v_r) c.v_r_over_cs = *a.v_r;
    if (a.dt) c.dt = *a.dt;
    if (a.t_final) c.t_final = *a.t_final;
    if (a.amplitude) c.amplitude = *a.amplitude;
    if (a.k_peak) c.k_peak = *a.k_peak;
    if (a.tol) c.triad_tol = *a.tol;
    if (a.seed) c.seed = *a.seed;
    if (a.init) c.init = parse_init_kind(*a.init);
    c.validate();
    return c;
}

Convolution parse_convolution(const std::string& s) {
    if (s == "auto") return Convolution::automatic;
    if (s == "pair") return Convolution::pair_sum;
    if (s == "fft") return Convolution::transform;
    throw Error(Errc::config, "unknown convolution '" + s + "' (auto, pair, fft)");
}

json config_json(const SimulationConfig& c) {
    return {{"n_modes", c.n_modes},     {"k_max", c.k_max},         {"xi_over_r0", c.xi_over_r0},
            {"v_r_over_cs", c.v_r_over_cs}, {"dt", c.dt},           {"t_final", c.t_final},
            {"seed", c.seed},           {"init", to_string(c.init)}, {"output_every", c.output_every},
            {"amplitude", c.amplitude}, {"k_peak", c.k_peak},       {"triad_tol", c.triad_tol}};
}

std::vector<Triad> coupled_triads(const ModeGrid& grid, const ModelParams& m, double tol) {
    return find_resonant_triads(grid, m, TriadFilter{tol, true});
}

// Explicit index, or the first triad whose pump (mode 3) drives growth of the other two.
std::size_t select_triad(const std::vector<Triad>& triads, std::optional<int> index, const ModelParams& m,
                         double pump, double tol) {
    if (triads.empty())
        throw Error(Errc::numerical_failure, "no coupled triad with mismatch <= " + format_real(tol));
    if (index) {
        if (*index < 0 || *index >= static_cast<int>(triads.size()))
            throw Error(Errc::config, "--triad-index out of range (found " + std::to_string(triads.size()) + ")");
        return static_cast<std::size_t>(*index);
    }
    for (std::size_t i = 0; i < triads.size(); ++i)
        if (triad_growth_rate(triad_system(triads[i], m), pump) > 0.0) return i;
    return 0;
}

int lattice(double k, double dk) { return static_cast<int>(std::lround(k / dk)); }

SpectralState initial_state(const SimulationConfig& c, std::shared_ptr<const ModeGrid> grid,
                            const ModelParams& m, double seed_ratio) {
    switch (c.init) {
        case InitKind::single_mode:
            return single_mode_state(grid, m, 0, 1, c.amplitude);
        case InitKind::random_spectrum:
            return random_spectrum_state(grid, m, c.seed, c.k_peak, c.amplitude);
        case InitKind::triad: {
            const auto triads = coupled_triads(*grid, m, c.triad_tol);
            const Triad& t = triads[select_triad(triads, std::nullopt, m, c.amplitude, c.triad_tol)];
            const double dk = grid->spacing();
            SpectralState s = SpectralState::zero(grid, m);
            auto set = [&](WaveVector k, Complex z) {
                const int idx = grid->retained_index(lattice(k.k_r, dk), lattice(k.k_theta, dk));
                s.amplitudes[idx] += z;
                s.amplitudes[grid->mirror(idx)] += std::conj(z);
            };
            set(t.k3, c.amplitude);
            set(t.k1, c.amplitude * seed_ratio);
            return s;
        }
    }
    throw Error(Errc::config, "unhandled init kind");
}

void run_simulate(const RunArgs& a, std::ostream& out) {
    const SimulationConfig c = resolve_run(a);
    const ModelParams m{c.v_r_over_cs, c.xi_over_r0};
    auto grid = build_mode_grid(c.n_modes, c.k_max);
    const SpectralSolver solver(grid, m, SolverOptions{parse_convolution(a.convolution), 0});
    SpectralState state = initial_state(c, grid, m, a.seed_ratio);
    const fs::path dir = prepare_out_dir(a.common);

    CsvTable series({"t", "E", "Z", "max_amp"});
    CsvTable invariants({"t", "E", "Z", "E_xi"});
    CsvTable spectrum({"t", "k_r", "k_theta", "re", "im"});
    const Invariants inv0 = energy_enstrophy(state);
    double drift_e = 0.0, drift_z = 0.0, drift_exi = 0.0;
    auto rel = [](double x, double x0) { return x0 != 0.0 ? std::abs(x - x0) / std::abs(x0) : std::abs(x); };
    auto record = [&](const SpectralState& s) {
        const Invariants inv = energy_enstrophy(s);
        series.add_row({s.time, inv.energy, inv.enstrophy, max_amplitude(s)});
        invariants.add_row({s.time, inv.energy, inv.enstrophy, inv.energy_xi});
        if (a.snapshots)
            for (int idx : grid->retained_modes()) {
                const WaveVector k = grid->k(idx);
                spectrum.add_row({s.time, k.k_r, k.k_theta, s.amplitudes[idx].real(), s.amplitudes[idx].imag()});
            }
    };
    record(state);

    const int n_steps = static_cast<int>(std::llround(c.t_final / c.dt));
    IntegrationReport report;
    state = solver.integrate(
        state, c.dt, n_steps,
        [&](const SpectralState& s, int step) {
            const Invariants inv = energy_enstrophy(s);
            drift_e = std::max(drift_e, rel(inv.energy, inv0.energy));
            drift_z = std::max(drift_z, rel(inv.enstrophy, inv0.enstrophy));
            drift_exi = std::max(drift_exi, rel(inv.energy_xi, inv0.energy_xi));
            if (step % c.output_every == 0 || step == n_steps) record(s);
        },
        &report);

    write_csv(series, dir / "timeseries.csv");
    write_csv(invariants, dir / "invariants.csv");
    if (a.snapshots) write_csv(spectrum, dir / "spectrum.csv");
    CsvTable zonal({"k_theta", "power"});
    for (const ZonalBin& b : zonal_spectrum(state)) zonal.add_row({b.k_theta, b.power});
    write_csv(zonal, dir / "zonal_spectrum.csv");

    json doc;
    doc["config"] = config_json(c);
    doc["convolution"] = solver.convolution() == Convolution::pair_sum ? "pair" : "fft";
    doc["steps"] = report.steps;
    doc["max_relative_drift"] = {{"E", drift_e}, {"Z", drift_z}, {"E_xi", drift_exi}};
    doc["max_reality_defect"] = report.max_reality_defect;
    write_json(doc, dir / "run.json");
    out << "simulated " << report.steps << " steps to t = " << format_real(state.time)
        << "; max relative drift E = " << format_real(drift_e) << ", Z = " << format_real(drift_z)
        << ", E_xi = " << format_real(drift_exi) << "\n";
}

void run_triad(const RunArgs& a, std::ostream& out) {
    const SimulationConfig c = resolve_run(a);
    const ModelParams m{c.v_r_over_cs, c.xi_over_r0};
    const auto grid = build_mode_grid(c.n_modes, c.k_max);
    const auto triads = coupled_triads(*grid, m, c.triad_tol);
    const fs::path dir = prepare_out_dir(a.common);

    CsvTable listing({"k1_r", "k1_theta", "k2_r", "k2_theta", "k3_r", "k3_theta", "mismatch", "c1", "c2", "c3"});
    for (const Triad& t : triads) {
        const TriadSystem sys = triad_system(t, m);
        listing.add_row({t.k1.k_r, t.k1.k_theta, t.k2.k_r, t.k2.k_theta, t.k3.k_r, t.k3.k_theta, t.mismatch,
                         sys.c[0], sys.c[1], sys.c[2]});
    }
    write_csv(listing, dir / "triads.csv");

    const std::size_t chosen = select_triad(triads, a.triad_index, m, c.amplitude, c.triad_tol);
    const Triad& t = triads[chosen];
    const TriadSystem sys = triad_system(t, m);
    const TriadAmplitudes init{Complex(c.amplitude * a.seed_ratio), Complex{}, Complex(c.amplitude)};
    const auto samples = integrate_triad(t, init, m, c.dt, c.t_final, c.output_every);
    CsvTable series({"t", "re1", "im1", "re2", "im2", "re3", "im3", "E"});
    for (const TriadSample& s : samples)
        series.add_row({s.t, s.amp[0].real(), s.amp[0].imag(), s.amp[1].real(), s.amp[1].imag(), s.amp[2].real(),
                        s.amp[2].imag(), triad_energy(t, s.amp)});
    write_csv(series, dir / "triad_series.csv");

    const double gamma = triad_growth_rate(sys, c.amplitude);
    json doc;
    doc["config"] = config_json(c);
    doc["triad"] = {{"k1", {t.k1.k_r, t.k1.k_theta}}, {"k2", {t.k2.k_r, t.k2.k_theta}},
                    {"k3", {t.k3.k_r, t.k3.k_theta}}, {"mismatch", t.mismatch}};
    doc["coefficients"] = {sys.c[0], sys.c[1], sys.c[2]};
    doc["omega"] = {sys.omega[0], sys.omega[1], sys.omega[2]};
    doc["triad_index"] = chosen;
    doc["pump_growth_rate"] = gamma;
    write_json(doc, dir / "triad.json");
    out << "found " << triads.size() << " coupled triad(s) with mismatch <= " << format_real(c.triad_tol)
        << "; integrated triad " << chosen << "\n";
}

void add_trap_options(CLI::App* cmd, TrapArgs& t) {
    cmd->add_option("--omega-ratio", t.omega_ratio, "Omega / omega_perp (default 2.4)");
    cmd->add_option("--beta", t.beta, "Anharmonicity beta (default 1.6)");
    cmd->add_option("--mu", t.mu, "Chemical potential in hbar omega_perp (default 0.2)");
}

void add_run_options(CLI::App* cmd, RunArgs& r) {
    cmd->add_option("--n-modes", r.n_modes, "Modes per axis (even, >= 8)");
    cmd->add_option("--k-max", r.k_max, "Lattice cutoff [1/r0]");
    cmd->add_option("--xi", r.xi, "Healing length [r0]");
    cmd->add_option("--v-r", r.v_r, "Drift speed [c_s]");
    cmd->add_option("--dt", r.dt, "RK4 time step [r0/c_s]");
    cmd->add_option("--t-final", r.t_final, "Final time [r0/c_s]");
    cmd->add_option("--seed", r.seed, "Random seed");
    cmd->add_option("--output-every", r.output_every, "Record every n steps");
    cmd->add_option("--amplitude", r.amplitude, "Random-spectrum rms or leading-mode amplitude");
    cmd->add_option("--k-peak", r.k_peak, "Random-spectrum peak wavenumber [1/r0]");
    cmd->add_option("--tol", r.tol, "Triad mismatch tolerance");
    cmd->add_option("--seed-ratio", r.seed_ratio, "Seed amplitude relative to the pump for triad starts");
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rossby waves in rapidly rotating condensates", "rossby"};
    app.require_subcommand(1);

    DispersionArgs disp;
    auto* c_disp = app.add_subcommand("dispersion", "Dispersion relation scan (omega <= 0 curves per xi)");
    add_common(c_disp, disp.common, "Parameter file (JSON)");
    c_disp->add_option("--v-r", disp.v_r, "Drift speed v_R [c_s] (default 0.1)");
    c_disp->add_option("--xi", disp.xi, "Healing lengths [r0], comma separated (default 0,0.7,1.3)")
        ->delimiter(',');
    c_disp->add_option("--k-max", disp.k_max, "Largest k_theta [1/r0]")->capture_default_str();
    c_disp->add_option("--n-k", disp.n_k, "Points per curve")->capture_default_str();
    c_disp->add_option("--k-r", disp.k_r, "Fixed radial wavenumber [1/r0]")->capture_default_str();

    TrapArgs eq;
    auto* c_eq = app.add_subcommand("equilibrium", "Thomas-Fermi radii and density profile");
    add_common(c_eq, eq.common, "Parameter file (JSON)");
    add_trap_options(c_eq, eq);
    c_eq->add_option("--n-r", eq.n_r, "Radial samples on [0, R_+]")->capture_default_str();

    StationaryArgs st;
    st.trap.n_r = 401;
    auto* c_st = app.add_subcommand("stationary", "Bessel-mode stationary structure on the TF support");
    add_common(c_st, st.trap.common, "Parameter file (JSON)");
    add_trap_options(c_st, st.trap);
    c_st->add_option("--n-r", st.trap.n_r, "Radial samples on [0, R_+]")->capture_default_str();
    c_st->add_option("--mode", st.mode, "Radial mode index (n - 1 interior nodes)")->capture_default_str();
    c_st->add_option("--n-theta", st.n_theta, "Azimuthal points for the residual check")->capture_default_str();
    c_st->add_option("--xi-aho", st.xi, "Healing length [a_ho] in the residual check")->capture_default_str();

    RunArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "Spectral integration with invariant monitoring");
    add_common(c_sim, sim.common, "Run config (JSON)");
    add_run_options(c_sim, sim);
    c_sim->add_option("--init", sim.init, "single_mode | random_spectrum | triad");
    c_sim->add_option("--convolution", sim.convolution, "auto | pair | fft")->capture_default_str();
    c_sim->add_flag("--snapshots", sim.snapshots, "Write per-mode spectrum snapshots");

    RunArgs tri;
    auto* c_tri = app.add_subcommand("triad", "Find resonant triads and integrate one");
    add_common(c_tri, tri.common, "Run config (JSON)");
    add_run_options(c_tri, tri);
    c_tri->add_option("--triad-index", tri.triad_index,
                      "Which found triad to integrate (default: first one the pump can drive)");

    if (args.empty()) {
        err << app.help();
        return kExitUsage;
    }

    std::vector<std::string> argv_store{"rossby"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "ERROR: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (c_disp->parsed()) run_dispersion(disp, out);
        else if (c_eq->parsed()) run_equilibrium(eq, out);
        else if (c_st->parsed()) run_stationary(st, out);
        else if (c_sim->parsed()) run_simulate(sim, out);
        else if (c_tri->parsed()) run_triad(tri, out);
    } catch (const Error& e) {
        err << "ERROR: " << to_string(e.code()) << ": " << e.what() << "\n";
        return e.code() == Errc::config ? kExitUsage : kExitFailure;
    } catch (const std::exception& e) {
        err << "ERROR: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

int dispatch(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dispatch(args, std::cout, std::cerr);
}

}  // namespace rossby::cli
