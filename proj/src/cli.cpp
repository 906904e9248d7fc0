#include "magicwit/cli.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "magicwit/dynamics.hpp"
#include "magicwit/families.hpp"
#include "magicwit/io.hpp"
#include "magicwit/stab_energy.hpp"
#include "magicwit/thermo.hpp"

namespace magicwit::cli {

namespace {

using nlohmann::json;

class Manifest {
  public:
    explicit Manifest(std::string subcommand)
        : start_(std::chrono::steady_clock::now()) {
        doc_["subcommand"] = std::move(subcommand);
        doc_["tool_version"] = kVersion;
        doc_["inputs"] = json::array();
        doc_["outputs"] = json::array();
        doc_["parameters"] = json::object();
    }
    void input(const std::string& path) { doc_["inputs"].push_back(path); }
    void output(const std::string& path) { doc_["outputs"].push_back(path); }
    template <typename T>
    void param(const std::string& key, const T& value) {
        doc_["parameters"][key] = value;
    }
    std::string path_for(const std::string& output_file) const {
        return output_file + ".manifest.json";
    }
    void write(const std::string& path) {
        auto elapsed = std::chrono::steady_clock::now() - start_;
        doc_["wall_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
        io::save_json(doc_, path);
    }
    json finish() {
        auto elapsed = std::chrono::steady_clock::now() - start_;
        doc_["wall_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
        return doc_;
    }

  private:
    json doc_;
    std::chrono::steady_clock::time_point start_;
};

Eigen::Vector3d parse_field(const std::string& text) {
    Eigen::Vector3d h;
    std::istringstream in(text);
    char comma;
    if (!(in >> h[0] >> comma >> h[1] >> comma >> h[2]))
        throw std::invalid_argument("field must be 'hx,hy,hz'");
    return h;
}

struct SystemOptions {
    std::string hamiltonian_file;
    int zsum_n = 0;
    std::string field_text;

    void attach(CLI::App* cmd) {
        auto* a = cmd->add_option("--hamiltonian", hamiltonian_file, "Hamiltonian JSON file");
        auto* b = cmd->add_option("--zsum", zsum_n, "H = Z_1 + ... + Z_n on n qubits");
        auto* c = cmd->add_option("--field", field_text, "single-qubit field 'hx,hy,hz'");
        a->excludes(b)->excludes(c);
        b->excludes(c);
    }

    PauliHamiltonian build(Manifest& manifest) const {
        if (!hamiltonian_file.empty()) {
            manifest.input(hamiltonian_file);
            return io::load_hamiltonian(hamiltonian_file);
        }
        if (zsum_n > 0) {
            manifest.param("zsum", zsum_n);
            std::vector<Eigen::Vector3d> fields(zsum_n, Eigen::Vector3d(0, 0, 1));
            return PauliHamiltonian::local_fields(fields);
        }
        if (!field_text.empty()) {
            manifest.param("field", field_text);
            return PauliHamiltonian::local_fields({parse_field(field_text)});
        }
        throw std::invalid_argument("one of --hamiltonian/--zsum/--field is required");
    }
};

json gap_to_json(const GapReport& gap, const StabEnergyResult& stab) {
    json j{{"e_stab", gap.e_stab}, {"e_gs", gap.e_gs}, {"delta", gap.delta},
           {"method", stab_method_name(stab.method)}};
    if (stab.subset) {
        json members = json::array();
        for (size_t k = 0; k < stab.subset->members.size(); ++k)
            members.push_back({{"term", stab.subset->members[k]},
                               {"agreement", stab.subset->agreement[k]}});
        json gens = json::array();
        for (const auto& g : stab.subset->generators) gens.push_back(g.str());
        j["certificate"] = {{"members", members}, {"generators", gens}};
    }
    if (stab.vertex_index) j["certificate"] = {{"vertex_index", *stab.vertex_index}};
    return j;
}

json window_to_json(const HeatWindow& w) {
    return {{"e0", w.e0},
            {"s_min", w.s_min},
            {"f_star", w.f_star},
            {"q_cold_stab", w.q_cold_stab},
            {"q_hot_stab", w.q_hot_stab},
            {"cooling_clamped", w.cooling_clamped},
            {"heating_clamped", w.heating_clamped}};
}

int cmd_gap(const std::string& ham_file, int tfim_n, double tfim_h, int heis_n, double bell_eps,
            bool bell_set, const std::string& psi_sweep, int grid, std::ostream& out) {
    Manifest manifest("gap");
    PauliHamiltonian h;
    double e_gs;
    std::string e_gs_method;

    if (tfim_n > 0) {
        manifest.param("tfim_n", tfim_n);
        manifest.param("tfim_h", tfim_h);
        e_gs = tfim_ground_energy(tfim_n, tfim_h);
        if (tfim_n > kMaxQubits) {
            // Beyond the symplectic core: both sides are closed forms.
            double e_stab = tfim_stabilizer_energy(tfim_n, tfim_h);
            json result{{"e_stab", e_stab},          {"e_gs", e_gs},
                        {"delta", e_stab - e_gs},    {"method", "closed_form"},
                        {"e_gs_method", "free_fermion"}, {"n", tfim_n}};
            result["manifest"] = manifest.finish();
            out << result.dump(2) << "\n";
            return kExitOk;
        }
        h = PauliHamiltonian::tfim(tfim_n, tfim_h);
        e_gs_method = "free_fermion";
    } else if (heis_n > 0) {
        manifest.param("heisenberg_n", heis_n);
        h = PauliHamiltonian::heisenberg(heis_n);
        if (heis_n <= kMaxDenseQubits) {
            e_gs = ground_energy_dense(h).value;
            e_gs_method = "dense";
        } else {
            e_gs = -double(heis_n);  // ferromagnetic chain ground energy
            e_gs_method = "closed_form";
        }
    } else if (bell_set) {
        manifest.param("bell_eps", bell_eps);
        h = PauliHamiltonian::bell_perturbed(bell_eps);
        e_gs = ground_energy_dense(h).value;
        e_gs_method = "dense";
    } else if (!ham_file.empty()) {
        manifest.input(ham_file);
        h = io::load_hamiltonian(ham_file);
        e_gs = ground_energy_dense(h).value;
        e_gs_method = "dense";
    } else {
        throw std::invalid_argument("gap: choose --hamiltonian/--tfim/--heisenberg/--bell-perturbed");
    }

    StabEnergyResult stab = stab_energy(h);
    stab.check_certificate(h);
    GapReport gap = stabilizer_gap_with(h, e_gs);
    json result = gap_to_json(gap, stab);
    result["e_gs_method"] = e_gs_method;
    result["n"] = h.n();

    if (!psi_sweep.empty()) {
        if (!bell_set) throw std::invalid_argument("--psi-sweep requires --bell-perturbed");
        std::string manifest_path = manifest.path_for(psi_sweep);
        io::CsvWriter csv(psi_sweep, "bell-psi-sweep v1", {"theta", "phi", "energy", "verdict"},
                          manifest_path);
        Eigen::MatrixXcd hd = h.dense();
        for (int i = 0; i < grid; ++i) {
            double theta = 0.5 * std::numbers::pi * double(i) / double(grid - 1);
            for (int j = 0; j < grid; ++j) {
                double phi = std::numbers::pi * (2.0 * double(j) / double(grid - 1) - 1.0);
                Eigen::VectorXcd psi = psi_theta_phi(theta, phi);
                double e = (psi.adjoint() * hd * psi)(0, 0).real();
                csv.row({io::format_double(theta), io::format_double(phi), io::format_double(e),
                         e < gap.e_stab ? "certified" : "inconclusive"});
            }
        }
        csv.close();
        manifest.output(psi_sweep);
        manifest.write(manifest_path);
        result["psi_sweep"] = psi_sweep;
    }

    result["manifest"] = manifest.finish();
    out << result.dump(2) << "\n";
    return kExitOk;
}

int cmd_sweep_tfim(int n, double h_max, int steps, const std::string& out_file, std::ostream& out) {
    Manifest manifest("sweep-tfim");
    manifest.param("n", n);
    manifest.param("h_max", h_max);
    manifest.param("steps", steps);
    std::string manifest_path = manifest.path_for(out_file);
    io::CsvWriter csv(out_file, "tfim-sweep v1",
                      {"h", "e_gs_per_site", "e_stab_per_site", "gap_per_site",
                       "e_gs_dense_per_site"},
                      manifest_path);
    for (int i = 0; i < steps; ++i) {
        double h = h_max * double(i) / double(steps - 1);
        double e_gs = tfim_ground_energy(n, h) / n;
        double e_stab = tfim_stabilizer_energy(n, h) / n;
        std::string dense_cell;
        if (n <= 10) {
            double dense = ground_energy_dense(PauliHamiltonian::tfim(n, h)).value / n;
            dense_cell = io::format_double(dense);
        }
        csv.row({io::format_double(h), io::format_double(e_gs), io::format_double(e_stab),
                 io::format_double(e_stab - e_gs), dense_cell});
    }
    csv.close();
    manifest.output(out_file);
    manifest.write(manifest_path);
    out << json{{"out", out_file}, {"manifest", manifest_path}}.dump(2) << "\n";
    return kExitOk;
}

int cmd_heat_window(const SystemOptions& sys, double beta, double e0, std::ostream& out) {
    Manifest manifest("heat-window");
    manifest.param("beta", beta);
    manifest.param("e0", e0);
    PauliHamiltonian h = sys.build(manifest);
    ThermalContext ctx(h, beta);
    json result{{"n", h.n()}, {"beta", beta}};
    if (!slice_nonempty(ctx, e0)) {
        result["slice_empty"] = true;
        result["note"] = "no stabilizer state attains this energy: the energy estimate alone certifies";
    } else {
        HeatWindow w = stab_heat_window(ctx, e0);
        result.update(window_to_json(w));
        result["slice_empty"] = false;
        if (w.s_min < 1e-12)
            result["note"] = "S_min = 0: pure stabilizer states reach E0, heat witness blind here";
    }
    result["manifest"] = manifest.finish();
    out << result.dump(2) << "\n";
    return kExitOk;
}

int cmd_detect(const SystemOptions& sys, double beta, double e0, double q, double de, double dq,
               std::ostream& out) {
    Manifest manifest("detect");
    manifest.param("beta", beta);
    manifest.param("e0", e0);
    manifest.param("q", q);
    manifest.param("de", de);
    manifest.param("dq", dq);
    PauliHamiltonian h = sys.build(manifest);
    ThermalContext ctx(h, beta);
    HeatDetection detection = detect_heat(ctx, e0, q, de, dq);
    json result{{"certified", detection.certified}, {"empty_slice", detection.empty_slice}};
    if (detection.window) result["window"] = window_to_json(*detection.window);
    if (!detection.certified && detection.window) {
        double margin = std::min(q - detection.window->q_cold_stab,
                                 detection.window->q_hot_stab - q);
        result["inconclusive_margin"] = margin;
    }
    result["manifest"] = manifest.finish();
    out << result.dump(2) << "\n";
    return detection.certified ? kExitCertified : kExitOk;
}

int cmd_family(const std::string& preset, double beta, int steps, const std::string& out_file,
               std::ostream& out) {
    Manifest manifest("family");
    manifest.param("preset", preset);
    manifest.param("beta", beta);
    manifest.param("steps", steps);

    StateFamily family;
    if (preset == "depolarized-H")
        family = depolarized_h_family();
    else if (preset == "dephased-T")
        family = dephased_t_family();
    else if (preset == "ghz3")
        family = ghz3_family();
    else
        throw std::invalid_argument("unknown preset '" + preset + "'");

    ThermalContext ctx(family.hamiltonian, beta);
    FamilyThresholds thresholds = family_thresholds(family, beta);
    HeatWindow window = stab_heat_window(ctx, thresholds.e0);

    std::string manifest_path = manifest.path_for(out_file);
    io::CsvWriter csv(out_file, "family-sweep v1",
                      {"lambda", "e0", "entropy", "q_cold", "q_hot", "q_cold_stab", "q_hot_stab",
                       "verdict"},
                      manifest_path);
    for (int i = 0; i < steps; ++i) {
        double lambda = double(i) / double(steps - 1);
        DensityMatrix rho = family.state(lambda);
        OptimalHeat heat = ctx.optimal_heat(rho);
        bool certified = heat.q_cold < window.q_cold_stab || heat.q_hot > window.q_hot_stab;
        csv.row({io::format_double(lambda), io::format_double(thresholds.e0),
                 io::format_double(rho.entropy()), io::format_double(heat.q_cold),
                 io::format_double(heat.q_hot), io::format_double(window.q_cold_stab),
                 io::format_double(window.q_hot_stab), certified ? "certified" : "inconclusive"});
    }
    csv.close();
    manifest.output(out_file);
    manifest.write(manifest_path);

    json result{{"preset", preset},
                {"lambda_crt", thresholds.lambda_crt},
                {"lambda_star", thresholds.lambda_star},
                {"e0", thresholds.e0},
                {"s_min", thresholds.s_min},
                {"out", out_file}};
    result["manifest"] = manifest.finish();
    out << result.dump(2) << "\n";
    return kExitOk;
}

int cmd_tavis_cummings(const std::string& config_file, double lambda, double beta, double eps,
                       double g, int n_max, double t_end, int steps, const std::string& out_file,
                       std::ostream& out) {
    Manifest manifest("tavis-cummings");
    TavisCummingsConfig cfg;
    if (!config_file.empty()) {
        manifest.input(config_file);
        json doc = io::load_json(config_file);
        cfg.eps = doc.value("eps", 1.0);
        cfg.g = doc.value("g", 1.0);
        cfg.beta = doc.value("beta", 1.5);
        cfg.n_max = doc.value("n_max", 20);
        t_end = doc.value("t_end", t_end);
        steps = doc.value("steps", steps);
        lambda = doc.value("lambda", lambda);
    } else {
        cfg.eps = eps;
        cfg.g = g;
        cfg.beta = beta;
        cfg.n_max = n_max;
    }
    cfg.times = TavisCummingsConfig::uniform_times(t_end, steps);
    manifest.param("lambda", lambda);
    manifest.param("beta", cfg.beta);
    manifest.param("eps", cfg.eps);
    manifest.param("g", cfg.g);
    manifest.param("n_max", cfg.n_max);
    manifest.param("t_end", t_end);
    manifest.param("steps", steps);

    StateFamily family = tc_qubit_family();
    DensityMatrix rho = family.state(lambda);
    ThermalContext ctx(family.hamiltonian, cfg.beta);
    double e0 = ctx.energy(rho);
    HeatWindow window = stab_heat_window(ctx, e0);
    HeatTrace trace = simulate_heat_trace(cfg, rho);
    OverlayVerdict verdict = overlay_window(trace, window);

    std::string manifest_path = manifest.path_for(out_file);
    io::CsvWriter csv(out_file, "tavis-cummings-trace v1", {"t", "q", "verdict"}, manifest_path);
    for (size_t i = 0; i < trace.times.size(); ++i)
        csv.row({io::format_double(trace.times[i]), io::format_double(trace.heat[i]),
                 verdict.per_time[i] ? "certified" : "inconclusive"});
    csv.close();
    manifest.output(out_file);
    manifest.write(manifest_path);

    json result{{"e0", e0},
                {"q_cold_stab", window.q_cold_stab},
                {"q_hot_stab", window.q_hot_stab},
                {"any_certified", verdict.any_certified},
                {"first_crossing_time",
                 verdict.first_crossing >= 0 ? json(trace.times[verdict.first_crossing]) : json()},
                {"max_top_population", trace.max_top_population},
                {"out", out_file}};
    result["manifest"] = manifest.finish();
    out << result.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Energy and heat witnesses of nonstabilizerness"};
    app.set_version_flag("--version", std::string("magicwit ") + kVersion);
    app.require_subcommand(1);

    // gap
    auto* gap = app.add_subcommand("gap", "stabilizer gap of a Hamiltonian");
    std::string gap_file, psi_sweep;
    int tfim_n = 0, heis_n = 0, psi_grid = 201;
    double tfim_h = 1.0, bell_eps = 0.0;
    gap->add_option("--hamiltonian", gap_file, "Hamiltonian JSON file");
    gap->add_option("--tfim", tfim_n, "transverse-field Ising chain on n sites");
    gap->add_option("--h-field", tfim_h, "transverse field for --tfim")->default_val(1.0);
    gap->add_option("--heisenberg", heis_n, "ferromagnetic Heisenberg chain on n sites");
    auto* bell_opt = gap->add_option("--bell-perturbed", bell_eps, "perturbed Bell Hamiltonian");
    gap->add_option("--psi-sweep", psi_sweep, "CSV output for the (theta, phi) state sweep");
    gap->add_option("--grid", psi_grid, "sweep grid per axis")->default_val(201);

    // sweep-tfim
    auto* sweep = app.add_subcommand("sweep-tfim", "TFIM gap curve over a field range");
    int sweep_n = 100, sweep_steps = 200;
    double sweep_hmax = 2.0;
    std::string sweep_out = "tfim_sweep.csv";
    sweep->add_option("--n", sweep_n)->default_val(100);
    sweep->add_option("--h-max", sweep_hmax)->default_val(2.0);
    sweep->add_option("--steps", sweep_steps)->default_val(200);
    sweep->add_option("--out", sweep_out)->default_val("tfim_sweep.csv");

    // heat-window
    auto* window = app.add_subcommand("heat-window", "stabilizer heat window at an energy");
    SystemOptions window_sys;
    window_sys.attach(window);
    double window_beta = 1.0, window_e0 = 0.0;
    window->add_option("--beta", window_beta)->required();
    window->add_option("--e0", window_e0)->required();

    // detect
    auto* detect = app.add_subcommand("detect", "heat witness verdict for observed (E0, Q)");
    SystemOptions detect_sys;
    detect_sys.attach(detect);
    double detect_beta = 1.0, detect_e0 = 0.0, detect_q = 0.0, detect_de = 0.0, detect_dq = 0.0;
    detect->add_option("--beta", detect_beta)->required();
    detect->add_option("--e0", detect_e0)->required();
    detect->add_option("--q", detect_q)->required();
    detect->add_option("--de", detect_de, "energy error bar");
    detect->add_option("--dq", detect_dq, "heat error bar");

    // family
    auto* family = app.add_subcommand("family", "fixed-energy family sweep and thresholds");
    std::string family_preset, family_out = "family.csv";
    double family_beta = 1.0;
    int family_steps = 101;
    family->add_option("--preset", family_preset, "depolarized-H | dephased-T | ghz3")->required();
    family->add_option("--beta", family_beta)->default_val(1.0);
    family->add_option("--steps", family_steps)->default_val(101);
    family->add_option("--out", family_out)->default_val("family.csv");

    // tavis-cummings
    auto* tc = app.add_subcommand("tavis-cummings", "heat trace of the two-qubit cavity model");
    std::string tc_config, tc_out = "tc_trace.csv";
    double tc_lambda = 0.0, tc_beta = 1.5, tc_eps = 1.0, tc_g = 1.0, tc_tend = 10.0;
    int tc_nmax = 20, tc_steps = 201;
    tc->add_option("--config", tc_config, "JSON config file");
    tc->add_option("--lambda", tc_lambda)->default_val(0.0);
    tc->add_option("--beta", tc_beta)->default_val(1.5);
    tc->add_option("--eps", tc_eps)->default_val(1.0);
    tc->add_option("--g", tc_g)->default_val(1.0);
    tc->add_option("--n-max", tc_nmax)->default_val(20);
    tc->add_option("--t-end", tc_tend)->default_val(10.0);
    tc->add_option("--steps", tc_steps)->default_val(201);
    tc->add_option("--out", tc_out)->default_val("tc_trace.csv");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    try {
        if (gap->parsed())
            return cmd_gap(gap_file, tfim_n, tfim_h, heis_n, bell_eps, bell_opt->count() > 0,
                           psi_sweep, psi_grid, out);
        if (sweep->parsed()) return cmd_sweep_tfim(sweep_n, sweep_hmax, sweep_steps, sweep_out, out);
        if (window->parsed()) return cmd_heat_window(window_sys, window_beta, window_e0, out);
        if (detect->parsed())
            return cmd_detect(detect_sys, detect_beta, detect_e0, detect_q, detect_de, detect_dq, out);
        if (family->parsed()) return cmd_family(family_preset, family_beta, family_steps, family_out, out);
        if (tc->parsed())
            return cmd_tavis_cummings(tc_config, tc_lambda, tc_beta, tc_eps, tc_g, tc_nmax, tc_tend,
                                      tc_steps, tc_out, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    err << "error: no subcommand\n";
    return kExitInputError;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace magicwit::cli
