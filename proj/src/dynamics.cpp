#include "magicwit/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace magicwit {

std::vector<double> TavisCummingsConfig::uniform_times(double t_end, int steps) {
    if (t_end <= 0 || steps < 2) throw std::invalid_argument("uniform_times: bad grid");
    std::vector<double> times(steps);
    for (int i = 0; i < steps; ++i) times[i] = t_end * double(i) / double(steps - 1);
    return times;
}

void TavisCummingsConfig::check() const {
    if (n_max < 8) throw std::invalid_argument("TavisCummingsConfig: n_max must be >= 8");
    if (times.empty() || times[0] != 0.0)
        throw std::invalid_argument("TavisCummingsConfig: time grid must start at 0");
    for (size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1])
            throw std::invalid_argument("TavisCummingsConfig: time grid must increase strictly");
}

namespace {

// Index helpers: state = q * (n_max+1) + m, q in 0..3 encodes |q0 q1> with q0
// as the most significant qubit bit.
inline int idx(int q, int m, int modes) { return q * modes + m; }

}  // namespace

Eigen::MatrixXcd build_tc_hamiltonian(const TavisCummingsConfig& cfg) {
    cfg.check();
    int modes = cfg.n_max + 1;
    int dim = 4 * modes;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);

    auto qubit_bit = [](int q, int j) { return (q >> (1 - j)) & 1; };  // j = 0 is MSB

    for (int q = 0; q < 4; ++q) {
        double zsum = (qubit_bit(q, 0) ? -1.0 : 1.0) + (qubit_bit(q, 1) ? -1.0 : 1.0);
        for (int m = 0; m < modes; ++m)
            h(idx(q, m, modes), idx(q, m, modes)) = cfg.eps * (zsum + double(m));
    }
    // g (sigma_j^dag a + sigma_j a^dag): sigma^dag = |1><0| absorbs a photon.
    for (int j = 0; j < 2; ++j) {
        for (int q = 0; q < 4; ++q) {
            if (qubit_bit(q, j) != 0) continue;   // need |0> at qubit j
            int q_up = q ^ (1 << (1 - j));        // flip to |1>
            for (int m = 1; m < modes; ++m) {
                double amp = cfg.g * std::sqrt(double(m));
                h(idx(q_up, m - 1, modes), idx(q, m, modes)) += amp;
                h(idx(q, m, modes), idx(q_up, m - 1, modes)) += amp;
            }
        }
    }
    return h;
}

Eigen::MatrixXcd tc_excitation_operator(const TavisCummingsConfig& cfg) {
    int modes = cfg.n_max + 1;
    int dim = 4 * modes;
    Eigen::MatrixXcd n_op = Eigen::MatrixXcd::Zero(dim, dim);
    for (int q = 0; q < 4; ++q) {
        double excited = double((q >> 1) & 1) + double(q & 1);
        for (int m = 0; m < modes; ++m)
            n_op(idx(q, m, modes), idx(q, m, modes)) = excited + double(m);
    }
    return n_op;
}

HeatTrace simulate_heat_trace(const TavisCummingsConfig& cfg, const DensityMatrix& rho_system) {
    cfg.check();
    if (rho_system.dim() != 4)
        throw std::invalid_argument("simulate_heat_trace: system must be two qubits");
    int modes = cfg.n_max + 1;
    int dim = 4 * modes;

    // Truncated Gibbs state of the free mode, renormalized on the cutoff space.
    Eigen::VectorXd gamma(modes);
    double z = 0.0;
    for (int m = 0; m < modes; ++m) {
        gamma[m] = std::exp(-cfg.beta * cfg.eps * double(m));
        z += gamma[m];
    }
    gamma /= z;

    Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(dim, dim);
    for (int q = 0; q < 4; ++q)
        for (int p = 0; p < 4; ++p)
            for (int m = 0; m < modes; ++m)
                rho0(idx(q, m, modes), idx(p, m, modes)) = rho_system.matrix()(q, p) * gamma[m];

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(build_tc_hamiltonian(cfg));
    const Eigen::MatrixXcd& basis = es.eigenvectors();
    Eigen::MatrixXcd rho_eig = basis.adjoint() * rho0 * basis;

    double gamma_energy = 0.0;
    for (int m = 0; m < modes; ++m) gamma_energy += cfg.eps * double(m) * gamma[m];

    HeatTrace trace;
    trace.times = cfg.times;
    trace.max_top_population = 0.0;
    for (double t : cfg.times) {
        Eigen::MatrixXcd eta;
        if (t == 0.0) {
            eta = rho0;  // exact start: Q(0) is identically zero
        } else {
            Eigen::VectorXcd phases(dim);
            for (int k = 0; k < dim; ++k)
                phases[k] = std::exp(std::complex<double>(0.0, -es.eigenvalues()[k] * t));
            Eigen::MatrixXcd rotated(dim, dim);
            for (int k = 0; k < dim; ++k)
                for (int l = 0; l < dim; ++l)
                    rotated(k, l) = phases[k] * rho_eig(k, l) * std::conj(phases[l]);
            eta = basis * rotated * basis.adjoint();
        }

        double mode_energy = 0.0, top = 0.0;
        for (int m = 0; m < modes; ++m) {
            double pop = 0.0;
            for (int q = 0; q < 4; ++q) pop += eta(idx(q, m, modes), idx(q, m, modes)).real();
            mode_energy += cfg.eps * double(m) * pop;
            if (m == modes - 1) top = pop;
        }
        trace.heat.push_back(mode_energy - gamma_energy);
        trace.max_top_population = std::max(trace.max_top_population, top);
    }
    trace.truncation_ok = trace.max_top_population < 1e-6;
    if (!trace.truncation_ok)
        throw std::runtime_error("simulate_heat_trace: boson cutoff too small (top-level population " +
                                 std::to_string(trace.max_top_population) + ")");
    return trace;
}

double cutoff_doubling_delta(const TavisCummingsConfig& cfg, const DensityMatrix& rho_system) {
    TavisCummingsConfig doubled = cfg;
    doubled.n_max = 2 * cfg.n_max;
    HeatTrace a = simulate_heat_trace(cfg, rho_system);
    HeatTrace b = simulate_heat_trace(doubled, rho_system);
    double delta = 0.0;
    for (size_t i = 0; i < a.heat.size(); ++i)
        delta = std::max(delta, std::abs(a.heat[i] - b.heat[i]));
    return delta;
}

OverlayVerdict overlay_window(const HeatTrace& trace, const HeatWindow& window) {
    OverlayVerdict verdict;
    verdict.any_certified = false;
    verdict.first_crossing = -1;
    for (size_t i = 0; i < trace.heat.size(); ++i) {
        bool outside = trace.heat[i] < window.q_cold_stab || trace.heat[i] > window.q_hot_stab;
        verdict.per_time.push_back(outside ? 1 : 0);
        if (outside && verdict.first_crossing < 0) verdict.first_crossing = int(i);
        verdict.any_certified |= outside;
    }
    return verdict;
}

}  // namespace magicwit
