#pragma once

#include <vector>

#include <Eigen/Dense>

#include "magicwit/stabilizer.hpp"
#include "magicwit/thermo.hpp"

namespace magicwit {

/// Two qubits coupled to one truncated bosonic mode. Basis ordering is
/// |q0 q1> x |m> with the qubit pair as the most significant index.
struct TavisCummingsConfig {
    double eps = 1.0;   // atomic/mode frequency
    double g = 1.0;     // coupling
    double beta = 1.5;  // bath inverse temperature
    int n_max = 20;     // boson cutoff (>= 8)
    std::vector<double> times;

    static std::vector<double> uniform_times(double t_end, int steps);
    void check() const;
};

/// H = eps (Z1 + Z2) + eps a^dag a + g sum_j (sigma_j^dag a + sigma_j a^dag),
/// sigma_j = |0><1|_j, on dimension 4 (n_max + 1).
Eigen::MatrixXcd build_tc_hamiltonian(const TavisCummingsConfig& cfg);

/// Conserved excitation operator sum_j |1><1|_j + a^dag a.
Eigen::MatrixXcd tc_excitation_operator(const TavisCummingsConfig& cfg);

struct HeatTrace {
    std::vector<double> times;
    std::vector<double> heat;  // mode-energy change tr[H_E (eta_E(t) - gamma_E)]
    double max_top_population;  // truncation diagnostic
    bool truncation_ok;         // max_top_population < 1e-6
};

/// Exact propagation of rho_system x gamma_mode(beta) under the TC
/// Hamiltonian; heat is the mode-energy change.
HeatTrace simulate_heat_trace(const TavisCummingsConfig& cfg, const DensityMatrix& rho_system);

/// Max |Q_{n_max}(t) - Q_{2 n_max}(t)| over the grid (cutoff stability).
double cutoff_doubling_delta(const TavisCummingsConfig& cfg, const DensityMatrix& rho_system);

struct OverlayVerdict {
    std::vector<int> per_time;  // 1 = certified at that time
    bool any_certified;
    int first_crossing;  // index of the first certified time, -1 if none
};

/// Per-time heat-window verdicts for a trace.
OverlayVerdict overlay_window(const HeatTrace& trace, const HeatWindow& window);

}  // namespace magicwit
