#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "magicwit/hamiltonian.hpp"
#include "magicwit/stabilizer.hpp"

namespace magicwit {

/// Gibbs-curve sample at effective inverse temperature x (natural-log units).
struct GibbsPoint {
    double x;
    double energy;
    double entropy;
    double free_energy;  // energy - entropy / beta
};

struct EffectiveTemperatures {
    double x_cold;  // <= beta; meaningful only when !cooling_clamped
    double x_hot;   // >= beta; meaningful only when !heating_clamped
    bool cooling_clamped;  // no finite root; maximal-energy state used
    bool heating_clamped;  // no finite root; minimal-energy state used
    double energy_cold;    // E[gamma(x_cold)] or the clamped extremal energy
    double energy_hot;
};

struct OptimalHeat {
    double q_cold;  // E(rho) - E[gamma(x_cold)]
    double q_hot;
    EffectiveTemperatures roots;
};

/// System Hamiltonian + bath inverse temperature; owns the spectral cache,
/// Gibbs curves and free-energy root solving. beta is dimensionless.
class ThermalContext {
  public:
    ThermalContext(PauliHamiltonian h, double beta);

    int n() const { return h_.n(); }
    double beta() const { return beta_; }
    const PauliHamiltonian& hamiltonian() const { return h_; }
    const Eigen::VectorXd& spectrum() const { return evals_; }

    GibbsPoint gibbs(double x) const;
    double energy(const DensityMatrix& rho) const { return h_.energy(rho); }
    /// Nonequilibrium free energy E - S/beta.
    double free_energy(const DensityMatrix& rho) const;

    /// Solves F_beta[gamma(x)] = f_target on both monotone branches.
    /// Throws when f_target is below the equilibrium minimum.
    EffectiveTemperatures solve_effective_temperatures(double f_target) const;

    OptimalHeat optimal_heat(const DensityMatrix& rho) const;
    OptimalHeat optimal_heat_from(double e0, double entropy) const;

    double x_max() const { return x_max_; }

  private:
    PauliHamiltonian h_;
    double beta_;
    Eigen::VectorXd evals_;  // ascending
    bool qubit_closed_form_;
    double x_max_;
    int deg_min_, deg_max_;
};

/// Minimum entropy over the stabilizer slice {sigma in STAB_n : E = e0}, by
/// sweeping on-slice vertices (S = 0) and all vertex-pair segment crossings.
struct SliceMinEntropy {
    double s_min;
    int vertex_a;  // on-slice vertex when vertex_b < 0
    int vertex_b;  // second endpoint of the optimal crossing segment
    double t;      // mixing weight toward vertex_b
};

/// Throws std::domain_error when the slice is empty (energy alone certifies).
SliceMinEntropy smin_stab_slice(const ThermalContext& ctx, double e0);

bool slice_nonempty(const ThermalContext& ctx, double e0);

struct HeatWindow {
    double e0;
    double s_min;
    double f_star;  // e0 - s_min / beta
    double q_cold_stab;
    double q_hot_stab;
    bool cooling_clamped;
    bool heating_clamped;
};

/// Stabilizer heat window at measured energy e0 (n <= 3).
HeatWindow stab_heat_window(const ThermalContext& ctx, double e0);

struct HeatDetection {
    bool certified;
    bool empty_slice;  // energy estimate alone rules out stabilizer states
    std::optional<HeatWindow> window;
};

/// Heat witness verdict for an observed (e0, q) with optional error bars:
/// certified iff q +/- dq lies entirely outside the stabilizer window over
/// the e0 +/- de range.
HeatDetection detect_heat(const ThermalContext& ctx, double e0, double q, double de = 0.0,
                          double dq = 0.0);

/// Maximal Bloch radius over the octahedron slice {s : |s|_1 <= 1, h.s = e0}
/// for a unit field h. Exact edge/vertex enumeration. Throws std::domain_error
/// when the slice is empty.
double r_star(const Eigen::Vector3d& h_unit, double e0);

struct QubitDetection {
    bool certified;
    double r_norm;
    double r_threshold;  // R*(h.r); +inf marker when the slice is empty
};

/// Single-qubit heat-detectability criterion: certified iff |r|_2 > R*(h.r).
QubitDetection detect_qubit(const Eigen::Vector3d& bloch, const Eigen::Vector3d& h_unit);

/// One-parameter state family at fixed energy.
struct StateFamily {
    std::string name;
    int n;
    PauliHamiltonian hamiltonian;
    std::function<DensityMatrix(double)> state;  // lambda in [0, 1]
};

struct FamilyThresholds {
    double lambda_crt;   // heat witness stops detecting
    double lambda_star;  // family enters the stabilizer polytope
    double e0;
    double s_min;
};

/// Detection and membership thresholds along the family. Validates that the
/// energy is constant and the entropy monotone before claiming thresholds.
FamilyThresholds family_thresholds(const StateFamily& family, double beta,
                                   double lambda_tol = 1e-9, double star_tol = 1e-8);

/// Binary entropy in nats.
double binary_entropy(double p);

}  // namespace magicwit
