#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "magicwit/hamiltonian.hpp"
#include "magicwit/stabilizer.hpp"

namespace magicwit {

/// Three-way partition of a perturbation's terms relative to a base group Q:
/// group members (character +/-1), logical operators (centralize Q without
/// being in its span) and the perpendicular part (anticommute with some
/// element of Q). Indices refer to the perturbation's term list.
struct PerturbationSplit {
    std::vector<int> group_members;   // character +1
    std::vector<int> negated_members; // character -1 (stored sign opposite)
    std::vector<int> logical;
    std::vector<int> perp;
};

PerturbationSplit split_perturbation(const StabilizerGroup& q, const PauliHamiltonian& v);

/// Lemma-1 coupling condition for a nondegenerate base: (1 - |S><S|) V |S> != 0.
/// Throws when the base group is not rank n (degenerate path required).
bool check_coupling(const StabilizerGroup& h0, const PauliHamiltonian& v);

/// Weak-perturbation premise:
///   sum_{P in P(V) \ Q} w_P  <  Delta_gap - 2 sum_{P in P(V) cap Q} w_P,
/// with Delta_gap = 2 min_g w_g over the base generators (strict inequality).
bool weak_perturbation_check(const StabilizerGroup& q, const std::vector<double>& gen_weights,
                             const PauliHamiltonian& v);

/// Variational family psi'(lambda) = (psi' - lambda V_perp psi') / norm with
/// the guaranteed energy-gain window (0, lambda_max).
struct VariationalReport {
    double v_perp_sq;     // <V_perp^2>
    double a;             // <V_perp H V_perp> - <V_perp^2><H>
    double lambda_max;    // min(2v/a, (sqrt(a^2+4v^3)-a)/(2v^2))
    double base_energy;   // <H> on the code state
    Eigen::VectorXcd base_state;
    Eigen::VectorXcd perp_action;  // V_perp |psi'>

    /// Energy gain Delta E(lambda) = lambda (2v - a lambda) / (1 + v lambda^2).
    double delta_e(double lambda) const;
    /// Normalized variational state.
    Eigen::VectorXcd state(double lambda) const;
    /// <H> on state(lambda) = base_energy - delta_e(lambda).
    double energy(double lambda) const { return base_energy - delta_e(lambda); }
};

/// Builds the variational report for a code state of Q (defaults to the first
/// canonical code-basis state with <V_perp^2> != 0). Internally cross-checks
/// the character-algebra and dense-matrix routes for v and a. Throws on
/// premise failure with a named reason.
VariationalReport variational_state(const StabilizerGroup& q, const std::vector<double>& gen_weights,
                                    const PauliHamiltonian& v,
                                    std::optional<Eigen::VectorXcd> code_state = std::nullopt);

struct PerturbationCertificate {
    bool certified;
    std::vector<std::string> failed_premises;  // nonempty iff !certified
    double lambda = 0.0;                       // midpoint of (0, lambda_max)
    double energy = 0.0;                       // strictly below E_STAB when certified
    double e_stab = 0.0;
    std::optional<VariationalReport> report;
};

/// Full Lemma-5 pipeline for H = H_Q + V: premise checks, variational state,
/// and the witnessed energy below the stabilizer ground energy.
PerturbationCertificate certify_gap_by_perturbation(const StabilizerGroup& q,
                                                    const std::vector<double>& gen_weights,
                                                    const PauliHamiltonian& v);

}  // namespace magicwit
