#pragma once

#include <Eigen/Dense>

#include "magicwit/stabilizer.hpp"
#include "magicwit/thermo.hpp"

namespace magicwit {

/// T-type magic state, Bloch (1,1,1)/sqrt(3).
DensityMatrix t_state();
/// H-type magic state, Bloch (1,0,1)/sqrt(2).
DensityMatrix h_state();

/// Zeroes every off-diagonal element in the computational basis (dephasing in
/// the eigenbasis of the diagonal Z-sum Hamiltonians used by the families).
DensityMatrix dephase_diagonal(const DensityMatrix& rho);

/// Depolarized H-state family under H = (X - Y - Z)/sqrt(3): fixed energy 0,
/// tight heat witness (lambda_crt = lambda_star = 1 - 1/sqrt(2)).
StateFamily depolarized_h_family();

/// Dephased T-state family under H = Z: fixed energy 1/sqrt(3), non-tight
/// witness (lambda_crt = 1 - sqrt(2 - sqrt(3)) < lambda_star = (3 - sqrt(3))/2).
StateFamily dephased_t_family();

/// Three-qubit |psi> = (sqrt(3)|000> + e^{i pi/4}|111>)/2 mixed with its
/// dephasing, under H = Z1 + Z2 + Z3 (fixed energy 3/2).
StateFamily ghz3_family();

/// Two-qubit rho_T x rho_T mixed with its dephasing, under H = Z1 + Z2;
/// the initial state of the Tavis-Cummings runs.
StateFamily tc_qubit_family();

/// |psi(theta, phi)> = (1 x e^{-i phi X / 2}) (cos(theta)|00> + sin(theta)|11>).
Eigen::VectorXcd psi_theta_phi(double theta, double phi);

}  // namespace magicwit
