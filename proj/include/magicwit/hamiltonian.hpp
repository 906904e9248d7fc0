#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "magicwit/pauli.hpp"
#include "magicwit/stabilizer.hpp"

namespace magicwit {

/// Weighted Pauli Hamiltonian H = -sum_P w_P P with all w_P > 0; coefficient
/// signs are absorbed into each Pauli's stored sign. Terms are merged by
/// pattern and kept in lexicographic order.
class PauliHamiltonian {
  public:
    struct Term {
        PauliString op;  // signed; never the identity pattern
        double weight;   // > 0
    };

    /// From (coefficient, Pauli) pairs, H = sum_i coeff_i * pauli_i.
    /// Duplicate patterns merge; exact cancellations are dropped.
    static PauliHamiltonian from_coefficients(int n, const std::vector<std::pair<double, PauliString>>& terms);
    static PauliHamiltonian from_text_terms(int n, const std::vector<std::pair<double, std::string>>& terms);

    /// H = -sum_g w_g g over the group's chosen generating set (weights 1 by default).
    static PauliHamiltonian stabilizer_hamiltonian(const StabilizerGroup& group,
                                                   const std::vector<double>& weights = {});

    // Model builders (periodic boundary conditions).
    static PauliHamiltonian tfim(int n, double h);
    static PauliHamiltonian heisenberg(int n);
    /// H_Phi+(eps) = -XX - ZZ + eps (Z x 1 - 1 x Z).
    static PauliHamiltonian bell_perturbed(double eps);
    /// H = sum_i h_i . sigma_i for per-site field 3-vectors.
    static PauliHamiltonian local_fields(const std::vector<Eigen::Vector3d>& fields);

    int n() const { return n_; }
    const std::vector<Term>& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }
    double weight_sum() const;

    /// Signed coefficient of a pattern in H = -sum w P form: w if the stored
    /// term equals p, -w if it equals -p, 0 if absent.
    double coefficient(const PauliString& p) const;

    Eigen::MatrixXcd dense() const;  // n <= kMaxDenseQubits

    double energy(const DensityMatrix& rho) const;
    /// Character fast path, valid for any n <= kMaxQubits.
    double energy(const StabilizerState& state) const;

    PauliHamiltonian scaled(double factor) const;
    /// Term-wise sum (patterns merged, cancellations dropped).
    PauliHamiltonian plus(const PauliHamiltonian& other) const;

  private:
    int n_ = 0;
    std::vector<Term> terms_;
};

struct GroundEnergy {
    double value;
    int degeneracy;  // eigenvalues within 1e-9 of the minimum
};

/// Smallest eigenvalue by dense diagonalization (n <= kMaxDenseQubits).
GroundEnergy ground_energy_dense(const PauliHamiltonian& h);

/// Free-fermion ground energy of the periodic transverse-field Ising chain,
/// H = -sum_j (Z_j Z_{j+1} + h X_j); agrees with dense diagonalization.
double tfim_ground_energy(int n, double h);

/// Exact stabilizer ground energy of the TFIM, -n*max(1,h).
double tfim_stabilizer_energy(int n, double h);

struct LocalityReport {
    size_t term_count;
    int max_support;
    bool is_sparse;   // term_count <= poly_budget
    bool is_k_local;  // max_support <= k
};

LocalityReport locality_report(const PauliHamiltonian& h, size_t poly_budget, int k);

}  // namespace magicwit
