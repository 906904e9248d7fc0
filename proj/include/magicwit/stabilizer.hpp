#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "magicwit/pauli.hpp"

namespace magicwit {

/// Abelian subgroup of the signed Pauli group not containing -identity,
/// described by an independent generating set. Immutable after validation.
class StabilizerGroup {
  public:
    /// Validates generators: nonempty, equal n, pairwise commuting, no -1 in
    /// the generated group, all independent. Throws std::invalid_argument with
    /// a diagnosis otherwise.
    static StabilizerGroup validate(std::vector<PauliString> generators);

    /// Like validate, but keeps sign-consistent dependent generators in the
    /// listed set (rank counts independent ones). Periodic-chain bond families
    /// need this: the ring product of ZZ bonds is the identity.
    static StabilizerGroup validate_family(std::vector<PauliString> generators);

    int n() const { return n_; }
    int rank() const { return int(echelon_.size()); }
    const std::vector<PauliString>& generators() const { return generators_; }

    /// Stabilizer character: +1 if p in the group, -1 if -p is, 0 otherwise.
    int character(const PauliString& p) const;
    bool contains(const PauliString& p) const { return character(p) == +1; }

    /// All 2^rank signed elements (identity included).
    std::vector<PauliString> elements() const;

    /// One signed Pauli per line.
    std::string serialize() const;
    static StabilizerGroup deserialize(const std::string& text);

  private:
    StabilizerGroup() = default;
    static StabilizerGroup build(std::vector<PauliString> generators, bool keep_dependent);
    int n_ = 0;
    std::vector<PauliString> generators_;
    // Row-reduced echelon basis over GF(2) symplectic vectors; each row keeps
    // the realizing signed Pauli (a product of generators).
    struct EchelonRow {
        int pivot;
        PauliString product;
    };
    std::vector<EchelonRow> echelon_;

    friend StabilizerGroup extend_to_rank_n(const StabilizerGroup&);
};

/// Rank-n group: stabilizes a unique pure state.
class StabilizerState {
  public:
    explicit StabilizerState(StabilizerGroup group);
    const StabilizerGroup& group() const { return group_; }
    int n() const { return group_.n(); }

    int expectation(const PauliString& p) const { return group_.character(p); }

    /// Unit state vector stabilized by every generator (n <= kMaxDenseQubits).
    Eigen::VectorXcd state_vector() const;

  private:
    StabilizerGroup group_;
};

/// Deterministically completes a group to rank n by appending canonical
/// commuting generators with + signs.
StabilizerGroup extend_to_rank_n(const StabilizerGroup& group);

/// All pure stabilizer states for n in 1..3 (6, 60, 1080 states).
/// The list is cached; order is deterministic.
const std::vector<StabilizerState>& enumerate_pure_states(int n);

/// Validated density operator (trace one, Hermitian, PSD within tolerance).
class DensityMatrix {
  public:
    explicit DensityMatrix(Eigen::MatrixXcd rho, double psd_tol = 1e-10);
    static DensityMatrix from_state_vector(const Eigen::VectorXcd& psi);
    static DensityMatrix from_bloch(double rx, double ry, double rz);
    static DensityMatrix maximally_mixed(int n);

    const Eigen::MatrixXcd& matrix() const { return rho_; }
    int n() const { return n_; }
    Eigen::Index dim() const { return rho_.rows(); }

    /// Von Neumann entropy in natural-log units.
    double entropy() const;
    /// Bloch vector (n = 1 only).
    Eigen::Vector3d bloch() const;

  private:
    Eigen::MatrixXcd rho_;
    int n_ = 0;
};

enum class MembershipVerdict { Inside, Boundary, Outside };

struct MembershipResult {
    MembershipVerdict verdict;
    /// Phase-1 infeasibility margin (L1 constraint violation); ~0 when inside.
    double margin = 0.0;
    /// Convex decomposition over enumerate_pure_states(n) indices when inside.
    std::vector<std::pair<int, double>> weights;
    bool inside_or_boundary() const { return verdict != MembershipVerdict::Outside; }
};

/// Stabilizer-polytope membership by linear feasibility over the 4^n real
/// Pauli-expectation coordinates (n <= 3). boundary_tol is the margin below
/// which an infeasible point is reported as Boundary.
MembershipResult polytope_membership(const DensityMatrix& rho, int n, double boundary_tol = 1e-8);

}  // namespace magicwit
