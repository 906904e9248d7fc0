#pragma once

#include <optional>
#include <string>
#include <vector>

#include "magicwit/frustration.hpp"
#include "magicwit/hamiltonian.hpp"
#include "magicwit/stabilizer.hpp"

namespace magicwit {

enum class StabMethod { Enumeration, Cmax, Mwis, ClosedForm };

const char* stab_method_name(StabMethod m);

/// Stabilizer ground energy with a re-checkable optimizer certificate.
struct StabEnergyResult {
    double value;
    StabMethod method;
    /// Index into enumerate_pure_states(n) for the enumeration method.
    std::optional<int> vertex_index;
    /// Optimal commuting subset for the cmax/mwis methods.
    std::optional<CommutingSubset> subset;

    /// Re-evaluates the certificate through the energy evaluator; throws when
    /// it disagrees with `value` beyond 1e-10.
    void check_certificate(const PauliHamiltonian& h) const;
};

/// Exact minimum over all polytope vertices via stabilizer characters (n <= 3).
StabEnergyResult stab_energy_enumeration(const PauliHamiltonian& h);

/// Via maximal commuting subsets with optimal sign assignments (<= 30 terms).
StabEnergyResult stab_energy_cmax(const PauliHamiltonian& h);

/// Via MWIS on the frustration graph; requires is_sum_of_stabilizers(h, groups).
StabEnergyResult stab_energy_mwis(const PauliHamiltonian& h,
                                  const std::vector<StabilizerGroup>& groups);

/// Best available route: cmax within budget, else bipartite MWIS.
StabEnergyResult stab_energy(const PauliHamiltonian& h);

struct GapReport {
    double e_stab;
    double e_gs;
    double delta;  // e_stab - e_gs, >= 0 up to 1e-10
};

/// Gap with dense ground energy (n <= kMaxDenseQubits).
GapReport stabilizer_gap(const PauliHamiltonian& h);
/// Gap against a caller-supplied ground energy (analytic models).
GapReport stabilizer_gap_with(const PauliHamiltonian& h, double e_gs);

struct WitnessVerdict {
    bool certified;  // E_measured < E_STAB - error_bar
    double e_stab;
    double margin;  // E_STAB - E_measured
};

/// Direct energy witness. error_bar widens the inconclusive band; the default
/// compares strictly against E_STAB.
WitnessVerdict witness_energy(const PauliHamiltonian& h, double e_measured, double error_bar = 0.0);

}  // namespace magicwit
