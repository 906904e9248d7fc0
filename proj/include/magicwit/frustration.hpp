#pragma once

#include <optional>
#include <string>
#include <vector>

#include "magicwit/hamiltonian.hpp"
#include "magicwit/pauli.hpp"
#include "magicwit/stabilizer.hpp"

namespace magicwit {

/// Anticommutation graph of a Hamiltonian's support: vertices are the signed
/// Pauli terms (Hamiltonian order), edges join anticommuting pairs.
struct FrustrationGraph {
    std::vector<PauliString> vertices;
    std::vector<double> weights;
    std::vector<std::vector<int>> adjacency;  // sorted neighbor lists, no self loops

    size_t size() const { return vertices.size(); }
    bool edge(int a, int b) const;
    /// Two-coloring when bipartite; nullopt otherwise.
    std::optional<std::vector<int>> bipartition() const;
    /// Edge-list text: "V <count>" header, vertex lines "v <idx> <pauli> <w>",
    /// then "e <a> <b>" lines.
    std::string edge_list() const;
};

FrustrationGraph build_graph(const PauliHamiltonian& h);

/// A maximal commuting subset of the Hamiltonian's terms together with the
/// best consistent sign assignment. `agreement[k]` is +1 when the associated
/// stabilizer group contains the stored term exactly and -1 when it contains
/// its negation (forced by product phases among dependent patterns).
/// signed_weight = sum w_k * agreement_k; the best achievable stabilizer
/// energy over this subset is -signed_weight.
struct CommutingSubset {
    std::vector<int> members;
    std::vector<int> agreement;
    double signed_weight = 0.0;
    /// Independent signed generators realizing the assignment (extendable to a
    /// full stabilizer state).
    std::vector<PauliString> generators;

    /// True when every agreement is +1, i.e. the members with their stored
    /// signs form a stabilizer-group-compatible set.
    bool all_consistent() const;
};

/// All maximal commuting subsets of the support (<= 30 terms), each with its
/// optimal sign assignment. Deterministic order.
std::vector<CommutingSubset> enumerate_cmax(const PauliHamiltonian& h);

/// True iff the members, taken with their stored signs, all lie in a common
/// stabilizer group (no -1 forced by dependencies).
bool subset_sign_consistent(const PauliHamiltonian& h, const std::vector<int>& members);

struct MwisResult {
    std::vector<int> members;  // sorted ascending; lexicographically smallest optimum
    double weight = 0.0;
};

/// Exact maximum-weight independent set. Branch and bound with a greedy lower
/// bound and a weighted-clique-cover upper bound (<= 40 vertices), or a
/// max-flow reduction when the graph is bipartite (no size cap).
MwisResult mwis_exact(const FrustrationGraph& g);

/// Checks the sum-of-stabilizers decomposition: the groups' generators must
/// equal the support exactly (signed), and the groups must be jointly
/// independent (total symplectic rank = sum of ranks).
bool is_sum_of_stabilizers(const PauliHamiltonian& h, const std::vector<StabilizerGroup>& groups);

/// Literal subset sweep of the independence premise; for cross-checks, l <= 12.
bool sum_of_stabilizers_literal_check(const std::vector<StabilizerGroup>& groups);

}  // namespace magicwit
