#include "magicwit/stabilizer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace magicwit {

namespace {

struct SymplecticVec {
    uint64_t x = 0, z = 0;
    bool zero() const { return x == 0 && z == 0; }
    SymplecticVec operator^(const SymplecticVec& o) const { return {x ^ o.x, z ^ o.z}; }
};

// Column order x0..x_{n-1}, z0..z_{n-1}; pivot = first set column.
int first_column(const SymplecticVec& v, int n) {
    for (int c = 0; c < n; ++c)
        if ((v.x >> c) & 1) return c;
    for (int c = 0; c < n; ++c)
        if ((v.z >> c) & 1) return n + c;
    return -1;
}

bool has_column(const SymplecticVec& v, int c, int n) {
    return c < n ? ((v.x >> c) & 1) : ((v.z >> (c - n)) & 1);
}

SymplecticVec vec_of(const PauliString& p) { return {p.x_bits(), p.z_bits()}; }

}  // namespace

namespace {
enum class DependentPolicy { Reject, KeepConsistent };
}

StabilizerGroup StabilizerGroup::validate(std::vector<PauliString> generators) {
    return build(std::move(generators), false);
}

StabilizerGroup StabilizerGroup::validate_family(std::vector<PauliString> generators) {
    return build(std::move(generators), true);
}

StabilizerGroup StabilizerGroup::build(std::vector<PauliString> generators, bool keep_dependent) {
    if (generators.empty()) throw std::invalid_argument("StabilizerGroup: no generators");
    int n = generators[0].n();
    for (const auto& g : generators)
        if (g.n() != n) throw std::invalid_argument("StabilizerGroup: mixed qubit counts");
    for (size_t i = 0; i < generators.size(); ++i)
        for (size_t j = i + 1; j < generators.size(); ++j)
            if (!generators[i].commutes_with(generators[j]))
                throw std::invalid_argument("StabilizerGroup: generators " + generators[i].str() +
                                            " and " + generators[j].str() + " anticommute");

    StabilizerGroup group;
    group.n_ = n;
    for (const auto& g : generators) {
        // Reduce g against the echelon rows; the accumulated product tracks signs.
        SymplecticVec v = vec_of(g);
        PauliString acc = g;
        for (const auto& row : group.echelon_) {
            if (!has_column(v, row.pivot, n)) continue;
            auto prod = multiply(acc, row.product);
            if (!prod.real())
                throw std::logic_error("StabilizerGroup: imaginary phase among commuting Paulis");
            acc = prod.value;
            v = v ^ vec_of(row.product);
        }
        if (v.zero()) {
            if (acc.sign() < 0)
                throw std::invalid_argument("StabilizerGroup: -identity in group (generator " +
                                            g.str() + " closes a -1 product)");
            if (!keep_dependent)
                throw std::invalid_argument("StabilizerGroup: dependent generator " + g.str());
            group.generators_.push_back(g);  // consistent redundancy, listed but rankless
            continue;
        }
        group.echelon_.push_back({first_column(v, n), acc});
        // Keep echelon ordered by pivot for deterministic reduction.
        std::sort(group.echelon_.begin(), group.echelon_.end(),
                  [](const EchelonRow& a, const EchelonRow& b) { return a.pivot < b.pivot; });
        // Re-reduce rows below pivots (full RREF keeps reductions canonical).
        for (size_t i = 0; i < group.echelon_.size(); ++i) {
            for (size_t j = 0; j < group.echelon_.size(); ++j) {
                if (i == j) continue;
                SymplecticVec vi = vec_of(group.echelon_[i].product);
                if (has_column(vi, group.echelon_[j].pivot, n)) {
                    auto prod = multiply(group.echelon_[i].product, group.echelon_[j].product);
                    group.echelon_[i].product = prod.value;
                }
            }
        }
        if (group.rank() > n) throw std::logic_error("StabilizerGroup: rank exceeds qubit count");
        group.generators_.push_back(g);
    }
    return group;
}

int StabilizerGroup::character(const PauliString& p) const {
    if (p.n() != n_) throw std::invalid_argument("character: mismatched qubit counts");
    SymplecticVec v = vec_of(p);
    PauliString acc = PauliString::identity(n_);
    for (const auto& row : echelon_) {
        if (!has_column(v, row.pivot, n_)) continue;
        auto prod = multiply(acc, row.product);
        acc = prod.value;
        v = v ^ vec_of(row.product);
    }
    if (!v.zero()) return 0;
    // acc now has p's pattern; compare signs.
    return acc.sign() == p.sign() ? +1 : -1;
}

std::vector<PauliString> StabilizerGroup::elements() const {
    std::vector<PauliString> out{PauliString::identity(n_)};
    for (const auto& row : echelon_) {
        size_t count = out.size();
        for (size_t i = 0; i < count; ++i) {
            auto prod = multiply(out[i], row.product);
            out.push_back(prod.value);
        }
    }
    return out;
}

std::string StabilizerGroup::serialize() const {
    std::string out;
    for (const auto& g : generators_) {
        out += g.str();
        out.push_back('\n');
    }
    return out;
}

StabilizerGroup StabilizerGroup::deserialize(const std::string& text) {
    std::vector<PauliString> gens;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        gens.push_back(PauliString::parse(line));
    }
    return validate(std::move(gens));
}

StabilizerGroup extend_to_rank_n(const StabilizerGroup& group) {
    StabilizerGroup out = group;
    int n = group.n();
    for (uint64_t id = 1; out.rank() < n && id < (uint64_t(1) << (2 * n)); ++id) {
        uint64_t x = id & ((uint64_t(1) << n) - 1);
        uint64_t z = id >> n;
        PauliString cand = PauliString::make(n, x, z, +1);
        bool commuting = true;
        for (const auto& g : out.generators())
            if (!cand.commutes_with(g)) { commuting = false; break; }
        if (!commuting) continue;
        if (out.character(cand) != 0) continue;  // dependent on current group
        std::vector<PauliString> gens = out.generators();
        gens.push_back(cand);
        out = StabilizerGroup::validate_family(std::move(gens));
    }
    if (out.rank() < n) throw std::logic_error("extend_to_rank_n: completion failed");
    return out;
}

StabilizerState::StabilizerState(StabilizerGroup group) : group_(std::move(group)) {
    if (group_.rank() != group_.n())
        throw std::invalid_argument("StabilizerState: group rank " + std::to_string(group_.rank()) +
                                    " != qubit count " + std::to_string(group_.n()));
}

Eigen::VectorXcd StabilizerState::state_vector() const {
    int n = group_.n();
    if (n > kMaxDenseQubits) throw std::invalid_argument("state_vector: too many qubits");
    Eigen::Index dim = Eigen::Index(1) << n;
    for (Eigen::Index k = 0; k < dim; ++k) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
        v[k] = 1.0;
        for (const auto& g : group_.generators()) v = 0.5 * (v + apply_pauli(g, v));
        double norm = v.norm();
        if (norm > 1e-9) return v / norm;
    }
    throw std::logic_error("state_vector: projector annihilated every basis vector");
}

namespace {

std::vector<StabilizerState> build_pure_states(int n) {
    // Enumerate Lagrangian (maximal isotropic) subspaces of F_2^{2n} via
    // commuting independent pattern tuples, deduplicated by RREF form, then
    // attach all 2^n sign assignments to the canonical basis.
    const uint64_t num_patterns = (uint64_t(1) << (2 * n));
    auto symplectic_orthogonal = [&](uint64_t a, uint64_t b) {
        uint64_t ax = a & ((1u << n) - 1), az = a >> n;
        uint64_t bx = b & ((1u << n) - 1), bz = b >> n;
        return ((std::popcount(ax & bz) + std::popcount(az & bx)) & 1) == 0;
    };

    // RREF of a set of pattern vectors (2n columns, x part then z part).
    auto rref = [&](std::vector<uint64_t> rows) {
        std::vector<uint64_t> out;
        for (uint64_t r : rows) {
            for (uint64_t o : out) {
                uint64_t lead = o & ~(o - 1);
                if (r & lead) r ^= o;
            }
            if (r) out.push_back(r);
            for (size_t i = 0; i < out.size(); ++i)
                for (size_t j = 0; j < out.size(); ++j) {
                    if (i == j) continue;
                    uint64_t lead = out[j] & ~(out[j] - 1);
                    if (out[i] & lead) out[i] ^= out[j];
                }
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    std::set<std::vector<uint64_t>> subspaces;
    std::vector<uint64_t> picked;
    // Depth-first choice of commuting independent patterns.
    auto grow = [&](auto&& self, uint64_t start) -> void {
        if (int(picked.size()) == n) {
            auto canon = rref(picked);
            if (int(canon.size()) == n) subspaces.insert(canon);
            return;
        }
        for (uint64_t id = start; id < num_patterns; ++id) {
            bool ok = true;
            for (uint64_t q : picked)
                if (!symplectic_orthogonal(id, q)) { ok = false; break; }
            if (!ok) continue;
            picked.push_back(id);
            if (int(rref(picked).size()) == int(picked.size())) self(self, id + 1);
            picked.pop_back();
        }
    };
    grow(grow, 1);

    std::vector<StabilizerState> states;
    for (const auto& basis : subspaces) {
        for (uint64_t signs = 0; signs < (uint64_t(1) << n); ++signs) {
            std::vector<PauliString> gens;
            for (int i = 0; i < n; ++i) {
                uint64_t id = basis[i];
                uint64_t x = id & ((1u << n) - 1), z = id >> n;
                gens.push_back(PauliString::make(n, x, z, ((signs >> i) & 1) ? -1 : +1));
            }
            states.emplace_back(StabilizerGroup::validate(std::move(gens)));
        }
    }
    return states;
}

}  // namespace

const std::vector<StabilizerState>& enumerate_pure_states(int n) {
    if (n < 1 || n > 3) throw std::invalid_argument("enumerate_pure_states: n must be 1..3");
    static const std::vector<StabilizerState> cache1 = build_pure_states(1);
    static const std::vector<StabilizerState> cache2 = build_pure_states(2);
    static const std::vector<StabilizerState> cache3 = build_pure_states(3);
    switch (n) {
        case 1: return cache1;
        case 2: return cache2;
        default: return cache3;
    }
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd rho, double psd_tol) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() < 2)
        throw std::invalid_argument("DensityMatrix: not square");
    Eigen::Index dim = rho_.rows();
    n_ = 0;
    while ((Eigen::Index(1) << n_) < dim) ++n_;
    if ((Eigen::Index(1) << n_) != dim)
        throw std::invalid_argument("DensityMatrix: dimension is not a power of two");
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(rho_.trace().real() - 1.0) > 1e-9 || std::abs(rho_.trace().imag()) > 1e-12)
        throw std::invalid_argument("DensityMatrix: trace != 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -psd_tol)
        throw std::invalid_argument("DensityMatrix: not positive semidefinite");
}

DensityMatrix DensityMatrix::from_state_vector(const Eigen::VectorXcd& psi) {
    double norm = psi.norm();
    if (norm < 1e-12) throw std::invalid_argument("DensityMatrix: zero state vector");
    Eigen::VectorXcd u = psi / norm;
    return DensityMatrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::from_bloch(double rx, double ry, double rz) {
    Eigen::MatrixXcd rho(2, 2);
    std::complex<double> i(0, 1);
    rho << 0.5 * (1 + rz), 0.5 * (rx - i * ry), 0.5 * (rx + i * ry), 0.5 * (1 - rz);
    return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
    Eigen::Index dim = Eigen::Index(1) << n;
    return DensityMatrix(Eigen::MatrixXcd::Identity(dim, dim) / double(dim));
}

double DensityMatrix::entropy() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double p = std::clamp(es.eigenvalues()[i], 0.0, 1.0);
        if (p > 0.0) s -= p * std::log(p);
    }
    return s;
}

Eigen::Vector3d DensityMatrix::bloch() const {
    if (n_ != 1) throw std::invalid_argument("bloch: single-qubit states only");
    Eigen::Vector3d r;
    r[0] = 2.0 * rho_(1, 0).real();
    r[1] = 2.0 * rho_(1, 0).imag();
    r[2] = (rho_(0, 0) - rho_(1, 1)).real();
    return r;
}

namespace {

// Dense phase-1 simplex with Bland's rule: min sum(artificials)
// s.t. A p + a = b (rows pre-flipped so b >= 0), p, a >= 0.
struct Phase1Result {
    double margin;
    std::vector<double> solution;  // length = #structural variables
};

Phase1Result phase1_simplex(const std::vector<std::vector<double>>& A, std::vector<double> b) {
    const int m = int(A.size());
    const int nvars = int(A[0].size());
    const int total = nvars + m;
    std::vector<std::vector<double>> T(m, std::vector<double>(total + 1, 0.0));
    for (int i = 0; i < m; ++i) {
        double flip = (b[i] < 0) ? -1.0 : 1.0;
        for (int j = 0; j < nvars; ++j) T[i][j] = flip * A[i][j];
        T[i][nvars + i] = 1.0;
        T[i][total] = flip * b[i];
    }
    std::vector<int> basis(m);
    std::vector<char> banned(total, 0);  // artificials may not re-enter
    for (int i = 0; i < m; ++i) basis[i] = nvars + i;
    // Reduced-cost row for min sum-of-artificials with the artificial basis.
    std::vector<double> cost(total + 1, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= total; ++j) cost[j] -= T[i][j];
    for (int i = 0; i < m; ++i) cost[nvars + i] = 0.0;

    const double eps = 1e-9;
    double last_value = -cost[total];
    int stall = 0;
    for (long iter = 0; iter < 100000; ++iter) {
        // Dantzig pricing; Bland (smallest index) once the objective stalls.
        int enter = -1;
        if (stall < 60) {
            double best = -eps;
            for (int j = 0; j < total; ++j)
                if (!banned[j] && cost[j] < best) { best = cost[j]; enter = j; }
        } else {
            for (int j = 0; j < total; ++j)
                if (!banned[j] && cost[j] < -eps) { enter = j; break; }
        }
        if (enter < 0) break;

        // Min-ratio test; prefer large pivots among near-ties, then Bland.
        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            if (T[i][enter] <= eps) continue;
            double ratio = T[i][total] / T[i][enter];
            if (ratio < best_ratio - 1e-9) {
                best_ratio = ratio;
                leave = i;
            } else if (ratio <= best_ratio + 1e-9 && leave >= 0) {
                double cur = std::abs(T[leave][enter]);
                double cand = std::abs(T[i][enter]);
                if (cand > cur * (1.0 + 1e-12) ||
                    (std::abs(cand - cur) <= 1e-12 * std::max(cand, cur) && basis[i] < basis[leave]))
                    leave = i;
            }
        }
        if (leave < 0) break;  // cannot happen in a consistent phase-1 tableau

        double piv = T[leave][enter];
        for (int j = 0; j <= total; ++j) T[leave][j] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leave) continue;
            double f = T[i][enter];
            if (f == 0.0) continue;
            for (int j = 0; j <= total; ++j) T[i][j] -= f * T[leave][j];
            T[i][enter] = 0.0;
        }
        double fc = cost[enter];
        for (int j = 0; j <= total; ++j) cost[j] -= fc * T[leave][j];
        cost[enter] = 0.0;
        if (basis[leave] >= nvars) banned[basis[leave]] = 1;
        basis[leave] = enter;

        double value = -cost[total];
        if (value < last_value - 1e-12) {
            last_value = value;
            stall = 0;
        } else {
            ++stall;
        }
    }

    Phase1Result res;
    res.margin = -cost[total];
    res.solution.assign(nvars, 0.0);
    for (int i = 0; i < m; ++i)
        if (basis[i] < nvars) res.solution[basis[i]] = T[i][total];
    return res;
}

}  // namespace

MembershipResult polytope_membership(const DensityMatrix& rho, int n, double boundary_tol) {
    if (rho.n() != n) throw std::invalid_argument("polytope_membership: dimension mismatch");
    if (n < 1 || n > 3) throw std::invalid_argument("polytope_membership: n must be 1..3");
    const auto& states = enumerate_pure_states(n);
    const int m = 1 << (2 * n);
    const int nv = int(states.size());

    std::vector<std::vector<double>> A(m, std::vector<double>(nv, 0.0));
    std::vector<double> b(m, 0.0);
    for (int id = 0; id < m; ++id) {
        uint64_t x = uint64_t(id) & ((1u << n) - 1), z = uint64_t(id) >> n;
        PauliString p = PauliString::make(n, x, z, +1);
        b[id] = (p.dense() * rho.matrix()).trace().real();
        for (int s = 0; s < nv; ++s) A[id][s] = double(states[s].expectation(p));
    }

    auto res = phase1_simplex(A, b);
    MembershipResult out;
    out.margin = std::max(0.0, res.margin);
    if (out.margin <= 1e-10) {
        out.verdict = MembershipVerdict::Inside;
        for (int s = 0; s < nv; ++s)
            if (res.solution[s] > 1e-12) out.weights.emplace_back(s, res.solution[s]);
    } else if (out.margin < boundary_tol) {
        out.verdict = MembershipVerdict::Boundary;
    } else {
        out.verdict = MembershipVerdict::Outside;
    }
    return out;
}

}  // namespace magicwit
