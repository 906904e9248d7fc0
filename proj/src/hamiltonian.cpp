#include "magicwit/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace magicwit {

namespace {
constexpr double kCancelEps = 1e-14;
}

PauliHamiltonian PauliHamiltonian::from_coefficients(
    int n, const std::vector<std::pair<double, PauliString>>& terms) {
    if (n < 1 || n > kMaxQubits) throw std::invalid_argument("PauliHamiltonian: bad qubit count");
    // Net signed coefficient per pattern; c*P contributes -(-c)*P to -sum w Q.
    std::map<std::pair<uint64_t, uint64_t>, double> net;
    for (const auto& [coeff, op] : terms) {
        if (op.n() != n) throw std::invalid_argument("PauliHamiltonian: inconsistent qubit count");
        if (coeff == 0.0) throw std::invalid_argument("PauliHamiltonian: zero coefficient");
        if (op.is_identity_pattern())
            throw std::invalid_argument("PauliHamiltonian: identity term not allowed");
        net[op.pattern_key()] += coeff * op.sign();
    }
    PauliHamiltonian h;
    h.n_ = n;
    for (const auto& [key, c] : net) {
        if (std::abs(c) < kCancelEps) continue;
        // H = -sum w Q with Q = -sgn(c) * pattern, w = |c|.
        int sign = (c > 0) ? -1 : +1;
        h.terms_.push_back({PauliString::make(n, key.first, key.second, sign), std::abs(c)});
    }
    std::sort(h.terms_.begin(), h.terms_.end(),
              [](const Term& a, const Term& b) { return pattern_less(a.op, b.op); });
    return h;
}

PauliHamiltonian PauliHamiltonian::from_text_terms(
    int n, const std::vector<std::pair<double, std::string>>& terms) {
    std::vector<std::pair<double, PauliString>> parsed;
    parsed.reserve(terms.size());
    for (const auto& [coeff, text] : terms) {
        PauliString p = PauliString::parse(text);
        if (p.n() != n)
            throw std::invalid_argument("PauliHamiltonian: term '" + text + "' has wrong length");
        parsed.emplace_back(coeff, p);
    }
    return from_coefficients(n, parsed);
}

PauliHamiltonian PauliHamiltonian::stabilizer_hamiltonian(const StabilizerGroup& group,
                                                          const std::vector<double>& weights) {
    std::vector<double> w = weights;
    if (w.empty()) w.assign(group.generators().size(), 1.0);
    if (w.size() != group.generators().size())
        throw std::invalid_argument("stabilizer_hamiltonian: weight count mismatch");
    std::vector<std::pair<double, PauliString>> terms;
    for (size_t i = 0; i < w.size(); ++i) {
        if (w[i] <= 0) throw std::invalid_argument("stabilizer_hamiltonian: weights must be positive");
        terms.emplace_back(-w[i], group.generators()[i]);
    }
    return from_coefficients(group.n(), terms);
}

PauliHamiltonian PauliHamiltonian::tfim(int n, double h) {
    if (n < 2) throw std::invalid_argument("tfim: n must be >= 2");
    if (h < 0) throw std::invalid_argument("tfim: h must be >= 0");
    std::vector<std::pair<double, PauliString>> terms;
    for (int j = 0; j < n; ++j) {
        uint64_t zz = (uint64_t(1) << j) | (uint64_t(1) << ((j + 1) % n));
        terms.emplace_back(-1.0, PauliString::make(n, 0, zz, +1));
        if (h > 0) terms.emplace_back(-h, PauliString::make(n, uint64_t(1) << j, 0, +1));
    }
    return from_coefficients(n, terms);
}

PauliHamiltonian PauliHamiltonian::heisenberg(int n) {
    if (n < 2) throw std::invalid_argument("heisenberg: n must be >= 2");
    std::vector<std::pair<double, PauliString>> terms;
    for (int j = 0; j < n; ++j) {
        uint64_t bond = (uint64_t(1) << j) | (uint64_t(1) << ((j + 1) % n));
        terms.emplace_back(-1.0, PauliString::make(n, bond, 0, +1));      // XX
        terms.emplace_back(-1.0, PauliString::make(n, bond, bond, +1));   // YY
        terms.emplace_back(-1.0, PauliString::make(n, 0, bond, +1));      // ZZ
    }
    return from_coefficients(n, terms);
}

PauliHamiltonian PauliHamiltonian::bell_perturbed(double eps) {
    if (eps < 0) throw std::invalid_argument("bell_perturbed: eps must be >= 0");
    std::vector<std::pair<double, std::string>> terms{{-1.0, "XX"}, {-1.0, "ZZ"}};
    if (eps > 0) {
        terms.emplace_back(eps, "ZI");
        terms.emplace_back(-eps, "IZ");
    }
    return from_text_terms(2, terms);
}

PauliHamiltonian PauliHamiltonian::local_fields(const std::vector<Eigen::Vector3d>& fields) {
    int n = int(fields.size());
    if (n < 1) throw std::invalid_argument("local_fields: no sites");
    std::vector<std::pair<double, PauliString>> terms;
    const char letters[3] = {'X', 'Y', 'Z'};
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < 3; ++a)
            if (fields[i][a] != 0.0)
                terms.emplace_back(fields[i][a], PauliString::single_site(n, i, letters[a]));
    return from_coefficients(n, terms);
}

double PauliHamiltonian::weight_sum() const {
    double s = 0.0;
    for (const auto& t : terms_) s += t.weight;
    return s;
}

double PauliHamiltonian::coefficient(const PauliString& p) const {
    for (const auto& t : terms_) {
        if (t.op.same_pattern(p)) return t.op.sign() == p.sign() ? t.weight : -t.weight;
    }
    return 0.0;
}

Eigen::MatrixXcd PauliHamiltonian::dense() const {
    if (n_ > kMaxDenseQubits) throw std::invalid_argument("PauliHamiltonian.dense: too many qubits");
    Eigen::Index dim = Eigen::Index(1) << n_;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : terms_) out -= t.weight * t.op.dense();
    return out;
}

double PauliHamiltonian::energy(const DensityMatrix& rho) const {
    if (rho.n() != n_) throw std::invalid_argument("energy: dimension mismatch");
    std::complex<double> e = (dense() * rho.matrix()).trace();
    if (std::abs(e.imag()) > 1e-10) throw std::logic_error("energy: imaginary residue");
    return e.real();
}

double PauliHamiltonian::energy(const StabilizerState& state) const {
    if (state.n() != n_) throw std::invalid_argument("energy: dimension mismatch");
    double e = 0.0;
    for (const auto& t : terms_) e -= t.weight * double(state.expectation(t.op));
    return e;
}

PauliHamiltonian PauliHamiltonian::scaled(double factor) const {
    if (factor == 0.0) throw std::invalid_argument("scaled: zero factor");
    std::vector<std::pair<double, PauliString>> terms;
    for (const auto& t : terms_) terms.emplace_back(-t.weight * factor, t.op);
    return from_coefficients(n_, terms);
}

PauliHamiltonian PauliHamiltonian::plus(const PauliHamiltonian& other) const {
    if (other.n_ != n_) throw std::invalid_argument("plus: dimension mismatch");
    std::vector<std::pair<double, PauliString>> terms;
    for (const auto& t : terms_) terms.emplace_back(-t.weight, t.op);
    for (const auto& t : other.terms_) terms.emplace_back(-t.weight, t.op);
    return from_coefficients(n_, terms);
}

GroundEnergy ground_energy_dense(const PauliHamiltonian& h) {
    if (h.n() > kMaxDenseQubits)
        throw std::invalid_argument("ground_energy_dense: use an analytic path beyond " +
                                    std::to_string(kMaxDenseQubits) + " qubits");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.dense(), Eigen::EigenvaluesOnly);
    double e0 = es.eigenvalues()[0];
    int deg = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()[i] - e0 < 1e-9) ++deg;
    return {e0, deg};
}

double tfim_ground_energy(int n, double h) {
    if (n < 2) throw std::invalid_argument("tfim_ground_energy: n must be >= 2");
    if (h < 0) throw std::invalid_argument("tfim_ground_energy: h must be >= 0");
    // Even-parity (antiperiodic) momentum sector; validated against dense
    // diagonalization for small n.
    double e = 0.0;
    for (int l = 0; l < n; ++l) {
        double k = (2.0 * l + 1.0) * std::numbers::pi / double(n);
        e -= std::sqrt(1.0 + h * h - 2.0 * h * std::cos(k));
    }
    return e;
}

double tfim_stabilizer_energy(int n, double h) {
    if (n < 2) throw std::invalid_argument("tfim_stabilizer_energy: n must be >= 2");
    return -double(n) * std::max(1.0, h);
}

LocalityReport locality_report(const PauliHamiltonian& h, size_t poly_budget, int k) {
    int max_support = 0;
    for (const auto& t : h.terms()) max_support = std::max(max_support, t.op.support());
    return {h.term_count(), max_support, h.term_count() <= poly_budget, max_support <= k};
}

}  // namespace magicwit
