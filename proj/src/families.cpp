#include "magicwit/families.hpp"

#include <cmath>
#include <numbers>

namespace magicwit {

DensityMatrix t_state() {
    double r = 1.0 / std::sqrt(3.0);
    return DensityMatrix::from_bloch(r, r, r);
}

DensityMatrix h_state() {
    double r = 1.0 / std::sqrt(2.0);
    return DensityMatrix::from_bloch(r, 0.0, r);
}

DensityMatrix dephase_diagonal(const DensityMatrix& rho) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.dim(), rho.dim());
    out.diagonal() = rho.matrix().diagonal();
    return DensityMatrix(std::move(out));
}

StateFamily depolarized_h_family() {
    StateFamily family;
    family.name = "depolarized-H";
    family.n = 1;
    double r = 1.0 / std::sqrt(3.0);
    family.hamiltonian = PauliHamiltonian::local_fields({Eigen::Vector3d(r, -r, -r)});
    family.state = [](double lambda) {
        Eigen::MatrixXcd rho = (1.0 - lambda) * h_state().matrix() +
                               lambda * DensityMatrix::maximally_mixed(1).matrix();
        return DensityMatrix(std::move(rho));
    };
    return family;
}

StateFamily dephased_t_family() {
    StateFamily family;
    family.name = "dephased-T";
    family.n = 1;
    family.hamiltonian = PauliHamiltonian::local_fields({Eigen::Vector3d(0, 0, 1)});
    family.state = [](double lambda) {
        double r = 1.0 / std::sqrt(3.0);
        return DensityMatrix::from_bloch((1.0 - lambda) * r, (1.0 - lambda) * r, r);
    };
    return family;
}

namespace {

Eigen::VectorXcd ghz3_psi() {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
    psi[0] = std::sqrt(3.0) / 2.0;
    psi[7] = 0.5 * std::exp(std::complex<double>(0.0, std::numbers::pi / 4.0));
    return psi;
}

}  // namespace

StateFamily ghz3_family() {
    StateFamily family;
    family.name = "ghz3";
    family.n = 3;
    family.hamiltonian =
        PauliHamiltonian::from_text_terms(3, {{1.0, "ZII"}, {1.0, "IZI"}, {1.0, "IIZ"}});
    family.state = [](double lambda) {
        DensityMatrix pure = DensityMatrix::from_state_vector(ghz3_psi());
        Eigen::MatrixXcd rho =
            (1.0 - lambda) * pure.matrix() + lambda * dephase_diagonal(pure).matrix();
        return DensityMatrix(std::move(rho));
    };
    return family;
}

StateFamily tc_qubit_family() {
    StateFamily family;
    family.name = "tavis-cummings-qubits";
    family.n = 2;
    family.hamiltonian = PauliHamiltonian::from_text_terms(2, {{1.0, "ZI"}, {1.0, "IZ"}});
    family.state = [](double lambda) {
        Eigen::MatrixXcd tt = Eigen::MatrixXcd::Zero(4, 4);
        Eigen::MatrixXcd t = t_state().matrix();
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c)
                    for (int d = 0; d < 2; ++d) tt(2 * a + c, 2 * b + d) = t(a, b) * t(c, d);
        DensityMatrix pure2(std::move(tt));
        Eigen::MatrixXcd rho =
            (1.0 - lambda) * pure2.matrix() + lambda * dephase_diagonal(pure2).matrix();
        return DensityMatrix(std::move(rho));
    };
    return family;
}

Eigen::VectorXcd psi_theta_phi(double theta, double phi) {
    Eigen::VectorXcd base = Eigen::VectorXcd::Zero(4);
    base[0] = std::cos(theta);  // |00>
    base[3] = std::sin(theta);  // |11>
    // 1 x exp(-i phi X / 2) = cos(phi/2) 1 - i sin(phi/2) X on the second qubit.
    std::complex<double> c(std::cos(phi / 2.0), 0.0);
    std::complex<double> s(0.0, -std::sin(phi / 2.0));
    Eigen::VectorXcd out(4);
    out[0] = c * base[0] + s * base[1];
    out[1] = s * base[0] + c * base[1];
    out[2] = c * base[2] + s * base[3];
    out[3] = s * base[2] + c * base[3];
    return out;
}

}  // namespace magicwit
