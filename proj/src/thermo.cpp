#include "magicwit/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace magicwit {

double binary_entropy(double p) {
    double s = 0.0;
    if (p > 0.0) s -= p * std::log(p);
    if (p < 1.0) s -= (1.0 - p) * std::log(1.0 - p);
    return s;
}

ThermalContext::ThermalContext(PauliHamiltonian h, double beta) : h_(std::move(h)), beta_(beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("ThermalContext: beta must be finite and positive");
    if (h_.n() > kMaxDenseQubits)
        throw std::invalid_argument("ThermalContext: dense spectra limited to 12 qubits");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h_.dense(), Eigen::EigenvaluesOnly);
    evals_ = es.eigenvalues();
    double e_min = evals_[0], e_max = evals_[evals_.size() - 1];
    deg_min_ = deg_max_ = 0;
    for (Eigen::Index i = 0; i < evals_.size(); ++i) {
        if (evals_[i] - e_min < 1e-9) ++deg_min_;
        if (e_max - evals_[i] < 1e-9) ++deg_max_;
    }
    qubit_closed_form_ = h_.n() == 1 && std::abs(e_min + 1.0) < 1e-12 && std::abs(e_max - 1.0) < 1e-12;
    double scale = std::max(1e-9, (e_max - e_min) / 2.0);
    x_max_ = 50.0 / scale;
}

GibbsPoint ThermalContext::gibbs(double x) const {
    if (!std::isfinite(x)) throw std::invalid_argument("gibbs: x must be finite");
    double energy, entropy;
    if (qubit_closed_form_) {
        energy = -std::tanh(x);
        double log2cosh = std::abs(x) + std::log1p(std::exp(-2.0 * std::abs(x)));
        entropy = log2cosh - x * std::tanh(x);
    } else {
        double shift = (x >= 0) ? evals_[0] : evals_[evals_.size() - 1];
        double z = 0.0, e_acc = 0.0;
        for (Eigen::Index i = 0; i < evals_.size(); ++i) {
            double w = std::exp(-x * (evals_[i] - shift));
            z += w;
            e_acc += evals_[i] * w;
        }
        energy = e_acc / z;
        entropy = x * (energy - shift) + std::log(z);
    }
    entropy = std::max(0.0, entropy);
    return {x, energy, entropy, energy - entropy / beta_};
}

double ThermalContext::free_energy(const DensityMatrix& rho) const {
    return h_.energy(rho) - rho.entropy() / beta_;
}

EffectiveTemperatures ThermalContext::solve_effective_temperatures(double f_target) const {
    double f_eq = gibbs(beta_).free_energy;
    if (f_target < f_eq - 1e-12)
        throw std::domain_error("solve_effective_temperatures: target below the equilibrium minimum");

    EffectiveTemperatures out{};
    double e_min = evals_[0], e_max = evals_[evals_.size() - 1];

    auto bisect = [&](double lo, double hi, bool increasing) {
        // F is monotone on each branch (dF/dx = (x/beta - 1) var); bracket and
        // bisect, then polish with a secant step.
        double f_lo = gibbs(lo).free_energy - f_target;
        double f_hi = gibbs(hi).free_energy - f_target;
        (void)increasing;
        for (int iter = 0; iter < 200; ++iter) {
            double mid = 0.5 * (lo + hi);
            double f_mid = gibbs(mid).free_energy - f_target;
            if ((f_mid <= 0) == (f_lo <= 0)) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
                f_hi = f_mid;
            }
            if (hi - lo < 1e-15 * std::max(1.0, std::abs(lo) + std::abs(hi))) break;
        }
        if (std::abs(f_hi - f_lo) > 1e-300) {
            double secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
            if (secant >= lo && secant <= hi) return secant;
        }
        return 0.5 * (lo + hi);
    };

    if (f_target <= f_eq + 1e-15) {
        out.x_cold = out.x_hot = beta_;
        out.energy_cold = out.energy_hot = gibbs(beta_).energy;
        return out;
    }

    // Cooling branch x in [-x_max, beta]: F decreases toward equilibrium;
    // the x -> -inf limit is E_max - log(deg_max)/beta.
    double f_cool_limit = e_max - std::log(double(deg_max_)) / beta_;
    if (f_target >= std::min(f_cool_limit, gibbs(-x_max_).free_energy) - 1e-13) {
        out.cooling_clamped = true;
        out.x_cold = -std::numeric_limits<double>::infinity();
        out.energy_cold = e_max;
    } else {
        out.x_cold = bisect(-x_max_, beta_, false);
        out.energy_cold = gibbs(out.x_cold).energy;
    }

    // Heating branch x in [beta, x_max]: limit is E_min - log(deg_min)/beta.
    double f_heat_limit = e_min - std::log(double(deg_min_)) / beta_;
    if (f_target >= std::min(f_heat_limit, gibbs(x_max_).free_energy) - 1e-13) {
        out.heating_clamped = true;
        out.x_hot = std::numeric_limits<double>::infinity();
        out.energy_hot = e_min;
    } else {
        out.x_hot = bisect(beta_, x_max_, true);
        out.energy_hot = gibbs(out.x_hot).energy;
    }
    return out;
}

OptimalHeat ThermalContext::optimal_heat(const DensityMatrix& rho) const {
    return optimal_heat_from(h_.energy(rho), rho.entropy());
}

OptimalHeat ThermalContext::optimal_heat_from(double e0, double entropy) const {
    double f_target = e0 - entropy / beta_;
    EffectiveTemperatures roots = solve_effective_temperatures(f_target);
    OptimalHeat heat{e0 - roots.energy_cold, e0 - roots.energy_hot, roots};
    if (heat.q_cold > heat.q_hot + 1e-10)
        throw std::logic_error("optimal_heat: cooling heat above heating heat");
    return heat;
}

namespace {

// Cached dense vectors for the enumerated pure stabilizer states.
const std::vector<Eigen::VectorXcd>& state_vectors(int n) {
    static std::vector<Eigen::VectorXcd> cache[4];
    auto& slot = cache[n];
    if (slot.empty()) {
        const auto& states = enumerate_pure_states(n);
        slot.reserve(states.size());
        for (const auto& s : states) slot.push_back(s.state_vector());
    }
    return slot;
}

std::vector<double> vertex_energies(const ThermalContext& ctx) {
    const auto& states = enumerate_pure_states(ctx.n());
    std::vector<double> e(states.size());
    for (size_t i = 0; i < states.size(); ++i) e[i] = ctx.hamiltonian().energy(states[i]);
    return e;
}

}  // namespace

bool slice_nonempty(const ThermalContext& ctx, double e0) {
    if (ctx.n() > 3) throw std::invalid_argument("slice_nonempty: n must be <= 3");
    auto e = vertex_energies(ctx);
    auto [lo, hi] = std::minmax_element(e.begin(), e.end());
    return e0 >= *lo - 1e-9 && e0 <= *hi + 1e-9;
}

SliceMinEntropy smin_stab_slice(const ThermalContext& ctx, double e0) {
    if (ctx.n() > 3) throw std::invalid_argument("smin_stab_slice: n must be <= 3");
    const auto e = vertex_energies(ctx);
    const double e_tol = 1e-9;

    for (size_t i = 0; i < e.size(); ++i)
        if (std::abs(e[i] - e0) <= e_tol) return {0.0, int(i), -1, 0.0};

    const auto& vecs = state_vectors(ctx.n());
    SliceMinEntropy best{std::numeric_limits<double>::infinity(), -1, -1, 0.0};
    for (size_t i = 0; i < e.size(); ++i) {
        for (size_t j = i + 1; j < e.size(); ++j) {
            if ((e[i] - e0) * (e[j] - e0) >= 0) continue;
            double t = (e0 - e[i]) / (e[j] - e[i]);
            double overlap = std::norm((vecs[i].adjoint() * vecs[j])(0, 0));
            // Rank-2 mixture eigenvalues from the pairwise overlap.
            double disc = std::sqrt(std::max(0.0, 1.0 - 4.0 * t * (1.0 - t) * (1.0 - overlap)));
            double s = binary_entropy(0.5 * (1.0 + disc));
            if (s < best.s_min) best = {s, int(i), int(j), t};
        }
    }
    if (best.vertex_a < 0)
        throw std::domain_error("smin_stab_slice: empty stabilizer slice at E0 = " + std::to_string(e0));
    return best;
}

HeatWindow stab_heat_window(const ThermalContext& ctx, double e0) {
    SliceMinEntropy smin = smin_stab_slice(ctx, e0);
    double f_star = e0 - smin.s_min / ctx.beta();
    EffectiveTemperatures roots = ctx.solve_effective_temperatures(f_star);
    return {e0,
            smin.s_min,
            f_star,
            e0 - roots.energy_cold,
            e0 - roots.energy_hot,
            roots.cooling_clamped,
            roots.heating_clamped};
}

HeatDetection detect_heat(const ThermalContext& ctx, double e0, double q, double de, double dq) {
    std::vector<double> energies{e0};
    if (de > 0) {
        energies.push_back(e0 - de);
        energies.push_back(e0 + de);
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    std::optional<HeatWindow> central;
    bool any_slice = false;
    for (double e : energies) {
        if (!slice_nonempty(ctx, e)) continue;
        any_slice = true;
        HeatWindow w = stab_heat_window(ctx, e);
        lo = std::min(lo, w.q_cold_stab);
        hi = std::max(hi, w.q_hot_stab);
        if (e == e0) central = w;
    }
    if (!any_slice) return {true, true, std::nullopt};
    bool certified = (q + dq < lo) || (q - dq > hi);
    return {certified, false, central};
}

double r_star(const Eigen::Vector3d& h_unit, double e0) {
    if (std::abs(h_unit.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("r_star: field must be a unit vector");
    double best = -1.0;
    // Octahedron vertices +/- e_i on the slice give radius one.
    for (int i = 0; i < 3; ++i)
        for (int s : {+1, -1})
            if (std::abs(s * h_unit[i] - e0) <= 1e-12) best = std::max(best, 1.0);
    // All twelve edges (both sign combinations per axis pair).
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            for (int si : {+1, -1}) {
                for (int sj : {+1, -1}) {
                    double ei = si * h_unit[i], ej = sj * h_unit[j];
                    if (std::abs(ei - ej) < 1e-15) continue;  // handled by vertices
                    double t = (e0 - ej) / (ei - ej);  // weight toward s_i e_i
                    if (t < 0.0 || t > 1.0) continue;
                    best = std::max(best, std::hypot(t, 1.0 - t));
                }
            }
        }
    }
    if (best < 0.0)
        throw std::domain_error("r_star: no stabilizer state attains E0 = " + std::to_string(e0));
    return best;
}

QubitDetection detect_qubit(const Eigen::Vector3d& bloch, const Eigen::Vector3d& h_unit) {
    double r_norm = bloch.norm();
    if (r_norm > 1.0 + 1e-9) throw std::invalid_argument("detect_qubit: Bloch vector outside the ball");
    double e0 = h_unit.dot(bloch);
    double threshold;
    try {
        threshold = r_star(h_unit, e0);
    } catch (const std::domain_error&) {
        // Energy alone rules out stabilizer states.
        return {true, r_norm, std::numeric_limits<double>::infinity()};
    }
    return {r_norm > threshold, r_norm, threshold};
}

FamilyThresholds family_thresholds(const StateFamily& family, double beta, double lambda_tol,
                                   double star_tol) {
    ThermalContext ctx(family.hamiltonian, beta);

    // Premise checks over a lambda grid: constant energy, monotone entropy.
    const int grid = 21;
    double e0 = ctx.energy(family.state(0.0));
    double prev_s = -1.0;
    for (int k = 0; k < grid; ++k) {
        double lambda = double(k) / (grid - 1);
        DensityMatrix rho = family.state(lambda);
        double e = ctx.energy(rho);
        if (std::abs(e - e0) > 1e-10)
            throw std::domain_error("family_thresholds: energy drifts along the family");
        double s = rho.entropy();
        if (s < prev_s - 1e-12)
            throw std::domain_error("family_thresholds: entropy not monotone along the family");
        prev_s = s;
    }

    HeatWindow window = stab_heat_window(ctx, e0);
    auto detected = [&](double lambda) {
        OptimalHeat heat = ctx.optimal_heat(family.state(lambda));
        return heat.q_cold < window.q_cold_stab || heat.q_hot > window.q_hot_stab;
    };
    double lambda_crt;
    if (!detected(0.0)) {
        lambda_crt = 0.0;
    } else if (detected(1.0)) {
        lambda_crt = 1.0;
    } else {
        double lo = 0.0, hi = 1.0;
        while (hi - lo > lambda_tol) {
            double mid = 0.5 * (lo + hi);
            (detected(mid) ? lo : hi) = mid;
        }
        lambda_crt = 0.5 * (lo + hi);
    }

    auto inside = [&](double lambda) {
        DensityMatrix rho = family.state(lambda);
        if (family.n == 1) return rho.bloch().lpNorm<1>() <= 1.0 + 1e-12;  // octahedron facets
        return polytope_membership(rho, family.n).inside_or_boundary();
    };
    double lambda_star;
    if (inside(0.0)) {
        lambda_star = 0.0;
    } else if (!inside(1.0)) {
        lambda_star = 1.0;
    } else {
        double lo = 0.0, hi = 1.0;
        while (hi - lo > star_tol) {
            double mid = 0.5 * (lo + hi);
            (inside(mid) ? hi : lo) = mid;
        }
        lambda_star = 0.5 * (lo + hi);
    }

    if (lambda_crt > lambda_star + 1e-6)
        throw std::logic_error("family_thresholds: detection threshold above the membership threshold");
    return {lambda_crt, lambda_star, e0, window.s_min};
}

}  // namespace magicwit
