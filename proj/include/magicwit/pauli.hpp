#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace magicwit {

constexpr int kMaxQubits = 64;       // symplectic core limit (one machine word per part)
constexpr int kMaxDenseQubits = 12;  // dense-matrix oracle limit

/// Hermitian n-qubit Pauli operator in binary-symplectic form.
///
/// A site with (x,z) bits set represents I, X, Z or Y; the Y convention is
/// Y = i*X*Z with the i absorbed internally, so the stored operator is always
/// self-adjoint and the sign is restricted to +/-1. Values are immutable.
class PauliString {
  public:
    PauliString() = default;
    static PauliString identity(int n);
    static PauliString make(int n, uint64_t x_bits, uint64_t z_bits, int sign = +1);
    static PauliString single_site(int n, int qubit, char letter, int sign = +1);

    /// Parses "+XZY", "-IIZ", "XX", ...; n is inferred from the length.
    static PauliString parse(std::string_view text);
    std::string str() const;

    int n() const { return n_; }
    uint64_t x_bits() const { return x_; }
    uint64_t z_bits() const { return z_; }
    int sign() const { return sign_; }
    PauliString negated() const;
    PauliString with_sign(int sign) const;

    bool is_identity_pattern() const { return x_ == 0 && z_ == 0; }
    int support() const;
    char letter(int qubit) const;

    /// Same (x,z) pattern, sign ignored.
    bool same_pattern(const PauliString& other) const {
        return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
    }
    bool operator==(const PauliString& other) const {
        return same_pattern(other) && sign_ == other.sign_;
    }

    bool commutes_with(const PauliString& other) const;

    /// Pattern key with x in the high word ordering: usable for sorting/hashing.
    std::pair<uint64_t, uint64_t> pattern_key() const { return {x_, z_}; }

    /// 2^n x 2^n dense realization, n <= kMaxDenseQubits.
    Eigen::MatrixXcd dense() const;

  private:
    int n_ = 0;
    uint64_t x_ = 0;
    uint64_t z_ = 0;
    int sign_ = +1;
};

/// Result of a Pauli product. `phase * dense(value)` equals the dense product;
/// real phases are folded into `value`'s sign, so `phase` is one of {1, i, -i}.
struct PauliProduct {
    std::complex<double> phase;
    PauliString value;
    bool real() const { return phase.imag() == 0.0; }
};

PauliProduct multiply(const PauliString& a, const PauliString& b);

/// Lexicographic order on (pattern letters, sign); used for canonical term order.
bool pattern_less(const PauliString& a, const PauliString& b);

/// Applies `p` to a dense state vector of dimension 2^n (qubit 0 = most
/// significant index bit). Cheap bit-arithmetic path, no matrix build.
Eigen::VectorXcd apply_pauli(const PauliString& p, const Eigen::VectorXcd& v);

}  // namespace magicwit
