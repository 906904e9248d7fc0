#include "magicwit/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace magicwit {

namespace {

void check_qubit_count(int n, int limit, const char* what) {
    if (n < 1) throw std::invalid_argument(std::string(what) + ": qubit count must be positive");
    if (n > limit)
        throw std::invalid_argument(std::string(what) + ": " + std::to_string(n) +
                                    " qubits exceeds limit " + std::to_string(limit));
}

int parity64(uint64_t v) { return std::popcount(v) & 1; }

}  // namespace

PauliString PauliString::identity(int n) { return make(n, 0, 0, +1); }

PauliString PauliString::make(int n, uint64_t x_bits, uint64_t z_bits, int sign) {
    check_qubit_count(n, kMaxQubits, "PauliString");
    if (sign != +1 && sign != -1) throw std::invalid_argument("PauliString: sign must be +/-1");
    uint64_t mask = (n == 64) ? ~uint64_t(0) : ((uint64_t(1) << n) - 1);
    if ((x_bits & ~mask) || (z_bits & ~mask))
        throw std::invalid_argument("PauliString: bits outside qubit range");
    PauliString p;
    p.n_ = n;
    p.x_ = x_bits;
    p.z_ = z_bits;
    p.sign_ = sign;
    return p;
}

PauliString PauliString::single_site(int n, int qubit, char letter, int sign) {
    if (qubit < 0 || qubit >= n) throw std::invalid_argument("PauliString: qubit out of range");
    uint64_t bit = uint64_t(1) << qubit;
    switch (letter) {
        case 'I': return make(n, 0, 0, sign);
        case 'X': return make(n, bit, 0, sign);
        case 'Y': return make(n, bit, bit, sign);
        case 'Z': return make(n, 0, bit, sign);
        default: throw std::invalid_argument("PauliString: letter must be one of IXYZ");
    }
}

PauliString PauliString::parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("PauliString.parse: empty string");
    int sign = +1;
    size_t start = 0;
    if (text[0] == '+' || text[0] == '-') {
        sign = (text[0] == '-') ? -1 : +1;
        start = 1;
    }
    if (start == text.size()) throw std::invalid_argument("PauliString.parse: no Pauli letters");
    int n = int(text.size() - start);
    check_qubit_count(n, kMaxQubits, "PauliString.parse");
    uint64_t x = 0, z = 0;
    for (int q = 0; q < n; ++q) {
        uint64_t bit = uint64_t(1) << q;
        switch (text[start + q]) {
            case 'I': break;
            case 'X': x |= bit; break;
            case 'Y': x |= bit; z |= bit; break;
            case 'Z': z |= bit; break;
            default:
                throw std::invalid_argument("PauliString.parse: bad character '" +
                                            std::string(1, text[start + q]) + "'");
        }
    }
    return make(n, x, z, sign);
}

std::string PauliString::str() const {
    std::string out;
    out.reserve(size_t(n_) + 1);
    out.push_back(sign_ < 0 ? '-' : '+');
    for (int q = 0; q < n_; ++q) out.push_back(letter(q));
    return out;
}

PauliString PauliString::negated() const { return make(n_, x_, z_, -sign_); }

PauliString PauliString::with_sign(int sign) const { return make(n_, x_, z_, sign); }

int PauliString::support() const { return std::popcount(x_ | z_); }

char PauliString::letter(int qubit) const {
    bool x = (x_ >> qubit) & 1;
    bool z = (z_ >> qubit) & 1;
    if (x && z) return 'Y';
    if (x) return 'X';
    if (z) return 'Z';
    return 'I';
}

bool PauliString::commutes_with(const PauliString& other) const {
    if (n_ != other.n_) throw std::invalid_argument("commutes: mismatched qubit counts");
    return (parity64(x_ & other.z_) ^ parity64(z_ & other.x_)) == 0;
}

Eigen::MatrixXcd PauliString::dense() const {
    check_qubit_count(n_, kMaxDenseQubits, "PauliString.dense");
    using cd = std::complex<double>;
    static const Eigen::Matrix2cd kI = Eigen::Matrix2cd::Identity();
    static const Eigen::Matrix2cd kX = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
    static const Eigen::Matrix2cd kY = (Eigen::Matrix2cd() << 0, cd(0, -1), cd(0, 1), 0).finished();
    static const Eigen::Matrix2cd kZ = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Constant(1, 1, double(sign_));
    for (int q = 0; q < n_; ++q) {
        const Eigen::Matrix2cd* site = &kI;
        switch (letter(q)) {
            case 'X': site = &kX; break;
            case 'Y': site = &kY; break;
            case 'Z': site = &kZ; break;
            default: break;
        }
        Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index r = 0; r < out.rows(); ++r)
            for (Eigen::Index c = 0; c < out.cols(); ++c)
                next.block(2 * r, 2 * c, 2, 2) = out(r, c) * (*site);
        out = std::move(next);
    }
    return out;
}

PauliProduct multiply(const PauliString& a, const PauliString& b) {
    if (a.n() != b.n()) throw std::invalid_argument("multiply: mismatched qubit counts");
    uint64_t x3 = a.x_bits() ^ b.x_bits();
    uint64_t z3 = a.z_bits() ^ b.z_bits();
    // i-exponent from the Hermitian convention op(x,z) = i^{x.z} X^x Z^z:
    //   g = |x1&z1| + |x2&z2| - |x3&z3| + 2|z1&x2|  (mod 4)
    int g = std::popcount(a.x_bits() & a.z_bits()) + std::popcount(b.x_bits() & b.z_bits()) -
            std::popcount(x3 & z3) + 2 * std::popcount(a.z_bits() & b.x_bits());
    g = ((g % 4) + 4) % 4;
    int sign = a.sign() * b.sign();
    std::complex<double> phase(1.0, 0.0);
    if (g == 2) {
        sign = -sign;
    } else if (g == 1) {
        phase = std::complex<double>(0.0, 1.0);
    } else if (g == 3) {
        phase = std::complex<double>(0.0, -1.0);
    }
    return PauliProduct{phase, PauliString::make(a.n(), x3, z3, sign)};
}

bool pattern_less(const PauliString& a, const PauliString& b) {
    for (int q = 0; q < std::min(a.n(), b.n()); ++q) {
        if (a.letter(q) != b.letter(q)) return a.letter(q) < b.letter(q);
    }
    if (a.n() != b.n()) return a.n() < b.n();
    return a.sign() < b.sign();
}

Eigen::VectorXcd apply_pauli(const PauliString& p, const Eigen::VectorXcd& v) {
    int n = p.n();
    if (v.size() != (Eigen::Index(1) << n)) throw std::invalid_argument("apply_pauli: dimension mismatch");
    // Map qubit q to index bit (n-1-q): qubit 0 is the most significant bit.
    auto to_index_mask = [&](uint64_t qubit_mask) {
        uint64_t m = 0;
        for (int q = 0; q < n; ++q)
            if ((qubit_mask >> q) & 1) m |= uint64_t(1) << (n - 1 - q);
        return m;
    };
    uint64_t xm = to_index_mask(p.x_bits());
    uint64_t zm = to_index_mask(p.z_bits());
    std::complex<double> base(double(p.sign()), 0.0);
    switch (std::popcount(p.x_bits() & p.z_bits()) % 4) {
        case 1: base *= std::complex<double>(0, 1); break;
        case 2: base *= -1.0; break;
        case 3: base *= std::complex<double>(0, -1); break;
        default: break;
    }
    Eigen::VectorXcd out(v.size());
    for (uint64_t k = 0; k < uint64_t(v.size()); ++k) {
        std::complex<double> amp = base * v[k];
        if (std::popcount(k & zm) & 1) amp = -amp;
        out[k ^ xm] = amp;
    }
    return out;
}

}  // namespace magicwit
