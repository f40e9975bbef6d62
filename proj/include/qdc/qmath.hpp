#pragma once

// Dense complex linear algebra for multiqubit density matrices (<= 5 qubits).
//
// Qubit 0 is the most significant tensor factor: the basis index of
// |q0 q1 ... q_{n-1}> is sum_k q_k * 2^(n-1-k).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qdc {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 5;
inline constexpr std::size_t kMaxDim = std::size_t{1} << kMaxQubits;

/// Square complex matrix of dimension 2^n, n in [1, 5], stored row-major.
class ComplexMatrix {
public:
    /// Zero matrix. Throws SizeError unless dim is a power of two in [2, 32].
    explicit ComplexMatrix(std::size_t dim);
    /// Row-major entries; entries.size() must equal dim*dim.
    ComplexMatrix(std::size_t dim, std::initializer_list<Complex> entries);
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> diag);
    /// |v><v| for a (not necessarily normalized) state vector.
    static ComplexMatrix projector(std::span<const Complex> vec);

    std::size_t dim() const noexcept { return dim_; }
    int qubits() const noexcept;

    Complex& operator()(std::size_t row, std::size_t col) noexcept { return a_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
        return a_[row * dim_ + col];
    }

    std::span<const Complex> entries() const noexcept { return a_; }
    std::span<Complex> entries() noexcept { return a_; }

    ComplexMatrix adjoint() const;
    Complex trace() const noexcept;
    bool all_finite() const noexcept;
    /// max_ij |M_ij - conj(M_ji)|
    double hermiticity_defect() const noexcept;
    double max_abs_diff(const ComplexMatrix& other) const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex s) noexcept;

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(ComplexMatrix m, Complex s) noexcept { return m *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix m) noexcept { return m *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

private:
    std::size_t dim_;
    std::vector<Complex> a_;
};

/// Hermitian, unit-trace, finite matrix. Positivity is checked on demand
/// (check_psd) and by von_neumann_entropy, both at the -1e-9 floor.
class DensityMatrix {
public:
    static constexpr double kHermitianTol = 1e-10;
    static constexpr double kTraceTol = 1e-10;
    static constexpr double kPsdFloor = -1e-9;

    /// Throws DomainError on non-finite entries, Hermiticity defect or
    /// trace error above 1e-10.
    explicit DensityMatrix(ComplexMatrix m);

    /// Normalized projector onto the given state vector.
    static DensityMatrix pure(std::span<const Complex> amplitudes);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.dim(); }
    int qubits() const noexcept { return m_.qubits(); }
    const Complex& operator()(std::size_t r, std::size_t c) const noexcept { return m_(r, c); }

    void check_psd() const;

private:
    ComplexMatrix m_;
};

/// Kronecker product; block (i,j) of the result is a(i,j) * b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced matrix on the `keep` qubits (any order; the result keeps them in
/// ascending qubit order). Throws DomainError on an empty or out-of-range set.
ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

/// Real spectrum of a Hermitian matrix, sorted descending. Throws DomainError
/// if the Hermiticity defect exceeds 1e-8.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Shannon entropy in bits of a spectrum; entries in [-1e-9, 0] count as 0,
/// anything lower throws PsdError.
double spectrum_entropy(std::span<const double> spectrum);

/// S(rho) = -Tr rho log2 rho.
double von_neumann_entropy(const DensityMatrix& rho);
/// Same, for matrices already known to be Hermitian with unit trace.
double von_neumann_entropy(const ComplexMatrix& rho);

/// Binary Shannon entropy H({q, 1-q}) in bits.
double binary_entropy(double q);

// In-place single-qubit kernels on an n-qubit matrix (op is 2x2).

/// m <- (I..op..I) m
void left_multiply_local(ComplexMatrix& m, const ComplexMatrix& op, int qubit);
/// m <- m (I..op..I)^dagger
void right_multiply_local_adjoint(ComplexMatrix& m, const ComplexMatrix& op, int qubit);
/// rho <- (I..u..I) rho (I..u..I)^dagger
void conjugate_local(ComplexMatrix& rho, const ComplexMatrix& u, int qubit);

/// psi <- (I..op..I) psi for a 2^n_qubits state vector.
void apply_local(std::span<Complex> psi, const ComplexMatrix& op, int qubit, int n_qubits);

/// State vector (up to a global phase) of a rank-one density matrix, or an
/// empty vector when rho differs from |psi><psi| by more than tol entrywise.
std::vector<Complex> pure_state_vector(const ComplexMatrix& rho, double tol = 1e-12);

/// Nonzero part of the spectrum of sum_j |v_j><v_j|, from the Gram matrix
/// <v_i|v_j>, sorted descending. Cheaper than a full eigensolve when there are
/// fewer vectors than dimensions.
std::vector<double> gram_spectrum(std::span<const std::vector<Complex>> vectors);

/// Lift a 2x2 operator to the full n-qubit space (identity elsewhere).
ComplexMatrix lift_local(const ComplexMatrix& op, int qubit, int n_qubits);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace qdc
