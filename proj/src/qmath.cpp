#include "qdc/qmath.hpp"

#include "qdc/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <string>

namespace qdc {

namespace {

void check_dim(std::size_t dim) {
    if (dim < 2 || dim > kMaxDim || !std::has_single_bit(dim)) {
        throw SizeError("matrix dimension must be a power of two in [2, 32], got " +
                        std::to_string(dim));
    }
}

void check_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) {
        throw SizeError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                        std::to_string(b.dim()));
    }
}

void check_local(const ComplexMatrix& m, const ComplexMatrix& op, int qubit) {
    if (op.dim() != 2) throw SizeError("local operator must be 2x2");
    if (qubit < 0 || qubit >= m.qubits()) {
        throw DomainError("qubit " + std::to_string(qubit) + " out of range for a " +
                          std::to_string(m.qubits()) + "-qubit matrix");
    }
}

using EigenMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                               static_cast<int>(kMaxDim), static_cast<int>(kMaxDim)>;

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim) {
    check_dim(dim);
    a_.assign(dim * dim, Complex{});
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::initializer_list<Complex> entries)
    : ComplexMatrix(dim, std::vector<Complex>(entries)) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), a_(std::move(entries)) {
    check_dim(dim);
    if (a_.size() != dim * dim) {
        throw SizeError("expected " + std::to_string(dim * dim) + " entries, got " +
                        std::to_string(a_.size()));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
    ComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::projector(std::span<const Complex> vec) {
    ComplexMatrix m(vec.size());
    for (std::size_t i = 0; i < vec.size(); ++i)
        for (std::size_t j = 0; j < vec.size(); ++j) m(i, j) = vec[i] * std::conj(vec[j]);
    return m;
}

int ComplexMatrix::qubits() const noexcept { return std::countr_zero(dim_); }

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

Complex ComplexMatrix::trace() const noexcept {
    Complex t{};
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

bool ComplexMatrix::all_finite() const noexcept {
    return std::all_of(a_.begin(), a_.end(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

double ComplexMatrix::hermiticity_defect() const noexcept {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    check_same_dim(*this, other);
    double worst = 0.0;
    for (std::size_t k = 0; k < a_.size(); ++k) worst = std::max(worst, std::abs(a_[k] - other.a_[k]));
    return worst;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    check_same_dim(*this, rhs);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    check_same_dim(*this, rhs);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) noexcept {
    for (auto& z : a_) z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    check_same_dim(lhs, rhs);
    const std::size_t d = lhs.dim();
    ComplexMatrix out(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            const Complex l = lhs(i, k);
            if (l == Complex{}) continue;
            for (std::size_t j = 0; j < d; ++j) out(i, j) += l * rhs(k, j);
        }
    return out;
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (!m_.all_finite()) throw DomainError("density matrix has non-finite entries");
    const double herm = m_.hermiticity_defect();
    if (herm > kHermitianTol) {
        throw DomainError("density matrix is not Hermitian (defect " + std::to_string(herm) + ")");
    }
    const Complex tr = m_.trace();
    if (std::abs(tr - 1.0) > kTraceTol) {
        throw DomainError("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
    }
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> amplitudes) {
    double norm2 = 0.0;
    for (const auto& a : amplitudes) norm2 += std::norm(a);
    if (!(norm2 > 0.0)) throw DomainError("state vector has zero norm");
    ComplexMatrix m = ComplexMatrix::projector(amplitudes);
    m *= 1.0 / norm2;
    return DensityMatrix(std::move(m));
}

void DensityMatrix::check_psd() const {
    const auto ev = hermitian_eigenvalues(m_);
    if (ev.back() < kPsdFloor) {
        throw PsdError("density matrix has eigenvalue " + std::to_string(ev.back()));
    }
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t p = b.dim();
    const std::size_t d = a.dim() * p;
    if (d > kMaxDim) {
        throw SizeError("tensor product dimension " + std::to_string(d) + " exceeds 32");
    }
    ComplexMatrix out(d);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < p; ++k)
                for (std::size_t l = 0; l < p; ++l) out(i * p + k, j * p + l) = aij * b(k, l);
        }
    return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(tensor(a.matrix(), b.matrix()));
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const int> keep) {
    const int n = rho.qubits();
    if (keep.empty()) throw DomainError("partial_trace: keep set is empty");
    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
        throw DomainError("partial_trace: duplicate qubit in keep set");
    }
    if (kept.front() < 0 || kept.back() >= n) {
        throw DomainError("partial_trace: qubit index out of range for " + std::to_string(n) +
                          " qubits");
    }
    std::vector<int> traced;
    for (int q = 0; q < n; ++q)
        if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);

    // Global index contributions of each kept / traced bit pattern.
    auto patterns = [n](const std::vector<int>& qubits) {
        const std::size_t count = std::size_t{1} << qubits.size();
        std::vector<std::size_t> idx(count, 0);
        for (std::size_t pat = 0; pat < count; ++pat)
            for (std::size_t b = 0; b < qubits.size(); ++b)
                if (pat & (std::size_t{1} << (qubits.size() - 1 - b)))
                    idx[pat] |= std::size_t{1} << (n - 1 - qubits[b]);
        return idx;
    };
    const auto kept_idx = patterns(kept);
    const auto traced_idx = patterns(traced);

    ComplexMatrix out(kept_idx.size());
    for (std::size_t i = 0; i < kept_idx.size(); ++i)
        for (std::size_t j = 0; j < kept_idx.size(); ++j) {
            Complex s{};
            for (const std::size_t t : traced_idx) s += rho(kept_idx[i] | t, kept_idx[j] | t);
            out(i, j) = s;
        }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
    return DensityMatrix(partial_trace(rho.matrix(), keep));
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    const double herm = m.hermiticity_defect();
    if (herm > 1e-8) {
        throw DomainError("hermitian_eigenvalues: input is not Hermitian (defect " +
                          std::to_string(herm) + ")");
    }
    const auto d = static_cast<Eigen::Index>(m.dim());
    EigenMat em(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            em(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    Eigen::SelfAdjointEigenSolver<EigenMat> solver(em, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericError("eigensolver did not converge");
    std::vector<double> ev(solver.eigenvalues().begin(), solver.eigenvalues().end());
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

double spectrum_entropy(std::span<const double> spectrum) {
    double s = 0.0;
    for (const double lambda : spectrum) {
        if (lambda < DensityMatrix::kPsdFloor) {
            throw PsdError("eigenvalue " + std::to_string(lambda) + " below PSD floor");
        }
        if (lambda > 0.0) s -= lambda * std::log2(lambda);
    }
    return s;
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

double von_neumann_entropy(const ComplexMatrix& rho) {
    const auto ev = hermitian_eigenvalues(rho);
    return spectrum_entropy(ev);
}

double binary_entropy(double q) {
    const double spectrum[2] = {q, 1.0 - q};
    return spectrum_entropy(spectrum);
}

void left_multiply_local(ComplexMatrix& m, const ComplexMatrix& op, int qubit) {
    check_local(m, op, qubit);
    const std::size_t d = m.dim();
    const std::size_t bit = std::size_t{1} << (m.qubits() - 1 - qubit);
    const Complex o00 = op(0, 0), o01 = op(0, 1), o10 = op(1, 0), o11 = op(1, 1);
    for (std::size_t r0 = 0; r0 < d; ++r0) {
        if (r0 & bit) continue;
        const std::size_t r1 = r0 | bit;
        for (std::size_t c = 0; c < d; ++c) {
            const Complex a = m(r0, c), b = m(r1, c);
            m(r0, c) = o00 * a + o01 * b;
            m(r1, c) = o10 * a + o11 * b;
        }
    }
}

void right_multiply_local_adjoint(ComplexMatrix& m, const ComplexMatrix& op, int qubit) {
    check_local(m, op, qubit);
    const std::size_t d = m.dim();
    const std::size_t bit = std::size_t{1} << (m.qubits() - 1 - qubit);
    // (m op^dagger)(r, c0) = m(r,c0) conj(op00) + m(r,c1) conj(op01), etc.
    const Complex o00 = std::conj(op(0, 0)), o01 = std::conj(op(0, 1));
    const Complex o10 = std::conj(op(1, 0)), o11 = std::conj(op(1, 1));
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c0 = 0; c0 < d; ++c0) {
            if (c0 & bit) continue;
            const std::size_t c1 = c0 | bit;
            const Complex a = m(r, c0), b = m(r, c1);
            m(r, c0) = a * o00 + b * o01;
            m(r, c1) = a * o10 + b * o11;
        }
}

void conjugate_local(ComplexMatrix& rho, const ComplexMatrix& u, int qubit) {
    left_multiply_local(rho, u, qubit);
    right_multiply_local_adjoint(rho, u, qubit);
}

void apply_local(std::span<Complex> psi, const ComplexMatrix& op, int qubit, int n_qubits) {
    if (op.dim() != 2) throw SizeError("local operator must be 2x2");
    if (qubit < 0 || qubit >= n_qubits || psi.size() != (std::size_t{1} << n_qubits))
        throw DomainError("apply_local: qubit or vector size out of range");
    const std::size_t bit = std::size_t{1} << (n_qubits - 1 - qubit);
    const Complex o00 = op(0, 0), o01 = op(0, 1), o10 = op(1, 0), o11 = op(1, 1);
    for (std::size_t r0 = 0; r0 < psi.size(); ++r0) {
        if (r0 & bit) continue;
        const std::size_t r1 = r0 | bit;
        const Complex a = psi[r0], b = psi[r1];
        psi[r0] = o00 * a + o01 * b;
        psi[r1] = o10 * a + o11 * b;
    }
}

std::vector<Complex> pure_state_vector(const ComplexMatrix& rho, double tol) {
    const std::size_t d = rho.dim();
    std::size_t j = 0;
    for (std::size_t i = 1; i < d; ++i)
        if (rho(i, i).real() > rho(j, j).real()) j = i;
    const double pjj = rho(j, j).real();
    if (!(pjj > 0.0)) return {};
    std::vector<Complex> psi(d);
    const double norm = std::sqrt(pjj);
    for (std::size_t i = 0; i < d; ++i) psi[i] = rho(i, j) / norm;
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
            if (std::abs(rho(r, c) - psi[r] * std::conj(psi[c])) > tol) return {};
    return psi;
}

std::vector<double> gram_spectrum(std::span<const std::vector<Complex>> vectors) {
    const auto m = static_cast<Eigen::Index>(vectors.size());
    if (m == 0) return {};
    const std::size_t d = vectors.front().size();
    if (vectors.size() > kMaxDim) throw SizeError("gram_spectrum: more than 32 vectors");
    EigenMat g(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& vi = vectors[static_cast<std::size_t>(i)];
        if (vi.size() != d) throw SizeError("gram_spectrum: vectors of unequal length");
        for (Eigen::Index j = i; j < m; ++j) {
            const auto& vj = vectors[static_cast<std::size_t>(j)];
            Complex s{};
            for (std::size_t k = 0; k < d; ++k) s += std::conj(vi[k]) * vj[k];
            g(i, j) = s;
            g(j, i) = std::conj(s);
        }
    }
    std::vector<double> ev;
    if (m == 1) {
        ev = {g(0, 0).real()};
    } else {
        Eigen::SelfAdjointEigenSolver<EigenMat> solver(g, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) throw NumericError("eigensolver did not converge");
        ev.assign(solver.eigenvalues().begin(), solver.eigenvalues().end());
    }
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

ComplexMatrix lift_local(const ComplexMatrix& op, int qubit, int n_qubits) {
    if (op.dim() != 2) throw SizeError("local operator must be 2x2");
    if (qubit < 0 || qubit >= n_qubits) throw DomainError("lift_local: qubit out of range");
    ComplexMatrix out = ComplexMatrix::identity(std::size_t{1} << n_qubits);
    left_multiply_local(out, op, qubit);
    return out;
}

ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix pauli_y() { return ComplexMatrix(2, {0.0, Complex(0, -1), Complex(0, 1), 0.0}); }
ComplexMatrix pauli_z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

}  // namespace qdc
