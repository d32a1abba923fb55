#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace qbatt {

using Complex = std::complex<double>;

/// Dense complex square matrix sized for 2- and 3-qubit registers
/// (2x2 up to 8x8). Carrier for density matrices, Hamiltonians and
/// gate unitaries. Row-major storage, value semantics.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim);

    static ComplexMatrix identity(int dim);
    static ComplexMatrix diagonal(std::span<const double> entries);
    static ComplexMatrix diagonal(std::span<const Complex> entries);

    int dim() const { return dim_; }
    bool empty() const { return dim_ == 0; }

    Complex& operator()(int row, int col) { return data_[static_cast<std::size_t>(row) * dim_ + col]; }
    const Complex& operator()(int row, int col) const { return data_[static_cast<std::size_t>(row) * dim_ + col]; }

    std::span<const Complex> data() const { return data_; }

    /// True if no entry is NaN or infinite.
    bool all_finite() const;

    /// Max elementwise modulus of (this - other). Dimensions must match.
    double max_abs_diff(const ComplexMatrix& other) const;

    /// Max elementwise modulus of (this - this^dagger).
    double hermiticity_defect() const;

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    int dim_ = 0;
    std::vector<Complex> data_;
};

/// Kronecker product: dim(a)*dim(b) matrix with block structure a_ij * b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Standard matrix product; throws std::invalid_argument on dimension mismatch.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& a);

/// Sum of diagonal entries.
Complex trace(const ComplexMatrix& a);

/// Conjugation u * a * u^dagger (the unitary evolution step).
ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& a);

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascending,
/// eigenvector columns paired index-wise so that
/// V diag(lambda) V^dagger reconstructs the input.
struct HermitianEigenDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Cyclic complex Jacobi diagonalization. `tol` bounds the accepted
/// hermiticity defect of the input; convergence requires the
/// off-diagonal Frobenius norm to drop below 1e-12 within 1000 sweeps,
/// otherwise a std::runtime_error reports the residual.
HermitianEigenDecomposition hermitian_eig(const ComplexMatrix& a, double tol = 1e-10);

/// Eigenvalues only (ascending); same algorithm without accumulating vectors.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double tol = 1e-10);

/// Result of a density-matrix validity check. On failure `diagnostic`
/// names the first check that failed (finiteness, hermiticity, trace,
/// positivity) together with the offending measure.
struct DensityCheck {
    bool ok = false;
    std::string diagnostic;
    explicit operator bool() const { return ok; }
};

/// Valid density matrix: Hermitian within tol, trace 1 within tol,
/// eigenvalues >= -tol.
DensityCheck is_density_matrix(const ComplexMatrix& a, double tol);

/// True iff a * a^dagger = identity within tol (max elementwise modulus).
bool is_unitary(const ComplexMatrix& a, double tol);

}  // namespace qbatt
