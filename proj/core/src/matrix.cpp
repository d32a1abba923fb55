#include "qbatt/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qbatt {

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
    if (dim < 1) {
        throw std::invalid_argument("ComplexMatrix: dimension must be positive");
    }
    data_.assign(static_cast<std::size_t>(dim) * dim, Complex{0.0, 0.0});
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
    ComplexMatrix m(static_cast<int>(entries.size()));
    for (int i = 0; i < m.dim(); ++i) {
        m(i, i) = entries[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> entries) {
    ComplexMatrix m(static_cast<int>(entries.size()));
    for (int i = 0; i < m.dim(); ++i) {
        m(i, i) = entries[i];
    }
    return m;
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    if (dim_ != other.dim_) {
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) {
        worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
    }
    return worst;
}

double ComplexMatrix::hermiticity_defect() const {
    double worst = 0.0;
    for (int r = 0; r < dim_; ++r) {
        for (int c = r; c < dim_; ++c) {
            worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return worst;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int na = a.dim();
    const int nb = b.dim();
    ComplexMatrix out(na * nb);
    for (int i = 0; i < na; ++i) {
        for (int j = 0; j < na; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{0.0, 0.0}) continue;
            for (int k = 0; k < nb; ++k) {
                for (int l = 0; l < nb; ++l) {
                    out(i * nb + k, j * nb + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("matmul: dimension mismatch");
    }
    const int n = a.dim();
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{0.0, 0.0}) continue;
            for (int j = 0; j < n; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    const int n = a.dim();
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out(i, j) = std::conj(a(j, i));
        }
    }
    return out;
}

Complex trace(const ComplexMatrix& a) {
    Complex t{0.0, 0.0};
    for (int i = 0; i < a.dim(); ++i) {
        t += a(i, i);
    }
    return t;
}

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& a) {
    return matmul(matmul(u, a), adjoint(u));
}

namespace {

constexpr double kOffDiagonalTarget = 1e-12;  // Frobenius norm of the off-diagonal part
constexpr int kMaxSweeps = 1000;

double off_diagonal_frobenius(const ComplexMatrix& a) {
    double sum = 0.0;
    for (int r = 0; r < a.dim(); ++r) {
        for (int c = 0; c < a.dim(); ++c) {
            if (r != c) sum += std::norm(a(r, c));
        }
    }
    return std::sqrt(sum);
}

// Cyclic complex Jacobi. Each rotation zeroes one off-diagonal pair via
// the plane unitary R = D * J with D = diag(1, e^{-i phi}) absorbing the
// phase of a_pq and J the real Jacobi rotation for the resulting
// symmetric 2x2 block.
void jacobi_diagonalize(ComplexMatrix& a, ComplexMatrix* vectors) {
    const int n = a.dim();
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_frobenius(a) < kOffDiagonalTarget) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double b = std::abs(apq);
                if (b == 0.0) continue;
                const Complex phase = apq / b;  // e^{i phi}
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * b);
                const double sign = tau >= 0.0 ? 1.0 : -1.0;
                const double t = sign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex sp = s * phase;             // rotation entries
                const Complex cp = c * phase;

                // columns: A <- A * R with R(p,p)=c, R(p,q)=s,
                //          R(q,p)=-s*conj(phase), R(q,q)=c*conj(phase)
                for (int k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - std::conj(sp) * akq;
                    a(k, q) = s * akp + std::conj(cp) * akq;
                }
                // rows: A <- R^dagger * A
                for (int k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - sp * aqk;
                    a(q, k) = s * apk + cp * aqk;
                }
                // restore exact Hermitian structure on the touched entries
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                if (vectors != nullptr) {
                    for (int k = 0; k < n; ++k) {
                        const Complex vkp = (*vectors)(k, p);
                        const Complex vkq = (*vectors)(k, q);
                        (*vectors)(k, p) = c * vkp - std::conj(sp) * vkq;
                        (*vectors)(k, q) = s * vkp + std::conj(cp) * vkq;
                    }
                }
            }
        }
    }
    const double residual = off_diagonal_frobenius(a);
    if (residual >= kOffDiagonalTarget) {
        std::ostringstream msg;
        msg << "hermitian_eig: no convergence after " << sweep
            << " sweeps, off-diagonal residual " << residual;
        throw std::runtime_error(msg.str());
    }
}

void check_hermitian_input(const ComplexMatrix& a, double tol) {
    if (a.empty()) {
        throw std::invalid_argument("hermitian_eig: empty matrix");
    }
    const double defect = a.hermiticity_defect();
    if (!(defect <= tol)) {
        std::ostringstream msg;
        msg << "hermitian_eig: input not Hermitian (defect " << defect
            << " exceeds tolerance " << tol << ")";
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

HermitianEigenDecomposition hermitian_eig(const ComplexMatrix& a, double tol) {
    check_hermitian_input(a, tol);
    const int n = a.dim();
    ComplexMatrix work = a;
    ComplexMatrix vectors = ComplexMatrix::identity(n);
    jacobi_diagonalize(work, &vectors);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return work(i, i).real() < work(j, j).real();
    });

    HermitianEigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n);
    for (int j = 0; j < n; ++j) {
        out.eigenvalues[j] = work(order[j], order[j]).real();
        for (int i = 0; i < n; ++i) {
            out.eigenvectors(i, j) = vectors(i, order[j]);
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double tol) {
    check_hermitian_input(a, tol);
    ComplexMatrix work = a;
    jacobi_diagonalize(work, nullptr);
    std::vector<double> values(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        values[i] = work(i, i).real();
    }
    std::sort(values.begin(), values.end());
    return values;
}

DensityCheck is_density_matrix(const ComplexMatrix& a, double tol) {
    std::ostringstream msg;
    if (!a.all_finite()) {
        return {false, "non-finite entry"};
    }
    const double defect = a.hermiticity_defect();
    if (defect > tol) {
        msg << "not Hermitian: defect " << defect << " > " << tol;
        return {false, msg.str()};
    }
    const double trace_error = std::abs(trace(a) - Complex{1.0, 0.0});
    if (trace_error > tol) {
        msg << "trace deviates from 1 by " << trace_error << " > " << tol;
        return {false, msg.str()};
    }
    const std::vector<double> values = hermitian_eigenvalues(a, std::max(tol, 1e-10));
    if (values.front() < -tol) {
        msg << "negative eigenvalue " << values.front() << " < " << -tol;
        return {false, msg.str()};
    }
    return {true, {}};
}

bool is_unitary(const ComplexMatrix& a, double tol) {
    const ComplexMatrix product = matmul(a, adjoint(a));
    return product.max_abs_diff(ComplexMatrix::identity(a.dim())) <= tol;
}

}  // namespace qbatt
