#ifndef QOTP_MATRIX_HPP
#define QOTP_MATRIX_HPP

#include <complex>
#include <vector>

namespace qotp {

using cx = std::complex<double>;

// Dense square complex matrix, row-major. Dimensions are powers of two
// throughout this library (everything lives on qubits).
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim);
    ComplexMatrix(int dim, std::vector<cx> entries);

    static ComplexMatrix identity(int dim);
    static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }

    int dim() const { return dim_; }
    cx& at(int r, int c) { return a_[std::size_t(r) * dim_ + c]; }
    const cx& at(int r, int c) const { return a_[std::size_t(r) * dim_ + c]; }
    const std::vector<cx>& entries() const { return a_; }
    std::vector<cx>& entries() { return a_; }

    ComplexMatrix dagger() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    cx trace() const;
    double fro_norm() const;
    double max_abs() const;
    bool is_hermitian(double tol) const;
    bool is_unitary(double tol) const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cx scalar);
    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { a += b; return a; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { a -= b; return a; }
    friend ComplexMatrix operator*(cx s, ComplexMatrix a) { a *= s; return a; }

  private:
    int dim_ = 0;
    std::vector<cx> a_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// Tensor product. Both dimensions must be powers of two.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_power_of_two(int v);

// The single-qubit gate and Pauli alphabet.
ComplexMatrix pauli_x_matrix();
ComplexMatrix pauli_y_matrix();
ComplexMatrix pauli_z_matrix();
ComplexMatrix hadamard_matrix();
ComplexMatrix phase_s_matrix();

}  // namespace qotp

#endif
