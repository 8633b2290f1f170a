// Copyright 2026 The corrhss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace corrhss {

using complex = std::complex<double>;

/// Largest operator dimension the library will materialize (10 qubits).
inline constexpr std::size_t kDefaultMaxDim = std::size_t{1} << 10;

/// Dense square complex matrix, row-major.
///
/// Computational-basis convention: qubit 1 (the first channel use) is the
/// least-significant bit of a basis index, so an n-qubit operator built as
/// kron(A_n, ..., A_1) acts with A_1 on bit 0.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows);

  static ComplexMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }

  complex& operator()(std::size_t row, std::size_t col) {
    return data_[row * dim_ + col];
  }
  const complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<const complex> data() const { return data_; }
  std::span<complex> data() { return data_; }

  ComplexMatrix adjoint() const;
  complex trace() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(complex scalar);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    return a += b;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    return a -= b;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, complex s) { return a *= s; }
  friend ComplexMatrix operator*(complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<complex> data_;
};

/// Largest entrywise modulus of a - b. Dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |A - A^dagger| over entries.
double hermiticity_defect(const ComplexMatrix& a);

/// Hilbert-Schmidt inner product Tr[a^dagger b].
complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tensor product; result[(i*db+k),(j*db+l)] = a[i,j]*b[k,l].
/// Throws DimensionLimitError when a.dim()*b.dim() exceeds max_dim.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   std::size_t max_dim = kDefaultMaxDim);

/// Single-qubit Pauli matrix sigma_i, i in {0,1,2,3} = {I,X,Y,Z}.
const ComplexMatrix& pauli_matrix(int i);

/// Sorted eigenvalues of a Hermitian matrix (validation paths only).
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

/// Tensor product of Pauli operators sigma_{i_n} ... sigma_{i_1}.
/// indices[k] acts on qubit k+1, i.e. on bit k of the basis index.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<std::uint8_t> indices);

  static PauliString identity(std::size_t n) {
    return PauliString(std::vector<std::uint8_t>(n, 0));
  }

  std::size_t size() const { return indices_.size(); }
  std::uint8_t operator[](std::size_t k) const { return indices_[k]; }
  const std::vector<std::uint8_t>& indices() const { return indices_; }

  // Bits flipped by the string (x or y) and bits picking up a sign (y or z).
  std::uint64_t x_mask() const { return x_mask_; }
  std::uint64_t z_mask() const { return z_mask_; }
  int y_count() const { return y_count_; }

  ComplexMatrix to_matrix(std::size_t max_dim = kDefaultMaxDim) const;

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.indices_ == b.indices_;
  }
  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    return a.indices_ <=> b.indices_;
  }

 private:
  std::vector<std::uint8_t> indices_;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;
  int y_count_ = 0;
};

struct BasisImage {
  std::uint64_t index;
  complex phase;  // one of +1, -1, +i, -i
};

/// P|j> = phase |j'>.
BasisImage pauli_action(const PauliString& p, std::uint64_t j);

struct MatrixEntry {
  std::uint64_t row;
  std::uint64_t col;
  complex value;
};

/// Image of the matrix unit v|j><k| under X -> P X P.
MatrixEntry conjugate_entry(const PauliString& p, const MatrixEntry& e);

/// Entries of x whose modulus is nonzero, in row-major order.
std::vector<MatrixEntry> nonzero_entries(const ComplexMatrix& x);

/// sqrt((1/2) sum |x_jk|^2), which equals sqrt((1/2) Tr[x^2]) for Hermitian x.
/// Throws ContractViolation when x is not Hermitian within herm_tol.
double frobenius_hss_norm(const ComplexMatrix& x, double herm_tol = 1e-10);

/// Unit-trace positive-semidefinite Hermitian matrix.
class DensityOperator {
 public:
  /// Checks Hermiticity and unit trace (1e-12). Positivity is checked only
  /// by validate_positive().
  explicit DensityOperator(ComplexMatrix m);

  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.dim(); }
  double purity() const;

  /// Throws ContractViolation when the smallest eigenvalue is below -tol.
  void validate_positive(double tol = 1e-9) const;

 private:
  ComplexMatrix matrix_;
};

}  // namespace corrhss
