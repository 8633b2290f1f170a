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

#include "corrhss/qmat.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "corrhss/errors.hpp"

namespace corrhss {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<complex>> rows)
    : dim_(rows.size()) {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) {
      throw std::invalid_argument("ComplexMatrix: rows must form a square matrix");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

complex ComplexMatrix::trace() const {
  complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) throw DomainError("matrix dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) throw DomainError("matrix dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(complex scalar) {
  for (auto& z : data_) z *= scalar;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_) throw DomainError("matrix dimension mismatch");
  const std::size_t d = a.dim_;
  ComplexMatrix out(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const complex aik = a(i, k);
      if (aik == complex{}) continue;
      for (std::size_t j = 0; j < d; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DomainError("matrix dimension mismatch");
  double worst = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i)
    worst = std::max(worst, std::abs(da[i] - db[i]));
  return worst;
}

double hermiticity_defect(const ComplexMatrix& a) {
  double worst = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = r; c < a.dim(); ++c)
      worst = std::max(worst, std::abs(a(r, c) - std::conj(a(c, r))));
  return worst;
}

complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DomainError("matrix dimension mismatch");
  complex acc = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) acc += std::conj(da[i]) * db[i];
  return acc;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   std::size_t max_dim) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  if (da != 0 && db > max_dim / da) {
    throw DimensionLimitError("kron: dimension " + std::to_string(da) + "x" +
                              std::to_string(db) + " exceeds limit " +
                              std::to_string(max_dim));
  }
  ComplexMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const complex aij = a(i, j);
      if (aij == complex{}) continue;
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l)
          out(i * db + k, j * db + l) = aij * b(k, l);
    }
  return out;
}

const ComplexMatrix& pauli_matrix(int i) {
  static const ComplexMatrix kPaulis[4] = {
      {{1.0, 0.0}, {0.0, 1.0}},
      {{0.0, 1.0}, {1.0, 0.0}},
      {{0.0, complex(0, -1)}, {complex(0, 1), 0.0}},
      {{1.0, 0.0}, {0.0, -1.0}},
  };
  if (i < 0 || i > 3) throw DomainError("pauli index must be in {0,1,2,3}");
  return kPaulis[i];
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
  const auto d = static_cast<Eigen::Index>(a.dim());
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c)
      m(r, c) = a(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ContractViolation("hermitian_eigenvalues: eigen-solver did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

PauliString::PauliString(std::vector<std::uint8_t> indices)
    : indices_(std::move(indices)) {
  if (indices_.size() > 63) throw DimensionLimitError("PauliString: too many qubits");
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    const std::uint8_t p = indices_[k];
    if (p > 3) throw DomainError("PauliString: entries must be in {0,1,2,3}");
    const std::uint64_t bit = std::uint64_t{1} << k;
    if (p == 1 || p == 2) x_mask_ |= bit;
    if (p == 2 || p == 3) z_mask_ |= bit;
    if (p == 2) ++y_count_;
  }
}

ComplexMatrix PauliString::to_matrix(std::size_t max_dim) const {
  ComplexMatrix out = ComplexMatrix::identity(1);
  // Most significant qubit first: kron(sigma_{i_n}, ..., sigma_{i_1}).
  for (std::size_t k = indices_.size(); k-- > 0;)
    out = kron(out, pauli_matrix(indices_[k]), max_dim);
  return out;
}

BasisImage pauli_action(const PauliString& p, std::uint64_t j) {
  // sigma_y = i sigma_x sigma_z, so P|j> = i^{#y} (-1)^{|j & z|} |j ^ x>.
  static constexpr complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  complex phase = kIPow[p.y_count() % 4];
  if (std::popcount(j & p.z_mask()) % 2 == 1) phase = -phase;
  return {j ^ p.x_mask(), phase};
}

MatrixEntry conjugate_entry(const PauliString& p, const MatrixEntry& e) {
  // phase(j) * conj(phase(k)): the i^{#y} factors cancel.
  const bool negate = std::popcount((e.row ^ e.col) & p.z_mask()) % 2 == 1;
  return {e.row ^ p.x_mask(), e.col ^ p.x_mask(), negate ? -e.value : e.value};
}

std::vector<MatrixEntry> nonzero_entries(const ComplexMatrix& x) {
  std::vector<MatrixEntry> out;
  for (std::size_t r = 0; r < x.dim(); ++r)
    for (std::size_t c = 0; c < x.dim(); ++c)
      if (x(r, c) != complex{}) out.push_back({r, c, x(r, c)});
  return out;
}

double frobenius_hss_norm(const ComplexMatrix& x, double herm_tol) {
  const double defect = hermiticity_defect(x);
  if (defect > herm_tol) {
    throw ContractViolation("frobenius_hss_norm: input not Hermitian (defect " +
                            std::to_string(defect) + ")");
  }
  double acc = 0.0;
  for (const complex& z : x.data()) acc += std::norm(z);
  return std::sqrt(0.5 * acc);
}

DensityOperator::DensityOperator(ComplexMatrix m) : matrix_(std::move(m)) {
  if (!matrix_.all_finite()) throw ContractViolation("density operator has non-finite entries");
  if (hermiticity_defect(matrix_) > 1e-12)
    throw ContractViolation("density operator is not Hermitian");
  if (std::abs(matrix_.trace() - 1.0) > 1e-12)
    throw ContractViolation("density operator trace differs from 1");
}

double DensityOperator::purity() const {
  return hs_inner(matrix_, matrix_).real();
}

void DensityOperator::validate_positive(double tol) const {
  const auto ev = hermitian_eigenvalues(matrix_);
  if (!ev.empty() && ev.front() < -tol)
    throw ContractViolation("density operator has eigenvalue " + std::to_string(ev.front()));
}

}  // namespace corrhss
