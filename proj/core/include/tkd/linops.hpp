// Copyright 2026 The tempkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TKD_LINOPS_HPP
#define TKD_LINOPS_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "tkd/errors.hpp"

namespace tkd {

using cplx = std::complex<double>;

// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(const std::vector<cplx>& diag);
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<cplx>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  cplx* data() noexcept { return data_.data(); }
  const cplx* data() const noexcept { return data_.data(); }
  const std::vector<cplx>& entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  cplx trace() const;

  // Entrywise comparison; shapes must agree.
  bool approx_equal(const ComplexMatrix& other, double tol) const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);

// Tensor factorization of a square operator's index space.
struct DimProfile {
  std::vector<std::size_t> dims;

  std::size_t total() const;
  std::size_t count() const noexcept { return dims.size(); }
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors);

// Keeps the listed factors in their original relative order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const DimProfile& profile,
                            const std::vector<std::size_t>& keep);

double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius(const ComplexMatrix& m);
double spectral_norm(const ComplexMatrix& m);
double condition_number(const ComplexMatrix& m);
ComplexMatrix inverse(const ComplexMatrix& m);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
// Tr(a† b)
cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);
// |v><v| for a column vector given as a list of amplitudes.
ComplexMatrix projector(const std::vector<cplx>& v);
// Tr(a b) without forming the product.
cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& m, double tol);
void require_square(const ComplexMatrix& m, const char* what);
void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* what);

constexpr double kDefaultEigTol = 1e-8;

struct EigenGroup {
  double value = 0.0;
  std::vector<std::vector<cplx>> vectors;  // orthonormal columns

  ComplexMatrix projector(std::size_t dim) const;
};

// Spectral decomposition with eigenvalue clustering: consecutive sorted
// eigenvalues closer than tol land in one group. Groups are ordered by
// descending eigenvalue.
std::vector<EigenGroup> hermitian_eig(const ComplexMatrix& h,
                                      double tol = kDefaultEigTol);

// Plain sorted (ascending) eigenvalues of a Hermitian matrix.
std::vector<double> eigenvalues_hermitian(const ComplexMatrix& h);

// exp(s * i * h * u) for Hermitian h, via its spectral decomposition.
ComplexMatrix hermitian_phase(const ComplexMatrix& h, double u, int sign);

std::string to_string(const ComplexMatrix& m, int precision = 6);

}  // namespace tkd

#endif  // TKD_LINOPS_HPP
