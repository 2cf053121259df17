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

#include "tkd/linops.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

namespace tkd {

namespace {

using EMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EMat to_eigen(const ComplexMatrix& m) {
  return Eigen::Map<const EMat>(m.data(), static_cast<Eigen::Index>(m.rows()),
                                static_cast<Eigen::Index>(m.cols()));
}

ComplexMatrix from_eigen(const EMat& e) {
  ComplexMatrix out(static_cast<std::size_t>(e.rows()),
                    static_cast<std::size_t>(e.cols()));
  Eigen::Map<EMat>(out.data(), e.rows(), e.cols()) = e;
  return out;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("ComplexMatrix: entry count " +
                         std::to_string(data_.size()) + " != " +
                         std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<cplx>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<cplx> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("from_rows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return ComplexMatrix(r, c, std::move(data));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out = *this;
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

cplx ComplexMatrix::trace() const {
  require_square(*this, "trace");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::approx_equal(const ComplexMatrix& other, double tol) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (std::abs(data_[k] - other.data_[k]) > tol) return false;
  }
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator+=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator-=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " * " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  for (std::size_t i = 0; i < n; ++i) {
    cplx* orow = out.data() + i * m;
    for (std::size_t l = 0; l < k; ++l) {
      const cplx s = a(i, l);
      if (s == cplx(0.0, 0.0)) continue;
      const cplx* brow = b.data() + l * m;
      for (std::size_t j = 0; j < m; ++j) orow[j] += s * brow[j];
    }
  }
  return out;
}

std::size_t DimProfile::total() const {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx s = a(i, j);
      if (s == cplx(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = s * b(k, l);
    }
  return out;
}

ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors) {
  if (factors.empty()) return ComplexMatrix::identity(1);
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const DimProfile& profile,
                            const std::vector<std::size_t>& keep) {
  require_square(m, "partial_trace");
  if (profile.total() != m.rows()) {
    throw DimensionError("partial_trace: profile product " +
                         std::to_string(profile.total()) +
                         " != matrix side " + std::to_string(m.rows()));
  }
  const std::size_t nf = profile.count();
  std::vector<bool> kept(nf, false);
  for (std::size_t k : keep) {
    if (k >= nf) {
      throw DimensionError("partial_trace: keep index " + std::to_string(k) +
                           " out of range");
    }
    if (kept[k]) throw DimensionError("partial_trace: duplicate keep index");
    kept[k] = true;
  }
  std::vector<std::size_t> keep_sorted = keep;
  std::sort(keep_sorted.begin(), keep_sorted.end());
  std::vector<std::size_t> traced;
  for (std::size_t f = 0; f < nf; ++f)
    if (!kept[f]) traced.push_back(f);

  // Row-major strides of each factor in the full index.
  std::vector<std::size_t> stride(nf, 1);
  for (std::size_t f = nf; f-- > 1;) stride[f - 1] = stride[f] * profile.dims[f];

  auto offsets = [&](const std::vector<std::size_t>& fs) {
    std::size_t total = 1;
    for (std::size_t f : fs) total *= profile.dims[f];
    std::vector<std::size_t> off(total, 0);
    std::vector<std::size_t> digit(fs.size(), 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t o = 0;
      for (std::size_t q = 0; q < fs.size(); ++q) o += digit[q] * stride[fs[q]];
      off[idx] = o;
      for (std::size_t q = fs.size(); q-- > 0;) {
        if (++digit[q] < profile.dims[fs[q]]) break;
        digit[q] = 0;
      }
    }
    return off;
  };
  const auto koff = offsets(keep_sorted);
  const auto toff = offsets(traced);
  ComplexMatrix out(koff.size(), koff.size());
  for (std::size_t i = 0; i < koff.size(); ++i)
    for (std::size_t j = 0; j < koff.size(); ++j) {
      cplx s = 0.0;
      for (std::size_t t : toff) s += m(koff[i] + t, koff[j] + t);
      out(i, j) = s;
    }
  return out;
}

double max_abs(const ComplexMatrix& m) {
  double r = 0.0;
  for (const auto& z : m.entries()) r = std::max(r, std::abs(z));
  return r;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double r = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    r = std::max(r, std::abs(a.entries()[k] - b.entries()[k]));
  return r;
}

double frobenius(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& z : m.entries()) s += std::norm(z);
  return std::sqrt(s);
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.empty()) return 0.0;
  Eigen::JacobiSVD<EMat> svd(to_eigen(m));
  return svd.singularValues()(0);
}

double condition_number(const ComplexMatrix& m) {
  require_square(m, "condition_number");
  Eigen::JacobiSVD<EMat> svd(to_eigen(m));
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

ComplexMatrix inverse(const ComplexMatrix& m) {
  require_square(m, "inverse");
  Eigen::FullPivLU<EMat> lu(to_eigen(m));
  if (!lu.isInvertible()) throw ValidationError("inverse: singular matrix");
  return from_eigen(lu.inverse());
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "hs_inner");
  cplx s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    s += std::conj(a.entries()[k]) * b.entries()[k];
  return s;
}

cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionError("trace_product: shape mismatch");
  }
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, i);
  return s;
}

ComplexMatrix projector(const std::vector<cplx>& v) {
  ComplexMatrix p(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) p(i, j) = v[i] * std::conj(v[j]);
  return p;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (!m.is_square()) {
    throw DimensionError(std::string(what) + ": expected square matrix, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

ComplexMatrix EigenGroup::projector(std::size_t dim) const {
  ComplexMatrix p(dim, dim);
  for (const auto& v : vectors) p += tkd::projector(v);
  return p;
}

std::vector<EigenGroup> hermitian_eig(const ComplexMatrix& h, double tol) {
  require_square(h, "hermitian_eig");
  if (!is_hermitian(h, tol)) {
    throw ValidationError("hermitian_eig: input is not Hermitian within " +
                          std::to_string(tol));
  }
  const std::size_t d = h.rows();
  if (d == 0) return {};
  EMat e = to_eigen(h);
  e = (0.5 * (e + e.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<EMat> solver(e);
  if (solver.info() != Eigen::Success) {
    throw ValidationError("hermitian_eig: eigensolver failed");
  }
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();

  std::vector<EigenGroup> groups;
  std::size_t start = 0;
  for (std::size_t k = 1; k <= d; ++k) {
    if (k < d && vals(static_cast<Eigen::Index>(k)) -
                         vals(static_cast<Eigen::Index>(k - 1)) <=
                     tol) {
      continue;
    }
    EigenGroup g;
    double sum = 0.0;
    for (std::size_t c = start; c < k; ++c) {
      sum += vals(static_cast<Eigen::Index>(c));
      std::vector<cplx> v(d);
      for (std::size_t r = 0; r < d; ++r)
        v[r] = vecs(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      g.vectors.push_back(std::move(v));
    }
    g.value = sum / static_cast<double>(k - start);
    groups.push_back(std::move(g));
    start = k;
  }
  std::reverse(groups.begin(), groups.end());
  return groups;
}

std::vector<double> eigenvalues_hermitian(const ComplexMatrix& h) {
  require_square(h, "eigenvalues_hermitian");
  EMat e = to_eigen(h);
  e = (0.5 * (e + e.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<EMat> solver(e, Eigen::EigenvaluesOnly);
  std::vector<double> out(static_cast<std::size_t>(solver.eigenvalues().size()));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
  return out;
}

ComplexMatrix hermitian_phase(const ComplexMatrix& h, double u, int sign) {
  require_square(h, "hermitian_phase");
  const std::size_t d = h.rows();
  if (u == 0.0) return ComplexMatrix::identity(d);
  ComplexMatrix out(d, d);
  for (const auto& g : hermitian_eig(h, 1e-9)) {
    const cplx ph = std::polar(1.0, sign * g.value * u);
    out += ph * g.projector(d);
  }
  return out;
}

std::string to_string(const ComplexMatrix& m, int precision) {
  std::ostringstream os;
  os << std::setprecision(precision);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i == 0 ? "[[" : " [");
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << m(i, j).real() << (m(i, j).imag() < 0 ? "-" : "+")
         << std::abs(m(i, j).imag()) << "i";
    }
    os << (i + 1 == m.rows() ? "]]" : "]\n");
  }
  return os.str();
}

}  // namespace tkd
