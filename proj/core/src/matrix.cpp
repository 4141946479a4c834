#include "drinfeld/matrix.hpp"

#include <stdexcept>

namespace drinfeld {

// ----------------------------------------------------------------- FpMatrix

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), d_(rows * cols, 0) {}

void FpMatrix::set_column(std::size_t j, const fp::Coeffs& v) {
  for (std::size_t i = 0; i < rows_; ++i) at(i, j) = i < v.size() ? v[i] : 0;
}

std::vector<std::uint32_t> FpMatrix::apply(const std::vector<std::uint32_t>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("dimension mismatch in FpMatrix::apply");
  std::vector<std::uint32_t> out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t acc = 0;
    const std::uint32_t* row = d_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) {
      acc += std::uint64_t(row[j]) * v[j] % p_;
    }
    out[i] = std::uint32_t(acc % p_);
  }
  return out;
}

std::vector<std::size_t> FpMatrix::rref(std::vector<std::uint32_t>& m, std::size_t ncols) const {
  const std::size_t nrows = m.size() / ncols;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    std::size_t piv = r;
    while (piv < nrows && m[piv * ncols + c] == 0) ++piv;
    if (piv == nrows) continue;
    if (piv != r) {
      for (std::size_t k = 0; k < ncols; ++k) std::swap(m[piv * ncols + k], m[r * ncols + k]);
    }
    std::uint32_t* prow = m.data() + r * ncols;
    const std::uint32_t iv = fp::inv_mod(prow[c], p_);
    for (std::size_t k = c; k < ncols; ++k) prow[k] = fp::mul_mod(prow[k], iv, p_);
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == r) continue;
      std::uint32_t* row = m.data() + i * ncols;
      const std::uint32_t f = row[c];
      if (!f) continue;
      const std::uint32_t nf = p_ - f;
      for (std::size_t k = c; k < ncols; ++k) {
        if (prow[k]) row[k] = std::uint32_t((row[k] + std::uint64_t(nf) * prow[k]) % p_);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t FpMatrix::rank() const {
  std::vector<std::uint32_t> m = d_;
  if (cols_ == 0) return 0;
  return rref(m, cols_).size();
}

std::vector<std::vector<std::uint32_t>> FpMatrix::kernel_basis() const {
  std::vector<std::vector<std::uint32_t>> out;
  if (cols_ == 0) return out;
  std::vector<std::uint32_t> m = d_;
  const auto pivots = rref(m, cols_);
  std::vector<int> pivot_row(cols_, -1);
  for (std::size_t i = 0; i < pivots.size(); ++i) pivot_row[pivots[i]] = int(i);
  for (std::size_t f = 0; f < cols_; ++f) {
    if (pivot_row[f] >= 0) continue;
    std::vector<std::uint32_t> v(cols_, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      const std::uint32_t c = m[i * cols_ + f];
      v[pivots[i]] = c ? p_ - c : 0;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<std::uint32_t>> FpMatrix::solve(const std::vector<std::uint32_t>& b) const {
  if (b.size() != rows_) throw std::invalid_argument("dimension mismatch in FpMatrix::solve");
  const std::size_t nc = cols_ + 1;
  std::vector<std::uint32_t> m(rows_ * nc);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m[i * nc + j] = at(i, j);
    m[i * nc + cols_] = b[i] % p_;
  }
  const auto pivots = rref(m, nc);
  std::vector<std::uint32_t> x(cols_, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == cols_) return std::nullopt;
    x[pivots[i]] = m[i * nc + cols_];
  }
  return x;
}

// ----------------------------------------------------------------- MatrixFq

MatrixFq::MatrixFq(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), d_(rows * cols, field_->zero()) {}

MatrixFq MatrixFq::identity(FieldPtr field, std::size_t n) {
  MatrixFq m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field->one();
  return m;
}

MatrixFq MatrixFq::operator*(const MatrixFq& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("dimension mismatch in matrix product");
  MatrixFq r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const FieldElem& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (!o.at(k, j).is_zero()) r.at(i, j) += a * o.at(k, j);
      }
    }
  }
  return r;
}

MatrixFq MatrixFq::operator+(const MatrixFq& o) const {
  MatrixFq r = *this;
  for (std::size_t i = 0; i < d_.size(); ++i) r.d_[i] += o.d_[i];
  return r;
}

MatrixFq MatrixFq::operator-(const MatrixFq& o) const {
  MatrixFq r = *this;
  for (std::size_t i = 0; i < d_.size(); ++i) r.d_[i] -= o.d_[i];
  return r;
}

MatrixFq MatrixFq::scaled(const FieldElem& c) const {
  MatrixFq r = *this;
  for (auto& v : r.d_) v *= c;
  return r;
}

bool MatrixFq::operator==(const MatrixFq& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
}

bool MatrixFq::is_zero() const {
  for (const auto& v : d_) {
    if (!v.is_zero()) return false;
  }
  return true;
}

std::vector<FieldElem> MatrixFq::apply(const std::vector<FieldElem>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("dimension mismatch in MatrixFq::apply");
  std::vector<FieldElem> out(rows_, field_->zero());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!at(i, j).is_zero() && !v[j].is_zero()) out[i] += at(i, j) * v[j];
    }
  }
  return out;
}

namespace {

// RREF over a finite field; returns pivot columns.
std::vector<std::size_t> rref_fq(std::vector<std::vector<FieldElem>>& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    const FieldElem iv = m[r][c].inverse();
    for (std::size_t k = c; k < ncols; ++k) m[r][k] *= iv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const FieldElem f = m[i][c];
      for (std::size_t k = c; k < ncols; ++k) {
        if (!m[r][k].is_zero()) m[i][k] -= f * m[r][k];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t MatrixFq::rank() const {
  std::vector<std::vector<FieldElem>> m(rows_);
  for (std::size_t i = 0; i < rows_; ++i) m[i].assign(d_.begin() + long(i * cols_), d_.begin() + long((i + 1) * cols_));
  return rref_fq(m, cols_).size();
}

std::vector<std::vector<FieldElem>> MatrixFq::kernel_basis() const {
  std::vector<std::vector<FieldElem>> m(rows_);
  for (std::size_t i = 0; i < rows_; ++i) m[i].assign(d_.begin() + long(i * cols_), d_.begin() + long((i + 1) * cols_));
  const auto pivots = rref_fq(m, cols_);
  std::vector<int> pivot_row(cols_, -1);
  for (std::size_t i = 0; i < pivots.size(); ++i) pivot_row[pivots[i]] = int(i);
  std::vector<std::vector<FieldElem>> out;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (pivot_row[f] >= 0) continue;
    std::vector<FieldElem> v(cols_, field_->zero());
    v[f] = field_->one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<FieldElem>> MatrixFq::solve(const std::vector<FieldElem>& b) const {
  std::vector<std::vector<FieldElem>> m(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    m[i].assign(d_.begin() + long(i * cols_), d_.begin() + long((i + 1) * cols_));
    m[i].push_back(b[i]);
  }
  const auto pivots = rref_fq(m, cols_ + 1);
  std::vector<FieldElem> x(cols_, field_->zero());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == cols_) return std::nullopt;
    x[pivots[i]] = m[i][cols_];
  }
  return x;
}

FieldElem MatrixFq::det() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
  std::vector<std::vector<FieldElem>> m(rows_);
  for (std::size_t i = 0; i < rows_; ++i) m[i].assign(d_.begin() + long(i * cols_), d_.begin() + long((i + 1) * cols_));
  FieldElem det = field_->one();
  for (std::size_t c = 0; c < cols_; ++c) {
    std::size_t piv = c;
    while (piv < rows_ && m[piv][c].is_zero()) ++piv;
    if (piv == rows_) return field_->zero();
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    const FieldElem iv = m[c][c].inverse();
    for (std::size_t i = c + 1; i < rows_; ++i) {
      if (m[i][c].is_zero()) continue;
      const FieldElem f = m[i][c] * iv;
      for (std::size_t k = c; k < cols_; ++k) m[i][k] -= f * m[c][k];
    }
  }
  return det;
}

FieldPoly MatrixFq::charpoly() const {
  if (rows_ != cols_) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
  const std::size_t n = rows_;
  std::vector<std::vector<FieldElem>> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i].assign(d_.begin() + long(i * n), d_.begin() + long((i + 1) * n));
  // Similarity transform to upper Hessenberg form.
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && h[piv][j].is_zero()) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      std::swap(h[piv], h[j + 1]);
      for (std::size_t i = 0; i < n; ++i) std::swap(h[i][piv], h[i][j + 1]);
    }
    const FieldElem iv = h[j + 1][j].inverse();
    for (std::size_t i = j + 2; i < n; ++i) {
      if (h[i][j].is_zero()) continue;
      const FieldElem u = h[i][j] * iv;
      for (std::size_t k = 0; k < n; ++k) h[i][k] -= u * h[j + 1][k];
      for (std::size_t k = 0; k < n; ++k) h[k][j + 1] += u * h[k][i];
    }
  }
  // p_{k+1} = (x - h_kk) p_k - sum_{i<k} h_ik (prod_{j=i+1}^{k} h_{j,j-1}) p_i
  std::vector<FieldPoly> pk;
  pk.push_back(FieldPoly::constant(field_->one()));
  const FieldPoly x = FieldPoly::x(field_);
  for (std::size_t k = 0; k < n; ++k) {
    FieldPoly next = (x - FieldPoly::constant(h[k][k])) * pk[k];
    FieldElem prod = field_->one();
    for (std::size_t i = k; i-- > 0;) {
      prod *= h[i + 1][i];
      if (prod.is_zero()) break;
      const FieldElem c = h[i][k] * prod;
      if (!c.is_zero()) next = next - pk[i] * c;
    }
    pk.push_back(std::move(next));
  }
  return pk.back();
}

MatrixFq MatrixFq::evaluate(const FieldPoly& p) const {
  MatrixFq acc(field_, rows_, cols_);
  const MatrixFq id = identity(field_, rows_);
  for (std::size_t i = p.coeffs().size(); i-- > 0;) acc = acc * *this + id.scaled(p.coeffs()[i]);
  return acc;
}

}  // namespace drinfeld
