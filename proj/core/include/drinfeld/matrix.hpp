#pragma once

// Linear algebra over F_p (packed residues, used for F_q-linear maps written
// in F_p coordinates) and over an arbitrary finite field (small matrices:
// Frobenius matrices and their characteristic polynomials).

#include <cstdint>
#include <optional>
#include <vector>

#include "drinfeld/field_poly.hpp"

namespace drinfeld {

class FpMatrix {
public:
  FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t prime() const { return p_; }

  std::uint32_t& at(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }
  void set_column(std::size_t j, const fp::Coeffs& v);

  std::vector<std::uint32_t> apply(const std::vector<std::uint32_t>& v) const;

  std::size_t rank() const;
  // Right kernel in reduced echelon form: one vector per free column, free
  // columns ascending, each with a 1 in its own free column.
  std::vector<std::vector<std::uint32_t>> kernel_basis() const;
  // Some x with A x = b, or nullopt.
  std::optional<std::vector<std::uint32_t>> solve(const std::vector<std::uint32_t>& b) const;
  // Dimension of the solution space of A x = 0 (cols - rank).
  std::size_t nullity() const { return cols_ - rank(); }

private:
  // Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref(std::vector<std::uint32_t>& m, std::size_t ncols) const;

  std::size_t rows_, cols_;
  std::uint32_t p_;
  std::vector<std::uint32_t> d_;
};

class MatrixFq {
public:
  MatrixFq(FieldPtr field, std::size_t rows, std::size_t cols);
  static MatrixFq identity(FieldPtr field, std::size_t n);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldElem& at(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
  const FieldElem& at(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

  MatrixFq operator*(const MatrixFq& o) const;
  MatrixFq operator+(const MatrixFq& o) const;
  MatrixFq operator-(const MatrixFq& o) const;
  MatrixFq scaled(const FieldElem& c) const;
  bool operator==(const MatrixFq& o) const;
  bool is_zero() const;

  std::vector<FieldElem> apply(const std::vector<FieldElem>& v) const;

  std::size_t rank() const;
  std::vector<std::vector<FieldElem>> kernel_basis() const;
  std::optional<std::vector<FieldElem>> solve(const std::vector<FieldElem>& b) const;
  FieldElem det() const;
  // Monic characteristic polynomial det(xI - M) via Hessenberg reduction.
  FieldPoly charpoly() const;
  // p(M) by Horner.
  MatrixFq evaluate(const FieldPoly& p) const;

private:
  FieldPtr field_;
  std::size_t rows_, cols_;
  std::vector<FieldElem> d_;
};

}  // namespace drinfeld
