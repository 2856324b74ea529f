#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "hopfcoh/ring.hpp"

namespace hopfcoh {

// Dense row-major matrix over a RingSpec; every entry is kept canonical.
// Column j is the image of the j-th basis vector.
class Matrix {
 public:
  Matrix() = default;
  Matrix(RingSpec ring, std::size_t rows, std::size_t cols);

  static Matrix identity(const RingSpec& ring, std::size_t n);
  static Matrix from_rows(const RingSpec& ring, std::initializer_list<std::initializer_list<long>> rows);
  static Matrix from_rows(const RingSpec& ring, const std::vector<std::vector<mpq_class>>& rows);
  static Matrix column(const RingSpec& ring, std::span<const mpq_class> v);
  static Matrix row(const RingSpec& ring, std::span<const mpq_class> v);
  // Column-major construction from a list of column vectors of equal length.
  static Matrix from_columns(const RingSpec& ring, std::size_t rows,
                             const std::vector<std::vector<mpq_class>>& cols);

  const RingSpec& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const mpq_class& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const mpq_class& v) { data_[i * cols_ + j] = ring_.canonical(v); }
  void add_to(std::size_t i, std::size_t j, const mpq_class& v);
  std::span<const mpq_class> row_span(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::vector<mpq_class> col(std::size_t j) const;
  std::span<const mpq_class> data() const { return data_; }

  Matrix transpose() const;
  Matrix operator*(const Matrix& b) const;
  Matrix operator+(const Matrix& b) const;
  Matrix operator-(const Matrix& b) const;
  Matrix scaled(const mpq_class& c) const;
  std::vector<mpq_class> apply(std::span<const mpq_class> v) const;

  Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Matrix select_columns(std::span<const std::size_t> idx) const;
  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix hcat(const Matrix& b) const;
  Matrix vcat(const Matrix& b) const;

  bool is_zero() const;
  bool is_identity() const;
  // First (row, col) where the two matrices differ, or {rows, cols} when equal.
  std::pair<std::size_t, std::size_t> first_difference(const Matrix& b) const;

  // Entrywise canonical ring map.
  Matrix map_ring(const RingSpec& target) const;

  bool operator==(const Matrix& o) const {
    return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  RingSpec ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpq_class> data_;
};

// Kronecker product with the (i, j) -> i * cols(b) + j index convention.
Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b, const Matrix& c);
// Permutation x (x) y -> y (x) x on k^a (x) k^b.
Matrix swap_matrix(const RingSpec& ring, std::size_t a, std::size_t b);
Matrix zero_matrix(const RingSpec& ring, std::size_t rows, std::size_t cols);

// Column-compressed matrix used for the large, very sparse cochain differentials.
class SparseMatrix {
 public:
  struct Entry {
    std::size_t row;
    mpq_class value;
  };

  SparseMatrix() = default;
  SparseMatrix(RingSpec ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), columns_(cols) {}
  static SparseMatrix from_dense(const Matrix& m);

  const RingSpec& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const;

  // Entries are canonicalized, zeros dropped, rows sorted.
  void set_column(std::size_t j, std::vector<Entry> entries);
  std::span<const Entry> column(std::size_t j) const { return columns_[j]; }
  std::vector<mpq_class> apply(std::span<const mpq_class> v) const;

  SparseMatrix operator*(const SparseMatrix& b) const;
  bool is_zero() const;
  Matrix to_dense() const;

 private:
  RingSpec ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> columns_;
};

}  // namespace hopfcoh
