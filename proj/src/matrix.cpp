#include "hopfcoh/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "hopfcoh/error.hpp"

namespace hopfcoh {

namespace {

void require_same_ring(const Matrix& a, const Matrix& b, const char* op) {
  if (a.ring() != b.ring()) {
    fail(ErrorKind::MalformedData, std::string(op) + ": ring mismatch " + a.ring().name() +
                                       " vs " + b.ring().name());
  }
}

}  // namespace

Matrix::Matrix(RingSpec ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(const RingSpec& ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

Matrix Matrix::from_rows(const RingSpec& ring,
                         std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t nr = rows.size();
  std::size_t nc = nr ? rows.begin()->size() : 0;
  Matrix m(ring, nr, nc);
  std::size_t i = 0;
  for (auto& r : rows) {
    if (r.size() != nc) fail(ErrorKind::MalformedData, "ragged matrix rows");
    std::size_t j = 0;
    for (long v : r) m.set(i, j++, mpq_class(v));
    ++i;
  }
  return m;
}

Matrix Matrix::from_rows(const RingSpec& ring, const std::vector<std::vector<mpq_class>>& rows) {
  std::size_t nr = rows.size();
  std::size_t nc = nr ? rows.front().size() : 0;
  Matrix m(ring, nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    if (rows[i].size() != nc) fail(ErrorKind::MalformedData, "ragged matrix rows");
    for (std::size_t j = 0; j < nc; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Matrix Matrix::column(const RingSpec& ring, std::span<const mpq_class> v) {
  Matrix m(ring, v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
  return m;
}

Matrix Matrix::row(const RingSpec& ring, std::span<const mpq_class> v) {
  Matrix m(ring, 1, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m.set(0, i, v[i]);
  return m;
}

Matrix Matrix::from_columns(const RingSpec& ring, std::size_t rows,
                            const std::vector<std::vector<mpq_class>>& cols) {
  Matrix m(ring, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) fail(ErrorKind::MalformedData, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m.set(i, j, cols[j][i]);
  }
  return m;
}

void Matrix::add_to(std::size_t i, std::size_t j, const mpq_class& v) {
  mpq_class& e = data_[i * cols_ + j];
  e = ring_.canonical(e + v);
}

std::vector<mpq_class> Matrix::col(std::size_t j) const {
  std::vector<mpq_class> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = data_[i * cols_ + j];
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
  return t;
}

Matrix Matrix::operator*(const Matrix& b) const {
  require_same_ring(*this, b, "multiply");
  if (cols_ != b.rows_) {
    fail(ErrorKind::MalformedData, "multiply: shape " + std::to_string(rows_) + "x" +
                                       std::to_string(cols_) + " by " + std::to_string(b.rows_) +
                                       "x" + std::to_string(b.cols_));
  }
  Matrix out(ring_, rows_, b.cols_);
  // Accumulate unreduced, canonicalize once per entry.
  mpq_class t;
  for (std::size_t i = 0; i < rows_; ++i) {
    mpq_class* orow = out.data_.data() + i * b.cols_;
    for (std::size_t k = 0; k < cols_; ++k) {
      const mpq_class& a = data_[i * cols_ + k];
      if (sgn(a) == 0) continue;
      const mpq_class* brow = b.data_.data() + k * b.cols_;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (sgn(brow[j]) == 0) continue;
        t = a * brow[j];
        orow[j] += t;
      }
    }
    if (ring_.kind() != RingKind::Rationals) {
      for (std::size_t j = 0; j < b.cols_; ++j) orow[j] = ring_.canonical(orow[j]);
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& b) const {
  require_same_ring(*this, b, "add");
  if (rows_ != b.rows_ || cols_ != b.cols_) fail(ErrorKind::MalformedData, "add: shape mismatch");
  Matrix out(ring_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = ring_.canonical(data_[i] + b.data_[i]);
  return out;
}

Matrix Matrix::operator-(const Matrix& b) const {
  require_same_ring(*this, b, "subtract");
  if (rows_ != b.rows_ || cols_ != b.cols_) fail(ErrorKind::MalformedData, "subtract: shape mismatch");
  Matrix out(ring_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = ring_.canonical(data_[i] - b.data_[i]);
  return out;
}

Matrix Matrix::scaled(const mpq_class& c) const {
  Matrix out(ring_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = ring_.canonical(data_[i] * c);
  return out;
}

std::vector<mpq_class> Matrix::apply(std::span<const mpq_class> v) const {
  if (v.size() != cols_) fail(ErrorKind::MalformedData, "apply: vector length mismatch");
  std::vector<mpq_class> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    mpq_class acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      const mpq_class& a = data_[i * cols_ + j];
      if (sgn(a) != 0 && sgn(v[j]) != 0) acc += a * v[j];
    }
    out[i] = ring_.canonical(acc);
  }
  return out;
}

Matrix Matrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) fail(ErrorKind::MalformedData, "submatrix out of range");
  Matrix out(ring_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out.data_[i * nc + j] = data_[(r0 + i) * cols_ + c0 + j];
  return out;
}

Matrix Matrix::select_columns(std::span<const std::size_t> idx) const {
  Matrix out(ring_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out.data_[i * idx.size() + j] = data_[i * cols_ + idx[j]];
  return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix out(ring_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.data_[i * cols_ + j] = data_[idx[i] * cols_ + j];
  return out;
}

Matrix Matrix::hcat(const Matrix& b) const {
  require_same_ring(*this, b, "hcat");
  if (rows_ != b.rows_) fail(ErrorKind::MalformedData, "hcat: row mismatch");
  Matrix out(ring_, rows_, cols_ + b.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.data_[i * out.cols_ + j] = data_[i * cols_ + j];
    for (std::size_t j = 0; j < b.cols_; ++j) out.data_[i * out.cols_ + cols_ + j] = b.data_[i * b.cols_ + j];
  }
  return out;
}

Matrix Matrix::vcat(const Matrix& b) const {
  require_same_ring(*this, b, "vcat");
  if (cols_ != b.cols_) fail(ErrorKind::MalformedData, "vcat: column mismatch");
  Matrix out(ring_, rows_ + b.rows_, cols_);
  std::copy(data_.begin(), data_.end(), out.data_.begin());
  std::copy(b.data_.begin(), b.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& e : data_)
    if (sgn(e) != 0) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (data_[i * cols_ + j] != (i == j ? 1 : 0)) return false;
  return true;
}

std::pair<std::size_t, std::size_t> Matrix::first_difference(const Matrix& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) return {0, 0};
  // Scan column-major so the reported column is the first failing basis vector.
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i)
      if (data_[i * cols_ + j] != b.data_[i * cols_ + j]) return {i, j};
  return {rows_, cols_};
}

Matrix Matrix::map_ring(const RingSpec& target) const {
  Matrix out(target, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = map_element(ring_, target, data_[i]);
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).get_str();
  }
  os << "]";
  return os.str();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "kron");
  Matrix out(a.ring(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const mpq_class& x = a.at(i, j);
      if (sgn(x) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          const mpq_class& y = b.at(k, l);
          if (sgn(y) == 0) continue;
          out.set(i * b.rows() + k, j * b.cols() + l, x * y);
        }
    }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b, const Matrix& c) { return kron(kron(a, b), c); }

Matrix swap_matrix(const RingSpec& ring, std::size_t a, std::size_t b) {
  Matrix out(ring, a * b, a * b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) out.set(j * a + i, i * b + j, mpq_class(1));
  return out;
}

Matrix zero_matrix(const RingSpec& ring, std::size_t rows, std::size_t cols) {
  return Matrix(ring, rows, cols);
}

SparseMatrix SparseMatrix::from_dense(const Matrix& m) {
  SparseMatrix s(m.ring(), m.rows(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (sgn(m.at(i, j)) != 0) s.columns_[j].push_back({i, m.at(i, j)});
  return s;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

void SparseMatrix::set_column(std::size_t j, std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.row < b.row; });
  std::vector<Entry> out;
  out.reserve(entries.size());
  for (auto& e : entries) {
    if (e.row >= rows_) fail(ErrorKind::MalformedData, "sparse entry row out of range");
    if (!out.empty() && out.back().row == e.row) {
      out.back().value += e.value;
    } else {
      out.push_back(std::move(e));
    }
  }
  std::vector<Entry> kept;
  kept.reserve(out.size());
  for (auto& e : out) {
    e.value = ring_.canonical(e.value);
    if (sgn(e.value) != 0) kept.push_back(std::move(e));
  }
  columns_[j] = std::move(kept);
}

std::vector<mpq_class> SparseMatrix::apply(std::span<const mpq_class> v) const {
  if (v.size() != cols_) fail(ErrorKind::MalformedData, "apply: vector length mismatch");
  std::vector<mpq_class> out(rows_);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (sgn(v[j]) == 0) continue;
    for (const auto& e : columns_[j]) out[e.row] += e.value * v[j];
  }
  for (auto& x : out) x = ring_.canonical(x);
  return out;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& b) const {
  if (ring_ != b.ring_) fail(ErrorKind::MalformedData, "sparse multiply: ring mismatch");
  if (cols_ != b.rows_) fail(ErrorKind::MalformedData, "sparse multiply: shape mismatch");
  SparseMatrix out(ring_, rows_, b.cols_);
  std::vector<mpq_class> acc(rows_);
  std::vector<char> seen(rows_, 0);
  std::vector<std::size_t> touched;
  for (std::size_t j = 0; j < b.cols_; ++j) {
    touched.clear();
    for (const auto& eb : b.columns_[j]) {
      for (const auto& ea : columns_[eb.row]) {
        if (!seen[ea.row]) {
          seen[ea.row] = 1;
          touched.push_back(ea.row);
          acc[ea.row] = 0;
        }
        acc[ea.row] += ea.value * eb.value;
      }
    }
    std::vector<Entry> col;
    col.reserve(touched.size());
    for (std::size_t r : touched) {
      seen[r] = 0;
      col.push_back({r, acc[r]});
    }
    out.set_column(j, std::move(col));
  }
  return out;
}

bool SparseMatrix::is_zero() const {
  for (const auto& c : columns_)
    if (!c.empty()) return false;
  return true;
}

Matrix SparseMatrix::to_dense() const {
  Matrix m(ring_, rows_, cols_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (const auto& e : columns_[j]) m.set(e.row, j, e.value);
  return m;
}

}  // namespace hopfcoh
