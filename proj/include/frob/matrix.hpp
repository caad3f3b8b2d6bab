#pragma once

// Dense matrices over a finite field.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "frob/ff.hpp"

namespace frob {

class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols)
      : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(Field f, std::size_t n);
  static Matrix reverse_identity(Field f, std::size_t n);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && same_field(field_, o.field_) && data_ == o.data_;
  }

  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
/// Entrywise a -> a^(p^e).
Matrix frobenius(const Matrix& a, std::uint64_t e);
/// Entrywise a -> a^(p^-e).
Matrix frobenius_root(const Matrix& a, std::uint64_t e);
/// Image of a under a field embedding.
Matrix embed(const Matrix& a, const Extension& ext);

std::size_t rank(const Matrix& a);
/// Basis of {v : a v = 0}, one vector per free column, in reduced echelon form.
std::vector<std::vector<Elem>> kernel(const Matrix& a);
std::optional<Matrix> inverse(const Matrix& a);
bool is_invertible(const Matrix& a);
/// Rows of a and b stacked.
Matrix vstack(const Matrix& a, const Matrix& b);

}  // namespace frob
