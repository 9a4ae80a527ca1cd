// Copyright (C) 2026 Perivox contributors
//
// You may use, distribute and modify this code under the
// terms of the Apache 2.0 license. See the LICENSE file.

#ifndef PERIVOX_UTIL_HPP
#define PERIVOX_UTIL_HPP

#include <cassert>
#include <cstddef>
#include <vector>

namespace perivox {

inline constexpr double kPi = 3.14159265358979323846;

// Dense row-major matrix, just enough for subband-by-sample blocks.
template <typename T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols, T fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T* row(std::size_t r) {
    assert(r < rows_);
    return data_.data() + r * cols_;
  }
  const T* row(std::size_t r) const {
    assert(r < rows_);
    return data_.data() + r * cols_;
  }

  T& at(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const T& at(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

}  // namespace perivox

#endif  // PERIVOX_UTIL_HPP
