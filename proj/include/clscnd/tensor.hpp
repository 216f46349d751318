#ifndef CLSCND_TENSOR_HPP
#define CLSCND_TENSOR_HPP

#include <array>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

namespace clscnd {

/// Dense row-major 2-D array, indexed [origin][destination].
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  std::span<double> flat() noexcept { return data_; }
  std::span<const double> flat() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Dense 3-D array indexed [transport option][origin][destination].
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(std::size_t options, std::size_t origins, std::size_t destinations, double fill = 0.0)
      : shape_{options, origins, destinations}, data_(options * origins * destinations, fill) {}

  double& operator()(std::size_t t, std::size_t o, std::size_t d) { return data_[index(t, o, d)]; }
  double operator()(std::size_t t, std::size_t o, std::size_t d) const { return data_[index(t, o, d)]; }

  const std::array<std::size_t, 3>& shape() const noexcept { return shape_; }
  std::size_t options() const noexcept { return shape_[0]; }
  std::size_t origins() const noexcept { return shape_[1]; }
  std::size_t destinations() const noexcept { return shape_[2]; }
  std::size_t size() const noexcept { return data_.size(); }
  std::span<double> flat() noexcept { return data_; }
  std::span<const double> flat() const noexcept { return data_; }

  std::size_t index(std::size_t t, std::size_t o, std::size_t d) const noexcept {
    return (t * shape_[1] + o) * shape_[2] + d;
  }

  /// Sum over options and destinations for one origin.
  double origin_total(std::size_t o) const {
    double s = 0.0;
    for (std::size_t t = 0; t < shape_[0]; ++t)
      for (std::size_t d = 0; d < shape_[2]; ++d) s += (*this)(t, o, d);
    return s;
  }

  /// Sum over options and origins for one destination.
  double destination_total(std::size_t d) const {
    double s = 0.0;
    for (std::size_t t = 0; t < shape_[0]; ++t)
      for (std::size_t o = 0; o < shape_[1]; ++o) s += (*this)(t, o, d);
    return s;
  }

  bool operator==(const Tensor3&) const = default;

 private:
  std::array<std::size_t, 3> shape_{0, 0, 0};
  std::vector<double> data_;
};

}  // namespace clscnd

#endif  // CLSCND_TENSOR_HPP
