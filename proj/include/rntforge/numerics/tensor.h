// include/rntforge/numerics/tensor.h

// Copyright 2026  The rntforge Authors

// See ../../../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef RNTFORGE_NUMERICS_TENSOR_H_
#define RNTFORGE_NUMERICS_TENSOR_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace rntforge {

// Dense row-major array of doubles. There is no broadcasting and no view
// aliasing: every Tensor owns its storage.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<size_t> shape, double fill = 0.0);
  Tensor(std::vector<size_t> shape, std::vector<double> data);

  // Convenience for tests and small literals: rows of equal length.
  static Tensor FromRows(std::initializer_list<std::initializer_list<double>> rows);
  static Tensor Vector(std::vector<double> values);

  const std::vector<size_t> &shape() const { return shape_; }
  size_t rank() const { return shape_.size(); }
  size_t dim(size_t axis) const;
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  const std::vector<double> &values() const { return data_; }

  double &operator[](size_t i) { return data_[i]; }
  double operator[](size_t i) const { return data_[i]; }

  double &at(size_t r, size_t c) { return data_[r * shape_[1] + c]; }
  double at(size_t r, size_t c) const { return data_[r * shape_[1] + c]; }
  double &at(size_t i, size_t j, size_t k) {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }
  double at(size_t i, size_t j, size_t k) const {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }

  // Contiguous slice for one index of the leading axis.
  std::span<double> Row(size_t r);
  std::span<const double> Row(size_t r) const;

  bool SameShape(const Tensor &other) const { return shape_ == other.shape_; }
  void Fill(double v);
  void SetZero() { Fill(0.0); }

  // this += scale * other; shapes must match exactly.
  void AddScaled(const Tensor &other, double scale = 1.0);
  void Scale(double s);

  double SquaredNorm() const;
  bool AllFinite() const;

  std::string ShapeString() const;

  bool operator==(const Tensor &other) const = default;

 private:
  std::vector<size_t> shape_;
  std::vector<double> data_;
};

std::string ShapeString(const std::vector<size_t> &shape);

// Throws DomainError naming `what` if any element is NaN or +/-inf.
void CheckFinite(const Tensor &t, const std::string &what);

// Log-domain tensors may hold -inf but never +inf or NaN.
void CheckLogDomain(const Tensor &t, const std::string &what);

}  // namespace rntforge

#endif  // RNTFORGE_NUMERICS_TENSOR_H_
