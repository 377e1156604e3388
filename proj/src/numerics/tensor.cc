// src/numerics/tensor.cc

// Copyright 2026  The rntforge Authors

// See ../../COPYING for clarification regarding multiple authors
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

#include "rntforge/numerics/tensor.h"

#include <cmath>
#include <sstream>

#include "rntforge/numerics/errors.h"

namespace rntforge {

namespace {

size_t CheckedProduct(const std::vector<size_t> &shape) {
  size_t n = 1;
  for (size_t d : shape) {
    if (d == 0)
      throw DimensionError("tensor extents must be positive, got " +
                           ShapeString(shape));
    n *= d;
  }
  return shape.empty() ? 0 : n;
}

}  // namespace

std::string ShapeString(const std::vector<size_t> &shape) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) os << 'x';
    os << shape[i];
  }
  os << ']';
  return os.str();
}

Tensor::Tensor(std::vector<size_t> shape, double fill)
    : shape_(std::move(shape)), data_(CheckedProduct(shape_), fill) {}

Tensor::Tensor(std::vector<size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (CheckedProduct(shape_) != data_.size())
    throw DimensionError("tensor shape " + rntforge::ShapeString(shape_) +
                         " does not match " + std::to_string(data_.size()) +
                         " values");
}

Tensor Tensor::FromRows(
    std::initializer_list<std::initializer_list<double>> rows) {
  size_t cols = rows.size() ? rows.begin()->size() : 0;
  std::vector<double> data;
  for (const auto &row : rows) {
    if (row.size() != cols)
      throw DimensionError("ragged rows in Tensor::FromRows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Tensor({rows.size(), cols}, std::move(data));
}

Tensor Tensor::Vector(std::vector<double> values) {
  size_t n = values.size();
  return Tensor({n}, std::move(values));
}

size_t Tensor::dim(size_t axis) const {
  if (axis >= shape_.size())
    throw DimensionError("axis " + std::to_string(axis) +
                         " out of range for shape " + rntforge::ShapeString(shape_));
  return shape_[axis];
}

std::span<double> Tensor::Row(size_t r) {
  size_t stride = data_.size() / shape_[0];
  return std::span<double>(data_).subspan(r * stride, stride);
}

std::span<const double> Tensor::Row(size_t r) const {
  size_t stride = data_.size() / shape_[0];
  return std::span<const double>(data_).subspan(r * stride, stride);
}

void Tensor::Fill(double v) {
  for (double &x : data_) x = v;
}

void Tensor::AddScaled(const Tensor &other, double scale) {
  if (!SameShape(other))
    throw DimensionError("AddScaled: " + ShapeString() + " vs " +
                         other.ShapeString());
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += scale * other.data_[i];
}

void Tensor::Scale(double s) {
  for (double &x : data_) x *= s;
}

double Tensor::SquaredNorm() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return s;
}

bool Tensor::AllFinite() const {
  for (double x : data_)
    if (!std::isfinite(x)) return false;
  return true;
}

std::string Tensor::ShapeString() const { return rntforge::ShapeString(shape_); }

void CheckFinite(const Tensor &t, const std::string &what) {
  if (!t.AllFinite()) throw DomainError(what + " contains non-finite values");
}

void CheckLogDomain(const Tensor &t, const std::string &what) {
  for (double x : t.data()) {
    if (std::isnan(x) || x == INFINITY)
      throw DomainError(what + " contains NaN or +inf in the log domain");
  }
}

}  // namespace rntforge
