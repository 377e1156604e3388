// src/numerics/linalg.cc

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

#include "rntforge/numerics/linalg.h"

#include "rntforge/numerics/errors.h"

namespace rntforge {

namespace {

void RequireMatrix(const Tensor &t, const char *what) {
  if (t.rank() != 2)
    throw DimensionError(std::string(what) + " must be a matrix, got " +
                         t.ShapeString());
}

}  // namespace

Tensor Matmul(const Tensor &a, const Tensor &b) {
  RequireMatrix(a, "matmul lhs");
  RequireMatrix(b, "matmul rhs");
  if (a.dim(1) != b.dim(0))
    throw DimensionError("matmul shape mismatch: " + a.ShapeString() + " x " +
                         b.ShapeString());
  const size_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
  Tensor out({m, n});
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (size_t p = 0; p < k; ++p) s += a.at(i, p) * b.at(p, j);
      out.at(i, j) = s;
    }
  }
  return out;
}

Tensor MatmulTransB(const Tensor &a, const Tensor &b) {
  RequireMatrix(a, "matmul lhs");
  RequireMatrix(b, "matmul rhs");
  if (a.dim(1) != b.dim(1))
    throw DimensionError("matmul shape mismatch: " + a.ShapeString() +
                         " x transpose " + b.ShapeString());
  const size_t m = a.dim(0), k = a.dim(1), n = b.dim(0);
  Tensor out({m, n});
  const double *pa = a.data().data();
  const double *pb = b.data().data();
  for (size_t i = 0; i < m; ++i) {
    const double *row = pa + i * k;
    for (size_t j = 0; j < n; ++j) {
      const double *col = pb + j * k;
      double s = 0.0;
      for (size_t p = 0; p < k; ++p) s += row[p] * col[p];
      out.at(i, j) = s;
    }
  }
  return out;
}

Tensor MatmulTransA(const Tensor &a, const Tensor &b) {
  RequireMatrix(a, "matmul lhs");
  RequireMatrix(b, "matmul rhs");
  if (a.dim(0) != b.dim(0))
    throw DimensionError("matmul shape mismatch: transpose " +
                         a.ShapeString() + " x " + b.ShapeString());
  const size_t k = a.dim(0), m = a.dim(1), n = b.dim(1);
  Tensor out({m, n});
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (size_t p = 0; p < k; ++p) s += a.at(p, i) * b.at(p, j);
      out.at(i, j) = s;
    }
  }
  return out;
}

void MatVecAdd(const Tensor &w, std::span<const double> x,
               std::span<double> y) {
  const size_t rows = w.dim(0), cols = w.dim(1);
  if (x.size() != cols || y.size() != rows)
    throw DimensionError("MatVecAdd: W" + w.ShapeString() + " x[" +
                         std::to_string(x.size()) + "] -> y[" +
                         std::to_string(y.size()) + "]");
  const double *pw = w.data().data();
  for (size_t r = 0; r < rows; ++r) {
    const double *row = pw + r * cols;
    double s = 0.0;
    for (size_t c = 0; c < cols; ++c) s += row[c] * x[c];
    y[r] += s;
  }
}

void MatTransVecAdd(const Tensor &w, std::span<const double> x,
                    std::span<double> y) {
  const size_t rows = w.dim(0), cols = w.dim(1);
  if (x.size() != rows || y.size() != cols)
    throw DimensionError("MatTransVecAdd: W" + w.ShapeString() + "^T x[" +
                         std::to_string(x.size()) + "] -> y[" +
                         std::to_string(y.size()) + "]");
  const double *pw = w.data().data();
  for (size_t r = 0; r < rows; ++r) {
    const double xr = x[r];
    if (xr == 0.0) continue;
    const double *row = pw + r * cols;
    for (size_t c = 0; c < cols; ++c) y[c] += row[c] * xr;
  }
}

void AddOuter(std::span<const double> a, std::span<const double> b,
              Tensor *w, double scale) {
  const size_t rows = w->dim(0), cols = w->dim(1);
  if (a.size() != rows || b.size() != cols)
    throw DimensionError("AddOuter: [" + std::to_string(a.size()) + "] x [" +
                         std::to_string(b.size()) + "] into " +
                         w->ShapeString());
  double *pw = w->data().data();
  for (size_t r = 0; r < rows; ++r) {
    const double ar = a[r] * scale;
    if (ar == 0.0) continue;
    double *row = pw + r * cols;
    for (size_t c = 0; c < cols; ++c) row[c] += ar * b[c];
  }
}

Tensor Identity(size_t n) {
  Tensor t({n, n});
  for (size_t i = 0; i < n; ++i) t.at(i, i) = 1.0;
  return t;
}

}  // namespace rntforge
