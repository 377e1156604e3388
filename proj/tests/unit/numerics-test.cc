// tests/unit/numerics-test.cc

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

#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "rntforge/numerics/errors.h"
#include "rntforge/numerics/gradcheck.h"
#include "rntforge/numerics/linalg.h"
#include "rntforge/numerics/logmath.h"
#include "rntforge/numerics/parallel.h"
#include "rntforge/numerics/rng.h"
#include "rntforge/numerics/tensor.h"

using namespace rntforge;

namespace {

Tensor RandomMatrix(size_t r, size_t c, Rng *rng) {
  Tensor t({r, c});
  for (double &x : t.data()) x = rng->Normal();
  return t;
}

}  // namespace

TEST_CASE("tensor shape bookkeeping") {
  Tensor t({2, 3}, 1.5);
  CHECK(t.size() == 6);
  CHECK(t.rank() == 2);
  CHECK(t.at(1, 2) == 1.5);
  CHECK_THROWS_AS(Tensor({2, 0}), DimensionError);
  CHECK_THROWS_AS(Tensor({2, 2}, std::vector<double>{1, 2, 3}), DimensionError);
  CHECK_THROWS_AS(t.dim(2), DimensionError);
  CHECK(t.ShapeString() == "[2x3]");
}

TEST_CASE("finite and log-domain checks") {
  Tensor t = Tensor::Vector({0.0, -INFINITY});
  CHECK_THROWS_AS(CheckFinite(t, "t"), DomainError);
  CHECK_NOTHROW(CheckLogDomain(t, "t"));
  Tensor bad = Tensor::Vector({0.0, INFINITY});
  CHECK_THROWS_AS(CheckLogDomain(bad, "bad"), DomainError);
  Tensor nan = Tensor::Vector({std::nan("")});
  CHECK_THROWS_AS(CheckLogDomain(nan, "nan"), DomainError);
}

TEST_CASE("matmul examples") {
  Tensor b = Tensor::FromRows({{1, 2}, {3, 4}});
  CHECK(Matmul(Identity(2), b) == b);
  CHECK(Matmul(Tensor::FromRows({{1, 0}}), Tensor::FromRows({{5}, {7}})) ==
        Tensor::FromRows({{5}}));
  CHECK_THROWS_AS(Matmul(Tensor({2, 3}), Tensor({2, 3})), DimensionError);
}

TEST_CASE("matmul matches a triple-loop oracle") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Tensor a = RandomMatrix(3, 4, &rng), b = RandomMatrix(4, 2, &rng);
    Tensor c = Matmul(a, b);
    for (size_t i = 0; i < 3; ++i)
      for (size_t j = 0; j < 2; ++j) {
        double s = 0.0;
        for (size_t k = 0; k < 4; ++k) s += a.at(i, k) * b.at(k, j);
        CHECK(std::abs(c.at(i, j) - s) <= 1e-12);
      }
    // Transposed variants against the plain product.
    Tensor bt({2, 4});
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = 0; j < 2; ++j) bt.at(j, i) = b.at(i, j);
    Tensor at({4, 3});
    for (size_t i = 0; i < 3; ++i)
      for (size_t k = 0; k < 4; ++k) at.at(k, i) = a.at(i, k);
    CHECK(RelativeError(MatmulTransB(a, bt), c) <= 1e-14);
    CHECK(RelativeError(MatmulTransA(at, b), c) <= 1e-14);
  }
}

TEST_CASE("product with the identity is exact") {
  Rng rng(3);
  Tensor a = RandomMatrix(5, 4, &rng);
  CHECK(Matmul(a, Identity(4)) == a);
}

TEST_CASE("matrix-vector helpers") {
  Tensor w = Tensor::FromRows({{1, 2, 3}, {4, 5, 6}});
  std::vector<double> x = {1, 0, -1}, y = {10, 20};
  MatVecAdd(w, x, y);
  CHECK(y == std::vector<double>{8, 18});
  std::vector<double> z(3, 0.0), v = {1, 1};
  MatTransVecAdd(w, v, z);
  CHECK(z == std::vector<double>{5, 7, 9});
  Tensor o({2, 3});
  AddOuter(std::vector<double>{1, 2}, std::vector<double>{1, 0, 1}, &o, 2.0);
  CHECK(o == Tensor::FromRows({{2, 0, 2}, {4, 0, 4}}));
}

TEST_CASE("logsumexp examples") {
  std::vector<double> zeros = {0.0, 0.0};
  CHECK(LogSumExp(zeros) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  std::vector<double> absorb = {kLogZero, -3.25};
  CHECK(LogSumExp(absorb) == -3.25);
  std::vector<double> big = {1000.0, 1000.0};
  CHECK(LogSumExp(big) == doctest::Approx(1000.0 + std::log(2.0)));
  std::vector<double> all_zero = {kLogZero, kLogZero};
  CHECK(LogSumExp(all_zero) == kLogZero);
  CHECK_THROWS_AS(LogSumExp(std::vector<double>{}), DomainError);
  CHECK(LogAdd(kLogZero, kLogZero) == kLogZero);
  CHECK(LogAdd(std::log(0.25), std::log(0.5)) ==
        doctest::Approx(std::log(0.75)).epsilon(1e-14));
}

TEST_CASE("logsumexp shifts with a constant") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(1 + rng.UniformInt(8));
    for (double &x : v) x = rng.Normal(0.0, 5.0);
    double c = rng.Normal(0.0, 50.0);
    std::vector<double> w = v;
    for (double &x : w) x += c;
    CHECK(std::abs(LogSumExp(w) - (LogSumExp(v) + c)) <= 1e-12 * (1 + std::abs(c)));
  }
}

TEST_CASE("sigmoid stays finite at the extremes") {
  CHECK(Sigmoid(0.0) == 0.5);
  CHECK(Sigmoid(800.0) == 1.0);
  CHECK(Sigmoid(-800.0) == 0.0);
  CHECK(Sigmoid(2.0) + Sigmoid(-2.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("rng matches the reference xoshiro256++ stream") {
  // Independent big-integer implementation of splitmix64-seeded
  // xoshiro256++, seed 42.
  Rng rng(42);
  CHECK(rng.NextU64() == 0xd0764d4f4476689full);
  CHECK(rng.NextU64() == 0x519e4174576f3791ull);
  CHECK(rng.NextU64() == 0xfbe07cfb0c24ed8cull);
}

TEST_CASE("rng reproducibility over a million draws") {
  Rng a(2024), b(2024);
  bool same = true;
  for (int i = 0; i < 1000000; ++i) same &= a.NextU64() == b.NextU64();
  CHECK(same);
  Rng c(2025);
  CHECK(Rng(2024).NextU64() != c.NextU64());
}

TEST_CASE("rng draws stay in range") {
  Rng rng(5);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double u = rng.Uniform();
    CHECK_UNARY(u >= 0.0);
    CHECK_UNARY(u < 1.0);
    uint64_t k = rng.UniformInt(7);
    CHECK_UNARY(k < 7);
    double z = rng.Normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sq / n - 1.0) < 0.02);
}

TEST_CASE("rng forks are labelled and leave the parent untouched") {
  Rng parent(9);
  Rng x = parent.Fork("x"), y = parent.Fork("y"), x2 = parent.Fork("x");
  CHECK(x.NextU64() == x2.NextU64());
  CHECK(parent.Fork("x").NextU64() != y.NextU64());
  Rng fresh(9);
  CHECK(parent.NextU64() == fresh.NextU64());
}

TEST_CASE("shuffle is a permutation") {
  Rng rng(1);
  std::vector<int> v(50);
  for (int i = 0; i < 50; ++i) v[i] = i;
  rng.Shuffle(&v);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) CHECK(sorted[i] == i);
}

TEST_CASE("finite differences") {
  Tensor p = Tensor::Vector({3.0});
  Tensor g = FiniteDiffGrad([](const Tensor &t) { return t[0] * t[0]; }, p);
  CHECK(std::abs(g[0] - 6.0) <= 1e-6);
  Tensor q = Tensor::Vector({1.0, -2.0, 0.5});
  Tensor z = FiniteDiffGrad([](const Tensor &) { return 4.0; }, q);
  CHECK(z == Tensor({3}, 0.0));
  CHECK_THROWS_AS(
      FiniteDiffGrad([](const Tensor &t) { return std::log(t[0]); },
                     Tensor::Vector({0.0})),
      EvaluationError);
}

TEST_CASE("relative error is norm-wise") {
  CHECK(RelativeError(Tensor({2}, 0.0), Tensor({2}, 0.0)) == 0.0);
  CHECK(RelativeError(Tensor::Vector({1, 0}), Tensor::Vector({0, 1})) ==
        doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("parallel for covers every index and reports the first failure") {
  std::vector<int> hits(1000, 0);
  ParallelFor(hits.size(), [&](size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  try {
    ParallelFor(100, [](size_t i) {
      if (i == 17 || i == 60) throw IndexError("item " + std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const IndexError &e) {
    CHECK(std::string(e.what()) == "item 17");
  }
  CHECK(NumThreads() >= 1);
}
