// Copyright 2026 The qts Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Reference implementations used only by the tests. They share no code
// paths with the library: matrix exponentials by Taylor series with scaling
// and squaring, partial traces by explicit basis sums, Kronecker products by
// the index formula.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline Matrix expm(const Matrix& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm + 1e-300))) + 1);
  const Matrix b = a / std::pow(2.0, squarings);
  Matrix term = Matrix::Identity(a.rows(), a.cols()), sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j)
      out(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
  return out;
}

// tr_B for a bipartite operator on dA x dB, as sum_b (1 (x) <b|) M (1 (x) |b>).
inline Matrix trace_second(const Matrix& m, Eigen::Index da, Eigen::Index db) {
  Matrix out = Matrix::Zero(da, da);
  for (Eigen::Index b = 0; b < db; ++b) {
    Matrix e = Matrix::Zero(db, 1);
    e(b, 0) = 1.0;
    const Matrix p = kron(Matrix::Identity(da, da), e);
    out += p.adjoint() * m * p;
  }
  return out;
}

inline Matrix trace_first(const Matrix& m, Eigen::Index da, Eigen::Index db) {
  Matrix out = Matrix::Zero(db, db);
  for (Eigen::Index a = 0; a < da; ++a) {
    Matrix e = Matrix::Zero(da, 1);
    e(a, 0) = 1.0;
    const Matrix p = kron(e, Matrix::Identity(db, db));
    out += p.adjoint() * m * p;
  }
  return out;
}

inline Matrix random_complex(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

inline Matrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  const Matrix m = random_complex(n, rng);
  return (m + m.adjoint()) * 0.5;
}

// Random full-rank density matrix G G^dagger / tr.
inline Matrix random_state(Eigen::Index n, std::mt19937_64& rng) {
  const Matrix g = random_complex(n, rng);
  Matrix r = g * g.adjoint();
  r /= r.trace();
  return (r + r.adjoint()) * 0.5;
}

inline Matrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  return expm(Complex(0.0, -1.0) * random_hermitian(n, rng));
}

// Composite Simpson rule on [a, b] with n (even) intervals.
template <class F>
double simpson(F&& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

// Von Neumann entropy via the characteristic-free route tr(-rho log rho)
// with log from Eigen's general (non-Hermitian) eigensolver.
inline double entropy(const Matrix& rho) {
  Eigen::ComplexEigenSolver<Matrix> es(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i).real();
    if (p > 1e-15) s -= p * std::log(p);
  }
  return s;
}

}  // namespace oracle
