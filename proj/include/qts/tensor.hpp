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

// Dense complex linear algebra on tensor-product Hilbert spaces.

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "qts/errors.hpp"

namespace qts {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-10;

// Ordered subsystem dimensions; the first factor is the most significant
// digit of a joint basis index.
class SubsystemLayout {
 public:
  SubsystemLayout() : dims_{1} {}
  SubsystemLayout(std::initializer_list<std::size_t> dims)
      : SubsystemLayout(std::vector<std::size_t>(dims)) {}
  explicit SubsystemLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw InvalidArgument("SubsystemLayout: dimension list is empty");
    for (std::size_t d : dims_)
      if (d == 0) throw InvalidArgument("SubsystemLayout: dimensions must be >= 1");
  }

  std::size_t size() const noexcept { return dims_.size(); }
  std::size_t operator[](std::size_t i) const { return dims_.at(i); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }

  std::size_t total() const noexcept {
    std::size_t n = 1;
    for (std::size_t d : dims_) n *= d;
    return n;
  }

  SubsystemLayout concat(const SubsystemLayout& other) const {
    std::vector<std::size_t> d = dims_;
    d.insert(d.end(), other.dims_.begin(), other.dims_.end());
    return SubsystemLayout(std::move(d));
  }

  SubsystemLayout select(const std::vector<std::size_t>& idx) const {
    std::vector<std::size_t> d;
    d.reserve(idx.size());
    for (std::size_t i : idx) d.push_back(dims_.at(i));
    return SubsystemLayout(std::move(d));
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(dims_[i]);
    }
    return s + "]";
  }

  friend bool operator==(const SubsystemLayout&, const SubsystemLayout&) = default;

 private:
  std::vector<std::size_t> dims_;
};

// Square complex matrix tagged with its tensor-factor structure.
class Operator {
 public:
  Operator() : m_(Matrix::Zero(1, 1)) {}

  explicit Operator(Matrix m) : m_(std::move(m)) {
    check_square();
    layout_ = SubsystemLayout{static_cast<std::size_t>(m_.rows())};
  }

  Operator(Matrix m, SubsystemLayout layout) : m_(std::move(m)), layout_(std::move(layout)) {
    check_square();
    if (layout_.total() != static_cast<std::size_t>(m_.rows()))
      throw InvalidArgument("Operator: layout " + layout_.to_string() + " does not match dimension " +
                            std::to_string(m_.rows()));
  }

  static Operator identity(const SubsystemLayout& layout) {
    const auto n = static_cast<Eigen::Index>(layout.total());
    return Operator(Matrix::Identity(n, n), layout);
  }
  static Operator identity(std::size_t dim) { return identity(SubsystemLayout{dim}); }

  static Operator zero(const SubsystemLayout& layout) {
    const auto n = static_cast<Eigen::Index>(layout.total());
    return Operator(Matrix::Zero(n, n), layout);
  }
  static Operator zero(std::size_t dim) { return zero(SubsystemLayout{dim}); }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  const SubsystemLayout& layout() const noexcept { return layout_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  Operator adjoint() const { return Operator(m_.adjoint(), layout_); }
  Complex trace() const { return m_.trace(); }

  // Largest |m_ij - conj(m_ji)|.
  double hermiticity_error() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }
  bool is_hermitian(double tol = kHermitianTol) const { return hermiticity_error() <= tol; }

  // (m + m^dagger)/2; exactly Hermitian in floating point.
  Operator hermitized() const { return Operator(Matrix((m_ + m_.adjoint()) * 0.5), layout_); }

  Operator with_layout(SubsystemLayout layout) const { return Operator(m_, std::move(layout)); }

  Operator& operator+=(const Operator& o) {
    require_same_layout(o, "+");
    m_ += o.m_;
    return *this;
  }
  Operator& operator-=(const Operator& o) {
    require_same_layout(o, "-");
    m_ -= o.m_;
    return *this;
  }
  Operator& operator*=(Complex s) {
    m_ *= s;
    return *this;
  }

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator-(Operator a) { return a *= -1.0; }
  friend Operator operator*(Operator a, Complex s) { return a *= s; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(Operator a, double s) { return a *= s; }
  friend Operator operator*(double s, Operator a) { return a *= s; }

  friend Operator operator*(const Operator& a, const Operator& b) {
    a.require_same_layout(b, "*");
    return Operator(a.m_ * b.m_, a.layout_);
  }

 private:
  void check_square() const {
    if (m_.rows() == 0 || m_.rows() != m_.cols())
      throw InvalidArgument("Operator: matrix must be square and non-empty");
  }
  void require_same_layout(const Operator& o, const char* op) const {
    if (layout_ != o.layout_)
      throw InvalidArgument(std::string("Operator ") + op + ": layouts " + layout_.to_string() + " and " +
                            o.layout_.to_string() + " differ");
  }

  Matrix m_;
  SubsystemLayout layout_;
};

// Largest entrywise |a - b|.
inline double max_abs_diff(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("max_abs_diff: dimension mismatch");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

inline Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

// Standard Kronecker product, a-index major.
inline Operator kron(const Operator& a, const Operator& b) {
  const Eigen::Index na = a.matrix().rows(), nb = b.matrix().rows();
  Matrix out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < na; ++j) out.block(i * nb, j * nb, nb, nb) = a(i, j) * b.matrix();
  return Operator(std::move(out), a.layout().concat(b.layout()));
}

// Places op on subsystem `position` of `layout`, identity elsewhere.
inline Operator embed(const Operator& op, std::size_t position, const SubsystemLayout& layout) {
  if (position >= layout.size() || layout[position] != op.dim())
    throw InvalidArgument("embed: operator of dim " + std::to_string(op.dim()) + " does not fit slot " +
                          std::to_string(position) + " of " + layout.to_string());
  std::size_t before = 1, after = 1;
  for (std::size_t i = 0; i < position; ++i) before *= layout[i];
  for (std::size_t i = position + 1; i < layout.size(); ++i) after *= layout[i];
  Operator core(op.matrix(), SubsystemLayout{op.dim()});
  Operator out = kron(kron(Operator::identity(before), core), Operator::identity(after));
  return out.with_layout(layout);
}

namespace detail {

// Joint index of (kept multi-index a, traced multi-index r), tabulated as
// index[a * traced_dim + r].
struct TraceSplit {
  std::size_t kept_dim = 1;
  std::size_t traced_dim = 1;
  std::vector<std::size_t> index;
  SubsystemLayout kept_layout;
};

inline TraceSplit make_trace_split(const SubsystemLayout& layout, std::vector<std::size_t> keep) {
  const std::size_t n = layout.size();
  if (n < 2) throw InvalidArgument("partial_trace: layout needs at least two subsystems");
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw InvalidArgument("partial_trace: duplicate subsystem index");
  if (keep.empty() || keep.size() >= n) throw InvalidArgument("partial_trace: keep must be a nonempty proper subset");
  if (keep.back() >= n) throw InvalidArgument("partial_trace: subsystem index out of range");

  std::vector<std::size_t> stride(n);
  std::size_t s = 1;
  for (std::size_t i = n; i-- > 0;) {
    stride[i] = s;
    s *= layout[i];
  }
  std::vector<bool> kept(n, false);
  for (std::size_t k : keep) kept[k] = true;
  std::vector<std::size_t> traced;
  for (std::size_t i = 0; i < n; ++i)
    if (!kept[i]) traced.push_back(i);

  TraceSplit split;
  split.kept_layout = layout.select(keep);
  split.kept_dim = split.kept_layout.total();
  split.traced_dim = layout.total() / split.kept_dim;

  // Offset of each kept / traced multi-index in the joint index.
  auto offsets = [&](const std::vector<std::size_t>& subs, std::size_t count) {
    std::vector<std::size_t> off(count, 0);
    for (std::size_t x = 0; x < count; ++x) {
      std::size_t rem = x, o = 0;
      for (std::size_t k = subs.size(); k-- > 0;) {
        const std::size_t d = layout[subs[k]];
        o += (rem % d) * stride[subs[k]];
        rem /= d;
      }
      off[x] = o;
    }
    return off;
  };
  const auto ko = offsets(keep, split.kept_dim);
  const auto to = offsets(traced, split.traced_dim);
  split.index.resize(split.kept_dim * split.traced_dim);
  for (std::size_t a = 0; a < split.kept_dim; ++a)
    for (std::size_t r = 0; r < split.traced_dim; ++r) split.index[a * split.traced_dim + r] = ko[a] + to[r];
  return split;
}

}  // namespace detail

// Traces out every subsystem not listed in keep. The result keeps the
// retained factors in their original order.
inline Operator partial_trace(const Operator& m, std::vector<std::size_t> keep) {
  const auto split = detail::make_trace_split(m.layout(), std::move(keep));
  const auto ka = static_cast<Eigen::Index>(split.kept_dim);
  const std::size_t nt = split.traced_dim;
  Matrix out = Matrix::Zero(ka, ka);
  const Matrix& src = m.matrix();
  for (Eigen::Index a = 0; a < ka; ++a)
    for (Eigen::Index b = 0; b < ka; ++b) {
      Complex acc = 0.0;
      const std::size_t* ia = &split.index[static_cast<std::size_t>(a) * nt];
      const std::size_t* ib = &split.index[static_cast<std::size_t>(b) * nt];
      for (std::size_t r = 0; r < nt; ++r)
        acc += src(static_cast<Eigen::Index>(ia[r]), static_cast<Eigen::Index>(ib[r]));
      out(a, b) = acc;
    }
  return Operator(std::move(out), split.kept_layout);
}

inline Operator partial_trace(const Operator& m, std::size_t keep) {
  return partial_trace(m, std::vector<std::size_t>{keep});
}

// Density operator: Hermitian, unit trace, spectrum bounded below by
// kEigenvalueFloor.
class DensityMatrix {
 public:
  DensityMatrix() : op_(Operator::identity(1)) {}

  // Full validation, including an eigenvalue check.
  explicit DensityMatrix(Operator op) : op_(std::move(op)) {
    check_hermitian_and_trace();
    const double lo = Eigen::SelfAdjointEigenSolver<Matrix>(op_.matrix(), Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    if (lo < kEigenvalueFloor)
      throw InvalidArgument("DensityMatrix: negative eigenvalue " + std::to_string(lo));
  }

  // Checks Hermiticity and trace only. For states whose positivity follows
  // from construction: products, partial traces and unitary conjugates of
  // valid states, Gibbs states, mixtures.
  static DensityMatrix trusted(Operator op) {
    DensityMatrix rho(std::move(op), Unchecked{});
    rho.check_hermitian_and_trace();
    return rho;
  }

  static DensityMatrix pure(const Vector& psi, SubsystemLayout layout) {
    const double n = psi.squaredNorm();
    if (std::abs(n - 1.0) > kTraceTol) throw InvalidArgument("DensityMatrix::pure: state is not normalized");
    Matrix m = psi * psi.adjoint();
    return trusted(Operator(std::move(m), std::move(layout)).hermitized());
  }
  static DensityMatrix pure(const Vector& psi) {
    return pure(psi, SubsystemLayout{static_cast<std::size_t>(psi.size())});
  }

  static DensityMatrix maximally_mixed(const SubsystemLayout& layout) {
    return trusted(Operator::identity(layout) * (1.0 / static_cast<double>(layout.total())));
  }

  // diag(p); p must be a probability vector.
  static DensityMatrix diagonal(const RealVector& p, SubsystemLayout layout) {
    if (p.size() > 0 && p.minCoeff() < kEigenvalueFloor)
      throw InvalidArgument("DensityMatrix::diagonal: negative population");
    Matrix m = p.cast<Complex>().asDiagonal();
    return trusted(Operator(std::move(m), std::move(layout)));
  }

  const Operator& op() const noexcept { return op_; }
  const Matrix& matrix() const noexcept { return op_.matrix(); }
  const SubsystemLayout& layout() const noexcept { return op_.layout(); }
  std::size_t dim() const noexcept { return op_.dim(); }

  // u rho u^dagger for a unitary u; the result is re-Hermitized.
  DensityMatrix evolved(const Operator& u) const {
    if (u.dim() != dim()) throw InvalidArgument("DensityMatrix::evolved: dimension mismatch");
    Matrix m = u.matrix() * op_.matrix() * u.matrix().adjoint();
    return trusted(Operator(std::move(m), layout()).hermitized());
  }

  // Same for a sparse unitary, in O(nnz(u) * dim) operations.
  DensityMatrix evolved(const SparseMatrix& u) const {
    if (static_cast<std::size_t>(u.rows()) != dim() || u.rows() != u.cols())
      throw InvalidArgument("DensityMatrix::evolved: dimension mismatch");
    const Matrix left = (u * op_.matrix()).adjoint();  // rho u^dagger
    Matrix m = u * left;
    return trusted(Operator(std::move(m), layout()).hermitized());
  }

 private:
  struct Unchecked {};
  DensityMatrix(Operator op, Unchecked) : op_(std::move(op)) {}

  void check_hermitian_and_trace() const {
    const double herr = op_.hermiticity_error();
    if (herr > kHermitianTol) throw InvalidArgument("DensityMatrix: not Hermitian (error " + std::to_string(herr) + ")");
    const Complex tr = op_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol)
      throw InvalidArgument("DensityMatrix: trace " + std::to_string(tr.real()) + " is not 1");
  }

  Operator op_;
};

inline DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::trusted(kron(a.op(), b.op()).hermitized());
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep) {
  return DensityMatrix::trusted(partial_trace(rho.op(), std::move(keep)).hermitized());
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep) {
  return partial_trace(rho, std::vector<std::size_t>{keep});
}

struct EigenSystem {
  RealVector values;  // ascending
  Operator vectors;   // columns are eigenvectors
};

// Hermitian eigendecomposition, h = V diag(values) V^dagger.
inline EigenSystem eigh(const Operator& h) {
  const double herr = h.hermiticity_error();
  if (herr > kHermitianTol) throw InvalidArgument("eigh: input is not Hermitian (error " + std::to_string(herr) + ")");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.hermitized().matrix());
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigh: eigensolver did not converge");
  return {solver.eigenvalues(), Operator(solver.eigenvectors(), h.layout())};
}

// exp(-i s h) from a precomputed decomposition of h.
inline Operator propagator(const EigenSystem& es, double s) {
  if (s == 0.0) return Operator::identity(es.vectors.layout());
  const Matrix& v = es.vectors.matrix();
  const Vector phase = (es.values * Complex(0.0, -s)).array().exp().matrix();
  return Operator(Matrix(v * phase.asDiagonal() * v.adjoint()), es.vectors.layout());
}

inline Operator propagator(const Operator& h, double s) {
  if (s == 0.0) {
    if (!h.is_hermitian()) throw InvalidArgument("propagator: generator is not Hermitian");
    return Operator::identity(h.layout());
  }
  return propagator(eigh(h), s);
}

// tr(state * obs) in O(dim^2).
inline Complex expect(const Operator& obs, const DensityMatrix& state) {
  if (obs.dim() != state.dim())
    throw InvalidArgument("expect: observable dim " + std::to_string(obs.dim()) + " vs state dim " +
                          std::to_string(state.dim()));
  return (state.matrix().transpose().array() * obs.matrix().array()).sum();
}

}  // namespace qts
