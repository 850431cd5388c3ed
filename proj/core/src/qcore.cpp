// Copyright 2026 The fcs Authors
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

#include "fcs/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fcs/errors.hpp"

namespace fcs {

namespace {

void require_same_space(const HilbertSpace& a, const HilbertSpace& b, const char* what) {
  if (!(a == b)) throw InvalidArgument(std::string(what) + ": operand spaces differ");
}

// Hermiticity tolerance scales with the operator magnitude so lab-frame
// Hamiltonians (entries ~1e4 rad/us) are judged on relative roundoff.
double hermitian_tolerance(const Operator& h) { return 1e-9 * std::max(1.0, h.max_abs()); }

}  // namespace

HilbertSpace::HilbertSpace(std::vector<int> site_dims) : site_dims_(std::move(site_dims)) {
  if (site_dims_.empty()) throw InvalidArgument("HilbertSpace: need at least one site");
  total_dim_ = 1;
  for (int d : site_dims_) {
    if (d != 2 && d != 3) throw InvalidArgument("HilbertSpace: site dimension must be 2 or 3");
    total_dim_ *= static_cast<std::size_t>(d);
  }
}

HilbertSpace HilbertSpace::qubits(int num_sites) {
  return HilbertSpace(std::vector<int>(static_cast<std::size_t>(num_sites), 2));
}

HilbertSpace HilbertSpace::qutrits(int num_sites) {
  return HilbertSpace(std::vector<int>(static_cast<std::size_t>(num_sites), 3));
}

int HilbertSpace::site_dim(int site) const {
  if (site < 0 || site >= num_sites()) throw InvalidArgument("HilbertSpace: site out of range");
  return site_dims_[static_cast<std::size_t>(site)];
}

bool HilbertSpace::all_qubits() const {
  return std::all_of(site_dims_.begin(), site_dims_.end(), [](int d) { return d == 2; });
}

std::size_t HilbertSpace::index_of(std::span<const int> levels) const {
  if (levels.size() != site_dims_.size()) throw InvalidArgument("index_of: wrong number of sites");
  std::size_t index = 0;
  for (std::size_t s = 0; s < levels.size(); ++s) {
    if (levels[s] < 0 || levels[s] >= site_dims_[s]) throw InvalidArgument("index_of: level out of range");
    index = index * static_cast<std::size_t>(site_dims_[s]) + static_cast<std::size_t>(levels[s]);
  }
  return index;
}

std::size_t HilbertSpace::index_of(std::string_view label) const {
  std::vector<int> levels;
  levels.reserve(label.size());
  for (char c : label) {
    if (c < '0' || c > '9') throw InvalidArgument("index_of: bad basis label '" + std::string(label) + "'");
    levels.push_back(c - '0');
  }
  return index_of(levels);
}

std::vector<int> HilbertSpace::levels_of(std::size_t index) const {
  if (index >= total_dim_) throw InvalidArgument("levels_of: index out of range");
  std::vector<int> levels(site_dims_.size());
  for (std::size_t s = site_dims_.size(); s-- > 0;) {
    const auto d = static_cast<std::size_t>(site_dims_[s]);
    levels[s] = static_cast<int>(index % d);
    index /= d;
  }
  return levels;
}

std::string HilbertSpace::label_of(std::size_t index) const {
  std::string out;
  for (int level : levels_of(index)) out.push_back(static_cast<char>('0' + level));
  return out;
}

std::vector<std::string> HilbertSpace::labels() const {
  std::vector<std::string> out;
  out.reserve(total_dim_);
  for (std::size_t i = 0; i < total_dim_; ++i) out.push_back(label_of(i));
  return out;
}

Operator::Operator(HilbertSpace space, Matrix data) : space_(std::move(space)), data_(std::move(data)) {
  const auto n = static_cast<Eigen::Index>(space_.dim());
  if (data_.rows() != n || data_.cols() != n)
    throw InvalidArgument("Operator: matrix shape does not match the space dimension");
}

Operator Operator::zero(const HilbertSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.dim());
  return Operator(space, Matrix::Zero(n, n));
}

Operator Operator::identity(const HilbertSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.dim());
  return Operator(space, Matrix::Identity(n, n));
}

Operator Operator::adjoint() const { return Operator(space_, data_.adjoint()); }

double Operator::hermitian_error() const {
  if (data_.size() == 0) return 0.0;
  return (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
}

double Operator::max_abs() const { return data_.size() == 0 ? 0.0 : data_.cwiseAbs().maxCoeff(); }

double Operator::frobenius_norm() const { return data_.norm(); }

Operator& Operator::operator+=(const Operator& rhs) {
  require_same_space(space_, rhs.space_, "operator+");
  data_ += rhs.data_;
  return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
  require_same_space(space_, rhs.space_, "operator-");
  data_ -= rhs.data_;
  return *this;
}

Operator& Operator::operator*=(Complex scale) {
  data_ *= scale;
  return *this;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  require_same_space(lhs.space(), rhs.space(), "operator*");
  return Operator(lhs.space(), lhs.matrix() * rhs.matrix());
}

Complex hs_inner(const Operator& a, const Operator& b) {
  require_same_space(a.space(), b.space(), "hs_inner");
  return (a.matrix().adjoint() * b.matrix()).trace();
}

double max_abs_diff(const Operator& a, const Operator& b) {
  require_same_space(a.space(), b.space(), "max_abs_diff");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

StateVector::StateVector(HilbertSpace space, Vector amplitudes)
    : space_(std::move(space)), amps_(std::move(amplitudes)) {
  if (amps_.size() != static_cast<Eigen::Index>(space_.dim()))
    throw InvalidArgument("StateVector: amplitude count does not match the space dimension");
}

StateVector StateVector::basis(const HilbertSpace& space, std::size_t index) {
  if (index >= space.dim()) throw InvalidArgument("StateVector::basis: index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(space.dim()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(space, std::move(v));
}

StateVector StateVector::basis(const HilbertSpace& space, std::string_view label) {
  return basis(space, space.index_of(label));
}

RealVector StateVector::populations() const { return amps_.cwiseAbs2(); }

double fidelity(const StateVector& a, const StateVector& b) {
  require_same_space(a.space(), b.space(), "fidelity");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

StateVector apply(const Operator& op, const StateVector& psi) {
  require_same_space(op.space(), psi.space(), "apply");
  return StateVector(psi.space(), op.matrix() * psi.amplitudes());
}

DensityMatrix::DensityMatrix(HilbertSpace space, Matrix data) : space_(std::move(space)), data_(std::move(data)) {
  const auto n = static_cast<Eigen::Index>(space_.dim());
  if (data_.rows() != n || data_.cols() != n)
    throw InvalidArgument("DensityMatrix: matrix shape does not match the space dimension");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.space(), psi.amplitudes() * psi.amplitudes().adjoint());
}

double DensityMatrix::hermitian_error() const { return (data_ - data_.adjoint()).cwiseAbs().maxCoeff(); }

double DensityMatrix::min_eigenvalue() const {
  const Matrix herm = 0.5 * (data_ + data_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

RealVector DensityMatrix::populations() const { return data_.diagonal().real(); }

namespace local {

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix raising(int dim) {
  Matrix m = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) m(n, n - 1) = std::sqrt(static_cast<double>(n));
  return m;
}

Matrix lowering(int dim) { return raising(dim).adjoint(); }

Matrix number(int dim) {
  Matrix m = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) m(n, n) = static_cast<double>(n);
  return m;
}

Matrix projector(int dim, int level) { return transition(dim, level, level); }

Matrix transition(int dim, int to, int from) {
  if (to < 0 || to >= dim || from < 0 || from >= dim) throw InvalidArgument("transition: level out of range");
  Matrix m = Matrix::Zero(dim, dim);
  m(to, from) = 1.0;
  return m;
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

// sigma_y = -i sigma+ + i sigma-, so that [sigma_x, sigma_y] = 2i sigma_z.
Matrix pauli_y() {
  const Complex i(0.0, 1.0);
  Matrix m(2, 2);
  m << 0.0, i, -i, 0.0;
  return m;
}

Matrix pauli_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = -1.0;
  m(1, 1) = 1.0;
  return m;
}

}  // namespace local

Operator embed(const Matrix& local_op, int site, const HilbertSpace& space) {
  const int d = space.site_dim(site);
  if (local_op.rows() != d || local_op.cols() != d)
    throw InvalidArgument("embed: local operator dimension does not match site " + std::to_string(site));
  // Strides: left block (sites before) and right block (sites after).
  std::size_t left = 1;
  for (int s = 0; s < site; ++s) left *= static_cast<std::size_t>(space.site_dim(s));
  const std::size_t right = space.dim() / (left * static_cast<std::size_t>(d));
  const auto n = static_cast<Eigen::Index>(space.dim());
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t l = 0; l < left; ++l) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        const Complex v = local_op(a, b);
        if (v == Complex(0.0)) continue;
        for (std::size_t r = 0; r < right; ++r) {
          const auto row = static_cast<Eigen::Index>((l * static_cast<std::size_t>(d) + static_cast<std::size_t>(a)) * right + r);
          const auto col = static_cast<Eigen::Index>((l * static_cast<std::size_t>(d) + static_cast<std::size_t>(b)) * right + r);
          out(row, col) = v;
        }
      }
    }
  }
  return Operator(space, std::move(out));
}

Operator two_site(const Matrix& op_a, int site_a, const Matrix& op_b, int site_b, const HilbertSpace& space) {
  if (site_a == site_b) throw InvalidArgument("two_site: sites must differ");
  return embed(op_a, site_a, space) * embed(op_b, site_b, space);
}

Operator commutator(const Operator& a, const Operator& b) {
  require_same_space(a.space(), b.space(), "commutator");
  return Operator(a.space(), a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

HermitianEigen::HermitianEigen(const Operator& h) : space_(h.space()) {
  if (h.hermitian_error() >= hermitian_tolerance(h))
    throw InvalidArgument("expm_hermitian: operator is not Hermitian");
  const Matrix herm = 0.5 * (h.matrix() + h.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

Operator HermitianEigen::propagator(double t) const {
  Vector phases(values_.size());
  for (Eigen::Index k = 0; k < values_.size(); ++k) phases(k) = std::polar(1.0, -values_(k) * t);
  return Operator(space_, vectors_ * phases.asDiagonal() * vectors_.adjoint());
}

Vector HermitianEigen::evolve(const Vector& psi, double t) const {
  Vector coeffs = vectors_.adjoint() * psi;
  for (Eigen::Index k = 0; k < values_.size(); ++k) coeffs(k) *= std::polar(1.0, -values_(k) * t);
  return vectors_ * coeffs;
}

Operator expm_hermitian(const Operator& h, double t) { return HermitianEigen(h).propagator(t); }

Operator site_permutation(const HilbertSpace& space, std::span<const int> perm) {
  const int n = space.num_sites();
  if (static_cast<int>(perm.size()) != n) throw InvalidArgument("site_permutation: wrong permutation length");
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)]++) throw InvalidArgument("site_permutation: not a permutation");
  }
  for (int s = 0; s < n; ++s) {
    if (space.site_dim(s) != space.site_dim(0)) throw InvalidArgument("site_permutation: site dimensions differ");
  }
  const auto dim = static_cast<Eigen::Index>(space.dim());
  Matrix out = Matrix::Zero(dim, dim);
  std::vector<int> target(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const auto levels = space.levels_of(i);
    for (int s = 0; s < n; ++s) target[static_cast<std::size_t>(perm[static_cast<std::size_t>(s)])] = levels[static_cast<std::size_t>(s)];
    out(static_cast<Eigen::Index>(space.index_of(target)), static_cast<Eigen::Index>(i)) = 1.0;
  }
  return Operator(space, std::move(out));
}

Operator total_number(const HilbertSpace& space) {
  Operator n = Operator::zero(space);
  for (int s = 0; s < space.num_sites(); ++s) n += embed(local::number(space.site_dim(s)), s, space);
  return n;
}

Operator total_sz(const HilbertSpace& space) {
  if (!space.all_qubits()) throw InvalidArgument("total_sz: requires two-level sites");
  Operator sz = Operator::zero(space);
  for (int s = 0; s < space.num_sites(); ++s) sz += embed(local::pauli_z(), s, space);
  return sz * Complex(0.5);
}

}  // namespace fcs
