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

#pragma once

// Dense complex operators on small composite Hilbert spaces.
//
// Basis convention: a site in level |0> is the ground state, |1> excited,
// |2> (three-level sites only) the second excited state. A basis label such
// as "011" lists site levels left to right, and the leftmost site is the most
// significant digit of the flat index. sigma_z |1> = +|1>.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace fcs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

class HilbertSpace {
 public:
  HilbertSpace() = default;
  explicit HilbertSpace(std::vector<int> site_dims);

  static HilbertSpace qubits(int num_sites);
  static HilbertSpace qutrits(int num_sites);

  std::span<const int> site_dims() const { return site_dims_; }
  int num_sites() const { return static_cast<int>(site_dims_.size()); }
  int site_dim(int site) const;
  std::size_t dim() const { return total_dim_; }
  bool all_qubits() const;

  // Flat index <-> per-site levels.
  std::size_t index_of(std::span<const int> levels) const;
  std::size_t index_of(std::string_view label) const;
  std::vector<int> levels_of(std::size_t index) const;
  std::string label_of(std::size_t index) const;
  std::vector<std::string> labels() const;

  bool operator==(const HilbertSpace&) const = default;

 private:
  std::vector<int> site_dims_;
  std::size_t total_dim_ = 1;
};

class Operator {
 public:
  Operator() = default;
  Operator(HilbertSpace space, Matrix data);

  static Operator zero(const HilbertSpace& space);
  static Operator identity(const HilbertSpace& space);

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return data_; }
  std::size_t dim() const { return space_.dim(); }
  Complex operator()(std::size_t row, std::size_t col) const {
    return data_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

  Operator adjoint() const;
  // max |O - O^dagger|
  double hermitian_error() const;
  double max_abs() const;
  double frobenius_norm() const;

  Operator& operator+=(const Operator& rhs);
  Operator& operator-=(const Operator& rhs);
  Operator& operator*=(Complex scale);

  friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
  friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
  friend Operator operator*(Operator lhs, Complex s) { return lhs *= s; }
  friend Operator operator*(Complex s, Operator rhs) { return rhs *= s; }
  friend Operator operator-(Operator op) { return op *= -1.0; }
  friend Operator operator*(const Operator& lhs, const Operator& rhs);

 private:
  HilbertSpace space_;
  Matrix data_;
};

// Hilbert-Schmidt inner product Tr(A^dagger B).
Complex hs_inner(const Operator& a, const Operator& b);
// max elementwise |A - B|; spaces must match.
double max_abs_diff(const Operator& a, const Operator& b);

class StateVector {
 public:
  StateVector() = default;
  StateVector(HilbertSpace space, Vector amplitudes);

  static StateVector basis(const HilbertSpace& space, std::size_t index);
  static StateVector basis(const HilbertSpace& space, std::string_view label);

  const HilbertSpace& space() const { return space_; }
  const Vector& amplitudes() const { return amps_; }
  double norm() const { return amps_.norm(); }
  RealVector populations() const;

 private:
  HilbertSpace space_;
  Vector amps_;
};

// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);
StateVector apply(const Operator& op, const StateVector& psi);

class DensityMatrix {
 public:
  DensityMatrix() = default;
  DensityMatrix(HilbertSpace space, Matrix data);

  static DensityMatrix pure(const StateVector& psi);

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return data_; }
  Complex trace() const { return data_.trace(); }
  double hermitian_error() const;
  double min_eigenvalue() const;
  RealVector populations() const;

 private:
  HilbertSpace space_;
  Matrix data_;
};

// Local single-site matrices. For dimension 3, raising/lowering are the
// truncated bosonic ladder operators (sqrt(2) on the 1<->2 rung).
namespace local {
Matrix identity(int dim);
Matrix raising(int dim);   // |1><0| (+ sqrt2 |2><1|)
Matrix lowering(int dim);  // adjoint of raising
Matrix number(int dim);    // diag(0, 1, 2...)
Matrix projector(int dim, int level);
Matrix transition(int dim, int to, int from);  // |to><from|
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();  // diag(-1, +1) in the (|0>, |1>) basis
}  // namespace local

// I (x) ... (x) local_op (x) ... (x) I, site 0 leftmost.
Operator embed(const Matrix& local_op, int site, const HilbertSpace& space);
// embed(op_a, site_a) * embed(op_b, site_b) for site_a != site_b.
Operator two_site(const Matrix& op_a, int site_a, const Matrix& op_b, int site_b,
                  const HilbertSpace& space);

Operator commutator(const Operator& a, const Operator& b);

// exp(-i H t) through the eigendecomposition of the Hermitian H.
Operator expm_hermitian(const Operator& h, double t);

// Spectral data of a Hermitian operator, reused for repeated exponentials.
class HermitianEigen {
 public:
  explicit HermitianEigen(const Operator& h);
  const RealVector& eigenvalues() const { return values_; }
  const Matrix& eigenvectors() const { return vectors_; }
  Operator propagator(double t) const;
  Vector evolve(const Vector& psi, double t) const;

 private:
  HilbertSpace space_;
  RealVector values_;
  Matrix vectors_;
};

// Permutation operator relabelling sites: basis state with site s in level
// l_s maps to the state with site perm[s] in level l_s. All site dims equal.
Operator site_permutation(const HilbertSpace& space, std::span<const int> perm);

Operator total_number(const HilbertSpace& space);
// S_z = sum_j sigma_j^z / 2 on qubit spaces.
Operator total_sz(const HilbertSpace& space);

}  // namespace fcs
