// Copyright 2026 The trihybrid Authors
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

// Dense-matrix reference implementations used only by the tests. None of
// these go through the symplectic bit tricks of the library.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "trihybrid/models.hpp"
#include "trihybrid/pauli.hpp"

namespace oracle {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline Matrix single(char p) {
  Matrix m(2, 2);
  const cd i(0, 1);
  switch (p) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

/// Kronecker product with qubit 0 as the least significant index bit:
/// P_{n-1} (x) ... (x) P_0.
inline Matrix pauli_matrix(const std::string& label) {
  Matrix m = Matrix::Identity(1, 1);
  for (std::size_t q = 0; q < label.size(); ++q) {
    Matrix next = Eigen::kroneckerProduct(single(label[q]), m).eval();
    m = next;
  }
  return m;
}

inline Matrix hamiltonian_matrix(const trihybrid::Hamiltonian& h) {
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& t : h.terms()) m += t.coefficient * pauli_matrix(t.string.label());
  return m;
}

/// Annihilation operator on mode j from the occupation-number definition
/// a_j |n> = (-1)^{n_0 + ... + n_{j-1}} n_j |n - e_j>.
inline Matrix annihilation(std::size_t j, std::size_t n_modes) {
  const std::size_t dim = std::size_t{1} << n_modes;
  Matrix m = Matrix::Zero(dim, dim);
  for (std::size_t n = 0; n < dim; ++n) {
    if (!((n >> j) & 1u)) continue;
    int parity = 0;
    for (std::size_t k = 0; k < j; ++k) parity += (n >> k) & 1u;
    m(n ^ (std::size_t{1} << j), n) = (parity % 2) ? -1.0 : 1.0;
  }
  return m;
}

inline Matrix fermion_matrix(const std::vector<trihybrid::FermionTerm>& terms,
                             std::size_t n_modes) {
  const std::size_t dim = std::size_t{1} << n_modes;
  std::vector<Matrix> a, adag;
  for (std::size_t j = 0; j < n_modes; ++j) {
    a.push_back(annihilation(j, n_modes));
    adag.push_back(a.back().adjoint());
  }
  Matrix total = Matrix::Zero(dim, dim);
  for (const auto& t : terms) {
    Matrix prod = Matrix::Identity(dim, dim);
    for (const auto& op : t.ops()) prod = (prod * (op.dagger ? adag[op.mode] : a[op.mode])).eval();
    total += t.coefficient() * prod;
  }
  return total;
}

/// exp(-i theta P) by Eigen's matrix exponential.
inline Matrix pauli_exponential(const std::string& label, double theta) {
  Matrix generator = cd(0, -theta) * pauli_matrix(label);
  return generator.exp();
}

inline std::string random_label(std::mt19937_64& rng, std::size_t n) {
  static const char axes[] = "IXYZ";
  std::string s(n, 'I');
  for (auto& c : s) c = axes[rng() % 4];
  return s;
}

}  // namespace oracle
