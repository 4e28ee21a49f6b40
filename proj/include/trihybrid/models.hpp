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

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "trihybrid/pauli.hpp"

namespace trihybrid {

/// Rectangular lattice. Sites are numbered row-major: site = r * cols + c.
struct LatticeSpec {
  std::size_t rows = 1;
  std::size_t cols = 2;
  bool periodic = false;

  /// 1D chains wrap around, 2D grids stay open.
  static LatticeSpec with_default_boundary(std::size_t rows, std::size_t cols) {
    return {rows, cols, rows == 1 || cols == 1};
  }

  std::size_t n_sites() const noexcept { return rows * cols; }

  void validate() const {
    if (rows == 0 || cols == 0 || rows * cols < 2)
      throw std::invalid_argument("lattice " + std::to_string(rows) + "x" +
                                  std::to_string(cols) +
                                  " needs at least two sites");
  }

  /// Nearest-neighbour bonds, each listed once with i < j.
  /// Row-major site sweep; per site the horizontal bond precedes the vertical
  /// one. A periodic direction only wraps when it has at least three sites.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    validate();
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    auto add = [&](std::size_t a, std::size_t b) {
      if (a == b) return;
      auto e = std::minmax(a, b);
      if (seen.insert(e).second) out.emplace_back(e.first, e.second);
    };
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        const std::size_t site = r * cols + c;
        if (c + 1 < cols)
          add(site, site + 1);
        else if (periodic && cols >= 3)
          add(site, r * cols);
        if (r + 1 < rows)
          add(site, site + cols);
        else if (periodic && rows >= 3)
          add(site, c);
      }
    }
    return out;
  }
};

inline Hamiltonian h2_hamiltonian() {
  std::vector<Term> terms{
      {0.011, PauliString::from_label("ZZ")},
      {0.398, PauliString::from_label("ZI")},
      {0.398, PauliString::from_label("IZ")},
      {0.181, PauliString::from_label("XX")},
  };
  return Hamiltonian(std::move(terms), 2);
}

/// coupling * (XiXj + YiYj + ZiZj) on every bond; one qubit per site.
inline Hamiltonian heisenberg_hamiltonian(const LatticeSpec& spec, double coupling = 1.0) {
  const std::size_t n = spec.n_sites();
  std::vector<Term> terms;
  for (const auto& [i, j] : spec.edges()) {
    for (PauliAxis a : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
      PauliString s(n);
      s.set(i, a);
      s.set(j, a);
      terms.push_back({coupling, std::move(s)});
    }
  }
  return Hamiltonian(std::move(terms), n);
}

struct FermionOp {
  std::size_t mode = 0;
  bool dagger = false;

  friend bool operator==(const FermionOp&, const FermionOp&) = default;
};

/// Product of ladder operators; creation operators must precede annihilation.
class FermionTerm {
 public:
  FermionTerm(double coefficient, std::vector<FermionOp> ops)
      : coefficient_(coefficient), ops_(std::move(ops)) {
    bool seen_annihilation = false;
    for (const auto& op : ops_) {
      if (op.dagger && seen_annihilation)
        throw std::invalid_argument("fermion product is not normal ordered");
      seen_annihilation |= !op.dagger;
    }
  }

  double coefficient() const noexcept { return coefficient_; }
  const std::vector<FermionOp>& ops() const noexcept { return ops_; }

 private:
  double coefficient_;
  std::vector<FermionOp> ops_;
};

/// Spin-orbital index of (site, spin) with spin 0 = up, 1 = down.
inline std::size_t spin_orbital(std::size_t site, int spin) { return 2 * site + spin; }

/**
 * Single-band Hubbard model:
 *   -t * sum_{<ij>,s} (a+_is a_js + a+_js a_is) + u * sum_i n_i,up n_i,down
 * Hopping products come first (bond order, then spin, then direction),
 * followed by one interaction product per site.
 */
inline std::vector<FermionTerm> hubbard_hamiltonian(const LatticeSpec& spec,
                                                    double t = 1.0,
                                                    double u = 2.0) {
  std::vector<FermionTerm> out;
  for (const auto& [i, j] : spec.edges()) {
    for (int s = 0; s < 2; ++s) {
      const auto p = spin_orbital(i, s), q = spin_orbital(j, s);
      out.emplace_back(-t, std::vector<FermionOp>{{p, true}, {q, false}});
      out.emplace_back(-t, std::vector<FermionOp>{{q, true}, {p, false}});
    }
  }
  for (std::size_t i = 0; i < spec.n_sites(); ++i) {
    const auto up = spin_orbital(i, 0), down = spin_orbital(i, 1);
    // a+_up a+_down a_down a_up == n_up n_down
    out.emplace_back(u, std::vector<FermionOp>{
                            {up, true}, {down, true}, {down, false}, {up, false}});
  }
  return out;
}

namespace detail {

/// Pauli string with a complex weight, in single-word symplectic form.
struct WeightedPauli {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  std::complex<double> weight{1.0, 0.0};
};

/// Product of two symplectic Paulis. With P = i^(x.z) X^x Z^z per qubit the
/// phase exponent is |x1&z1| + |x2&z2| + 2|z1&x2| - |x3&z3| (mod 4).
inline WeightedPauli multiply(const WeightedPauli& a, const WeightedPauli& b) {
  WeightedPauli r{a.x ^ b.x, a.z ^ b.z, a.weight * b.weight};
  int k = std::popcount(a.x & a.z) + std::popcount(b.x & b.z) +
          2 * std::popcount(a.z & b.x) - std::popcount(r.x & r.z);
  k = ((k % 4) + 4) % 4;
  static const std::complex<double> i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  r.weight *= i_pow[k];
  return r;
}

}  // namespace detail

/**
 * Jordan-Wigner image of a fermionic operator on n_modes spin-orbitals.
 *
 *   a+_j -> (X_j - iY_j)/2 * Z_0 ... Z_{j-1}
 *   a_j  -> (X_j + iY_j)/2 * Z_0 ... Z_{j-1}
 *
 * Like strings are merged in first-appearance order and the identity is kept.
 * Throws if the input is not Hermitian (imaginary residue above 1e-12).
 */
inline Hamiltonian jordan_wigner(const std::vector<FermionTerm>& terms,
                                 std::size_t n_modes) {
  constexpr double tolerance = 1e-12;
  if (n_modes == 0 || n_modes > 64)
    throw std::invalid_argument("jordan_wigner supports 1..64 modes");

  std::vector<std::pair<std::uint64_t, std::uint64_t>> order;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::complex<double>> sum;

  for (const auto& term : terms) {
    std::vector<detail::WeightedPauli> product{{0, 0, {term.coefficient(), 0.0}}};
    for (const auto& op : term.ops()) {
      if (op.mode >= n_modes)
        throw std::invalid_argument("mode index " + std::to_string(op.mode) +
                                    " out of range");
      const std::uint64_t parity = (std::uint64_t{1} << op.mode) - 1;
      const std::uint64_t bit = std::uint64_t{1} << op.mode;
      // X_j Z_<j and Y_j Z_<j, with Y = i X Z already folded into the weight.
      const detail::WeightedPauli xs{bit, parity, {0.5, 0.0}};
      const detail::WeightedPauli ys{bit, parity | bit,
                                     {0.0, op.dagger ? -0.5 : 0.5}};
      std::vector<detail::WeightedPauli> next;
      next.reserve(product.size() * 2);
      for (const auto& p : product) {
        next.push_back(detail::multiply(p, xs));
        next.push_back(detail::multiply(p, ys));
      }
      product = std::move(next);
    }
    for (const auto& p : product) {
      const auto key = std::make_pair(p.x, p.z);
      auto [it, inserted] = sum.emplace(key, p.weight);
      if (inserted)
        order.push_back(key);
      else
        it->second += p.weight;
    }
  }

  std::vector<Term> out;
  for (const auto& key : order) {
    const auto w = sum.at(key);
    if (std::abs(w.imag()) > tolerance)
      throw std::domain_error("non-Hermitian input: imaginary coefficient " +
                              format_double(w.imag()));
    if (std::abs(w.real()) <= tolerance) continue;
    PauliString s(n_modes);
    for (std::size_t q = 0; q < n_modes; ++q) {
      const bool x = (key.first >> q) & 1u, z = (key.second >> q) & 1u;
      if (x || z) s.set(q, x ? (z ? PauliAxis::Y : PauliAxis::X) : PauliAxis::Z);
    }
    out.push_back({w.real(), std::move(s)});
  }
  return Hamiltonian(std::move(out), n_modes);
}

}  // namespace trihybrid
