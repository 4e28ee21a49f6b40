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

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "trihybrid/commgraph.hpp"
#include "trihybrid/pauli.hpp"
#include "trihybrid/random.hpp"

namespace trihybrid {

using Amplitude = std::complex<double>;

inline constexpr std::size_t max_simulated_qubits = 22;

/// Qubit k is bit k of the basis-state index.
class StateVector {
 public:
  /// |0...0> on n qubits.
  explicit StateVector(std::size_t n_qubits) : n_(n_qubits) {
    if (n_qubits == 0 || n_qubits > max_simulated_qubits)
      throw std::invalid_argument("simulator supports 1.." +
                                  std::to_string(max_simulated_qubits) + " qubits");
    amps_.assign(std::size_t{1} << n_qubits, Amplitude{});
    amps_[0] = 1.0;
  }

  static StateVector basis_state(std::size_t n_qubits, std::uint64_t index) {
    StateVector s(n_qubits);
    if (index >= s.amps_.size()) throw std::out_of_range("basis index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
  }

  /// Takes ownership of amplitudes; their squared norm must be 1 within 1e-10.
  static StateVector from_amplitudes(std::vector<Amplitude> amps) {
    const std::size_t n = static_cast<std::size_t>(std::countr_zero(amps.size()));
    if (amps.empty() || !std::has_single_bit(amps.size()))
      throw std::invalid_argument("amplitude count must be a power of two");
    StateVector s(std::max<std::size_t>(n, 1));
    if (s.amps_.size() != amps.size()) throw std::invalid_argument("need at least 2 amplitudes");
    s.amps_ = std::move(amps);
    if (std::abs(s.norm_squared() - 1.0) > 1e-10)
      throw std::invalid_argument("state is not normalized");
    return s;
  }

  std::size_t n_qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  std::span<Amplitude> amplitudes() noexcept { return amps_; }
  Amplitude operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

 private:
  std::size_t n_;
  std::vector<Amplitude> amps_;
};

/// Basis index rendered with qubit 0 as the leftmost character.
inline std::string bitstring(std::uint64_t index, std::size_t n_qubits) {
  std::string s(n_qubits, '0');
  for (std::size_t q = 0; q < n_qubits; ++q)
    if ((index >> q) & 1u) s[q] = '1';
  return s;
}

namespace detail {
inline void require_width(const StateVector& s, std::size_t n) {
  if (s.n_qubits() != n)
    throw SizeMismatch("operator on " + std::to_string(n) + " qubits applied to a " +
                       std::to_string(s.n_qubits()) + "-qubit state");
}
}  // namespace detail

/// P|psi> using P|b> = i^{#Y} (-1)^{|b & z|} |b ^ x>.
inline StateVector apply_pauli(const StateVector& state, const PauliString& p) {
  detail::require_width(state, p.n_qubits());
  const std::uint64_t x = p.x_mask(), z = p.z_mask();
  static const Amplitude i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Amplitude phase = i_pow[std::popcount(x & z) % 4];
  StateVector out = state;
  auto dst = out.amplitudes();
  const auto src = state.amplitudes();
  for (std::uint64_t b = 0; b < src.size(); ++b) {
    const double sign = (std::popcount(b & z) & 1) ? -1.0 : 1.0;
    dst[b ^ x] = phase * sign * src[b];
  }
  return out;
}

/// exp(-i theta P)|psi> = cos(theta)|psi> - i sin(theta) P|psi>, since P^2 = 1.
inline StateVector apply_pauli_exponential(const StateVector& state, const PauliString& p,
                                           double theta) {
  const StateVector moved = apply_pauli(state, p);
  StateVector out = state;
  const Amplitude c = std::cos(theta), s = Amplitude(0.0, -std::sin(theta));
  auto dst = out.amplitudes();
  const auto src = moved.amplitudes();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = c * dst[i] + s * src[i];
  return out;
}

/// exp(-i theta X0 Y1)|q0=0, q1=1>.
inline StateVector prepare_h2_ansatz(double theta) {
  const auto start = StateVector::basis_state(2, 0b10);
  return apply_pauli_exponential(start, PauliString::from_label("XY"), theta);
}

inline double exact_expectation(const StateVector& state, const Hamiltonian& h) {
  detail::require_width(state, h.n_qubits());
  Amplitude total{};
  const auto psi = state.amplitudes();
  for (const auto& t : h.terms()) {
    const StateVector moved = apply_pauli(state, t.string);
    Amplitude e{};
    const auto phi = moved.amplitudes();
    for (std::size_t i = 0; i < psi.size(); ++i) e += std::conj(psi[i]) * phi[i];
    total += t.coefficient * e;
  }
  if (std::abs(total.imag()) >= 1e-10)
    throw std::logic_error("expectation value has imaginary part " +
                           format_double(total.imag()));
  return total.real();
}

/// Per-qubit measurement axis; never I.
struct MeasurementBasis {
  std::vector<PauliAxis> axes;

  std::string label() const {
    std::string s;
    for (auto a : axes) s += to_char(a);
    return s;
  }
  friend bool operator==(const MeasurementBasis&, const MeasurementBasis&) = default;
};

/// Shared basis of a QWC group; qubits untouched by the group measure Z.
inline MeasurementBasis basis_for_group(std::span<const PauliString> group) {
  if (group.empty()) throw std::invalid_argument("empty measurement group");
  const std::size_t n = group.front().n_qubits();
  MeasurementBasis basis{std::vector<PauliAxis>(n, PauliAxis::I)};
  std::vector<std::size_t> owner(n, 0);
  for (std::size_t t = 0; t < group.size(); ++t) {
    if (group[t].n_qubits() != n) throw SizeMismatch("group mixes qubit counts");
    for (std::size_t q = 0; q < n; ++q) {
      const PauliAxis a = group[t].axis(q);
      if (a == PauliAxis::I) continue;
      if (basis.axes[q] == PauliAxis::I) {
        basis.axes[q] = a;
        owner[q] = t;
      } else if (basis.axes[q] != a) {
        throw std::invalid_argument(
            "qubit " + std::to_string(q) + ": " + std::string(1, to_char(basis.axes[q])) +
            " in '" + group[owner[q]].tokens() + "' conflicts with " +
            std::string(1, to_char(a)) + " in '" + group[t].tokens() +
            "'; group is not qubit-wise commuting");
      }
    }
  }
  for (auto& a : basis.axes)
    if (a == PauliAxis::I) a = PauliAxis::Z;
  return basis;
}

namespace detail {

/// Apply a 2x2 unitary [[a, b], [c, d]] to one qubit in place.
inline void apply_1q(std::span<Amplitude> amps, std::size_t q, Amplitude a, Amplitude b,
                     Amplitude c, Amplitude d) {
  const std::uint64_t m = std::uint64_t{1} << q;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (i & m) continue;
    const Amplitude lo = amps[i], hi = amps[i | m];
    amps[i] = a * lo + b * hi;
    amps[i | m] = c * lo + d * hi;
  }
}

inline void hadamard(std::span<Amplitude> amps, std::size_t q) {
  const double r = std::numbers::sqrt2 / 2.0;
  apply_1q(amps, q, r, r, r, -r);
}

inline void phase(std::span<Amplitude> amps, std::size_t q, Amplitude p) {
  apply_1q(amps, q, 1.0, 0.0, 0.0, p);
}

}  // namespace detail

/// Rotate so that a Z-basis readout samples the requested basis.
/// X: H. Y: S-dagger then H. Z: nothing.
inline StateVector apply_basis_rotation(const StateVector& state, const MeasurementBasis& basis) {
  detail::require_width(state, basis.axes.size());
  StateVector out = state;
  auto amps = out.amplitudes();
  for (std::size_t q = 0; q < basis.axes.size(); ++q) {
    if (basis.axes[q] == PauliAxis::Y) detail::phase(amps, q, Amplitude(0.0, -1.0));
    if (basis.axes[q] == PauliAxis::X || basis.axes[q] == PauliAxis::Y)
      detail::hadamard(amps, q);
  }
  return out;
}

/// Inverse of apply_basis_rotation.
inline StateVector undo_basis_rotation(const StateVector& state, const MeasurementBasis& basis) {
  detail::require_width(state, basis.axes.size());
  StateVector out = state;
  auto amps = out.amplitudes();
  for (std::size_t q = 0; q < basis.axes.size(); ++q) {
    if (basis.axes[q] == PauliAxis::X || basis.axes[q] == PauliAxis::Y)
      detail::hadamard(amps, q);
    if (basis.axes[q] == PauliAxis::Y) detail::phase(amps, q, Amplitude(0.0, 1.0));
  }
  return out;
}

/// Histogram of measured basis indices.
struct ShotCounts {
  std::map<std::uint64_t, std::size_t> counts;
  std::size_t total_shots = 0;
  std::size_t n_qubits = 0;

  std::size_t count(std::string_view bits) const {
    std::uint64_t index = 0;
    for (std::size_t q = 0; q < bits.size(); ++q)
      if (bits[q] == '1') index |= std::uint64_t{1} << q;
    const auto it = counts.find(index);
    return it == counts.end() ? 0 : it->second;
  }

  friend bool operator==(const ShotCounts&, const ShotCounts&) = default;
};

/// Multinomial draw of computational-basis outcomes from |amplitude|^2.
inline ShotCounts sample_shots(const StateVector& state, std::size_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const auto amps = state.amplitudes();
  std::vector<double> cumulative(amps.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) cumulative[i] = acc += std::norm(amps[i]);

  Rng rng(mix64(seed));
  ShotCounts out{{}, shots, state.n_qubits()};
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = uniform01(rng) * acc;
    // First index whose cumulative weight exceeds u; never a zero-weight entry.
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    ++out.counts[static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(
        it - cumulative.begin(), static_cast<std::ptrdiff_t>(amps.size()) - 1))];
  }
  return out;
}

/// coefficient * mean over shots of the parity on the term's support.
inline double estimate_term(const ShotCounts& counts, const Term& term,
                            const MeasurementBasis& basis) {
  const auto& s = term.string;
  if (s.n_qubits() != basis.axes.size()) throw SizeMismatch("term and basis widths differ");
  for (std::size_t q = 0; q < s.n_qubits(); ++q) {
    const PauliAxis a = s.axis(q);
    if (a != PauliAxis::I && a != basis.axes[q])
      throw std::invalid_argument("term '" + s.tokens() + "' needs " +
                                  std::string(1, to_char(a)) + " on qubit " +
                                  std::to_string(q) + " but basis is " + basis.label());
  }
  std::uint64_t support = 0;
  for (std::size_t q = 0; q < s.n_qubits(); ++q)
    if (s.axis(q) != PauliAxis::I) support |= std::uint64_t{1} << q;
  long long signed_sum = 0;
  for (const auto& [index, n] : counts.counts)
    signed_sum += (std::popcount(index & support) & 1) ? -static_cast<long long>(n)
                                                       : static_cast<long long>(n);
  return term.coefficient * static_cast<double>(signed_sum) /
         static_cast<double>(counts.total_shots);
}

struct GroupedEstimate {
  double energy = 0.0;
  std::size_t runs_used = 0;
};

/**
 * Shot-based energy: one basis rotation and one batch of shots per group;
 * every member term is read from that group's histogram. Group g samples
 * from substream g of seed.
 */
inline GroupedEstimate estimate_energy_grouped(const Hamiltonian& h, const Grouping& grouping,
                                               const StateVector& state,
                                               std::size_t shots_per_group,
                                               std::uint64_t seed) {
  detail::require_width(state, h.n_qubits());
  GroupedEstimate out;
  for (std::size_t g = 0; g < grouping.groups.size(); ++g) {
    std::vector<PauliString> strings;
    for (auto idx : grouping.groups[g]) {
      if (idx >= h.size()) throw std::out_of_range("group references a missing term");
      strings.push_back(h[idx].string);
    }
    if (strings.empty()) continue;
    const auto basis = basis_for_group(strings);
    const auto counts = sample_shots(apply_basis_rotation(state, basis), shots_per_group,
                                     substream_seed(seed, g));
    for (auto idx : grouping.groups[g]) out.energy += estimate_term(counts, h[idx], basis);
    ++out.runs_used;
  }
  return out;
}

}  // namespace trihybrid
