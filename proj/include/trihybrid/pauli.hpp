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
#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "trihybrid/errors.hpp"

namespace trihybrid {

enum class PauliAxis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char to_char(PauliAxis a) {
  constexpr char table[] = {'I', 'X', 'Y', 'Z'};
  return table[static_cast<int>(a)];
}

/// Commutation notion used to build groups.
///  - QWC: qubit-wise; every position has equal axes or an identity.
///  - GC: full operator commutation; even number of anticommuting positions.
enum class CommuteMode { QWC, GC };

inline std::string_view to_string(CommuteMode m) {
  return m == CommuteMode::QWC ? "qwc" : "gc";
}

/**
 * Tensor product of single-qubit Paulis, stored in symplectic form.
 *
 * Qubit q is bit (q % 64) of word (q / 64) in both masks:
 *   I = (x=0, z=0), X = (1, 0), Y = (1, 1), Z = (0, 1).
 * Both commutation predicates reduce to word-parallel bit operations.
 */
class PauliString {
 public:
  PauliString() = default;

  /// The identity on n_qubits.
  explicit PauliString(std::size_t n_qubits)
      : n_(n_qubits), x_(word_count(n_qubits), 0), z_(word_count(n_qubits), 0) {}

  /// Label with qubit 0 leftmost, e.g. "XIZ". Characters outside IXYZ throw.
  static PauliString from_label(std::string_view label) {
    PauliString p(label.size());
    for (std::size_t q = 0; q < label.size(); ++q) {
      switch (label[q]) {
        case 'I': break;
        case 'X': p.set(q, PauliAxis::X); break;
        case 'Y': p.set(q, PauliAxis::Y); break;
        case 'Z': p.set(q, PauliAxis::Z); break;
        default:
          throw std::invalid_argument("invalid Pauli label character '" +
                                      std::string(1, label[q]) + "'");
      }
    }
    return p;
  }

  std::size_t n_qubits() const noexcept { return n_; }

  PauliAxis axis(std::size_t q) const {
    const bool x = bit(x_, q);
    const bool z = bit(z_, q);
    if (x) return z ? PauliAxis::Y : PauliAxis::X;
    return z ? PauliAxis::Z : PauliAxis::I;
  }

  void set(std::size_t q, PauliAxis a) {
    if (q >= n_) throw std::out_of_range("qubit index out of range");
    const bool x = a == PauliAxis::X || a == PauliAxis::Y;
    const bool z = a == PauliAxis::Z || a == PauliAxis::Y;
    assign(x_, q, x);
    assign(z_, q, z);
  }

  bool is_identity() const noexcept {
    return std::all_of(x_.begin(), x_.end(), [](auto w) { return w == 0; }) &&
           std::all_of(z_.begin(), z_.end(), [](auto w) { return w == 0; });
  }

  /// True when the string contains only Z and I.
  bool is_z_only() const noexcept {
    return std::all_of(x_.begin(), x_.end(), [](auto w) { return w == 0; });
  }

  std::size_t weight() const noexcept {
    std::size_t w = 0;
    for (std::size_t i = 0; i < x_.size(); ++i) w += std::popcount(x_[i] | z_[i]);
    return w;
  }

  /// Support qubits in ascending order.
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < n_; ++q)
      if (axis(q) != PauliAxis::I) out.push_back(q);
    return out;
  }

  /// Copy extended with identities up to n qubits (n >= n_qubits()).
  PauliString padded(std::size_t n) const {
    if (n < n_) throw SizeMismatch("cannot shrink a Pauli string");
    PauliString p = *this;
    p.n_ = n;
    p.x_.resize(word_count(n), 0);
    p.z_.resize(word_count(n), 0);
    return p;
  }

  /// "XIZ" with qubit 0 leftmost.
  std::string label() const {
    std::string s(n_, 'I');
    for (std::size_t q = 0; q < n_; ++q) s[q] = to_char(axis(q));
    return s;
  }

  /// Token form used by the Hamiltonian file format: "X0 Z2", or "I".
  std::string tokens() const {
    std::string s;
    for (std::size_t q = 0; q < n_; ++q) {
      const PauliAxis a = axis(q);
      if (a == PauliAxis::I) continue;
      if (!s.empty()) s += ' ';
      s += to_char(a);
      s += std::to_string(q);
    }
    return s.empty() ? "I" : s;
  }

  std::span<const std::uint64_t> x_words() const noexcept { return x_; }
  std::span<const std::uint64_t> z_words() const noexcept { return z_; }

  /// Single-word masks; only meaningful for n_qubits <= 64.
  std::uint64_t x_mask() const noexcept { return x_.empty() ? 0 : x_[0]; }
  std::uint64_t z_mask() const noexcept { return z_.empty() ? 0 : z_[0]; }

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  static std::size_t word_count(std::size_t n) { return (n + 63) / 64; }
  static bool bit(const std::vector<std::uint64_t>& w, std::size_t q) {
    return (w[q / 64] >> (q % 64)) & 1u;
  }
  static void assign(std::vector<std::uint64_t>& w, std::size_t q, bool v) {
    const std::uint64_t m = std::uint64_t{1} << (q % 64);
    if (v)
      w[q / 64] |= m;
    else
      w[q / 64] &= ~m;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
};

struct Term {
  double coefficient = 0.0;
  PauliString string;

  friend bool operator==(const Term&, const Term&) = default;
};

namespace detail {
inline void require_same_width(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits())
    throw SizeMismatch("Pauli strings act on " + std::to_string(a.n_qubits()) +
                       " and " + std::to_string(b.n_qubits()) + " qubits");
}
}  // namespace detail

inline bool qubit_wise_commutes(const PauliString& a, const PauliString& b) {
  detail::require_same_width(a, b);
  const auto ax = a.x_words(), az = a.z_words();
  const auto bx = b.x_words(), bz = b.z_words();
  for (std::size_t i = 0; i < ax.size(); ++i) {
    const std::uint64_t both = (ax[i] | az[i]) & (bx[i] | bz[i]);
    const std::uint64_t differ = (ax[i] ^ bx[i]) | (az[i] ^ bz[i]);
    if (both & differ) return false;
  }
  return true;
}

inline bool generally_commutes(const PauliString& a, const PauliString& b) {
  detail::require_same_width(a, b);
  const auto ax = a.x_words(), az = a.z_words();
  const auto bx = b.x_words(), bz = b.z_words();
  int parity = 0;
  // The symplectic product is 1 exactly at positions that anticommute.
  for (std::size_t i = 0; i < ax.size(); ++i)
    parity ^= std::popcount((ax[i] & bz[i]) ^ (az[i] & bx[i])) & 1;
  return parity == 0;
}

inline bool commutes(const PauliString& a, const PauliString& b, CommuteMode mode) {
  return mode == CommuteMode::QWC ? qubit_wise_commutes(a, b)
                                  : generally_commutes(a, b);
}

/**
 * Real-weighted sum of Pauli strings.
 *
 * Construction pads every string to a common width, merges identical strings
 * by adding coefficients (first appearance fixes the position) and drops
 * terms whose coefficient ends up exactly zero.
 */
class Hamiltonian {
 public:
  Hamiltonian() = default;

  explicit Hamiltonian(std::vector<Term> terms, std::size_t min_qubits = 0) {
    std::size_t n = std::max<std::size_t>(min_qubits, 1);
    for (const auto& t : terms) {
      if (!std::isfinite(t.coefficient))
        throw std::invalid_argument("non-finite coefficient on " + t.string.tokens());
      n = std::max(n, t.string.n_qubits());
    }
    n_qubits_ = n;

    std::map<PauliString, std::size_t> position;
    std::vector<Term> merged;
    for (auto& t : terms) {
      PauliString s = t.string.padded(n);
      auto [it, inserted] = position.emplace(s, merged.size());
      if (inserted)
        merged.push_back(Term{t.coefficient, std::move(s)});
      else
        merged[it->second].coefficient += t.coefficient;
    }
    std::erase_if(merged, [](const Term& t) { return t.coefficient == 0.0; });
    terms_ = std::move(merged);
  }

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  const Term& operator[](std::size_t i) const { return terms_[i]; }

  friend bool operator==(const Hamiltonian&, const Hamiltonian&) = default;

 private:
  std::size_t n_qubits_ = 1;
  std::vector<Term> terms_;
};

namespace detail {

inline bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_blank(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_blank(line[i])) ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

inline std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

}  // namespace detail

/**
 * Parse one term line: `<float> (<axis><index>)*` or `<float> I`.
 *
 * Indices are 0-based. The returned string is as wide as its largest index
 * (width 1 for the identity); parse_hamiltonian widens it later.
 */
inline Term parse_term(std::string_view line, std::size_t line_no = 1) {
  const auto tokens = detail::split_tokens(detail::strip_comment(line));
  if (tokens.empty()) throw ParseError(line_no, 1, "empty term line");

  const auto& head = tokens.front();
  double coefficient = 0.0;
  {
    std::string_view s = head.text;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] =
        std::from_chars(s.data(), s.data() + s.size(), coefficient);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
      throw ParseError(line_no, head.column,
                       "malformed coefficient '" + std::string(head.text) + "'");
    if (!std::isfinite(coefficient))
      throw ParseError(line_no, head.column, "coefficient is not finite");
  }

  if (tokens.size() == 2 && tokens[1].text == "I")
    return Term{coefficient, PauliString(1)};

  std::vector<std::pair<std::size_t, PauliAxis>> ops;
  std::size_t width = 1;
  for (std::size_t k = 1; k < tokens.size(); ++k) {
    const auto& tok = tokens[k];
    PauliAxis a;
    switch (tok.text.front()) {
      case 'X': a = PauliAxis::X; break;
      case 'Y': a = PauliAxis::Y; break;
      case 'Z': a = PauliAxis::Z; break;
      case 'I':
        throw ParseError(line_no, tok.column,
                         "'I' must be the only operator token on a line");
      default:
        throw ParseError(line_no, tok.column,
                         "expected X<k>, Y<k> or Z<k>, got '" +
                             std::string(tok.text) + "'");
    }
    const std::string_view digits = tok.text.substr(1);
    if (!digits.empty() && digits.front() == '-')
      throw ParseError(line_no, tok.column + 1, "negative qubit index");
    std::size_t index = 0;
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size())
      throw ParseError(line_no, tok.column + 1,
                       "malformed qubit index in '" + std::string(tok.text) + "'");
    for (const auto& [q, _] : ops)
      if (q == index)
        throw ParseError(line_no, tok.column,
                         "duplicate qubit index " + std::to_string(index));
    ops.emplace_back(index, a);
    width = std::max(width, index + 1);
  }

  PauliString s(width);
  for (const auto& [q, a] : ops) s.set(q, a);
  return Term{coefficient, std::move(s)};
}

/**
 * Parse a whole Hamiltonian file.
 *
 * A comment line of the exact form `# qubits N` sets a minimum width, so
 * Hamiltonians with idle top qubits survive a round trip.
 */
inline Hamiltonian parse_hamiltonian(std::string_view text) {
  std::vector<Term> terms;
  std::size_t min_qubits = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    const auto hash = line.find('#');
    if (hash != std::string_view::npos) {
      const auto hint = detail::split_tokens(line.substr(hash + 1));
      if (hint.size() == 2 && hint[0].text == "qubits") {
        std::size_t n = 0;
        const auto [ptr, ec] = std::from_chars(
            hint[1].text.data(), hint[1].text.data() + hint[1].text.size(), n);
        if (ec == std::errc{} && ptr == hint[1].text.data() + hint[1].text.size())
          min_qubits = std::max(min_qubits, n);
      }
    }
    if (detail::split_tokens(detail::strip_comment(line)).empty()) continue;
    terms.push_back(parse_term(line, line_no));
  }
  if (terms.empty()) throw ParseError(line_no, 1, "no terms in Hamiltonian input");
  return Hamiltonian(std::move(terms), min_qubits);
}

/// Shortest decimal that parses back to exactly the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline std::string render(const Hamiltonian& h) {
  std::string out = "# qubits " + std::to_string(h.n_qubits()) + "\n";
  for (const auto& t : h.terms())
    out += format_double(t.coefficient) + " " + t.string.tokens() + "\n";
  return out;
}

struct StripResult {
  Hamiltonian kept;
  std::vector<Term> removed;
  /// Set when a lone non-identity term was removed only because it had no
  /// partner to fail against. Callers usually reinsert it as its own group.
  bool vacuous = false;
};

/// Remove identity terms and every term commuting (under mode) with all others.
inline StripResult strip_universal_commuters(const Hamiltonian& h, CommuteMode mode) {
  const auto& terms = h.terms();
  std::vector<Term> kept, removed;
  std::size_t non_identity = 0;
  for (const auto& t : terms) non_identity += !t.string.is_identity();

  for (std::size_t i = 0; i < terms.size(); ++i) {
    bool universal = true;
    if (!terms[i].string.is_identity()) {
      for (std::size_t j = 0; j < terms.size() && universal; ++j)
        if (j != i && !commutes(terms[i].string, terms[j].string, mode))
          universal = false;
    }
    (universal ? removed : kept).push_back(terms[i]);
  }
  StripResult r{Hamiltonian(std::move(kept), h.n_qubits()), std::move(removed), false};
  r.vacuous = non_identity == 1 && r.kept.empty();
  return r;
}

struct ZGroupResult {
  Hamiltonian rest;
  std::vector<Term> z_group;
};

/// Split off every term built from Z and I only; they form one QWC group.
inline ZGroupResult extract_z_only_group(const Hamiltonian& h) {
  std::vector<Term> rest, z;
  for (const auto& t : h.terms()) (t.string.is_z_only() ? z : rest).push_back(t);
  return {Hamiltonian(std::move(rest), h.n_qubits()), std::move(z)};
}

}  // namespace trihybrid
