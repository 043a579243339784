#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wci/error.hpp"

namespace wci {

using Int = std::int64_t;

/// A weighted complete intersection given by its numerics: weights
/// a_0..a_N of the ambient weighted projective space and degrees d_1..d_k
/// of the defining equations. An empty degree list is the ambient space.
///
/// Positions are zero-based throughout: weights()[0] is a_0 and
/// degrees()[0] is d_1.
class Candidate {
public:
  Candidate(std::vector<Int> weights, std::vector<Int> degrees)
      : weights_(std::move(weights)), degrees_(std::move(degrees)) {
    if (weights_.empty())
      throw Error(ErrorCode::EmptyWeights, "weight list is empty");
    for (Int w : weights_)
      if (w < 1)
        throw Error(ErrorCode::NonPositiveEntry,
                    "weight " + std::to_string(w) + " is not positive");
    for (Int d : degrees_)
      if (d < 1)
        throw Error(ErrorCode::NonPositiveEntry,
                    "degree " + std::to_string(d) + " is not positive");
    if (degrees_.size() + 1 > weights_.size())
      throw Error(ErrorCode::TooManyDegrees,
                  std::to_string(degrees_.size()) + " degrees but only " +
                      std::to_string(weights_.size()) + " weights");
  }

  std::span<const Int> weights() const noexcept { return weights_; }
  std::span<const Int> degrees() const noexcept { return degrees_; }

  /// N, the dimension of the ambient weighted projective space.
  Int ambient_dim() const noexcept { return static_cast<Int>(weights_.size()) - 1; }
  /// k, the number of equations.
  Int codim() const noexcept { return static_cast<Int>(degrees_.size()); }
  /// n = N - k.
  Int dim() const noexcept { return ambient_dim() - codim(); }

  bool is_normalized() const noexcept {
    return std::is_sorted(weights_.begin(), weights_.end()) &&
           std::is_sorted(degrees_.begin(), degrees_.end());
  }

  // Canonical order: lexicographic on weights, then on degrees.
  friend auto operator<=>(const Candidate &, const Candidate &) = default;
  friend bool operator==(const Candidate &, const Candidate &) = default;

private:
  std::vector<Int> weights_;
  std::vector<Int> degrees_;
};

inline Candidate new_candidate(std::vector<Int> weights, std::vector<Int> degrees) {
  return Candidate(std::move(weights), std::move(degrees));
}

inline Candidate normalize(const Candidate &c) {
  std::vector<Int> w(c.weights().begin(), c.weights().end());
  std::vector<Int> d(c.degrees().begin(), c.degrees().end());
  std::sort(w.begin(), w.end());
  std::sort(d.begin(), d.end());
  return Candidate(std::move(w), std::move(d));
}

/// Fano index i_X = sum(weights) - sum(degrees).
struct IndexValue {
  Int value = 0;

  bool is_fano() const noexcept { return value > 0; }
  bool is_calabi_yau() const noexcept { return value == 0; }

  friend auto operator<=>(const IndexValue &, const IndexValue &) = default;
};

inline IndexValue fano_index(const Candidate &c) {
  Int sum = 0;
  for (Int w : c.weights())
    sum = checked_add(sum, w);
  for (Int d : c.degrees())
    sum = checked_sub(sum, d);
  return IndexValue{sum};
}

/// The set of weight positions divisible by `delta`, with their gcd.
struct GcdClass {
  Int delta = 0;
  std::vector<std::size_t> member_indices;
  Int class_gcd = 0;

  std::size_t size() const noexcept { return member_indices.size(); }

  friend bool operator==(const GcdClass &, const GcdClass &) = default;
};

namespace detail {

inline void append_divisors(Int value, std::vector<Int> &out) {
  for (Int p = 1; p * p <= value; ++p) {
    if (value % p != 0)
      continue;
    out.push_back(p);
    if (p != value / p)
      out.push_back(value / p);
  }
}

} // namespace detail

/// One class per distinct member set {i : delta | a_i}, delta > 1. Classes
/// sharing a member set are merged and represented by the largest delta,
/// which always equals the class gcd. Sorted by delta.
inline std::vector<GcdClass> gcd_classes(const Candidate &c) {
  std::vector<Int> deltas;
  for (Int w : c.weights())
    detail::append_divisors(w, deltas);
  std::sort(deltas.begin(), deltas.end());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());

  std::map<std::vector<std::size_t>, GcdClass> by_members;
  const auto weights = c.weights();
  for (Int delta : deltas) {
    if (delta <= 1)
      continue;
    GcdClass cls{delta, {}, 0};
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] % delta == 0) {
        cls.member_indices.push_back(i);
        cls.class_gcd = std::gcd(cls.class_gcd, weights[i]);
      }
    }
    auto [it, inserted] = by_members.try_emplace(cls.member_indices, cls);
    if (!inserted && cls.delta > it->second.delta)
      it->second = std::move(cls);
  }

  std::vector<GcdClass> out;
  out.reserve(by_members.size());
  for (auto &[members, cls] : by_members)
    out.push_back(std::move(cls));
  std::sort(out.begin(), out.end(),
            [](const GcdClass &a, const GcdClass &b) { return a.delta < b.delta; });
  return out;
}

inline std::string format_list(std::span<const Int> values, char sep = ',') {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i)
      s += sep;
    s += std::to_string(values[i]);
  }
  return s;
}

inline std::ostream &operator<<(std::ostream &os, const Candidate &c) {
  return os << "P(" << format_list(c.weights()) << ")[" << format_list(c.degrees())
            << "]";
}

} // namespace wci
