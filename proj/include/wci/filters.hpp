#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wci/core.hpp"

namespace wci {

// Declaration order is the fixed evaluation order used by run_all.
enum class FilterId : std::uint8_t {
  Normalized,
  AmbientWellFormed,
  FanoPositivity,
  CalabiYau,
  LinearCone,
  Deltas,
  LastWeight,
  GcdCover,
  UnitPrefix,
};

inline constexpr std::array<FilterId, 9> all_filter_ids = {
    FilterId::Normalized, FilterId::AmbientWellFormed, FilterId::FanoPositivity,
    FilterId::CalabiYau,  FilterId::LinearCone,        FilterId::Deltas,
    FilterId::LastWeight, FilterId::GcdCover,          FilterId::UnitPrefix,
};

inline constexpr std::string_view to_string(FilterId id) {
  switch (id) {
  case FilterId::Normalized: return "Normalized";
  case FilterId::AmbientWellFormed: return "AmbientWellFormed";
  case FilterId::FanoPositivity: return "FanoPositivity";
  case FilterId::CalabiYau: return "CalabiYau";
  case FilterId::LinearCone: return "LinearCone";
  case FilterId::Deltas: return "Deltas";
  case FilterId::LastWeight: return "LastWeight";
  case FilterId::GcdCover: return "GcdCover";
  case FilterId::UnitPrefix: return "UnitPrefix";
  }
  return "Unknown";
}

inline std::optional<FilterId> filter_id_from_string(std::string_view name) {
  for (FilterId id : all_filter_ids)
    if (to_string(id) == name)
      return id;
  return std::nullopt;
}

/// A set of filters to evaluate.
class Profile {
public:
  constexpr Profile() = default;
  Profile(std::initializer_list<FilterId> ids) {
    for (FilterId id : ids)
      bits_.set(static_cast<std::size_t>(id));
  }

  static Profile none() { return {}; }
  static Profile smooth_fano() {
    return {FilterId::Normalized, FilterId::AmbientWellFormed, FilterId::FanoPositivity,
            FilterId::LinearCone, FilterId::Deltas,            FilterId::LastWeight,
            FilterId::GcdCover,   FilterId::UnitPrefix};
  }
  static Profile calabi_yau() {
    return {FilterId::Normalized, FilterId::AmbientWellFormed, FilterId::CalabiYau,
            FilterId::LinearCone, FilterId::Deltas,            FilterId::LastWeight,
            FilterId::GcdCover,   FilterId::UnitPrefix};
  }

  bool contains(FilterId id) const { return bits_.test(static_cast<std::size_t>(id)); }
  Profile &insert(FilterId id) {
    bits_.set(static_cast<std::size_t>(id));
    return *this;
  }
  Profile &erase(FilterId id) {
    bits_.reset(static_cast<std::size_t>(id));
    return *this;
  }
  bool contains_all(const Profile &other) const { return (bits_ & other.bits_) == other.bits_; }
  bool empty() const { return bits_.none(); }

  std::vector<FilterId> ids() const {
    std::vector<FilterId> out;
    for (FilterId id : all_filter_ids)
      if (contains(id))
        out.push_back(id);
    return out;
  }

  friend bool operator==(const Profile &, const Profile &) = default;

private:
  std::bitset<all_filter_ids.size()> bits_;
};

// Failure witnesses. Each one can be re-checked against the candidate alone.

struct NormalizedWitness {
  bool in_degrees = false;  // which list is out of order
  std::size_t position = 0; // list[position] > list[position + 1]
  friend bool operator==(const NormalizedWitness &, const NormalizedWitness &) = default;
};
struct NotNormalizedWitness {
  friend bool operator==(const NotNormalizedWitness &, const NotNormalizedWitness &) = default;
};
struct AmbientWitness {
  std::size_t omitted_index = 0;
  Int gcd = 0; // gcd of every weight except the omitted one, > 1
  friend bool operator==(const AmbientWitness &, const AmbientWitness &) = default;
};
struct IndexWitness {
  Int index = 0;
  friend bool operator==(const IndexWitness &, const IndexWitness &) = default;
};
struct LinearConeWitness {
  std::size_t weight_index = 0;
  std::size_t degree_index = 0;
  friend bool operator==(const LinearConeWitness &, const LinearConeWitness &) = default;
};
struct DeltasWitness {
  std::size_t degree_index = 0; // j; compared weight sits at n + 1 + j
  Int degree = 0;
  Int weight = 0;
  friend bool operator==(const DeltasWitness &, const DeltasWitness &) = default;
};
struct LastWeightWitness {
  Int last_degree = 0;
  Int last_weight = 0;
  friend bool operator==(const LastWeightWitness &, const LastWeightWitness &) = default;
};
struct GcdCoverWitness {
  Int class_gcd = 0;
  std::size_t required = 0;  // weights in the class
  std::size_t available = 0; // degrees divisible by class_gcd
  friend bool operator==(const GcdCoverWitness &, const GcdCoverWitness &) = default;
};
struct UnitPrefixWitness {
  std::size_t position = 0; // first position inside the prefix with weight > 1
  Int weight = 0;
  friend bool operator==(const UnitPrefixWitness &, const UnitPrefixWitness &) = default;
};
struct InfeasiblePrefixWitness {
  Int required_position = 0; // k + i - 1
  Int ambient_dim = 0;       // N < required_position
  friend bool operator==(const InfeasiblePrefixWitness &,
                         const InfeasiblePrefixWitness &) = default;
};

using Witness =
    std::variant<NormalizedWitness, NotNormalizedWitness, AmbientWitness, IndexWitness,
                 LinearConeWitness, DeltasWitness, LastWeightWitness, GcdCoverWitness,
                 UnitPrefixWitness, InfeasiblePrefixWitness>;

struct FilterVerdict {
  FilterId filter_id;
  bool passed = true;
  std::optional<Witness> witness; // present iff !passed

  static FilterVerdict pass(FilterId id) { return {id, true, std::nullopt}; }
  static FilterVerdict fail(FilterId id, Witness w) { return {id, false, std::move(w)}; }
};

struct FilterReport {
  Candidate candidate;
  std::vector<FilterVerdict> verdicts;
  Profile profile;

  bool survives() const {
    for (const auto &v : verdicts)
      if (!v.passed)
        return false;
    return true;
  }
  const FilterVerdict *find(FilterId id) const {
    for (const auto &v : verdicts)
      if (v.filter_id == id)
        return &v;
    return nullptr;
  }
};

namespace detail {

inline void require_normalized(const Candidate &c, const char *what) {
  if (!c.is_normalized())
    throw Error(ErrorCode::NotNormalized, std::string(what) + " requires a normalized candidate");
}

} // namespace detail

inline FilterVerdict normalized_check(const Candidate &c) {
  for (int list = 0; list < 2; ++list) {
    auto values = list == 0 ? c.weights() : c.degrees();
    for (std::size_t p = 0; p + 1 < values.size(); ++p)
      if (values[p] > values[p + 1])
        return FilterVerdict::fail(FilterId::Normalized, NormalizedWitness{list == 1, p});
  }
  return FilterVerdict::pass(FilterId::Normalized);
}

/// Every N of the N + 1 weights are coprime. A single weight passes.
inline FilterVerdict ambient_well_formed(const Candidate &c) {
  const auto w = c.weights();
  const std::size_t size = w.size();
  if (size < 2)
    return FilterVerdict::pass(FilterId::AmbientWellFormed);
  // prefix[i] = gcd(w[0..i)), suffix[i] = gcd(w[i..size))
  std::vector<Int> prefix(size + 1, 0), suffix(size + 1, 0);
  for (std::size_t i = 0; i < size; ++i)
    prefix[i + 1] = std::gcd(prefix[i], w[i]);
  for (std::size_t i = size; i-- > 0;)
    suffix[i] = std::gcd(suffix[i + 1], w[i]);
  for (std::size_t i = 0; i < size; ++i) {
    Int g = std::gcd(prefix[i], suffix[i + 1]);
    if (g > 1)
      return FilterVerdict::fail(FilterId::AmbientWellFormed, AmbientWitness{i, g});
  }
  return FilterVerdict::pass(FilterId::AmbientWellFormed);
}

inline FilterVerdict fano_positivity(const Candidate &c) {
  IndexValue i = fano_index(c);
  if (i.is_fano())
    return FilterVerdict::pass(FilterId::FanoPositivity);
  return FilterVerdict::fail(FilterId::FanoPositivity, IndexWitness{i.value});
}

inline FilterVerdict calabi_yau_check(const Candidate &c) {
  IndexValue i = fano_index(c);
  if (i.is_calabi_yau())
    return FilterVerdict::pass(FilterId::CalabiYau);
  return FilterVerdict::fail(FilterId::CalabiYau, IndexWitness{i.value});
}

/// Fails when some degree equals some weight. Reports the pair with the
/// smallest degree position, then the smallest weight position.
inline FilterVerdict is_linear_cone(const Candidate &c) {
  const auto w = c.weights();
  const auto d = c.degrees();
  for (std::size_t j = 0; j < d.size(); ++j)
    for (std::size_t i = 0; i < w.size(); ++i)
      if (d[j] == w[i])
        return FilterVerdict::fail(FilterId::LinearCone, LinearConeWitness{i, j});
  return FilterVerdict::pass(FilterId::LinearCone);
}

/// d_j > a_{n+j} for j = 1..k, i.e. every degree exceeds its paired tail
/// weight.
inline FilterVerdict deltas_ok(const Candidate &c) {
  detail::require_normalized(c, "deltas_ok");
  const auto w = c.weights();
  const auto d = c.degrees();
  const auto offset = static_cast<std::size_t>(c.dim()) + 1;
  for (std::size_t j = 0; j < d.size(); ++j)
    if (d[j] <= w[offset + j])
      return FilterVerdict::fail(FilterId::Deltas, DeltasWitness{j, d[j], w[offset + j]});
  return FilterVerdict::pass(FilterId::Deltas);
}

inline FilterVerdict last_weight_ok(const Candidate &c) {
  detail::require_normalized(c, "last_weight_ok");
  if (c.codim() == 0)
    throw Error(ErrorCode::NoDegrees, "last_weight_ok needs at least one degree");
  const Int dk = c.degrees().back();
  const Int an = c.weights().back();
  if (dk >= checked_mul(2, an))
    return FilterVerdict::pass(FilterId::LastWeight);
  return FilterVerdict::fail(FilterId::LastWeight, LastWeightWitness{dk, an});
}

/// For every gcd class (members S, gcd g) at least |S| degrees are divisible
/// by g. Checking classes is enough: a subset of weights with gcd g lies in
/// the class of g, whose gcd is exactly g, so the class is the worst case.
inline FilterVerdict gcd_cover_ok(const Candidate &c) {
  const auto d = c.degrees();
  for (const GcdClass &cls : gcd_classes(c)) {
    std::size_t available = 0;
    for (Int deg : d)
      if (deg % cls.class_gcd == 0)
        ++available;
    if (available < cls.size())
      return FilterVerdict::fail(FilterId::GcdCover,
                                 GcdCoverWitness{cls.class_gcd, cls.size(), available});
  }
  return FilterVerdict::pass(FilterId::GcdCover);
}

inline constexpr Int gcd_cover_bruteforce_limit = 12;

/// Literal form of the smoothness criterion: for every nonempty subset of r
/// weights with gcd delta > 1 there are r degrees whose gcd is divisible by
/// delta. Exponential; kept as a test oracle.
inline FilterVerdict gcd_cover_bruteforce(const Candidate &c) {
  if (c.ambient_dim() > gcd_cover_bruteforce_limit)
    throw Error(ErrorCode::TooLarge, "gcd_cover_bruteforce supports N <= 12");
  const auto w = c.weights();
  const auto d = c.degrees();
  const std::size_t nw = w.size();
  const std::size_t nd = d.size();

  // gcd and size of every subset of degrees
  std::vector<Int> degree_gcd(std::size_t{1} << nd, 0);
  std::vector<std::size_t> degree_count(std::size_t{1} << nd, 0);
  for (std::size_t mask = 1; mask < degree_gcd.size(); ++mask) {
    std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
    degree_gcd[mask] = std::gcd(degree_gcd[mask & (mask - 1)], d[low]);
    degree_count[mask] = degree_count[mask & (mask - 1)] + 1;
  }
  auto exists_degrees = [&](Int delta, std::size_t r) {
    for (std::size_t mask = 1; mask < degree_gcd.size(); ++mask)
      if (degree_count[mask] == r && degree_gcd[mask] % delta == 0)
        return true;
    return false;
  };

  for (std::size_t mask = 1; mask < (std::size_t{1} << nw); ++mask) {
    Int delta = 0;
    std::size_t r = 0;
    for (std::size_t i = 0; i < nw; ++i) {
      if (mask >> i & 1) {
        delta = std::gcd(delta, w[i]);
        ++r;
      }
    }
    if (delta <= 1)
      continue;
    if (!exists_degrees(delta, r)) {
      std::size_t q = 0;
      for (Int deg : d)
        if (deg % delta == 0)
          ++q;
      return FilterVerdict::fail(FilterId::GcdCover, GcdCoverWitness{delta, r, q});
    }
  }
  return FilterVerdict::pass(FilterId::GcdCover);
}

/// a_0 = ... = a_{k+i-1} = 1 with i = max(index, 0). Fails with an
/// infeasible-prefix witness when k + i - 1 > N.
inline FilterVerdict unit_prefix_ok(const Candidate &c, IndexValue index) {
  detail::require_normalized(c, "unit_prefix_ok");
  const Int i = index.value > 0 ? index.value : 0;
  const Int last = checked_sub(checked_add(c.codim(), i), 1);
  if (last < 0)
    return FilterVerdict::pass(FilterId::UnitPrefix);
  if (last > c.ambient_dim())
    return FilterVerdict::fail(FilterId::UnitPrefix,
                               InfeasiblePrefixWitness{last, c.ambient_dim()});
  const auto w = c.weights();
  if (w[static_cast<std::size_t>(last)] == 1)
    return FilterVerdict::pass(FilterId::UnitPrefix);
  std::size_t p = 0;
  while (w[p] == 1)
    ++p;
  return FilterVerdict::fail(FilterId::UnitPrefix, UnitPrefixWitness{p, w[p]});
}

namespace detail {

inline bool order_dependent(FilterId id) {
  return id == FilterId::Deltas || id == FilterId::LastWeight || id == FilterId::UnitPrefix;
}

inline FilterVerdict evaluate(FilterId id, const Candidate &c, bool normalized) {
  if (!normalized && order_dependent(id))
    return FilterVerdict::fail(id, NotNormalizedWitness{});
  switch (id) {
  case FilterId::Normalized: return normalized_check(c);
  case FilterId::AmbientWellFormed: return ambient_well_formed(c);
  case FilterId::FanoPositivity: return fano_positivity(c);
  case FilterId::CalabiYau: return calabi_yau_check(c);
  case FilterId::LinearCone: return is_linear_cone(c);
  case FilterId::Deltas: return deltas_ok(c);
  case FilterId::LastWeight:
    // Vacuous for the ambient space itself.
    if (c.codim() == 0)
      return FilterVerdict::pass(id);
    return last_weight_ok(c);
  case FilterId::GcdCover: return gcd_cover_ok(c);
  case FilterId::UnitPrefix: return unit_prefix_ok(c, fano_index(c));
  }
  return FilterVerdict::pass(id);
}

} // namespace detail

/// Evaluates every requested filter in declaration order of FilterId, with
/// no short-circuiting. Filters that need sorted input fail with a
/// NotNormalizedWitness on unsorted candidates.
inline FilterReport run_all(const Candidate &c, const Profile &profile) {
  FilterReport report{c, {}, profile};
  const bool normalized = c.is_normalized();
  for (FilterId id : profile.ids())
    report.verdicts.push_back(detail::evaluate(id, c, normalized));
  return report;
}

/// Same acceptance as run_all(c, profile).survives(), stopping at the first
/// failure. Cheap filters run first.
inline bool survives(const Candidate &c, const Profile &profile) {
  static constexpr std::array<FilterId, 9> cheap_first = {
      FilterId::Normalized, FilterId::FanoPositivity, FilterId::CalabiYau,
      FilterId::Deltas,     FilterId::LastWeight,     FilterId::UnitPrefix,
      FilterId::LinearCone, FilterId::AmbientWellFormed, FilterId::GcdCover,
  };
  const bool normalized = c.is_normalized();
  for (FilterId id : cheap_first)
    if (profile.contains(id) && !detail::evaluate(id, c, normalized).passed)
      return false;
  return true;
}

} // namespace wci
