#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wci/core.hpp"
#include "wci/filters.hpp"

namespace wci {

enum class TransformKind { Wellformize, Unconize, HyperplaneSection };

inline constexpr std::string_view to_string(TransformKind kind) {
  switch (kind) {
  case TransformKind::Wellformize: return "Wellformize";
  case TransformKind::Unconize: return "Unconize";
  case TransformKind::HyperplaneSection: return "HyperplaneSection";
  }
  return "Unknown";
}

/// Divide every weight except the one at `exempt_index`, and every degree,
/// by `factor`; then sort. Positions refer to the tuple before the step.
struct VeroneseStep {
  Int factor = 0;
  std::size_t exempt_index = 0;
  std::vector<std::size_t> affected;
  friend bool operator==(const VeroneseStep &, const VeroneseStep &) = default;
};

/// Remove weights()[weight_index] and degrees()[degree_index].
struct ConeStep {
  std::size_t weight_index = 0;
  std::size_t degree_index = 0;
  friend bool operator==(const ConeStep &, const ConeStep &) = default;
};

/// Remove the unit weight at `weight_index`.
struct SectionStep {
  std::size_t weight_index = 0;
  friend bool operator==(const SectionStep &, const SectionStep &) = default;
};

using TransformStep = std::variant<VeroneseStep, ConeStep, SectionStep>;

struct TransformTrace {
  TransformKind kind;
  Candidate before;
  Candidate after;
  std::vector<TransformStep> steps;
};

namespace detail {

inline Candidate apply_step(const Candidate &c, const TransformStep &step) {
  std::vector<Int> w(c.weights().begin(), c.weights().end());
  std::vector<Int> d(c.degrees().begin(), c.degrees().end());
  if (const auto *v = std::get_if<VeroneseStep>(&step)) {
    for (std::size_t i : v->affected)
      w[i] /= v->factor;
    for (Int &deg : d)
      deg /= v->factor;
    return normalize(Candidate(std::move(w), std::move(d)));
  }
  if (const auto *s = std::get_if<ConeStep>(&step)) {
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(s->weight_index));
    d.erase(d.begin() + static_cast<std::ptrdiff_t>(s->degree_index));
    return Candidate(std::move(w), std::move(d));
  }
  const auto &h = std::get<SectionStep>(step);
  w.erase(w.begin() + static_cast<std::ptrdiff_t>(h.weight_index));
  return Candidate(std::move(w), std::move(d));
}

} // namespace detail

/// Re-applies the recorded steps to `before`. Wellformize traces end in
/// normalized form, so the result is normalized for that kind.
inline Candidate replay(const TransformTrace &trace) {
  Candidate c = trace.before;
  for (const auto &step : trace.steps)
    c = detail::apply_step(c, step);
  if (trace.kind == TransformKind::Wellformize)
    c = normalize(c);
  return c;
}

/// Veronese rewrite until the ambient space is well formed. Each round picks
/// the first position whose complement has gcd a > 1 and divides the
/// complement and all degrees by a. The overall gcd stays 1 and the product
/// of weights strictly drops, so this terminates.
inline TransformTrace wellformize(const Candidate &c) {
  Int overall = 0;
  for (Int w : c.weights())
    overall = std::gcd(overall, w);
  if (overall != 1)
    throw Error(ErrorCode::OverallGcdNotOne,
                "weights share the factor " + std::to_string(overall));

  TransformTrace trace{TransformKind::Wellformize, c, c, {}};
  Candidate current = c;
  for (;;) {
    FilterVerdict v = ambient_well_formed(current);
    if (v.passed)
      break;
    const auto &wit = std::get<AmbientWitness>(*v.witness);
    VeroneseStep step{wit.gcd, wit.omitted_index, {}};
    for (std::size_t i = 0; i < current.weights().size(); ++i)
      if (i != wit.omitted_index)
        step.affected.push_back(i);
    const auto d = current.degrees();
    for (std::size_t j = 0; j < d.size(); ++j)
      if (d[j] % step.factor != 0)
        throw Error(ErrorCode::DegreeNotDivisible,
                    "degree d[" + std::to_string(j) + "] = " + std::to_string(d[j]) +
                        " is not divisible by " + std::to_string(step.factor));
    current = detail::apply_step(current, step);
    trace.steps.push_back(std::move(step));
  }
  trace.after = normalize(current);
  return trace;
}

/// Removes matched (weight, degree) pairs until no degree equals a weight.
/// Each round takes the largest matching degree (last position on ties) and
/// the last weight position holding that value. Preserves n and the index.
inline TransformTrace unconize(const Candidate &c) {
  TransformTrace trace{TransformKind::Unconize, c, c, {}};
  Candidate current = c;
  for (;;) {
    const auto w = current.weights();
    const auto d = current.degrees();
    std::optional<ConeStep> best;
    for (std::size_t j = 0; j < d.size(); ++j) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (d[j] != w[i])
          continue;
        if (!best || d[j] > d[best->degree_index] ||
            (d[j] == d[best->degree_index] &&
             (i > best->weight_index || (i == best->weight_index && j > best->degree_index))))
          best = ConeStep{i, j};
      }
    }
    if (!best)
      break;
    if (w.size() < 2)
      throw Error(ErrorCode::DegenerateEmpty, "removing the pair would empty the weights");
    current = detail::apply_step(current, *best);
    trace.steps.push_back(*best);
  }
  trace.after = current;
  return trace;
}

/// Passes to a general member of |O(1)|: drops the unit weight a_0.
inline TransformTrace hyperplane_section(const Candidate &c) {
  detail::require_normalized(c, "hyperplane_section");
  if (c.weights().front() != 1)
    throw Error(ErrorCode::NoUnitWeight, "a_0 = " + std::to_string(c.weights().front()));
  IndexValue index = fano_index(c);
  if (index.value < 1)
    throw Error(ErrorCode::NotFano, "index " + std::to_string(index.value) + " < 1");
  if (c.dim() < 1)
    throw Error(ErrorCode::DimensionZero, "cannot cut a zero-dimensional candidate");
  SectionStep step{0};
  return TransformTrace{TransformKind::HyperplaneSection, c, detail::apply_step(c, step),
                        {step}};
}

} // namespace wci
