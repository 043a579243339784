#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wci/core.hpp"
#include "wci/enumerator.hpp"

namespace wci {

enum class CaseId { CaseI, CaseII, CaseIII, HypersurfaceRemark, CodimSurvey };

inline constexpr std::string_view to_string(CaseId id) {
  switch (id) {
  case CaseId::CaseI: return "CaseI";
  case CaseId::CaseII: return "CaseII";
  case CaseId::CaseIII: return "CaseIII";
  case CaseId::HypersurfaceRemark: return "HypersurfaceRemark";
  case CaseId::CodimSurvey: return "CodimSurvey";
  }
  return "Unknown";
}

enum class Verdict { Verified, Refuted, InconclusiveCapTouched };

inline constexpr std::string_view to_string(Verdict v) {
  switch (v) {
  case Verdict::Verified: return "Verified";
  case Verdict::Refuted: return "Refuted";
  case Verdict::InconclusiveCapTouched: return "InconclusiveCapTouched";
  }
  return "Unknown";
}

struct IntRange {
  Int lo = 0;
  Int hi = 0; // inclusive
};

/// Cap per slice: a fixed value, or the default for that slice.
struct CapPolicy {
  std::optional<Int> fixed;
  Int for_slice(Int n, Int k, Int index) const {
    return fixed ? *fixed : default_max_weight(n, k, index);
  }
};

struct SliceOutcome {
  Int n = 0;
  Int index = 0;
  Int k = 0;
  std::vector<Candidate> expected;
  EnumerationResult actual;
  bool matches = true;
};

/// Survivor count of a survey slice against a published family count.
/// The filters are necessary conditions only, so a mismatch is flagged
/// rather than failed.
struct SurveyCount {
  std::size_t survivors = 0;
  std::optional<std::size_t> expected;
  bool discrepancy = false;
};

struct VerificationResult {
  CaseId case_id;
  IntRange n_range;
  std::optional<IntRange> index_range;
  CapPolicy cap;
  std::vector<SliceOutcome> slices;
  Verdict verdict = Verdict::Verified;
  std::optional<Candidate> counterexample;
  std::optional<SurveyCount> survey;
};

/// (1^{n+k+1}; 2^k)
inline Candidate quadrics_family(Int n, Int k) {
  return Candidate(std::vector<Int>(static_cast<std::size_t>(n + k + 1), 1),
                   std::vector<Int>(static_cast<std::size_t>(k), 2));
}

/// (1^{n+k+1}; 2^{k-1}, 3)
inline Candidate quadrics_and_cubic_family(Int n, Int k) {
  std::vector<Int> degrees(static_cast<std::size_t>(k), 2);
  degrees.back() = 3;
  return Candidate(std::vector<Int>(static_cast<std::size_t>(n + k + 1), 1), std::move(degrees));
}

/// Index n - 1 hypersurfaces: (1^{n+2}; 3), (1^{n+1}, 2; 4), (1^n, 2, 3; 6).
inline std::vector<Candidate> index_n_minus_one_hypersurfaces(Int n) {
  const auto ones = [](Int count) { return std::vector<Int>(static_cast<std::size_t>(count), 1); };
  std::vector<Int> w2 = ones(n + 1);
  w2.push_back(2);
  std::vector<Int> w3 = ones(n);
  w3.push_back(2);
  w3.push_back(3);
  std::vector<Candidate> out{Candidate(ones(n + 2), {3}), Candidate(std::move(w2), {4}),
                             Candidate(std::move(w3), {6})};
  std::sort(out.begin(), out.end());
  return out;
}

/// Families named for codimension n - i - 1, and the published count.
struct SurveyExpectation {
  std::vector<Candidate> named;
  std::optional<std::size_t> count;
};

inline SurveyExpectation survey_expectation(Int n, Int index) {
  SurveyExpectation e;
  if (index == 1 && n == 5)
    e.count = 5;
  if (index == 1 && n == 6) {
    e.count = 5;
    std::vector<Int> w(10, 1);
    w.push_back(3);
    e.named.emplace_back(std::move(w), std::vector<Int>{2, 2, 2, 6});
  }
  return e;
}

namespace detail {

inline void require_min_dim(IntRange r, Int min_n, const char *what) {
  if (r.lo > r.hi || r.lo < min_n)
    throw Error(ErrorCode::InvalidQuery,
                std::string(what) + " needs dimensions >= " + std::to_string(min_n));
}

inline SliceOutcome run_slice(Int n, Int index, Int k, const CapPolicy &cap,
                              std::vector<Candidate> expected, const EnumerationOptions &options) {
  EnumerationQuery q{n, index, k, cap.for_slice(n, k, index), Profile::smooth_fano()};
  SliceOutcome s{n, index, k, std::move(expected), enumerate(q, options), true};
  std::sort(s.expected.begin(), s.expected.end());
  s.matches = s.actual.survivors == s.expected;
  return s;
}

// First candidate in the symmetric difference of two sorted lists.
inline std::optional<Candidate> first_difference(const std::vector<Candidate> &expected,
                                                 const std::vector<Candidate> &actual) {
  std::vector<Candidate> diff;
  std::set_symmetric_difference(expected.begin(), expected.end(), actual.begin(), actual.end(),
                                std::back_inserter(diff));
  if (diff.empty())
    return std::nullopt;
  return diff.front();
}

// Refuted beats inconclusive: a surplus survivor is a counterexample at any
// cap, and a missing family is one only if the search was exhaustive.
inline void conclude_exact(VerificationResult &r) {
  bool touched = false;
  for (const auto &s : r.slices) {
    touched = touched || s.actual.cap_touched;
    if (s.matches)
      continue;
    std::vector<Candidate> extra;
    std::set_difference(s.actual.survivors.begin(), s.actual.survivors.end(),
                        s.expected.begin(), s.expected.end(), std::back_inserter(extra));
    if (!extra.empty()) {
      r.verdict = Verdict::Refuted;
      r.counterexample = extra.front();
      return;
    }
    if (!s.actual.cap_touched) {
      r.verdict = Verdict::Refuted;
      r.counterexample = first_difference(s.expected, s.actual.survivors);
      return;
    }
  }
  r.verdict = touched ? Verdict::InconclusiveCapTouched : Verdict::Verified;
}

} // namespace detail

/// k <= n - i + 1: every slice with n - i + 2 <= k <= n + 1 is empty.
inline VerificationResult verify_case_i(IntRange n_range, std::optional<IntRange> i_range,
                                        CapPolicy cap, const EnumerationOptions &options = {}) {
  detail::require_min_dim(n_range, 2, "case i");
  VerificationResult r{CaseId::CaseI, n_range, i_range, cap, {}, Verdict::Verified, {}, {}};
  for (Int n = n_range.lo; n <= n_range.hi; ++n) {
    const Int i_lo = i_range ? std::max<Int>(i_range->lo, 1) : 1;
    const Int i_hi = i_range ? std::min(i_range->hi, n - 1) : n - 1;
    for (Int i = i_lo; i <= i_hi; ++i)
      for (Int k = n - i + 2; k <= n + 1; ++k)
        r.slices.push_back(detail::run_slice(n, i, k, cap, {}, options));
  }
  detail::conclude_exact(r);
  return r;
}

/// k = n - i + 1 gives only complete intersections of quadrics in P^N.
inline VerificationResult verify_case_ii(IntRange n_range, CapPolicy cap,
                                         const EnumerationOptions &options = {}) {
  detail::require_min_dim(n_range, 2, "case ii");
  VerificationResult r{CaseId::CaseII, n_range, std::nullopt, cap, {}, Verdict::Verified, {}, {}};
  for (Int n = n_range.lo; n <= n_range.hi; ++n)
    for (Int i = 1; i <= n; ++i) {
      const Int k = n - i + 1;
      r.slices.push_back(detail::run_slice(n, i, k, cap, {quadrics_family(n, k)}, options));
    }
  detail::conclude_exact(r);
  return r;
}

/// k = n - i >= 2 gives only k - 1 quadrics and a cubic in P^N.
inline VerificationResult verify_case_iii(IntRange n_range, CapPolicy cap,
                                          const EnumerationOptions &options = {}) {
  detail::require_min_dim(n_range, 3, "case iii");
  VerificationResult r{CaseId::CaseIII, n_range, std::nullopt, cap, {}, Verdict::Verified, {}, {}};
  for (Int n = n_range.lo; n <= n_range.hi; ++n)
    for (Int i = 1; n - i >= 2; ++i) {
      const Int k = n - i;
      r.slices.push_back(
          detail::run_slice(n, i, k, cap, {quadrics_and_cubic_family(n, k)}, options));
    }
  detail::conclude_exact(r);
  return r;
}

/// Hypersurfaces (k = 1) of index n - 1: exactly three families.
inline VerificationResult verify_hypersurface_remark(IntRange n_range, CapPolicy cap,
                                                     const EnumerationOptions &options = {}) {
  detail::require_min_dim(n_range, 3, "hypersurface check");
  VerificationResult r{CaseId::HypersurfaceRemark, n_range, std::nullopt, cap, {},
                       Verdict::Verified, {}, {}};
  for (Int n = n_range.lo; n <= n_range.hi; ++n)
    r.slices.push_back(
        detail::run_slice(n, n - 1, 1, cap, index_n_minus_one_hypersurfaces(n), options));
  detail::conclude_exact(r);
  return r;
}

/// Codimension k = n - i - 1. Verified when every named family is found;
/// the survivor count is reported against the published count.
inline VerificationResult survey_codim(Int n, Int index, CapPolicy cap,
                                       const EnumerationOptions &options = {}) {
  const Int k = n - index - 1;
  if (k < 1 || index < 1)
    throw Error(ErrorCode::InvalidQuery, "survey needs index >= 1 and k = n - i - 1 >= 1");
  SurveyExpectation expectation = survey_expectation(n, index);
  VerificationResult r{CaseId::CodimSurvey, {n, n}, IntRange{index, index}, cap, {},
                       Verdict::Verified, {}, {}};
  SliceOutcome s = detail::run_slice(n, index, k, cap, expectation.named, options);

  std::vector<Candidate> missing;
  std::set_difference(s.expected.begin(), s.expected.end(), s.actual.survivors.begin(),
                      s.actual.survivors.end(), std::back_inserter(missing));
  s.matches = missing.empty();

  SurveyCount count{s.actual.survivors.size(), expectation.count, false};
  count.discrepancy = count.expected && *count.expected != count.survivors;
  r.survey = count;

  if (!missing.empty()) {
    if (s.actual.cap_touched) {
      r.verdict = Verdict::InconclusiveCapTouched;
    } else {
      r.verdict = Verdict::Refuted;
      r.counterexample = missing.front();
    }
  }
  r.slices.push_back(std::move(s));
  return r;
}

} // namespace wci
