#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "wci/core.hpp"
#include "wci/filters.hpp"

namespace wci {

struct EnumerationQuery {
  Int n = 1;     // dimension
  Int index = 1; // Fano index, fixed for the whole search
  Int k = 0;     // codimension
  Int max_weight = 1;
  Profile profile = Profile::smooth_fano();
};

/// Heuristic default cap: 4 (n + k + index).
inline Int default_max_weight(Int n, Int k, Int index) { return 4 * (n + k + index); }

struct EnumerationStats {
  std::uint64_t nodes_explored = 0;
  std::uint64_t candidates_tested = 0;
  bool prefix_infeasible = false;         // unit prefix longer than the weight list
  std::optional<Int> analytic_weight_bound; // proven bound on every weight, if any

  friend bool operator==(const EnumerationStats &, const EnumerationStats &) = default;
};

struct EnumerationResult {
  EnumerationQuery query;
  std::vector<Candidate> survivors;
  bool complete_within_cap = true;
  // Some branch was cut at max_weight. When false the survivor list is
  // exhaustive over all weights.
  bool cap_touched = false;
  EnumerationStats stats;
};

struct EnumerationOptions {
  unsigned workers = 1;
  // Use the proven weight bound for one free middle weight (see
  // middle_weight_closure). Disabled only to test that bound.
  bool analytic_closure = true;
};

using CandidateSink = std::function<void(const Candidate &)>;

inline void validate(const EnumerationQuery &q) {
  if (q.max_weight < 1)
    throw Error(ErrorCode::CapTooSmall, "max_weight must be at least 1");
  if (q.n < 1)
    throw Error(ErrorCode::InvalidQuery, "dimension must be at least 1");
  if (q.index < 0)
    throw Error(ErrorCode::InvalidQuery, "index must be non-negative");
  if (q.k < 0)
    throw Error(ErrorCode::InvalidQuery, "codimension must be non-negative");
  if (q.n + q.k + q.index > 10000)
    throw Error(ErrorCode::InvalidQuery, "query parameters out of range");
}

/// Bound on the single middle weight m when the unit prefix leaves exactly
/// one free weight below the k tail weights.
///
/// With a_0..a_{k+i-1} = 1, one middle weight m and tails t_1..t_k, the
/// index identity gives sum(e_j) = k + m for the excesses e_j = d_j - t_j.
/// The last-weight bound e_k >= t_k together with e_j >= 1 forces
/// t_k <= m + 1. If m >= 2:
///   - t_k = m puts k + 1 weights in the class of m, with only k degrees;
///   - t_k = m + 1 forces e_k = m + 1 and e_j = 1 otherwise, so a tail
///     equal to m gives a degree m + 1 = t_k (a linear cone). All tails are
///     then m + 1 and only d_k is divisible by m + 1, so k = 1, and then
///     m | d_1 = 2m + 2 forces m = 2.
/// Hence m <= 2 when k = 1 and m <= 1 when k >= 2.
inline std::optional<Int> middle_weight_closure(const EnumerationQuery &q) {
  const Profile needed{FilterId::UnitPrefix, FilterId::Deltas, FilterId::LastWeight,
                       FilterId::LinearCone, FilterId::GcdCover};
  if (!q.profile.contains_all(needed) || q.k < 1)
    return std::nullopt;
  if (q.n - q.k - q.index + 1 != 1)
    return std::nullopt;
  return q.k == 1 ? 2 : 1;
}

namespace detail {

inline constexpr Int unbounded = std::numeric_limits<Int>::max();

struct PartitionOutput {
  std::vector<Candidate> survivors;
  std::uint64_t nodes = 0;
  std::uint64_t tested = 0;
  bool cap_touched = false;
};

// Records whether the range [lo, natural_hi] reaches past the cap.
inline Int clip(Int lo, Int natural_hi, Int cap, bool &touched) {
  if (natural_hi > cap && std::max(lo, cap + 1) <= natural_hi)
    touched = true;
  return std::min(natural_hi, cap);
}

/// Search over normalized tuples (1^{k+i}, m_1..m_M, t_1..t_k; d_1..d_k)
/// with d_j = t_j + e_j, e_j >= 1 and sum(e) = k + sum(m). Covers exactly
/// the tuples passing UnitPrefix and Deltas with the queried index; the
/// remaining filters run per candidate.
class StructuredSearch {
public:
  StructuredSearch(const EnumerationQuery &q, std::optional<Int> middle_bound)
      : q_(q), prefix_(q.k + q.index), middles_(q.n - q.k - q.index + 1),
        middle_bound_(middle_bound),
        prune_last_weight_(q.profile.contains(FilterId::LastWeight)),
        prune_linear_cone_(q.profile.contains(FilterId::LinearCone)) {}

  Int free_count() const { return middles_ + q_.k; }

  // Range of the first free weight; partitions are its values.
  Int first_upper(bool &touched) const {
    return clip(1, natural_upper(0, 0), q_.max_weight, touched);
  }

  PartitionOutput run(Int first_value) const {
    PartitionOutput out;
    std::vector<Int> weights(static_cast<std::size_t>(prefix_ + free_count()), 1);
    State st{weights, {}, 0};
    st.degrees.resize(static_cast<std::size_t>(q_.k));
    place(st, 0, first_value, out);
    return out;
  }

private:
  struct State {
    std::vector<Int> &weights;
    std::vector<Int> degrees;
    Int middle_sum;
  };

  Int natural_upper(Int free_pos, Int middle_sum) const {
    if (free_pos < middles_)
      return middle_bound_ ? *middle_bound_ : unbounded;
    // Tails: t_k <= e_k <= sum(e) - (k - 1) = middle_sum + 1.
    return prune_last_weight_ ? middle_sum + 1 : unbounded;
  }

  void place(State &st, Int free_pos, Int value, PartitionOutput &out) const {
    ++out.nodes;
    st.weights[static_cast<std::size_t>(prefix_ + free_pos)] = value;
    const Int middle_sum = st.middle_sum + (free_pos < middles_ ? value : 0);
    if (free_pos + 1 == free_count()) {
      const Int saved = st.middle_sum;
      st.middle_sum = middle_sum;
      assign_excess(st, 0, q_.k + middle_sum, out);
      st.middle_sum = saved;
      return;
    }
    const Int next = free_pos + 1;
    const Int hi = clip(value, natural_upper(next, middle_sum), q_.max_weight, out.cap_touched);
    const Int saved = st.middle_sum;
    st.middle_sum = middle_sum;
    for (Int v = value; v <= hi; ++v)
      place(st, next, v, out);
    st.middle_sum = saved;
  }

  bool is_weight(Int value, const std::vector<Int> &weights) const {
    return std::binary_search(weights.begin(), weights.end(), value);
  }

  void assign_excess(State &st, Int j, Int remaining, PartitionOutput &out) const {
    const Int k = q_.k;
    const auto tail = [&](Int jj) {
      return st.weights[static_cast<std::size_t>(prefix_ + middles_ + jj)];
    };
    const Int prev_degree = j > 0 ? st.degrees[static_cast<std::size_t>(j - 1)] : 0;
    const Int t = tail(j);
    if (j + 1 == k) {
      const Int e = remaining;
      const Int d = t + e;
      ++out.nodes;
      if (e < 1 || d < prev_degree)
        return;
      if (prune_last_weight_ && e < t)
        return;
      if (prune_linear_cone_ && is_weight(d, st.weights))
        return;
      st.degrees[static_cast<std::size_t>(j)] = d;
      test(st, out);
      return;
    }
    // Later excesses need at least 1 each, and e_k >= t_k when pruned.
    Int reserve = (k - j - 1);
    if (prune_last_weight_)
      reserve += tail(k - 1) - 1;
    const Int lo = std::max<Int>(1, prev_degree - t);
    for (Int e = lo; e <= remaining - reserve; ++e) {
      ++out.nodes;
      const Int d = t + e;
      if (prune_linear_cone_ && is_weight(d, st.weights))
        continue;
      st.degrees[static_cast<std::size_t>(j)] = d;
      assign_excess(st, j + 1, remaining - e, out);
    }
  }

  void test(State &st, PartitionOutput &out) const {
    ++out.tested;
    Candidate c(st.weights, st.degrees);
    if (survives(c, q_.profile))
      out.survivors.push_back(std::move(c));
  }

  const EnumerationQuery &q_;
  Int prefix_;
  Int middles_;
  std::optional<Int> middle_bound_;
  bool prune_last_weight_;
  bool prune_linear_cone_;
};

/// Search over all normalized weight tuples in [1, cap] and all degree
/// partitions of sum(a) - index. Used when the profile does not fix the
/// unit prefix and the degree pairing.
class GeneralSearch {
public:
  explicit GeneralSearch(const EnumerationQuery &q)
      : q_(q), size_(q.n + q.k + 1) {}

  Int first_upper(bool &touched) const {
    return clip(1, natural_upper(0, 0, 1), q_.max_weight, touched);
  }

  PartitionOutput run(Int first_value) const {
    PartitionOutput out;
    std::vector<Int> weights(static_cast<std::size_t>(size_), 0);
    place(weights, 0, first_value, 0, out);
    return out;
  }

private:
  // With no degrees the weights must sum to the index exactly.
  Int natural_upper(Int pos, Int sum, Int lo) const {
    if (q_.k > 0)
      return unbounded;
    const Int left = q_.index - sum;
    const Int slots = size_ - pos;
    return left / slots >= lo ? left / slots : lo - 1;
  }

  void place(std::vector<Int> &weights, Int pos, Int value, Int sum, PartitionOutput &out) const {
    ++out.nodes;
    weights[static_cast<std::size_t>(pos)] = value;
    sum += value;
    if (pos + 1 == size_) {
      const Int degree_sum = sum - q_.index;
      std::vector<Int> degrees(static_cast<std::size_t>(q_.k));
      partition(weights, degrees, 0, degree_sum, 1, out);
      return;
    }
    const Int hi = clip(value, natural_upper(pos + 1, sum, value), q_.max_weight, out.cap_touched);
    for (Int v = value; v <= hi; ++v)
      place(weights, pos + 1, v, sum, out);
  }

  void partition(const std::vector<Int> &weights, std::vector<Int> &degrees, Int j, Int left,
                 Int lo, PartitionOutput &out) const {
    const Int k = q_.k;
    if (j == k) {
      if (left != 0)
        return;
      ++out.tested;
      Candidate c(weights, degrees);
      if (survives(c, q_.profile))
        out.survivors.push_back(std::move(c));
      return;
    }
    if (j + 1 == k) {
      if (left >= lo) {
        ++out.nodes;
        degrees[static_cast<std::size_t>(j)] = left;
        partition(weights, degrees, j + 1, 0, left, out);
      }
      return;
    }
    for (Int d = lo; d * (k - j) <= left; ++d) {
      ++out.nodes;
      degrees[static_cast<std::size_t>(j)] = d;
      partition(weights, degrees, j + 1, left - d, d, out);
    }
  }

  const EnumerationQuery &q_;
  Int size_;
};

template <class Search>
void run_partitions(const Search &search, Int partitions, unsigned workers,
                    EnumerationResult &result, const CandidateSink &sink) {
  auto emit = [&](PartitionOutput &&part) {
    result.stats.nodes_explored += part.nodes;
    result.stats.candidates_tested += part.tested;
    result.cap_touched = result.cap_touched || part.cap_touched;
    std::sort(part.survivors.begin(), part.survivors.end());
    part.survivors.erase(std::unique(part.survivors.begin(), part.survivors.end()),
                         part.survivors.end());
    for (auto &c : part.survivors) {
      if (sink)
        sink(c);
      result.survivors.push_back(std::move(c));
    }
  };

  if (partitions <= 0)
    return;
  if (workers <= 1 || partitions == 1) {
    for (Int p = 1; p <= partitions; ++p)
      emit(search.run(p));
    return;
  }

  // Workers fill slots in any order; this thread emits them in key order.
  std::vector<std::optional<PartitionOutput>> slots(static_cast<std::size_t>(partitions));
  std::exception_ptr failure;
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<Int> next{1};
  std::atomic<bool> stop{false};

  auto work = [&] {
    for (;;) {
      const Int p = next.fetch_add(1);
      if (p > partitions || stop.load())
        return;
      try {
        PartitionOutput out = search.run(p);
        std::lock_guard lock(mutex);
        slots[static_cast<std::size_t>(p - 1)] = std::move(out);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure)
          failure = std::current_exception();
        stop = true;
      }
      ready.notify_all();
    }
  };

  const unsigned count = static_cast<unsigned>(std::min<Int>(workers, partitions));
  std::vector<std::jthread> pool;
  pool.reserve(count);
  for (unsigned t = 0; t < count; ++t)
    pool.emplace_back(work);

  for (Int p = 1; p <= partitions; ++p) {
    std::optional<PartitionOutput> part;
    {
      std::unique_lock lock(mutex);
      ready.wait(lock, [&] { return slots[static_cast<std::size_t>(p - 1)].has_value() || failure; });
      if (failure)
        break;
      part = std::move(slots[static_cast<std::size_t>(p - 1)]);
    }
    try {
      emit(std::move(*part));
    } catch (...) {
      stop = true;
      pool.clear();
      throw;
    }
  }
  pool.clear();
  if (failure)
    std::rethrow_exception(failure);
}

} // namespace detail

/// Streams survivors to `sink` in canonical order as soon as every smaller
/// partition is finished. The returned result matches enumerate().
inline EnumerationResult enumerate_streaming(const EnumerationQuery &q, const CandidateSink &sink,
                                             const EnumerationOptions &options = {}) {
  validate(q);
  EnumerationResult result{q, {}, true, false, {}};

  const bool structured =
      q.profile.contains(FilterId::UnitPrefix) && q.profile.contains(FilterId::Deltas);
  if (structured) {
    const Int middles = q.n - q.k - q.index + 1;
    if (middles < 0) {
      // a_{k+i-1} = 1 would point past a_N.
      result.stats.prefix_infeasible = true;
      result.stats.analytic_weight_bound = 0;
      return result;
    }
    if (q.k == 0 && middles > 0) {
      // Without degrees the excess identity forces every middle weight to 0.
      result.stats.analytic_weight_bound = 0;
      return result;
    }
    if (q.k == 0) {
      result.stats.analytic_weight_bound = 1;
      result.stats.nodes_explored = 1;
      result.stats.candidates_tested = 1;
      Candidate c(std::vector<Int>(static_cast<std::size_t>(q.n + 1), 1), {});
      if (survives(c, q.profile)) {
        if (sink)
          sink(c);
        result.survivors.push_back(std::move(c));
      }
      return result;
    }
    std::optional<Int> closure =
        options.analytic_closure ? middle_weight_closure(q) : std::nullopt;
    if (middles == 0 && q.profile.contains(FilterId::LastWeight))
      result.stats.analytic_weight_bound = 1;
    else if (closure)
      result.stats.analytic_weight_bound = *closure + 1;
    detail::StructuredSearch search(q, closure);
    const Int partitions = search.first_upper(result.cap_touched);
    detail::run_partitions(search, partitions, options.workers, result, sink);
  } else {
    detail::GeneralSearch search(q);
    const Int partitions = search.first_upper(result.cap_touched);
    detail::run_partitions(search, partitions, options.workers, result, sink);
  }
  return result;
}

inline EnumerationResult enumerate(const EnumerationQuery &q, const EnumerationOptions &options = {}) {
  return enumerate_streaming(q, nullptr, options);
}

} // namespace wci
