#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "wci/enumerator.hpp"

namespace wci {
namespace {

std::vector<Int> ones(std::size_t count) { return std::vector<Int>(count, 1); }

EnumerationQuery query(Int n, Int index, Int k, Int cap, Profile p = Profile::smooth_fano()) {
  return EnumerationQuery{n, index, k, cap, p};
}

TEST(Enumerate, PrefixInfeasible) {
  EnumerationResult r = enumerate(query(2, 1, 3, 10));
  EXPECT_TRUE(r.survivors.empty());
  EXPECT_TRUE(r.complete_within_cap);
  EXPECT_FALSE(r.cap_touched);
  EXPECT_TRUE(r.stats.prefix_infeasible);
}

TEST(Enumerate, QuadricsOnly) {
  EnumerationResult r = enumerate(query(2, 1, 2, 10));
  EXPECT_EQ(r.survivors, (std::vector<Candidate>{Candidate(ones(5), {2, 2})}));
  EXPECT_FALSE(r.cap_touched);
}

TEST(Enumerate, IndexNMinusOneHypersurfaces) {
  EnumerationResult r = enumerate(query(3, 2, 1, 50));
  std::vector<Candidate> expected = {Candidate(ones(5), {3}), Candidate({1, 1, 1, 1, 2}, {4}),
                                     Candidate({1, 1, 1, 2, 3}, {6})};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(r.survivors, expected);
  EXPECT_FALSE(r.cap_touched);
}

TEST(Enumerate, SurveyFamilyPresent) {
  std::vector<Int> w = ones(10);
  w.push_back(3);
  EnumerationResult r = enumerate(query(6, 1, 4, 20), {2, true});
  EXPECT_TRUE(std::ranges::binary_search(r.survivors, Candidate(w, {2, 2, 2, 6})));
  EXPECT_TRUE(r.cap_touched);
}

TEST(Enumerate, StreamingMatchesEnumerate) {
  for (const auto &q : {query(2, 1, 3, 10), query(2, 1, 2, 10), query(3, 2, 1, 50),
                        query(4, 1, 2, 12)}) {
    std::vector<Candidate> streamed;
    EnumerationResult r = enumerate_streaming(
        q, [&](const Candidate &c) { streamed.push_back(c); }, {3, true});
    EXPECT_EQ(streamed, r.survivors);
    EnumerationResult plain = enumerate(q);
    EXPECT_EQ(plain.survivors, r.survivors);
    EXPECT_EQ(plain.cap_touched, r.cap_touched);
    EXPECT_EQ(plain.stats, r.stats);
  }
}

TEST(Enumerate, SoundSortedAndIndexExact) {
  for (Int n = 1; n <= 4; ++n)
    for (Int i = 0; i <= n + 1; ++i)
      for (Int k = 0; k <= n + 1; ++k) {
        EnumerationResult r = enumerate(query(n, i, k, 10));
        EXPECT_TRUE(std::is_sorted(r.survivors.begin(), r.survivors.end()));
        EXPECT_EQ(std::adjacent_find(r.survivors.begin(), r.survivors.end()), r.survivors.end());
        for (const Candidate &c : r.survivors) {
          EXPECT_TRUE(run_all(c, r.query.profile).survives()) << c;
          EXPECT_EQ(fano_index(c).value, i);
          EXPECT_EQ(c.dim(), n);
          EXPECT_EQ(c.codim(), k);
          for (Int w : c.weights())
            EXPECT_LE(w, 10);
        }
      }
}

// With prefix length k + i, the index identity reads
// sum(d_j - a_{n+j}) = k + sum(middle weights).
TEST(Enumerate, ExcessSumIdentity) {
  for (const auto &q : {query(4, 1, 2, 12), query(5, 1, 3, 12), query(5, 2, 2, 12)}) {
    EnumerationResult r = enumerate(q);
    ASSERT_FALSE(r.survivors.empty());
    const std::size_t prefix = static_cast<std::size_t>(q.k + q.index);
    const std::size_t n = static_cast<std::size_t>(q.n);
    for (const Candidate &c : r.survivors) {
      const auto a = c.weights();
      const auto d = c.degrees();
      Int excess = 0;
      for (std::size_t j = 0; j < d.size(); ++j) {
        EXPECT_GE(d[j] - a[n + 1 + j], 1);
        excess += d[j] - a[n + 1 + j];
      }
      const Int middle = std::accumulate(a.begin() + prefix, a.begin() + n + 1, Int{0});
      EXPECT_EQ(excess, q.k + middle) << c;
      for (std::size_t p = 0; p < prefix; ++p)
        EXPECT_EQ(a[p], 1);
    }
  }
}

TEST(Enumerate, CapMonotonicity) {
  for (const auto &[n, i, k] : {std::tuple{4, 1, 2}, {3, 1, 1}, {5, 1, 3}, {4, 2, 1}}) {
    std::vector<Candidate> previous;
    for (Int cap = 1; cap <= 14; cap += 3) {
      std::vector<Candidate> now = enumerate(query(n, i, k, cap)).survivors;
      EXPECT_TRUE(std::ranges::includes(now, previous)) << n << i << k << " cap " << cap;
      previous = std::move(now);
    }
  }
}

TEST(Enumerate, DeterministicAcrossWorkers) {
  for (const auto &q : {query(5, 1, 3, 16), query(4, 1, 1, 20), query(3, 0, 2, 8, Profile::none())}) {
    EnumerationResult one = enumerate(q, {1, true});
    for (unsigned workers : {2u, 4u, 7u}) {
      EnumerationResult many = enumerate(q, {workers, true});
      EXPECT_EQ(many.survivors, one.survivors);
      EXPECT_EQ(many.cap_touched, one.cap_touched);
      EXPECT_EQ(many.stats, one.stats);
    }
  }
}

// The single-middle-weight closure must not lose survivors: switching it
// off and searching a far larger cap finds the same set.
TEST(Enumerate, ClosureLosesNothing) {
  for (const auto &[n, i, k] : {std::tuple{3, 2, 1}, {4, 3, 1}, {4, 2, 2}, {5, 2, 3}, {5, 3, 2}}) {
    EnumerationQuery q = query(n, i, k, 40);
    ASSERT_TRUE(middle_weight_closure(q)) << n << i << k;
    EnumerationResult closed = enumerate(q);
    EXPECT_FALSE(closed.cap_touched);
    EnumerationResult open = enumerate(q, {1, false});
    EXPECT_EQ(open.survivors, closed.survivors);
  }
}

TEST(Enumerate, MatchesNaiveForSmallParameters) {
  for (Int n = 1; n <= 2; ++n)
    for (Int i = 0; i <= n + 1; ++i)
      for (Int k = 0; k <= n + 1; ++k)
        for (const Profile &p : {Profile::smooth_fano(), Profile::calabi_yau(), Profile::none()}) {
          if (p == Profile::calabi_yau() && i != 0)
            continue;
          const Int cap = 5;
          EXPECT_EQ(enumerate(query(n, i, k, cap, p)).survivors,
                    oracle::naive_enumerate(n, i, k, cap, p))
              << n << " " << i << " " << k;
        }
}

TEST(Enumerate, CodimZero) {
  EnumerationResult r = enumerate(query(3, 4, 0, 10));
  EXPECT_EQ(r.survivors, (std::vector<Candidate>{Candidate(ones(4), {})}));
  EXPECT_TRUE(enumerate(query(3, 2, 0, 10)).survivors.empty());
  // Without filters every weight list with the right sum appears.
  EnumerationResult all = enumerate(query(1, 5, 0, 10, Profile::none()));
  EXPECT_EQ(all.survivors, (std::vector<Candidate>{Candidate({1, 4}, {}), Candidate({2, 3}, {})}));
}

TEST(Enumerate, Errors) {
  auto code_of = [](EnumerationQuery q) {
    try {
      enumerate(q);
    } catch (const Error &e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  EXPECT_EQ(code_of(query(2, 1, 1, 0)), ErrorCode::CapTooSmall);
  EXPECT_EQ(code_of(query(0, 1, 1, 5)), ErrorCode::InvalidQuery);
  EXPECT_EQ(code_of(query(2, -1, 1, 5)), ErrorCode::InvalidQuery);
  EXPECT_EQ(code_of(query(2, 1, -1, 5)), ErrorCode::InvalidQuery);
}

TEST(Enumerate, DefaultCap) { EXPECT_EQ(default_max_weight(6, 4, 1), 44); }

} // namespace
} // namespace wci
