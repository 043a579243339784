// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <algorithm>
#include <sstream>
#include <string>
#include <thread>

#include "oracles.hpp"
#include "wci/wci.hpp"

namespace {

using namespace wci;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << "s";
  return os.str();
}

Outcome case_i_empty() {
  const auto start = Clock::now();
  VerificationResult r = verify_case_i({2, 6}, std::nullopt, {});
  const double t = seconds_since(start);
  bool ok = r.verdict == Verdict::Verified;
  for (const auto &s : r.slices)
    ok = ok && s.actual.survivors.empty() && !s.actual.cap_touched;
  ok = ok && r.slices.size() == 35 && t < 10;
  return {ok, std::to_string(r.slices.size()) + " slices empty, no cap dependence, " +
                  fmt_seconds(t)};
}

Outcome exact_case(const char *name, const std::function<VerificationResult()> &run) {
  const auto start = Clock::now();
  VerificationResult r = run();
  const double t = seconds_since(start);
  bool ok = r.verdict == Verdict::Verified && !r.slices.empty();
  for (const auto &s : r.slices)
    ok = ok && s.matches && !s.actual.cap_touched && s.actual.survivors.size() == 1;
  ok = ok && t < 10;
  std::string detail = std::to_string(r.slices.size()) + " slices match " + name + ", " +
                       fmt_seconds(t);
  if (r.counterexample) {
    std::ostringstream os;
    os << "; counterexample " << *r.counterexample;
    detail += os.str();
  }
  return {ok, detail};
}

Outcome hypersurfaces() {
  const auto start = Clock::now();
  VerificationResult r = verify_hypersurface_remark({3, 6}, CapPolicy{50});
  const double t = seconds_since(start);
  bool ok = r.verdict == Verdict::Verified && r.slices.size() == 4;
  for (const auto &s : r.slices)
    ok = ok && s.matches && s.actual.survivors.size() == 3;
  ok = ok && t < 5;
  return {ok, "n = 3..6, three families each at cap 50, " + fmt_seconds(t)};
}

Outcome survey() {
  const auto start = Clock::now();
  EnumerationOptions options;
  options.workers = std::max(1u, std::thread::hardware_concurrency());
  VerificationResult six = survey_codim(6, 1, CapPolicy{20}, options);
  VerificationResult five = survey_codim(5, 1, CapPolicy{20}, options);
  const double t = seconds_since(start);
  const bool ok = six.verdict == Verdict::Verified && t < 60;
  std::ostringstream os;
  os << "(1^10,3)[2,2,2,6] found at (6,1,4) cap 20; counts (5,1,3) = " << five.survey->survivors
     << ", (6,1,4) = " << six.survey->survivors << " vs published 5";
  if (five.survey->discrepancy || six.survey->discrepancy)
    os << " [DISCREPANCY flagged: filters are necessary conditions only]";
  os << ", " << fmt_seconds(t);
  return {ok, os.str()};
}

// Mostly-unit weights from {1, 2, 3, 6} and degrees that are usually
// multiples of their lcm, so a good share of inputs pass the cover condition.
Candidate covered_candidate(oracle::CandidateGen &gen) {
  static constexpr Int pool[] = {1, 1, 1, 1, 2, 3, 6};
  const Int ambient = gen.uniform(1, 8);
  std::vector<Int> w;
  Int l = 1;
  for (Int i = 0; i <= ambient; ++i) {
    w.push_back(pool[gen.uniform(0, Int(std::size(pool)) - 1)]);
    l = std::lcm(l, w.back());
  }
  std::vector<Int> d;
  for (Int j = gen.uniform(1, ambient); j > 0; --j)
    d.push_back(gen.coin(0.8) ? l * gen.uniform(1, 30 / l) : gen.entry(30));
  return Candidate(std::move(w), std::move(d));
}

Outcome gcd_cover_oracle() {
  oracle::CandidateGen gen(20240601);
  std::size_t checked = 0, failures = 0, mismatches = 0;
  for (; checked < 20000; ++checked) {
    Candidate c = checked % 2 ? gen.candidate(8, 30) : covered_candidate(gen);
    const bool fast = gcd_cover_ok(c).passed;
    failures += !fast;
    mismatches += fast != gcd_cover_bruteforce(c).passed;
  }
  return {mismatches == 0, std::to_string(checked) + " candidates, " + std::to_string(failures) +
                               " rejections, " + std::to_string(mismatches) + " mismatches"};
}

Outcome naive_equivalence() {
  const auto start = Clock::now();
  constexpr Int max_cap = 8;
  std::size_t queries = 0, mismatches = 0, survivors = 0;
  std::ostringstream first;
  for (Int n = 1; n <= 3; ++n)
    for (Int i = 0; i <= n + 1; ++i)
      for (Int k = 0; k <= n + 1; ++k)
        for (const Profile &p : {Profile::smooth_fano(), Profile::calabi_yau()}) {
          if (p.contains(FilterId::CalabiYau) && i != 0)
            continue;
          const std::vector<Candidate> full = oracle::naive_enumerate(n, i, k, max_cap, p);
          for (Int cap = 1; cap <= max_cap; ++cap) {
            std::vector<Candidate> naive;
            for (const Candidate &c : full)
              if (c.weights().back() <= cap)
                naive.push_back(c);
            const auto pruned = enumerate(EnumerationQuery{n, i, k, cap, p}).survivors;
            ++queries;
            survivors += naive.size();
            if (pruned != naive) {
              if (mismatches++ == 0)
                first << "; first mismatch at (n=" << n << ", i=" << i << ", k=" << k
                      << ", cap=" << cap << ")";
            }
          }
        }
  return {mismatches == 0, std::to_string(queries) + " queries, " + std::to_string(survivors) +
                               " survivors, " + std::to_string(mismatches) + " mismatches, " +
                               fmt_seconds(seconds_since(start)) + first.str()};
}

Candidate divisible_input(oracle::CandidateGen &gen) {
  for (;;) {
    const Int size = gen.uniform(2, 5);
    std::vector<Int> w;
    Int g = 0, prod = 1;
    for (Int i = 0; i < size; ++i) {
      w.push_back(gen.entry(12));
      g = std::gcd(g, w.back());
      prod *= w.back();
    }
    if (g != 1)
      continue;
    std::vector<Int> d;
    for (Int j = gen.uniform(0, size - 1); j > 0; --j)
      d.push_back(gen.uniform(1, 3) * prod);
    return Candidate(std::move(w), std::move(d));
  }
}

Outcome transform_invariants() {
  oracle::CandidateGen gen(77);
  std::size_t uncon = 0, section = 0, wellform = 0, violations = 0;
  while (uncon < 2000) {
    Candidate c = gen.candidate(8, 10);
    try {
      TransformTrace t = unconize(c);
      ++uncon;
      violations += t.after.dim() != c.dim() || fano_index(t.after) != fano_index(c);
    } catch (const Error &) {
    }
  }
  while (section < 2000) {
    Candidate c = normalize(gen.candidate(8, 6));
    if (c.weights().front() != 1 || fano_index(c).value < 1 || c.dim() < 1)
      continue;
    ++section;
    TransformTrace t = hyperplane_section(c);
    violations += t.after.dim() != c.dim() - 1 ||
                  fano_index(t.after).value != fano_index(c).value - 1 ||
                  !std::ranges::equal(t.after.degrees(), c.degrees());
  }
  while (wellform < 2000) {
    Candidate c = divisible_input(gen);
    ++wellform;
    TransformTrace t = wellformize(c);
    violations += !ambient_well_formed(t.after).passed || t.after.dim() != c.dim();
  }
  return {violations == 0, "unconize " + std::to_string(uncon) + ", section " +
                               std::to_string(section) + ", wellformize " +
                               std::to_string(wellform) + " inputs, " +
                               std::to_string(violations) + " violations"};
}

std::string capture(const std::string &command, int &status) {
  std::string out;
  FILE *pipe = popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  char buffer[4096];
  while (std::size_t got = std::fread(buffer, 1, sizeof buffer, pipe))
    out.append(buffer, got);
  status = pclose(pipe);
  return out;
}

Outcome cli_determinism() {
  const std::string base = std::string(WCI_CLI_PATH) +
                           " enumerate --dim 6 --index 1 --codim 4 --max-weight 20 --workers ";
  std::string reference;
  int runs = 0;
  bool ok = true;
  for (const char *workers : {"1", "4"})
    for (int rep = 0; rep < 3; ++rep) {
      int status = 0;
      std::string out = capture(base + workers, status);
      ok = ok && status == 0 && !out.empty();
      if (runs++ == 0)
        reference = out;
      ok = ok && out == reference;
    }
  std::size_t lines = std::count(reference.begin(), reference.end(), '\n');
  return {ok, std::to_string(runs) + " runs (workers 1 and 4) byte-identical, " +
                  std::to_string(lines) + " lines, " + std::to_string(reference.size()) +
                  " bytes"};
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 codimension bound k <= n - i + 1", case_i_empty},
      {"AC2 k = n - i + 1 gives quadrics only",
       [] {
         return exact_case("quadrics", [] { return verify_case_ii({2, 6}, {}); });
       }},
      {"AC3 k = n - i >= 2 gives quadrics and a cubic",
       [] {
         return exact_case("quadrics and a cubic", [] { return verify_case_iii({3, 6}, {}); });
       }},
      {"AC4 index n - 1 hypersurfaces", hypersurfaces},
      {"AC5 codimension n - i - 1 survey", survey},
      {"AC6 gcd cover agrees with subset oracle", gcd_cover_oracle},
      {"AC7 pruned enumeration equals naive grid", naive_equivalence},
      {"AC8 transform invariants", transform_invariants},
      {"AC9 CLI enumeration is deterministic", cli_determinism},
  };
  int failed = 0;
  for (const auto &[name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.passed;
    std::cout << (o.passed ? "PASS " : "FAIL ") << name << " : " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
