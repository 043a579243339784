#pragma once

#include <charconv>
#include <cstddef>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "wci/core.hpp"
#include "wci/filters.hpp"
#include "wci/transforms.hpp"
#include "wci/verify.hpp"

namespace wci {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- parsing

inline Int parse_int(std::string_view text) {
  Int value = 0;
  const char *first = text.data();
  const char *last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last)
    throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(text) + "'");
  return value;
}

/// "1,2,3" -> {1, 2, 3}. The empty string is the empty list.
inline std::vector<Int> parse_int_list(std::string_view text) {
  std::vector<Int> out;
  if (text.empty())
    return out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_int(text.substr(start, comma - start)));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return out;
}

/// "A..B" (inclusive) or a single "A".
inline IntRange parse_range(std::string_view text) {
  const std::size_t dots = text.find("..");
  if (dots == std::string_view::npos) {
    Int v = parse_int(text);
    return {v, v};
  }
  IntRange r{parse_int(text.substr(0, dots)), parse_int(text.substr(dots + 2))};
  if (r.lo > r.hi)
    throw Error(ErrorCode::ParseError, "empty range '" + std::string(text) + "'");
  return r;
}

/// "smooth-fano", "calabi-yau", "none", or a comma list of filter ids.
inline Profile parse_profile(std::string_view text) {
  if (text == "smooth-fano")
    return Profile::smooth_fano();
  if (text == "calabi-yau")
    return Profile::calabi_yau();
  if (text == "none" || text.empty())
    return Profile::none();
  Profile p;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const std::string_view name = text.substr(start, comma - start);
    auto id = filter_id_from_string(name);
    if (!id)
      throw Error(ErrorCode::ParseError, "unknown filter '" + std::string(name) + "'");
    p.insert(*id);
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return p;
}

// -------------------------------------------------------------- witnesses

namespace detail {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

} // namespace detail

inline Json witness_to_json(const Witness &w) {
  return std::visit(
      detail::overloaded{
          [](const NormalizedWitness &x) {
            return Json{{"kind", "Normalized"},
                        {"list", x.in_degrees ? "degrees" : "weights"},
                        {"position", x.position}};
          },
          [](const NotNormalizedWitness &) { return Json{{"kind", "NotNormalized"}}; },
          [](const AmbientWitness &x) {
            return Json{{"kind", "AmbientWellFormed"},
                        {"omitted_index", x.omitted_index},
                        {"gcd", x.gcd}};
          },
          [](const IndexWitness &x) { return Json{{"kind", "Index"}, {"index", x.index}}; },
          [](const LinearConeWitness &x) {
            return Json{{"kind", "LinearCone"},
                        {"weight_index", x.weight_index},
                        {"degree_index", x.degree_index}};
          },
          [](const DeltasWitness &x) {
            return Json{{"kind", "Deltas"},
                        {"degree_index", x.degree_index},
                        {"degree", x.degree},
                        {"weight", x.weight}};
          },
          [](const LastWeightWitness &x) {
            return Json{{"kind", "LastWeight"},
                        {"last_degree", x.last_degree},
                        {"last_weight", x.last_weight}};
          },
          [](const GcdCoverWitness &x) {
            return Json{{"kind", "GcdCover"},
                        {"class_gcd", x.class_gcd},
                        {"required", x.required},
                        {"available", x.available}};
          },
          [](const UnitPrefixWitness &x) {
            return Json{{"kind", "UnitPrefix"}, {"position", x.position}, {"weight", x.weight}};
          },
          [](const InfeasiblePrefixWitness &x) {
            return Json{{"kind", "InfeasiblePrefix"},
                        {"required_position", x.required_position},
                        {"ambient_dim", x.ambient_dim}};
          },
      },
      w);
}

inline Witness witness_from_json(const Json &j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "Normalized")
    return NormalizedWitness{j.at("list").get<std::string>() == "degrees",
                             j.at("position").get<std::size_t>()};
  if (kind == "NotNormalized")
    return NotNormalizedWitness{};
  if (kind == "AmbientWellFormed")
    return AmbientWitness{j.at("omitted_index").get<std::size_t>(), j.at("gcd").get<Int>()};
  if (kind == "Index")
    return IndexWitness{j.at("index").get<Int>()};
  if (kind == "LinearCone")
    return LinearConeWitness{j.at("weight_index").get<std::size_t>(),
                             j.at("degree_index").get<std::size_t>()};
  if (kind == "Deltas")
    return DeltasWitness{j.at("degree_index").get<std::size_t>(), j.at("degree").get<Int>(),
                         j.at("weight").get<Int>()};
  if (kind == "LastWeight")
    return LastWeightWitness{j.at("last_degree").get<Int>(), j.at("last_weight").get<Int>()};
  if (kind == "GcdCover")
    return GcdCoverWitness{j.at("class_gcd").get<Int>(), j.at("required").get<std::size_t>(),
                           j.at("available").get<std::size_t>()};
  if (kind == "UnitPrefix")
    return UnitPrefixWitness{j.at("position").get<std::size_t>(), j.at("weight").get<Int>()};
  if (kind == "InfeasiblePrefix")
    return InfeasiblePrefixWitness{j.at("required_position").get<Int>(),
                                   j.at("ambient_dim").get<Int>()};
  throw Error(ErrorCode::ParseError, "unknown witness kind '" + kind + "'");
}

// ---------------------------------------------------------- output record

/// One line of `check` / `enumerate` output. Verdicts and witnesses are kept
/// in filter evaluation order.
struct OutputRecord {
  std::vector<Int> weights;
  std::vector<Int> degrees;
  Int dim = 0;
  Int codim = 0;
  Int fano_index = 0;
  std::vector<std::pair<FilterId, bool>> verdicts;
  std::vector<std::pair<FilterId, Witness>> witnesses; // failures only

  bool all_passed() const {
    for (const auto &[id, ok] : verdicts)
      if (!ok)
        return false;
    return true;
  }

  friend bool operator==(const OutputRecord &, const OutputRecord &) = default;
};

inline OutputRecord make_record(const FilterReport &report) {
  const Candidate &c = report.candidate;
  OutputRecord r{{c.weights().begin(), c.weights().end()},
                 {c.degrees().begin(), c.degrees().end()},
                 c.dim(),
                 c.codim(),
                 fano_index(c).value,
                 {},
                 {}};
  for (const auto &v : report.verdicts) {
    r.verdicts.emplace_back(v.filter_id, v.passed);
    if (!v.passed)
      r.witnesses.emplace_back(v.filter_id, *v.witness);
  }
  return r;
}

inline Json to_json(const OutputRecord &r) {
  Json verdicts = Json::object();
  for (const auto &[id, ok] : r.verdicts)
    verdicts[std::string(to_string(id))] = ok;
  Json witnesses = Json::object();
  for (const auto &[id, w] : r.witnesses)
    witnesses[std::string(to_string(id))] = witness_to_json(w);
  return Json{{"weights", r.weights},   {"degrees", r.degrees},       {"dim", r.dim},
              {"codim", r.codim},       {"fano_index", r.fano_index}, {"verdicts", verdicts},
              {"witnesses", witnesses}};
}

inline OutputRecord record_from_json(const Json &j) {
  OutputRecord r;
  r.weights = j.at("weights").get<std::vector<Int>>();
  r.degrees = j.at("degrees").get<std::vector<Int>>();
  r.dim = j.at("dim").get<Int>();
  r.codim = j.at("codim").get<Int>();
  r.fano_index = j.at("fano_index").get<Int>();
  auto id_of = [](const std::string &name) {
    auto id = filter_id_from_string(name);
    if (!id)
      throw Error(ErrorCode::ParseError, "unknown filter '" + name + "'");
    return *id;
  };
  for (const auto &[name, ok] : j.at("verdicts").items())
    r.verdicts.emplace_back(id_of(name), ok.get<bool>());
  for (const auto &[name, w] : j.at("witnesses").items())
    r.witnesses.emplace_back(id_of(name), witness_from_json(w));
  return r;
}

inline std::string to_jsonl(const OutputRecord &r) { return to_json(r).dump(); }

inline std::string join(const std::vector<Int> &values, char sep) {
  return format_list(values, sep);
}

inline std::string csv_header() { return "weights,degrees,dim,codim,fano_index,passed,failed"; }

inline std::string to_csv(const OutputRecord &r) {
  std::string failed;
  for (const auto &[id, w] : r.witnesses) {
    if (!failed.empty())
      failed += ' ';
    failed += to_string(id);
  }
  std::ostringstream os;
  os << join(r.weights, ' ') << ',' << join(r.degrees, ' ') << ',' << r.dim << ',' << r.codim
     << ',' << r.fano_index << ',' << (r.all_passed() ? "true" : "false") << ',' << failed;
  return os.str();
}

/// Fixed-width rows for terminal use.
class TableWriter {
public:
  explicit TableWriter(std::ostream &os) : os_(os) {}

  void header() {
    row("weights", "degrees", "n", "k", "i", "status");
    os_ << std::string(84, '-') << '\n';
  }
  void write(const OutputRecord &r) {
    std::string status = r.all_passed() ? "survives" : "fails:";
    for (const auto &[id, w] : r.witnesses)
      status += " " + std::string(to_string(id));
    row(join(r.weights, ' '), join(r.degrees, ' '), std::to_string(r.dim),
        std::to_string(r.codim), std::to_string(r.fano_index), status);
  }

private:
  void row(const std::string &w, const std::string &d, const std::string &n, const std::string &k,
           const std::string &i, const std::string &status) {
    os_ << std::left << std::setw(32) << w << ' ' << std::setw(16) << d << ' ' << std::setw(4)
        << n << ' ' << std::setw(4) << k << ' ' << std::setw(4) << i << ' ' << status << '\n';
  }

  std::ostream &os_;
};

// ------------------------------------------------------------- transforms

inline Json to_json(const Candidate &c) {
  return Json{{"weights", std::vector<Int>(c.weights().begin(), c.weights().end())},
              {"degrees", std::vector<Int>(c.degrees().begin(), c.degrees().end())}};
}

inline Json to_json(const TransformTrace &t) {
  Json steps = Json::array();
  for (const auto &step : t.steps) {
    steps.push_back(std::visit(
        detail::overloaded{
            [](const VeroneseStep &s) {
              return Json{{"factor", s.factor},
                          {"exempt_index", s.exempt_index},
                          {"affected", s.affected}};
            },
            [](const ConeStep &s) {
              return Json{{"weight_index", s.weight_index}, {"degree_index", s.degree_index}};
            },
            [](const SectionStep &s) { return Json{{"weight_index", s.weight_index}}; },
        },
        step));
  }
  return Json{{"kind", std::string(to_string(t.kind))},
              {"before", to_json(t.before)},
              {"after", to_json(t.after)},
              {"steps", steps}};
}

// ---------------------------------------------------------- verification

inline Json summary_json(const EnumerationResult &r) {
  return Json{{"dim", r.query.n},
              {"index", r.query.index},
              {"codim", r.query.k},
              {"max_weight", r.query.max_weight},
              {"survivors", r.survivors.size()},
              {"complete_within_cap", r.complete_within_cap},
              {"cap_touched", r.cap_touched},
              {"prefix_infeasible", r.stats.prefix_infeasible},
              {"nodes_explored", r.stats.nodes_explored},
              {"candidates_tested", r.stats.candidates_tested}};
}

inline Json to_json(const VerificationResult &v) {
  Json slices = Json::array();
  for (const auto &s : v.slices) {
    Json expected = Json::array();
    for (const auto &c : s.expected)
      expected.push_back(to_json(c));
    Json actual = Json::array();
    for (const auto &c : s.actual.survivors)
      actual.push_back(to_json(c));
    slices.push_back(Json{{"dim", s.n},
                          {"index", s.index},
                          {"codim", s.k},
                          {"max_weight", s.actual.query.max_weight},
                          {"expected", expected},
                          {"actual", actual},
                          {"cap_touched", s.actual.cap_touched},
                          {"matches", s.matches}});
  }
  Json out{{"case", std::string(to_string(v.case_id))},
           {"dims", {v.n_range.lo, v.n_range.hi}},
           {"verdict", std::string(to_string(v.verdict))},
           {"slices", slices}};
  if (v.counterexample)
    out["counterexample"] = to_json(*v.counterexample);
  if (v.survey) {
    out["survey"] = Json{{"survivors", v.survey->survivors},
                         {"expected_count", v.survey->expected
                                                ? Json(*v.survey->expected)
                                                : Json(nullptr)},
                         {"discrepancy", v.survey->discrepancy}};
  }
  return out;
}

inline void write_report(std::ostream &os, const VerificationResult &v) {
  os << "case " << to_string(v.case_id) << ", dims " << v.n_range.lo << ".." << v.n_range.hi
     << '\n';
  for (const auto &s : v.slices) {
    os << "  n=" << s.n << " i=" << s.index << " k=" << s.k
       << " max_weight=" << s.actual.query.max_weight << " expected=" << s.expected.size()
       << " actual=" << s.actual.survivors.size()
       << " cap_touched=" << (s.actual.cap_touched ? "true" : "false")
       << (s.matches ? " ok" : " MISMATCH") << '\n';
    for (const auto &c : s.expected)
      os << "    expected " << c << '\n';
    for (const auto &c : s.actual.survivors)
      os << "    actual   " << c << '\n';
  }
  if (v.survey) {
    os << "survivors: " << v.survey->survivors;
    if (v.survey->expected) {
      os << " (published count " << *v.survey->expected << ")";
      if (v.survey->discrepancy)
        os << " DISCREPANCY: the filters are necessary conditions only, so the survivor "
              "list may differ from the published classification";
    }
    os << '\n';
  }
  if (v.counterexample)
    os << "counterexample: " << *v.counterexample << '\n';
  os << "verdict: " << to_string(v.verdict) << '\n';
}

} // namespace wci
