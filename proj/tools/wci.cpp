// wci: check, enumerate, verify and transform weighted complete intersection
// candidates from the command line.
//
// Exit codes: 0 pass/verified, 1 fail/refuted, 2 input error, 3 inconclusive.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "wci/wci.hpp"

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_input = 2;
constexpr int exit_inconclusive = 3;

enum class Format { Jsonl, Csv, Table };

Format parse_format(const std::string &name) {
  if (name == "jsonl")
    return Format::Jsonl;
  if (name == "csv")
    return Format::Csv;
  if (name == "table")
    return Format::Table;
  throw wci::Error(wci::ErrorCode::ParseError, "unknown format '" + name + "'");
}

// WCI_DEFAULT_MAX_WEIGHT replaces the built-in default cap.
std::optional<wci::Int> env_default_cap() {
  const char *value = std::getenv("WCI_DEFAULT_MAX_WEIGHT");
  if (!value || !*value)
    return std::nullopt;
  wci::Int cap = wci::parse_int(value);
  if (cap < 1)
    throw wci::Error(wci::ErrorCode::CapTooSmall, "WCI_DEFAULT_MAX_WEIGHT must be >= 1");
  return cap;
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0)
    return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

struct CheckArgs {
  std::string weights;
  std::string degrees;
  std::string profile = "smooth-fano";
  std::string format = "jsonl";
};

int run_check(const CheckArgs &args) {
  wci::Candidate c(wci::parse_int_list(args.weights), wci::parse_int_list(args.degrees));
  const wci::Profile profile = wci::parse_profile(args.profile);
  const Format format = parse_format(args.format);
  const wci::OutputRecord record = wci::make_record(wci::run_all(c, profile));
  switch (format) {
  case Format::Jsonl: std::cout << wci::to_jsonl(record) << '\n'; break;
  case Format::Csv: std::cout << wci::csv_header() << '\n' << wci::to_csv(record) << '\n'; break;
  case Format::Table: {
    wci::TableWriter table(std::cout);
    table.header();
    table.write(record);
    break;
  }
  }
  return record.all_passed() ? exit_pass : exit_fail;
}

struct EnumerateArgs {
  wci::Int dim = 0;
  wci::Int index = 0;
  wci::Int codim = 0;
  std::optional<wci::Int> max_weight;
  std::string profile = "smooth-fano";
  std::string format = "jsonl";
  unsigned workers = 0;
};

int run_enumerate(const EnumerateArgs &args) {
  const Format format = parse_format(args.format);
  wci::EnumerationQuery q;
  q.n = args.dim;
  q.index = args.index;
  q.k = args.codim;
  q.profile = wci::parse_profile(args.profile);
  if (args.max_weight)
    q.max_weight = *args.max_weight;
  else if (auto cap = env_default_cap())
    q.max_weight = *cap;
  else
    q.max_weight = wci::default_max_weight(q.n, q.k, q.index);
  wci::validate(q);

  wci::TableWriter table(std::cout);
  if (format == Format::Csv)
    std::cout << wci::csv_header() << '\n';
  if (format == Format::Table)
    table.header();

  auto sink = [&](const wci::Candidate &c) {
    const wci::OutputRecord record = wci::make_record(wci::run_all(c, q.profile));
    switch (format) {
    case Format::Jsonl: std::cout << wci::to_jsonl(record) << '\n'; break;
    case Format::Csv: std::cout << wci::to_csv(record) << '\n'; break;
    case Format::Table: table.write(record); break;
    }
  };
  wci::EnumerationOptions options;
  options.workers = resolve_workers(args.workers);
  const wci::EnumerationResult result = wci::enumerate_streaming(q, sink, options);

  const wci::Json summary = wci::summary_json(result);
  switch (format) {
  case Format::Jsonl: std::cout << wci::Json{{"summary", summary}}.dump() << '\n'; break;
  case Format::Csv: std::cout << "# summary " << summary.dump() << '\n'; break;
  case Format::Table:
    std::cout << "survivors: " << result.survivors.size()
              << "  cap_touched: " << (result.cap_touched ? "true" : "false")
              << (result.stats.prefix_infeasible ? "  (infeasible unit prefix)" : "") << '\n';
    break;
  }
  return exit_pass;
}

struct VerifyArgs {
  std::string case_name;
  std::string dims;
  std::optional<std::string> index;
  std::optional<wci::Int> max_weight;
  std::string format = "text";
  unsigned workers = 0;
};

int run_verify(const VerifyArgs &args) {
  if (args.format != "text" && args.format != "json")
    throw wci::Error(wci::ErrorCode::ParseError, "unknown format '" + args.format + "'");
  const wci::IntRange dims = wci::parse_range(args.dims);
  wci::CapPolicy cap;
  if (args.max_weight)
    cap.fixed = *args.max_weight;
  else
    cap.fixed = env_default_cap();
  if (cap.fixed && *cap.fixed < 1)
    throw wci::Error(wci::ErrorCode::CapTooSmall, "max weight must be >= 1");
  wci::EnumerationOptions options;
  options.workers = resolve_workers(args.workers);

  std::optional<wci::IntRange> index;
  if (args.index)
    index = wci::parse_range(*args.index);

  wci::VerificationResult result = [&] {
    if (args.case_name == "i")
      return wci::verify_case_i(dims, index, cap, options);
    if (args.case_name == "ii")
      return wci::verify_case_ii(dims, cap, options);
    if (args.case_name == "iii")
      return wci::verify_case_iii(dims, cap, options);
    if (args.case_name == "hypersurface")
      return wci::verify_hypersurface_remark(dims, cap, options);
    if (args.case_name == "survey") {
      if (dims.lo != dims.hi || (index && index->lo != index->hi))
        throw wci::Error(wci::ErrorCode::InvalidQuery,
                         "survey takes a single --dim and a single --index");
      return wci::survey_codim(dims.lo, index ? index->lo : 1, cap, options);
    }
    throw wci::Error(wci::ErrorCode::InvalidQuery, "unknown case '" + args.case_name + "'");
  }();

  if (args.format == "json")
    std::cout << wci::to_json(result).dump(2) << '\n';
  else
    wci::write_report(std::cout, result);

  switch (result.verdict) {
  case wci::Verdict::Verified: return exit_pass;
  case wci::Verdict::Refuted: return exit_fail;
  case wci::Verdict::InconclusiveCapTouched: return exit_inconclusive;
  }
  return exit_fail;
}

struct TransformArgs {
  std::string kind;
  std::string weights;
  std::string degrees;
};

int run_transform(const TransformArgs &args) {
  wci::Candidate c(wci::parse_int_list(args.weights), wci::parse_int_list(args.degrees));
  if (args.kind != "wellformize" && args.kind != "unconize" && args.kind != "section")
    throw wci::Error(wci::ErrorCode::ParseError, "unknown transform '" + args.kind + "'");
  try {
    wci::TransformTrace trace = args.kind == "wellformize" ? wci::wellformize(c)
                                : args.kind == "unconize"  ? wci::unconize(c)
                                                           : wci::hyperplane_section(c);
    std::cout << wci::to_json(trace).dump() << '\n';
    return exit_pass;
  } catch (const wci::Error &e) {
    std::cout << wci::Json{{"error", wci::to_string(e.code())}, {"message", e.what()}}.dump()
              << '\n';
    return exit_fail;
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Enumerate and classify smooth Fano weighted complete intersections"};
  app.require_subcommand(1);

  CheckArgs check;
  auto *check_cmd = app.add_subcommand("check", "Run the filters on one candidate");
  check_cmd->add_option("--weights", check.weights, "Comma-separated weights")->required();
  check_cmd->add_option("--degrees", check.degrees, "Comma-separated degrees");
  check_cmd->add_option("--profile", check.profile,
                        "smooth-fano, calabi-yau, none, or a comma list of filter ids");
  check_cmd->add_option("--format", check.format, "jsonl, csv or table");

  EnumerateArgs en;
  auto *enum_cmd = app.add_subcommand("enumerate", "List survivors for (dim, index, codim)");
  enum_cmd->add_option("--dim", en.dim, "Dimension n")->required();
  enum_cmd->add_option("--index", en.index, "Fano index")->required();
  enum_cmd->add_option("--codim", en.codim, "Codimension k")->required();
  enum_cmd->add_option("--max-weight", en.max_weight, "Weight cap");
  enum_cmd->add_option("--profile", en.profile, "Filter profile");
  enum_cmd->add_option("--format", en.format, "jsonl, csv or table");
  enum_cmd->add_option("--workers", en.workers, "Worker threads (0 = hardware)");

  VerifyArgs ver;
  auto *verify_cmd = app.add_subcommand("verify", "Check a classification statement");
  verify_cmd->add_option("--case", ver.case_name, "i, ii, iii, hypersurface or survey")
      ->required();
  verify_cmd->add_option("--dim", ver.dims, "Dimension or range A..B")->required();
  verify_cmd->add_option("--index", ver.index, "Index or range A..B");
  verify_cmd->add_option("--max-weight", ver.max_weight, "Weight cap for every slice");
  verify_cmd->add_option("--format", ver.format, "text or json");
  verify_cmd->add_option("--workers", ver.workers, "Worker threads (0 = hardware)");

  TransformArgs tr;
  auto *transform_cmd = app.add_subcommand("transform", "Rewrite a candidate");
  transform_cmd->add_option("kind", tr.kind, "wellformize, unconize or section")->required();
  transform_cmd->add_option("--weights", tr.weights, "Comma-separated weights")->required();
  transform_cmd->add_option("--degrees", tr.degrees, "Comma-separated degrees");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return exit_input;
  }

  try {
    if (*check_cmd)
      return run_check(check);
    if (*enum_cmd)
      return run_enumerate(en);
    if (*verify_cmd)
      return run_verify(ver);
    if (*transform_cmd)
      return run_transform(tr);
  } catch (const wci::Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  }
  return exit_input;
}
