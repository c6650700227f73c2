// nlps — construct the library's nonlocal orthogonal product-state sets,
// verify sets (built-in or from files) by exact first-round measurement
// analysis, and tabulate cardinality comparisons against prior results.
//
// Exit codes: 0 success / certified, 1 usage or parse error,
//             2 orthogonality failure, 3 nontrivial measurement found.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlps/compare.hpp"
#include "nlps/constructions.hpp"
#include "nlps/core.hpp"
#include "nlps/io.hpp"
#include "nlps/verifier.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotOrthogonal = 2;
constexpr int kExitNontrivial = 3;

struct Range {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

// "3" or "3..6"
Range parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const std::size_t v = std::stoul(text);
      return Range{v, v};
    }
    Range r{std::stoul(text.substr(0, dots)), std::stoul(text.substr(dots + 2))};
    if (r.lo > r.hi) throw CLI::ValidationError("range", "empty range '" + text + "'");
    return r;
  } catch (const std::invalid_argument&) {
    throw CLI::ValidationError("range", "expected N or N..M, got '" + text + "'");
  } catch (const std::out_of_range&) {
    throw CLI::ValidationError("range", "value out of range in '" + text + "'");
  }
}

std::vector<std::size_t> parse_dims_list(const std::string& text) {
  std::vector<std::size_t> dims;
  std::size_t pos = 0;
  try {
    while (pos < text.size()) {
      std::size_t consumed = 0;
      dims.push_back(std::stoul(text.substr(pos), &consumed));
      pos += consumed;
      if (pos < text.size()) {
        if (text[pos] != ',') throw std::invalid_argument("separator");
        ++pos;
      }
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("dims", "expected a comma-separated dimension list, got '" +
                                           text + "'");
  }
  if (dims.empty()) throw CLI::ValidationError("dims", "empty dimension list");
  return dims;
}

std::string shape_str(const nlps::SystemShape& shape) {
  std::string out = "(";
  for (std::size_t p = 0; p < shape.parties(); ++p)
    out += (p ? ", " : "") + std::to_string(shape.dims[p]);
  return out + ")";
}

int conclusion_exit_code(nlps::Conclusion c) {
  switch (c) {
    case nlps::Conclusion::CertifiedFirstRoundTrivial: return kExitOk;
    case nlps::Conclusion::OrthogonalityFailed: return kExitNotOrthogonal;
    case nlps::Conclusion::NontrivialMeasurementExists: return kExitNontrivial;
  }
  return kExitUsage;
}

struct BuiltinRequest {
  std::string name;  // lemma1 | lemma2 | theorem1 | multipartite
  std::size_t d = 0;
  std::vector<std::size_t> dims;
};

nlps::StateSet build_builtin(const BuiltinRequest& builtin) {
  if (builtin.name == "lemma1") return nlps::lemma1_set(builtin.d);
  if (builtin.name == "lemma2") return nlps::lemma2_set(builtin.d);
  if (builtin.name == "theorem1") {
    if (builtin.dims.size() != 3)
      throw std::invalid_argument("theorem1 needs --dims n1,n2,n3");
    return nlps::theorem1_set(builtin.dims[0], builtin.dims[1], builtin.dims[2]);
  }
  if (builtin.name == "multipartite")
    return nlps::compose_multipartite(nlps::SystemShape{builtin.dims});
  throw std::invalid_argument("unknown construction '" + builtin.name + "'");
}

// ---------------------------------------------------------------- construct

struct ConstructArgs {
  BuiltinRequest builtin;
  std::string out;
};

int run_construct(const ConstructArgs& args) {
  const nlps::StateSet set = build_builtin(args.builtin);
  const std::string doc = nlps::serialize_state_set(set);
  const std::string summary =
      std::to_string(set.size()) + " states on " + shape_str(set.shape);
  if (!args.out.empty()) {
    nlps::write_text_file(args.out, doc);
    std::cout << summary << "\n" << "wrote " << args.out << "\n";
  } else {
    std::cout << doc;
    std::cerr << summary << "\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------------- verify

struct VerifyArgs {
  std::string file;
  BuiltinRequest builtin;  // used when file is empty
  std::string format = "text";
  std::string out;
  unsigned parallelism = 0;
  bool no_timing = false;
};

int run_verify(const VerifyArgs& args) {
  nlps::StateSet set;
  if (!args.file.empty())
    set = nlps::parse_state_set(nlps::read_text_file(args.file));
  else
    set = build_builtin(args.builtin);

  const nlps::Certificate cert = nlps::certify_nonlocal(set, args.parallelism);
  const std::string rendered = args.format == "machine"
                                   ? nlps::serialize_certificate(cert, !args.no_timing)
                                   : nlps::render_certificate_text(cert);
  if (!args.out.empty())
    nlps::write_text_file(args.out, rendered);
  else
    std::cout << rendered;
  return conclusion_exit_code(cert.conclusion);
}

// ------------------------------------------------------------------ compare

struct CompareArgs {
  bool tripartite = false;
  std::size_t max = 0;
  std::vector<std::size_t> dims;
  std::string n_range, d_range;
  std::string format = "text";
};

int run_compare(const CompareArgs& args) {
  std::vector<nlps::CompareParams> grid;
  if (args.tripartite) {
    if (!args.dims.empty()) {
      if (args.dims.size() != 3) throw CLI::ValidationError("--dims", "expected n1,n2,n3");
      grid.push_back(nlps::TripartiteParams{args.dims[0], args.dims[1], args.dims[2]});
    } else {
      for (std::size_t n1 = 3; n1 <= args.max; ++n1)
        for (std::size_t n2 = n1; n2 <= args.max; ++n2)
          for (std::size_t n3 = n2; n3 <= args.max; ++n3)
            grid.push_back(nlps::TripartiteParams{n1, n2, n3});
    }
  } else {
    const Range nr = parse_range(args.n_range);
    const Range dr = parse_range(args.d_range);
    for (std::size_t n = nr.lo; n <= nr.hi; ++n)
      for (std::size_t d = dr.lo; d <= dr.hi; ++d)
        grid.push_back(nlps::MultipartiteParams{n, d});
  }

  const auto rows = nlps::comparison_table(grid);
  std::cout << (args.format == "csv" ? nlps::render_table_csv(rows)
                                     : nlps::render_table_text(rows));
  for (const auto& row : rows)
    if (row.error) return kExitUsage;
  return kExitOk;
}

// -------------------------------------------------------------------- sweep

struct SweepArgs {
  std::string kind;
  std::string d_range;
  std::size_t max = 0;
  std::string n_range;
  unsigned parallelism = 0;
};

int run_sweep(const SweepArgs& args) {
  struct Job {
    std::string description;
    nlps::StateSet set;
  };
  std::vector<Job> jobs;

  if (args.kind == "lemma1" || args.kind == "lemma2") {
    const Range dr = parse_range(args.d_range);
    for (std::size_t d = dr.lo; d <= dr.hi; ++d) {
      nlps::StateSet set = args.kind == "lemma1" ? nlps::lemma1_set(d) : nlps::lemma2_set(d);
      jobs.push_back({args.kind + " d=" + std::to_string(d), std::move(set)});
    }
  } else if (args.kind == "theorem1") {
    for (std::size_t n1 = 3; n1 <= args.max; ++n1)
      for (std::size_t n2 = n1; n2 <= args.max; ++n2)
        for (std::size_t n3 = n2; n3 <= args.max; ++n3)
          jobs.push_back({"theorem1 (" + std::to_string(n1) + "," + std::to_string(n2) + "," +
                              std::to_string(n3) + ")",
                          nlps::theorem1_set(n1, n2, n3)});
  } else {  // multipartite
    const Range nr = parse_range(args.n_range);
    const Range dr = parse_range(args.d_range);
    for (std::size_t n = nr.lo; n <= nr.hi; ++n)
      for (std::size_t d = dr.lo; d <= dr.hi; ++d) {
        nlps::SystemShape shape{std::vector<std::size_t>(n, d)};
        jobs.push_back({"multipartite n=" + std::to_string(n) + " d=" + std::to_string(d),
                        nlps::compose_multipartite(shape)});
      }
  }

  int worst = kExitOk;
  std::vector<std::string> failures;
  for (const Job& job : jobs) {
    const nlps::Certificate cert = nlps::certify_nonlocal(job.set, args.parallelism);
    std::cout << job.description << ": " << to_string(cert.conclusion) << " ("
              << cert.cardinality << " states)\n";
    const int code = conclusion_exit_code(cert.conclusion);
    if (code != kExitOk) {
      failures.push_back(job.description);
      worst = std::max(worst, code);
    }
  }
  std::cout << "swept " << jobs.size() << " set" << (jobs.size() == 1 ? "" : "s") << ": ";
  if (failures.empty()) {
    std::cout << "all CertifiedFirstRoundTrivial\n";
  } else {
    std::cout << failures.size() << " failed:";
    for (const auto& f : failures) std::cout << " [" << f << "]";
    std::cout << "\n";
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlocal orthogonal product states: construction, exact verification, comparison"};
  app.require_subcommand(1);

  // construct
  ConstructArgs cargs;
  CLI::App* construct = app.add_subcommand("construct", "Build a state set and write it as JSON");
  construct->require_subcommand(1);
  for (const char* name : {"lemma1", "lemma2", "theorem1", "multipartite"}) {
    CLI::App* sub = construct->add_subcommand(name);
    if (std::string(name) == "lemma1" || std::string(name) == "lemma2")
      sub->add_option("--d", cargs.builtin.d, "local dimension (>= 3)")->required();
    else
      sub->add_option_function<std::string>(
             "--dims", [&cargs](const std::string& v) { cargs.builtin.dims = parse_dims_list(v); },
             "comma-separated dimensions")
          ->required();
    sub->add_option("-o,--out", cargs.out, "output path (default: stdout)");
    sub->callback([&cargs, name] { cargs.builtin.name = name; });
  }

  // verify
  VerifyArgs vargs;
  CLI::App* verify = app.add_subcommand("verify", "Certify a set (file or built-in)");
  verify->add_option("file", vargs.file, "state set document to verify");
  verify->add_option("--builtin", vargs.builtin.name,
                     "built-in construction: lemma1, lemma2, theorem1, multipartite");
  verify->add_option("--d", vargs.builtin.d, "dimension for built-in lemma1/lemma2");
  verify->add_option_function<std::string>(
      "--dims", [&vargs](const std::string& v) { vargs.builtin.dims = parse_dims_list(v); },
      "dimensions for built-in theorem1/multipartite");
  verify->add_option("--format", vargs.format, "text or machine (JSON certificate)")
      ->check(CLI::IsMember({"text", "machine"}));
  verify->add_option("-o,--out", vargs.out, "write the certificate to a file");
  verify->add_option("--parallelism", vargs.parallelism,
                     "concurrent per-party checks (0 = all execution units)");
  verify->add_flag("--no-timing", vargs.no_timing, "omit wall-clock data from machine output");

  // compare
  CompareArgs tri_args, multi_args;
  CLI::App* compare = app.add_subcommand("compare", "Cardinality comparison tables");
  compare->require_subcommand(1);
  CLI::App* ctri = compare->add_subcommand("tripartite");
  ctri->add_option("--max", tri_args.max, "grid over 3 <= n1 <= n2 <= n3 <= max");
  ctri->add_option_function<std::string>(
      "--dims", [&tri_args](const std::string& v) { tri_args.dims = parse_dims_list(v); },
      "a single shape n1,n2,n3");
  ctri->add_option("--format", tri_args.format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}));
  CLI::App* cmulti = compare->add_subcommand("multipartite");
  cmulti->add_option("--n", multi_args.n_range, "party count, N or N..M")->required();
  cmulti->add_option("--d", multi_args.d_range, "uniform dimension, N or N..M")->required();
  cmulti->add_option("--format", multi_args.format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}));

  // sweep
  SweepArgs sargs;
  CLI::App* sweep = app.add_subcommand("sweep", "Construct and fully verify a parameter range");
  sweep->require_subcommand(1);
  {
    CLI::App* s1 = sweep->add_subcommand("lemma1");
    s1->add_option("--d", sargs.d_range, "dimension range, N or N..M")->required();
    s1->add_option("--parallelism", sargs.parallelism, "");
    s1->callback([&sargs] { sargs.kind = "lemma1"; });
    CLI::App* s2 = sweep->add_subcommand("lemma2");
    s2->add_option("--d", sargs.d_range, "dimension range, N or N..M")->required();
    s2->add_option("--parallelism", sargs.parallelism, "");
    s2->callback([&sargs] { sargs.kind = "lemma2"; });
    CLI::App* s3 = sweep->add_subcommand("theorem1");
    s3->add_option("--max", sargs.max, "grid over 3 <= n1 <= n2 <= n3 <= max")->required();
    s3->add_option("--parallelism", sargs.parallelism, "");
    s3->callback([&sargs] { sargs.kind = "theorem1"; });
    CLI::App* s4 = sweep->add_subcommand("multipartite");
    s4->add_option("--n", sargs.n_range, "party count range, N or N..M")->required();
    s4->add_option("--d", sargs.d_range, "uniform dimension range, N or N..M")->required();
    s4->add_option("--parallelism", sargs.parallelism, "");
    s4->callback([&sargs] { sargs.kind = "multipartite"; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (construct->parsed()) return run_construct(cargs);
    if (verify->parsed()) {
      if (vargs.file.empty() && vargs.builtin.name.empty()) {
        std::cerr << "verify: provide a file or --builtin\n";
        return kExitUsage;
      }
      if (!vargs.file.empty() && !vargs.builtin.name.empty()) {
        std::cerr << "verify: file and --builtin are mutually exclusive\n";
        return kExitUsage;
      }
      return run_verify(vargs);
    }
    if (compare->parsed()) {
      if (ctri->parsed()) {
        tri_args.tripartite = true;
        if (tri_args.dims.empty() && tri_args.max < 3) {
          std::cerr << "compare tripartite: provide --max (>= 3) or --dims\n";
          return kExitUsage;
        }
        return run_compare(tri_args);
      }
      return run_compare(multi_args);
    }
    if (sweep->parsed()) {
      if (sargs.kind == "theorem1" && sargs.max < 3) {
        std::cerr << "sweep theorem1: --max must be >= 3\n";
        return kExitUsage;
      }
      return run_sweep(sargs);
    }
  } catch (const nlps::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
