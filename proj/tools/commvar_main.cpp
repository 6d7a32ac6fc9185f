#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <commvar/census.hpp>
#include <commvar/certify.hpp>
#include <commvar/io.hpp>

namespace {

using namespace commvar;

// Exit codes are a stable contract: 0 success or REDUCIBLE, 1 usage or
// parse error, 2 NOT_FOUND, 3 verification failure, 4 budget exceeded.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotFound = 2;
constexpr int kExitVerifyFail = 3;
constexpr int kExitBudget = 4;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Output goes to stdout and, when requested, byte-identically to a file.
void emit(const std::string& text, const std::string& out_path) {
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write " + out_path);
    f << text;
  }
}

// Timing never goes into the structured outputs: identical runs must
// produce byte-identical files, so the clock reading is stderr-only
// (census CSV rows are the exception, their schema carries elapsed_ms).
struct StderrTimer {
  const char* name;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  ~StderrTimer() {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::cerr << name << ": " << ms << " ms\n";
  }
};

FieldSpec resolve_field(const std::string& field_str, bool exact) {
  if (exact) return FieldSpec::rationals();
  return FieldSpec::parse(field_str);
}

Json load_json(const std::string& path) { return Json::parse(read_input(path)); }

// Tuple inputs come either bare or wrapped by this tool's own sample output.
Json unwrap_tuple(const Json& j) {
  if (j.is_object() && j.contains("tuple")) return j.at("tuple");
  return j;
}

template <class S>
Json op_sample(Index n, Index r, const FieldContext<S>& F, std::uint64_t seed) {
  const MatTuple<S> t = sample_regular_tuple<S>(n, r, F, seed);
  return Json{{"format_version", kFormatVersion},
              {"seed", seed},
              {"field", field_to_json(F.spec())},
              {"tuple", tuple_to_json(t)}};
}

template <class S>
Json op_centralizer(const Json& j, const FieldContext<S>& F) {
  const Mat<S> m = mat_from_json<S>(j, F);
  if (m.rows() != m.cols()) throw std::invalid_argument("centralizer input must be square");
  const CentralizerBasis<S> z = centralizer(m);
  Json basis = Json::array();
  for (const auto& b : z.basis) basis.push_back(entries_to_json(b));
  return Json{{"format_version", kFormatVersion},
              {"field", field_to_json(F.spec())},
              {"n", m.rows()},
              {"dim", z.dim},
              {"basis", std::move(basis)}};
}

template <class S>
Json op_algebra_dim(const Json& j, const FieldContext<S>& F) {
  const MatTuple<S> t = tuple_from_json<S>(j, F);
  const AlgebraClosure<S> cl = algebra_closure(t);
  return Json{{"format_version", kFormatVersion},
              {"field", field_to_json(F.spec())},
              {"n", t.n()},
              {"r", t.r()},
              {"algebra_dim", cl.dim},
              {"generations", cl.generations}};
}

template <class S>
Json op_tangent(const Json& j, const FieldContext<S>& F) {
  const MatTuple<S> t = tuple_from_json<S>(j, F);
  return Json{{"format_version", kFormatVersion},
              {"field", field_to_json(F.spec())},
              {"n", t.n()},
              {"r", t.r()},
              {"tangent_dim", commuting_tangent_dim(t)}};
}

std::string count_csv(const std::vector<CountResult>& rows, std::uint64_t seed,
                      std::uint64_t budget) {
  std::ostringstream ss;
  ss << "# format_version=" << kFormatVersion << "\n";
  ss << "# seed=" << seed << " budget=" << budget << "\n";
  ss << "n,r,q,count,method,elapsed_ms\n";
  for (const auto& c : rows)
    ss << c.n << "," << c.r << "," << c.q << "," << c.count << "," << c.method << ","
       << c.elapsed_ms << "\n";
  return ss.str();
}

std::string growth_csv(Index n, Index r, const std::vector<GrowthRow>& rows, std::uint64_t seed,
                       std::uint64_t budget) {
  std::ostringstream ss;
  ss << "# format_version=" << kFormatVersion << "\n";
  ss << "# seed=" << seed << " budget=" << budget << "\n";
  ss << "n,r,q,count,log_q_count\n";
  char buf[64];
  for (const auto& g : rows) {
    std::snprintf(buf, sizeof buf, "%.6f", g.log_q_count);
    ss << n << "," << r << "," << g.q << "," << g.count << "," << buf << "\n";
  }
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact reducibility certificates for commuting nilpotent matrix tuples"};
  app.require_subcommand(1);

  std::int64_t n = 0, r = 0;
  std::uint64_t q = 0;
  std::vector<std::uint64_t> qs;
  std::uint64_t seed = 0;
  std::string field_str = "fp:2147483647";
  bool exact = false;
  std::string out_path;
  std::string in_path;
  std::uint64_t census_budget = Budget{}.max_points;
  std::uint64_t draws = CertifyOptions{}.algebra_draws;

  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "also write the output to this file");
  };
  auto add_field = [&](CLI::App* cmd) {
    cmd->add_option("--field", field_str, "scalar field: q or fp:<prime> (default fp:2147483647)");
    cmd->add_flag("--exact", exact, "force exact rational arithmetic (same as --field q)");
  };
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "64-bit seed for randomized constructions");
  };

  CLI::App* c_dims = app.add_subcommand("dims", "closed-form dimension ledger for (n, r)");
  c_dims->add_option("n", n, "matrix size")->required();
  c_dims->add_option("r", r, "tuple length")->required();
  add_out(c_dims);

  CLI::App* c_certify =
      app.add_subcommand("certify", "search for a reducibility certificate at (n, r)");
  c_certify->add_option("n", n, "matrix size")->required();
  c_certify->add_option("r", r, "tuple length")->required();
  add_seed(c_certify);
  add_field(c_certify);
  c_certify->add_option("--budget", draws, "random draws for the algebra search");
  add_out(c_certify);

  CLI::App* c_verify = app.add_subcommand("verify", "recheck a certificate file from scratch");
  c_verify->add_option("path", in_path, "certificate JSON, or - for stdin")->required();
  add_out(c_verify);

  CLI::App* c_count =
      app.add_subcommand("count", "exact number of commuting nilpotent r-tuples over F_q");
  c_count->add_option("n", n, "matrix size")->required();
  c_count->add_option("r", r, "tuple length")->required();
  c_count->add_option("q", q, "field size (prime)")->required();
  c_count->add_option("--budget", census_budget, "enumeration point cap");
  add_out(c_count);

  CLI::App* c_growth =
      app.add_subcommand("growth", "point counts over several primes with log_q growth");
  c_growth->add_option("n", n, "matrix size")->required();
  c_growth->add_option("r", r, "tuple length")->required();
  c_growth->add_option("q", qs, "prime field sizes")->required()->expected(-1);
  c_growth->add_option("--budget", census_budget, "enumeration point cap");
  add_out(c_growth);

  CLI::App* c_sample =
      app.add_subcommand("sample", "deterministic commuting nilpotent tuple with regular first entry");
  c_sample->add_option("n", n, "matrix size")->required();
  c_sample->add_option("r", r, "tuple length")->required();
  add_seed(c_sample);
  add_field(c_sample);
  add_out(c_sample);

  CLI::App* c_centralizer =
      app.add_subcommand("centralizer", "centralizer basis of a matrix from JSON");
  c_centralizer->add_option("path", in_path, "matrix JSON, or - for stdin")->required();
  add_out(c_centralizer);

  CLI::App* c_algebra =
      app.add_subcommand("algebra-dim", "dimension of the algebra generated by a tuple from JSON");
  c_algebra->add_option("path", in_path, "tuple JSON, or - for stdin")->required();
  add_out(c_algebra);

  CLI::App* c_tangent =
      app.add_subcommand("tangent", "tangent dimension of the commuting variety at a tuple");
  c_tangent->add_option("path", in_path, "tuple JSON, or - for stdin")->required();
  add_out(c_tangent);

  CLI::App* c_bounds =
      app.add_subcommand("bounds", "known bounds on the least reducible matrix size");
  add_out(c_bounds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (c_dims->parsed()) {
      StderrTimer t{"dims"};
      emit(dump_json(dim_report_to_json(formula_dims(n, r))), out_path);
      return kExitOk;
    }

    if (c_certify->parsed()) {
      StderrTimer t{"certify"};
      const FieldSpec fs = resolve_field(field_str, exact);
      CertifyOptions opt;
      opt.seed = seed;
      opt.algebra_draws = draws;
      const Certificate cert = fs.is_rational()
                                   ? certify<Rat>(n, r, FieldContext<Rat>{}, opt)
                                   : certify<Fp>(n, r, FieldContext<Fp>(fs.p), opt);
      emit(dump_json(certificate_to_json(cert)), out_path);
      return cert.verdict == Verdict::Reducible ? kExitOk : kExitNotFound;
    }

    if (c_verify->parsed()) {
      StderrTimer t{"verify"};
      const Certificate cert = certificate_from_json(load_json(in_path));
      const VerifyResult res = verify_certificate(cert);
      emit(dump_json(Json{{"format_version", kFormatVersion},
                          {"verified", res.ok},
                          {"message", res.message}}),
           out_path);
      return res.ok ? kExitOk : kExitVerifyFail;
    }

    if (c_count->parsed()) {
      StderrTimer t{"count"};
      Budget budget{census_budget};
      const CountResult c = count_commuting_nilpotent(n, r, q, budget);
      emit(count_csv({c}, seed, census_budget), out_path);
      return kExitOk;
    }

    if (c_growth->parsed()) {
      StderrTimer t{"growth"};
      Budget budget{census_budget};
      const auto rows = growth_probe(n, r, qs, budget);
      emit(growth_csv(n, r, rows, seed, census_budget), out_path);
      return kExitOk;
    }

    if (c_sample->parsed()) {
      StderrTimer t{"sample"};
      const FieldSpec fs = resolve_field(field_str, exact);
      const Json out = fs.is_rational() ? op_sample<Rat>(n, r, FieldContext<Rat>{}, seed)
                                        : op_sample<Fp>(n, r, FieldContext<Fp>(fs.p), seed);
      emit(dump_json(out), out_path);
      return kExitOk;
    }

    if (c_centralizer->parsed()) {
      StderrTimer t{"centralizer"};
      const Json j = load_json(in_path);
      const FieldSpec fs = field_from_json(j.at("field"));
      const Json out = fs.is_rational() ? op_centralizer<Rat>(j, FieldContext<Rat>{})
                                        : op_centralizer<Fp>(j, FieldContext<Fp>(fs.p));
      emit(dump_json(out), out_path);
      return kExitOk;
    }

    if (c_algebra->parsed()) {
      StderrTimer t{"algebra-dim"};
      const Json j = unwrap_tuple(load_json(in_path));
      const FieldSpec fs = field_from_json(j.at("field"));
      const Json out = fs.is_rational() ? op_algebra_dim<Rat>(j, FieldContext<Rat>{})
                                        : op_algebra_dim<Fp>(j, FieldContext<Fp>(fs.p));
      emit(dump_json(out), out_path);
      return kExitOk;
    }

    if (c_tangent->parsed()) {
      StderrTimer t{"tangent"};
      const Json j = unwrap_tuple(load_json(in_path));
      const FieldSpec fs = field_from_json(j.at("field"));
      const Json out = fs.is_rational() ? op_tangent<Rat>(j, FieldContext<Rat>{})
                                        : op_tangent<Fp>(j, FieldContext<Fp>(fs.p));
      emit(dump_json(out), out_path);
      return kExitOk;
    }

    if (c_bounds->parsed()) {
      StderrTimer t{"bounds"};
      emit(dump_json(bounds_ledger_to_json()), out_path);
      return kExitOk;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::cerr << "error: no subcommand\n";
  return kExitUsage;
}
