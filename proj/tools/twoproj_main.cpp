//
// Command-line driver: generate, decompose, verify, spectrum, commutant.
//
// Exit codes: 0 all checks pass, 1 at least one non-skipped check failed or a
// decomposition precondition was violated, 2 usage or parse error.
//

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twoproj/twoproj.hpp"

namespace {

using namespace twoproj;

struct CommonOpts {
  std::string output;
  double eps_rank = Tolerance{}.eps_rank;
};

void add_tol_option(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--tol", opts.eps_rank, "rank cutoff eps_rank (relative)")
      ->envname("TWOPROJ_TOL")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--output", opts.output, "write the result document to this path");
}

Tolerance make_tolerance(const CommonOpts& opts) {
  Tolerance tol;
  tol.eps_rank = opts.eps_rank;
  tol.validate();
  return tol;
}

void emit(const nlohmann::ordered_json& doc, const CommonOpts& opts) {
  if (opts.output.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::ofstream out(opts.output);
    if (!out) throw ParseError("cannot write output file: " + opts.output);
    out << doc.dump(2) << '\n';
  }
}

GenMode parse_mode(const std::string& mode) {
  if (mode == "random") return GenMode::random;
  if (mode == "generic") return GenMode::generic;
  if (mode == "commuting") return GenMode::commuting;
  if (mode == "block") return GenMode::block;
  throw std::invalid_argument("unknown mode '" + mode + "'");
}

struct GenOpts {
  std::size_t n = 0;
  std::optional<std::size_t> dim_p, dim_q;
  std::string mode = "random";
  std::uint64_t seed = 0;
  std::string angles_csv;
};

void add_gen_options(CLI::App* cmd, GenOpts& g, bool require_n) {
  auto* n_opt = cmd->add_option("--n", g.n, "ambient dimension");
  if (require_n) n_opt->required();
  cmd->add_option("--dim-p", g.dim_p, "rank of p (default n/2)");
  cmd->add_option("--dim-q", g.dim_q, "rank of q (default n/2)");
  cmd->add_option("--mode", g.mode, "random | generic | commuting | block")
      ->check(CLI::IsMember({"random", "generic", "commuting", "block"}));
  cmd->add_option("--seed", g.seed, "64-bit generation seed");
  cmd->add_option("--angles", g.angles_csv, "comma-separated block angles in radians");
}

GenSpec make_genspec(const GenOpts& g) {
  GenSpec spec;
  spec.n = g.n;
  spec.dim_p = g.dim_p.value_or(g.n / 2);
  spec.dim_q = g.dim_q.value_or(g.n / 2);
  spec.mode = parse_mode(g.mode);
  spec.seed = g.seed;
  if (!g.angles_csv.empty()) {
    std::stringstream ss(g.angles_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        spec.angles.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw std::invalid_argument("invalid angle '" + item + "'");
      }
    }
  }
  spec.validate();
  return spec;
}

Side parse_side(const std::string& side) { return side == "q" ? Side::q : Side::p; }

int run_generate(const GenOpts& g, const CommonOpts& opts) {
  const Tolerance tol = make_tolerance(opts);
  const PairFile pair = generate_pair(make_genspec(g), tol);
  emit(pair_to_json(pair), opts);
  return 0;
}

int report_exit(const Report& rep) { return rep.all_passed() ? 0 : 1; }

int run_decompose(const std::string& input, const std::string& side, const CommonOpts& opts) {
  const Tolerance tol = make_tolerance(opts);
  const PairFile pair = read_pair_file(input);
  const auto [p, q] = decode_pair(pair, tol);
  const Side s = parse_side(side);
  Report rep = make_report(pair.name, p, q, s, tol, pipeline_checks(p, q, s, tol));
  emit(rep.to_json(), opts);
  return report_exit(rep);
}

int run_verify(const std::string& input, const GenOpts& g, std::size_t count,
               const std::string& suite, const std::string& side, const CommonOpts& opts) {
  const Tolerance tol = make_tolerance(opts);
  const Side s = parse_side(side);

  std::vector<Report> reports;
  if (!input.empty()) {
    const PairFile pair = read_pair_file(input);
    const auto [p, q] = decode_pair(pair, tol);
    reports.push_back(make_report(pair.name, p, q, s, tol, run_suite(p, q, suite, tol)));
  } else {
    GenSpec spec = make_genspec(g);
    for (std::size_t k = 0; k < count; ++k) {
      GenSpec item = spec;
      item.seed = spec.seed + k;
      const PairFile pair = generate_pair(item, tol);
      const auto [p, q] = decode_pair(pair, tol);
      reports.push_back(make_report(pair.name, p, q, s, tol, run_suite(p, q, suite, tol)));
    }
  }

  bool ok = true;
  if (reports.size() == 1) {
    emit(reports.front().to_json(), opts);
    ok = reports.front().all_passed();
  } else {
    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    doc["suite"] = suite;
    nlohmann::ordered_json items = nlohmann::ordered_json::array();
    std::size_t passed = 0, failed = 0, skipped = 0;
    for (const auto& rep : reports) {
      ok = ok && rep.all_passed();
      passed += rep.count(CheckStatus::pass);
      failed += rep.count(CheckStatus::fail);
      skipped += rep.count(CheckStatus::skip);
      items.push_back(rep.to_json());
    }
    doc["summary"] = {{"instances", reports.size()},
                      {"passed", passed},
                      {"failed", failed},
                      {"skipped", skipped}};
    doc["instances"] = std::move(items);
    emit(doc, opts);
  }
  return ok ? 0 : 1;
}

int run_spectrum(const std::string& input, const CommonOpts& opts) {
  const Tolerance tol = make_tolerance(opts);
  const PairFile pair = read_pair_file(input);
  const auto [p, q] = decode_pair(pair, tol);

  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  doc["input"] = {{"name", pair.name}, {"n", pair.n}};
  try {
    const SpectrumReport rep = spectrum_sum(p, q, tol);
    doc["gammas"] = rep.gammas;
    doc["multiplicities"] = rep.multiplicities;
    doc["predicted"] = rep.predicted;
    doc["observed"] = rep.observed;
    doc["max_deviation"] = rep.max_deviation;
    const double bound = bounds::spectrum(p.dim());
    doc["threshold"] = bound;
    const bool ok = rep.max_deviation <= bound;
    doc["status"] = ok ? "pass" : "fail";
    emit(doc, opts);
    return ok ? 0 : 1;
  } catch (const NotGeneric& e) {
    doc["status"] = "fail";
    doc["error"] = std::string(e.what()) +
                   "; run 'decompose' and apply the spectrum to the compressed pair";
    emit(doc, opts);
    return 1;
  }
}

int run_commutant(const std::string& input, const std::string& b_path, const std::string& z_path,
                  const CommonOpts& opts) {
  const Tolerance tol = make_tolerance(opts);
  const PairFile pair = read_pair_file(input);
  const auto [p, q] = decode_pair(pair, tol);

  detail::CheckList list;
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  doc["input"] = {{"name", pair.name}, {"n", pair.n}};
  try {
    if (!b_path.empty()) {
      const SymMat b = read_element_file(b_path, tol);
      const auto elem = commutant_embed(b, p, q, tol);
      doc["mode"] = "embed";
      doc["a"] = element_to_json(elem.a);
      list.add("commutant.embed_commutes",
               std::max(commutator_norm(elem.a, p.sym()), commutator_norm(elem.a, q.sym())),
               tol.tau_eq * static_cast<double>(p.dim()) * (1.0 + max_abs(b.mat())));
      list.add("commutant.roundtrip",
               spec_norm(commutant_decompose(elem.a, p, q, tol).mat() - b.mat()),
               bounds::commutant_roundtrip * (1.0 + max_abs(b.mat())));
    } else {
      const SymMat zmat = read_element_file(z_path, tol);
      const Projection z(zmat, tol);
      const Projection t = commutant_projection(z, p, q, tol);
      const Symmetry j = symmetry_j(p, q, tol);
      doc["mode"] = "projection";
      doc["t"] = element_to_json(t.sym());
      list.add("commutant.projection_roundtrip",
               spec_norm(z.mat() - (t.mat() + j.mat() * t.mat() * j.mat())),
               bounds::commutant_roundtrip);
      list.add("commutant.projection_compressed",
               std::max(spec_norm(t.mat() - t.mat() * p.mat()),
                        spec_norm(t.mat() - p.mat() * t.mat())),
               tol.tau_eq * static_cast<double>(p.dim()));
    }
  } catch (const NotGeneric& e) {
    list.fail("commutant.precondition", e.what());
  } catch (const BadGenerator& e) {
    list.fail("commutant.generator", e.what());
  } catch (const NotInCommutant& e) {
    list.fail("commutant.membership", e.what());
  }

  bool ok = true;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : list.checks) {
    ok = ok && c.status != CheckStatus::fail;
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["residual"] = c.residual;
    cj["threshold"] = c.threshold;
    cj["status"] = to_string(c.status);
    if (!c.note.empty()) cj["note"] = c.note;
    checks.push_back(std::move(cj));
  }
  doc["checks"] = std::move(checks);
  emit(doc, opts);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two orthogonal projections: lattice, CS-decomposition and commutant toolkit"};
  app.set_version_flag("--version", std::string(twoproj::kToolVersion));
  app.require_subcommand(1);

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "emit a seeded pair file");
  GenOpts gen_opts;
  CommonOpts gen_common;
  add_gen_options(gen_cmd, gen_opts, /*require_n=*/true);
  add_tol_option(gen_cmd, gen_common);

  // decompose
  auto* dec_cmd = app.add_subcommand("decompose", "run every decomposition and report residuals");
  std::string dec_input, dec_side = "p";
  CommonOpts dec_common;
  dec_cmd->add_option("--input", dec_input, "pair file")->required();
  dec_cmd->add_option("--side", dec_side, "sixfold completion: p | q")
      ->check(CLI::IsMember({"p", "q"}));
  add_tol_option(dec_cmd, dec_common);

  // verify
  auto* ver_cmd = app.add_subcommand("verify", "run invariant suites on a pair or a seeded batch");
  std::string ver_input, ver_suite = "all", ver_side = "p";
  std::size_t ver_count = 1;
  GenOpts ver_gen;
  CommonOpts ver_common;
  ver_cmd->add_option("--input", ver_input, "pair file (alternative to generation flags)");
  ver_cmd->add_option("--suite", ver_suite, "lattice | cs | generic | spectral | commutant | all")
      ->check(CLI::IsMember({"lattice", "cs", "generic", "spectral", "commutant", "all"}));
  ver_cmd->add_option("--side", ver_side, "sixfold completion: p | q")
      ->check(CLI::IsMember({"p", "q"}));
  ver_cmd->add_option("--count", ver_count, "number of seeded instances (seed, seed+1, ...)");
  add_gen_options(ver_cmd, ver_gen, /*require_n=*/false);
  add_tol_option(ver_cmd, ver_common);

  // spectrum
  auto* spec_cmd = app.add_subcommand("spectrum", "spectrum of p + q against the 1 +/- gamma law");
  std::string spec_input;
  CommonOpts spec_common;
  spec_cmd->add_option("--input", spec_input, "pair file")->required();
  add_tol_option(spec_cmd, spec_common);

  // commutant
  auto* com_cmd = app.add_subcommand("commutant", "embed a generator or split a commuting projection");
  std::string com_input, com_b, com_z;
  CommonOpts com_common;
  com_cmd->add_option("--input", com_input, "pair file")->required();
  auto* b_opt = com_cmd->add_option("--b", com_b, "element file with the generator b = pbp");
  auto* z_opt = com_cmd->add_option("--z", com_z, "element file with a commuting projection z");
  b_opt->excludes(z_opt);
  add_tol_option(com_cmd, com_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen_cmd->parsed()) return run_generate(gen_opts, gen_common);
    if (dec_cmd->parsed()) return run_decompose(dec_input, dec_side, dec_common);
    if (ver_cmd->parsed()) {
      if (ver_input.empty() && ver_gen.n == 0)
        throw std::invalid_argument("verify: give --input or --n");
      return run_verify(ver_input, ver_gen, ver_count, ver_suite, ver_side, ver_common);
    }
    if (spec_cmd->parsed()) return run_spectrum(spec_input, spec_common);
    if (com_cmd->parsed()) {
      if (com_b.empty() && com_z.empty())
        throw std::invalid_argument("commutant: give --b or --z");
      return run_commutant(com_input, com_b, com_z, com_common);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NotSymmetric& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NotProjection& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const twoproj::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
