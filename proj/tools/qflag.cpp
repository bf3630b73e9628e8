/**
 * @file qflag.cpp
 * @brief Command line front end: module data, braiding matrices, graded
 *        dimension tables and the verification suites.
 *
 * Exit codes: 0 when everything requested passed, 1 when a verification
 * suite reported a failure, 2 for usage or configuration errors (including a
 * crossed node that does not give an irreducible flag manifold).
 */

#include <qflag/coeffmodel.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace qflag;

struct RunConfig {
  std::string type = "A";
  int rank = 1;
  int s = 1;  // crossed node, 1-based
  std::string kind = "rh";
  std::string calculus = "d";
  int max_degree = -1;
  std::vector<std::string> suites;
  std::string format = "human";
  std::string output;
  bool parallel = false;
};

struct Verdict {
  std::string suite;
  bool pass = false;
  std::string witness;
  long long elapsed_ms = 0;
};

const std::vector<std::string> kAllSuites = {"ybe",     "crels",  "spectrum", "zrel",
                                             "central", "graded", "volume",   "restricted"};

std::string context_label(const RunConfig& cfg) {
  return cfg.type + std::to_string(cfg.rank) + ":" + std::to_string(cfg.s);
}

std::string render_record(const RunConfig& cfg, const Verdict& v) {
  std::ostringstream os;
  os << "suite=" << v.suite << " ctx=" << context_label(cfg) << " verdict=" << (v.pass ? "pass" : "fail")
     << " witness=\"" << v.witness << "\" elapsed-ms=" << v.elapsed_ms;
  return os.str();
}

std::string render_human(const RunConfig& cfg, const Verdict& v) {
  std::ostringstream os;
  os << std::left << std::setw(11) << v.suite << std::setw(8) << context_label(cfg)
     << (v.pass ? "pass" : "fail");
  if (!v.witness.empty()) os << "  " << v.witness;
  return os.str();
}

char parse_type(const RunConfig& cfg) {
  if (cfg.type.size() != 1) throw InvalidArgument("--type takes a single letter");
  return cfg.type[0];
}

void check_rank_guard(const RunConfig& cfg) {
  long long cap = 6;
  if (const char* env = std::getenv("QFLAG_MAX_RANK")) cap = std::atoll(env);
  if (cfg.rank < 1 || cfg.rank > cap)
    throw InvalidArgument("rank " + std::to_string(cfg.rank) + " is outside 1.." + std::to_string(cap) +
                          " (QFLAG_MAX_RANK raises the bound)");
}

std::shared_ptr<const WeightModule> fundamental_module(const RunConfig& cfg, int multiplier = 1) {
  auto rs = std::make_shared<const RootSystem>(RootSystem::build(parse_type(cfg), cfg.rank, multiplier));
  if (cfg.s < 1 || cfg.s > cfg.rank) throw InvalidArgument("--node must lie in 1..rank");
  Weight lam = rs->zero_weight();
  lam[static_cast<std::size_t>(cfg.s - 1)] = 1;
  return irrep_cached(rs, lam);
}

int cmd_irrep(const RunConfig& cfg, std::ostream& out) {
  const auto V = fundamental_module(cfg);
  out << "module " << cfg.type << cfg.rank << " node " << cfg.s << " dim " << V->dim << "\n";
  for (int b = 0; b < V->dim; ++b) {
    out << b << " " << V->labels[static_cast<std::size_t>(b)] << " (";
    const Weight& w = V->wts[static_cast<std::size_t>(b)];
    for (std::size_t c = 0; c < w.size(); ++c) out << (c ? "," : "") << w[c];
    out << ")\n";
  }
  return 0;
}

int cmd_rmatrix(const RunConfig& cfg, std::ostream& out) {
  const auto V = fundamental_module(cfg);
  const auto rs = V->rs;
  const auto Vd = dual_module(*V);
  Weight lam = rs->zero_weight();
  lam[static_cast<std::size_t>(cfg.s - 1)] = 1;
  const Weight as = rs->alpha(cfg.s - 1);
  const RFamily fam = rmatrix_family(*V, *Vd, full_datum(rs), rs->pairing(lam, lam), rs->pairing(as, as));
  const ExactMatrix* m = nullptr;
  if (cfg.kind == "rh")
    m = &fam.rh;
  else if (cfg.kind == "rc")
    m = &fam.rc;
  else if (cfg.kind == "ra")
    m = &fam.ra;
  else if (cfg.kind == "raminus")
    m = &fam.ram;
  else if (cfg.kind == "rg")
    m = &fam.rg;
  else if (cfg.kind == "rgminus")
    m = &fam.rgm;
  else if (cfg.kind == "rhminus")
    m = &fam.rhinv;
  else if (cfg.kind == "rcminus")
    m = &fam.rcinv;
  else
    throw InvalidArgument("unknown --kind " + cfg.kind);
  out << "matrix " << cfg.kind << " rows " << m->rows() << " cols " << m->cols() << "\n";
  for (int r = 0; r < m->rows(); ++r)
    for (const auto& [c, v] : m->row(r)) out << r << " " << c << " " << v.to_string() << "\n";
  return 0;
}

int cmd_dims(const RunConfig& cfg, std::ostream& out) {
  const FlagContext ctx = build_context(parse_type(cfg), cfg.rank, cfg.s);
  Calculus c;
  if (cfg.calculus == "del")
    c = Calculus::del;
  else if (cfg.calculus == "delbar")
    c = Calculus::delbar;
  else if (cfg.calculus == "d")
    c = Calculus::d;
  else
    throw InvalidArgument("unknown --calculus " + cfg.calculus);
  out << derham_dims(ctx, c, cfg.max_degree).render();
  return 0;
}

CheckReport restricted_suite(const RunConfig& cfg) {
  // The Levi form needs half-integral values on weights, so the scalar
  // comparison runs in the doubled world.
  CheckReport rep;
  auto rs = std::make_shared<const RootSystem>(RootSystem::build(parse_type(cfg), cfg.rank, 2));
  Weight lam = rs->zero_weight();
  lam[static_cast<std::size_t>(cfg.s - 1)] = 1;
  const auto V = irrep_cached(rs, lam);
  std::vector<int> S;
  for (int a = 0; a < cfg.rank; ++a)
    if (a != cfg.s - 1) S.push_back(a);
  const auto comps = levi_components(*V, S);
  const BraidDatum full = full_datum(rs);
  const BraidDatum levi = levi_datum(rs, S);
  for (std::size_t i = 0; i < comps.size() && rep.pass; ++i)
    for (std::size_t j = 0; j < comps.size() && rep.pass; ++j) {
      const auto r = restricted_braid_check(*V, *V, comps[i], comps[j], full, levi, S);
      if (!r.pass) {
        rep.pass = false;
        rep.witness = "component pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): " + r.witness;
      }
    }
  return rep;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  std::vector<std::string> suites = cfg.suites.empty() ? kAllSuites : cfg.suites;
  for (const auto& s : suites)
    if (std::find(kAllSuites.begin(), kAllSuites.end(), s) == kAllSuites.end())
      throw InvalidArgument("unknown --suite " + s);
  const FlagContext ctx = build_context(parse_type(cfg), cfg.rank, cfg.s);

  const auto run_one = [&](const std::string& name) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckReport r;
    if (name == "ybe")
      r = verify_ybe(ctx.fam);
    else if (name == "crels")
      r = verify_crels(ctx.fam);
    else if (name == "spectrum")
      r = spectrum_check(ctx);
    else if (name == "zrel")
      r = verify_z_relations(ctx);
    else if (name == "central")
      r = mixed_centrality_check(ctx);
    else if (name == "graded")
      r = graded_commutation_check(ctx);
    else if (name == "volume")
      r = volume_form_check(ctx);
    else
      r = restricted_suite(cfg);
    Verdict v;
    v.suite = name;
    v.pass = r.pass;
    v.witness = r.witness;
    v.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return v;
  };

  std::vector<Verdict> verdicts;
  if (cfg.parallel) {
    std::vector<std::future<Verdict>> futs;
    futs.reserve(suites.size());
    for (const auto& s : suites) futs.push_back(std::async(std::launch::async, run_one, s));
    for (auto& f : futs) verdicts.push_back(f.get());
  } else {
    for (const auto& s : suites) verdicts.push_back(run_one(s));
  }

  bool all = true;
  for (const auto& v : verdicts) {
    all = all && v.pass;
    out << (cfg.format == "record" ? render_record(cfg, v) : render_human(cfg, v)) << "\n";
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"exact calculator for quantized irreducible flag manifolds"};
  app.require_subcommand(1);

  const auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--type", cfg.type, "Lie type letter (A, B, C, D)");
    sub->add_option("--rank", cfg.rank, "rank of the root system");
    sub->add_option("--node", cfg.s, "crossed node, 1-based");
    sub->add_option("--format", cfg.format, "human or record")
        ->check(CLI::IsMember({"human", "record"}));
    sub->add_option("--output", cfg.output, "write to a file instead of stdout");
  };

  CLI::App* irrep = app.add_subcommand("irrep", "print the defining module");
  add_common(irrep);
  CLI::App* rmatrix = app.add_subcommand("rmatrix", "print a braiding-family matrix");
  add_common(rmatrix);
  rmatrix->add_option("--kind", cfg.kind, "rh|rc|ra|raminus|rg|rgminus|rhminus|rcminus");
  CLI::App* dims = app.add_subcommand("dims", "graded dimensions of a fiber calculus");
  add_common(dims);
  dims->add_option("--calculus", cfg.calculus, "del|delbar|d");
  dims->add_option("--max-degree", cfg.max_degree, "top degree of the table");
  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  add_common(verify);
  verify->add_option("--suite", cfg.suites, "comma separated suite names")->delimiter(',');
  verify->add_flag("--parallel", cfg.parallel, "run the suites concurrently");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) {
      std::cerr << "error: cannot open " << cfg.output << "\n";
      return 2;
    }
    out = &file;
  }

  try {
    check_rank_guard(cfg);
    if (irrep->parsed()) return cmd_irrep(cfg, *out);
    if (rmatrix->parsed()) return cmd_rmatrix(cfg, *out);
    if (dims->parsed()) return cmd_dims(cfg, *out);
    return cmd_verify(cfg, *out);
  } catch (const NotIrreducibleFlag& e) {
    std::cerr << "error: NotIrreducibleFlag: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
