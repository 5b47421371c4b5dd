#include "plg/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using plg::json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitImport = 2;
constexpr int kExitConfig = 64;

json export_pair(const plg::CatalogEntry& e) {
  std::vector<int> b, c;
  const plg::RealMatrix& B = e.mp.b_basis();
  for (int j = 0; j < B.cols(); ++j)
    for (int i = 0; i < B.rows(); ++i)
      if (B(i, j) == 1.0) b.push_back(i);
  const plg::RealMatrix& Y = e.mp.y_basis();
  for (int j = 0; j < Y.cols(); ++j)
    for (int i = 0; i < Y.rows(); ++i)
      if (Y(i, j) == 1.0) c.push_back(i);
  return {{"name", e.name}, {"algebra", plg::lie_to_json(e.mp.g())}, {"b", b}, {"c", c}};
}

int verify(plg::RunConfig cfg, const std::string& out_path) {
  plg::validate_config(cfg);
  plg::Subject s = plg::load_subject(cfg);
  plg::RunOutcome out = plg::run(cfg, s);
  std::string text = plg::text_summary(out, s);
  if (out_path == "-") {
    std::cout << out.report.dump(2) << "\n";
    std::cerr << text;
  } else {
    if (!out_path.empty()) {
      std::ofstream f(out_path);
      if (!f) throw plg::ConfigError("cannot write " + out_path);
      f << out.report.dump(2) << "\n";
    }
    std::cout << text;
  }
  return out.pass ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson-Lie groups from matched pairs: construction and verification"};
  app.set_version_flag("--version", plg::kVersion);
  app.require_subcommand(1);

  plg::RunConfig cfg;
  std::string out_path;
  auto* verify_cmd = app.add_subcommand("verify", "run verification suites on a catalog pair or an imported JSON pair");
  verify_cmd->add_option("pair", cfg.pair, "catalog name (su11, su21, su31, su41, supq1) or path to a pair JSON")->required();
  verify_cmd->add_option("--checks", cfg.checks, "comma-separated subset of checks")->delimiter(',');
  verify_cmd->add_option("--samples", cfg.samples, "samples for randomized checks");
  verify_cmd->add_option("--seed", cfg.seed, "PRNG seed");
  verify_cmd->add_option("--tol-algebraic", cfg.tol.algebraic, "tolerance for exact identities");
  verify_cmd->add_option("--tol-fd", cfg.tol.fd, "tolerance for finite-difference cross-checks");
  verify_cmd->add_option("--out", out_path, "JSON report path ('-' for stdout)");
  verify_cmd->add_option("--corrupt", cfg.corrupt, "negative-control knob");
  verify_cmd->add_option("--p", cfg.p, "p for the su(p,1) family (pair 'supq1')");
  verify_cmd->add_option("--threads", cfg.threads, "workers for per-sample parallelism");

  auto* cat_cmd = app.add_subcommand("catalog", "list or export built-in pairs");
  cat_cmd->require_subcommand(1);
  auto* list_cmd = cat_cmd->add_subcommand("list", "list catalog pairs");
  std::string export_name;
  bool export_gstar = false;
  auto* export_cmd = cat_cmd->add_subcommand("export", "export a catalog pair as JSON");
  export_cmd->add_option("name", export_name, "catalog name")->required();
  export_cmd->add_flag("--gstar", export_gstar, "export the dual algebra instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*verify_cmd) return verify(cfg, out_path);
    if (*list_cmd) {
      json j = json::array();
      for (const auto& n : plg::catalog_names()) {
        plg::CatalogEntry e = plg::catalog_entry(n);
        j.push_back({{"name", n}, {"p", e.p}, {"dim", e.mp.n()}, {"b_dim", e.mp.k()}, {"c_dim", e.mp.m()}});
      }
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*export_cmd) {
      plg::CatalogEntry e = plg::catalog_entry(export_name);
      std::cout << (export_gstar ? plg::lie_to_json(e.gstar) : export_pair(e)).dump(2) << "\n";
      return 0;
    }
  } catch (const plg::ImportError& e) {
    std::cerr << "import error: " << e.what() << "\n";
    return kExitImport;
  } catch (const plg::ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return 0;
}
