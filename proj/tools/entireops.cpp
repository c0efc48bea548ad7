// Command line front end.  Exit codes: 0 the run passed (or the command is
// informational and succeeded), 1 a checked hypothesis failed, 2 the
// evidence was inconclusive, 3 usage, configuration, or runtime error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "entireops/entireops.hpp"

namespace {

int run(const std::string& command, const std::string& config_path,
        const std::string& out_dir, int nmax_override, int kmax_override, bool quiet) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot open config file '" << config_path << "'\n";
    return 3;
  }
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(in);
  } catch (const std::exception& e) {
    std::cerr << "error: config is not valid JSON: " << e.what() << "\n";
    return 3;
  }
  entireops::ExperimentConfig cfg;
  try {
    cfg = entireops::config_from_json(doc);
  } catch (const entireops::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  if (nmax_override > 0) cfg.n_max = nmax_override;
  if (kmax_override >= 0) cfg.k_max = kmax_override;

  entireops::RunReport rep;
  try {
    rep = entireops::run_command(command, cfg);
  } catch (const entireops::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }

  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
      std::cerr << "error: cannot create output directory '" << out_dir << "'\n";
      return 3;
    }
    const std::filesystem::path base(out_dir);
    {
      std::ofstream out(base / "report.json");
      out << rep.doc.dump(2) << "\n";
      if (!out) {
        std::cerr << "error: cannot write report.json\n";
        return 3;
      }
    }
    for (const auto& [name, content] : rep.csv_files) {
      std::ofstream out(base / name);
      out << content;
      if (!out) {
        std::cerr << "error: cannot write " << name << "\n";
        return 3;
      }
    }
  }

  if (!quiet) {
    std::cout << command << " '" << cfg.label << "'\n";
    for (const auto& line : rep.summary) std::cout << "  " << line << "\n";
    if (!out_dir.empty())
      std::cout << "  report: " << (std::filesystem::path(out_dir) / "report.json").string()
                << " (+" << rep.csv_files.size() << " csv)\n";
  }
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for convolution-operator families on entire functions"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int nmax_override = -1, kmax_override = -1;
  bool quiet = false;

  static const std::map<std::string, std::string> descriptions = {
      {"check", "verify the five operator-family hypotheses on a given annulus"},
      {"check32", "ratio route: pick radii from scalar ratios, then run the full check"},
      {"borel", "transform targets and reconstruct them by contour integration"},
      {"apply", "apply family members to the target polynomials"},
      {"inverse", "build right inverses and measure roundtrip residuals"},
      {"zeros", "certify an annulus free of family zeros by winding counts"},
      {"bg", "run the series convergence ledgers and the identity check"},
      {"orbit", "sample orbits and estimate hitting densities"},
  };
  for (const std::string& name : entireops::command_names()) {
    CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
    sub->add_option("--config", config_path, "experiment configuration JSON")->required();
    sub->add_option("--out", out_dir, "directory for report.json and csv tables");
    sub->add_option("--nmax", nmax_override, "override n_max from the config");
    sub->add_option("--kmax", kmax_override, "override k_max from the config");
    sub->add_flag("--quiet", quiet, "suppress the stdout summary");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  return run(command, config_path, out_dir, nmax_override, kmax_override, quiet);
}
