// Regenerates the canonical fixture files: make_fixtures <output-dir>.
// Fixtures are committed; rerun after changing configuration or expression
// serialization so the files stay print-canonical.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "entireops/entireops.hpp"

using namespace entireops;

namespace {

void write(const std::filesystem::path& dir, const std::string& name,
           const nlohmann::ordered_json& j) {
  std::ofstream out(dir / name);
  out << j.dump(2) << "\n";
  if (!out) {
    std::cerr << "cannot write " << name << "\n";
    std::exit(1);
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <output-dir>\n";
    return 2;
  }
  const std::filesystem::path dir(argv[1]);
  std::filesystem::create_directories(dir);

  {
    nlohmann::ordered_json cat;
    cat["derivative_powers"] = catalog::derivative_powers().to_json();
    cat["translation_powers"] = catalog::translation_powers().to_json();
    cat["z_plus_exp_ninth"] = catalog::z_plus_exp_ninth().to_json();
    cat["scaled_shift_powers"] = catalog::scaled_shift_powers().to_json();
    cat["mixed_5n_9n"] = catalog::mixed_5n_9n().to_json();
    write(dir, "catalog.json", cat);
  }
  {
    ExperimentConfig c;
    c.label = "dn";
    c.sequence = catalog::derivative_powers();
    c.annulus = Annulus{0.5, 2.0, 2.0};
    c.n_max = 50;
    c.k_max = 20;
    write(dir, "dn.json", config_to_json(c));
  }
  {
    ExperimentConfig c;
    c.label = "mixed";
    c.sequence = catalog::mixed_5n_9n();
    c.annulus = Annulus{1.0 / 15.0, 1.0, 1.0};
    c.n_max = 50;
    c.k_max = 20;
    write(dir, "mixed.json", config_to_json(c));
  }
  {
    ExperimentConfig c;
    c.label = "zexp9";
    c.phi = catalog::z_plus_exp_ninth();
    c.scalars = SeqSpec::log_shift();
    c.annulus = Annulus{0.5, 2.0, 2.0};
    c.n_max = 80;
    c.k_max = 20;
    write(dir, "zexp9_check32.json", config_to_json(c));
  }
  {
    ExperimentConfig c;
    c.label = "dn-bad-e";
    c.sequence = catalog::derivative_powers();
    c.annulus = Annulus{1.0, 1.0, 0.5};
    c.n_max = 40;
    c.k_max = 10;
    write(dir, "dn_bad_e.json", config_to_json(c));
  }
  {
    ExperimentConfig c;
    c.label = "factorial";
    c.phi = FunctionExpr::z();
    std::vector<cplx> items;
    double f = 1.0;
    for (int n = 1; n <= 80; ++n) {
      f *= static_cast<double>(n);
      items.emplace_back(f, 0.0);
    }
    c.scalars = SeqSpec::list(items);
    c.n_max = 60;
    c.k_max = 10;
    write(dir, "factorial_scalars.json", config_to_json(c));
  }
  std::cout << "fixtures written to " << dir.string() << "\n";
  return 0;
}
