#include <iostream>

#include <CLI11.hpp>

#include "mie_ring/app.hpp"
#include "mie_ring/errors.hpp"

namespace {

using mie_ring::app::Command;

struct RawOptions {
  std::string molecule;
  double De = 0.0, re = 0.0, mu = 0.0;
  std::string n = "0", n_tilde = "0", m = "0";
  std::string eta = "0";
  std::string variant = "both";
  std::string units = "physical";
  std::string format = "csv";
  std::string out;
  std::vector<std::string> tables;
  int states = 0;
  int r_points = 60;
  int theta_points = 60;
  double inject_norm_error = 0.0;
};

void add_options(CLI::App* sub, RawOptions& o) {
  auto* mol = sub->add_option("--molecule", o.molecule, "catalog molecule name");
  auto* de = sub->add_option("--De", o.De, "dissociation energy (eV, or natural units)");
  auto* re = sub->add_option("--re", o.re, "equilibrium separation (angstrom)");
  auto* mu = sub->add_option("--mu", o.mu, "reduced mass (amu)");
  de->needs(re, mu);
  re->needs(de, mu);
  mu->needs(de, re);
  mol->excludes(de, re, mu);
  sub->add_option("--n", o.n, "radial quantum numbers, a..b");
  sub->add_option("--ntilde", o.n_tilde, "angular quantum numbers, a..b");
  sub->add_option("--m", o.m, "magnetic quantum numbers, a..b");
  sub->add_option("--eta", o.eta, "comma-separated ring strengths");
  sub->add_option("--variant", o.variant)->check(CLI::IsMember({"kratzer-fues", "modified", "both"}));
  sub->add_option("--units", o.units)->check(CLI::IsMember({"physical", "natural"}));
  sub->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out, "output file (directory for tables/figures)");
}

mie_ring::app::RunConfig to_config(Command cmd, const RawOptions& o) {
  namespace app = mie_ring::app;
  app::RunConfig c;
  c.command = cmd;
  if (!o.molecule.empty()) c.molecule = o.molecule;
  if (o.De != 0.0 || o.re != 0.0 || o.mu != 0.0) c.custom = mie_ring::model::Molecule{"custom", o.De, o.re, o.mu};
  c.n = app::parse_range(o.n);
  c.n_tilde = app::parse_range(o.n_tilde);
  c.m = app::parse_range(o.m);
  c.eta = app::parse_eta_list(o.eta);
  if (o.variant == "both")
    c.variants = {mie_ring::model::Variant::kratzer_fues, mie_ring::model::Variant::modified_kratzer};
  else
    c.variants = {mie_ring::model::parse_variant(o.variant)};
  c.natural_units = o.units == "natural";
  c.format = o.format == "json" ? app::OutputFormat::json : app::OutputFormat::csv;
  if (!o.out.empty()) c.out = o.out;
  if (!o.tables.empty()) c.tables = o.tables;
  c.states = o.states;
  c.r_points = o.r_points;
  c.theta_points = o.theta_points;
  c.inject_norm_error = o.inject_norm_error;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Bound states and Fisher information for ring-shaped Kratzer potentials"};
  cli.require_subcommand(1);
  RawOptions o;

  const std::pair<const char*, const char*> commands[] = {
      {"spectrum", "energies and derived state parameters"},
      {"fisher", "Fisher information, closed form and quadrature"},
      {"density", "probability density on an (r, theta) grid"},
      {"verify", "run the numerical cross-checks"},
      {"tables", "recompute the reference tables"},
      {"figures", "emit figure data series"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    auto* sub = cli.add_subcommand(name, help);
    add_options(sub, o);
    subs.push_back(sub);
  }
  subs[4]->add_option("--table", o.tables, "T2, T3 and/or T4")->delimiter(',');
  subs[3]->add_option("--states", o.states, "tabulated states per molecule (0 = all)");
  subs[3]->add_option("--inject-norm-error", o.inject_norm_error)->group("");
  subs[2]->add_option("--r-points", o.r_points);
  subs[2]->add_option("--theta-points", o.theta_points);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : 2;
  }

  Command cmd = Command::spectrum;
  for (std::size_t i = 0; i < subs.size(); ++i)
    if (subs[i]->parsed()) cmd = static_cast<Command>(i);

  mie_ring::app::RunConfig config;
  try {
    config = to_config(cmd, o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return mie_ring::app::execute(config, std::cout, std::cerr);
}
