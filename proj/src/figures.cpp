#include <cmath>
#include <limits>
#include <numbers>

#include "mie_ring/app.hpp"
#include "mie_ring/errors.hpp"
#include "mie_ring/fisher.hpp"

namespace mie_ring::app {

namespace {

constexpr double kDe = 15.0;
constexpr double kRe = 0.8;
constexpr double kMu = 1.0;

const spectrum::QuantumNumbers kStates[] = {{0, 0, 0}, {1, 1, 0}, {3, 2, 1}};

struct Sweep {
  const char* parameter;
  double lo, hi;
  int points;
};

model::Molecule vary(const Sweep& s, double x) {
  model::Molecule m{"natural", kDe, kRe, kMu};
  const std::string p = s.parameter;
  if (p == "mu")
    m.mu = x;
  else if (p == "re")
    m.re = x;
  else
    m.De = x;
  return m;
}

double at(const Sweep& s, int i) { return s.lo + (s.hi - s.lo) * i / (s.points - 1); }

Table surface(const std::string& id, const model::Molecule& mol, model::Variant variant, double eta) {
  const auto spec = model::from_molecule(mol, variant, eta);
  Table t{id, {"molecule", "variant", "eta", "r", "theta", "V"}, {}};
  // r from re/2 to 4 re; theta symmetric about the equator so pi/2 is sampled
  for (int i = 0; i <= 70; ++i) {
    const double r = mol.re * (0.5 + 0.05 * i);
    for (int j = 0; j <= 36; ++j) {
      const double th = std::numbers::pi / 2 + (j - 18) * std::numbers::pi / 40;
      t.add_row({mol.name, std::string(model::variant_name(variant)), eta, r, th, model::eval_spec(spec, r, th)});
    }
  }
  return t;
}

Table energy_series(const std::string& id, const Sweep& s) {
  const auto u = model::UnitSystem::natural();
  Table t{id, {s.parameter, "eta", "n", "n_tilde", "m", "energy_modified", "energy_kratzer_fues"}, {}};
  for (const auto& q : kStates) {
    for (int i = 0; i < s.points; ++i) {
      const double x = at(s, i);
      const auto mol = vary(s, x);
      const double e_mk = spectrum::energy(model::from_molecule(mol, model::Variant::modified_kratzer, 10.0), mol.mu,
                                           q, u);
      const double e_kf = spectrum::energy(model::from_molecule(mol, model::Variant::kratzer_fues, 10.0), mol.mu, q,
                                           u);
      t.add_row({x, 10.0, (long long)q.n, (long long)q.n_tilde, (long long)q.m, e_mk, e_kf});
    }
  }
  return t;
}

Table fisher_series(const std::string& id, const Sweep& s) {
  const auto u = model::UnitSystem::natural();
  Table t{id,
          {s.parameter, "eta", "n", "n_tilde", "m", "fisher_modified", "fisher_kratzer_fues", "closed"},
          {}};
  for (double eta : {1.0, 10.0}) {
    for (const auto& q : kStates) {
      for (int i = 0; i < s.points; ++i) {
        const double x = at(s, i);
        const auto mol = vary(s, x);
        const auto mk = spectrum::derive_state(model::from_molecule(mol, model::Variant::modified_kratzer, eta),
                                               mol.mu, q, u);
        const auto kf =
            spectrum::derive_state(model::from_molecule(mol, model::Variant::kratzer_fues, eta), mol.mu, q, u);
        const double f_mk = fisher::fisher_total(mk, fisher::Mode::quadrature).total;
        const double f_kf = fisher::fisher_total(kf, fisher::Mode::quadrature).total;
        double closed = std::numeric_limits<double>::quiet_NaN();
        try {
          closed = fisher::fisher_total(kf, fisher::Mode::closed_form).total;
        } catch (const SingularParameterError&) {
        }
        t.add_row({x, eta, (long long)q.n, (long long)q.n_tilde, (long long)q.m, f_mk, f_kf, closed});
      }
    }
  }
  return t;
}

}  // namespace

RunResult run_figures(const RunConfig& c, const model::CatalogLoad& catalog) {
  model::Molecule mol;
  if (c.custom) {
    mol = *c.custom;
  } else {
    const std::string name = c.molecule.value_or("ScH");
    auto found = model::find_molecule(catalog.molecules, name);
    if (!found) throw ValidationError("molecule '" + name + "' is not in the catalog");
    mol = *found;
  }
  const double eta = c.eta.front();

  const Sweep mu{"mu", 0.5, 5.0, 46};
  const Sweep re{"re", 0.4, 3.0, 53};
  const Sweep de{"De", 5.0, 30.0, 51};

  RunResult out;
  out.tables.push_back(surface("fig1", mol, model::Variant::modified_kratzer, eta));
  out.tables.push_back(surface("fig2", mol, model::Variant::kratzer_fues, eta));
  out.tables.push_back(energy_series("fig3", mu));
  out.tables.push_back(energy_series("fig4", re));
  out.tables.push_back(energy_series("fig5", de));
  out.tables.push_back(fisher_series("fig6", mu));
  out.tables.push_back(fisher_series("fig7", re));
  out.tables.push_back(fisher_series("fig8", de));
  out.messages.push_back("figures: surfaces for " + mol.name + ", series in natural units (De=15, re=0.8, mu=1)");
  return out;
}

}  // namespace mie_ring::app
