#pragma once

// Potential family, molecule catalog and unit system.
//
// Energies are in eV, lengths in angstrom and reduced masses in amu unless a
// natural-unit UnitSystem is in force, in which case every quantity is
// dimensionless with hbar = 1.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mie_ring::model {

/// Constants binding (eV, angstrom, amu) to the combination 2 mu / hbar^2.
struct UnitSystem {
  double amu_to_eV = 931.494028e6;  ///< rest energy of one amu, eV
  double hbar_c = 1973.29;          ///< eV * angstrom

  static UnitSystem physical() { return {}; }
  /// hbar = 1 with the mass entering directly.
  static UnitSystem natural() { return {1.0, 1.0}; }

  /// 2 mu / hbar^2 for a reduced mass in amu; eV^-1 angstrom^-2.
  double two_mu_over_hbar_sq(double mu) const { return 2.0 * mu * amu_to_eV / (hbar_c * hbar_c); }

  bool operator==(const UnitSystem&) const = default;
};

/// Two-power radial potential plus the ring term, general exponents j > k >= 1.
struct MiePotential {
  double De = 0.0;   ///< dissociation energy
  double re = 0.0;   ///< equilibrium bond length
  int j = 2;
  int k = 1;
  double eta = 0.0;  ///< ring strength
};

enum class Variant { kratzer_fues, modified_kratzer, custom };

/// V = a/r^2 - b/r + c + eta cos^2(theta) / (r^2 sin^2(theta)).
struct PotentialSpec {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double eta = 0.0;
  Variant variant = Variant::custom;
};

struct Molecule {
  std::string name;
  double De = 0.0;  ///< eV
  double re = 0.0;  ///< angstrom
  double mu = 0.0;  ///< amu

  bool operator==(const Molecule&) const = default;
};

/// Throws DomainError for r <= 0, for theta outside [0, pi], and for theta on
/// the axis when eta > 0.  ValidationError when j <= k or k < 1.
double eval_mie(const MiePotential& p, double r, double theta);

double eval_spec(const PotentialSpec& p, double r, double theta);

/// a = De re^2, b = 2 De re, c = 0 (Kratzer-Fues) or De (modified Kratzer).
/// Throws ValidationError for Variant::custom, which has no molecular mapping.
PotentialSpec from_molecule(const Molecule& m, Variant variant, double eta);

/// Custom spec; validates a >= 0, b >= 0, eta >= 0.
PotentialSpec make_spec(double a, double b, double c, double eta);

struct DimensionlessGroups {
  double two_mu_a = 0.0;   ///< 2 mu a / hbar^2, dimensionless
  double two_mu_b2 = 0.0;  ///< 2 mu b^2 / hbar^2, energy
};

DimensionlessGroups dimensionless_groups(const PotentialSpec& p, double mu, const UnitSystem& u);

std::string_view variant_name(Variant v);
/// Accepts "kratzer-fues", "modified", "modified-kratzer" and "custom".
Variant parse_variant(std::string_view text);

// ---------------------------------------------------------------------------
// Catalog

struct CatalogLoad {
  std::vector<Molecule> molecules;
  std::vector<std::string> warnings;
};

/// CSV with header `name,De_eV,re_angstrom,mu_amu`.  ParseError (with line
/// number) on malformed rows, ValidationError on non-positive constants.
CatalogLoad parse_molecules(std::istream& in);
CatalogLoad load_molecules(const std::filesystem::path& path);

/// The ten built-in transition-metal diatomics.
const std::vector<Molecule>& builtin_molecules();

/// Catalog named by MIE_RING_MOLECULES when set, otherwise the built-in rows.
CatalogLoad default_catalog();

std::optional<Molecule> find_molecule(const std::vector<Molecule>& catalog, std::string_view name);

}  // namespace mie_ring::model
