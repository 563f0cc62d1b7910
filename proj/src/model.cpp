#include "mie_ring/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "mie_ring/errors.hpp"

namespace mie_ring::model {

namespace {

double ring_term(double eta, double r, double theta) {
  if (eta == 0.0) return 0.0;
  if (theta < 0.0 || theta > std::numbers::pi) throw DomainError("polar angle outside [0, pi]");
  const double s = std::sin(theta);
  if (theta == 0.0 || theta == std::numbers::pi || s == 0.0)
    throw DomainError("ring term is singular on the polar axis");
  const double c = std::cos(theta);
  return eta * c * c / (r * r * s * s);
}

void require_radius(double r) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& field, std::size_t line, const char* column) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || field.empty())
    throw ParseError(line, std::string("invalid number in column ") + column + ": '" + field + "'");
  return value;
}

}  // namespace

double eval_mie(const MiePotential& p, double r, double theta) {
  if (p.k < 1 || p.j <= p.k) throw ValidationError("Mie exponents require j > k >= 1");
  require_radius(r);
  const double x = p.re / r;
  const double jk = static_cast<double>(p.j - p.k);
  const double radial = p.De * (p.k / jk * std::pow(x, p.j) - p.j / jk * std::pow(x, p.k));
  return radial + ring_term(p.eta, r, theta);
}

double eval_spec(const PotentialSpec& p, double r, double theta) {
  require_radius(r);
  return p.a / (r * r) - p.b / r + p.c + ring_term(p.eta, r, theta);
}

PotentialSpec from_molecule(const Molecule& m, Variant variant, double eta) {
  if (!(m.De > 0.0 && m.re > 0.0 && m.mu > 0.0)) throw ValidationError("molecule constants must be positive");
  if (eta < 0.0) throw ValidationError("eta must be non-negative");
  PotentialSpec p;
  p.a = m.De * m.re * m.re;
  p.b = 2.0 * m.De * m.re;
  p.eta = eta;
  p.variant = variant;
  switch (variant) {
    case Variant::kratzer_fues:
      p.c = 0.0;
      break;
    case Variant::modified_kratzer:
      p.c = m.De;
      break;
    case Variant::custom:
      throw ValidationError("variant 'custom' has no molecular mapping");
  }
  return p;
}

PotentialSpec make_spec(double a, double b, double c, double eta) {
  if (a < 0.0 || b < 0.0 || eta < 0.0) throw ValidationError("potential requires a >= 0, b >= 0, eta >= 0");
  return PotentialSpec{a, b, c, eta, Variant::custom};
}

DimensionlessGroups dimensionless_groups(const PotentialSpec& p, double mu, const UnitSystem& u) {
  const double k = u.two_mu_over_hbar_sq(mu);
  return {k * p.a, k * p.b * p.b};
}

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::kratzer_fues:
      return "kratzer-fues";
    case Variant::modified_kratzer:
      return "modified";
    case Variant::custom:
      return "custom";
  }
  return "custom";
}

Variant parse_variant(std::string_view text) {
  if (text == "kratzer-fues") return Variant::kratzer_fues;
  if (text == "modified" || text == "modified-kratzer") return Variant::modified_kratzer;
  if (text == "custom") return Variant::custom;
  throw ValidationError("unknown variant '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------

CatalogLoad parse_molecules(std::istream& in) {
  CatalogLoad out;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (!header_seen) {
      if (fields != std::vector<std::string>{"name", "De_eV", "re_angstrom", "mu_amu"})
        throw ParseError(line_no, "expected header 'name,De_eV,re_angstrom,mu_amu'");
      header_seen = true;
      continue;
    }
    if (fields.size() != 4) throw ParseError(line_no, "expected 4 fields, found " + std::to_string(fields.size()));
    if (fields[0].empty()) throw ParseError(line_no, "empty molecule name");
    Molecule m{fields[0], parse_number(fields[1], line_no, "De_eV"), parse_number(fields[2], line_no, "re_angstrom"),
               parse_number(fields[3], line_no, "mu_amu")};
    if (!(m.De > 0.0 && m.re > 0.0 && m.mu > 0.0))
      throw ValidationError("line " + std::to_string(line_no) + ": constants of '" + m.name + "' must be positive");
    out.molecules.push_back(std::move(m));
  }
  if (out.molecules.empty()) out.warnings.emplace_back("molecule catalog is empty");
  return out;
}

CatalogLoad load_molecules(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open molecule catalog '" + path.string() + "'");
  return parse_molecules(in);
}

const std::vector<Molecule>& builtin_molecules() {
  static const std::vector<Molecule> catalog = {
      {"ScH", 2.25, 1.776, 0.986040},  {"TiH", 2.05, 1.781, 0.987371}, {"VH", 2.33, 1.719, 0.988005},
      {"CrH", 2.13, 1.694, 0.988976},  {"MnH", 1.67, 1.753, 0.989984}, {"CuLi", 1.74, 2.310, 6.259494},
      {"TiC", 2.66, 1.790, 9.606079},  {"NiC", 2.76, 1.621, 9.974265}, {"ScN", 4.56, 1.768, 10.682771},
      {"ScF", 5.85, 1.794, 13.358942},
  };
  return catalog;
}

CatalogLoad default_catalog() {
  if (const char* path = std::getenv("MIE_RING_MOLECULES"); path != nullptr && *path != '\0')
    return load_molecules(path);
  return CatalogLoad{builtin_molecules(), {}};
}

std::optional<Molecule> find_molecule(const std::vector<Molecule>& catalog, std::string_view name) {
  const auto it = std::find_if(catalog.begin(), catalog.end(), [&](const Molecule& m) { return m.name == name; });
  if (it == catalog.end()) return std::nullopt;
  return *it;
}

}  // namespace mie_ring::model
