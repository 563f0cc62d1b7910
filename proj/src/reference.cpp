#include <algorithm>
#include <charconv>
#include <sstream>
#include <string>

#include "mie_ring/app.hpp"
#include "mie_ring/errors.hpp"

namespace mie_ring::app {

namespace detail {
extern const char* const kEnergyReferenceCsv;
extern const char* const kFisherReferenceCsv;
}  // namespace detail

namespace {

std::vector<std::vector<std::string>> data_rows(const char* text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    out.push_back(std::move(fields));
  }
  return out;
}

spectrum::QuantumNumbers qn_of(const std::vector<std::string>& f) {
  return {std::stoi(f[1]), std::stoi(f[2]), std::stoi(f[3])};
}

double to_double(std::string_view text, const char* what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ValidationError(std::string("invalid ") + what + ": '" + std::string(text) + "'");
  return v;
}

int to_int(std::string_view text, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ValidationError(std::string("invalid ") + what + ": '" + std::string(text) + "'");
  return v;
}

}  // namespace

const std::vector<EnergyReference>& energy_reference() {
  static const std::vector<EnergyReference> rows = [] {
    std::vector<EnergyReference> out;
    for (const auto& f : data_rows(detail::kEnergyReferenceCsv))
      out.push_back({f[0], qn_of(f), std::stod(f[4]), std::stod(f[5]), std::stod(f[6])});
    return out;
  }();
  return rows;
}

const std::vector<FisherReference>& fisher_reference() {
  static const std::vector<FisherReference> rows = [] {
    std::vector<FisherReference> out;
    for (const auto& f : data_rows(detail::kFisherReferenceCsv))
      out.push_back({f[0], qn_of(f), std::stod(f[4]), std::stod(f[5])});
    return out;
  }();
  return rows;
}

std::string energy_table_of(std::string_view molecule) {
  static const std::string hydrides[] = {"ScH", "TiH", "VH", "CrH", "MnH"};
  return std::find(std::begin(hydrides), std::end(hydrides), molecule) != std::end(hydrides) ? "T2" : "T3";
}

const std::vector<spectrum::QuantumNumbers>& tabulated_states() {
  static const std::vector<spectrum::QuantumNumbers> rows = {{0, 0, 0}, {1, 1, 0}, {3, 2, 1},
                                                             {3, 3, 2}, {5, 4, 3}, {5, 5, 4}};
  return rows;
}

// ---------------------------------------------------------------------------

IntRange parse_range(std::string_view text) {
  const auto dots = text.find("..");
  IntRange r;
  if (dots == std::string_view::npos) {
    r.lo = r.hi = to_int(text, "range");
  } else {
    r.lo = to_int(text.substr(0, dots), "range start");
    r.hi = to_int(text.substr(dots + 2), "range end");
  }
  if (r.hi < r.lo) throw ValidationError("empty range '" + std::string(text) + "'");
  return r;
}

std::vector<double> parse_eta_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    const double v = to_double(piece, "eta");
    if (v < 0.0) throw ValidationError("eta must be non-negative");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw ValidationError("empty eta list");
  return out;
}

void validate(const RunConfig& c) {
  if (c.molecule && c.custom) throw ValidationError("--molecule conflicts with --De/--re/--mu");
  for (const IntRange* r : {&c.n, &c.n_tilde})
    if (r->lo < 0 || r->hi < r->lo) throw ValidationError("quantum-number ranges must be non-empty and non-negative");
  if (c.m.hi < c.m.lo) throw ValidationError("m range is empty");
  if (c.eta.empty()) throw ValidationError("eta list is empty");
  for (double e : c.eta)
    if (e < 0.0) throw ValidationError("eta must be non-negative");
  if (c.variants.empty()) throw ValidationError("no variant selected");
  if (c.custom && !(c.custom->De > 0.0 && c.custom->re > 0.0 && c.custom->mu > 0.0))
    throw ValidationError("--De, --re and --mu must be positive");
  if (c.states < 0) throw ValidationError("--states must be non-negative");
  if (c.r_points < 2 || c.theta_points < 2) throw ValidationError("density grids need at least 2 points");
  for (const auto& t : c.tables)
    if (t != "T2" && t != "T3" && t != "T4") throw ValidationError("unknown table '" + t + "'");
}

}  // namespace mie_ring::app
