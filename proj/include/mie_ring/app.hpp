#pragma once

// Command layer behind the mie-ring executable: run configuration, tabular
// output, embedded reference values and the six commands.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mie_ring/model.hpp"
#include "mie_ring/spectrum.hpp"

namespace mie_ring::app {

enum class Command { spectrum, fisher, density, verify, tables, figures };
enum class OutputFormat { csv, json };

struct IntRange {
  int lo = 0;
  int hi = 0;

  bool operator==(const IntRange&) const = default;
};

/// "a..b" or a single integer.  Throws ValidationError on malformed text or b < a.
IntRange parse_range(std::string_view text);
/// Comma-separated non-negative reals.
std::vector<double> parse_eta_list(std::string_view text);

struct RunConfig {
  Command command = Command::spectrum;
  std::optional<std::string> molecule;
  std::optional<model::Molecule> custom;  ///< from --De/--re/--mu
  IntRange n{0, 0};
  IntRange n_tilde{0, 0};
  IntRange m{0, 0};
  std::vector<double> eta{0.0};
  std::vector<model::Variant> variants{model::Variant::kratzer_fues, model::Variant::modified_kratzer};
  bool natural_units = false;
  OutputFormat format = OutputFormat::csv;
  std::optional<std::filesystem::path> out;

  std::vector<std::string> tables{"T2", "T3", "T4"};
  int states = 0;  ///< verify: cap on states per table (0 = all)
  int r_points = 60;
  int theta_points = 60;
  /// verify test hook: relative error folded into every radial normalization constant.
  double inject_norm_error = 0.0;
};

/// Rejects empty ranges, negative eta, conflicting molecule selectors.
void validate(const RunConfig& config);

// ---------------------------------------------------------------------------
// Tables

using Cell = std::variant<std::monostate, std::string, long long, double, bool>;

struct Table {
  std::string id;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// 12 significant digits, "nan"/"inf" for non-finite values.
std::string format_number(double value);

void write_csv(const Table& table, std::ostream& out);
/// A JSON array of objects keyed by column name (one table) ...
void write_json(const Table& table, std::ostream& out);
/// ... or an object keyed by table id.
void write_json(const std::vector<Table>& tables, std::ostream& out);

// ---------------------------------------------------------------------------
// Reference values

struct EnergyReference {
  std::string molecule;
  spectrum::QuantumNumbers qn;
  double eta = 0.0;
  double kf_labelled = 0.0;  ///< value printed under the Kratzer-Fues header
  double mk_labelled = 0.0;  ///< value printed under the modified-Kratzer header
};

struct FisherReference {
  std::string molecule;
  spectrum::QuantumNumbers qn;
  double eta = 0.0;
  double value = 0.0;
};

const std::vector<EnergyReference>& energy_reference();
const std::vector<FisherReference>& fisher_reference();

/// Hydrides (ScH .. MnH) belong to T2, the rest to T3.
std::string energy_table_of(std::string_view molecule);

/// The six (n, n_tilde, m) rows tabulated for every molecule.
const std::vector<spectrum::QuantumNumbers>& tabulated_states();

// ---------------------------------------------------------------------------
// Commands

struct RunResult {
  std::vector<Table> tables;
  int exit_code = 0;
  std::vector<std::string> messages;  ///< diagnostics for stderr
};

RunResult run_spectrum(const RunConfig& config, const model::CatalogLoad& catalog);
RunResult run_fisher(const RunConfig& config, const model::CatalogLoad& catalog);
RunResult run_density(const RunConfig& config, const model::CatalogLoad& catalog);
RunResult run_tables(const RunConfig& config, const model::CatalogLoad& catalog);
/// One table per figure (fig1 .. fig8).
RunResult run_figures(const RunConfig& config, const model::CatalogLoad& catalog);
RunResult run_verify(const RunConfig& config, const model::CatalogLoad& catalog);

/// Dispatches on config.command and writes the result: to `out` when no
/// path is configured, otherwise to the path (figures and multi-table runs
/// treat the path as a directory).  Returns the process exit code.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace mie_ring::app
