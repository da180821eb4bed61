#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cmctori/bounds.hpp"
#include "cmctori/spectrum.hpp"
#include "cmctori/surface.hpp"

#include "json.hpp"

namespace cmctori {

inline constexpr const char* kSchemaVersion = "1.0.0";

struct AnalysisOptions {
  int modes = 512;            // Galerkin truncation N
  int n_samples = 2048;       // potential sample count (power of two)
  double closure_tol = 5e-2;  // per-period angle tolerance for closure_search
  int k_max = 64;
  double spectral_tol = 1e-6;
  double degeneracy_tol = 5e-3;
  bool refine = false;        // re-solve the closing condition before analysis
};

struct Timings {
  double closure_ms = 0.0;
  double spectrum_ms = 0.0;
  double total_ms = 0.0;
};

struct AnalysisRecord {
  std::string schema_version = kSchemaVersion;
  double input_s = 0.0;
  double input_t = 0.0;
  bool refined = false;
  SurfaceParams params;
  ClosureData closure;
  GeometricSummary geom;
  std::vector<double> eigenvalues;
  int truncation = 0;
  double convergence_gap = 0.0;
  double kernel_residual = 0.0;   // NaN for flat surfaces
  bool minus_one_pair = false;
  IndexReport index;
  BoundReport bounds;             // non-flat only
  std::optional<FlatResult> flat; // flat only
  Timings timings;
};

// Full pipeline: params -> geometry -> closure (optionally refined) ->
// potential -> 1-D spectrum -> index assembly -> bound comparison.
// Throws std::runtime_error with a descriptive message when the surface
// does not close within tolerance or the spectrum fails to converge.
AnalysisRecord analyze_surface(double s, double t, const AnalysisOptions& opt);

nlohmann::json to_json(const AnalysisRecord& r);
AnalysisRecord record_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Built-in catalog of the fifteen closed non-flat survey surfaces (A..O)
// together with their expected results, used by the `table` command and the
// regression suite.

struct CatalogRow {
  char name;
  double s, t;
  int k, w;
  double lambda10;           // expected first eigenvalue (two decimals)
  int below, between;        // expected counts of lambda < -1, in (-1, 0)
  int index;                 // expected Morse index
  int base_bound;            // max(5, 2k+1)
  std::optional<int> improved_bound;
};

const std::array<CatalogRow, 15>& surface_catalog();

struct TableCell {
  double lambda10 = 0.0;
  int below = 0, between = 0, index = 0;
  int base_bound = 0;
  std::optional<int> improved_bound;
  bool lambda_ok = false, counts_ok = false, bounds_ok = false;
  std::string error;  // non-empty when the row failed to analyze
};

struct TableResult {
  std::vector<AnalysisRecord> records;
  std::vector<TableCell> cells;
  bool all_ok = false;
};

// Analyzes the selected catalog rows (indices into surface_catalog()) and
// diffs the results against the expected columns.  Row failures are
// recorded per-cell; the run continues.
TableResult run_table(const std::vector<int>& rows, const AnalysisOptions& opt);

std::string table_markdown(const TableResult& tr, const std::vector<int>& rows);
std::string spectrum_csv(const AnalysisRecord& r);

}  // namespace cmctori
