#include "cmctori/analysis.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cmctori {

namespace {

using clock_t_ = std::chrono::steady_clock;

double ms_since(clock_t_::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_t_::now() - t0).count();
}

// Brackets for re-solving the closing condition near a published parameter
// value.  For s t > 0 the closing variable is t, for s t < 0 it is s; the
// bracket is grown until the residual changes sign, staying inside the
// admissible domain.
SurfaceParams refine_closing(double s, double t, int k, int w) {
  if (t > 0.0) {
    const double lower_limit = 0.5 - s + 1e-9;  // (s+t)^2 > 1/4 needs s+t > 1/2
    for (double span = 0.02 * t + 5e-4; span < 0.6 * t; span *= 2.0) {
      const double lo = std::max(t - span, lower_limit);
      const double hi = t + span;
      try {
        return solve_closing(s, k, w, lo, hi);
      } catch (const std::invalid_argument&) {
        continue;  // no sign change yet; widen
      }
    }
    throw std::runtime_error("refine: no closing t near the requested value");
  }
  for (double span = 0.02 * s; span < 0.2 * s; span *= 2.0) {
    try {
      return solve_closing_in_s(t, k, w, s - span, s + span);
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
  throw std::runtime_error("refine: no closing s near the requested value");
}

}  // namespace

AnalysisRecord analyze_surface(double s, double t, const AnalysisOptions& opt) {
  const auto t_start = clock_t_::now();
  AnalysisRecord r;
  r.input_s = s;
  r.input_t = t;

  r.params = SurfaceParams::from_st(s, t);
  r.geom = geometry(r.params);

  const auto t_closure = clock_t_::now();
  if (r.params.flat()) {
    r.closure = flat_closure(r.params);
  } else {
    auto found = closure_search(r.params, opt.k_max, opt.closure_tol);
    if (!found)
      throw std::runtime_error(
          "closure not found: the profile does not close within tolerance");
    r.closure = *found;
    if (opt.refine) {
      r.params = refine_closing(s, t, r.closure.k, r.closure.w);
      r.refined = true;
      r.geom = geometry(r.params);
      auto refined = closure_search(r.params, opt.k_max, opt.closure_tol);
      if (!refined || refined->k != r.closure.k || refined->w != r.closure.w)
        throw std::runtime_error("refine changed the closure class");
      r.closure = *refined;
    }
  }
  r.timings.closure_ms = ms_since(t_closure);

  const auto t_spec = clock_t_::now();
  const Potential q = build_potential(r.params, r.closure, opt.n_samples);
  const Spectrum1D sp = solve_spectrum_1d(q, opt.modes, opt.spectral_tol);
  r.eigenvalues = sp.eigenvalues;
  r.truncation = sp.truncation;
  r.convergence_gap = sp.convergence_gap;
  r.index = assemble_index(sp, opt.degeneracy_tol);
  r.minus_one_pair = verify_minus_one_pair(sp, opt.degeneracy_tol);
  r.kernel_residual = r.params.flat()
                          ? std::numeric_limits<double>::quiet_NaN()
                          : kernel_residual_u0(r.params, r.closure, q);
  r.timings.spectrum_ms = ms_since(t_spec);

  if (r.params.flat()) {
    r.flat = flat_index(r.params.H);
  } else {
    r.bounds = verify_surface(r.params, r.closure, r.index);
  }
  r.timings.total_ms = ms_since(t_start);
  return r;
}

// ---------------------------------------------------------------------------
// JSON serialization.

nlohmann::json to_json(const AnalysisRecord& r) {
  using nlohmann::json;
  json j;
  j["schema_version"] = r.schema_version;
  j["inputs"] = {{"s", r.input_s}, {"t", r.input_t}, {"refined", r.refined}};
  j["params"] = {{"s", r.params.s},     {"t", r.params.t},
                 {"gamma", r.params.gamma}, {"tau", r.params.tau},
                 {"H", r.params.H}};
  j["closure"] = {{"k", r.closure.k},
                  {"w", r.closure.w},
                  {"x0", r.closure.x0},
                  {"x1", r.closure.x1},
                  {"angle_per_period", r.closure.angle_per_period},
                  {"residual", r.closure.residual}};
  j["geometry"] = {{"class", to_string(r.geom.cls)},
                   {"r_plus", r.geom.r_plus},
                   {"r_minus", r.geom.r_minus},
                   {"mu_plus", r.geom.mu_plus},
                   {"mu_minus", r.geom.mu_minus}};
  j["spectrum"] = {{"eigenvalues", r.eigenvalues},
                   {"truncation", r.truncation},
                   {"convergence_gap", r.convergence_gap},
                   {"kernel_residual",
                    std::isnan(r.kernel_residual) ? json() : json(r.kernel_residual)},
                   {"minus_one_pair", r.minus_one_pair}};
  j["index"] = {{"below_minus_one", r.index.below_minus_one},
                {"between", r.index.between},
                {"at_minus_one", r.index.at_minus_one},
                {"at_zero", r.index.at_zero},
                {"index", r.index.index},
                {"nullity", r.index.nullity},
                {"index_shortcut", r.index.index_shortcut},
                {"shortcut_agrees", r.index.shortcut_agrees},
                {"tol", r.index.tol},
                {"warnings", r.index.warnings}};
  if (r.flat) {
    j["bounds"] = {{"flat", true},
                   {"alpha", r.flat->alpha},
                   {"b", r.flat->b},
                   {"index", r.flat->index},
                   {"nullity", r.flat->nullity}};
  } else {
    json b = {{"flat", false},
              {"class", to_string(r.bounds.cls)},
              {"base_bound", r.bounds.base_bound},
              {"nullity_bound", r.bounds.nullity_bound},
              {"satisfied", r.bounds.satisfied}};
    b["improved_bound"] =
        r.bounds.improved_bound ? nlohmann::json(*r.bounds.improved_bound)
                                : nlohmann::json();
    j["bounds"] = b;
  }
  j["timings"] = {{"closure_ms", r.timings.closure_ms},
                  {"spectrum_ms", r.timings.spectrum_ms},
                  {"total_ms", r.timings.total_ms}};
  return j;
}

AnalysisRecord record_from_json(const nlohmann::json& j) {
  AnalysisRecord r;
  r.schema_version = j.at("schema_version").get<std::string>();
  r.input_s = j.at("inputs").at("s").get<double>();
  r.input_t = j.at("inputs").at("t").get<double>();
  r.refined = j.at("inputs").at("refined").get<bool>();
  const auto& p = j.at("params");
  r.params.s = p.at("s").get<double>();
  r.params.t = p.at("t").get<double>();
  r.params.gamma = p.at("gamma").get<double>();
  r.params.tau = p.at("tau").get<double>();
  r.params.H = p.at("H").get<double>();
  const auto& c = j.at("closure");
  r.closure.k = c.at("k").get<int>();
  r.closure.w = c.at("w").get<int>();
  r.closure.x0 = c.at("x0").get<double>();
  r.closure.x1 = c.at("x1").get<double>();
  r.closure.angle_per_period = c.at("angle_per_period").get<double>();
  r.closure.residual = c.at("residual").get<double>();
  const auto& sp = j.at("spectrum");
  r.eigenvalues = sp.at("eigenvalues").get<std::vector<double>>();
  r.truncation = sp.at("truncation").get<int>();
  r.convergence_gap = sp.at("convergence_gap").get<double>();
  r.kernel_residual = sp.at("kernel_residual").is_null()
                          ? std::numeric_limits<double>::quiet_NaN()
                          : sp.at("kernel_residual").get<double>();
  r.minus_one_pair = sp.at("minus_one_pair").get<bool>();
  const auto& ix = j.at("index");
  r.index.below_minus_one = ix.at("below_minus_one").get<int>();
  r.index.between = ix.at("between").get<int>();
  r.index.at_minus_one = ix.at("at_minus_one").get<int>();
  r.index.at_zero = ix.at("at_zero").get<int>();
  r.index.index = ix.at("index").get<int>();
  r.index.nullity = ix.at("nullity").get<int>();
  r.index.index_shortcut = ix.at("index_shortcut").get<int>();
  r.index.shortcut_agrees = ix.at("shortcut_agrees").get<bool>();
  r.index.tol = ix.at("tol").get<double>();
  r.index.warnings = ix.at("warnings").get<std::vector<std::string>>();
  return r;
}

// ---------------------------------------------------------------------------
// Catalog.

const std::array<CatalogRow, 15>& surface_catalog() {
  static const std::array<CatalogRow, 15> rows = {{
      {'A', 0.4078, 0.1583, 2, 1, -1.28, 1, 1, 6, 5, std::nullopt},
      {'B', 0.4392, 0.0811, 3, 1, -1.08, 1, 3, 8, 7, std::nullopt},
      {'C', 0.4352, 0.0757, 4, 1, -1.04, 1, 5, 10, 9, std::nullopt},
      {'D', 0.4275, 0.0796, 5, 1, -1.02, 1, 7, 12, 11, std::nullopt},
      {'E', 0.4431, 0.0881, 5, 2, -1.12, 3, 5, 16, 11, 15},
      {'F', 0.4561, 0.0559, 7, 2, -1.04, 3, 9, 20, 15, 19},
      {'G', 0.4738, 0.0527, 7, 3, -1.11, 5, 7, 24, 15, 23},
      {'H', 0.4829, 0.0408, 9, 4, -1.09, 7, 9, 32, 19, 31},
      {'I', 0.5112, -0.050, 3, 1, -1.26, 3, 1, 12, 7, 11},
      {'J', 0.5061, -0.089, 3, 1, -1.40, 3, 1, 12, 7, 11},
      {'K', 0.5291, -0.068, 4, 1, -1.43, 5, 1, 18, 9, 13},
      {'L', 0.5256, -0.155, 4, 1, -1.85, 5, 1, 18, 9, 13},
      {'M', 0.5501, -0.095, 5, 1, -1.66, 7, 1, 24, 11, 15},
      {'N', 0.5199, -0.087, 7, 2, -1.47, 9, 3, 32, 15, 19},
      {'O', 0.5210, -0.051, 11, 3, -1.30, 15, 5, 52, 23, 27},
  }};
  return rows;
}

TableResult run_table(const std::vector<int>& rows, const AnalysisOptions& opt) {
  TableResult tr;
  tr.all_ok = true;
  const auto& catalog = surface_catalog();
  for (int idx : rows) {
    const CatalogRow& row = catalog.at(idx);
    TableCell cell;
    AnalysisRecord rec;
    try {
      rec = analyze_surface(row.s, row.t, opt);
      cell.lambda10 = rec.eigenvalues.at(0);
      cell.below = rec.index.below_minus_one;
      cell.between = rec.index.between;
      cell.index = rec.index.index;
      cell.base_bound = rec.bounds.base_bound;
      cell.improved_bound = rec.bounds.improved_bound;
      cell.lambda_ok = std::fabs(cell.lambda10 - row.lambda10) <= 2e-2;
      cell.counts_ok = cell.below == row.below && cell.between == row.between &&
                       cell.index == row.index;
      cell.bounds_ok = cell.base_bound == row.base_bound &&
                       cell.improved_bound == row.improved_bound;
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
    if (!(cell.lambda_ok && cell.counts_ok && cell.bounds_ok)) tr.all_ok = false;
    tr.records.push_back(std::move(rec));
    tr.cells.push_back(std::move(cell));
  }
  return tr;
}

std::string table_markdown(const TableResult& tr, const std::vector<int>& rows) {
  std::ostringstream os;
  os << "| surface | s | t | k | w | lambda10 | n(<-1) | n(-1,0) | index | "
        "bound | improved | status |\n";
  os << "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  const auto& catalog = surface_catalog();
  for (size_t i = 0; i < rows.size(); ++i) {
    const CatalogRow& row = catalog.at(rows[i]);
    const TableCell& c = tr.cells[i];
    os << "| " << row.name << " | " << row.s << " | " << row.t << " | "
       << row.k << " | " << row.w << " | ";
    if (!c.error.empty()) {
      os << "error: " << c.error << " |\n";
      continue;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", c.lambda10);
    os << buf << " | " << c.below << " | " << c.between << " | " << c.index
       << " | " << c.base_bound << " | ";
    if (c.improved_bound)
      os << *c.improved_bound;
    else
      os << "-";
    os << " | "
       << ((c.lambda_ok && c.counts_ok && c.bounds_ok) ? "ok" : "MISMATCH")
       << " |\n";
  }
  return os.str();
}

std::string spectrum_csv(const AnalysisRecord& r) {
  std::ostringstream os;
  os << "j,lambda_j0\n";
  for (size_t j = 0; j < r.eigenvalues.size(); ++j) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%zu,%.12g\n", j + 1, r.eigenvalues[j]);
    os << buf;
  }
  return os.str();
}

}  // namespace cmctori
