#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <random>

#include "cli_support.hpp"

using nlohmann::json;
using namespace sbcli;

namespace {

struct Globals {
  std::string out;
  std::size_t threads = 0;
  double tol = 1e-10;
  unsigned long long seed = 12345;
};

json spectrum_json(const sb_spectrum* s) {
  sb_spectrum_info info{};
  check(sb_spectrum_get_info(s, &info), "spectrum");
  return {{"n", info.n},
          {"eigenvalues", eigenvalues(s)},
          {"minEigenvalue", info.min_eigenvalue},
          {"maxEigenvalue", info.max_eigenvalue},
          {"traceGamma", info.trace_gamma},
          {"traceGamma2", info.trace_gamma2},
          {"traceGamma3", info.trace_gamma3},
          {"isPhysical", info.is_physical != 0},
          {"tolerance", info.tolerance}};
}

json bound_json(const sb_bound& b) {
  json j{{"n", b.n},
         {"boundValue", b.bound_value},
         {"method", b.method},
         {"certifiesNoBurst", b.certifies_no_burst != 0}};
  j["relaxedValue"] = b.has_relaxed ? json(b.relaxed_value) : json(nullptr);
  return j;
}

json burst_json(const sb_burst_report& b) {
  return {{"hasBurst", b.has_burst != 0},
          {"isDelayed", b.is_delayed != 0},
          {"peakTime", b.peak_time},
          {"peakRate", b.peak_rate},
          {"fractionalIncrease", b.fractional_increase}};
}

json describe_inputs(const sb_model* m, const sb_lattice* l) {
  json j{{"model", model_descriptor(m)}};
  if (l) j["lattice"] = lattice_descriptor(l);
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<double> time_grid(double tmax, std::size_t points, std::size_t early) {
  size_t n = 0;
  sb_status s = sb_time_grid(tmax, points, early, nullptr, 0, &n);
  if (s != SB_OK && s != SB_ERR_BUFFER) check(s, "time grid");
  std::vector<double> t(n);
  check(sb_time_grid(tmax, points, early, t.data(), t.size(), &n), "time grid");
  return t;
}

// spectrum ------------------------------------------------------------------

struct SpectrumArgs {
  std::string model, lattice;
};

void run_spectrum(const SpectrumArgs& a, const Globals& g, OutputSink& sink) {
  auto lat = parse_lattice(a.lattice);
  auto mod = parse_model(a.model);
  check(sb_model_check(mod.get(), lat.get()), "model/lattice");
  Matrix mat;
  check(sb_matrix_build(mod.get(), lat.get(), mat.out()), "decoherence matrix");
  Spectrum spec;
  check(sb_spectrum_analyze(mat.get(), g.tol, 0, spec.out()), "spectrum");
  json j = describe_inputs(mod.get(), lat.get());
  j.update(spectrum_json(spec.get()));
  int has_gamma = 0;
  check(sb_model_coupling(mod.get(), nullptr, &has_gamma), "coupling");
  if (has_gamma) {
    double gp = 0.0;
    check(sb_gamma_p(mod.get(), lat.get(), g.tol, &gp), "gamma_p");
    j["gammaP"] = gp;
  }
  size_t count = 0;
  int has = 0;
  std::vector<double> cf(j["n"].get<size_t>());
  check(sb_closed_form_spectrum(mod.get(), lat.get(), cf.data(), cf.size(), &count, &has), "closed-form spectrum");
  if (has) {
    auto ev = j["eigenvalues"].get<std::vector<double>>();
    double dev = 0.0;
    for (size_t i = 0; i < ev.size(); ++i) dev = std::max(dev, std::abs(ev[i] - cf[i]));
    j["closedForm"] = {{"available", true}, {"maxDeviation", dev}};
  } else {
    j["closedForm"] = {{"available", false}};
  }
  sink.set("inputs", describe_inputs(mod.get(), lat.get()));
  sink.add("spectrum.json", dump(j), true);
}

// g2 ------------------------------------------------------------------------

void run_g2(const SpectrumArgs& a, const Globals& g, OutputSink& sink) {
  auto lat = parse_lattice(a.lattice);
  auto mod = parse_model(a.model);
  check(sb_model_check(mod.get(), lat.get()), "model/lattice");
  Matrix mat;
  check(sb_matrix_build(mod.get(), lat.get(), mat.out()), "decoherence matrix");
  Spectrum spec;
  check(sb_spectrum_analyze(mat.get(), g.tol, 0, spec.out()), "spectrum");
  sb_correlation_report r{};
  check(sb_correlate(spec.get(), &r), "correlations");
  sb_spectrum_info info{};
  check(sb_spectrum_get_info(spec.get(), &info), "spectrum");
  json j = describe_inputs(mod.get(), lat.get());
  j["n"] = r.n;
  j["g2"] = r.g2;
  j["g3"] = r.has_g3 ? json(r.g3) : json(nullptr);
  j["rdot0"] = r.rdot0;
  j["rddot0"] = r.rddot0;
  j["isSuperradiant"] = r.is_superradiant != 0;
  j["isPhysical"] = info.is_physical != 0;
  int has_gamma = 0;
  check(sb_model_coupling(mod.get(), nullptr, &has_gamma), "coupling");
  if (has_gamma) {
    sb_critical c{};
    sb_status s = sb_gamma_s(mod.get(), lat.get(), &c);
    if (s == SB_OK)
      j["gammaS"] = c.has_transition ? json(c.gamma) : json(nullptr);
    else if (s != SB_ERR_UNSUPPORTED)
      check(s, "gamma_s");
  }
  sink.set("inputs", describe_inputs(mod.get(), lat.get()));
  sink.add("g2.json", dump(j), true);
}

// critical ------------------------------------------------------------------

struct CriticalArgs {
  std::string model;
  int dimension = 1;
  std::string sizes;
  std::string dims;
  double n_fixed = 1e6;
  bool bulk = false;
  double scale_exponent = 0.0;
  bool has_scale = false;
};

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void run_critical(const CriticalArgs& a, const Globals& g, OutputSink& sink) {
  auto mod = parse_model(a.model);
  struct Point {
    int dimension;
    int extent;
  };
  std::vector<Point> points;
  const bool dim_sweep = !a.dims.empty();
  if (dim_sweep) {
    auto colon = a.dims.find(':');
    if (colon == std::string::npos) throw UsageError("--dims must be lo:hi");
    double dlo = parse_number(std::string_view(a.dims).substr(0, colon), "--dims");
    double dhi = parse_number(std::string_view(a.dims).substr(colon + 1), "--dims");
    int lo = static_cast<int>(dlo), hi = static_cast<int>(dhi);
    if (lo < 1 || hi < lo || hi > 12 || dlo != lo || dhi != hi)
      throw UsageError("--dims must be lo:hi with 1 <= lo <= hi <= 12");
    if (!(a.n_fixed >= 2)) throw UsageError("--N must be >= 2");
    for (int dd = lo; dd <= hi; ++dd)
      points.push_back({dd, std::max(2, static_cast<int>(std::lround(std::pow(a.n_fixed, 1.0 / dd))))});
  } else {
    if (a.sizes.empty()) throw UsageError("critical needs --sizes or --dims");
    if (a.dimension < 1 || a.dimension > 6) throw UsageError("--dimension must be in [1, 6]");
    auto s = SweepSpec::parse("N", a.sizes);
    int last = -1;
    for (double n : s.values()) {
      int e = std::max(2, static_cast<int>(std::lround(std::pow(n, 1.0 / a.dimension))));
      if (e != last) points.push_back({a.dimension, e});
      last = e;
    }
  }
  struct Row {
    double n = 0;
    sb_critical c{};
    std::string error;
  };
  std::vector<Row> rows(points.size());
  parallel_for(points.size(), resolve_threads(g.threads), [&](std::size_t i) {
    const auto& p = points[i];
    std::vector<int> extents(static_cast<size_t>(p.dimension), p.extent);
    rows[i].n = std::pow(static_cast<double>(p.extent), p.dimension);
    sb_status s;
    if (a.bulk) {
      s = sb_gamma_s_bulk(mod.get(), extents.data(), extents.size(), &rows[i].c);
    } else {
      std::string desc = std::to_string(p.dimension) + ":";
      for (int k = 0; k < p.dimension; ++k) desc += (k ? "x" : "") + std::to_string(p.extent);
      Lattice lat;
      s = sb_lattice_parse(desc.c_str(), lat.out());
      if (s == SB_OK) s = sb_gamma_s(mod.get(), lat.get(), &rows[i].c);
    }
    if (s != SB_OK) {
      if (exit_code(s) == 2) check(s, "gamma_s");
      rows[i].error = sb_last_error();
      rows[i].c.has_transition = 0;
    }
  });
  const bool is_exp = model_kind(mod.get()) == "exp";
  std::vector<std::string> header{"dimension", "N", "extent", "gamma_s", "has_transition", "method"};
  if (is_exp) header.push_back("kappa_d");
  if (a.has_scale) header.push_back("scaled");
  header.push_back("error");
  CsvTable csv(header);
  std::vector<double> logd, logg, gs, scaled;
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const bool ok = r.error.empty() && r.c.has_transition;
    std::vector<std::string> cells{std::to_string(points[i].dimension), sig17(r.n), std::to_string(points[i].extent),
                                   ok ? sig17(r.c.gamma) : "", std::to_string(r.c.has_transition),
                                   r.error.empty() ? r.c.method : ""};
    if (is_exp) cells.push_back(ok ? sig17(-std::log(r.c.gamma)) : "");
    double sc = ok ? r.c.gamma * std::pow(r.n, a.scale_exponent) : NAN;
    if (a.has_scale) cells.push_back(ok ? sig17(sc) : "");
    cells.push_back(r.error);
    csv.add_row(cells);
    if (ok) {
      gs.push_back(r.c.gamma);
      logd.push_back(std::log(points[i].dimension));
      logg.push_back(std::log(r.c.gamma));
      scaled.push_back(sc);
    }
  }
  json summary = describe_inputs(mod.get(), nullptr);
  summary["rows"] = rows.size();
  summary["converged"] = gs.size();
  summary["bulk"] = a.bulk;
  if (!gs.empty()) {
    auto [mn, mx] = std::minmax_element(gs.begin(), gs.end());
    summary["plateau"] = {{"value", gs.back()}, {"min", *mn}, {"max", *mx}, {"spread", *mx - *mn}};
  }
  if (dim_sweep && gs.size() >= 2) summary["fitExponent"] = lsq_slope(logd, logg);
  if (a.has_scale && !scaled.empty()) {
    auto [mn, mx] = std::minmax_element(scaled.begin(), scaled.end());
    summary["scaleExponent"] = a.scale_exponent;
    summary["scaledVariation"] = *mx / *mn - 1.0;
  }
  int dim_for_limit = dim_sweep ? 0 : a.dimension;
  if (dim_for_limit) {
    double lim = 0.0;
    int has = 0;
    check(sb_gamma_s_limit(mod.get(), dim_for_limit, &lim, &has), "gamma_s limit");
    summary["asymptote"] = has ? json(lim) : json(nullptr);
  }
  sink.set("inputs", describe_inputs(mod.get(), nullptr));
  sink.add("critical.csv", csv.str(), true);
  sink.add("critical.json", dump(summary), false);
}

// phase-diagram -------------------------------------------------------------

struct PhaseArgs {
  double resolution = 1e-3;
  std::size_t n_check = 101;
  double band = 2e-2;
};

void run_phase(const PhaseArgs& a, const Globals& g, OutputSink& sink) {
  if (!(a.resolution >= 1e-4 && a.resolution <= 1e-1)) throw UsageError("--resolution must be in [1e-4, 1e-1]");
  const long m = std::lround(1.0 / a.resolution);
  const long m1 = m, m2 = m / 2;  // gamma1 in [0,1], gamma2 in [0,1/2]
  auto at = [&](long i) { return static_cast<double>(i) / static_cast<double>(m); };
  std::vector<sb_region> analytic(static_cast<size_t>((m1 + 1) * (m2 + 1)));
  std::vector<sb_region> finite(analytic.size());
  auto idx = [&](long i, long j) { return static_cast<size_t>(i * (m2 + 1) + j); };
  parallel_for(static_cast<size_t>(m1 + 1), resolve_threads(g.threads), [&](std::size_t i) {
    for (long j = 0; j <= m2; ++j) {
      check(sb_nnn_region(at(static_cast<long>(i)), at(j), &analytic[idx(static_cast<long>(i), j)]), "region");
      check(sb_nnn_region_finite(at(static_cast<long>(i)), at(j), a.n_check, g.tol, &finite[idx(static_cast<long>(i), j)]),
            "finite region");
    }
  });
  const long reach = std::lround(a.band / a.resolution);
  CsvTable csv({"gamma1", "gamma2", "analytic", "finite"});
  double min_g2 = INFINITY, min_g2_finite = INFINITY;
  size_t sr = 0, sr_finite = 0, disagree = 0, outside = 0, line_g2 = 0, line_g1 = 0;
  for (long i = 0; i <= m1; ++i)
    for (long j = 0; j <= m2; ++j) {
      sb_region ra = analytic[idx(i, j)], rf = finite[idx(i, j)];
      csv.add_row({sig17(at(i)), sig17(at(j)), sb_region_name(ra), sb_region_name(rf)});
      if (ra == SB_REGION_SUPERRADIANT) {
        ++sr;
        min_g2 = std::min(min_g2, at(j));
        if (j == 0) ++line_g2;
        if (i == 0) ++line_g1;
      }
      if (rf == SB_REGION_SUPERRADIANT) {
        ++sr_finite;
        min_g2_finite = std::min(min_g2_finite, at(j));
      }
      if (ra != rf) {
        ++disagree;
        bool near = false;
        for (long di = -reach; di <= reach && !near; ++di)
          for (long dj = -reach; dj <= reach && !near; ++dj) {
            long ii = i + di, jj = j + dj;
            if (ii < 0 || ii > m1 || jj < 0 || jj > m2) continue;
            near = analytic[idx(ii, jj)] == rf;
          }
        if (!near) ++outside;
      }
    }
  json summary{{"resolution", a.resolution},
               {"nCheck", a.n_check},
               {"cells", analytic.size()},
               {"superradiantCells", sr},
               {"superradiantCellsFinite", sr_finite},
               {"minGamma2", sr ? json(min_g2) : json(nullptr)},
               {"minGamma2Finite", sr_finite ? json(min_g2_finite) : json(nullptr)},
               {"analyticMinGamma2", sb_nnn_min_gamma2()},
               {"disagreements", disagree},
               {"disagreementsOutsideBand", outside},
               {"bandWidth", a.band},
               {"gamma2ZeroLineSuperradiant", line_g2},
               {"gamma1ZeroLineSuperradiant", line_g1}};
  sink.set("inputs", {{"model", "nnn"}, {"lattice", "1:" + std::to_string(a.n_check) + ":periodic"}});
  sink.add("phase_diagram.csv", csv.str(), true);
  sink.add("phase_diagram.json", dump(summary), false);
}

// dynamics ------------------------------------------------------------------

struct DynamicsArgs {
  std::string model, lattice, coupling = "none", state = "excited", solver = "auto";
  double tmax = 5.0;
  std::size_t points = 400, early = 40;
  double threshold = 1e-8;
};

void run_dynamics(const DynamicsArgs& a, const Globals&, OutputSink& sink) {
  auto lat = parse_lattice(a.lattice);
  auto mod = parse_model(a.model);
  check(sb_model_check(mod.get(), lat.get()), "model/lattice");
  size_t n = 0;
  check(sb_lattice_size(lat.get(), &n), "lattice");
  auto times = time_grid(a.tmax, a.points, a.early);
  std::string solver = a.solver;
  if (solver == "auto") {
    bool excited = a.state == "excited" || a.state == "fully_excited";
    solver = (n > 12 && model_kind(mod.get()) == "dicke" && excited && a.coupling == "none") ? "dicke-local" : "lindblad";
  }
  Trace tr;
  if (solver == "lindblad") {
    Matrix mat;
    check(sb_matrix_build(mod.get(), lat.get(), mat.out()), "decoherence matrix");
    check(sb_lindblad_evolve(mat.get(), a.coupling.c_str(), a.state.c_str(), times.data(), times.size(), nullptr,
                             tr.out()),
          "lindblad evolution");
  } else if (solver == "dicke-local") {
    if (model_kind(mod.get()) != "dicke") throw UsageError("solver dicke-local needs a dicke model");
    if (a.coupling != "none") throw UsageError("solver dicke-local does not take a coherent coupling");
    if (a.state != "excited" && a.state != "fully_excited") throw UsageError("solver dicke-local needs state excited");
    double gamma = 0.0;
    int has = 0;
    check(sb_model_coupling(mod.get(), &gamma, &has), "coupling");
    check(sb_dicke_local_evolve(n, gamma, times.data(), times.size(), nullptr, tr.out()), "dicke-local evolution");
  } else {
    throw UsageError("unknown solver '" + solver + "' (auto, lindblad, dicke-local)");
  }
  auto t = series(tr.get(), "t");
  auto r = series(tr.get(), "R");
  CsvTable csv({"t", "R"});
  for (size_t i = 0; i < t.size(); ++i) csv.add_row({sig17(t[i]), sig17(r[i])});
  sb_burst_report b{};
  check(sb_detect_burst(tr.get(), a.threshold, &b), "burst detection");
  sb_trace_diagnostics d{};
  check(sb_trace_get_diagnostics(tr.get(), &d), "diagnostics");
  json j = describe_inputs(mod.get(), lat.get());
  j["coupling"] = a.coupling;
  j["state"] = a.state;
  j["solver"] = solver;
  j["n"] = n;
  j["initialRate"] = d.initial_rate;
  j["burst"] = burst_json(b);
  j["diagnostics"] = {{"maxTraceError", d.max_trace_error},
                      {"maxHermiticityError", d.max_hermiticity_error},
                      {"minPopulation", d.min_population},
                      {"maxPopulation", d.max_population}};
  sink.set("inputs", describe_inputs(mod.get(), lat.get()));
  sink.set("tolerances", {{"rtol", sb_default_evolve_options().rtol}, {"atol", sb_default_evolve_options().atol}});
  sink.add("dynamics.csv", csv.str(), true);
  sink.add("burst.json", dump(j), false);
}

// bounds --------------------------------------------------------------------

struct BoundsArgs {
  std::string model, lattice;
  bool brute_force = false;
};

void run_bounds(const BoundsArgs& a, const Globals&, OutputSink& sink) {
  auto lat = parse_lattice(a.lattice);
  auto mod = parse_model(a.model);
  check(sb_model_check(mod.get(), lat.get()), "model/lattice");
  json j = describe_inputs(mod.get(), lat.get());
  sb_bound b{};
  int has = 0;
  check(sb_analytic_bound(mod.get(), lat.get(), &b, &has), "analytic bound");
  j["analytic"] = has ? bound_json(b) : json(nullptr);
  if (a.brute_force) {
    Matrix mat;
    check(sb_matrix_build(mod.get(), lat.get(), mat.out()), "decoherence matrix");
    sb_bound bf{};
    check(sb_brute_force_bound(mat.get(), &bf), "brute-force bound");
    j["bruteForce"] = bound_json(bf);
    if (has) j["analyticDominates"] = b.bound_value >= bf.bound_value - 1e-9 * std::max(1.0, bf.bound_value);
  }
  sink.set("inputs", describe_inputs(mod.get(), lat.get()));
  sink.add("bounds.json", dump(j), true);
}

// meanfield -----------------------------------------------------------------

struct MeanfieldArgs {
  std::string model, coupling = "none", state = "excited";
  std::size_t n = 101;
  double tmax = 3.0;
  std::size_t points = 300, early = 40;
  bool compare_exact = false;
};

void run_meanfield(const MeanfieldArgs& a, const Globals&, OutputSink& sink) {
  auto lat = parse_lattice("1:" + std::to_string(a.n) + ":periodic");
  auto mod = parse_model(a.model);
  check(sb_model_check(mod.get(), lat.get()), "model/lattice");
  Matrix mat;
  check(sb_matrix_build(mod.get(), lat.get(), mat.out()), "decoherence matrix");
  auto times = time_grid(a.tmax, a.points, a.early);
  Trace tr;
  check(sb_cumulant_evolve(mat.get(), a.coupling.c_str(), a.state.c_str(), times.data(), times.size(), nullptr,
                           tr.out()),
        "cumulant evolution");
  auto t = series(tr.get(), "t");
  auto r = series(tr.get(), "R");
  auto p = series(tr.get(), "p");
  auto c1 = series(tr.get(), "c1");
  auto c2 = series(tr.get(), "c2");
  auto rd = series(tr.get(), "Rdot");
  CsvTable csv({"t", "R", "p", "c1", "c2", "Rdot"});
  bool monotone = true;
  for (size_t i = 0; i < t.size(); ++i) {
    csv.add_row({sig17(t[i]), sig17(r[i]), sig17(p[i]), sig17(c1[i]), sig17(c2[i]), sig17(rd[i])});
    if (i && r[i] > r[i - 1] + 1e-9 * static_cast<double>(a.n)) monotone = false;
  }
  sb_trace_diagnostics d{};
  check(sb_trace_get_diagnostics(tr.get(), &d), "diagnostics");
  json j = describe_inputs(mod.get(), lat.get());
  j["coupling"] = a.coupling;
  j["state"] = a.state;
  j["n"] = a.n;
  j["initialRate"] = d.initial_rate;
  j["monotoneNonIncreasing"] = monotone;
  j["maxRdot"] = *std::max_element(rd.begin(), rd.end());
  j["maxImagCorrelation"] = d.max_imag_correlation;
  if (a.compare_exact) {
    if (a.n > 10) throw UsageError("--compare-exact needs --N <= 10");
    std::vector<double> short_t;
    for (double v : times)
      if (v <= 1.0 + 1e-12) short_t.push_back(v);
    Trace mf, ex;
    check(sb_cumulant_evolve(mat.get(), a.coupling.c_str(), a.state.c_str(), short_t.data(), short_t.size(), nullptr,
                             mf.out()),
          "cumulant evolution");
    check(sb_lindblad_evolve(mat.get(), a.coupling.c_str(), a.state.c_str(), short_t.data(), short_t.size(), nullptr,
                             ex.out()),
          "lindblad evolution");
    auto rm = series(mf.get(), "R"), re = series(ex.get(), "R");
    double dev = 0.0;
    for (size_t i = 0; i < rm.size(); ++i) dev = std::max(dev, std::abs(rm[i] - re[i]) / std::abs(re[i]));
    j["compareExact"] = {{"tmax", short_t.back()}, {"maxRelativeDeviation", dev}};
  }
  sink.set("inputs", describe_inputs(mod.get(), lat.get()));
  sink.add("meanfield.csv", csv.str(), true);
  sink.add("meanfield.json", dump(j), false);
}

// validate ------------------------------------------------------------------

void run_validate(const SpectrumArgs& a, const Globals& g, OutputSink& sink, bool& all_pass) {
  auto lat = parse_lattice(a.lattice);
  auto mod = parse_model(a.model);
  check(sb_model_check(mod.get(), lat.get()), "model/lattice");
  Matrix mat;
  check(sb_matrix_build(mod.get(), lat.get(), mat.out()), "decoherence matrix");
  Spectrum spec;
  check(sb_spectrum_analyze(mat.get(), g.tol, 1, spec.out()), "spectrum");
  sb_spectrum_info info{};
  check(sb_spectrum_get_info(spec.get(), &info), "spectrum");
  sb_correlation_report corr{};
  check(sb_correlate(spec.get(), &corr), "correlations");
  const size_t n = info.n;
  const double nd = static_cast<double>(n);
  json checks = json::array();
  all_pass = true;
  auto add = [&](const std::string& name, double value, double reference, double tol) {
    bool pass = std::abs(value - reference) <= tol * std::max(1.0, std::abs(reference));
    all_pass = all_pass && pass;
    checks.push_back({{"name", name}, {"value", value}, {"reference", reference}, {"tolerance", tol}, {"pass", pass}});
  };
  add("trace_gamma2_entries_vs_eigen", info.trace_gamma2, info.eigen_trace_gamma2, 1e-9);
  add("trace_gamma3_entries_vs_eigen", info.trace_gamma3, info.eigen_trace_gamma3, 1e-9);
  double rbar = 0.0;
  check(sb_one_jump_rate(spec.get(), mat.get(), &rbar), "one-jump rate");
  add("one_jump_rate_vs_N_g2", rbar, nd * corr.g2, 1e-9);
  std::vector<double> cf(n);
  size_t count = 0;
  int has = 0;
  check(sb_closed_form_spectrum(mod.get(), lat.get(), cf.data(), cf.size(), &count, &has), "closed form");
  if (has) {
    auto ev = eigenvalues(spec.get());
    double dev = 0.0;
    for (size_t i = 0; i < n; ++i) dev = std::max(dev, std::abs(ev[i] - cf[i]));
    add("closed_form_spectrum_max_deviation", dev, 0.0, 1e-9);
  }
  int cert = 0;
  check(sb_matrix_psd_certificate(mat.get(), g.tol, &cert), "PSD certificate");
  if (std::abs(info.min_eigenvalue) > 10 * g.tol * nd)
    add("psd_certificate_matches_spectrum", cert, info.is_physical ? 1.0 : 0.0, 0.0);
  if (info.is_physical && n <= 10) {
    double fd = 0.0;
    check(sb_lindblad_rdot0(mat.get(), nullptr, "excited", &fd), "Rdot(0)");
    add("rdot0_dynamics_vs_N2_g2_minus_1", fd, corr.rdot0, 1e-4);
    double fdj = 0.0;
    check(sb_lindblad_rdot0(mat.get(), "all:1", "excited", &fdj), "Rdot(0) with J");
    add("rdot0_invariant_under_all_to_all_J", fdj, fd, 1e-6);
    int is_real = 0;
    check(sb_matrix_is_real(mat.get(), &is_real), "matrix");
    if (is_real && n <= 8) {
      std::mt19937_64 rng(g.seed);
      std::uniform_real_distribution<double> th(0.0, M_PI), ph(0.0, 2 * M_PI);
      double theta = th(rng), phi = ph(rng);
      std::string st = "product:theta=" + sig17(theta) + ",phi=" + sig17(phi);
      double exact = 0.0, formula = 0.0;
      check(sb_lindblad_rdot0(mat.get(), nullptr, st.c_str(), &exact), "product Rdot(0)");
      check(sb_product_state_rdot0(mat.get(), theta, phi, &formula), "product Rdot(0) formula");
      add("product_state_rdot0_formula", formula, exact, 1e-4);
    }
  }
  json j = describe_inputs(mod.get(), lat.get());
  j["n"] = n;
  j["seed"] = g.seed;
  j["checks"] = checks;
  j["allPass"] = all_pass;
  sink.set("inputs", describe_inputs(mod.get(), lat.get()));
  sink.add("validate.json", dump(j), true);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Superradiance feasibility toolkit for dissipative emitter arrays"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--out", g.out, "Write artifacts and manifest.json to this directory");
  app.add_option("--threads", g.threads, "Worker threads for sweeps (0: all cores)");
  app.add_option("--tol", g.tol, "PSD tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized checks");

  SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues and PSD verdict of the decoherence matrix");
  spectrum->add_option("--model", sa.model)->required();
  spectrum->add_option("--lattice", sa.lattice)->required();

  SpectrumArgs ga;
  auto* g2 = app.add_subcommand("g2", "Zero-delay correlation witnesses");
  g2->add_option("--model", ga.model)->required();
  g2->add_option("--lattice", ga.lattice)->required();

  CriticalArgs ca;
  auto* critical = app.add_subcommand("critical", "Critical coupling sweeps");
  critical->add_option("--model", ca.model)->required();
  critical->add_option("--dimension", ca.dimension, "Lattice dimension for --sizes");
  critical->add_option("--sizes", ca.sizes, "N sweep start:stop:steps[:lin|:log]");
  critical->add_option("--dims", ca.dims, "Dimension sweep lo:hi at fixed --N");
  critical->add_option("--N", ca.n_fixed, "Target size for --dims");
  critical->add_flag("--bulk", ca.bulk, "Translation-invariant bulk sums");
  auto* scale_opt = critical->add_option("--scale-exponent", ca.scale_exponent, "Report gamma_s * N^x");

  PhaseArgs pa;
  auto* phase = app.add_subcommand("phase-diagram", "NNN ring phase diagram");
  phase->add_option("--resolution", pa.resolution);
  phase->add_option("--N-check", pa.n_check);
  phase->add_option("--band", pa.band, "Boundary band width for the finite-N cross-check");

  DynamicsArgs da;
  auto* dynamics = app.add_subcommand("dynamics", "Emission-rate dynamics");
  dynamics->add_option("--model", da.model)->required();
  dynamics->add_option("--lattice", da.lattice)->required();
  dynamics->add_option("--tmax", da.tmax);
  dynamics->add_option("--points", da.points);
  dynamics->add_option("--early", da.early, "Geometric samples in [1e-4, 1e-1]");
  dynamics->add_option("--J", da.coupling, "Coherent coupling: none | all:<J>");
  dynamics->add_option("--state", da.state, "excited | product:theta=..,phi=..");
  dynamics->add_option("--solver", da.solver, "auto | lindblad | dicke-local");
  dynamics->add_option("--threshold", da.threshold, "Relative burst threshold");

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Upper bounds on the emission rate");
  bounds->add_option("--model", ba.model)->required();
  bounds->add_option("--lattice", ba.lattice)->required();
  bounds->add_flag("--brute-force", ba.brute_force, "Exact maximum over all excitation sectors");

  MeanfieldArgs ma;
  auto* meanfield = app.add_subcommand("meanfield", "Second-order cumulant dynamics on a ring");
  meanfield->add_option("--model", ma.model)->required();
  meanfield->add_option("--N", ma.n);
  meanfield->add_option("--tmax", ma.tmax);
  meanfield->add_option("--points", ma.points);
  meanfield->add_option("--early", ma.early);
  meanfield->add_option("--J", ma.coupling);
  meanfield->add_option("--state", ma.state);
  meanfield->add_flag("--compare-exact", ma.compare_exact);

  SpectrumArgs va;
  auto* validate = app.add_subcommand("validate", "Internal consistency checks for one model/lattice");
  validate->add_option("--model", va.model)->required();
  validate->add_option("--lattice", va.lattice)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  ca.has_scale = scale_opt->count() > 0;

  std::vector<std::string> args(argv, argv + argc);
  try {
    OutputSink sink(g.out.empty() ? std::nullopt : std::optional<std::string>(g.out), args);
    sink.set("tolerances", {{"psd", g.tol}});
    sink.set("seed", g.seed);
    bool ok = true;
    if (spectrum->parsed()) run_spectrum(sa, g, sink);
    if (g2->parsed()) run_g2(ga, g, sink);
    if (critical->parsed()) run_critical(ca, g, sink);
    if (phase->parsed()) run_phase(pa, g, sink);
    if (dynamics->parsed()) run_dynamics(da, g, sink);
    if (bounds->parsed()) run_bounds(ba, g, sink);
    if (meanfield->parsed()) run_meanfield(ma, g, sink);
    if (validate->parsed()) run_validate(va, g, sink, ok);
    sink.finish();
    return ok ? 0 : 3;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const LibraryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
