#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "superburst/bounds.hpp"
#include "superburst/correlations.hpp"
#include "superburst/dynamics.hpp"
#include "superburst/error.hpp"
#include "superburst/lattice.hpp"
#include "superburst/meanfield.hpp"
#include "superburst/models.hpp"
#include "superburst/spectral.hpp"
#include "superburst/superburst.h"

using namespace superburst;

struct sb_lattice {
  LatticeSpec value;
};
struct sb_model {
  InteractionModel value;
};
struct sb_matrix {
  DecoherenceMatrix value;
};
struct sb_spectrum {
  SpectralSummary value;
};
struct sb_trace {
  explicit sb_trace(EmissionTrace t) : trace(std::move(t)) {}
  EmissionTrace trace;
  bool cumulant = false;
  std::vector<double> p, c1, c2, rdot;
  double max_imag_correlation = 0.0;
};

namespace {

thread_local std::string g_last_error;

sb_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument: return SB_ERR_INVALID_ARGUMENT;
    case ErrorCode::parse: return SB_ERR_PARSE;
    case ErrorCode::incompatible: return SB_ERR_INCOMPATIBLE;
    case ErrorCode::out_of_range: return SB_ERR_OUT_OF_RANGE;
    case ErrorCode::unsupported: return SB_ERR_UNSUPPORTED;
    case ErrorCode::numeric: return SB_ERR_NUMERIC;
    case ErrorCode::no_root: return SB_ERR_NO_ROOT;
    case ErrorCode::io: return SB_ERR_IO;
  }
  return SB_ERR_INTERNAL;
}

template <class F>
sb_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SB_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) fail(ErrorCode::invalid_argument, std::string("null ") + what);
}

sb_status copy_string(const std::string& s, char* buf, size_t cap, size_t* len) {
  if (len) *len = s.size();
  if (buf && cap > 0) {
    size_t m = std::min(cap - 1, s.size());
    std::memcpy(buf, s.data(), m);
    buf[m] = '\0';
  }
  if (!buf || cap <= s.size()) {
    g_last_error = "buffer too small";
    return SB_ERR_BUFFER;
  }
  return SB_OK;
}

sb_status copy_values(const std::vector<double>& v, double* out, size_t cap, size_t* count) {
  if (count) *count = v.size();
  if (out) std::copy_n(v.begin(), std::min(cap, v.size()), out);
  if (!out || cap < v.size()) {
    g_last_error = "buffer too small";
    return SB_ERR_BUFFER;
  }
  return SB_OK;
}

void copy_method(const std::string& s, char (&dst)[32]) {
  std::memset(dst, 0, sizeof dst);
  std::memcpy(dst, s.data(), std::min(s.size(), sizeof dst - 1));
}

Eigen::MatrixXcd coherent_matrix(const char* descriptor, std::size_t n) {
  if (!descriptor) return {};
  return build_coherent_coupling(CoherentCoupling::parse(descriptor), n);
}

InitialState initial_state(const char* descriptor) {
  return descriptor ? InitialState::parse(descriptor) : InitialState::fully_excited();
}

EvolveOptions evolve_options(const sb_evolve_options* o, EvolveOptions fallback) {
  if (!o) return fallback;
  if (!(o->rtol > 0.0) || !(o->atol > 0.0)) fail(ErrorCode::invalid_argument, "tolerances must be positive");
  return {o->rtol, o->atol};
}

std::vector<double> time_vector(const double* times, size_t count) {
  require(times, "time grid");
  return {times, times + count};
}

sb_bound to_c(const RateBound& b) {
  sb_bound out{};
  out.n = b.n;
  out.bound_value = b.bound_value;
  out.has_relaxed = b.relaxed_value.has_value();
  out.relaxed_value = b.relaxed_value.value_or(0.0);
  out.certifies_no_burst = b.certifies_no_burst;
  copy_method(bound_method_name(b.method), out.method);
  return out;
}

sb_critical to_c(const CriticalCoupling& c) {
  sb_critical out{};
  out.has_transition = c.has_transition;
  out.gamma = c.gamma;
  copy_method(c.method, out.method);
  return out;
}

}  // namespace

extern "C" {

const char* sb_last_error(void) { return g_last_error.c_str(); }

const char* sb_status_name(sb_status status) {
  switch (status) {
    case SB_OK: return "ok";
    case SB_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SB_ERR_PARSE: return "parse";
    case SB_ERR_INCOMPATIBLE: return "incompatible";
    case SB_ERR_OUT_OF_RANGE: return "out_of_range";
    case SB_ERR_UNSUPPORTED: return "unsupported";
    case SB_ERR_NUMERIC: return "numeric";
    case SB_ERR_NO_ROOT: return "no_root";
    case SB_ERR_IO: return "io";
    case SB_ERR_BUFFER: return "buffer";
    case SB_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* sb_version(void) { return "1.0.0"; }

// Lattices

sb_status sb_lattice_parse(const char* descriptor, sb_lattice** out) {
  return guarded([&] {
    require(descriptor, "descriptor");
    require(out, "output");
    *out = new sb_lattice{LatticeSpec::parse(descriptor)};
    return SB_OK;
  });
}

void sb_lattice_free(sb_lattice* lattice) { delete lattice; }

sb_status sb_lattice_size(const sb_lattice* lattice, size_t* n) {
  return guarded([&] {
    require(lattice, "lattice");
    require(n, "output");
    *n = lattice->value.size();
    return SB_OK;
  });
}

sb_status sb_lattice_dimension(const sb_lattice* lattice, int* dimension) {
  return guarded([&] {
    require(lattice, "lattice");
    require(dimension, "output");
    *dimension = lattice->value.dimension();
    return SB_OK;
  });
}

sb_status sb_lattice_extents(const sb_lattice* lattice, int* extents, size_t cap, size_t* count) {
  return guarded([&] {
    require(lattice, "lattice");
    const auto& e = lattice->value.extents();
    if (count) *count = e.size();
    if (!extents || cap < e.size()) {
      g_last_error = "buffer too small";
      return SB_ERR_BUFFER;
    }
    std::copy(e.begin(), e.end(), extents);
    return SB_OK;
  });
}

sb_status sb_lattice_is_periodic(const sb_lattice* lattice, int* periodic) {
  return guarded([&] {
    require(lattice, "lattice");
    require(periodic, "output");
    *periodic = lattice->value.periodic();
    return SB_OK;
  });
}

sb_status sb_lattice_descriptor(const sb_lattice* lattice, char* buf, size_t cap, size_t* len) {
  return guarded([&] {
    require(lattice, "lattice");
    return copy_string(lattice->value.descriptor(), buf, cap, len);
  });
}

sb_status sb_lattice_equal(const sb_lattice* a, const sb_lattice* b, int* equal) {
  return guarded([&] {
    require(a, "lattice");
    require(b, "lattice");
    require(equal, "output");
    *equal = a->value == b->value;
    return SB_OK;
  });
}

// Models

sb_status sb_model_parse(const char* descriptor, sb_model** out) {
  return guarded([&] {
    require(descriptor, "descriptor");
    require(out, "output");
    *out = new sb_model{parse_model(descriptor)};
    return SB_OK;
  });
}

void sb_model_free(sb_model* model) { delete model; }

sb_status sb_model_descriptor(const sb_model* model, char* buf, size_t cap, size_t* len) {
  return guarded([&] {
    require(model, "model");
    return copy_string(describe(model->value), buf, cap, len);
  });
}

sb_status sb_model_kind(const sb_model* model, char* buf, size_t cap, size_t* len) {
  return guarded([&] {
    require(model, "model");
    return copy_string(model_kind(model->value), buf, cap, len);
  });
}

sb_status sb_model_equal(const sb_model* a, const sb_model* b, int* equal) {
  return guarded([&] {
    require(a, "model");
    require(b, "model");
    require(equal, "output");
    *equal = a->value == b->value;
    return SB_OK;
  });
}

sb_status sb_model_coupling(const sb_model* model, double* gamma, int* has) {
  return guarded([&] {
    require(model, "model");
    require(has, "output");
    auto g = scalar_coupling(model->value);
    *has = g.has_value();
    if (gamma) *gamma = g.value_or(0.0);
    return SB_OK;
  });
}

sb_status sb_model_with_coupling(const sb_model* model, double gamma, sb_model** out) {
  return guarded([&] {
    require(model, "model");
    require(out, "output");
    *out = new sb_model{with_coupling(model->value, gamma)};
    return SB_OK;
  });
}

sb_status sb_model_check(const sb_model* model, const sb_lattice* lattice) {
  return guarded([&] {
    require(model, "model");
    require(lattice, "lattice");
    check_compatible(model->value, lattice->value);
    return SB_OK;
  });
}

// Matrices

sb_status sb_matrix_build(const sb_model* model, const sb_lattice* lattice, sb_matrix** out) {
  return guarded([&] {
    require(model, "model");
    require(lattice, "lattice");
    require(out, "output");
    *out = new sb_matrix{build_decoherence(model->value, lattice->value)};
    return SB_OK;
  });
}

sb_status sb_matrix_from_entries(size_t n, const double* re, const double* im, sb_matrix** out) {
  return guarded([&] {
    require(re, "real part");
    require(out, "output");
    if (n == 0) fail(ErrorCode::invalid_argument, "matrix size must be positive");
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = {re[i * n + j], im ? im[i * n + j] : 0.0};
    *out = new sb_matrix{DecoherenceMatrix::from_entries(std::move(m))};
    return SB_OK;
  });
}

void sb_matrix_free(sb_matrix* matrix) { delete matrix; }

sb_status sb_matrix_size(const sb_matrix* matrix, size_t* n) {
  return guarded([&] {
    require(matrix, "matrix");
    require(n, "output");
    *n = matrix->value.size();
    return SB_OK;
  });
}

sb_status sb_matrix_entry(const sb_matrix* matrix, size_t i, size_t j, double* re, double* im) {
  return guarded([&] {
    require(matrix, "matrix");
    if (i >= matrix->value.size() || j >= matrix->value.size()) fail(ErrorCode::out_of_range, "matrix index out of range");
    auto v = matrix->value(i, j);
    if (re) *re = v.real();
    if (im) *im = v.imag();
    return SB_OK;
  });
}

sb_status sb_matrix_is_real(const sb_matrix* matrix, int* is_real) {
  return guarded([&] {
    require(matrix, "matrix");
    require(is_real, "output");
    *is_real = matrix->value.is_real();
    return SB_OK;
  });
}

sb_status sb_matrix_psd_certificate(const sb_matrix* matrix, double tolerance, int* certified) {
  return guarded([&] {
    require(matrix, "matrix");
    require(certified, "output");
    *certified = psd_certificate(matrix->value, tolerance);
    return SB_OK;
  });
}

// Spectra

sb_status sb_spectrum_analyze(const sb_matrix* matrix, double tolerance, int with_vectors, sb_spectrum** out) {
  return guarded([&] {
    require(matrix, "matrix");
    require(out, "output");
    *out = new sb_spectrum{analyze(matrix->value, tolerance, with_vectors != 0)};
    return SB_OK;
  });
}

void sb_spectrum_free(sb_spectrum* spectrum) { delete spectrum; }

sb_status sb_spectrum_get_info(const sb_spectrum* spectrum, sb_spectrum_info* info) {
  return guarded([&] {
    require(spectrum, "spectrum");
    require(info, "output");
    const auto& s = spectrum->value;
    *info = {};
    info->n = s.size();
    info->min_eigenvalue = s.min_eigenvalue;
    info->max_eigenvalue = s.eigenvalues.empty() ? 0.0 : s.eigenvalues.front();
    info->trace_gamma = s.trace_gamma;
    info->trace_gamma2 = s.trace_gamma2;
    info->trace_gamma3 = s.trace_gamma3;
    info->eigen_trace_gamma2 = s.eigen_traces.t2;
    info->eigen_trace_gamma3 = s.eigen_traces.t3;
    info->is_physical = s.is_physical;
    info->tolerance = s.tolerance;
    return SB_OK;
  });
}

sb_status sb_spectrum_eigenvalues(const sb_spectrum* spectrum, double* values, size_t cap, size_t* count) {
  return guarded([&] {
    require(spectrum, "spectrum");
    return copy_values(spectrum->value.eigenvalues, values, cap, count);
  });
}

sb_status sb_spectrum_eigenvector(const sb_spectrum* spectrum, size_t k, double* re, double* im, size_t cap) {
  return guarded([&] {
    require(spectrum, "spectrum");
    const auto& v = spectrum->value.eigenvectors;
    if (v.size() == 0) fail(ErrorCode::unsupported, "spectrum was computed without eigenvectors");
    if (k >= static_cast<size_t>(v.cols())) fail(ErrorCode::out_of_range, "eigenvector index out of range");
    if (!re || cap < static_cast<size_t>(v.rows())) {
      g_last_error = "buffer too small";
      return SB_ERR_BUFFER;
    }
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      re[i] = v(i, static_cast<Eigen::Index>(k)).real();
      if (im) im[i] = v(i, static_cast<Eigen::Index>(k)).imag();
    }
    return SB_OK;
  });
}

sb_status sb_closed_form_spectrum(const sb_model* model, const sb_lattice* lattice, double* values, size_t cap,
                                  size_t* count, int* has) {
  return guarded([&] {
    require(model, "model");
    require(lattice, "lattice");
    require(has, "output");
    auto cf = closed_form_spectrum(model->value, lattice->value);
    *has = cf.has_value();
    if (!cf) {
      if (count) *count = 0;
      return SB_OK;
    }
    return copy_values(*cf, values, cap, count);
  });
}

sb_status sb_gamma_p(const sb_model* model, const sb_lattice* lattice, double tolerance, double* out) {
  return guarded([&] {
    require(model, "model");
    require(lattice, "lattice");
    require(out, "output");
    *out = gamma_p(model->value, lattice->value, tolerance);
    return SB_OK;
  });
}

// Correlations

sb_status sb_correlate(const sb_spectrum* spectrum, sb_correlation_report* report) {
  return guarded([&] {
    require(spectrum, "spectrum");
    require(report, "output");
    auto r = correlate(spectrum->value);
    *report = {r.n, r.g2, r.g3.has_value(), r.g3.value_or(0.0), r.rdot0, r.rddot0, r.is_superradiant};
    return SB_OK;
  });
}

sb_status sb_g2_from_traces(size_t n, double t1, double t2, double* g2) {
  return guarded([&] {
    require(g2, "output");
    *g2 = g2_zero(n, t1, t2);
    return SB_OK;
  });
}

sb_status sb_g3_from_traces(size_t n, double t2, double t3, double* g3) {
  return guarded([&] {
    require(g3, "output");
    *g3 = g3_zero(n, t2, t3);
    return SB_OK;
  });
}

sb_status sb_chiral_g2(size_t n, double kd, double chi, double* g2) {
  return guarded([&] {
    require(g2, "output");
    *g2 = chiral_g2(n, kd, chi);
    return SB_OK;
  });
}

sb_status sb_one_jump_rate(const sb_spectrum* spectrum, const sb_matrix* matrix, double* rate) {
  return guarded([&] {
    require(spectrum, "spectrum");
    require(matrix, "matrix");
    require(rate, "output");
    *rate = one_jump_average_rate(spectrum->value, matrix->value);
    return SB_OK;
  });
}

sb_status sb_product_state_rdot0(const sb_matrix* matrix, double theta, double phi, double* rdot0) {
  return guarded([&] {
    require(matrix, "matrix");
    require(rdot0, "output");
    *rdot0 = product_state_rdot0(matrix->value, theta, phi);
    return SB_OK;
  });
}

sb_status sb_gamma_s(const sb_model* model, const sb_lattice* lattice, sb_critical* out) {
  return guarded([&] {
    require(model, "model");
    require(lattice, "lattice");
    require(out, "output");
    *out = to_c(gamma_s(model->value, lattice->value));
    return SB_OK;
  });
}

sb_status sb_gamma_s_bulk(const sb_model* model, const int* extents, size_t dimension, sb_critical* out) {
  return guarded([&] {
    require(model, "model");
    require(extents, "extents");
    require(out, "output");
    *out = to_c(gamma_s_bulk(model->value, std::vector<int>(extents, extents + dimension)));
    return SB_OK;
  });
}

sb_status sb_gamma_s_limit(const sb_model* model, int dimension, double* gamma, int* has) {
  return guarded([&] {
    require(model, "model");
    require(has, "output");
    auto g = gamma_s_limit(model->value, dimension);
    *has = g.has_value();
    if (gamma) *gamma = g.value_or(0.0);
    return SB_OK;
  });
}

const char* sb_region_name(sb_region region) {
  switch (region) {
    case SB_REGION_UNPHYSICAL: return region_name(RegionClass::unphysical);
    case SB_REGION_PHYSICAL_NO_BURST: return region_name(RegionClass::physical_no_burst);
    case SB_REGION_SUPERRADIANT: return region_name(RegionClass::superradiant);
  }
  return "unknown";
}

static sb_region to_c(RegionClass c) {
  switch (c) {
    case RegionClass::unphysical: return SB_REGION_UNPHYSICAL;
    case RegionClass::physical_no_burst: return SB_REGION_PHYSICAL_NO_BURST;
    case RegionClass::superradiant: return SB_REGION_SUPERRADIANT;
  }
  return SB_REGION_UNPHYSICAL;
}

sb_status sb_nnn_region(double gamma1, double gamma2, sb_region* region) {
  return guarded([&] {
    require(region, "output");
    *region = to_c(nnn_region(gamma1, gamma2).cls);
    return SB_OK;
  });
}

sb_status sb_nnn_region_finite(double gamma1, double gamma2, size_t n, double tolerance, sb_region* region) {
  return guarded([&] {
    require(region, "output");
    *region = to_c(nnn_region_finite(gamma1, gamma2, n, tolerance).cls);
    return SB_OK;
  });
}

double sb_nnn_min_gamma2(void) { return nnn_min_gamma2(); }

// Bounds

sb_status sb_analytic_bound(const sb_model* model, const sb_lattice* lattice, sb_bound* out, int* has) {
  return guarded([&] {
    require(model, "model");
    require(lattice, "lattice");
    require(out, "output");
    require(has, "output");
    auto b = analytic_bound(model->value, lattice->value);
    *has = b.has_value();
    *out = b ? to_c(*b) : sb_bound{};
    return SB_OK;
  });
}

sb_status sb_brute_force_bound(const sb_matrix* matrix, sb_bound* out) {
  return guarded([&] {
    require(matrix, "matrix");
    require(out, "output");
    *out = to_c(brute_force_bound(matrix->value));
    return SB_OK;
  });
}

// Dynamics

sb_evolve_options sb_default_evolve_options(void) {
  EvolveOptions o;
  return {o.rtol, o.atol};
}

sb_status sb_time_grid(double tmax, size_t points, size_t early_points, double* times, size_t cap, size_t* count) {
  return guarded([&] { return copy_values(make_time_grid(tmax, points, early_points), times, cap, count); });
}

sb_status sb_lindblad_evolve(const sb_matrix* matrix, const char* coherent, const char* state, const double* times,
                             size_t count, const sb_evolve_options* options, sb_trace** out) {
  return guarded([&] {
    require(matrix, "matrix");
    require(out, "output");
    auto tr = lindblad_evolve(matrix->value, coherent_matrix(coherent, matrix->value.size()), initial_state(state),
                              time_vector(times, count), evolve_options(options, EvolveOptions{}));
    *out = new sb_trace(std::move(tr));
    return SB_OK;
  });
}

sb_status sb_lindblad_rdot0(const sb_matrix* matrix, const char* coherent, const char* state, double* rdot0) {
  return guarded([&] {
    require(matrix, "matrix");
    require(rdot0, "output");
    *rdot0 = lindblad_rdot0(matrix->value, coherent_matrix(coherent, matrix->value.size()), initial_state(state));
    return SB_OK;
  });
}

sb_status sb_dicke_local_evolve(size_t n, double gamma, const double* times, size_t count,
                                const sb_evolve_options* options, sb_trace** out) {
  return guarded([&] {
    require(out, "output");
    auto tr = dicke_local_evolve(n, gamma, time_vector(times, count), evolve_options(options, {1e-12, 1e-14}));
    *out = new sb_trace(std::move(tr));
    return SB_OK;
  });
}

sb_status sb_cumulant_evolve(const sb_matrix* matrix, const char* coherent, const char* state, const double* times,
                             size_t count, const sb_evolve_options* options, sb_trace** out) {
  return guarded([&] {
    require(matrix, "matrix");
    require(out, "output");
    auto ring = ring_coupling(matrix->value, coherent_matrix(coherent, matrix->value.size()));
    auto mf = cumulant_evolve(ring, initial_state(state), time_vector(times, count),
                              evolve_options(options, {1e-10, 1e-13}));
    auto* t = new sb_trace(std::move(mf.trace));
    t->cumulant = true;
    t->p = std::move(mf.p);
    t->c1 = std::move(mf.c1);
    t->c2 = std::move(mf.c2);
    t->rdot = std::move(mf.rdot);
    t->max_imag_correlation = mf.max_imag_correlation;
    *out = t;
    return SB_OK;
  });
}

sb_status sb_cumulant_rate_derivative(const sb_matrix* matrix, const char* coherent, double p, const double* c,
                                      const double* q, size_t n, double* rdot) {
  return guarded([&] {
    require(matrix, "matrix");
    require(c, "correlations");
    require(q, "populations");
    require(rdot, "output");
    auto ring = ring_coupling(matrix->value, coherent_matrix(coherent, matrix->value.size()));
    if (n != ring.size()) fail(ErrorCode::invalid_argument, "state size does not match the ring");
    CumulantState s;
    s.p = p;
    s.c.assign(c, c + n);
    s.q.assign(q, q + n);
    s.c[0] = p;
    s.q[0] = p;
    *rdot = cumulant_rate_derivative(ring, s);
    return SB_OK;
  });
}

sb_status sb_nn_meanfield_bound(int dimension, double p, double c1, double c2, double n, double* bound) {
  return guarded([&] {
    require(bound, "output");
    *bound = nn_meanfield_bound(dimension, p, c1, c2, n);
    return SB_OK;
  });
}

void sb_trace_free(sb_trace* trace) { delete trace; }

sb_status sb_trace_length(const sb_trace* trace, size_t* count) {
  return guarded([&] {
    require(trace, "trace");
    require(count, "output");
    *count = trace->trace.times.size();
    return SB_OK;
  });
}

sb_status sb_trace_series(const sb_trace* trace, const char* name, double* values, size_t cap, size_t* count) {
  return guarded([&] {
    require(trace, "trace");
    require(name, "series name");
    std::string s(name);
    if (s == "t") return copy_values(trace->trace.times, values, cap, count);
    if (s == "R") return copy_values(trace->trace.rates, values, cap, count);
    if (trace->cumulant) {
      if (s == "p") return copy_values(trace->p, values, cap, count);
      if (s == "c1") return copy_values(trace->c1, values, cap, count);
      if (s == "c2") return copy_values(trace->c2, values, cap, count);
      if (s == "Rdot") return copy_values(trace->rdot, values, cap, count);
    }
    fail(ErrorCode::invalid_argument, "trace has no series '" + s + "'");
  });
}

sb_status sb_trace_get_diagnostics(const sb_trace* trace, sb_trace_diagnostics* out) {
  return guarded([&] {
    require(trace, "trace");
    require(out, "output");
    const auto& t = trace->trace;
    *out = {t.initial_rate, t.max_trace_error, t.max_hermiticity_error, t.min_population, t.max_population,
            trace->max_imag_correlation};
    return SB_OK;
  });
}

sb_status sb_detect_burst(const sb_trace* trace, double threshold, sb_burst_report* out) {
  return guarded([&] {
    require(trace, "trace");
    require(out, "output");
    auto b = detect_burst(trace->trace, threshold);
    *out = {b.has_burst, b.is_delayed, b.peak_time, b.peak_rate, b.fractional_increase};
    return SB_OK;
  });
}

}  // extern "C"
