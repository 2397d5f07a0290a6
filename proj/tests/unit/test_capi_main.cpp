#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "superburst/superburst.h"

extern "C" int capi_c_smoke(void);

namespace {

struct Setup {
  sb_lattice* lattice = nullptr;
  sb_model* model = nullptr;
  sb_matrix* matrix = nullptr;
  sb_spectrum* spectrum = nullptr;

  Setup(const char* model_desc, const char* lattice_desc) {
    REQUIRE(sb_lattice_parse(lattice_desc, &lattice) == SB_OK);
    REQUIRE(sb_model_parse(model_desc, &model) == SB_OK);
    REQUIRE(sb_matrix_build(model, lattice, &matrix) == SB_OK);
    REQUIRE(sb_spectrum_analyze(matrix, 1e-10, 1, &spectrum) == SB_OK);
  }
  ~Setup() {
    sb_spectrum_free(spectrum);
    sb_matrix_free(matrix);
    sb_model_free(model);
    sb_lattice_free(lattice);
  }
};

std::vector<double> series(const sb_trace* t, const char* name) {
  size_t count = 0;
  sb_trace_series(t, name, nullptr, 0, &count);
  std::vector<double> v(count);
  REQUIRE(sb_trace_series(t, name, v.data(), v.size(), &count) == SB_OK);
  return v;
}

}  // namespace

TEST_CASE("header compiles and runs as C") { CHECK(capi_c_smoke() == 0); }

TEST_CASE("status names and version") {
  CHECK(std::string(sb_status_name(SB_OK)) == "ok");
  CHECK(std::string(sb_status_name(SB_ERR_BUFFER)) == "buffer");
  CHECK(std::string(sb_status_name(SB_ERR_NO_ROOT)) == "no_root");
  CHECK(std::string(sb_status_name(static_cast<sb_status>(99))) == "unknown");
  CHECK(std::string(sb_version()) == "1.0.0");
}

TEST_CASE("errors map to status codes and set the last error") {
  sb_lattice* lat = nullptr;
  CHECK(sb_lattice_parse("1:0", &lat) != SB_OK);
  CHECK(lat == nullptr);
  CHECK(std::strlen(sb_last_error()) > 0);
  CHECK(sb_lattice_parse("garbage", &lat) == SB_ERR_PARSE);
  CHECK(sb_lattice_parse(nullptr, &lat) == SB_ERR_INVALID_ARGUMENT);
  CHECK(sb_lattice_parse("1:4", nullptr) == SB_ERR_INVALID_ARGUMENT);

  sb_model* m = nullptr;
  CHECK(sb_model_parse("exp:gamma=1.5", &m) == SB_ERR_OUT_OF_RANGE);
  CHECK(sb_model_parse("nn:gamma=0.1", &m) == SB_OK);
  CHECK(std::string(sb_last_error()).empty());
  REQUIRE(sb_lattice_parse("1:5:open", &lat) == SB_OK);
  CHECK(sb_model_check(m, lat) == SB_OK);
  sb_model_free(m);
  sb_lattice_free(lat);
}

TEST_CASE("string and array outputs report the full length") {
  sb_model* m = nullptr;
  REQUIRE(sb_model_parse("exp:gamma=0.25", &m) == SB_OK);
  size_t len = 0;
  CHECK(sb_model_descriptor(m, nullptr, 0, &len) == SB_ERR_BUFFER);
  CHECK(len == std::strlen("exp:gamma=0.25"));
  std::string buf(len + 1, '\0');
  CHECK(sb_model_descriptor(m, buf.data(), buf.size(), &len) == SB_OK);
  CHECK(std::string(buf.c_str()) == "exp:gamma=0.25");
  char small[4];
  CHECK(sb_model_descriptor(m, small, sizeof small, &len) == SB_ERR_BUFFER);
  CHECK(std::string(small) == "exp");
  CHECK(std::string(sb_last_error()) == "buffer too small");
  CHECK(sb_model_kind(m, buf.data(), buf.size(), &len) == SB_OK);
  CHECK(std::string(buf.c_str()) == "exp");

  double g = 0;
  int has = 0;
  CHECK(sb_model_coupling(m, &g, &has) == SB_OK);
  CHECK(has == 1);
  CHECK(g == 0.25);
  sb_model* m2 = nullptr;
  REQUIRE(sb_model_with_coupling(m, 0.5, &m2) == SB_OK);
  int eq = 1;
  CHECK(sb_model_equal(m, m2, &eq) == SB_OK);
  CHECK(eq == 0);
  sb_model_free(m2);
  sb_model_free(m);

  double times[3];
  size_t count = 0;
  CHECK(sb_time_grid(1.0, 10, 0, times, 3, &count) == SB_ERR_BUFFER);
  CHECK(count >= 10);
  CHECK(times[0] == 0.0);
}

TEST_CASE("lattice accessors") {
  sb_lattice* a = nullptr;
  sb_lattice* b = nullptr;
  REQUIRE(sb_lattice_parse("2:3x4", &a) == SB_OK);
  REQUIRE(sb_lattice_parse("2:3x4:open", &b) == SB_OK);
  size_t n = 0, count = 0;
  int d = 0, periodic = 0, eq = 0, ext[4];
  CHECK(sb_lattice_size(a, &n) == SB_OK);
  CHECK(n == 12);
  CHECK(sb_lattice_dimension(a, &d) == SB_OK);
  CHECK(d == 2);
  CHECK(sb_lattice_extents(a, ext, 4, &count) == SB_OK);
  CHECK(count == 2);
  CHECK(ext[0] == 3);
  CHECK(ext[1] == 4);
  CHECK(sb_lattice_extents(a, ext, 1, &count) == SB_ERR_BUFFER);
  CHECK(sb_lattice_is_periodic(a, &periodic) == SB_OK);
  CHECK(sb_lattice_equal(a, b, &eq) == SB_OK);
  CHECK(periodic == 0);
  CHECK(eq == 1);
  sb_lattice_free(a);
  sb_lattice_free(b);
  b = nullptr;
  CHECK(sb_lattice_parse("2:3x4:periodic", &b) == SB_ERR_PARSE);
  REQUIRE(sb_lattice_parse("1:7:periodic", &b) == SB_OK);
  CHECK(sb_lattice_is_periodic(b, &periodic) == SB_OK);
  CHECK(periodic == 1);
  sb_lattice_free(b);
}

TEST_CASE("matrix and spectrum") {
  Setup s("dicke:gamma=1", "1:4");
  size_t n = 0;
  CHECK(sb_matrix_size(s.matrix, &n) == SB_OK);
  CHECK(n == 4);
  double re = 0, im = 1;
  CHECK(sb_matrix_entry(s.matrix, 1, 2, &re, &im) == SB_OK);
  CHECK(re == 1.0);
  CHECK(im == 0.0);
  CHECK(sb_matrix_entry(s.matrix, 4, 0, &re, &im) == SB_ERR_OUT_OF_RANGE);
  int real = 0, cert = 0;
  CHECK(sb_matrix_is_real(s.matrix, &real) == SB_OK);
  CHECK(real == 1);
  CHECK(sb_matrix_psd_certificate(s.matrix, 1e-10, &cert) == SB_OK);
  CHECK(cert == 1);

  sb_spectrum_info info{};
  REQUIRE(sb_spectrum_get_info(s.spectrum, &info) == SB_OK);
  CHECK(info.n == 4);
  CHECK(info.max_eigenvalue == doctest::Approx(4.0));
  CHECK(info.trace_gamma2 == doctest::Approx(16.0));
  CHECK(info.eigen_trace_gamma3 == doctest::Approx(64.0));
  double vr[4], vi[4];
  CHECK(sb_spectrum_eigenvector(s.spectrum, 0, vr, vi, 4) == SB_OK);
  double norm = 0;
  for (int i = 0; i < 4; ++i) norm += vr[i] * vr[i] + vi[i] * vi[i];
  CHECK(norm == doctest::Approx(1.0));
  CHECK(sb_spectrum_eigenvector(s.spectrum, 0, vr, vi, 2) == SB_ERR_BUFFER);

  sb_lattice* lat = nullptr;
  sb_model* nn = nullptr;
  REQUIRE(sb_lattice_parse("1:10", &lat) == SB_OK);
  REQUIRE(sb_model_parse("nn:gamma=0.6", &nn) == SB_OK);
  double closed[10];
  size_t count = 0;
  int has = 0;
  CHECK(sb_closed_form_spectrum(nn, lat, closed, 10, &count, &has) == SB_OK);
  CHECK(has == 1);
  CHECK(count == 10);
  double gp = 0;
  CHECK(sb_gamma_p(nn, lat, 1e-12, &gp) == SB_OK);
  CHECK(gp == doctest::Approx(1.0 / (2.0 * std::cos(M_PI / 11.0))).epsilon(1e-10));
  sb_matrix* m = nullptr;
  sb_spectrum* sp = nullptr;
  REQUIRE(sb_matrix_build(nn, lat, &m) == SB_OK);
  REQUIRE(sb_spectrum_analyze(m, 1e-10, 0, &sp) == SB_OK);
  REQUIRE(sb_spectrum_get_info(sp, &info) == SB_OK);
  CHECK(info.is_physical == 0);
  CHECK(sb_spectrum_eigenvector(sp, 0, vr, vi, 10) != SB_OK);
  sb_spectrum_free(sp);
  sb_matrix_free(m);
  sb_model_free(nn);
  sb_lattice_free(lat);
}

TEST_CASE("matrix from entries validates Hermiticity") {
  const double re[4] = {1, 0.5, 0.5, 1}, im[4] = {0, 0.2, -0.2, 0};
  sb_matrix* m = nullptr;
  CHECK(sb_matrix_from_entries(2, re, im, &m) == SB_OK);
  int real = 1;
  CHECK(sb_matrix_is_real(m, &real) == SB_OK);
  CHECK(real == 0);
  sb_matrix_free(m);
  const double bad_im[4] = {0, 0.2, 0.2, 0};
  m = nullptr;
  CHECK(sb_matrix_from_entries(2, re, bad_im, &m) != SB_OK);
  CHECK(m == nullptr);
  CHECK(sb_matrix_from_entries(2, re, nullptr, &m) == SB_OK);
  sb_matrix_free(m);
}

TEST_CASE("correlations") {
  Setup s("dicke:gamma=1", "1:4");
  sb_correlation_report r{};
  REQUIRE(sb_correlate(s.spectrum, &r) == SB_OK);
  CHECK(r.g2 == doctest::Approx(1.5));
  CHECK(r.has_g3 == 1);
  CHECK(r.g3 == doctest::Approx(2.25));
  CHECK(r.rdot0 == doctest::Approx(8.0));
  CHECK(r.rddot0 == doctest::Approx(-32.0));
  CHECK(r.is_superradiant == 1);

  double g2 = 0, g3 = 0;
  CHECK(sb_g2_from_traces(4, 4, 16, &g2) == SB_OK);
  CHECK(g2 == doctest::Approx(1.5));
  CHECK(sb_g3_from_traces(4, 16, 64, &g3) == SB_OK);
  CHECK(g3 == doctest::Approx(2.25));
  CHECK(sb_g2_from_traces(0, 0, 0, &g2) != SB_OK);
  CHECK(sb_chiral_g2(2, 0.0, 1.0, &g2) == SB_OK);
  CHECK(g2 == doctest::Approx(1.0));

  double rate = 0;
  CHECK(sb_one_jump_rate(s.spectrum, s.matrix, &rate) == SB_OK);
  CHECK(rate == doctest::Approx(4.0 * 1.5));
  double slope = 0;
  CHECK(sb_product_state_rdot0(s.matrix, M_PI, 0.0, &slope) == SB_OK);
  CHECK(slope == doctest::Approx(8.0));
}

TEST_CASE("critical couplings and regions") {
  sb_lattice* lat = nullptr;
  sb_model* m = nullptr;
  REQUIRE(sb_lattice_parse("1:4", &lat) == SB_OK);
  REQUIRE(sb_model_parse("dicke:gamma=1", &m) == SB_OK);
  sb_critical c{};
  CHECK(sb_gamma_s(m, lat, &c) == SB_OK);
  CHECK(c.has_transition == 1);
  CHECK(c.gamma == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-10));
  CHECK(std::strlen(c.method) > 0);
  sb_model_free(m);
  sb_lattice_free(lat);

  REQUIRE(sb_model_parse("nn:gamma=0.5", &m) == SB_OK);
  const int ext[1] = {101};
  CHECK(sb_gamma_s_bulk(m, ext, 1, &c) == SB_OK);
  double lim = 0;
  int has = 0;
  CHECK(sb_gamma_s_limit(m, 1, &lim, &has) == SB_OK);
  CHECK(has == 1);
  CHECK(lim == doctest::Approx(1.0 / std::sqrt(2.0)));
  sb_model_free(m);

  sb_region r = SB_REGION_UNPHYSICAL;
  CHECK(sb_nnn_region(0.65, 0.3, &r) == SB_OK);
  CHECK(r == SB_REGION_SUPERRADIANT);
  CHECK(sb_nnn_region(0.55, 0.5, &r) == SB_OK);
  CHECK(r == SB_REGION_UNPHYSICAL);
  CHECK(sb_nnn_region_finite(0.65, 0.3, 101, 1e-10, &r) == SB_OK);
  CHECK(r == SB_REGION_SUPERRADIANT);
  CHECK(std::string(sb_region_name(SB_REGION_PHYSICAL_NO_BURST)) == "physical_no_burst");
  CHECK(sb_nnn_min_gamma2() > 0.18);
  CHECK(sb_nnn_min_gamma2() < 0.19);
}

TEST_CASE("bounds") {
  sb_lattice* lat = nullptr;
  sb_model* m = nullptr;
  REQUIRE(sb_lattice_parse("1:9:periodic", &lat) == SB_OK);
  REQUIRE(sb_model_parse("exp:gamma=0.3", &m) == SB_OK);
  sb_bound b{};
  int has = 0;
  CHECK(sb_analytic_bound(m, lat, &b, &has) == SB_OK);
  CHECK(has == 1);
  CHECK(b.bound_value == doctest::Approx(9.0));
  CHECK(b.certifies_no_burst == 1);
  CHECK(std::string(b.method) == "exponential_1d");
  sb_model_free(m);

  REQUIRE(sb_model_parse("power:gamma=0.1", &m) == SB_OK);
  sb_lattice* open = nullptr;
  REQUIRE(sb_lattice_parse("1:9:open", &open) == SB_OK);
  CHECK(sb_analytic_bound(m, open, &b, &has) == SB_OK);
  CHECK(has == 0);
  sb_model_free(m);
  sb_lattice_free(open);
  sb_lattice_free(lat);

  Setup s("dicke:gamma=1", "1:4");
  CHECK(sb_brute_force_bound(s.matrix, &b) == SB_OK);
  CHECK(b.bound_value == doctest::Approx(6.0));
  CHECK(b.certifies_no_burst == 0);
  CHECK(std::string(b.method) == "brute_force");
}

TEST_CASE("Lindblad trace and burst detection") {
  Setup s("dicke:gamma=1", "1:2");
  size_t count = 0;
  sb_time_grid(2.0, 40, 10, nullptr, 0, &count);
  std::vector<double> times(count);
  REQUIRE(sb_time_grid(2.0, 40, 10, times.data(), times.size(), &count) == SB_OK);
  sb_evolve_options opt = sb_default_evolve_options();
  CHECK(opt.rtol > 0);
  sb_trace* t = nullptr;
  REQUIRE(sb_lindblad_evolve(s.matrix, nullptr, "excited", times.data(), times.size(), &opt, &t) == SB_OK);
  size_t len = 0;
  CHECK(sb_trace_length(t, &len) == SB_OK);
  CHECK(len == times.size());
  auto r = series(t, "R");
  auto tt = series(t, "t");
  for (size_t k = 0; k < r.size(); ++k)
    CHECK(r[k] == doctest::Approx(2.0 * std::exp(-2.0 * tt[k]) * (1.0 + 2.0 * tt[k])).epsilon(1e-7));
  CHECK(sb_trace_series(t, "p", nullptr, 0, &len) == SB_ERR_INVALID_ARGUMENT);
  sb_burst_report br{};
  CHECK(sb_detect_burst(t, 0.0, &br) == SB_OK);
  CHECK(br.has_burst == 0);
  sb_trace_diagnostics d{};
  CHECK(sb_trace_get_diagnostics(t, &d) == SB_OK);
  CHECK(d.initial_rate == doctest::Approx(2.0));
  CHECK(d.max_trace_error < 1e-8);
  sb_trace_free(t);

  double rd = 0;
  CHECK(sb_lindblad_rdot0(s.matrix, "all:0.7", "excited", &rd) == SB_OK);
  CHECK(rd == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(sb_lindblad_evolve(s.matrix, "bogus", nullptr, times.data(), times.size(), nullptr, &t) != SB_OK);
  CHECK(sb_lindblad_evolve(s.matrix, nullptr, "excited", nullptr, 3, nullptr, &t) == SB_ERR_INVALID_ARGUMENT);

  Setup four("dicke:gamma=1", "1:4");
  REQUIRE(sb_lindblad_evolve(four.matrix, nullptr, "excited", times.data(), times.size(), &opt, &t) == SB_OK);
  CHECK(sb_detect_burst(t, 0.0, &br) == SB_OK);
  CHECK(br.has_burst == 1);
  CHECK(br.peak_rate > 4.0);
  sb_trace_free(t);

  REQUIRE(sb_dicke_local_evolve(4, 1.0, times.data(), times.size(), nullptr, &t) == SB_OK);
  CHECK(sb_detect_burst(t, 0.0, &br) == SB_OK);
  CHECK(br.has_burst == 1);
  sb_trace_free(t);
}

TEST_CASE("cumulant trace and mean-field bound") {
  Setup s("exp:gamma=0.5", "1:13:periodic");
  std::vector<double> times{0.0, 0.1, 0.2, 0.5};
  sb_trace* t = nullptr;
  REQUIRE(sb_cumulant_evolve(s.matrix, nullptr, nullptr, times.data(), times.size(), nullptr, &t) == SB_OK);
  auto p = series(t, "p");
  auto c1 = series(t, "c1");
  auto rdot = series(t, "Rdot");
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(c1[0] == doctest::Approx(0.0));
  sb_correlation_report r{};
  REQUIRE(sb_correlate(s.spectrum, &r) == SB_OK);
  CHECK(rdot[0] == doctest::Approx(r.rdot0).epsilon(1e-9));
  sb_trace_free(t);

  std::vector<double> c(13, 0.0), q(13, 1.0);
  double rd = 0;
  CHECK(sb_cumulant_rate_derivative(s.matrix, nullptr, 1.0, c.data(), q.data(), 13, &rd) == SB_OK);
  CHECK(rd == doctest::Approx(r.rdot0).epsilon(1e-9));
  CHECK(sb_cumulant_rate_derivative(s.matrix, nullptr, 1.0, c.data(), q.data(), 12, &rd) == SB_ERR_INVALID_ARGUMENT);

  double b = 0;
  CHECK(sb_nn_meanfield_bound(1, 1.0, 0.0, 0.0, 10.0, &b) == SB_OK);
  CHECK(b == doctest::Approx(-8.75));
  CHECK(sb_nn_meanfield_bound(1, 0.5, 0.6, 0.1, 10.0, &b) != SB_OK);
}

TEST_CASE("null handles are rejected") {
  size_t n = 0;
  sb_bound b{};
  sb_correlation_report r{};
  CHECK(sb_matrix_size(nullptr, &n) == SB_ERR_INVALID_ARGUMENT);
  CHECK(sb_correlate(nullptr, &r) == SB_ERR_INVALID_ARGUMENT);
  CHECK(sb_brute_force_bound(nullptr, &b) == SB_ERR_INVALID_ARGUMENT);
  CHECK(sb_trace_length(nullptr, &n) == SB_ERR_INVALID_ARGUMENT);
  sb_matrix_free(nullptr);
  sb_trace_free(nullptr);
}
