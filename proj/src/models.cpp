#include "superburst/models.hpp"

#include <cmath>
#include <map>

#include "superburst/error.hpp"
#include "superburst/text.hpp"

namespace superburst {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using Params = std::map<std::string, std::string, std::less<>>;

Params parse_params(std::string_view body, std::string_view descriptor) {
  Params params;
  if (text::trim(body).empty()) return params;
  for (auto item : text::split(body, ',')) {
    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      fail(ErrorCode::parse, "model parameter '" + std::string(item) + "' lacks '=' in '" + std::string(descriptor) + "'");
    std::string key(text::trim(item.substr(0, eq)));
    if (params.count(key)) fail(ErrorCode::parse, "duplicate model parameter '" + key + "'");
    params[key] = std::string(text::trim(item.substr(eq + 1)));
  }
  return params;
}

double take(Params& params, const std::string& key, std::string_view descriptor) {
  auto it = params.find(key);
  if (it == params.end())
    fail(ErrorCode::parse, "model '" + std::string(descriptor) + "' is missing parameter '" + key + "'");
  double v = text::parse_double(it->second, key);
  params.erase(it);
  return v;
}

void check_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) fail(ErrorCode::out_of_range, std::string(what) + " must lie in [0,1]");
}

}  // namespace

InteractionModel parse_model(std::string_view descriptor) {
  auto colon = descriptor.find(':');
  std::string_view kind = text::trim(descriptor.substr(0, colon));
  std::string_view body = colon == std::string_view::npos ? std::string_view{} : descriptor.substr(colon + 1);
  Params params = parse_params(body, descriptor);
  InteractionModel model;
  if (kind == "nn") {
    model = NearestNeighbor{take(params, "gamma", descriptor)};
  } else if (kind == "nnvar") {
    auto it = params.find("gammas");
    if (it == params.end()) fail(ErrorCode::parse, "model 'nnvar' is missing parameter 'gammas'");
    NearestNeighborNonuniform m;
    for (auto tok : text::split(it->second, '/')) m.gammas.push_back(text::parse_double(tok, "gammas"));
    params.erase(it);
    model = m;
  } else if (kind == "nnn") {
    double g1 = take(params, "g1", descriptor);
    double g2 = take(params, "g2", descriptor);
    model = NextNearestRing{g1, g2};
  } else if (kind == "exp") {
    model = Exponential{take(params, "gamma", descriptor)};
  } else if (kind == "power") {
    model = PowerLaw{take(params, "gamma", descriptor)};
  } else if (kind == "chiral") {
    double kd = take(params, "kd", descriptor);
    double chi = take(params, "chi", descriptor);
    model = ChiralInfiniteRange{kd, chi};
  } else if (kind == "dicke" || kind == "all") {
    model = AllToAll{take(params, "gamma", descriptor)};
  } else {
    fail(ErrorCode::parse, "unknown model kind '" + std::string(kind) + "'");
  }
  if (!params.empty())
    fail(ErrorCode::parse, "unknown model parameter '" + params.begin()->first + "' in '" + std::string(descriptor) + "'");
  validate_parameters(model);
  return model;
}

std::string describe(const InteractionModel& model) {
  using text::shortest;
  return std::visit(
      overloaded{
          [](const NearestNeighbor& m) { return "nn:gamma=" + shortest(m.gamma); },
          [](const NearestNeighborNonuniform& m) {
            std::string s = "nnvar:gammas=";
            for (std::size_t k = 0; k < m.gammas.size(); ++k) s += (k ? "/" : "") + shortest(m.gammas[k]);
            return s;
          },
          [](const NextNearestRing& m) { return "nnn:g1=" + shortest(m.gamma1) + ",g2=" + shortest(m.gamma2); },
          [](const Exponential& m) { return "exp:gamma=" + shortest(m.gamma); },
          [](const PowerLaw& m) { return "power:gamma=" + shortest(m.gamma); },
          [](const ChiralInfiniteRange& m) { return "chiral:kd=" + shortest(m.kd) + ",chi=" + shortest(m.chi); },
          [](const AllToAll& m) { return "dicke:gamma=" + shortest(m.gamma); },
      },
      model);
}

std::string model_kind(const InteractionModel& model) {
  static const char* names[] = {"nn", "nnvar", "nnn", "exp", "power", "chiral", "dicke"};
  return names[model.index()];
}

void validate_parameters(const InteractionModel& model) {
  std::visit(overloaded{
                 [](const NearestNeighbor& m) { check_unit(m.gamma, "gamma"); },
                 [](const NearestNeighborNonuniform& m) {
                   if (m.gammas.empty()) fail(ErrorCode::invalid_argument, "nnvar needs at least one coupling");
                   for (double g : m.gammas) check_unit(g, "gammas");
                 },
                 [](const NextNearestRing& m) {
                   check_unit(m.gamma1, "g1");
                   check_unit(m.gamma2, "g2");
                 },
                 [](const Exponential& m) { check_unit(m.gamma, "gamma"); },
                 [](const PowerLaw& m) {
                   if (!(m.gamma >= 0.0) || !std::isfinite(m.gamma))
                     fail(ErrorCode::out_of_range, "gamma must be non-negative");
                 },
                 [](const ChiralInfiniteRange& m) {
                   if (!std::isfinite(m.kd)) fail(ErrorCode::out_of_range, "kd must be finite");
                   if (!(m.chi >= -1.0 && m.chi <= 1.0)) fail(ErrorCode::out_of_range, "chi must lie in [-1,1]");
                 },
                 [](const AllToAll& m) { check_unit(m.gamma, "gamma"); },
             },
             model);
}

void check_compatible(const InteractionModel& model, const LatticeSpec& lattice) {
  validate_parameters(model);
  auto bad = [&](const std::string& why) {
    fail(ErrorCode::incompatible, "model '" + describe(model) + "' on lattice '" + lattice.descriptor() + "': " + why);
  };
  if (auto* m = std::get_if<NearestNeighborNonuniform>(&model)) {
    if (lattice.dimension() != 1 || lattice.periodic()) bad("requires an open 1D chain");
    if (m->gammas.size() + 1 != lattice.size()) bad("needs N-1 bond couplings");
  } else if (std::holds_alternative<NextNearestRing>(model)) {
    if (!lattice.periodic()) bad("requires a periodic 1D lattice");
    if (lattice.size() < 5 || lattice.size() % 2 == 0) bad("requires odd N >= 5");
  } else if (std::holds_alternative<ChiralInfiniteRange>(model)) {
    if (lattice.dimension() != 1 || lattice.periodic()) bad("requires an open 1D chain");
  }
}

std::optional<double> scalar_coupling(const InteractionModel& model) {
  if (auto* m = std::get_if<NearestNeighbor>(&model)) return m->gamma;
  if (auto* m = std::get_if<Exponential>(&model)) return m->gamma;
  if (auto* m = std::get_if<PowerLaw>(&model)) return m->gamma;
  if (auto* m = std::get_if<AllToAll>(&model)) return m->gamma;
  return std::nullopt;
}

InteractionModel with_coupling(const InteractionModel& model, double gamma) {
  if (std::holds_alternative<NearestNeighbor>(model)) return NearestNeighbor{gamma};
  if (std::holds_alternative<Exponential>(model)) return Exponential{gamma};
  if (std::holds_alternative<PowerLaw>(model)) return PowerLaw{gamma};
  if (std::holds_alternative<AllToAll>(model)) return AllToAll{gamma};
  fail(ErrorCode::unsupported, "model '" + model_kind(model) + "' has no single scalar coupling");
}

bool is_real_model(const InteractionModel& model) {
  if (auto* m = std::get_if<ChiralInfiniteRange>(&model)) return m->chi == 0.0;
  return true;
}

double distance_coupling(const InteractionModel& model, long long r2) {
  if (r2 <= 0) return 1.0;
  return std::visit(overloaded{
                        [&](const NearestNeighbor& m) { return r2 == 1 ? m.gamma : 0.0; },
                        [&](const NextNearestRing& m) { return r2 == 1 ? m.gamma1 : (r2 == 4 ? m.gamma2 : 0.0); },
                        [&](const Exponential& m) { return std::pow(m.gamma, std::sqrt(static_cast<double>(r2))); },
                        [&](const PowerLaw& m) { return m.gamma / std::sqrt(static_cast<double>(r2)); },
                        [&](const AllToAll& m) { return m.gamma; },
                        [&](const auto&) -> double {
                          fail(ErrorCode::unsupported, "model '" + model_kind(model) + "' is not distance-based");
                        },
                    },
                    model);
}

DecoherenceMatrix::DecoherenceMatrix(Eigen::MatrixXcd entries, std::string tag)
    : entries_(std::move(entries)), tag_(std::move(tag)) {
  real_ = entries_.imag().isZero(0.0);
}

DecoherenceMatrix DecoherenceMatrix::from_entries(Eigen::MatrixXcd entries, std::string tag) {
  const Eigen::Index n = entries.rows();
  if (n < 1 || entries.cols() != n) fail(ErrorCode::invalid_argument, "decoherence matrix must be square and non-empty");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(entries(i, i) - 1.0) > 1e-12) fail(ErrorCode::invalid_argument, "decoherence matrix needs unit diagonal");
    entries(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(entries(i, j) - std::conj(entries(j, i))) > 1e-12)
        fail(ErrorCode::invalid_argument, "decoherence matrix must be Hermitian");
      entries(j, i) = std::conj(entries(i, j));
    }
  }
  return DecoherenceMatrix(std::move(entries), std::move(tag));
}

DecoherenceMatrix build_decoherence(const InteractionModel& model, const LatticeSpec& lattice) {
  check_compatible(model, lattice);
  const std::size_t n = lattice.size();
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  auto set = [&](std::size_t i, std::size_t j, std::complex<double> v) {
    g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = std::conj(v);
  };
  if (auto* m = std::get_if<NearestNeighborNonuniform>(&model)) {
    for (std::size_t i = 0; i + 1 < n; ++i) set(i, i + 1, m->gammas[i]);
  } else if (auto* c = std::get_if<ChiralInfiniteRange>(&model)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double x = c->kd * (static_cast<double>(i) - static_cast<double>(j));
        set(i, j, {std::cos(x), -c->chi * std::sin(x)});
      }
  } else if (std::holds_alternative<NearestNeighbor>(model) || std::holds_alternative<NextNearestRing>(model)) {
    // Sparse models: fill from the neighbor lists.
    for (const auto& p : lattice.neighbor_pairs(1)) set(p.i, p.j, distance_coupling(model, 1));
    if (std::holds_alternative<NextNearestRing>(model))
      for (const auto& p : lattice.neighbor_pairs(2)) set(p.i, p.j, distance_coupling(model, 4));
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) set(i, j, distance_coupling(model, lattice.separation2(i, j)));
  }
  return DecoherenceMatrix(std::move(g), describe(model) + "@" + lattice.descriptor());
}

CoherentCoupling CoherentCoupling::parse(std::string_view descriptor) {
  descriptor = text::trim(descriptor);
  if (descriptor == "none" || descriptor.empty()) return none();
  auto colon = descriptor.find(':');
  if (colon != std::string_view::npos && descriptor.substr(0, colon) == "all")
    return all_to_all(text::parse_double(descriptor.substr(colon + 1), "coherent coupling"));
  fail(ErrorCode::parse, "unknown coherent coupling '" + std::string(descriptor) + "'");
}

std::string CoherentCoupling::descriptor() const {
  switch (kind) {
    case Kind::none: return "none";
    case Kind::all_to_all: return "all:" + text::shortest(strength);
    case Kind::custom: return "custom";
  }
  return "none";
}

Eigen::MatrixXcd build_coherent_coupling(const CoherentCoupling& coupling, std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  switch (coupling.kind) {
    case CoherentCoupling::Kind::none: return {};
    case CoherentCoupling::Kind::all_to_all: {
      Eigen::MatrixXcd j = Eigen::MatrixXcd::Constant(dim, dim, coupling.strength);
      j.diagonal().setZero();
      return j;
    }
    case CoherentCoupling::Kind::custom: {
      const auto& m = coupling.custom;
      if (m.rows() != dim || m.cols() != dim) fail(ErrorCode::invalid_argument, "coherent coupling has wrong size");
      if (!m.isApprox(m.adjoint(), 0.0) && (m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        fail(ErrorCode::invalid_argument, "coherent coupling must be Hermitian");
      return m;
    }
  }
  return {};
}

}  // namespace superburst
