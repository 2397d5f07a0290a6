#include "superburst/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "superburst/error.hpp"
#include "superburst/text.hpp"

namespace superburst {

LatticeSpec::LatticeSpec(std::vector<int> extents, Boundary boundary, double spacing)
    : extents_(std::move(extents)), boundary_(boundary), spacing_(spacing), size_(1) {
  if (extents_.empty()) fail(ErrorCode::invalid_argument, "lattice dimension must be >= 1");
  for (int n : extents_) {
    if (n < 1) fail(ErrorCode::invalid_argument, "lattice extents must be >= 1");
    size_ *= static_cast<std::size_t>(n);
  }
  if (!(spacing_ > 0.0) || !std::isfinite(spacing_))
    fail(ErrorCode::invalid_argument, "lattice spacing must be positive");
  if (boundary_ == Boundary::periodic) {
    if (extents_.size() != 1)
      fail(ErrorCode::unsupported, "periodic boundaries are only supported in one dimension");
    if (extents_[0] < 3) fail(ErrorCode::invalid_argument, "periodic lattice needs at least 3 sites");
  }
}

LatticeSpec LatticeSpec::chain(int n, double spacing) { return LatticeSpec({n}, Boundary::open, spacing); }

LatticeSpec LatticeSpec::ring(int n, double spacing) { return LatticeSpec({n}, Boundary::periodic, spacing); }

// D:n1xn2x...[:periodic][:d=spacing]
LatticeSpec LatticeSpec::parse(std::string_view descriptor) {
  auto parts = text::split(descriptor, ':');
  if (parts.size() < 2) fail(ErrorCode::parse, "lattice descriptor '" + std::string(descriptor) + "' needs D:extents");
  long long dim = text::parse_int(parts[0], "lattice dimension");
  std::vector<int> extents;
  for (auto tok : text::split(parts[1], 'x')) {
    long long n = text::parse_int(tok, "lattice extents");
    if (n < 1 || n > 100000000) fail(ErrorCode::parse, "lattice extent '" + std::string(tok) + "' out of range");
    extents.push_back(static_cast<int>(n));
  }
  if (dim < 1 || static_cast<std::size_t>(dim) != extents.size())
    fail(ErrorCode::parse, "lattice dimension '" + std::string(parts[0]) + "' does not match extents '" +
                               std::string(parts[1]) + "'");
  Boundary boundary = Boundary::open;
  double spacing = 1.0;
  for (std::size_t k = 2; k < parts.size(); ++k) {
    auto tok = text::trim(parts[k]);
    if (tok == "periodic") {
      boundary = Boundary::periodic;
    } else if (tok == "open") {
      boundary = Boundary::open;
    } else if (tok.substr(0, 2) == "d=") {
      spacing = text::parse_double(tok.substr(2), "lattice spacing");
    } else {
      fail(ErrorCode::parse, "unknown lattice option '" + std::string(tok) + "'");
    }
  }
  try {
    return LatticeSpec(std::move(extents), boundary, spacing);
  } catch (const Error& e) {
    fail(ErrorCode::parse, std::string(e.what()) + " (lattice '" + std::string(descriptor) + "')");
  }
}

void LatticeSpec::check_index(std::size_t index) const {
  if (index >= size_) fail(ErrorCode::out_of_range, "site index " + std::to_string(index) + " out of range");
}

std::vector<int> LatticeSpec::coordinates(std::size_t index) const {
  check_index(index);
  std::vector<int> c(extents_.size());
  for (std::size_t k = extents_.size(); k-- > 0;) {
    c[k] = static_cast<int>(index % static_cast<std::size_t>(extents_[k]));
    index /= static_cast<std::size_t>(extents_[k]);
  }
  return c;
}

std::size_t LatticeSpec::index_of(const std::vector<int>& coords) const {
  if (coords.size() != extents_.size()) fail(ErrorCode::invalid_argument, "coordinate length mismatch");
  std::size_t index = 0;
  for (std::size_t k = 0; k < extents_.size(); ++k) {
    if (coords[k] < 0 || coords[k] >= extents_[k]) fail(ErrorCode::out_of_range, "coordinate out of range");
    index = index * static_cast<std::size_t>(extents_[k]) + static_cast<std::size_t>(coords[k]);
  }
  return index;
}

long long LatticeSpec::separation2(std::size_t i, std::size_t j) const {
  if (periodic()) {
    check_index(i);
    check_index(j);
    long long d = std::llabs(static_cast<long long>(i) - static_cast<long long>(j));
    d = std::min<long long>(d, static_cast<long long>(size_) - d);
    return d * d;
  }
  auto a = coordinates(i);
  auto b = coordinates(j);
  long long s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    long long d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

double LatticeSpec::separation(std::size_t i, std::size_t j) const {
  return spacing_ * std::sqrt(static_cast<double>(separation2(i, j)));
}

int LatticeSpec::graph_distance(std::size_t i, std::size_t j) const {
  if (periodic()) return static_cast<int>(std::lround(std::sqrt(static_cast<double>(separation2(i, j)))));
  auto a = coordinates(i);
  auto b = coordinates(j);
  int s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
  return s;
}

std::vector<SitePair> LatticeSpec::neighbor_pairs(int order) const {
  if (order != 1 && order != 2) fail(ErrorCode::invalid_argument, "neighbor order must be 1 or 2");
  std::vector<SitePair> pairs;
  auto push = [&](std::size_t a, std::size_t b, int dist) {
    if (a > b) std::swap(a, b);
    pairs.push_back({a, b, spacing_ * dist, dist});
  };
  if (order == 2) {
    if (!periodic() || size_ < 5)
      fail(ErrorCode::unsupported, "next-nearest pairs require a ring with at least 5 sites");
    for (std::size_t i = 0; i < size_; ++i) push(i, (i + 2) % size_, 2);
  } else if (periodic()) {
    for (std::size_t i = 0; i < size_; ++i) push(i, (i + 1) % size_, 1);
  } else {
    std::size_t stride = size_;
    for (std::size_t k = 0; k < extents_.size(); ++k) {
      stride /= static_cast<std::size_t>(extents_[k]);
      for (std::size_t i = 0; i < size_; ++i) {
        int c = static_cast<int>((i / stride) % static_cast<std::size_t>(extents_[k]));
        if (c + 1 < extents_[k]) push(i, i + stride, 1);
      }
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const SitePair& x, const SitePair& y) { return x.i != y.i ? x.i < y.i : x.j < y.j; });
  return pairs;
}

std::string LatticeSpec::descriptor() const {
  std::string s = std::to_string(extents_.size()) + ":";
  for (std::size_t k = 0; k < extents_.size(); ++k) {
    if (k) s += "x";
    s += std::to_string(extents_[k]);
  }
  if (periodic()) s += ":periodic";
  if (spacing_ != 1.0) s += ":d=" + text::shortest(spacing_);
  return s;
}

}  // namespace superburst
