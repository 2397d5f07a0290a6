#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace superburst {

enum class Boundary { open, periodic };

struct SitePair {
  std::size_t i = 0;
  std::size_t j = 0;
  double separation = 0.0;
  int graph_distance = 0;
};

// Row-major hyperrectangular array of emitters. Periodic boundaries are
// only meaningful in one dimension (a ring).
class LatticeSpec {
 public:
  LatticeSpec(std::vector<int> extents, Boundary boundary = Boundary::open, double spacing = 1.0);

  static LatticeSpec chain(int n, double spacing = 1.0);
  static LatticeSpec ring(int n, double spacing = 1.0);
  static LatticeSpec parse(std::string_view descriptor);

  int dimension() const { return static_cast<int>(extents_.size()); }
  const std::vector<int>& extents() const { return extents_; }
  Boundary boundary() const { return boundary_; }
  double spacing() const { return spacing_; }
  std::size_t size() const { return size_; }
  bool periodic() const { return boundary_ == Boundary::periodic; }

  std::vector<int> coordinates(std::size_t index) const;
  std::size_t index_of(const std::vector<int>& coords) const;

  // Open: Euclidean distance; periodic ring: path distance along the ring.
  double separation(std::size_t i, std::size_t j) const;
  // Squared separation in lattice units (exact integer).
  long long separation2(std::size_t i, std::size_t j) const;
  int graph_distance(std::size_t i, std::size_t j) const;

  std::vector<SitePair> neighbor_pairs(int order) const;

  std::string descriptor() const;

  bool operator==(const LatticeSpec& other) const = default;

 private:
  void check_index(std::size_t index) const;

  std::vector<int> extents_;
  Boundary boundary_;
  double spacing_;
  std::size_t size_;
};

}  // namespace superburst
