#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace percolab {

enum class LatticeKind { square, hypercubic, triangular, hexagonal, bowtie, tree, oriented };
enum class BoundaryKind { free, periodic_x };
enum class Transform { dual, star };
enum class Mode { site, bond };

std::string to_string(LatticeKind k);
std::string to_string(BoundaryKind b);
std::string to_string(Mode m);
LatticeKind lattice_kind_from_string(const std::string& s);
BoundaryKind boundary_from_string(const std::string& s);
Mode mode_from_string(const std::string& s);

/// Finite region of one of the supported lattices.
/// `extent` is the side length in vertices per axis, or the depth for trees.
struct LatticeSpec {
  LatticeKind kind = LatticeKind::square;
  int extent = 1;
  int dim = 2;    // hypercubic / oriented only
  int arity = 2;  // tree only
  BoundaryKind boundary = BoundaryKind::free;

  LatticeSpec with_extent(int L) const {
    LatticeSpec s = *this;
    s.extent = L;
    return s;
  }
};

/// Concrete finite graph with dense vertex/edge ids and named boundary sets.
/// Immutable after construction; safe to share across workers.
struct Graph {
  LatticeSpec spec;
  int dim = 2;
  bool oriented = false;

  std::vector<int> shape;  // per-axis vertex counts (grid kinds only)
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> adj;  // (neighbor, edge id)
  std::map<std::string, std::vector<std::int32_t>> boundary_sets;

  std::vector<std::int32_t> coords;          // vertex_count * dim (grid/simplex kinds)
  std::vector<std::array<double, 2>> pos;    // 2D embedding where meaningful

  std::size_t vertex_count() const { return adj.size(); }
  std::size_t edge_count() const { return edges.size(); }
  std::size_t element_count(Mode m) const {
    return m == Mode::site ? vertex_count() : edge_count();
  }
  int degree(int v) const { return static_cast<int>(adj[v].size()); }

  const std::vector<std::int32_t>& boundary_set(const std::string& name) const;

  /// Row-major vertex lookup for grid kinds (square, hypercubic, triangular,
  /// hexagonal, and bow-tie corner vertices). Returns -1 if out of range.
  int vertex_at(std::span<const int> c) const;

  int center_vertex() const;

  std::array<double, 2> position(int v) const;
};

Graph build_lattice(const LatticeSpec& spec);

/// Rectangular Lx x Ly region with square, triangular or hexagonal adjacency.
/// Same boundary sets as build_lattice.
Graph build_grid2d(LatticeKind kind, int Lx, int Ly,
                   BoundaryKind boundary = BoundaryKind::free);

/// Matching-pair transform. Supported: dual(square)=square,
/// dual(triangular)=hexagonal, dual(hexagonal)=triangular,
/// star(triangular)=triangular. Everything else is an error.
LatticeSpec dual_or_star(const LatticeSpec& spec, Transform which);

/// Discretization of the unit equilateral triangle (vertices a, b, c) by the
/// triangular lattice with mesh delta. Boundary sets "arc_ab" and "arc_cd",
/// with d on side (ca) at distance x from c.
Graph build_triangle_domain(double x, double delta);

}  // namespace percolab
