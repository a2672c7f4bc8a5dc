#include "percolab/lattice.hpp"

#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>

namespace percolab {

namespace {

constexpr double kSqrt3Half = 0.8660254037844386;

void add_edge(Graph& g, int u, int v) {
  int e = static_cast<int>(g.edges.size());
  g.edges.emplace_back(u, v);
  g.adj[u].emplace_back(v, e);
  if (!g.oriented) g.adj[v].emplace_back(u, e);
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Row-major index over `shape`, axis 0 fastest.
int grid_index(const std::vector<int>& shape, std::span<const int> c) {
  int idx = 0;
  for (int a = static_cast<int>(shape.size()) - 1; a >= 0; --a) {
    if (c[a] < 0 || c[a] >= shape[a]) return -1;
    idx = idx * shape[a] + c[a];
  }
  return idx;
}

void fill_grid_coords(Graph& g, std::size_t n) {
  int d = static_cast<int>(g.shape.size());
  g.coords.resize(n * d);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t rest = v;
    for (int a = 0; a < d; ++a) {
      g.coords[v * d + a] = static_cast<std::int32_t>(rest % g.shape[a]);
      rest /= g.shape[a];
    }
  }
}

// left/right along axis 0, bottom/top along axis 1, plus the full box
// boundary (non-periodic axes only).
void grid_boundary_sets(Graph& g, std::size_t n_grid) {
  int d = static_cast<int>(g.shape.size());
  bool periodic_x = g.spec.boundary == BoundaryKind::periodic_x;
  std::vector<std::int32_t> left, right, bottom, top, boundary;
  for (std::size_t v = 0; v < n_grid; ++v) {
    const std::int32_t* c = &g.coords[v * d];
    if (c[0] == 0) left.push_back(static_cast<std::int32_t>(v));
    if (c[0] == g.shape[0] - 1) right.push_back(static_cast<std::int32_t>(v));
    if (d >= 2) {
      if (c[1] == 0) bottom.push_back(static_cast<std::int32_t>(v));
      if (c[1] == g.shape[1] - 1) top.push_back(static_cast<std::int32_t>(v));
    }
    bool on_boundary = false;
    for (int a = 0; a < d; ++a) {
      if (a == 0 && periodic_x) continue;
      if (c[a] == 0 || c[a] == g.shape[a] - 1) on_boundary = true;
    }
    if (on_boundary) boundary.push_back(static_cast<std::int32_t>(v));
  }
  g.boundary_sets["left"] = std::move(left);
  g.boundary_sets["right"] = std::move(right);
  if (d >= 2) {
    g.boundary_sets["bottom"] = std::move(bottom);
    g.boundary_sets["top"] = std::move(top);
  }
  g.boundary_sets["boundary"] = std::move(boundary);
}

Graph build_box(const LatticeSpec& spec, std::vector<int> shape) {
  int d = static_cast<int>(shape.size());
  for (int L : shape) require(L >= 1, "lattice extent must be >= 1");
  require(d >= 1, "hypercubic dimension must be >= 1");

  Graph g;
  g.spec = spec;
  g.dim = d;
  g.shape = std::move(shape);
  std::size_t n = 1;
  for (int a = 0; a < d; ++a) n *= static_cast<std::size_t>(g.shape[a]);
  g.adj.resize(n);
  fill_grid_coords(g, n);

  bool tri = spec.kind == LatticeKind::triangular;
  bool hex = spec.kind == LatticeKind::hexagonal;
  bool periodic_x = spec.boundary == BoundaryKind::periodic_x && g.shape[0] >= 3;

  std::vector<int> c(d), nb(d);
  for (std::size_t v = 0; v < n; ++v) {
    for (int a = 0; a < d; ++a) c[a] = g.coords[v * d + a];
    for (int a = 0; a < d; ++a) {
      nb = c;
      nb[a] = c[a] + 1;
      if (nb[a] == g.shape[a] && a == 0 && periodic_x) nb[a] = 0;
      if (nb[a] >= g.shape[a]) continue;
      if (hex && a == 1 && (c[0] + c[1]) % 2 != 0) continue;  // brick wall verticals
      add_edge(g, static_cast<int>(v), grid_index(g.shape, nb));
    }
    if (tri && c[0] + 1 < g.shape[0] && c[1] - 1 >= 0) {
      nb = c;
      nb[0] = c[0] + 1;
      nb[1] = c[1] - 1;
      add_edge(g, static_cast<int>(v), grid_index(g.shape, nb));
    }
  }

  if (d == 2) {
    g.pos.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      double x = g.coords[v * 2], y = g.coords[v * 2 + 1];
      if (tri)
        g.pos[v] = {x + 0.5 * y, y * kSqrt3Half};
      else
        g.pos[v] = {x, y};
    }
  }
  grid_boundary_sets(g, n);
  return g;
}

// Wall-to-wall tiling by two-triangle bow-ties: every column of vertical
// edges, plus a degree-4 knot vertex in each face joined to the face's four
// corners. Interior corners have degree 6, knots degree 4; the bond threshold
// solves p^5 - 6p^3 + 6p^2 + p - 1 = 0.
Graph build_bowtie(const LatticeSpec& spec) {
  int L = spec.extent;
  require(L >= 1, "lattice extent must be >= 1");
  Graph g;
  g.spec = spec;
  g.dim = 2;
  g.shape = {L, L};
  std::size_t n_corner = static_cast<std::size_t>(L) * L;
  g.adj.resize(n_corner);
  fill_grid_coords(g, n_corner);
  g.pos.resize(n_corner);
  for (std::size_t v = 0; v < n_corner; ++v)
    g.pos[v] = {double(g.coords[v * 2]), double(g.coords[v * 2 + 1])};

  auto at = [L](int x, int y) { return x + L * y; };
  for (int y = 0; y + 1 < L; ++y)
    for (int x = 0; x < L; ++x) add_edge(g, at(x, y), at(x, y + 1));
  for (int fy = 0; fy + 1 < L; ++fy)
    for (int fx = 0; fx + 1 < L; ++fx) {
      int knot = static_cast<int>(g.adj.size());
      g.adj.emplace_back();
      g.coords.push_back(fx);
      g.coords.push_back(fy);
      g.pos.push_back({fx + 0.5, fy + 0.5});
      add_edge(g, knot, at(fx, fy));
      add_edge(g, knot, at(fx + 1, fy));
      add_edge(g, knot, at(fx, fy + 1));
      add_edge(g, knot, at(fx + 1, fy + 1));
    }
  grid_boundary_sets(g, n_corner);
  return g;
}

Graph build_tree(const LatticeSpec& spec) {
  int k = spec.arity, depth = spec.extent;
  require(k >= 2, "tree arity must be >= 2");
  require(depth >= 0, "tree depth must be >= 0");
  std::size_t n = 0, level = 1;
  for (int j = 0; j <= depth; ++j) {
    n += level;
    level *= static_cast<std::size_t>(k);
    require(n <= 20'000'000, "tree too large to materialize");
  }
  Graph g;
  g.spec = spec;
  g.dim = 1;
  g.adj.resize(n);
  g.coords.resize(n);
  // heap layout: children of v are k*v + 1 + j
  std::size_t first_leaf = n;
  std::size_t lo = 0, width = 1;
  for (int j = 0; j <= depth; ++j) {
    for (std::size_t v = lo; v < lo + width; ++v) g.coords[v] = j;
    if (j == depth) first_leaf = lo;
    lo += width;
    width *= static_cast<std::size_t>(k);
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (int j = 0; j < k; ++j) {
      std::size_t child = static_cast<std::size_t>(k) * v + 1 + j;
      if (child < n) add_edge(g, static_cast<int>(v), static_cast<int>(child));
    }
  }
  g.boundary_sets["root"] = {0};
  std::vector<std::int32_t> leaves;
  for (std::size_t v = first_leaf; v < n; ++v) leaves.push_back(static_cast<std::int32_t>(v));
  g.boundary_sets["leaves"] = std::move(leaves);
  g.boundary_sets["boundary"] = g.boundary_sets["leaves"];
  return g;
}

// {x in Z_{>=0}^d : sum x <= L}, directed edges +e_i (coordinate sum increases).
Graph build_oriented(const LatticeSpec& spec) {
  int L = spec.extent, d = spec.dim;
  require(L >= 1, "lattice extent must be >= 1");
  require(d >= 1, "oriented dimension must be >= 1");
  Graph g;
  g.spec = spec;
  g.dim = d;
  g.oriented = true;

  std::vector<std::vector<int>> verts;
  std::vector<int> c(d, 0);
  // lexicographic enumeration of the simplex
  while (true) {
    verts.push_back(c);
    int a = 0;
    while (a < d) {
      ++c[a];
      if (std::accumulate(c.begin(), c.end(), 0) <= L) break;
      c[a] = 0;
      ++a;
    }
    if (a == d) break;
  }
  std::size_t n = verts.size();
  g.adj.resize(n);
  g.coords.resize(n * d);
  std::map<std::vector<int>, int> index;
  for (std::size_t v = 0; v < n; ++v) {
    index[verts[v]] = static_cast<int>(v);
    for (int a = 0; a < d; ++a) g.coords[v * d + a] = verts[v][a];
  }
  std::vector<std::int32_t> top;
  for (std::size_t v = 0; v < n; ++v) {
    int sum = std::accumulate(verts[v].begin(), verts[v].end(), 0);
    if (sum == L) top.push_back(static_cast<std::int32_t>(v));
    for (int a = 0; a < d; ++a) {
      if (sum + 1 > L) continue;
      std::vector<int> nb = verts[v];
      ++nb[a];
      add_edge(g, static_cast<int>(v), index.at(nb));
    }
  }
  if (d == 2) {
    g.pos.resize(n);
    for (std::size_t v = 0; v < n; ++v)
      g.pos[v] = {double(g.coords[v * 2]), double(g.coords[v * 2 + 1])};
  }
  g.boundary_sets["origin"] = {0};
  g.boundary_sets["top"] = std::move(top);
  return g;
}

}  // namespace

Graph build_lattice(const LatticeSpec& spec) {
  switch (spec.kind) {
    case LatticeKind::square:
    case LatticeKind::triangular:
    case LatticeKind::hexagonal:
      return build_box(spec, {spec.extent, spec.extent});
    case LatticeKind::hypercubic: {
      require(spec.dim >= 1, "hypercubic dimension must be >= 1");
      return build_box(spec, std::vector<int>(spec.dim, spec.extent));
    }
    case LatticeKind::bowtie:
      return build_bowtie(spec);
    case LatticeKind::tree:
      return build_tree(spec);
    case LatticeKind::oriented:
      return build_oriented(spec);
  }
  throw std::invalid_argument("unknown lattice kind");
}

Graph build_grid2d(LatticeKind kind, int Lx, int Ly, BoundaryKind boundary) {
  require(kind == LatticeKind::square || kind == LatticeKind::triangular ||
              kind == LatticeKind::hexagonal,
          "build_grid2d supports square/triangular/hexagonal only");
  LatticeSpec spec;
  spec.kind = kind;
  spec.extent = Lx;
  spec.boundary = boundary;
  return build_box(spec, {Lx, Ly});
}

LatticeSpec dual_or_star(const LatticeSpec& spec, Transform which) {
  LatticeSpec out = spec;
  if (which == Transform::dual) {
    switch (spec.kind) {
      case LatticeKind::square:
        return out;
      case LatticeKind::hypercubic:
        if (spec.dim == 2) return out;
        break;
      case LatticeKind::triangular:
        out.kind = LatticeKind::hexagonal;
        return out;
      case LatticeKind::hexagonal:
        out.kind = LatticeKind::triangular;
        return out;
      default:
        break;
    }
    throw std::invalid_argument("dual not supported for lattice kind " + to_string(spec.kind));
  }
  if (spec.kind == LatticeKind::triangular) return out;  // its own star graph
  throw std::invalid_argument("star not supported for lattice kind " + to_string(spec.kind));
}

Graph build_triangle_domain(double x, double delta) {
  require(x > 0.0 && x < 1.0, "x must lie in (0,1)");
  require(delta > 0.0 && delta < 1.0, "mesh delta must lie in (0,1)");
  int N = static_cast<int>(std::lround(1.0 / delta));
  require(N >= 2, "mesh too coarse");
  int steps = static_cast<int>(std::lround(x * N));
  require(steps >= 1 && steps <= N - 1, "arc cd degenerate at this mesh");

  Graph g;
  g.spec.kind = LatticeKind::triangular;
  g.spec.extent = N;
  g.dim = 2;

  // sites (i, j) with i, j >= 0 and i + j <= N; row-major by j
  std::vector<int> row_offset(N + 2, 0);
  for (int j = 0; j <= N; ++j) row_offset[j + 1] = row_offset[j] + (N + 1 - j);
  std::size_t n = static_cast<std::size_t>(row_offset[N + 1]);
  auto at = [&](int i, int j) -> int {
    if (j < 0 || j > N || i < 0 || i > N - j) return -1;
    return row_offset[j] + i;
  };

  g.adj.resize(n);
  g.coords.resize(n * 2);
  g.pos.resize(n);
  for (int j = 0; j <= N; ++j)
    for (int i = 0; i <= N - j; ++i) {
      int v = at(i, j);
      g.coords[v * 2] = i;
      g.coords[v * 2 + 1] = j;
      g.pos[v] = {delta * (i + 0.5 * j), delta * j * kSqrt3Half};
    }
  // six-neighbor triangular adjacency; add each edge once
  const int di[3] = {1, 0, -1};
  const int dj[3] = {0, 1, 1};
  for (int j = 0; j <= N; ++j)
    for (int i = 0; i <= N - j; ++i)
      for (int t = 0; t < 3; ++t) {
        int u = at(i + di[t], j + dj[t]);
        if (u >= 0) add_edge(g, at(i, j), u);
      }

  // a = (0,0), b = (N,0), c = (0,N); d = (0, N - steps) on side (ca)
  std::vector<std::int32_t> ab, cd;
  for (int i = 0; i <= N; ++i) ab.push_back(at(i, 0));
  for (int j = N - steps; j <= N; ++j) cd.push_back(at(0, j));
  g.boundary_sets["arc_ab"] = std::move(ab);
  g.boundary_sets["arc_cd"] = std::move(cd);
  return g;
}

const std::vector<std::int32_t>& Graph::boundary_set(const std::string& name) const {
  auto it = boundary_sets.find(name);
  if (it == boundary_sets.end())
    throw std::invalid_argument("unknown boundary set: " + name);
  return it->second;
}

int Graph::vertex_at(std::span<const int> c) const {
  if (shape.empty() || c.size() != shape.size()) return -1;
  return grid_index(shape, c);
}

int Graph::center_vertex() const {
  if (spec.kind == LatticeKind::tree || spec.kind == LatticeKind::oriented) return 0;
  if (!shape.empty()) {
    std::vector<int> c(shape.size());
    for (std::size_t a = 0; a < shape.size(); ++a) c[a] = shape[a] / 2;
    return vertex_at(c);
  }
  return 0;
}

std::array<double, 2> Graph::position(int v) const {
  if (!pos.empty()) return pos[v];
  return {double(v), 0.0};
}

std::string to_string(LatticeKind k) {
  switch (k) {
    case LatticeKind::square: return "square";
    case LatticeKind::hypercubic: return "hypercubic";
    case LatticeKind::triangular: return "triangular";
    case LatticeKind::hexagonal: return "hexagonal";
    case LatticeKind::bowtie: return "bowtie";
    case LatticeKind::tree: return "tree";
    case LatticeKind::oriented: return "oriented";
  }
  return "?";
}

std::string to_string(BoundaryKind b) {
  return b == BoundaryKind::free ? "free" : "periodic-x";
}

std::string to_string(Mode m) { return m == Mode::site ? "site" : "bond"; }

LatticeKind lattice_kind_from_string(const std::string& s) {
  if (s == "square") return LatticeKind::square;
  if (s == "hypercubic") return LatticeKind::hypercubic;
  if (s == "triangular") return LatticeKind::triangular;
  if (s == "hexagonal") return LatticeKind::hexagonal;
  if (s == "bowtie") return LatticeKind::bowtie;
  if (s == "tree") return LatticeKind::tree;
  if (s == "oriented") return LatticeKind::oriented;
  throw std::invalid_argument("unknown lattice kind: " + s);
}

BoundaryKind boundary_from_string(const std::string& s) {
  if (s == "free") return BoundaryKind::free;
  if (s == "periodic-x") return BoundaryKind::periodic_x;
  throw std::invalid_argument("unknown boundary kind: " + s);
}

Mode mode_from_string(const std::string& s) {
  if (s == "site") return Mode::site;
  if (s == "bond") return Mode::bond;
  throw std::invalid_argument("unknown mode: " + s);
}

}  // namespace percolab
