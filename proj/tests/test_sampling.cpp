#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <sstream>

#include "percolab/sampling.hpp"
#include "percolab/stats.hpp"

using namespace percolab;

namespace {

Graph big_path() {
  LatticeSpec s;
  s.kind = LatticeKind::hypercubic;
  s.dim = 1;
  s.extent = 100001;
  return build_lattice(s);
}

}  // namespace

TEST_CASE("labels are reproducible and in [0,1]") {
  LatticeSpec s;
  s.kind = LatticeKind::square;
  s.extent = 16;
  Graph g = build_lattice(s);
  auto a = assign_labels(g, Mode::bond, 12345, 7);
  auto b = assign_labels(g, Mode::bond, 12345, 7);
  CHECK(a.labels == b.labels);
  for (double x : a.labels) {
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
  }
  auto c = assign_labels(g, Mode::bond, 12346, 7);
  CHECK(a.labels != c.labels);
  auto d = assign_labels(g, Mode::site, 12345, 7);
  CHECK(d.labels.size() == g.vertex_count());
  CHECK(a.labels.size() == g.edge_count());
}

TEST_CASE("label law: mean 0.5 and KS uniformity over 1e5 elements") {
  Graph g = big_path();
  auto lab = assign_labels(g, Mode::bond, 999, 0);
  RunningStat st;
  for (double x : lab.labels) st.add(x);
  CHECK(std::abs(st.mean() - 0.5) < 0.01);

  CHECK(ks_uniform(lab.labels) < ks_critical_1pct(lab.labels.size()));

  auto lab2 = assign_labels(g, Mode::bond, 1000, 0);
  double d2 = ks_two_sample(lab.labels, lab2.labels);
  CHECK(d2 < ks_critical_1pct_two_sample(lab.labels.size(), lab2.labels.size()));
}

TEST_CASE("marginal law: open fraction passes a chi^2 test at the 1% level") {
  Graph g = big_path();
  auto lab = assign_labels(g, Mode::bond, 31337, 0);
  for (double p : {0.2, 0.5, 0.8}) {
    auto cfg = threshold(lab, p);
    long long k = 0;
    for (auto o : cfg.open) k += o;
    double n = double(cfg.open.size());
    double z = (k - n * p) / std::sqrt(n * p * (1 - p));
    CHECK(z * z < 6.635);  // chi^2_1 critical value at 1%
  }
}

TEST_CASE("threshold endpoints and monotone coupling") {
  LatticeSpec s;
  s.kind = LatticeKind::triangular;
  s.extent = 12;
  Graph g = build_lattice(s);
  auto lab = assign_labels(g, Mode::site, 5, 3);

  auto c0 = threshold(lab, 0.0);
  for (auto o : c0.open) CHECK(o == 0);
  auto c1 = threshold(lab, 1.0);
  for (auto o : c1.open) CHECK(o == 1);

  auto lo = threshold(lab, 0.35), hi = threshold(lab, 0.65);
  for (std::size_t e = 0; e < lo.open.size(); ++e)
    if (lo.open[e]) CHECK(hi.open[e]);

  CHECK_THROWS_AS(threshold(lab, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(threshold(lab, -0.1), std::invalid_argument);
}

TEST_CASE("config CSV dump") {
  LatticeSpec s;
  s.kind = LatticeKind::square;
  s.extent = 3;
  Graph g = build_lattice(s);
  auto lab = assign_labels(g, Mode::bond, 42, 0);
  std::ostringstream os;
  write_config_csv(os, lab, 0.5);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "id,label,open");
  std::size_t rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == g.edge_count());
}
