#include "rigicert/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace rigicert {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::string num(std::size_t v) { return std::to_string(v); }

std::string join(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t k = 0; k < items.size(); ++k) out += (k ? "," : "") + items[k];
  return out + "]";
}

Vector unit_vector(std::size_t d, std::size_t i) {
  Vector v = Vector::Zero(idx(d));
  v[idx(i)] = 1.0;
  return v;
}

SymMatrix sum_of_outer(std::size_t n, const std::vector<Vector>& us) {
  Matrix z = Matrix::Zero(idx(n), idx(n));
  for (const auto& u : us) z += u * u.transpose();
  return SymMatrix(z);
}

Matrix adjacency(const TensegrityGraph& g) {
  Matrix a = Matrix::Zero(idx(g.node_count()), idx(g.node_count()));
  for (const auto& e : g.edges()) a(idx(e.i), idx(e.j)) = a(idx(e.j), idx(e.i)) = 1.0;
  return a;
}

}  // namespace

bool all_pass(const std::vector<ExpectationResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const ExpectationResult& r) { return r.pass; });
}

std::vector<ExpectationResult> check_expectations(const Fixture& fx, const Tolerance& tol) {
  const Framework& f = fx.framework;
  const Expectations& ex = fx.expected;
  const SymMatrix stress = fx.stress.value_or(SymMatrix::zero(f.node_count()));
  std::vector<ExpectationResult> out;
  auto record = [&out](std::string name, bool pass, std::string detail) {
    out.push_back({std::move(name), pass, std::move(detail)});
  };

  if (ex.corank) {
    const auto got = rank_corank(stress, tol).corank;
    record("corank", got == *ex.corank, "corank " + num(got) + ", expected " + num(*ex.corank));
  }
  if (ex.completability) {
    const auto c = certify_universal_completability(f, stress, tol);
    record("completability", c.overall == *ex.completability,
           std::string("overall ") + (c.overall ? "pass" : "fail") + ", failing " + join(c.failing()));
  }
  if (ex.rigidity || ex.rigidity_failing) {
    const auto c = certify_universal_rigidity(f, stress, tol);
    if (ex.rigidity)
      record("rigidity", c.overall == *ex.rigidity,
             std::string("overall ") + (c.overall ? "pass" : "fail") + ", failing " + join(c.failing()));
    if (ex.rigidity_failing)
      record("rigidity_failing", c.failing() == *ex.rigidity_failing,
             "failing " + join(c.failing()) + ", expected " + join(*ex.rigidity_failing));
  }
  if (ex.spherical_space_dim) {
    const auto got = spherical_stress_space(f, tol).size();
    record("spherical_space_dim", got == *ex.spherical_space_dim,
           "dimension " + num(got) + ", expected " + num(*ex.spherical_space_dim));
  }
  if (ex.equilibrium_space_dim) {
    const auto got = equilibrium_stress_space(f, tol).size();
    record("equilibrium_space_dim", got == *ex.equilibrium_space_dim,
           "dimension " + num(got) + ", expected " + num(*ex.equilibrium_space_dim));
  }
  if (ex.gd_lower_bound) {
    const auto got = gd_lower_bound(f, stress, tol);
    record("gd_lower_bound", got == ex.gd_lower_bound,
           (got ? "bound " + num(*got) : std::string("no bound")) + ", expected " + num(*ex.gd_lower_bound));
  }
  if (ex.nu_lower_bound) {
    const auto got = nu_lower_bound(f.graph(), stress, tol);
    record("nu_lower_bound", got == ex.nu_lower_bound,
           (got ? "bound " + num(*got) : std::string("no bound")) + ", expected " + num(*ex.nu_lower_bound));
  }
  if (ex.c5_completion_rank) {
    bool pass = false;
    std::string detail = "not a 5-cycle framework";
    if (f.graph() == TensegrityGraph::cycle(5)) {
      const auto done = c5_angle_completion(c5_edge_angles(f), tol);
      if (!done) {
        detail = "angle argument does not apply";
      } else {
        const auto rank = rank_corank(done->x, tol).rank;
        const double gap = (done->x - gram(f)).max_abs();
        pass = rank == *ex.c5_completion_rank && gap < tol.abs_residual;
        char buf[96];
        std::snprintf(buf, sizeof buf, ", max |X - Gram| %.3g", gap);
        detail = "rank " + num(rank) + ", expected " + num(*ex.c5_completion_rank) + buf;
      }
    }
    record("c5_completion_rank", pass, detail);
  }
  return out;
}

Fixture octahedron_fixture() {
  const std::size_t n = 6, d = 5;
  std::vector<NodePair> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (j != i + 3) pairs.emplace_back(i, j);
  Matrix p = Matrix::Zero(idx(n), idx(d));
  p(0, 0) = 1.0;
  p(1, 1) = 1.0;
  p(2, 0) = p(2, 1) = 1.0;
  p(3, 2) = 1.0;
  p(4, 3) = 1.0;
  p(5, 4) = 1.0;

  Vector u = Vector::Zero(idx(n));
  u << 1.0, 1.0, -1.0, 0.0, 0.0, 0.0;

  Fixture fx{"octahedron", Framework(TensegrityGraph::bars(n, pairs), p), SymMatrix::outer(u), StressKind::Spherical,
             {}};
  fx.expected.corank = 5;
  fx.expected.completability = true;
  fx.expected.gd_lower_bound = 5;
  fx.expected.nu_lower_bound = 5;
  return fx;
}

Fixture fr_fixture(std::size_t r) {
  if (r < 2) throw std::invalid_argument("fr_fixture: r must be at least 2, got " + std::to_string(r));
  const std::size_t n = r + r * (r - 1) / 2;
  std::vector<NodePair> pairs;
  Matrix p = Matrix::Zero(idx(n), idx(r));
  std::vector<Vector> us;
  for (std::size_t i = 0; i < r; ++i) {
    p(idx(i), idx(i)) = 1.0;
    for (std::size_t j = i + 1; j < r; ++j) pairs.emplace_back(i, j);
  }
  std::size_t v = r;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j, ++v) {
      pairs.emplace_back(i, v);
      pairs.emplace_back(j, v);
      p(idx(v), idx(i)) = p(idx(v), idx(j)) = 1.0;
      Vector u = unit_vector(n, i) + unit_vector(n, j) - unit_vector(n, v);
      us.push_back(u);
    }
  }
  Fixture fx{"F_" + std::to_string(r), Framework(TensegrityGraph::bars(n, pairs), p), sum_of_outer(n, us),
             StressKind::Spherical, {}};
  fx.expected.corank = r;
  fx.expected.completability = true;
  fx.expected.gd_lower_bound = r;
  fx.expected.nu_lower_bound = r;
  return fx;
}

std::size_t gr_node(std::size_t r, std::size_t i, std::size_t l) {
  if (l >= r || i >= r - l) throw std::out_of_range("gr_node: no node (" + std::to_string(i) + "," +
                                                    std::to_string(l) + ") in G_" + std::to_string(r));
  // Levels 0..l-1 hold r + (r-1) + ... + (r-l+1) nodes.
  return l * r - l * (l - 1) / 2 + i;
}

std::vector<std::array<std::size_t, 3>> gr_black_triangles(std::size_t r) {
  std::vector<std::array<std::size_t, 3>> out;
  for (std::size_t l = 0; l + 1 < r; ++l)
    for (std::size_t i = 0; i + 1 < r - l; ++i)
      out.push_back({gr_node(r, i, l), gr_node(r, i + 1, l), gr_node(r, i, l + 1)});
  return out;
}

Fixture gr_fixture(std::size_t r) {
  if (r < 2) throw std::invalid_argument("gr_fixture: r must be at least 2, got " + std::to_string(r));
  const std::size_t n = r * (r + 1) / 2;
  Matrix p = Matrix::Zero(idx(n), idx(r));
  for (std::size_t i = 0; i < r; ++i) p(idx(gr_node(r, i, 0)), idx(i)) = 1.0;
  for (std::size_t l = 1; l < r; ++l)
    for (std::size_t i = 0; i < r - l; ++i)
      p.row(idx(gr_node(r, i, l))) = p.row(idx(gr_node(r, i, l - 1))) + p.row(idx(gr_node(r, i + 1, l - 1)));

  std::vector<NodePair> pairs;
  std::vector<Vector> us;
  for (const auto& t : gr_black_triangles(r)) {
    pairs.emplace_back(t[0], t[1]);
    pairs.emplace_back(t[0], t[2]);
    pairs.emplace_back(t[1], t[2]);
    us.push_back(unit_vector(n, t[0]) + unit_vector(n, t[1]) - unit_vector(n, t[2]));
  }
  Fixture fx{"G_" + std::to_string(r), Framework(TensegrityGraph::bars(n, pairs), p), sum_of_outer(n, us),
             StressKind::Spherical, {}};
  fx.expected.corank = r;
  fx.expected.completability = true;
  fx.expected.gd_lower_bound = r;
  fx.expected.nu_lower_bound = r;
  return fx;
}

Fixture tensor_fixture(std::size_t r, const TensegrityGraph& h, const std::optional<std::vector<Vector>>& w) {
  if (r < 2) throw std::invalid_argument("tensor_fixture: r must be at least 2, got " + std::to_string(r));
  if (!h.bars_only()) throw std::invalid_argument("tensor_fixture: H must have bars only");
  const std::size_t m = h.node_count();
  if (m == 0) throw std::invalid_argument("tensor_fixture: H has no nodes");
  const std::size_t k = h.degree(0);
  for (std::size_t v = 0; v < m; ++v)
    if (h.degree(v) != k) throw std::invalid_argument("tensor_fixture: H is not regular (node " + std::to_string(v) +
                                                      " has degree " + std::to_string(h.degree(v)) + ")");
  if (k == 0) throw std::invalid_argument("tensor_fixture: H has no edges");

  const Tolerance tol;
  const auto eig = sym_eigen(SymMatrix(adjacency(h)));
  const double bound = static_cast<double>(k) / static_cast<double>(r - 1);
  // Eigenvalues ascending: skip the largest one (k), report the worst of the rest.
  double worst = 0.0;
  for (Eigen::Index t = 0; t + 1 < eig.eigenvalues.size(); ++t)
    if (std::abs(eig.eigenvalues[t]) > std::abs(worst)) worst = eig.eigenvalues[t];
  // Strict inequality: values within abs_residual of the bound are rejected.
  if (!(std::abs(worst) < bound - tol.abs_residual)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "tensor_fixture: eigenvalue %.12g of H violates |lambda| < k/(r-1) = %.12g",
                  worst, bound);
    throw std::invalid_argument(buf);
  }

  const std::size_t d = r - 1;
  std::vector<Vector> ws;
  if (w) {
    ws = *w;
    if (ws.size() != r)
      throw std::invalid_argument("tensor_fixture: need " + std::to_string(r) + " vectors w, got " +
                                  std::to_string(ws.size()));
    Matrix wm(idx(r), idx(d));
    for (std::size_t i = 0; i < r; ++i) {
      if (static_cast<std::size_t>(ws[i].size()) != d)
        throw std::invalid_argument("tensor_fixture: w_" + std::to_string(i) + " must have length " +
                                    std::to_string(d));
      wm.row(idx(i)) = ws[i].transpose();
    }
    if (wm.colwise().sum().cwiseAbs().maxCoeff() > tol.abs_residual)
      throw std::invalid_argument("tensor_fixture: vectors w do not sum to zero");
    if (matrix_rank(wm, tol) != d) throw std::invalid_argument("tensor_fixture: vectors w do not span R^(r-1)");
  } else {
    // Rows of an orthonormal basis of the sum-zero hyperplane, rescaled to unit length.
    Matrix helmert = Matrix::Zero(idx(r), idx(d));
    for (std::size_t c = 0; c < d; ++c) {
      const double s = 1.0 / std::sqrt(static_cast<double>((c + 1) * (c + 2)));
      for (std::size_t i = 0; i <= c; ++i) helmert(idx(i), idx(c)) = s;
      helmert(idx(c + 1), idx(c)) = -static_cast<double>(c + 1) * s;
    }
    helmert *= std::sqrt(static_cast<double>(r) / static_cast<double>(d));
    for (std::size_t i = 0; i < r; ++i) ws.push_back(helmert.row(idx(i)).transpose());
  }

  const TensegrityGraph g = tensor_product_graph(r, h);
  Matrix p(idx(r * m), idx(d));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t v = 0; v < m; ++v) p.row(idx(i * m + v)) = ws[i].transpose();
  const Matrix z = Matrix::Identity(idx(r * m), idx(r * m)) + adjacency(g) / static_cast<double>(k);

  Fixture fx{"tensor_K" + std::to_string(r) + "_H" + std::to_string(m) + "_k" + std::to_string(k),
             Framework(g, p), SymMatrix(z), StressKind::Spherical, {}};
  fx.expected.corank = d;
  fx.expected.completability = true;
  return fx;
}

std::pair<Fixture, Fixture> c5_fixtures() {
  constexpr double pi = std::numbers::pi;
  const TensegrityGraph c5 = TensegrityGraph::cycle(5);

  Matrix p(5, 2);
  for (int i = 0; i < 5; ++i) {
    p(i, 0) = std::cos(4.0 * i * pi / 5.0);
    p(i, 1) = std::sin(4.0 * i * pi / 5.0);
  }
  const Matrix z = 2.0 * std::cos(pi / 5.0) * Matrix::Identity(5, 5) + adjacency(c5);
  Fixture first{"c5_first", Framework(c5, p), SymMatrix(z), StressKind::Spherical, {}};
  first.expected.corank = 2;
  first.expected.completability = true;

  const double h = 1.0 / std::sqrt(2.0);
  Matrix q(5, 2);
  q << 1.0, 0.0, -h, h, 0.0, -1.0, h, h, -1.0, 0.0;
  Fixture second{"c5_second", Framework(c5, q), std::nullopt, StressKind::Spherical, {}};
  second.expected.spherical_space_dim = 0;
  second.expected.completability = false;
  second.expected.c5_completion_rank = 2;
  return {std::move(first), std::move(second)};
}

Fixture four_node_fixture() {
  Matrix p(4, 2);
  p << -1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0;
  const auto g = TensegrityGraph::bars(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}});
  Vector u(4);
  u << 1.0, -2.0, 1.0, 0.0;
  Fixture fx{"four_node", Framework(g, p), SymMatrix::outer(u), StressKind::Equilibrium, {}};
  fx.expected.corank = 3;
  fx.expected.equilibrium_space_dim = 1;
  fx.expected.rigidity = false;
  fx.expected.rigidity_failing = std::vector<std::string>{"conic_at_infinity"};
  return fx;
}

std::array<double, 5> c5_edge_angles(const Framework& f) {
  if (f.node_count() != 5) throw std::invalid_argument("c5_edge_angles: framework must have 5 nodes");
  const SymMatrix x = gram(f);
  std::array<double, 5> out{};
  for (std::size_t i = 0; i < 5; ++i) out[i] = std::acos(std::clamp(x(i, (i + 1) % 5), -1.0, 1.0));
  return out;
}

std::vector<Fixture> all_fixtures() {
  std::vector<Fixture> out;
  out.push_back(octahedron_fixture());
  for (std::size_t r = 2; r <= 5; ++r) out.push_back(fr_fixture(r));
  for (std::size_t r = 2; r <= 5; ++r) out.push_back(gr_fixture(r));
  out.push_back(tensor_fixture(2, TensegrityGraph::cycle(5)));
  out.push_back(tensor_fixture(3, TensegrityGraph::complete(4)));
  auto [first, second] = c5_fixtures();
  out.push_back(std::move(first));
  out.push_back(std::move(second));
  out.push_back(four_node_fixture());
  return out;
}

}  // namespace rigicert
