#include "rigicert/suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace rigicert {

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

ExpectationResult cross_oracle_agreement(const Framework& f, const Tolerance& tol) {
  const SymMatrix x = gram(f);
  const auto cons = support_constraints(f.graph());
  const bool extreme = extreme_point_check(x, cons, tol);
  const std::size_t pert = perturbation_space(x, cons, tol).size();
  const auto nondeg = gram_nondegeneracy_check(f, nodes_and_edges(f.graph()), tol);
  const bool agree = extreme == (pert == 0) && extreme == nondeg.pass;
  return {"cross_oracle", agree,
          "extreme " + yes_no(extreme) + ", perturbation dim " + std::to_string(pert) + ", gram nondegenerate " +
              yes_no(nondeg.pass)};
}

ExpectationResult suspension_agreement(const Framework& f, const SymMatrix& z, const Tolerance& tol,
                                       double residual) {
  const auto base = certify_universal_completability(f, z, tol);
  SymMatrix omega(f.node_count() + 1);
  try {
    omega = lift_stress(f, z, tol);
  } catch (const std::invalid_argument& e) {
    // An unliftable Z fails the base certificate too; the verdicts still have to agree.
    return {"suspension", !base.overall, std::string("lift refused: ") + e.what()};
  }
  const Framework ext = extend_framework(f);
  const auto lifted = certify_universal_rigidity(ext, omega, tol);

  const std::size_t cz = rank_corank(z, tol).corank;
  const std::size_t co = rank_corank(omega, tol).corank;
  const Eigen::Index m = static_cast<Eigen::Index>(omega.order());
  const double res_e = (omega.dense() * Vector::Ones(m)).cwiseAbs().maxCoeff();
  const double res_p = (omega.dense() * configuration(ext).augmented).cwiseAbs().maxCoeff();

  const bool pass = base.overall == lifted.overall && co == cz + 1 && res_e < residual && res_p < residual;
  char buf[200];
  std::snprintf(buf, sizeof buf, "base %s, suspension %s, corank %zu -> %zu, |Omega e| %.3g, |Omega P_a| %.3g",
                base.overall ? "pass" : "fail", lifted.overall ? "pass" : "fail", cz, co, res_e, res_p);
  return {"suspension", pass, buf};
}

ExpectationResult sap_route_agreement(const TensegrityGraph& g, const SymMatrix& m, const Tolerance& tol) {
  const auto sap = sap_check(g, m, tol);
  const bool primal = primal_nondegenerate(m, non_edge_constraints(g), tol);
  const bool agree = sap.supported && sap.pass == sap.span_route_pass && sap.pass == primal;
  return {"sap_routes", agree,
          "nullspace " + yes_no(sap.pass) + ", span rank " + yes_no(sap.span_route_pass) + ", primal nondegenerate " +
              yes_no(primal) + ", corank " + std::to_string(sap.corank)};
}

TensegrityGraph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<NodePair> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) pairs.emplace_back(i, j);
  return TensegrityGraph::bars(n, pairs);
}

Framework random_framework(std::mt19937_64& rng, std::size_t n, std::size_t d, double edge_probability) {
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  Matrix p(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    for (Eigen::Index c = 0; c < p.cols(); ++c) p(i, c) = coord(rng);
  return Framework(random_graph(rng, n, edge_probability), p);
}

SymMatrix random_supported_psd(std::mt19937_64& rng, const TensegrityGraph& g) {
  const std::size_t n = g.node_count();
  std::uniform_int_distribution<int> weight(1, 3);
  std::bernoulli_distribution coin(0.5);
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t v = 0; v < n; ++v)
    if (coin(rng) && coin(rng)) m(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v)) = weight(rng);
  for (const auto& e : g.edges()) {
    if (!coin(rng)) continue;
    Vector u = Vector::Zero(static_cast<Eigen::Index>(n));
    u[static_cast<Eigen::Index>(e.i)] = 1.0;
    u[static_cast<Eigen::Index>(e.j)] = coin(rng) ? 1.0 : -1.0;
    m += weight(rng) * u * u.transpose();
  }
  return SymMatrix(m);
}

bool SuiteReport::all_pass() const {
  return std::all_of(items.begin(), items.end(), [](const SuiteItem& i) { return i.pass; });
}

SuiteReport run_suite(const Tolerance& tol, std::uint64_t seed, std::size_t random_count) {
  SuiteReport report;
  auto fixtures = all_fixtures();
  std::stable_sort(fixtures.begin(), fixtures.end(), [](const Fixture& a, const Fixture& b) { return a.name < b.name; });

  for (const auto& fx : fixtures) {
    for (auto& r : check_expectations(fx, tol)) report.items.push_back({fx.name, r.name, r.pass, r.detail});
    auto add = [&](const ExpectationResult& r) { report.items.push_back({fx.name, r.name, r.pass, r.detail}); };
    add(cross_oracle_agreement(fx.framework, tol));
    if (fx.stress_kind == StressKind::Spherical && fx.framework.graph().bars_only())
      add(suspension_agreement(fx.framework, fx.stress.value_or(SymMatrix::zero(fx.framework.node_count())), tol));
    if (fx.stress && psd_check(*fx.stress, tol) && sap_check(fx.framework.graph(), *fx.stress, tol).supported)
      add(sap_route_agreement(fx.framework.graph(), *fx.stress, tol));
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  std::size_t oracle_bad = 0, sap_bad = 0;
  std::string first_oracle, first_sap;
  for (std::size_t k = 0; k < random_count; ++k) {
    const std::size_t d = dim(rng);
    std::uniform_int_distribution<std::size_t> nodes(d, 8);
    const Framework f = random_framework(rng, nodes(rng), d);
    const auto r = cross_oracle_agreement(f, tol);
    if (!r.pass && oracle_bad++ == 0) first_oracle = r.detail;

    std::uniform_int_distribution<std::size_t> sap_nodes(2, 8);
    const TensegrityGraph g = random_graph(rng, sap_nodes(rng), 0.5);
    const auto s = sap_route_agreement(g, random_supported_psd(rng, g), tol);
    if (!s.pass && sap_bad++ == 0) first_sap = s.detail;
  }
  report.items.push_back({"random", "cross_oracle", oracle_bad == 0,
                          std::to_string(oracle_bad) + " disagreements in " + std::to_string(random_count) +
                              (first_oracle.empty() ? "" : "; first: " + first_oracle)});
  report.items.push_back({"random", "sap_routes", sap_bad == 0,
                          std::to_string(sap_bad) + " disagreements in " + std::to_string(random_count) +
                              (first_sap.empty() ? "" : "; first: " + first_sap)});
  return report;
}

}  // namespace rigicert
