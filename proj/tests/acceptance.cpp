// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "rigicert/gallery.hpp"
#include "rigicert/suite.hpp"

using namespace rigicert;

namespace {

constexpr double kPi = std::numbers::pi;

// Uniform position noise applied to every fixture a criterion builds.
struct Noise {
  double magnitude = 0.0;
  std::uint64_t seed = 1;

  Fixture operator()(Fixture fx) const {
    if (magnitude == 0.0) return fx;
    std::mt19937_64 rng(seed ^ std::hash<std::string>{}(fx.name));
    std::uniform_real_distribution<double> u(-magnitude, magnitude);
    Matrix p = fx.framework.positions();
    for (Eigen::Index k = 0; k < p.size(); ++k) p.data()[k] += u(rng);
    fx.framework = Framework(fx.framework.graph(), p, fx.framework.generic());
    return fx;
  }
};

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::size_t corank(const SymMatrix& m) { return rank_corank(m).corank; }

Outcome criterion1(const Noise& noise) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto fx = noise(octahedron_fixture());
  const auto cert = certify_universal_completability(fx.framework, *fx.stress);
  const auto span = gram_nondegeneracy_check(fx.framework, spherical_active_pairs(fx.framework, *fx.stress));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.check(cert.overall, "certificate fails");
  o.check(corank(*fx.stress) == 5, "corank " + std::to_string(corank(*fx.stress)));
  o.check(span.span_rank == 15, "span rank " + std::to_string(span.span_rank));
  o.check(secs < 1.0, "runtime " + fmt("%.3f s", secs));
  if (o.pass) o.detail = "corank 5, span rank 15, " + fmt("%.2g s", secs);
  return o;
}

// Smallest nonzero |eigenvalue| minus largest "zero" one, under the default rule.
double eigen_gap(const SymMatrix& m, std::size_t kernel) {
  const auto ev = sym_eigen(m).eigenvalues;
  std::vector<double> a(ev.data(), ev.data() + ev.size());
  for (double& x : a) x = std::abs(x);
  std::sort(a.begin(), a.end());
  return a[kernel] - (kernel > 0 ? a[kernel - 1] : 0.0);
}

Outcome criterion2(const Noise& noise) {
  Outcome o;
  double min_gap = 1e300;
  for (std::size_t r = 2; r <= 5; ++r) {
    const auto fx = noise(fr_fixture(r));
    const std::string tag = "F_" + std::to_string(r);
    o.check(certify_universal_completability(fx.framework, *fx.stress).overall, tag + " certificate fails");
    o.check(corank(*fx.stress) == r, tag + " corank " + std::to_string(corank(*fx.stress)));
    const double gap = eigen_gap(*fx.stress, r);
    min_gap = std::min(min_gap, gap);
    o.check(gap > 0.1, tag + " eigenvalue gap " + fmt("%.3g", gap));
  }
  if (o.pass) o.detail = "r = 2..5, corank r, min gap " + fmt("%.3g", min_gap);
  return o;
}

Outcome criterion3(const Noise& noise) {
  Outcome o;
  for (std::size_t r = 2; r <= 5; ++r) {
    const auto fx = noise(gr_fixture(r));
    const std::string tag = "G_" + std::to_string(r);
    o.check(certify_universal_completability(fx.framework, *fx.stress).overall, tag + " certificate fails");
    const auto tri = gr_black_triangles(r);
    o.check(tri.size() == (r + 1) * r / 2 - r, tag + " |B_r| = " + std::to_string(tri.size()));
    std::map<NodePair, int> cover;
    for (const auto& t : tri)
      for (auto [a, b] : {NodePair{t[0], t[1]}, NodePair{t[0], t[2]}, NodePair{t[1], t[2]}})
        ++cover[{std::min(a, b), std::max(a, b)}];
    bool once = cover.size() == fx.framework.graph().edge_count();
    for (const auto& e : fx.framework.graph().edges()) once = once && cover[{e.i, e.j}] == 1;
    o.check(once, tag + " edge cover");
    o.check(corank(*fx.stress) == r, tag + " corank " + std::to_string(corank(*fx.stress)));
  }
  if (o.pass) o.detail = "r = 2..5, |B_r| and edge cover exact, corank r";
  return o;
}

Outcome criterion4(const Noise& noise) {
  Outcome o;
  struct Case {
    std::size_t r;
    TensegrityGraph h;
    const char* label;
  };
  for (const auto& c : {Case{2, TensegrityGraph::cycle(5), "K2 x C5"}, Case{3, TensegrityGraph::complete(4), "K3 x K4"}}) {
    const auto fx = noise(tensor_fixture(c.r, c.h));
    o.check(certify_universal_completability(fx.framework, *fx.stress).overall, std::string(c.label) + " fails");
    o.check(corank(*fx.stress) == c.r - 1, std::string(c.label) + " corank " + std::to_string(corank(*fx.stress)));
  }
  std::string rejection;
  try {
    tensor_fixture(3, TensegrityGraph::cycle(6));
    o.check(false, "K3 x C6 accepted");
  } catch (const std::invalid_argument& e) {
    rejection = e.what();
  }
  if (o.pass) o.detail = "K2 x C5 and K3 x K4 pass with corank r-1; C6 rejected (" + rejection + ")";
  return o;
}

Outcome criterion5(const Noise& noise) {
  Outcome o;
  auto [first, second] = c5_fixtures();
  first = noise(first);
  second = noise(second);
  o.check(certify_universal_completability(first.framework, *first.stress).overall, "first framework fails");
  o.check(corank(*first.stress) == 2, "first corank " + std::to_string(corank(*first.stress)));
  const auto ev = sym_eigen(*first.stress).eigenvalues;
  std::size_t near_zero = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) near_zero += std::abs(ev[k]) <= 1e-9 ? 1 : 0;
  o.check(std::abs(ev[0]) <= 1e-9 && near_zero == 2,
          "min eigenvalue " + fmt("%.3g", ev[0]) + " on " + std::to_string(near_zero) + "-dim eigenspace");

  const std::size_t dim = spherical_stress_space(second.framework).size();
  o.check(dim == 0, "second framework spherical stress space has dimension " + std::to_string(dim) + ", expected 0");

  const double q = 3.0 * kPi / 4.0;
  const auto c = c5_angle_completion({q, q, q, q, kPi});
  if (!c) {
    o.check(false, "angle completion returned nothing");
  } else {
    o.check(std::abs(c->chords[0] - kPi / 2.0) <= 1e-10, "theta_13 " + fmt("%.17g", c->chords[0]));
    o.check(std::abs(c->chords[3] - kPi / 4.0) <= 1e-10, "theta_14 " + fmt("%.17g", c->chords[3]));
    o.check(psd_check(c->x) && rank_corank(c->x).rank == 2, "completion not psd of rank 2");
  }
  if (o.pass) o.detail = "first passes with corank 2; second has no stress; completion exact";
  return o;
}

Outcome criterion6(const Noise& noise, bool verdict_only) {
  Outcome o;
  const auto fx = noise(four_node_fixture());
  const auto cert = certify_universal_rigidity(fx.framework, *fx.stress);
  const auto failing = cert.failing();
  o.check(!cert.overall && failing == std::vector<std::string>{"conic_at_infinity"},
          "failing set differs from {conic_at_infinity}");
  if (verdict_only) {
    if (o.pass) o.detail = "fails on conic_at_infinity only";
    return o;
  }
  const auto check = conic_at_infinity_check(fx.framework, equilibrium_active_pairs(fx.framework, *fx.stress));
  if (!check.witness) {
    o.check(false, "no witness");
    return o;
  }
  const auto& r = *check.witness;
  double worst = 0.0;
  for (const auto& e : fx.framework.graph().edges()) {
    const Vector d = fx.framework.position(e.i) - fx.framework.position(e.j);
    worst = std::max(worst, std::abs(d.dot(r.dense() * d)));
  }
  o.check(worst < 1e-10, "witness residual " + fmt("%.3g", worst));
  o.check(std::abs(r.frobenius_norm() - 1.0) < 1e-12, "witness norm " + fmt("%.17g", r.frobenius_norm()));
  if (o.pass) o.detail = "fails on conic_at_infinity only; witness residual " + fmt("%.2g", worst) + ", norm 1";
  return o;
}

Outcome criterion7(const Noise& noise) {
  Outcome o;
  std::size_t count = 0;
  for (auto fx : all_fixtures()) {
    if (fx.stress_kind != StressKind::Spherical || !fx.framework.graph().bars_only()) continue;
    fx = noise(fx);
    ++count;
    const auto& f = fx.framework;
    const SymMatrix z = fx.stress.value_or(SymMatrix::zero(f.node_count()));
    const auto omega = lift_stress(f, z);
    const auto ext = extend_framework(f);
    const auto m = static_cast<Eigen::Index>(omega.order());
    const double re = (omega.dense() * Vector::Ones(m)).cwiseAbs().maxCoeff();
    const double rp = (omega.dense() * configuration(ext).augmented).cwiseAbs().maxCoeff();
    o.check(corank(omega) == corank(z) + 1, fx.name + " corank " + std::to_string(corank(omega)));
    o.check(re < 1e-10 && rp < 1e-10, fx.name + " residuals " + fmt("%.3g", std::max(re, rp)));
    const bool base = certify_universal_completability(f, z).overall;
    const bool lifted = certify_universal_rigidity(ext, omega).overall;
    o.check(base == lifted, fx.name + " verdicts differ");
  }
  if (o.pass) o.detail = std::to_string(count) + " bar fixtures agree";
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::size_t total = 0;
  for (const auto& fx : all_fixtures()) {
    ++total;
    const auto r = cross_oracle_agreement(fx.framework);
    if (!r.pass) o.check(false, fx.name + ": " + r.detail);
  }
  std::mt19937_64 rng(20120101);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  for (int k = 0; k < 100; ++k, ++total) {
    const std::size_t d = dim(rng);
    std::uniform_int_distribution<std::size_t> nodes(d, 8);
    const auto r = cross_oracle_agreement(random_framework(rng, nodes(rng), d));
    if (!r.pass) o.check(false, "random " + std::to_string(k) + ": " + r.detail);
  }
  if (o.pass) o.detail = "0 disagreements in " + std::to_string(total);
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> nodes(2, 8);
  for (int k = 0; k < 50; ++k) {
    const auto g = random_graph(rng, nodes(rng), 0.5);
    const auto r = sap_route_agreement(g, random_supported_psd(rng, g));
    if (!r.pass) o.check(false, "random " + std::to_string(k) + ": " + r.detail);
  }
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto nu = nu_lower_bound(TensegrityGraph::complete(n), SymMatrix::zero(n));
    o.check(nu == n, "nu(K_" + std::to_string(n) + ", 0)");
  }
  const auto oct = octahedron_fixture();
  o.check(nu_lower_bound(oct.framework.graph(), *oct.stress) == std::size_t{5}, "nu(K_222, Z) != 5");
  if (o.pass) o.detail = "0 disagreements in 50; nu(K_n, 0) = n; nu(K_222, Z) = 5";
  return o;
}

Outcome criterion10() {
  Outcome o;
  const auto oct = octahedron_fixture();
  const auto gd = gd_lower_bound(oct.framework, *oct.stress);
  const auto nu = nu_lower_bound(oct.framework.graph(), *oct.stress);
  o.check(gd == std::size_t{5} && nu == std::size_t{5}, "octahedron gd/nu bounds differ from 5");
  for (std::size_t r = 2; r <= 5; ++r) {
    const auto fx = fr_fixture(r);
    o.check(gd_lower_bound(fx.framework, *fx.stress) == r, "gd(F_" + std::to_string(r) + ")");
  }
  if (o.pass) o.detail = "gd(K_222) = nu(K_222) = 5; gd(F_r) = r for r = 2..5";
  return o;
}

Outcome criterion11() {
  Outcome o;
  const Noise tiny{1e-12, 11};
  const std::vector<std::pair<int, Outcome>> runs{
      {1, criterion1(tiny)}, {2, criterion2(tiny)}, {3, criterion3(tiny)}, {4, criterion4(tiny)},
      {5, criterion5(tiny)}, {6, criterion6(tiny, false)}, {7, criterion7(tiny)}};
  for (const auto& [k, r] : runs) o.check(r.pass, "criterion " + std::to_string(k) + " at 1e-12: " + r.detail);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto r = criterion6(Noise{1e-10, seed}, true);
    o.check(r.pass, "criterion 6 verdict at 1e-10 (seed " + std::to_string(seed) + "): " + r.detail);
  }
  if (o.pass) o.detail = "criteria 1-7 stable at 1e-12; criterion 6 verdict stable at 1e-10 over 20 draws";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Outcome (*)()>> criteria{
      {"octahedron certificate", [] { return criterion1(Noise{}); }},
      {"F_r certificates", [] { return criterion2(Noise{}); }},
      {"G_r certificates", [] { return criterion3(Noise{}); }},
      {"tensor product certificates", [] { return criterion4(Noise{}); }},
      {"five-cycle frameworks", [] { return criterion5(Noise{}); }},
      {"four-node negative control", [] { return criterion6(Noise{}, false); }},
      {"suspension equivalence", [] { return criterion7(Noise{}); }},
      {"cross-oracle agreement", criterion8},
      {"SAP route agreement", criterion9},
      {"parameter consistency", criterion10},
      {"numerical robustness", criterion11},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::printf("%-4s criterion %2zu  %-28s %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
