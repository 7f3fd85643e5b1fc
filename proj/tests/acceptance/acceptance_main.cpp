// One PASS/FAIL line per acceptance criterion. Exit status is non-zero if any fails.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hermlab/catalog.hpp"
#include "hermlab/curvature.hpp"
#include "hermlab/flat_search.hpp"
#include "hermlab/random.hpp"
#include "hermlab/real_bridge.hpp"
#include "hermlab/structure_io.hpp"
#include "hermlab/theorem_lab.hpp"
#include "real_oracle.hpp"

using namespace hermlab;
namespace th = hermlab::theorems;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

const double kRootMinus = 2.0 / 7.0 * (3.0 - std::sqrt(2.0));
const double kRootPlus = 2.0 / 7.0 * (3.0 + std::sqrt(2.0));

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

void criterion1(Outcome& o) {
  double worst_t = 0.0, worst_lc = 0.0, worst_flat = 0.0;
  for (double q : {1.0, 5.0}) {
    const auto real = catalog::bdf_flat_kahler_4d(q);
    const auto u = to_unitary_structure(real);
    worst_t = std::max(worst_t, chern_torsion(u).norm());
    worst_lc = std::max(worst_lc, levi_civita(u).curvature_residual);
    worst_lc = std::max(worst_lc, oracle::frobenius(oracle::curvature(real, oracle::levi_civita(real))));
    for (double s : {-1.0, 0.0, 0.5, 1.0, 2.0, 3.0}) worst_flat = std::max(worst_flat, curvature(u, s).frobenius);
  }
  o.require(worst_t <= 1e-12, "|T|");
  o.require(worst_lc <= 1e-12, "LC curvature");
  o.require(worst_flat <= 1e-12, "nabla^s flatness");
  o.detail << "max |T| " << sci(worst_t) << ", LC " << sci(worst_lc) << ", flatness " << sci(worst_flat);
}

void criterion2(Outcome& o) {
  const auto u = catalog::samelson_su2_r(1.0);
  const double at2 = curvature(u, 2.0).frobenius;
  const double at0 = curvature(u, 0.0).frobenius;
  const double at1 = curvature(u, 1.0).frobenius;
  const double t = chern_torsion(u).norm();
  o.require(at2 <= 1e-12, "flat at s=2");
  o.require(at0 >= 0.1 && at1 >= 0.1, "non-flat at s=0,1");
  o.require(t > 0.3, "|T| > 0.3");
  o.detail << "flatness s=2 " << sci(at2) << ", s=0 " << at0 << ", s=1 " << at1 << ", |T| " << t;
}

void criterion3(Outcome& o) {
  const auto u = catalog::complex_group_2d(1.0);
  const double at0 = curvature(u, 0.0).frobenius;
  double least = 1e300;
  for (double s : {0.5, 1.0, 2.0}) least = std::min(least, curvature(u, s).frobenius);
  const double t = chern_torsion(u).norm();
  o.require(at0 <= 1e-12, "flat at s=0");
  o.require(least >= 0.1, "non-flat at s=1/2,1,2");
  o.require(t > 0.0, "|T| > 0");
  o.detail << "flatness s=0 " << sci(at0) << ", min over s=1/2,1,2 " << least << ", |T| " << t;
}

void criterion4(Outcome& o) {
  struct Pair {
    UnitaryStructure u;
    double s;
  };
  std::vector<Pair> pairs;
  for (double q : {1.0, 5.0})
    for (double s : {-1.0, 0.0, 0.5, 1.0, 2.0, 3.0})
      pairs.push_back({to_unitary_structure(catalog::bdf_flat_kahler_4d(q)), s});
  pairs.push_back({catalog::samelson_su2_r(1.0), 2.0});
  pairs.push_back({catalog::complex_group_2d(1.0), 0.0});
  double worst = 0.0;
  int checked = 0, outside = 0;
  double outside_worst = 0.0;
  bool vacuous_at_2 = true;
  for (const auto& p : pairs) {
    if (curvature(p.u, p.s).frobenius > 1e-12) {
      o.require(false, "fixture not flat");
      continue;
    }
    const auto rep = th::lemma31_residuals(p.u, p.s);
    vacuous_at_2 = vacuous_at_2 && (p.u.dim() != 2 || rep.identities[1].status == th::IdentityStatus::vacuous);
    if (!rep.hypothesis_holds) {
      ++outside;
      outside_worst = std::max(outside_worst, rep.max_abs());
      continue;
    }
    ++checked;
    worst = std::max(worst, rep.max_abs());
  }
  o.require(worst <= 1e-10, "identity residual");
  o.require(vacuous_at_2, "cyclic identity vacuous at n=2");
  o.detail << checked << " flat pairs, max residual " << sci(worst) << ", cyclic identity vacuous at n=2; "
           << outside << " s=0 pairs outside the s != 0 hypothesis (their max residual " << sci(outside_worst) << ")";
}

void criterion5(Outcome& o) {
  Rng rng(20250501);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 2;
    const auto u = random_structure(n, rng);
    for (double s : {0.0, 0.5, 1.0, 2.0, 3.0}) {
      const auto rep = curvature(u, s);
      const auto [holo, mixed] = lemma41_residuals(u, s);
      double scale = 0.0;
      for (const auto& [a, b] : rep.blocks) scale = std::max(scale, b.cwiseAbs().maxCoeff());
      scale = std::max(scale, 1.0);
      for (int family = 0; family < 2; ++family)
        for (const auto& [key, v] : (family == 0 ? holo : mixed).per_identity)
          worst = std::max(worst,
                           std::abs(v - lemma41_from_curvature(rep, family, key[1], key[2], key[3], key[4])) / scale);
    }
  }
  o.require(worst <= 1e-12, "relative mismatch");
  o.detail << "200 structures x 5 values of s, max relative mismatch " << sci(worst);
}

SearchProblem theorem_search(int n, double s, SearchMode mode, int restarts) {
  SearchProblem p;
  p.n = n;
  p.s = s;
  p.mode = mode;
  p.restarts = restarts;
  p.seed = 12345;
  p.hunt = true;
  p.tol = 1e-8;
  p.kahler_tol = 1e-4;
  return p;
}

void criterion6(Outcome& o) {
  for (double s : {0.3, kRootMinus, 1.5, kRootPlus, 3.0}) {
    const auto run = multistart_search(theorem_search(2, s, SearchMode::full, 100));
    o.detail << "s=" << format_double(s).substr(0, 6) << ": " << run.summary.converged_kahler << "K/"
             << run.summary.converged_nonkahler << "NK/" << run.summary.not_converged << "NC; ";
    o.require(run.summary.converged_nonkahler == 0, "non-Kahler flat point at s=" + format_double(s));
  }
  for (double s : {0.0, 2.0}) {
    const auto run = multistart_search(theorem_search(2, s, SearchMode::full, 100));
    o.detail << "s=" << s << ": " << run.summary.converged_nonkahler << "NK" << (s == 0.0 ? "; " : "");
    o.require(run.summary.converged_nonkahler >= 1, "no non-Kahler point at s=" + format_double(s));
  }
}

void criterion7(Outcome& o) {
  for (int n : {2, 3})
    for (double s : {0.5, 1.0, 1.5}) {
      const auto run = multistart_search(theorem_search(n, s, SearchMode::parallel_frame, 100));
      o.detail << "n=" << n << " s=" << s << ": " << run.summary.converged_kahler << "K/"
               << run.summary.converged_nonkahler << "NK/" << run.summary.not_converged << "NC; ";
      o.require(run.summary.converged_nonkahler == 0, "non-Kahler parallel frame");
    }
  const auto p = theorem_search(2, 2.0, SearchMode::parallel_frame, 1);
  const auto res = lm_minimize(p, catalog::samelson_su2_r(1.0));
  o.require(res.classification == Classification::converged_nonkahler, "Samelson seed at s=2");
  o.detail << "Samelson seed s=2: " << to_string(res.classification) << " |T| " << res.torsion_norm;
}

void criterion8(Outcome& o) {
  int points = 0, contradictions = 0;
  for (int i = 0; i < 1000; ++i) {
    const double s = -3.0 + 8.0 * i / 999.0;
    if (std::abs(s) < 1e-9 || std::abs(s - 2.0) < 1e-9) continue;
    ++points;
    contradictions += th::surface_obstruction(s).contradiction();
  }
  o.require(points == contradictions, "grid point without contradiction");
  for (double s : {0.0, 2.0})
    o.require(th::surface_obstruction(s).excluded_by == th::ObstructionStage::out_of_scope, "endpoint scope");
  for (double s : {kRootMinus, kRootPlus})
    o.require(th::surface_obstruction(s).excluded_by == th::ObstructionStage::final_jacobi, "root stage");
  o.detail << contradictions << "/" << points << " grid points contradicted; roots at final_jacobi";
}

void criterion9(Outcome& o) {
  auto p = theorem_search(2, 0.5, SearchMode::full, 50);
  const auto run = multistart_search(p);
  int converged = 0;
  double worst = 0.0;
  for (const auto& r : run.results)
    if (r.final_jacobi <= 1e-8 && r.final_flatness <= 1e-8) {
      ++converged;
      worst = std::max(worst, r.torsion_norm);
    }
  o.require(worst <= 1e-6, "|T| of a converged point");
  o.require(converged > 0, "no converged point");
  o.detail << converged << "/50 converged, max |T| " << sci(worst);
}

void criterion10(Outcome& o) {
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    SearchProblem p;
    p.mode = trial % 2 == 0 ? SearchMode::full : SearchMode::parallel_frame;
    p.n = 2 + (trial / 2) % 2;
    p.s = -1.0 + 0.37 * trial / 5.0;
    p.hunt = trial % 3 == 0;
    p.tau = 100.0;
    p.weights = {.jacobi = 1.0, .flatness = 0.5 + 0.1 * (trial % 4), .torsion_reward = 1.0};
    const auto x = random_start(p, derive_seed(99, trial));
    const auto jac = jacobian(x, p, p.hunt);
    const double h = 1e-6;
    double gap = 0.0, scale = 1.0;
    for (int q = 0; q < x.size(); ++q) {
      Eigen::VectorXd xp = x, xm = x;
      xp(q) += h;
      xm(q) -= h;
      const Eigen::VectorXd fd = (residual_vector(xp, p, p.hunt) - residual_vector(xm, p, p.hunt)) / (2.0 * h);
      gap = std::max(gap, (fd - jac.col(q)).cwiseAbs().maxCoeff());
      scale = std::max(scale, fd.cwiseAbs().maxCoeff());
    }
    worst = std::max(worst, gap / scale);
  }
  o.require(worst <= 1e-6, "relative deviation");
  o.detail << "50 points over both modes, max relative deviation " << sci(worst);
}

bool bitwise_equal(const ComplexTensor3& a, const ComplexTensor3& b) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t z = 0; z < a.data().size(); ++z)
    if (std::bit_cast<std::uint64_t>(a.data()[z].real()) != std::bit_cast<std::uint64_t>(b.data()[z].real()) ||
        std::bit_cast<std::uint64_t>(a.data()[z].imag()) != std::bit_cast<std::uint64_t>(b.data()[z].imag()))
      return false;
  return true;
}

void criterion11(Outcome& o) {
  std::vector<UnitaryStructure> fixtures{catalog::abelian(1),
                                         catalog::abelian(3),
                                         catalog::complex_group_2d(1.0),
                                         catalog::samelson_su2_r(1.0),
                                         catalog::samelson_su2_r(2.5),
                                         to_unitary_structure(catalog::samelson_su2_r_real(1.0)),
                                         to_unitary_structure(catalog::bdf_flat_kahler_4d(1.0)),
                                         to_unitary_structure(catalog::bdf_flat_kahler_4d(5.0)),
                                         to_unitary_structure(catalog::bdf_general(
                                             {.p = 2,
                                              .h_dim = 2,
                                              .c_dim = 2,
                                              .q = (Eigen::MatrixXd(2, 2) << 1.0, 0.5, -2.0, 1.5).finished(),
                                              .exchanged = 2}))};
  double worst = 0.0;
  bool bitwise = true;
  for (const auto& u : fixtures) {
    const auto back = to_unitary_structure(from_unitary_structure(u));
    worst = std::max({worst, (back.C() - u.C()).max_abs(), (back.D() - u.D()).max_abs()});
    const auto text = emit_structure(u);
    const auto parsed = parse_structure(text);
    bitwise = bitwise && bitwise_equal(parsed.C(), u.C()) && bitwise_equal(parsed.D(), u.D()) &&
              emit_structure(parsed) == text;
  }
  o.require(worst <= 1e-12, "real-bridge round trip");
  o.require(bitwise, "file round trip");
  o.detail << fixtures.size() << " fixtures, real-bridge max deviation " << sci(worst)
           << ", file round trip " << (bitwise ? "bitwise" : "NOT bitwise");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "flat Kahler fixture", 1.0, criterion1},
      {2, "Bismut-flat Samelson fixture", 1.0, criterion2},
      {3, "Chern-flat complex group", 1.0, criterion3},
      {4, "flat-case torsion identities", 1.0, criterion4},
      {5, "flatness identities equal curvature", 10.0, criterion5},
      {6, "surface search (full mode)", 120.0, criterion6},
      {7, "parallel-frame search", 120.0, criterion7},
      {8, "surface obstruction grid", 1.0, criterion8},
      {9, "s = 1/2 rigidity search", 60.0, criterion9},
      {10, "analytic Jacobian", 10.0, criterion10},
      {11, "round trips", 1.0, criterion11},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs <= c.budget_s, "runtime budget");
    failures += !o.pass;
    std::printf("criterion %2d: %s  %s (%s; %.2fs of %.0fs)\n", c.id, o.pass ? "PASS" : "FAIL", c.title,
                o.detail.str().c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
