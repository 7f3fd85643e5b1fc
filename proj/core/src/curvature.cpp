#include "hermlab/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "polarized.hpp"

namespace hermlab {

namespace {

using Eigen::MatrixXcd;

double max_entry(const MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

std::vector<MatrixXcd> connection_matrices(const ConnectionFamily& conn) {
  const int n = conn.gamma.dim();
  std::vector<MatrixXcd> out(2 * n, MatrixXcd::Zero(2 * n, 2 * n));
  for (int k = 0; k < n; ++k) {
    auto& hol = out[k];
    auto& anti = out[n + k];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        hol(j, i) = conn.gamma(j, i, k);
        hol(n + j, i + n) = std::conj(conn.gamma_bar(j, i, k));
        anti(j, i) = conn.gamma_bar(j, i, k);
        anti(n + j, i + n) = std::conj(conn.gamma(j, i, k));
      }
  }
  return out;
}

std::vector<MatrixXcd> curvature_operators(const std::vector<MatrixXcd>& a, const BracketTables& tab) {
  const int m = tab.basis_size();
  std::vector<MatrixXcd> out(static_cast<std::size_t>(m) * m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      MatrixXcd r = a[x] * a[y] - a[y] * a[x];
      for (int c = 0; c < m; ++c) {
        const Complex coeff = tab(x, y, c);
        if (coeff != Complex{}) r -= coeff * a[c];
      }
      out[static_cast<std::size_t>(x) * m + y] = std::move(r);
    }
  return out;
}

CurvatureReport curvature(const UnitaryStructure& u, double s) {
  const int n = u.dim();
  const auto ops = curvature_operators(connection_matrices(gauduchon_connection(u, s)), bracket_tables(u));
  CurvatureReport rep;
  rep.s = s;
  rep.n = n;
  double sq = 0.0;
  for (int a = 0; a < 2 * n; ++a)
    for (int b = 0; b < 2 * n; ++b) {
      MatrixXcd blk = ops[static_cast<std::size_t>(a) * 2 * n + b].topLeftCorner(n, n);
      rep.max_abs = std::max(rep.max_abs, max_entry(blk));
      sq += blk.squaredNorm();
      rep.blocks.emplace(std::make_pair(a, b), std::move(blk));
    }
  rep.frobenius = std::sqrt(sq);
  return rep;
}

std::pair<ResidualReport, ResidualReport> lemma41_residuals(const UnitaryStructure& u, double s) {
  const auto conn = gauduchon_connection(u, s);
  ResidualReport holo, mixed;
  holo.name = "flatness_holomorphic";
  mixed.name = "flatness_mixed";
  detail::flatness_polarized(u.C(), u.D(), conn.gamma, u.D(), conn.gamma,
                             [&](int fam, int i, int j, int k, int l, Complex v) {
                               auto& rep = fam == 0 ? holo : mixed;
                               rep.record(rep.name, {fam, i, j, k, l}, v);
                             });
  return {std::move(holo), std::move(mixed)};
}

Complex lemma41_from_curvature(const CurvatureReport& r, int family, int i, int j, int k, int l) {
  if (family == 0) return -r.block(i, k)(l, j);
  return -r.block(i, r.n + j)(l, k);
}

PRepresentation p_representation(const UnitaryStructure& u, double s) {
  const int n = u.dim();
  const auto mats = connection_matrices(gauduchon_connection(u, s));
  const auto tab = bracket_tables(u);
  PRepresentation out;
  out.p.reserve(2 * n);
  for (const auto& a : mats) out.p.push_back(-a.topLeftCorner(n, n));
  for (int a = 0; a < 2 * n; ++a)
    for (int b = 0; b < 2 * n; ++b) {
      MatrixXcd lhs = MatrixXcd::Zero(n, n);
      for (int c = 0; c < 2 * n; ++c) lhs += tab(a, b, c) * out.p[c];
      const MatrixXcd diff = lhs - (out.p[a] * out.p[b] - out.p[b] * out.p[a]);
      out.homomorphism_residual = std::max(out.homomorphism_residual, max_entry(diff));
    }
  const Complex I{0.0, 1.0};
  for (int k = 0; k < n; ++k) {
    const MatrixXcd re = out.p[k] + out.p[n + k];
    const MatrixXcd im = I * (out.p[k] - out.p[n + k]);
    out.skew_hermitian_residual =
        std::max({out.skew_hermitian_residual, max_entry(re + re.adjoint()), max_entry(im + im.adjoint())});
  }
  return out;
}

LeviCivitaResult levi_civita(const UnitaryStructure& u) {
  const int n = u.dim();
  const int m = 2 * n;
  const auto tab = bracket_tables(u);
  const auto tor = chern_torsion(u);
  const auto& t = tor.T;

  LeviCivitaResult out;
  // Koszul with left-invariant fields: 2<nabla_a b, c> = <[a,b],c> - <[a,c],b> - <[b,c],a>.
  out.levi_civita.assign(m, MatrixXcd::Zero(m, m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int d = 0; d < m; ++d) {
        const int c = tab.bar(d);
        out.levi_civita[a](d, b) = 0.5 * (tab.pairing(a, b, c) - tab.pairing(a, c, b) - tab.pairing(b, c, a));
      }

  out.chern = connection_matrices(gauduchon_connection(u, 0.0));
  out.gamma.assign(m, MatrixXcd::Zero(m, m));
  out.beta.assign(m, MatrixXcd::Zero(m, m));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        // gamma e_i = (T^j_{ik} phi_k - conj(T^i_{jk}) phibar_k) e_j, extended to ē_i by conjugation.
        out.gamma[k](j, i) = t(j, i, k);
        out.gamma[n + k](j, i) = -std::conj(t(i, j, k));
        out.gamma[k](n + j, n + i) = -t(i, j, k);
        out.gamma[n + k](n + j, n + i) = std::conj(t(j, i, k));
        // beta e_i = T^k_{ij} phibar_k ē_j.
        out.beta[n + k](n + j, i) = t(k, i, j);
        out.beta[k](j, n + i) = std::conj(t(k, i, j));
      }
  for (int a = 0; a < m; ++a)
    out.decomposition_residual = std::max(
        out.decomposition_residual, max_entry(out.levi_civita[a] - out.chern[a] - out.gamma[a] - out.beta[a]));

  double sq = 0.0;
  for (const auto& r : curvature_operators(out.levi_civita, tab)) sq += r.squaredNorm();
  out.curvature_residual = std::sqrt(sq);
  return out;
}

FlatnessSummary kahler_flatness_summary(const UnitaryStructure& u, const std::vector<double>& s_grid,
                                        double kahler_tol, double flat_tol) {
  const auto tor = chern_torsion(u);
  FlatnessSummary out;
  out.torsion_norm = tor.norm();
  out.eta_norm = tor.eta_norm();
  out.kahler = out.torsion_norm <= kahler_tol;
  for (double s : s_grid) {
    const double f = curvature(u, s).frobenius;
    out.rows.push_back({s, f, f <= flat_tol});
  }
  return out;
}

}  // namespace hermlab
