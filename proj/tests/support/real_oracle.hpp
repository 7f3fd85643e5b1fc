#pragma once

// Independent real-geometry oracle: connections and curvature of a
// left-invariant Hermitian structure computed from the real brackets, metric
// and J alone (Koszul formula plus the dω corrections), then read off in a
// complex frame for comparison with the library.

#include <vector>

#include <Eigen/Dense>

#include "hermlab/real_bridge.hpp"

namespace oracle {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

// connection coefficients: conn[a](c, b) = component c of nabla_{x_a} x_b
using RealConnection = std::vector<MatrixXd>;

inline MatrixXd bracket_matrix(const hermlab::RealPresentation& p, int a) {
  const int m = p.dim();
  MatrixXd ad(m, m);
  for (int b = 0; b < m; ++b)
    for (int c = 0; c < m; ++c) ad(c, b) = p.f(c, a, b);
  return ad;
}

// Lowers the last index with G: returns covector coefficients g(v, x_c).
inline RealConnection levi_civita(const hermlab::RealPresentation& p) {
  const int m = p.dim();
  const MatrixXd& g = p.metric();
  const MatrixXd ginv = g.inverse();
  auto br = [&](int a, int b) {
    VectorXd v(m);
    for (int c = 0; c < m; ++c) v(c) = p.f(c, a, b);
    return v;
  };
  auto gg = [&](const VectorXd& u, int c) { return u.dot(g.col(c)); };
  RealConnection conn(m, MatrixXd::Zero(m, m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      VectorXd low(m);
      for (int c = 0; c < m; ++c) low(c) = 0.5 * (gg(br(a, b), c) - gg(br(b, c), a) + gg(br(c, a), b));
      conn[a].col(b) = ginv * low;
    }
  return conn;
}

// domega(X, Y, Z) for basis vectors, omega(X, Y) = g(JX, Y)
inline double domega(const hermlab::RealPresentation& p, const VectorXd& x, const VectorXd& y, const VectorXd& z) {
  const MatrixXd& g = p.metric();
  const MatrixXd& j = p.complex_structure();
  auto omega = [&](const VectorXd& u, const VectorXd& v) { return (j * u).dot(g * v); };
  return -omega(p.bracket(x, y), z) - omega(p.bracket(y, z), x) - omega(p.bracket(z, x), y);
}

// g(nabla^c_X Y, Z) = g(nabla_X Y, Z) - 1/2 domega(JX, Y, Z)   (chern)
// g(nabla^b_X Y, Z) = g(nabla_X Y, Z) + 1/2 domega(JX, JY, JZ) (bismut)
inline RealConnection gauduchon(const hermlab::RealPresentation& p, double s, double chern_sign = -1.0,
                                double bismut_sign = 1.0) {
  const int m = p.dim();
  const MatrixXd& g = p.metric();
  const MatrixXd ginv = g.inverse();
  const MatrixXd& j = p.complex_structure();
  RealConnection lc = levi_civita(p);
  RealConnection out(m, MatrixXd::Zero(m, m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const VectorXd x = VectorXd::Unit(m, a);
      const VectorXd y = VectorXd::Unit(m, b);
      VectorXd low(m);
      for (int c = 0; c < m; ++c) {
        const VectorXd z = VectorXd::Unit(m, c);
        const double base = lc[a].col(b).dot(g * z);
        const double ch = base + chern_sign * 0.5 * domega(p, j * x, y, z);
        const double bi = base + bismut_sign * 0.5 * domega(p, j * x, j * y, j * z);
        low(c) = (1.0 - 0.5 * s) * ch + 0.5 * s * bi;
      }
      out[a].col(b) = ginv * low;
    }
  return out;
}

// R(x_a, x_b) as m x m matrices, indexed [a * m + b]
inline std::vector<MatrixXd> curvature(const hermlab::RealPresentation& p, const RealConnection& conn) {
  const int m = p.dim();
  std::vector<MatrixXd> r(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      MatrixXd rab = conn[a] * conn[b] - conn[b] * conn[a];
      for (int c = 0; c < m; ++c) rab -= p.f(c, a, b) * conn[c];
      r[a * m + b] = rab;
    }
  return r;
}

inline double frobenius(const std::vector<MatrixXd>& ms) {
  double sq = 0.0;
  for (const auto& mm : ms) sq += mm.squaredNorm();
  return std::sqrt(sq);
}

// max_a |nabla_a J - J nabla_a| and max_a |G nabla_a + (G nabla_a)^T|
inline double j_parallel_defect(const hermlab::RealPresentation& p, const RealConnection& conn) {
  double w = 0.0;
  for (const auto& a : conn) w = std::max(w, (a * p.complex_structure() - p.complex_structure() * a).cwiseAbs().maxCoeff());
  return w;
}
inline double metric_defect(const hermlab::RealPresentation& p, const RealConnection& conn) {
  double w = 0.0;
  for (const auto& a : conn) {
    const MatrixXd ga = p.metric() * a;
    w = std::max(w, (ga + ga.transpose()).cwiseAbs().maxCoeff());
  }
  return w;
}

// Torsion T(x_a, x_b) = nabla_a x_b - nabla_b x_a - [x_a, x_b]
inline VectorXd torsion(const hermlab::RealPresentation& p, const RealConnection& conn, int a, int b) {
  const int m = p.dim();
  VectorXd t = conn[a].col(b) - conn[b].col(a);
  for (int c = 0; c < m; ++c) t(c) -= p.f(c, a, b);
  return t;
}

// complex-linear extension of a real matrix field applied to complex vectors
inline MatrixXcd along(const std::vector<MatrixXd>& per_dir, const VectorXcd& v) {
  MatrixXcd out = MatrixXcd::Zero(per_dir[0].rows(), per_dir[0].cols());
  for (int a = 0; a < v.size(); ++a)
    if (v(a) != cplx{}) out += v(a) * per_dir[a].cast<cplx>();
  return out;
}

// Complex frame vector list: e_0..e_{n-1}, then conjugates.
inline std::vector<VectorXcd> frame_vectors(const MatrixXcd& frame) {
  std::vector<VectorXcd> out;
  for (int i = 0; i < frame.cols(); ++i) out.push_back(frame.col(i));
  for (int i = 0; i < frame.cols(); ++i) out.push_back(frame.col(i).conjugate());
  return out;
}

inline cplx pair(const MatrixXd& g, const VectorXcd& u, const VectorXcd& v) {
  return (u.transpose() * g.cast<cplx>() * v)(0, 0);
}

// Curvature blocks in the complex frame: entry (j, i) = <R(v_a, v_b) e_i, conj e_j>.
inline MatrixXcd complex_block(const hermlab::RealPresentation& p, const std::vector<MatrixXd>& curv,
                               const MatrixXcd& frame, int a, int b) {
  const int m = p.dim();
  const int n = static_cast<int>(frame.cols());
  const auto vs = frame_vectors(frame);
  // bilinear in (v_a, v_b)
  MatrixXcd r = MatrixXcd::Zero(m, m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      const cplx w = vs[a](x) * vs[b](y);
      if (w != cplx{}) r += w * curv[x * m + y].cast<cplx>();
    }
  MatrixXcd block(n, n);
  for (int i = 0; i < n; ++i) {
    const VectorXcd img = r * vs[i];
    for (int j = 0; j < n; ++j) block(j, i) = pair(p.metric(), img, vs[n + j]);
  }
  return block;
}

// Column b holds the frame coefficients of nabla_{v_a} v_b, v = (e, conj e).
inline MatrixXcd complex_connection(const hermlab::RealPresentation& p, const RealConnection& conn,
                                    const MatrixXcd& frame, int a) {
  const auto vs = frame_vectors(frame);
  const int two_n = static_cast<int>(vs.size());
  const int n = two_n / 2;
  const MatrixXcd along_a = along(conn, vs[a]);
  MatrixXcd out(two_n, two_n);
  for (int b = 0; b < two_n; ++b) {
    const VectorXcd w = along_a * vs[b];
    for (int c = 0; c < two_n; ++c) out(c, b) = pair(p.metric(), w, vs[c < n ? c + n : c - n]);
  }
  return out;
}

// Chern torsion coefficients T^j_{ik} with T^c(e_i, e_k) = sum 2 T^j_{ik} e_j.
inline cplx chern_torsion_coefficient(const hermlab::RealPresentation& p, const RealConnection& chern,
                                      const MatrixXcd& frame, int j, int i, int k) {
  const int m = p.dim();
  const auto vs = frame_vectors(frame);
  VectorXcd t = VectorXcd::Zero(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const cplx w = vs[i](a) * vs[k](b);
      if (w != cplx{}) t += w * torsion(p, chern, a, b).cast<cplx>();
    }
  return 0.5 * pair(p.metric(), t, vs[frame.cols() + j]);
}

}  // namespace oracle
