#include "hermlab/real_bridge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hermlab/error.hpp"

namespace hermlab {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

int checked_real_dim(int dim) {
  if (dim < 2 || dim % 2 != 0)
    throw DimensionError("real dimension must be even and positive, got " + std::to_string(dim));
  return dim;
}

Complex bilinear(const MatrixXd& g, const VectorXcd& u, const VectorXcd& v) {
  return (u.transpose() * g.cast<Complex>() * v)(0, 0);
}

}  // namespace

RealPresentation::RealPresentation(int dim)
    : dim_(checked_real_dim(dim)),
      f_(static_cast<std::size_t>(dim) * dim * dim, 0.0),
      g_(MatrixXd::Identity(dim, dim)),
      j_(MatrixXd::Zero(dim, dim)) {}

RealPresentation::RealPresentation(int dim, std::vector<double> f, MatrixXd g, MatrixXd j)
    : dim_(checked_real_dim(dim)), f_(std::move(f)), g_(std::move(g)), j_(std::move(j)) {
  if (f_.size() != static_cast<std::size_t>(dim) * dim * dim)
    throw DimensionError("bracket array must have dim^3 entries");
  if (g_.rows() != dim || g_.cols() != dim || j_.rows() != dim || j_.cols() != dim)
    throw DimensionError("metric and complex structure must be dim x dim");
}

void RealPresentation::set_bracket(int a, int b, const VectorXd& value) {
  if (value.size() != dim_) throw DimensionError("bracket value has wrong length");
  for (int c = 0; c < dim_; ++c) {
    f(c, a, b) = value(c);
    f(c, b, a) = -value(c);
  }
}

VectorXcd RealPresentation::bracket(const VectorXcd& u, const VectorXcd& v) const {
  VectorXcd out = VectorXcd::Zero(dim_);
  for (int a = 0; a < dim_; ++a) {
    if (u(a) == Complex{}) continue;
    for (int b = 0; b < dim_; ++b) {
      const Complex w = u(a) * v(b);
      if (w == Complex{}) continue;
      for (int c = 0; c < dim_; ++c) out(c) += w * f(c, a, b);
    }
  }
  return out;
}

VectorXd RealPresentation::bracket(const VectorXd& u, const VectorXd& v) const {
  VectorXd out = VectorXd::Zero(dim_);
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b) {
      const double w = u(a) * v(b);
      if (w == 0.0) continue;
      for (int c = 0; c < dim_; ++c) out(c) += w * f(c, a, b);
    }
  return out;
}

RealValidation validate_real(const RealPresentation& p, double tol) {
  const int m = p.dim();
  const MatrixXd& g = p.metric();
  const MatrixXd& j = p.complex_structure();
  RealValidation out;
  auto& rep = out.residuals;
  rep.name = "real_presentation";

  for (int c = 0; c < m; ++c)
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) rep.record("antisymmetry", {0, c, a, b}, p.f(c, a, b) + p.f(c, b, a));

  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int c = b + 1; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          double v = 0.0;
          for (int e = 0; e < m; ++e)
            v += p.f(e, b, c) * p.f(d, a, e) + p.f(e, c, a) * p.f(d, b, e) + p.f(e, a, b) * p.f(d, c, e);
          rep.record("jacobi", {1, a, b, c, d}, v);
        }

  const MatrixXd jj = j * j + MatrixXd::Identity(m, m);
  const MatrixXd compat = j.transpose() * g * j - g;
  const MatrixXd sym = g - g.transpose();
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      rep.record("complex_structure", {2, r, c}, jj(r, c));
      rep.record("compatibility", {3, r, c}, std::max(std::abs(compat(r, c)), std::abs(sym(r, c))));
    }

  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const VectorXd x = VectorXd::Unit(m, a);
      const VectorXd y = VectorXd::Unit(m, b);
      const VectorXd jx = j * x;
      const VectorXd jy = j * y;
      const VectorXd nij = p.bracket(x, y) - p.bracket(jx, jy) + j * p.bracket(jx, y) + j * p.bracket(x, jy);
      for (int c = 0; c < m; ++c) rep.record("integrability", {4, a, b, c}, nij(c));
    }

  const Eigen::SelfAdjointEigenSolver<MatrixXd> eig(0.5 * (g + g.transpose()), Eigen::EigenvaluesOnly);
  out.min_metric_eigenvalue = eig.eigenvalues().minCoeff();
  out.metric_spd = out.min_metric_eigenvalue > 0.0;
  rep.valid = rep.max_abs <= tol;
  out.valid = rep.valid && out.metric_spd;
  return out;
}

MatrixXcd adapted_unitary_frame(const RealPresentation& p) {
  const int m = p.dim();
  const int n = p.complex_dim();
  const MatrixXd& g = p.metric();
  const MatrixXd& j = p.complex_structure();
  auto inner = [&](const VectorXd& u, const VectorXd& v) { return u.dot(g * v); };

  std::vector<VectorXd> basis;  // G-orthonormal, J-invariant span
  auto orthogonalize = [&](VectorXd v) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v -= inner(b, v) * b;
    return v;
  };

  MatrixXcd frame(m, n);
  int candidate = 0;
  for (int step = 0; step < n; ++step) {
    VectorXd u;
    for (; candidate < m; ++candidate) {
      const VectorXd x = VectorXd::Unit(m, candidate);
      const double scale = std::sqrt(std::max(inner(x, x), 0.0));
      if (!(scale > 0.0))
        throw FrameConstructionError("step " + std::to_string(step) + ": basis vector " +
                                     std::to_string(candidate) + " has non-positive norm");
      VectorXd v = orthogonalize(x);
      const double nv = std::sqrt(std::max(inner(v, v), 0.0));
      if (nv > 1e-8 * scale) {
        u = v / nv;
        ++candidate;
        break;
      }
    }
    if (u.size() == 0)
      throw FrameConstructionError("step " + std::to_string(step) + ": ran out of independent candidates after " +
                                   std::to_string(basis.size()) + " real vectors");
    basis.push_back(u);
    VectorXd ju = orthogonalize(j * u);
    const double nju = std::sqrt(std::max(inner(ju, ju), 0.0));
    if (!(nju > 1e-8))
      throw FrameConstructionError("step " + std::to_string(step) + ": J u is dependent on the current span");
    ju /= nju;
    basis.push_back(ju);
    frame.col(step) = (u.cast<Complex>() - Complex{0.0, 1.0} * ju.cast<Complex>()) / std::numbers::sqrt2;
  }
  return frame;
}

double frame_unitarity_residual(const RealPresentation& p, const MatrixXcd& frame) {
  const int n = static_cast<int>(frame.cols());
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const VectorXcd ei = frame.col(i);
      const VectorXcd ek = frame.col(k);
      const Complex herm = bilinear(p.metric(), ei, ek.conjugate());
      const Complex bil = bilinear(p.metric(), ei, ek);
      worst = std::max({worst, std::abs(herm - (i == k ? 1.0 : 0.0)), std::abs(bil)});
    }
  return worst;
}

double integrability_leak(const RealPresentation& p, const MatrixXcd& frame) {
  const int n = static_cast<int>(frame.cols());
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const VectorXcd br = p.bracket(VectorXcd(frame.col(i)), VectorXcd(frame.col(k)));
      for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(bilinear(p.metric(), br, frame.col(j))));
    }
  return worst;
}

UnitaryStructure to_unitary_structure(const RealPresentation& p, const MatrixXcd& frame, double tol) {
  const int n = p.complex_dim();
  if (frame.rows() != p.dim() || frame.cols() != n) throw DimensionError("frame must be 2n x n");
  const double leak = integrability_leak(p, frame);
  if (leak > tol)
    throw IntegrabilityError("[e_i, e_k] has a (0,1) component of size " + std::to_string(leak), leak);

  ComplexTensor3 c(n), d(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const VectorXcd ei = frame.col(i);
      const VectorXcd ek = frame.col(k);
      const VectorXcd hol = p.bracket(ei, ek);
      const VectorXcd mixed = p.bracket(VectorXcd(ei.conjugate()), ek);  // [ē_i, e_k]
      for (int j = 0; j < n; ++j) {
        const VectorXcd ej = frame.col(j);
        if (i < k) {
          c(j, i, k) = bilinear(p.metric(), hol, ej.conjugate());
          c(j, k, i) = -c(j, i, k);
        }
        // D^i_{jk} = <[ē_i, e_k], e_j>
        d(i, j, k) = bilinear(p.metric(), mixed, ej);
      }
    }
  return UnitaryStructure(std::move(c), std::move(d));
}

UnitaryStructure to_unitary_structure(const RealPresentation& p, double tol) {
  return to_unitary_structure(p, adapted_unitary_frame(p), tol);
}

RealPresentation from_unitary_structure(const UnitaryStructure& u, double tol) {
  const auto check = validate_structure(u, tol);
  if (!check.valid)
    throw ValidationError("structure fails the Jacobi identities (max residual " + std::to_string(check.max_abs) +
                          ")");
  const int n = u.dim();
  const int m = 2 * n;
  const auto tab = bracket_tables(u);
  const double h = 1.0 / std::numbers::sqrt2;
  const Complex I{0.0, 1.0};

  // Columns: real basis vectors in the complex frame (e_0..e_{n-1}, ē_0..ē_{n-1}).
  MatrixXcd to_complex = MatrixXcd::Zero(m, m);
  for (int i = 0; i < n; ++i) {
    to_complex(i, 2 * i) = h;
    to_complex(n + i, 2 * i) = h;
    to_complex(i, 2 * i + 1) = I * h;
    to_complex(n + i, 2 * i + 1) = -I * h;
  }
  // Columns: complex frame vectors in real coordinates.
  MatrixXcd to_real = MatrixXcd::Zero(m, m);
  for (int i = 0; i < n; ++i) {
    to_real(2 * i, i) = h;
    to_real(2 * i + 1, i) = -I * h;
    to_real(2 * i, n + i) = h;
    to_real(2 * i + 1, n + i) = I * h;
  }

  RealPresentation out(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      VectorXcd br = VectorXcd::Zero(m);  // in the complex frame
      for (int x = 0; x < m; ++x) {
        if (to_complex(x, a) == Complex{}) continue;
        for (int y = 0; y < m; ++y) {
          const Complex w = to_complex(x, a) * to_complex(y, b);
          if (w == Complex{}) continue;
          for (int c = 0; c < m; ++c) br(c) += w * tab(x, y, c);
        }
      }
      const VectorXcd real_coords = to_real * br;
      for (int c = 0; c < m; ++c) out.f(c, a, b) = real_coords(c).real();
    }
  for (int i = 0; i < n; ++i) {
    out.complex_structure()(2 * i + 1, 2 * i) = 1.0;
    out.complex_structure()(2 * i, 2 * i + 1) = -1.0;
  }
  return out;
}

}  // namespace hermlab
