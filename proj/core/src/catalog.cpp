#include "hermlab/catalog.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hermlab/error.hpp"
#include "hermlab/random.hpp"

namespace hermlab::catalog {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd unit(int m, int a, double scale = 1.0) { return scale * VectorXd::Unit(m, a); }

void pair_j(MatrixXd& j, int a, int b) {
  // J x_a = x_b, J x_b = -x_a
  j(b, a) = 1.0;
  j(a, b) = -1.0;
}

}  // namespace

UnitaryStructure abelian(int n) { return UnitaryStructure(ComplexTensor3(n), ComplexTensor3(n)); }

UnitaryStructure complex_group(const ComplexTensor3& c) {
  UnitaryStructure u(c, ComplexTensor3(c.dim()));
  const auto rep = validate_structure(u);
  if (!rep.valid)
    throw ValidationError("complex group structure constants fail Jacobi (max residual " +
                          std::to_string(rep.max_abs) + ")");
  return u;
}

UnitaryStructure complex_group_2d(Complex value) {
  ComplexTensor3 c(2);
  c(1, 0, 1) = value;
  c(1, 1, 0) = -value;
  return complex_group(c);
}

UnitaryStructure samelson_su2_r(double c) {
  if (c == 0.0) throw DegenerateParameterError("samelson_su2_r needs c != 0 (c = 0 is abelian)");
  const double v = c / std::numbers::sqrt2;
  ComplexTensor3 cc(2), dd(2);
  cc(1, 0, 1) = {0.0, v};
  cc(1, 1, 0) = {0.0, -v};
  dd(1, 0, 1) = {0.0, -v};
  dd(1, 1, 0) = {0.0, v};
  return UnitaryStructure(std::move(cc), std::move(dd));
}

RealPresentation samelson_su2_r_real(double c) {
  if (c == 0.0) throw DegenerateParameterError("samelson_su2_r needs c != 0 (c = 0 is abelian)");
  // basis order X1, X2, X3, X0
  RealPresentation p(4);
  p.set_bracket(0, 1, unit(4, 2, c));
  p.set_bracket(1, 2, unit(4, 0, c));
  p.set_bracket(2, 0, unit(4, 1, c));
  pair_j(p.complex_structure(), 0, 3);
  pair_j(p.complex_structure(), 1, 2);
  return p;
}

RealPresentation bdf_flat_kahler_4d(double q) {
  if (q == 0.0) throw DegenerateParameterError("bdf_flat_kahler_4d needs q != 0 (q = 0 is abelian)");
  // basis order X, Y, Z, W
  RealPresentation p(4);
  p.set_bracket(0, 1, unit(4, 2, q));
  p.set_bracket(0, 2, unit(4, 1, -q));
  pair_j(p.complex_structure(), 0, 3);
  pair_j(p.complex_structure(), 1, 2);
  return p;
}

void check_bdf_spec(const BdfSpec& spec) {
  if (spec.p < 0 || spec.h_dim < 0 || spec.c_dim < 0)
    throw ValidationError("bdf: dimensions must be non-negative");
  if (spec.h_dim + spec.c_dim + 2 * spec.p == 0) throw ValidationError("bdf: algebra is zero-dimensional");
  if (spec.q.rows() != spec.h_dim || spec.q.cols() != spec.p)
    throw ValidationError("bdf: q must be h_dim x p, got " + std::to_string(spec.q.rows()) + " x " +
                          std::to_string(spec.q.cols()));
  if (spec.exchanged < 0 || spec.exchanged > spec.h_dim || spec.exchanged > spec.c_dim)
    throw ValidationError("bdf: exchanged count exceeds dim h or dim c");
  if ((spec.h_dim - spec.exchanged) % 2 != 0 || (spec.c_dim - spec.exchanged) % 2 != 0)
    throw ValidationError("bdf: J-invariant parts of h and c must be even-dimensional");
  if (spec.h_dim > 0) {
    const Eigen::JacobiSVD<MatrixXd> svd(spec.q);
    const auto sv = svd.singularValues();
    // q: h -> R^p is injective iff q has h_dim non-zero singular values.
    if (spec.h_dim > spec.p || sv.size() < spec.h_dim || !(sv(spec.h_dim - 1) > 1e-12 * std::max(1.0, sv(0))))
      throw ValidationError("bdf: q is not injective on h");
  }
}

RealPresentation bdf_general(const BdfSpec& spec) {
  check_bdf_spec(spec);
  const int m = spec.h_dim + spec.c_dim + 2 * spec.p;
  RealPresentation out(m);
  const int c0 = spec.h_dim;
  const int g0 = spec.h_dim + spec.c_dim;
  for (int x = 0; x < spec.h_dim; ++x)
    for (int i = 0; i < spec.p; ++i) {
      const double w = spec.q(x, i);
      if (w == 0.0) continue;
      const int e = g0 + 2 * i;
      out.set_bracket(x, e, unit(m, e + 1, w));
      out.set_bracket(x, e + 1, unit(m, e, -w));
    }
  auto& j = out.complex_structure();
  for (int t = 0; t < spec.exchanged; ++t) pair_j(j, t, c0 + t);
  for (int t = spec.exchanged; t < spec.h_dim; t += 2) pair_j(j, t, t + 1);
  for (int t = c0 + spec.exchanged; t < g0; t += 2) pair_j(j, t, t + 1);
  for (int i = 0; i < spec.p; ++i) pair_j(j, g0 + 2 * i, g0 + 2 * i + 1);
  return out;
}

UnitaryStructure perturb(const UnitaryStructure& u, double eps, std::uint64_t seed) {
  if (eps == 0.0) return u;
  Rng rng(seed);
  ComplexTensor3 noise(u.dim());
  ComplexTensor3 d = u.D();
  for (auto& v : noise.data()) v = eps * rng.complex_gaussian();
  for (auto& v : d.data()) v += eps * rng.complex_gaussian();
  return UnitaryStructure(u.C() + noise.antisymmetrized(), std::move(d));
}

}  // namespace hermlab::catalog
