#pragma once

// Real presentations of a Hermitian Lie algebra and their conversion to unitary
// structure constants.
//
// A presentation lives on a real basis x_0..x_{2n-1}:
//   [x_a, x_b] = sum_c f(c,a,b) x_c,   <x_a, x_b> = G(a,b),   J x_a = sum_b J(b,a) x_b.
// Matrices act on coordinate columns, so compatibility reads J^T G J = G.

#include <vector>

#include <Eigen/Dense>

#include "hermlab/structure.hpp"

namespace hermlab {

class RealPresentation {
 public:
  /// Abelian algebra of dimension `dim` with G = I and J = 0. Odd `dim` throws DimensionError.
  explicit RealPresentation(int dim);
  RealPresentation(int dim, std::vector<double> f, Eigen::MatrixXd g, Eigen::MatrixXd j);

  int dim() const noexcept { return dim_; }
  int complex_dim() const noexcept { return dim_ / 2; }

  double& f(int c, int a, int b) { return f_[(static_cast<std::size_t>(c) * dim_ + a) * dim_ + b]; }
  double f(int c, int a, int b) const { return f_[(static_cast<std::size_t>(c) * dim_ + a) * dim_ + b]; }

  /// Sets [x_a, x_b] = value and [x_b, x_a] = -value.
  void set_bracket(int a, int b, const Eigen::VectorXd& value);

  Eigen::MatrixXd& metric() noexcept { return g_; }
  const Eigen::MatrixXd& metric() const noexcept { return g_; }
  Eigen::MatrixXd& complex_structure() noexcept { return j_; }
  const Eigen::MatrixXd& complex_structure() const noexcept { return j_; }

  /// Bracket of coordinate vectors (real or complexified).
  Eigen::VectorXcd bracket(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const;
  Eigen::VectorXd bracket(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;

 private:
  int dim_;
  std::vector<double> f_;
  Eigen::MatrixXd g_;
  Eigen::MatrixXd j_;
};

struct RealValidation {
  /// Families: antisymmetry, jacobi, complex_structure (J^2 + I), compatibility
  /// (J^T G J - G and G - G^T), integrability ([x,y] - [Jx,Jy] + J[Jx,y] + J[x,Jy]).
  ResidualReport residuals;
  double min_metric_eigenvalue = 0.0;
  bool metric_spd = false;
  /// residuals within tol and metric positive definite.
  bool valid = false;
};

RealValidation validate_real(const RealPresentation& p, double tol = defaults::kValidityTol);

/// Columns are e_i = (u_i - i J u_i)/sqrt(2) for a G-orthonormal J-adapted basis
/// {u_i, J u_i} grown by modified Gram–Schmidt over the input basis order.
/// Candidates already in the span are skipped.
Eigen::MatrixXcd adapted_unitary_frame(const RealPresentation& p);

/// max |<e_i, ē_j> - delta_ij| and |<e_i, e_j>| of a frame under G.
double frame_unitarity_residual(const RealPresentation& p, const Eigen::MatrixXcd& frame);

/// (C, D) in the adapted frame. Throws IntegrabilityError when the (0,1) part of
/// some [e_i, e_k] exceeds `tol`.
UnitaryStructure to_unitary_structure(const RealPresentation& p, double tol = defaults::kValidityTol);
UnitaryStructure to_unitary_structure(const RealPresentation& p, const Eigen::MatrixXcd& frame,
                                      double tol = defaults::kValidityTol);

/// Max modulus of the (0,1) components <[e_i, e_k], e_j> in the given frame.
double integrability_leak(const RealPresentation& p, const Eigen::MatrixXcd& frame);

/// Realification on x_{2i} = (e_i + ē_i)/sqrt(2), x_{2i+1} = i(e_i - ē_i)/sqrt(2),
/// with G = I and J x_{2i} = x_{2i+1}. Throws ValidationError if `u` fails
/// validate_structure at `tol`.
RealPresentation from_unitary_structure(const UnitaryStructure& u, double tol = defaults::kValidityTol);

}  // namespace hermlab
