#pragma once

// Named fixtures: abelian and complex Lie groups, the Samelson space su(2)+R,
// the 4-dimensional flat Kähler algebra and the general flat Kähler family.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hermlab/real_bridge.hpp"
#include "hermlab/structure.hpp"

namespace hermlab::catalog {

/// C = D = 0 in complex dimension n.
UnitaryStructure abelian(int n);

/// (C, D = 0): a complex Lie group with a left-invariant unitary frame. Throws
/// ValidationError if C fails the holomorphic Jacobi identity.
UnitaryStructure complex_group(const ComplexTensor3& c);
/// n = 2 example with C^2_{12} = value (one-based indices).
UnitaryStructure complex_group_2d(Complex value = 1.0);

/// su(2)+R with [X1,X2] = c X3 (cyclic), X0 central, JX1 = X0, JX2 = X3, in the
/// frame e_1 = (X1 - iX0)/sqrt2, e_2 = (X2 - iX3)/sqrt2:
/// C^2_{12} = ic/sqrt2 and D = -C. Throws DegenerateParameterError for c = 0.
UnitaryStructure samelson_su2_r(double c);
/// The same algebra as a real presentation on the ordered basis (X1, X2, X3, X0).
RealPresentation samelson_su2_r_real(double c);

/// Orthonormal basis (X, Y, Z, W): [X,Y] = qZ, [X,Z] = -qY, W central,
/// JX = W, JY = Z. This sign choice passes the integrability check.
/// Throws DegenerateParameterError for q = 0.
RealPresentation bdf_flat_kahler_4d(double q);

/// Data of the general flat Kähler algebra h + c + [g,g].
///
/// Basis order: h (h_dim vectors), c (c_dim vectors), then the rotation planes
/// (e_1, Je_1, ..., e_p, Je_p). J sends the first `exchanged` vectors of h to the
/// first `exchanged` vectors of c; the remaining vectors of h and of c are paired
/// consecutively (J a = b, J b = -a).
struct BdfSpec {
  int p = 0;
  int h_dim = 0;
  int c_dim = 0;
  /// h_dim × p; column i is the linear form q_i on h.
  Eigen::MatrixXd q;
  int exchanged = 0;
};

/// Checks the spec invariants; throws ValidationError naming the failure.
void check_bdf_spec(const BdfSpec& spec);

/// ad_X e_i = q_i(X) Je_i, ad_X Je_i = -q_i(X) e_i for X in h; all other brackets zero.
RealPresentation bdf_general(const BdfSpec& spec);

/// Adds seeded complex noise of modulus ~eps to C (antisymmetrized) and D.
UnitaryStructure perturb(const UnitaryStructure& u, double eps, std::uint64_t seed);

}  // namespace hermlab::catalog
