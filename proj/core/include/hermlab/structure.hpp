#pragma once

// Frame-level calculus of a left-invariant Hermitian structure on a Lie algebra.
//
// Conventions. g^C is spanned by a unitary (1,0) frame e_0..e_{n-1} and its
// conjugates. The pairing <,> is the complex-bilinear extension of the metric,
// so <e_i, conj(e_j)> = delta_ij and <e_i, e_j> = 0. The coefficient of e_r in a
// vector v is therefore <v, conj(e_r)>, and the coefficient of conj(e_r) is <v, e_r>.
//
//   C(j,i,k) = C^j_{ik} = <[e_i, e_k], conj(e_j)>
//   D(j,i,k) = D^j_{ik} = <[conj(e_j), e_k], e_i>
//
// Integrability ([g^{1,0}, g^{1,0}] in g^{1,0}) is built into this data model:
// [e_i, e_k] has no (0,1) part.

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hermlab/tensor.hpp"

namespace hermlab {

namespace defaults {
inline constexpr double kValidityTol = 1e-9;
inline constexpr double kFlatnessTol = 1e-8;
inline constexpr double kOracleTol = 1e-12;
inline constexpr double kKahlerTol = 1e-9;
}  // namespace defaults

/// Structure constants (C, D) of a left-invariant Hermitian Lie algebra in a unitary frame.
/// C is antisymmetrized on construction; both tensors must be finite.
class UnitaryStructure {
 public:
  UnitaryStructure(ComplexTensor3 c, ComplexTensor3 d);

  int dim() const noexcept { return c_.dim(); }
  const ComplexTensor3& C() const noexcept { return c_; }
  const ComplexTensor3& D() const noexcept { return d_; }

  bool operator==(const UnitaryStructure&) const = default;

 private:
  ComplexTensor3 c_;
  ComplexTensor3 d_;
};

/// Chern torsion T^j_{ik} and the Gauduchon one-form eta_r = sum_k T^k_{kr}.
struct TorsionData {
  ComplexTensor3 T;
  std::vector<Complex> eta;

  /// Antisymmetrizes `t` in its lower indices and contracts eta from it.
  static TorsionData from_tensor(const ComplexTensor3& t);
  double norm() const { return T.frobenius(); }
  double eta_norm() const;
};

/// Coefficients of the Gauduchon connection nabla^s.
///   gamma(j,i,k)     = <nabla_{e_k} e_i, conj(e_j)>
///   gamma_bar(j,i,k) = <nabla_{conj(e_k)} e_i, conj(e_j)> = -conj(gamma(i,j,k))
struct ConnectionFamily {
  double s = 0.0;
  ComplexTensor3 gamma;
  ComplexTensor3 gamma_bar;
};

/// Residuals of a family of identities, keyed by index tuple.
/// The first key entry is the family number within the report; remaining
/// entries are zero-based frame indices.
struct ResidualReport {
  std::string name;
  double max_abs = 0.0;
  std::map<std::vector<int>, Complex> per_identity;
  /// Max modulus per named family, e.g. "jacobi_eee".
  std::map<std::string, double> family_max;
  bool valid = true;

  void record(const std::string& family, std::vector<int> key, Complex value);
  bool within(double tol) const { return max_abs <= tol; }
};

/// Full bracket table of g^C on the basis (e_0..e_{n-1}, conj(e_0)..conj(e_{n-1})).
/// Flat direction index a < n is e_a, a >= n is conj(e_{a-n}).
class BracketTables {
 public:
  explicit BracketTables(int n);

  int dim() const noexcept { return n_; }
  int basis_size() const noexcept { return 2 * n_; }

  /// Coefficient of basis vector c in [a, b].
  Complex& operator()(int a, int b, int c) {
    return data_[(static_cast<std::size_t>(a) * 2 * n_ + b) * 2 * n_ + c];
  }
  const Complex& operator()(int a, int b, int c) const {
    return data_[(static_cast<std::size_t>(a) * 2 * n_ + b) * 2 * n_ + c];
  }

  /// Conjugate basis index: e_i <-> conj(e_i).
  int bar(int a) const noexcept { return a < n_ ? a + n_ : a - n_; }

  /// <[a,b], c> under the bilinear pairing.
  Complex pairing(int a, int b, int c) const { return (*this)(a, b, bar(c)); }

  /// Max |[a,b]_c + [b,a]_c| over the table.
  double antisymmetry_defect() const;
  /// Max |coeff of [conj a, conj b] - conj(coeff of [a, b])| over the table.
  double conjugation_defect() const;
  /// Max modulus of the full Jacobi identity of the table.
  double jacobi_defect() const;

 private:
  int n_;
  std::vector<Complex> data_;
};

/// Jacobi identities expressed in (C, D); see `validate_structure`.
ResidualReport validate_structure(const UnitaryStructure& u, double tol = defaults::kValidityTol);

TorsionData chern_torsion(const UnitaryStructure& u);

/// Gamma = D + s T, gamma_bar by metric compatibility.
ConnectionFamily gauduchon_connection(const UnitaryStructure& u, double s);

/// The same coefficients evaluated from brackets term by term (no torsion shortcut):
///   <nabla^s_{e_k} e_i, conj e_j> = (1-s/2)<[ē_j,e_k],e_i> + s/2 <[ē_j,e_i],e_k> - s/2 <[e_i,e_k],ē_j>
///   <nabla^s_{ē_k} e_i, conj e_j> = (1-s/2)<[ē_k,e_i],ē_j> + s/2 <[ē_j,e_i],ē_k> + s/2 <[ē_j,ē_k],e_i>
ConnectionFamily gauduchon_connection_from_brackets(const UnitaryStructure& u, double s);

/// Chern coefficients <nabla^c_{e_k} e_i, conj e_j> = <[ē_j, e_k], e_i>.
ComplexTensor3 chern_coefficients_from_brackets(const UnitaryStructure& u);
/// Bismut coefficients <nabla^b_{e_k} e_i, conj e_j> = <[ē_j, e_i], e_k> - <[e_i, e_k], ē_j>.
ComplexTensor3 bismut_coefficients_from_brackets(const UnitaryStructure& u);

BracketTables bracket_tables(const UnitaryStructure& u);

/// Covariant derivatives of the Chern torsion under nabla^s:
/// first = T^j_{ik,l} (index (j,i,k,l)), second = T^j_{ik,l̄}.
struct TorsionDerivatives {
  ComplexTensor4 holomorphic;
  ComplexTensor4 antiholomorphic;
};
TorsionDerivatives covariant_torsion_derivatives(const UnitaryStructure& u, double s);
TorsionDerivatives covariant_torsion_derivatives(const TorsionData& t, const ConnectionFamily& conn);

/// Constant unitary change of frame e'_i = sum_a P(a,i) e_a. C and D (and any
/// tensor of the same type, such as T) transform as
///   X'^j_{ik} = sum P(a,i) P(b,k) conj(P(c,j)) X^c_{ab}.
ComplexTensor3 change_frame(const ComplexTensor3& t, const Eigen::MatrixXcd& p);
UnitaryStructure change_frame(const UnitaryStructure& u, const Eigen::MatrixXcd& p);

}  // namespace hermlab
