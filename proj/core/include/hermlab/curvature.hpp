#pragma once

// Curvature of left-invariant connections on g^C.
//
// A left-invariant connection is determined by the endomorphisms A_a, one per
// frame direction a, with A_a(b) = nabla_a b. Directions use the flat index of
// BracketTables: a < n is e_a, a >= n is conj(e_{a-n}). Its curvature is
//   R(a,b) = A_a A_b - A_b A_a - A_{[a,b]},
// with A_{[a,b]} expanded linearly over the bracket table.

#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hermlab/structure.hpp"

namespace hermlab {

/// 2n×2n matrices A_a (column b holds the coefficients of nabla_a b).
std::vector<Eigen::MatrixXcd> connection_matrices(const ConnectionFamily& conn);

/// R(a,b) for every ordered pair, as 2n×2n matrices indexed [a * 2n + b].
std::vector<Eigen::MatrixXcd> curvature_operators(const std::vector<Eigen::MatrixXcd>& a,
                                                  const BracketTables& tab);

struct CurvatureReport {
  double s = 0.0;
  int n = 0;
  /// R(a,b) restricted to the (1,0) frame: entry (j,i) is the e_j coefficient of R(a,b) e_i.
  std::map<std::pair<int, int>, Eigen::MatrixXcd> blocks;
  /// Largest entry modulus over all blocks.
  double max_abs = 0.0;
  /// Frobenius norm over all blocks; unitary-gauge invariant. This is the
  /// "flatness residual" used in summaries and reports.
  double frobenius = 0.0;

  const Eigen::MatrixXcd& block(int a, int b) const { return blocks.at({a, b}); }
};

CurvatureReport curvature(const UnitaryStructure& u, double s);

/// Flatness identities of a unitary frame, as two residual reports:
///   first:  sum_r (C^r_{ik} G^l_{jr} + G^r_{ji} G^l_{rk} - G^r_{jk} G^l_{ri})
///   second: sum_r (D^j_{ri} conj G^k_{lr} + G^l_{kr} conj D^i_{rj} + G^l_{ri} conj G^k_{rj} - G^r_{ki} conj G^r_{lj})
/// Keys are {family, i, j, k, l}.
std::pair<ResidualReport, ResidualReport> lemma41_residuals(const UnitaryStructure& u, double s);

/// The curvature entry each flatness identity equals:
///   first(i,j,k,l)  = -R(e_i, e_k)(l, j)
///   second(i,j,k,l) = -R(e_i, ē_j)(l, k)
Complex lemma41_from_curvature(const CurvatureReport& r, int family, int i, int j, int k, int l);

struct PRepresentation {
  /// p(a) for each frame direction a (n×n): p(e_k)(j,i) = -G^j_{ik}, p(ē_k)(j,i) = -G^j_{i k̄}.
  std::vector<Eigen::MatrixXcd> p;
  /// max |p([a,b]) - [p(a), p(b)]| over all frame pairs.
  double homomorphism_residual = 0.0;
  /// max |p(X) + p(X)^H| over the real directions e_k + ē_k and i(e_k - ē_k).
  double skew_hermitian_residual = 0.0;
};

PRepresentation p_representation(const UnitaryStructure& u, double s);

struct LeviCivitaResult {
  /// Per-direction 2n×2n matrices of nabla (Koszul), nabla^c, gamma and beta.
  std::vector<Eigen::MatrixXcd> levi_civita;
  std::vector<Eigen::MatrixXcd> chern;
  std::vector<Eigen::MatrixXcd> gamma;
  std::vector<Eigen::MatrixXcd> beta;
  /// max entry of nabla - (nabla^c + gamma + beta).
  double decomposition_residual = 0.0;
  /// Frobenius norm of the Riemannian curvature over all direction pairs.
  double curvature_residual = 0.0;
};

LeviCivitaResult levi_civita(const UnitaryStructure& u);

struct FlatnessRow {
  double s = 0.0;
  double flatness_residual = 0.0;
  bool flat = false;
};

struct FlatnessSummary {
  double torsion_norm = 0.0;
  double eta_norm = 0.0;
  bool kahler = false;
  std::vector<FlatnessRow> rows;
};

FlatnessSummary kahler_flatness_summary(const UnitaryStructure& u, const std::vector<double>& s_grid,
                                        double kahler_tol = defaults::kKahlerTol,
                                        double flat_tol = defaults::kFlatnessTol);

}  // namespace hermlab
