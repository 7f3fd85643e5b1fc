#pragma once

// Executable versions of the flat-case torsion identities and of the two
// rigidity arguments (complex surfaces, and parallel left-invariant frames).

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hermlab/structure.hpp"

namespace hermlab::theorems {

enum class IdentityStatus { evaluated, vacuous, not_applicable };
const char* to_string(IdentityStatus s);

struct IdentityCheck {
  ResidualReport report;
  IdentityStatus status = IdentityStatus::evaluated;
  std::string form;
};

/// Residuals of the four torsion identities that hold on nabla^s-flat manifolds (s != 0):
///   [0] T^l_{ij,k} - T^l_{ik,j} = 2(1-s) T^l_{ir}T^r_{jk} + s T^l_{jr}T^r_{ik} - s T^l_{kr}T^r_{ij}
///   [1] 0 = (n-2)(s-1) (T^l_{ir}T^r_{jk} + T^l_{jr}T^r_{ki} + T^l_{kr}T^r_{ij})
///   [2] T^l_{ij,k} - T^l_{ik,j} = (2-s) T^l_{ir}T^r_{jk}                    (n >= 3, s != 1)
///   [3] 4(s-1)(2s-1) T^k_{ij,l̄} = lemma31_last_rhs(...)                    (cleared denominators)
/// [1] is reported vacuous when its prefactor vanishes; [2] is not_applicable
/// outside its range. Keys are {identity, upper, lower...}.
struct Lemma31Report {
  double s = 0.0;
  int n = 0;
  /// false when s == 0, which is outside the identities' hypothesis.
  bool hypothesis_holds = true;
  std::array<IdentityCheck, 4> identities;

  /// Max residual over identities with status `evaluated`.
  double max_abs() const;
};

Lemma31Report lemma31_residuals(const UnitaryStructure& u, double s);

/// Right-hand side of identity [0] for T^l_{ij,k} - T^l_{ik,j}.
Complex lemma31_first_rhs(const ComplexTensor3& t, double s, int l, int i, int j, int k);
/// Right-hand side of identity [3] for the cleared-denominator T^k_{ij,l̄}:
///   -4s(s-1)^2 T^r_{ij} conj T^r_{kl} - s(5s^2-10s+4)(T^k_{ir} conj T^j_{lr} - T^k_{jr} conj T^i_{lr})
///   + s^3 (T^l_{ir} conj T^j_{kr} - T^l_{jr} conj T^i_{kr})
Complex lemma31_last_rhs(const ComplexTensor3& t, double s, int k, int i, int j, int l);

/// 1/4 sum |T^j_{ir}|^2 + 1/4 sum |eta_r|^2. Vanishes exactly when T = 0.
double half_flat_trace(const TorsionData& t);

/// Covariant derivatives forced on a flat surface in a frame with T^2_{12} = 0, T^1_{12} = lambda.
/// Values marked `cleared` are 4(s-1)(2s-1) times the derivative.
struct Lemma32Table {
  double s = 0.0;
  Complex lambda;
  Complex t1_12_1, t2_12_1, t2_12_2, t1_12_2;
  double cleared_factor = 0.0;
  Complex cleared_t1_12_1bar, cleared_t2_12_2bar, cleared_t1_12_2bar, cleared_t2_12_1bar;
  /// false when the cleared factor vanishes but a right-hand side does not.
  bool consistent = true;
};

Lemma32Table lemma32_fixture(Complex lambda, double s);

enum class ObstructionStage {
  out_of_scope,           // s in {0, 2}
  denominator_exclusion,  // s in {1/2, 1}
  quadratic_mismatch,     // the two expressions for Gamma^2_{22} disagree: 7s^2 - 12s + 4 != 0
  final_jacobi,           // 5s - 6 = s - 2 fails
  none,
};
const char* to_string(ObstructionStage s);

/// Replay of the surface argument with every quantity divided by lambda (or |lambda|^2).
struct ObstructionReport {
  double s = 0.0;
  bool lambda_symbolic = true;
  std::map<std::string, double> forced_constants;
  ObstructionStage excluded_by = ObstructionStage::none;
  bool contradiction() const {
    return excluded_by != ObstructionStage::none && excluded_by != ObstructionStage::out_of_scope;
  }
};

ObstructionReport surface_obstruction(double s);

/// A_X(e_j) = sum_{i,k} X_i T^k_{ij} e_k, i.e. matrix(k, j) = sum_i X_i T^k_{ij}.
struct TorsionOperator {
  std::vector<Complex> x;
  Eigen::MatrixXcd matrix;
};
TorsionOperator torsion_operator(const ComplexTensor3& t, std::span<const Complex> x);
TorsionOperator torsion_operator(const ComplexTensor3& t, int frame_index);

/// max over frame pairs of ||A_{e_a} A_{e_b} + A_{e_b} A_{e_a}||_F.
double anticommutator_residual(const ComplexTensor3& t);

/// Structure with C = 2(s-1)T, D = -sT (so Gamma = 0) plus the diagnostics the
/// parallel-frame argument relies on.
struct ParallelFrameReduction {
  UnitaryStructure structure;
  double s = 0.0;
  /// Jacobi residual of the induced structure.
  double jacobi = 0.0;
  /// Curvature Frobenius norm of nabla^s on the induced structure.
  double flatness = 0.0;
  /// max |sum_r T^l_{ir} T^r_{jk}| (2-step nilpotency, relevant for s != 1).
  double two_step_nilpotency = 0.0;
  /// Per (i, j): sum_r 4(s-1)^2|T^r_{ij}|^2 + (5s^2-10s+4)(T^i_{ir} conj T^j_{jr} - |T^i_{jr}|^2)
  ///              - s^2(|T^j_{ir}|^2 - T^j_{jr} conj T^i_{ir}).
  ResidualReport eq31;
  /// max ||A_X A_Y + A_Y A_X|| over frame vectors (relevant for s = 1).
  double anticommutator = 0.0;
  /// Per (i, j): sum_r |T^j_{ri}|^2 - |T^i_{rj}|^2 (relevant for s = 1).
  ResidualReport eq33;
};

ParallelFrameReduction parallel_frame_reduction(const TorsionData& t, double s);

/// Per-(i,j) value of the diagonal torsion identity used by the parallel-frame argument.
Complex eq31_value(const ComplexTensor3& t, double s, int i, int j);

/// Unit vector W with A_Y(W) = 0 for every Y, if the stacked system [A_{e_1}; ...; A_{e_n}]
/// has a singular value below tol * ||stack||_F. Returns e_1 when T = 0. The phase is
/// fixed so the largest-modulus component is real and positive.
std::optional<Eigen::VectorXcd> common_kernel(const TorsionData& t, double tol = 1e-8);

struct DescentStep {
  int dimension = 0;
  /// Kernel (s = 1) or center (s != 1) dimension found at this step; 0 if none.
  int kernel_dimension = 0;
  /// Norm of the components the argument forces to vanish at this step.
  double forced_zero_norm = 0.0;
  std::string note;
};

struct DescentResult {
  bool out_of_scope = false;
  /// Torsion norm not yet accounted for when the argument terminates.
  double residual_norm = 0.0;
  std::vector<DescentStep> steps;
};

struct DescentOptions {
  /// Tolerance on the induced structure's Jacobi and flatness residuals.
  double hypothesis_tol = defaults::kFlatnessTol;
  double kernel_tol = 1e-8;
  /// When false the hypothesis check is skipped and the mechanics run on any T.
  bool check_hypotheses = true;
};

/// Iterated kernel splitting (s = 1) or center splitting (s != 0, 1, 2).
/// Throws HypothesisError if the induced parallel-frame structure is not a flat Lie algebra.
DescentResult torsion_descent(const TorsionData& t, double s, const DescentOptions& opts = {});

}  // namespace hermlab::theorems
