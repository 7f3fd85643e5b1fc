#include "hermlab/theorem_lab.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hermlab/curvature.hpp"
#include "hermlab/error.hpp"

namespace hermlab::theorems {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

constexpr double kParamEps = 1e-12;

bool near(double a, double b) { return std::abs(a - b) <= kParamEps; }

// sum_r T^l_{ir} T^r_{jk}
Complex quad(const ComplexTensor3& t, int l, int i, int j, int k) {
  Complex v{};
  for (int r = 0; r < t.dim(); ++r) v += t(l, i, r) * t(r, j, k);
  return v;
}

// sum_r T^a_{br} conj(T^c_{dr})
Complex mixed(const ComplexTensor3& t, int a, int b, int c, int d) {
  Complex v{};
  for (int r = 0; r < t.dim(); ++r) v += t(a, b, r) * std::conj(t(c, d, r));
  return v;
}

ComplexTensor3 leading_block(const ComplexTensor3& t, int m) {
  ComplexTensor3 out(m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k) out(j, i, k) = t(j, i, k);
  return out;
}

MatrixXcd stacked_operators(const ComplexTensor3& t) {
  const int n = t.dim();
  MatrixXcd stack(n * n, n);
  for (int a = 0; a < n; ++a) stack.block(a * n, 0, n, n) = torsion_operator(t, a).matrix;
  return stack;
}

// Unitary whose first columns span `cols` (orthonormal input), completed by Householder QR.
MatrixXcd complete_unitary(const MatrixXcd& cols) {
  const int n = static_cast<int>(cols.rows());
  Eigen::HouseholderQR<MatrixXcd> qr(cols);
  MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(n, n);
  return q;
}

}  // namespace

const char* to_string(IdentityStatus s) {
  switch (s) {
    case IdentityStatus::evaluated: return "evaluated";
    case IdentityStatus::vacuous: return "vacuous";
    case IdentityStatus::not_applicable: return "not_applicable";
  }
  return "?";
}

const char* to_string(ObstructionStage s) {
  switch (s) {
    case ObstructionStage::out_of_scope: return "out_of_scope";
    case ObstructionStage::denominator_exclusion: return "denominator_exclusion";
    case ObstructionStage::quadratic_mismatch: return "quadratic_mismatch";
    case ObstructionStage::final_jacobi: return "final_jacobi";
    case ObstructionStage::none: return "none";
  }
  return "?";
}

double Lemma31Report::max_abs() const {
  double m = 0.0;
  for (const auto& id : identities)
    if (id.status == IdentityStatus::evaluated) m = std::max(m, id.report.max_abs);
  return m;
}

Complex lemma31_first_rhs(const ComplexTensor3& t, double s, int l, int i, int j, int k) {
  return 2.0 * (1.0 - s) * quad(t, l, i, j, k) + s * quad(t, l, j, i, k) - s * quad(t, l, k, i, j);
}

Complex lemma31_last_rhs(const ComplexTensor3& t, double s, int k, int i, int j, int l) {
  Complex first{};
  for (int r = 0; r < t.dim(); ++r) first += t(r, i, j) * std::conj(t(r, k, l));
  return -4.0 * s * (s - 1.0) * (s - 1.0) * first -
         s * (5.0 * s * s - 10.0 * s + 4.0) * (mixed(t, k, i, j, l) - mixed(t, k, j, i, l)) +
         s * s * s * (mixed(t, l, i, j, k) - mixed(t, l, j, i, k));
}

Lemma31Report lemma31_residuals(const UnitaryStructure& u, double s) {
  const int n = u.dim();
  const auto tor = chern_torsion(u);
  const auto& t = tor.T;
  const auto der = covariant_torsion_derivatives(tor, gauduchon_connection(u, s));
  const auto& hol = der.holomorphic;
  const auto& anti = der.antiholomorphic;

  Lemma31Report rep;
  rep.s = s;
  rep.n = n;
  rep.hypothesis_holds = !near(s, 0.0);

  auto& id0 = rep.identities[0];
  auto& id1 = rep.identities[1];
  auto& id2 = rep.identities[2];
  auto& id3 = rep.identities[3];
  id0.report.name = "torsion_derivative_antisymmetrization";
  id1.report.name = "cyclic_torsion_square";
  id2.report.name = "torsion_derivative_reduced";
  id3.report.name = "torsion_conjugate_derivative";
  id0.form = "as displayed";
  id1.form = "as displayed";
  id2.form = "as displayed";
  id3.form = "cleared denominator 4(s-1)(2s-1)";

  const double cyc_factor = (n - 2) * (s - 1.0);
  id1.status = (n == 2 || near(s, 1.0)) ? IdentityStatus::vacuous : IdentityStatus::evaluated;
  id2.status = (n >= 3 && !near(s, 1.0)) ? IdentityStatus::evaluated : IdentityStatus::not_applicable;
  const double cleared = 4.0 * (s - 1.0) * (2.0 * s - 1.0);

  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const Complex lhs = hol(l, i, j, k) - hol(l, i, k, j);
          id0.report.record("0", {0, l, i, j, k}, lhs - lemma31_first_rhs(t, s, l, i, j, k));
          const Complex cyc = quad(t, l, i, j, k) + quad(t, l, j, k, i) + quad(t, l, k, i, j);
          id1.report.record("1", {1, l, i, j, k}, cyc_factor * cyc);
          if (id2.status == IdentityStatus::evaluated)
            id2.report.record("2", {2, l, i, j, k}, lhs - (2.0 - s) * quad(t, l, i, j, k));
          // identity [3] is indexed (k; i, j, l) with l the conjugate direction
          id3.report.record("3", {3, i, j, k, l},
                            cleared * anti(k, i, j, l) - lemma31_last_rhs(t, s, k, i, j, l));
        }
  return rep;
}

double half_flat_trace(const TorsionData& t) {
  double sum = 0.0;
  for (const auto& v : t.T.data()) sum += std::norm(v);
  for (const auto& e : t.eta) sum += std::norm(e);
  return 0.25 * sum;
}

Lemma32Table lemma32_fixture(Complex lambda, double s) {
  Lemma32Table out;
  out.s = s;
  out.lambda = lambda;
  const double abs2 = std::norm(lambda);
  out.t1_12_2 = (2.0 - s) * lambda * lambda;
  out.cleared_factor = 4.0 * (s - 1.0) * (2.0 * s - 1.0);
  out.cleared_t1_12_2bar = s * s * (s - 2.0) * abs2;
  out.cleared_t2_12_1bar = s * (3.0 * s * s - 8.0 * s + 4.0) * abs2;
  if (std::abs(out.cleared_factor) <= kParamEps)
    out.consistent = std::abs(out.cleared_t1_12_2bar) <= kParamEps && std::abs(out.cleared_t2_12_1bar) <= kParamEps;
  return out;
}

ObstructionReport surface_obstruction(double s) {
  ObstructionReport rep;
  rep.s = s;
  if (near(s, 0.0) || near(s, 2.0)) {
    rep.excluded_by = ObstructionStage::out_of_scope;
    return rep;
  }
  if (near(s, 0.5) || near(s, 1.0)) {
    // 4(s-1)(2s-1) T^1_{12,2̄} = s^2(s-2)|lambda|^2 has a vanishing left side.
    rep.forced_constants["cleared_t1_12_2bar"] = s * s * (s - 2.0);
    rep.excluded_by = ObstructionStage::denominator_exclusion;
    return rep;
  }
  const double denom = 4.0 * (s - 1.0) * (2.0 * s - 1.0);
  const double gamma22_first = s - 2.0;
  const double gamma22_second = s * s * (s - 2.0) / denom;
  const double gamma1_21 = -s * (3.0 * s * s - 8.0 * s + 4.0) / denom;
  const double quadratic = 7.0 * s * s - 12.0 * s + 4.0;
  auto& fc = rep.forced_constants;
  fc["gamma2_22_over_lambda"] = gamma22_first;
  fc["gamma2_22_over_lambda_from_conjugate"] = gamma22_second;
  fc["gamma1_21_over_lambda"] = gamma1_21;
  fc["quadratic_7s2_12s_4"] = quadratic;
  if (std::abs(quadratic) > kParamEps) {
    rep.excluded_by = ObstructionStage::quadratic_mismatch;
    return rep;
  }
  // D = Gamma - sT, C = -D + D^t - 2T, all over lambda.
  const double d1_21 = gamma1_21 + s;
  const double d2_22 = s - 2.0;
  const double c_plus_d = d1_21 - 2.0;
  fc["D1_21_over_lambda"] = d1_21;
  fc["D2_22_over_lambda"] = d2_22;
  fc["C1_12_plus_D1_12_over_lambda"] = c_plus_d;
  // Jacobi {e_1, e_2, ē_1}: (C^1_{12} + D^1_{12}) conj D^1_{21} = D^1_{21} conj D^2_{22}, over |lambda|^2.
  const double mismatch = c_plus_d * d1_21 - d1_21 * d2_22;
  fc["jacobi_mismatch_over_abs_lambda2"] = mismatch;
  rep.excluded_by = std::abs(mismatch) > kParamEps ? ObstructionStage::final_jacobi : ObstructionStage::none;
  return rep;
}

TorsionOperator torsion_operator(const ComplexTensor3& t, std::span<const Complex> x) {
  const int n = t.dim();
  if (static_cast<int>(x.size()) != n) throw DimensionError("torsion operator vector has wrong length");
  TorsionOperator op{std::vector<Complex>(x.begin(), x.end()), MatrixXcd::Zero(n, n)};
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      Complex v{};
      for (int i = 0; i < n; ++i) v += x[i] * t(k, i, j);
      op.matrix(k, j) = v;
    }
  return op;
}

TorsionOperator torsion_operator(const ComplexTensor3& t, int frame_index) {
  std::vector<Complex> x(t.dim());
  x.at(frame_index) = 1.0;
  return torsion_operator(t, x);
}

double anticommutator_residual(const ComplexTensor3& t) {
  const int n = t.dim();
  std::vector<MatrixXcd> ops;
  for (int a = 0; a < n; ++a) ops.push_back(torsion_operator(t, a).matrix);
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) worst = std::max(worst, (ops[a] * ops[b] + ops[b] * ops[a]).norm());
  return worst;
}

Complex eq31_value(const ComplexTensor3& t, double s, int i, int j) {
  const double c1 = 4.0 * (s - 1.0) * (s - 1.0);
  const double c2 = 5.0 * s * s - 10.0 * s + 4.0;
  const double c3 = s * s;
  Complex v{};
  for (int r = 0; r < t.dim(); ++r)
    v += c1 * std::norm(t(r, i, j)) + c2 * (t(i, i, r) * std::conj(t(j, j, r)) - std::norm(t(i, j, r))) -
         c3 * (std::norm(t(j, i, r)) - t(j, j, r) * std::conj(t(i, i, r)));
  return v;
}

ParallelFrameReduction parallel_frame_reduction(const TorsionData& tor, double s) {
  const auto& t = tor.T;
  const int n = t.dim();
  ParallelFrameReduction out{.structure = UnitaryStructure(2.0 * (s - 1.0) * t, -s * t), .s = s, .eq31 = {}, .eq33 = {}};
  out.jacobi = validate_structure(out.structure).max_abs;
  out.flatness = curvature(out.structure, s).frobenius;
  out.eq31.name = "eq31";
  out.eq33.name = "eq33";
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) out.two_step_nilpotency = std::max(out.two_step_nilpotency, std::abs(quad(t, l, i, j, k)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out.eq31.record("eq31", {0, i, j}, eq31_value(t, s, i, j));
      double v = 0.0;
      for (int r = 0; r < n; ++r) v += std::norm(t(j, r, i)) - std::norm(t(i, r, j));
      out.eq33.record("eq33", {0, i, j}, v);
    }
  out.anticommutator = anticommutator_residual(t);
  return out;
}

std::optional<VectorXcd> common_kernel(const TorsionData& tor, double tol) {
  const int n = tor.T.dim();
  const MatrixXcd stack = stacked_operators(tor.T);
  const double scale = stack.norm();
  if (scale == 0.0) return VectorXcd(VectorXcd::Unit(n, 0));
  const Eigen::JacobiSVD<MatrixXcd> svd(stack, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(n - 1) > tol * scale) return std::nullopt;
  VectorXcd w = svd.matrixV().col(n - 1);
  Eigen::Index big = 0;
  w.cwiseAbs().maxCoeff(&big);
  w *= std::conj(w(big)) / std::abs(w(big));
  return w / w.norm();
}

DescentResult torsion_descent(const TorsionData& tor, double s, const DescentOptions& opts) {
  DescentResult out;
  if (near(s, 0.0) || near(s, 2.0)) {
    out.out_of_scope = true;
    out.residual_norm = tor.norm();
    return out;
  }
  if (opts.check_hypotheses) {
    const auto red = parallel_frame_reduction(tor, s);
    if (red.jacobi > opts.hypothesis_tol || red.flatness > opts.hypothesis_tol)
      throw HypothesisError("induced parallel-frame structure is not a flat Lie algebra (jacobi " +
                            std::to_string(red.jacobi) + ", flatness " + std::to_string(red.flatness) + ")");
  }

  double dropped_sq = 0.0;
  if (near(s, 1.0)) {
    ComplexTensor3 t = tor.T;
    while (t.dim() > 1) {
      const int m = t.dim();
      DescentStep step{m, 0, 0.0, {}};
      const auto w = common_kernel(TorsionData::from_tensor(t), opts.kernel_tol);
      if (!w) {
        step.note = "no common kernel vector; anticommuting family claim fails";
        out.steps.push_back(step);
        break;
      }
      step.kernel_dimension = 1;
      // Householder completion puts W in the first column; rotate it to the last.
      const MatrixXcd q = complete_unitary(*w);
      MatrixXcd p(m, m);
      p.col(m - 1) = q.col(0);
      p.leftCols(m - 1) = q.rightCols(m - 1);
      const ComplexTensor3 rotated = change_frame(t, p);
      double sq = 0.0;
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          sq += std::norm(rotated(a, m - 1, b));   // T^i_{nk}: kernel direction
          if (a != m - 1) sq += std::norm(rotated(m - 1, a, b));  // T^n_{ik}: from eq33
        }
      step.forced_zero_norm = std::sqrt(sq);
      step.note = "split off kernel direction";
      dropped_sq += sq;
      out.steps.push_back(step);
      t = leading_block(rotated, m - 1);
    }
    out.residual_norm = std::sqrt(dropped_sq + t.frobenius() * t.frobenius());
    return out;
  }

  // s != 0, 1, 2: the (1,0) algebra is 2-step nilpotent; split along its center.
  const auto& t = tor.T;
  const int n = t.dim();
  DescentStep step{n, 0, 0.0, {}};
  const MatrixXcd stack = stacked_operators(t);
  const double scale = stack.norm();
  MatrixXcd center;
  if (scale == 0.0) {
    center = MatrixXcd::Identity(n, n);
  } else {
    const Eigen::JacobiSVD<MatrixXcd> svd(stack, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int p = 0;
    while (p < n && sv(n - 1 - p) <= opts.kernel_tol * scale) ++p;
    center = svd.matrixV().rightCols(p);
  }
  const int p = static_cast<int>(center.cols());
  step.kernel_dimension = p;
  if (p == 0) {
    step.note = "center is trivial; 2-step nilpotency fails";
    out.steps.push_back(step);
    out.residual_norm = tor.norm();
    return out;
  }
  const ComplexTensor3 rotated = change_frame(t, complete_unitary(center));
  // Outside the center the upper index vanishes; center directions drop out of
  // the lower slots; the diagonal identity kills the remaining T^j_{..} with j in the center.
  double sq = 0.0;
  for (const auto& v : rotated.data()) sq += std::norm(v);
  step.forced_zero_norm = std::sqrt(sq);
  step.note = "center splitting";
  out.steps.push_back(step);
  out.residual_norm = std::sqrt(sq);
  return out;
}

}  // namespace hermlab::theorems
