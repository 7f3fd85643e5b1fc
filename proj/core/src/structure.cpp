#include "hermlab/structure.hpp"

#include <algorithm>
#include <cmath>

#include "hermlab/error.hpp"
#include "polarized.hpp"

namespace hermlab {

UnitaryStructure::UnitaryStructure(ComplexTensor3 c, ComplexTensor3 d) {
  if (c.dim() != d.dim())
    throw DimensionError("C has dimension " + std::to_string(c.dim()) + " but D has dimension " +
                         std::to_string(d.dim()));
  if (!c.all_finite() || !d.all_finite())
    throw ValidationError("structure constants contain NaN or Inf");
  c_ = c.antisymmetrized();
  d_ = std::move(d);
}

TorsionData TorsionData::from_tensor(const ComplexTensor3& t) {
  TorsionData out{t.antisymmetrized(), {}};
  const int n = t.dim();
  out.eta.assign(n, Complex{});
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) out.eta[r] += out.T(k, k, r);
  return out;
}

double TorsionData::eta_norm() const { return frobenius(eta); }

void ResidualReport::record(const std::string& family, std::vector<int> key, Complex value) {
  const double m = std::abs(value);
  max_abs = std::max(max_abs, m);
  auto& fm = family_max[family];
  fm = std::max(fm, m);
  per_identity.emplace(std::move(key), value);
}

BracketTables::BracketTables(int n) : n_(n), data_(static_cast<std::size_t>(8) * n * n * n) {
  if (n < 1) throw DimensionError("bracket table dimension must be positive");
}

double BracketTables::antisymmetry_defect() const {
  const int m = basis_size();
  double worst = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) worst = std::max(worst, std::abs((*this)(a, b, c) + (*this)(b, a, c)));
  return worst;
}

double BracketTables::conjugation_defect() const {
  const int m = basis_size();
  double worst = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        worst = std::max(worst, std::abs((*this)(bar(a), bar(b), bar(c)) - std::conj((*this)(a, b, c))));
  return worst;
}

double BracketTables::jacobi_defect() const {
  const int m = basis_size();
  // [x, [y, z]] expanded through the table.
  auto nested = [&](int x, int y, int z, int out) {
    Complex v{};
    for (int d = 0; d < m; ++d) v += (*this)(y, z, d) * (*this)(x, d, out);
    return v;
  };
  double worst = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int c = b + 1; c < m; ++c)
        for (int out = 0; out < m; ++out)
          worst = std::max(worst, std::abs(nested(a, b, c, out) + nested(b, c, a, out) + nested(c, a, b, out)));
  return worst;
}

ResidualReport validate_structure(const UnitaryStructure& u, double tol) {
  static const char* kFamilies[] = {"jacobi_eee", "jacobi_ebare_01", "jacobi_ebare_10"};
  ResidualReport report;
  report.name = "jacobi";
  detail::jacobi_polarized(u.C(), u.D(), u.C(), u.D(), [&](int fam, int i, int j, int k, int l, Complex v) {
    report.record(kFamilies[fam], {fam, i, j, k, l}, v);
  });
  report.valid = report.max_abs <= tol;
  return report;
}

TorsionData chern_torsion(const UnitaryStructure& u) {
  const int n = u.dim();
  const auto& c = u.C();
  const auto& d = u.D();
  ComplexTensor3 t(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) t(j, i, k) = (-d(j, i, k) + d(j, k, i) - c(j, i, k)) * 0.5;
  // The expression is already antisymmetric in (i,k); from_tensor keeps it exact.
  return TorsionData::from_tensor(t);
}

ConnectionFamily gauduchon_connection(const UnitaryStructure& u, double s) {
  const int n = u.dim();
  const TorsionData tor = chern_torsion(u);
  ConnectionFamily out{s, ComplexTensor3(n), ComplexTensor3(n)};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) out.gamma(j, i, k) = u.D()(j, i, k) + s * tor.T(j, i, k);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) out.gamma_bar(j, i, k) = -std::conj(out.gamma(i, j, k));
  return out;
}

BracketTables bracket_tables(const UnitaryStructure& u) {
  const int n = u.dim();
  const auto& c = u.C();
  const auto& d = u.D();
  BracketTables tab(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int r = 0; r < n; ++r) {
        // [e_i, e_k] = sum_r C^r_{ik} e_r
        tab(i, k, r) = c(r, i, k);
        // [ē_i, ē_k] = conj([e_i, e_k])
        tab(n + i, n + k, n + r) = std::conj(c(r, i, k));
      }
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int r = 0; r < n; ++r) {
        // [ē_j, e_k] = sum_r (D^j_{rk} ē_r - conj(D^k_{rj}) e_r)
        const Complex to_bar = d(j, r, k);
        const Complex to_hol = -std::conj(d(k, r, j));
        tab(n + j, k, n + r) = to_bar;
        tab(n + j, k, r) = to_hol;
        tab(k, n + j, n + r) = -to_bar;
        tab(k, n + j, r) = -to_hol;
      }
  return tab;
}

ConnectionFamily gauduchon_connection_from_brackets(const UnitaryStructure& u, double s) {
  const int n = u.dim();
  const BracketTables tab = bracket_tables(u);
  const double a = 1.0 - 0.5 * s;
  const double b = 0.5 * s;
  ConnectionFamily out{s, ComplexTensor3(n), ComplexTensor3(n)};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        out.gamma(j, i, k) =
            a * tab.pairing(n + j, k, i) + b * tab.pairing(n + j, i, k) - b * tab.pairing(i, k, n + j);
        out.gamma_bar(j, i, k) = a * tab.pairing(n + k, i, n + j) + b * tab.pairing(n + j, i, n + k) +
                                 b * tab.pairing(n + j, n + k, i);
      }
  return out;
}

ComplexTensor3 chern_coefficients_from_brackets(const UnitaryStructure& u) {
  const int n = u.dim();
  const BracketTables tab = bracket_tables(u);
  ComplexTensor3 out(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) out(j, i, k) = tab.pairing(n + j, k, i);
  return out;
}

ComplexTensor3 bismut_coefficients_from_brackets(const UnitaryStructure& u) {
  const int n = u.dim();
  const BracketTables tab = bracket_tables(u);
  ComplexTensor3 out(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) out(j, i, k) = tab.pairing(n + j, i, k) - tab.pairing(i, k, n + j);
  return out;
}

TorsionDerivatives covariant_torsion_derivatives(const TorsionData& tor, const ConnectionFamily& conn) {
  const int n = tor.T.dim();
  if (conn.gamma.dim() != n) throw DimensionError("torsion and connection dimensions differ");
  const auto& t = tor.T;
  const auto& g = conn.gamma;
  TorsionDerivatives out{ComplexTensor4(n), ComplexTensor4(n)};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Complex hol{}, anti{};
          for (int r = 0; r < n; ++r) {
            hol += -t(j, r, k) * g(r, i, l) - t(j, i, r) * g(r, k, l) + t(r, i, k) * g(j, r, l);
            anti += t(j, r, k) * std::conj(g(i, r, l)) + t(j, i, r) * std::conj(g(k, r, l)) -
                    t(r, i, k) * std::conj(g(r, j, l));
          }
          out.holomorphic(j, i, k, l) = hol;
          out.antiholomorphic(j, i, k, l) = anti;
        }
  return out;
}

TorsionDerivatives covariant_torsion_derivatives(const UnitaryStructure& u, double s) {
  return covariant_torsion_derivatives(chern_torsion(u), gauduchon_connection(u, s));
}

ComplexTensor3 change_frame(const ComplexTensor3& t, const Eigen::MatrixXcd& p) {
  const int n = t.dim();
  if (p.rows() != n || p.cols() != n) throw DimensionError("frame change matrix must be n x n");
  // Contract one index at a time: n^4 instead of n^6.
  ComplexTensor3 s1(n), s2(n), out(n);
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int k = 0; k < n; ++k) {
        Complex v{};
        for (int b = 0; b < n; ++b) v += p(b, k) * t(c, a, b);
        s1(c, a, k) = v;
      }
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        Complex v{};
        for (int a = 0; a < n; ++a) v += p(a, i) * s1(c, a, k);
        s2(c, i, k) = v;
      }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        Complex v{};
        for (int c = 0; c < n; ++c) v += std::conj(p(c, j)) * s2(c, i, k);
        out(j, i, k) = v;
      }
  return out;
}

UnitaryStructure change_frame(const UnitaryStructure& u, const Eigen::MatrixXcd& p) {
  return UnitaryStructure(change_frame(u.C(), p), change_frame(u.D(), p));
}

}  // namespace hermlab
