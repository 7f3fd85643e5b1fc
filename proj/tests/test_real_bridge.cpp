#include <gtest/gtest.h>

#include "hermlab/catalog.hpp"
#include "hermlab/error.hpp"
#include "hermlab/random.hpp"
#include "hermlab/real_bridge.hpp"

using namespace hermlab;

namespace {

// Heisenberg x R: [X,Y] = Z, with J X = Z, J Y = W. N(X,Y) = Z, so J is not integrable.
RealPresentation heisenberg_bad_j() {
  RealPresentation p(4);
  p.set_bracket(0, 1, Eigen::VectorXd::Unit(4, 2));
  auto& j = p.complex_structure();
  j(2, 0) = 1.0;
  j(0, 2) = -1.0;
  j(3, 1) = 1.0;
  j(1, 3) = -1.0;
  return p;
}

double tensor_gap(const UnitaryStructure& a, const UnitaryStructure& b) {
  return std::max((a.C() - b.C()).max_abs(), (a.D() - b.D()).max_abs());
}

}  // namespace

TEST(RealPresentation, RejectsOddDimension) {
  EXPECT_THROW(RealPresentation(3), DimensionError);
  EXPECT_THROW(RealPresentation(0), DimensionError);
  EXPECT_THROW(RealPresentation(4, std::vector<double>(10), Eigen::MatrixXd::Identity(4, 4),
                                Eigen::MatrixXd::Zero(4, 4)),
               DimensionError);
}

TEST(RealPresentation, SetBracketIsAntisymmetric) {
  RealPresentation p(2);
  p.set_bracket(0, 1, Eigen::Vector2d(1.0, 2.0));
  EXPECT_EQ(p.f(1, 0, 1), 2.0);
  EXPECT_EQ(p.f(1, 1, 0), -2.0);
}

TEST(ValidateReal, FixturesAreValid) {
  for (const auto& p : {catalog::samelson_su2_r_real(1.0), catalog::bdf_flat_kahler_4d(3.0)}) {
    const auto v = validate_real(p);
    EXPECT_TRUE(v.valid);
    EXPECT_TRUE(v.metric_spd);
    EXPECT_NEAR(v.min_metric_eigenvalue, 1.0, 1e-14);
  }
}

TEST(ValidateReal, FlagsEachFailure) {
  const auto bad = validate_real(heisenberg_bad_j());
  EXPECT_FALSE(bad.valid);
  EXPECT_GT(bad.residuals.family_max.at("integrability"), 0.5);
  EXPECT_EQ(bad.residuals.family_max.at("jacobi"), 0.0);

  auto p = catalog::bdf_flat_kahler_4d(1.0);
  p.metric()(0, 0) = -1.0;
  EXPECT_FALSE(validate_real(p).metric_spd);

  auto q = catalog::samelson_su2_r_real(1.0);
  q.complex_structure()(0, 0) = 0.5;
  EXPECT_GT(validate_real(q).residuals.family_max.at("complex_structure"), 0.1);
}

TEST(AdaptedFrame, IsUnitary) {
  for (const auto& p : {catalog::samelson_su2_r_real(1.0), catalog::bdf_flat_kahler_4d(2.0)}) {
    const auto frame = adapted_unitary_frame(p);
    EXPECT_LE(frame_unitarity_residual(p, frame), 1e-14);
    EXPECT_LE(integrability_leak(p, frame), 1e-14);
  }
}

TEST(AdaptedFrame, NonStandardMetric) {
  auto p = catalog::bdf_flat_kahler_4d(1.0);
  // rescaling the metric by a constant keeps J orthogonal
  p.metric() *= 4.0;
  const auto frame = adapted_unitary_frame(p);
  EXPECT_LE(frame_unitarity_residual(p, frame), 1e-14);
}

TEST(AdaptedFrame, DegenerateMetricNamesTheStep) {
  auto p = catalog::bdf_flat_kahler_4d(1.0);
  p.metric()(0, 0) = 0.0;
  try {
    adapted_unitary_frame(p);
    FAIL() << "expected FrameConstructionError";
  } catch (const FrameConstructionError& e) {
    EXPECT_NE(std::string(e.what()).find("step 0"), std::string::npos);
  }
}

TEST(ToUnitary, RejectsNonIntegrableJ) {
  try {
    to_unitary_structure(heisenberg_bad_j());
    FAIL() << "expected IntegrabilityError";
  } catch (const IntegrabilityError& e) {
    EXPECT_GT(e.max_component(), 0.1);
  }
}

TEST(ToUnitary, SamelsonMatchesCatalog) {
  for (double c : {1.0, 2.5, -0.7})
    EXPECT_LE(tensor_gap(to_unitary_structure(catalog::samelson_su2_r_real(c)), catalog::samelson_su2_r(c)), 1e-15);
}

TEST(ToUnitary, FlatKahlerHasNoTorsion) {
  const auto u = to_unitary_structure(catalog::bdf_flat_kahler_4d(1.0));
  EXPECT_LE(chern_torsion(u).norm(), 1e-15);
  EXPECT_TRUE(validate_structure(u).valid);
}

TEST(RoundTrip, UnitaryThroughReal) {
  Rng rng(3);
  std::vector<UnitaryStructure> fixtures{catalog::samelson_su2_r(1.0), catalog::complex_group_2d({0.3, 0.4}),
                                         catalog::abelian(3), to_unitary_structure(catalog::bdf_flat_kahler_4d(2.0))};
  fixtures.push_back(change_frame(catalog::samelson_su2_r(1.0), random_unitary(2, rng)));
  for (const auto& u : fixtures) {
    const auto real = from_unitary_structure(u);
    EXPECT_TRUE(validate_real(real).valid);
    EXPECT_LE(tensor_gap(to_unitary_structure(real), u), 1e-12);
  }
}

TEST(RoundTrip, RealThroughUnitaryPreservesInvariants) {
  const auto p = catalog::bdf_flat_kahler_4d(1.5);
  const auto back = from_unitary_structure(to_unitary_structure(p));
  // different basis, same algebra: brackets have equal Frobenius norms
  double a = 0.0, b = 0.0;
  for (int c = 0; c < 4; ++c)
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) {
        a += p.f(c, x, y) * p.f(c, x, y);
        b += back.f(c, x, y) * back.f(c, x, y);
      }
  EXPECT_NEAR(a, b, 1e-12);
}

TEST(FromUnitary, RejectsNonLieData) {
  Rng rng(4);
  EXPECT_THROW(from_unitary_structure(random_structure(2, rng)), ValidationError);
}
