#pragma once

// Least-squares search for nabla^s-flat unitary structures.
//
// The unknowns are the structure constants themselves. Every residual (Jacobi
// and flatness) is a homogeneous quadratic in them, so the Jacobian is exact.
// A search that finds no non-Kähler solution is evidence, not a proof.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hermlab/structure.hpp"

namespace hermlab {

enum class SearchMode {
  full,            // unknowns C (i < k) and D
  parallel_frame,  // unknown T (i < k); C = 2(s-1)T, D = -sT
};
const char* to_string(SearchMode m);
SearchMode parse_search_mode(const std::string& name);

struct SearchWeights {
  double jacobi = 1.0;
  double flatness = 1.0;
  double torsion_reward = 1.0;
};

struct SearchProblem {
  int n = 2;
  double s = 0.0;
  SearchMode mode = SearchMode::full;
  SearchWeights weights;
  /// Adds the hinge sqrt(torsion_reward) * max(0, tau - |T|) during a first phase.
  bool hunt = false;
  double tau = 0.5;
  int restarts = 1;
  std::uint64_t seed = 0;
  int max_iters = 500;
  /// Classification threshold on the re-validated Jacobi and flatness residuals.
  double tol = 1e-10;
  double kahler_tol = 1e-6;
  /// LM stops once the residual 2-norm drops below this. The residuals are
  /// homogeneous, so points collapsing onto T = 0 can go far below roundoff of O(1) data.
  double stop_tol = 1e-20;
  /// 0 means hardware concurrency.
  int threads = 0;
};

/// Throws ValidationError on a malformed problem.
void check_problem(const SearchProblem& p);

enum class Classification { converged_kahler, converged_nonkahler, not_converged };
const char* to_string(Classification c);

struct SearchResult {
  UnitaryStructure best_point{ComplexTensor3(1), ComplexTensor3(1)};
  /// validate_structure(best_point).max_abs
  double final_jacobi = 0.0;
  /// curvature(best_point, s).frobenius
  double final_flatness = 0.0;
  double torsion_norm = 0.0;
  Classification classification = Classification::not_converged;
  int iterations = 0;
  std::uint64_t seed_used = 0;
  /// True if any step had to fall back to plain gradient descent.
  bool gradient_fallback = false;
};

struct SearchSummary {
  int converged_kahler = 0;
  int converged_nonkahler = 0;
  int not_converged = 0;
};

struct SearchRun {
  std::vector<SearchResult> results;
  SearchSummary summary;
};

int parameter_count(const SearchProblem& p);
/// Parameters of `u` (parallel_frame mode reads its Chern torsion).
Eigen::VectorXd pack(const UnitaryStructure& u, const SearchProblem& p);
/// The structure a parameter vector describes (the induced one in parallel_frame mode).
UnitaryStructure unpack(const Eigen::VectorXd& x, const SearchProblem& p);

/// Weighted real and imaginary parts of the Jacobi then flatness residuals,
/// followed by the hinge entry when `with_hunt` is set.
Eigen::VectorXd residual_vector(const Eigen::VectorXd& x, const SearchProblem& p, bool with_hunt);
Eigen::VectorXd residual_vector(const UnitaryStructure& u, const SearchProblem& p);

Eigen::MatrixXd jacobian(const Eigen::VectorXd& x, const SearchProblem& p, bool with_hunt);

struct LmTrace {
  Eigen::VectorXd x;
  int iterations = 0;
  bool gradient_fallback = false;
  /// Residual norms after every accepted step, starting with the initial one.
  std::vector<double> accepted_norms;
};

/// Levenberg-Marquardt on one residual definition.
LmTrace levenberg_marquardt(const Eigen::VectorXd& x0, const SearchProblem& p, bool with_hunt);

/// Hunt phase (if enabled) then a polish phase without the hinge; the endpoint
/// is re-validated and classified.
SearchResult lm_minimize(const SearchProblem& p, const UnitaryStructure& start);
SearchResult lm_minimize(const SearchProblem& p, const Eigen::VectorXd& start);

/// Seeded random start: complex Gaussian entries of scale 1.
Eigen::VectorXd random_start(const SearchProblem& p, std::uint64_t seed);

/// Runs `restarts` independent starts in parallel. Result i always uses
/// derive_seed(seed, i), so the output does not depend on the thread count.
SearchRun multistart_search(const SearchProblem& p);

}  // namespace hermlab
