#include "hermlab/flat_search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "hermlab/curvature.hpp"
#include "hermlab/error.hpp"
#include "hermlab/random.hpp"
#include "polarized.hpp"

namespace hermlab {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Point {
  ComplexTensor3 c, d, g, t;
};

int pair_count(int n) { return n * (n - 1) / 2; }

ComplexTensor3 torsion_of(const ComplexTensor3& c, const ComplexTensor3& d) {
  const int n = c.dim();
  ComplexTensor3 t(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) t(j, i, k) = 0.5 * (-d(j, i, k) + d(j, k, i) - c(j, i, k));
  return t;
}

// Fills an antisymmetric tensor from entries (j, i<k) starting at x[pos].
ComplexTensor3 read_antisymmetric(const VectorXd& x, int n, int& pos) {
  ComplexTensor3 t(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k) {
        const Complex v{x(pos), x(pos + 1)};
        pos += 2;
        t(j, i, k) = v;
        t(j, k, i) = -v;
      }
  return t;
}

void write_antisymmetric(const ComplexTensor3& t, VectorXd& x, int& pos) {
  const int n = t.dim();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k) {
        x(pos++) = t(j, i, k).real();
        x(pos++) = t(j, i, k).imag();
      }
}

Point point_of(const VectorXd& x, const SearchProblem& p) {
  const int n = p.n;
  int pos = 0;
  Point pt;
  if (p.mode == SearchMode::full) {
    pt.c = read_antisymmetric(x, n, pos);
    pt.d = ComplexTensor3(n);
    for (auto& v : pt.d.data()) {
      v = Complex{x(pos), x(pos + 1)};
      pos += 2;
    }
    pt.t = torsion_of(pt.c, pt.d);
  } else {
    pt.t = read_antisymmetric(x, n, pos);
    pt.c = 2.0 * (p.s - 1.0) * pt.t;
    pt.d = -p.s * pt.t;
  }
  pt.g = pt.d + p.s * pt.t;
  return pt;
}

int pure_residual_count(int n) { return 10 * n * n * n * n; }

// Writes the weighted polarized residuals B(a, b) into out.
void polarized_residuals(const Point& a, const Point& b, const SearchProblem& p, double* out) {
  const double wj = p.weights.jacobi;
  const double wf = p.weights.flatness;
  int pos = 0;
  detail::jacobi_polarized(a.c, a.d, b.c, b.d, [&](int, int, int, int, int, Complex v) {
    out[pos++] = wj * v.real();
    out[pos++] = wj * v.imag();
  });
  detail::flatness_polarized(a.c, a.d, a.g, b.d, b.g, [&](int, int, int, int, int, Complex v) {
    out[pos++] = wf * v.real();
    out[pos++] = wf * v.imag();
  });
}

bool hinge_active(const SearchProblem& p, bool with_hunt) { return with_hunt && p.weights.torsion_reward > 0.0; }

}  // namespace

const char* to_string(SearchMode m) { return m == SearchMode::full ? "full" : "parallel_frame"; }

SearchMode parse_search_mode(const std::string& name) {
  if (name == "full") return SearchMode::full;
  if (name == "parallel_frame" || name == "parallel") return SearchMode::parallel_frame;
  throw ValidationError("unknown search mode '" + name + "' (expected full or parallel_frame)");
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::converged_kahler: return "converged_kahler";
    case Classification::converged_nonkahler: return "converged_nonkahler";
    case Classification::not_converged: return "not_converged";
  }
  return "?";
}

void check_problem(const SearchProblem& p) {
  if (p.n < 1) throw ValidationError("search: n must be positive");
  if (!std::isfinite(p.s)) throw ValidationError("search: s must be finite");
  if (!(p.weights.jacobi >= 0.0) || !(p.weights.flatness >= 0.0) || !(p.weights.torsion_reward >= 0.0))
    throw ValidationError("search: weights must be non-negative");
  if (p.restarts < 1) throw ValidationError("search: restarts must be at least 1");
  if (p.max_iters < 1) throw ValidationError("search: max_iters must be positive");
  if (!(p.tol > 0.0) || !(p.kahler_tol >= 0.0) || !(p.stop_tol >= 0.0) || !(p.tau >= 0.0))
    throw ValidationError("search: tolerances must be non-negative");
  if (p.threads < 0) throw ValidationError("search: threads must be non-negative");
}

int parameter_count(const SearchProblem& p) {
  const int anti = 2 * p.n * pair_count(p.n);
  return p.mode == SearchMode::full ? anti + 2 * p.n * p.n * p.n : anti;
}

VectorXd pack(const UnitaryStructure& u, const SearchProblem& p) {
  if (u.dim() != p.n) throw DimensionError("pack: structure dimension does not match the problem");
  VectorXd x(parameter_count(p));
  int pos = 0;
  if (p.mode == SearchMode::full) {
    write_antisymmetric(u.C(), x, pos);
    for (const auto& v : u.D().data()) {
      x(pos++) = v.real();
      x(pos++) = v.imag();
    }
  } else {
    write_antisymmetric(chern_torsion(u).T, x, pos);
  }
  return x;
}

UnitaryStructure unpack(const VectorXd& x, const SearchProblem& p) {
  if (x.size() != parameter_count(p)) throw DimensionError("unpack: wrong parameter count");
  auto pt = point_of(x, p);
  return UnitaryStructure(std::move(pt.c), std::move(pt.d));
}

VectorXd residual_vector(const VectorXd& x, const SearchProblem& p, bool with_hunt) {
  if (x.size() != parameter_count(p)) throw DimensionError("residual_vector: wrong parameter count");
  const bool hinge = hinge_active(p, with_hunt);
  const int m = pure_residual_count(p.n);
  VectorXd r(m + (hinge ? 1 : 0));
  const Point pt = point_of(x, p);
  polarized_residuals(pt, pt, p, r.data());
  if (hinge) r(m) = std::sqrt(p.weights.torsion_reward) * std::max(0.0, p.tau - pt.t.frobenius());
  return r;
}

VectorXd residual_vector(const UnitaryStructure& u, const SearchProblem& p) {
  return residual_vector(pack(u, p), p, p.hunt);
}

MatrixXd jacobian(const VectorXd& x, const SearchProblem& p, bool with_hunt) {
  const int np = parameter_count(p);
  if (x.size() != np) throw DimensionError("jacobian: wrong parameter count");
  const bool hinge = hinge_active(p, with_hunt);
  const int m = pure_residual_count(p.n);
  MatrixXd jac = MatrixXd::Zero(m + (hinge ? 1 : 0), np);
  const Point pt = point_of(x, p);
  const double tnorm = pt.t.frobenius();
  std::vector<double> tmp(m);
  VectorXd unit = VectorXd::Zero(np);
  for (int q = 0; q < np; ++q) {
    unit(q) = 1.0;
    const Point e = point_of(unit, p);
    unit(q) = 0.0;
    polarized_residuals(e, pt, p, jac.col(q).data());
    polarized_residuals(pt, e, p, tmp.data());
    for (int row = 0; row < m; ++row) jac(row, q) += tmp[row];
    if (hinge && tnorm < p.tau && tnorm > 0.0) {
      double dot = 0.0;
      const auto a = pt.t.data();
      const auto b = e.t.data();
      for (std::size_t z = 0; z < a.size(); ++z) dot += (std::conj(a[z]) * b[z]).real();
      jac(m, q) = -std::sqrt(p.weights.torsion_reward) * dot / tnorm;
    }
  }
  return jac;
}

LmTrace levenberg_marquardt(const VectorXd& x0, const SearchProblem& p, bool with_hunt) {
  LmTrace tr;
  tr.x = x0;
  VectorXd r = residual_vector(tr.x, p, with_hunt);
  double norm = r.norm();
  tr.accepted_norms.push_back(norm);
  double mu = 1e-3;
  const int np = parameter_count(p);
  MatrixXd jac = jacobian(tr.x, p, with_hunt);
  MatrixXd normal = jac.transpose() * jac;
  VectorXd grad = jac.transpose() * r;

  while (tr.iterations < p.max_iters && norm > p.stop_tol && mu < 1e20) {
    ++tr.iterations;
    VectorXd delta;
    // damping relative to the curvature scale, so the iteration is invariant under x -> cx
    const double scale = std::max(normal.diagonal().maxCoeff(), std::numeric_limits<double>::min());
    const Eigen::LDLT<MatrixXd> ldlt(normal + mu * scale * MatrixXd::Identity(np, np));
    if (ldlt.info() == Eigen::Success) delta = -ldlt.solve(grad);
    if (delta.size() == 0 || !delta.allFinite()) {
      tr.gradient_fallback = true;
      delta = -grad / ((1.0 + mu) * scale);
    }
    const VectorXd trial = tr.x + delta;
    const VectorXd rt = residual_vector(trial, p, with_hunt);
    const double nt = rt.norm();
    if (std::isfinite(nt) && nt < norm) {
      tr.x = trial;
      r = rt;
      norm = nt;
      tr.accepted_norms.push_back(norm);
      mu *= 0.5;
      if (delta.norm() <= 1e-15 * tr.x.norm()) break;  // roundoff-level progress only
      jac = jacobian(tr.x, p, with_hunt);
      normal = jac.transpose() * jac;
      grad = jac.transpose() * r;
    } else {
      mu *= 2.0;
    }
  }
  return tr;
}

SearchResult lm_minimize(const SearchProblem& p, const VectorXd& start) {
  check_problem(p);
  SearchResult res;
  res.seed_used = p.seed;
  VectorXd x = start;
  if (p.hunt && p.weights.torsion_reward > 0.0) {
    const auto hunt = levenberg_marquardt(x, p, true);
    x = hunt.x;
    // Both residual families are homogeneous, so x -> x/|x| maps flat points to flat
    // points. The hinge tends to inflate |x|, which would put the polish's roundoff
    // floor (relative to |x|^2) above what is needed to resolve T -> 0.
    if (const double nx = x.norm(); nx > 1.0) x /= nx;
    res.iterations += hunt.iterations;
    res.gradient_fallback = res.gradient_fallback || hunt.gradient_fallback;
  }
  const auto polish = levenberg_marquardt(x, p, false);
  res.iterations += polish.iterations;
  res.gradient_fallback = res.gradient_fallback || polish.gradient_fallback;

  res.best_point = unpack(polish.x, p);
  res.final_jacobi = validate_structure(res.best_point).max_abs;
  res.final_flatness = curvature(res.best_point, p.s).frobenius;
  res.torsion_norm = chern_torsion(res.best_point).norm();
  const bool converged = res.final_jacobi <= p.tol && res.final_flatness <= p.tol;
  if (!converged)
    res.classification = Classification::not_converged;
  else
    res.classification =
        res.torsion_norm <= p.kahler_tol ? Classification::converged_kahler : Classification::converged_nonkahler;
  return res;
}

SearchResult lm_minimize(const SearchProblem& p, const UnitaryStructure& start) {
  return lm_minimize(p, pack(start, p));
}

VectorXd random_start(const SearchProblem& p, std::uint64_t seed) {
  Rng rng(seed);
  if (p.mode == SearchMode::full) return pack(random_structure(p.n, rng), p);
  ComplexTensor3 t(p.n);
  for (auto& v : t.data()) v = rng.complex_gaussian();
  VectorXd x(parameter_count(p));
  int pos = 0;
  write_antisymmetric(t.antisymmetrized(), x, pos);
  return x;
}

SearchRun multistart_search(const SearchProblem& p) {
  check_problem(p);
  SearchRun run;
  run.results.resize(p.restarts);
  int threads = p.threads > 0 ? p.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, p.restarts);

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int i = next++; i < p.restarts; i = next++) {
      try {
        const std::uint64_t seed = derive_seed(p.seed, static_cast<std::uint64_t>(i));
        SearchProblem local = p;
        local.seed = seed;
        run.results[i] = lm_minimize(local, random_start(p, seed));
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  for (const auto& r : run.results) {
    switch (r.classification) {
      case Classification::converged_kahler: ++run.summary.converged_kahler; break;
      case Classification::converged_nonkahler: ++run.summary.converged_nonkahler; break;
      case Classification::not_converged: ++run.summary.not_converged; break;
    }
  }
  return run;
}

}  // namespace hermlab
