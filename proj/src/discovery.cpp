#include "tubal/discovery.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace tubal {

namespace {

Tube random_tube(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  RealVector v(n);
  for (Index i = 0; i < n; ++i) v[i] = dist(rng);
  return Tube(std::move(v));
}

double condition_number(const ComplexMatrix& s) {
  Eigen::JacobiSVD<ComplexMatrix> svd(s);
  const auto& sv = svd.singularValues();
  const double lo = sv[sv.size() - 1];
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return sv[0] / lo;
}

double relative_gap(const Tube& x, const Tube& y) {
  const double scale = 1.0 + std::max(x.max_abs(), y.max_abs());
  return (x - y).max_abs() / scale;
}

struct Attempt {
  std::optional<TransformSpec> spec;
  std::optional<NotTubalReason> failure;
  double cond = std::numeric_limits<double>::quiet_NaN();
  double residual = std::numeric_limits<double>::quiet_NaN();
  std::string detail;
};

Attempt attempt_once(const BlackBoxOp& op, const std::vector<RealMatrix>& basis_reps,
                     std::mt19937_64& rng, const DiscoveryOptions& options) {
  const Index n = op.n;
  Attempt out;

  const RealMatrix rx = representation_matrix(op, random_tube(rng, n)).R;
  Eigen::EigenSolver<RealMatrix> eig(rx, true);
  if (eig.info() != Eigen::Success) {
    out.failure = NotTubalReason::NotDiagonalizable;
    out.cond = std::numeric_limits<double>::infinity();
    out.detail = "eigensolver did not converge";
    return out;
  }
  const ComplexMatrix s = eig.eigenvectors();
  out.cond = condition_number(s);
  if (!(out.cond <= options.cond_cap)) {
    out.failure = NotTubalReason::NotDiagonalizable;
    std::ostringstream os;
    os << "eigenvector condition number " << out.cond << " exceeds " << options.cond_cap;
    out.detail = os.str();
    return out;
  }

  const ComplexMatrix s_inv = s.partialPivLu().inverse();
  const ComplexVector y = s * ComplexVector::Ones(n);
  ComplexMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    m.col(i) = s_inv * (basis_reps[static_cast<std::size_t>(i)].cast<cdouble>() * y);
  }

  std::optional<TransformSpec> spec;
  try {
    spec = validate_transform(std::move(m));
  } catch (const Error& e) {
    out.failure = NotTubalReason::ResidualTooLarge;
    out.detail = std::string("recovered matrix rejected: ") + e.what();
    return out;
  }

  double worst = 0.0;
  try {
    for (int t = 0; t < options.residual_trials; ++t) {
      const Tube a = random_tube(rng, n), b = random_tube(rng, n);
      const Tube expect = op(a, b);
      const double scale = std::max(1.0, expect.max_abs());
      worst = std::max(worst, (expect - star(*spec, a, b)).max_abs() / scale);
    }
  } catch (const Error& e) {
    out.failure = NotTubalReason::ResidualTooLarge;
    out.residual = std::numeric_limits<double>::infinity();
    out.detail = std::string("recovered product failed: ") + e.what();
    return out;
  }
  out.residual = worst;
  if (!(worst <= options.residual_tol)) {
    out.failure = NotTubalReason::ResidualTooLarge;
    std::ostringstream os;
    os << "product residual " << worst << " exceeds " << options.residual_tol;
    out.detail = os.str();
    return out;
  }
  out.spec = std::move(spec);
  return out;
}

DiscoveryReport run_discovery(const BlackBoxOp& op, const DiscoveryOptions& options) {
  if (op.n < 1 || !op.eval) throw Error(ErrorCode::InvalidArgument, "op needs n >= 1 and a callable");
  std::vector<RealMatrix> basis_reps;
  basis_reps.reserve(static_cast<std::size_t>(op.n));
  for (Index i = 0; i < op.n; ++i) basis_reps.push_back(representation_matrix(op, Tube::basis(op.n, i)).R);

  std::mt19937_64 rng(options.seed);
  DiscoveryReport report;
  bool diagonalized = false;
  const int draws = std::max(1, options.max_retries);
  for (int t = 0; t < draws; ++t) {
    Attempt a = attempt_once(op, basis_reps, rng, options);
    report.diagnostics.trials_used = t + 1;
    report.diagnostics.eigenvector_condition = a.cond;
    report.diagnostics.max_residual = a.residual;
    report.diagnostics.detail = a.detail;
    if (a.spec) {
      report.diagnostics.realness = a.spec->realness();
      report.transform = std::move(a.spec);
      report.reason.reset();
      return report;
    }
    // Once some draw diagonalizes, a later failure to do so is bad luck; the
    // residual failure is the informative verdict.
    if (a.failure == NotTubalReason::ResidualTooLarge) diagonalized = true;
    report.reason = diagonalized ? NotTubalReason::ResidualTooLarge : *a.failure;
  }
  return report;
}

}  // namespace

std::string_view to_string(NotTubalReason reason) {
  switch (reason) {
    case NotTubalReason::NotDiagonalizable: return "NotDiagonalizable";
    case NotTubalReason::ResidualTooLarge: return "ResidualTooLarge";
    case NotTubalReason::NotCommutative: return "NotCommutative";
    case NotTubalReason::NotAssociative: return "NotAssociative";
    case NotTubalReason::NotBilinear: return "NotBilinear";
  }
  return "Unknown";
}

RepMatrix representation_matrix(const BlackBoxOp& op, const Tube& a) {
  if (a.size() != op.n) throw Error(ErrorCode::BadDimension, "tube length does not match op");
  RealMatrix r(op.n, op.n);
  for (Index i = 0; i < op.n; ++i) {
    const Tube col = op(a, Tube::basis(op.n, i));
    if (col.size() != op.n) throw Error(ErrorCode::BadDimension, "op returned a tube of wrong length");
    r.col(i) = col.data();
  }
  return {a, std::move(r)};
}

TransformSpec find_transform(const BlackBoxOp& op, const DiscoveryOptions& options) {
  DiscoveryReport report = run_discovery(op, options);
  if (report.transform) return std::move(*report.transform);
  const ErrorCode code = report.reason == NotTubalReason::NotDiagonalizable
                             ? ErrorCode::NotDiagonalizable
                             : ErrorCode::ResidualTooLarge;
  throw Error(code, report.diagnostics.detail);
}

DiscoveryReport classify_ring(const BlackBoxOp& op, const DiscoveryOptions& options) {
  if (op.n < 1 || !op.eval) throw Error(ErrorCode::InvalidArgument, "op needs n >= 1 and a callable");
  const Index n = op.n;
  // Separate stream from the one find_transform uses for its own draws.
  std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);

  auto fail = [](NotTubalReason reason, int trials, std::string detail) {
    DiscoveryReport r;
    r.reason = reason;
    r.diagnostics.trials_used = trials;
    r.diagnostics.detail = std::move(detail);
    return r;
  };

  const double tol = options.precheck_tol;
  for (int t = 0; t < options.precheck_trials; ++t) {
    const Tube a = random_tube(rng, n), b = random_tube(rng, n), c = random_tube(rng, n);
    const Tube ab = op(a, b);
    if (relative_gap(ab, op(b, a)) > tol) {
      return fail(NotTubalReason::NotCommutative, t + 1, "op(a, b) != op(b, a) on a sample");
    }
    if (relative_gap(op(ab, c), op(a, op(b, c))) > tol) {
      return fail(NotTubalReason::NotAssociative, t + 1, "op(op(a, b), c) != op(a, op(b, c)) on a sample");
    }
    const double alpha = coef(rng), beta = coef(rng);
    const Tube lhs = op(alpha * a + beta * c, b);
    const Tube rhs = alpha * ab + beta * op(c, b);
    if (relative_gap(lhs, rhs) > tol) {
      return fail(NotTubalReason::NotBilinear, t + 1, "op is not linear in its first argument");
    }
  }
  return run_discovery(op, options);
}

bool equivalent_transforms(const ComplexMatrix& m1, const ComplexMatrix& m2, double tol) {
  if (m1.rows() != m2.rows() || m1.cols() != m2.cols()) return false;
  const Index n = m1.rows();
  if (n == 0) return true;
  const double bound = tol * m2.cwiseAbs().maxCoeff();
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Index i = 0; i < n; ++i) {
    const auto r2 = m2.row(i);
    Index best = -1;
    double best_res = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const auto r1 = m1.row(j);
      const double denom = r1.squaredNorm();
      if (denom == 0.0) continue;
      const cdouble d = r1.dot(r2) / denom;  // least-squares multiple (dot conjugates r1)
      if (std::abs(d) == 0.0) continue;
      const double res = (r2 - d * r1).cwiseAbs().maxCoeff();
      if (res < best_res) {
        best_res = res;
        best = j;
      }
    }
    if (best < 0 || best_res > bound) return false;
    used[static_cast<std::size_t>(best)] = true;
  }
  return true;
}

Tube idempotent_of(const TransformSpec& spec, const Tube& a) {
  return star(spec, a, weak_inverse(spec, a));
}

ProbedOp op_from_probes(Index n, std::span<const OpProbe> probes) {
  if (n < 1) throw Error(ErrorCode::BadDimension, "op dimension must be at least 1");
  const Index unknowns = n * n;
  const auto rows = static_cast<Index>(probes.size());
  RealMatrix design(rows, unknowns);
  RealMatrix rhs(rows, n);
  for (Index r = 0; r < rows; ++r) {
    const OpProbe& p = probes[static_cast<std::size_t>(r)];
    if (p.a.size() != n || p.b.size() != n || p.result.size() != n) {
      throw Error(ErrorCode::BadDimension, "probe tube length does not match n");
    }
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) design(r, i * n + j) = p.a[i] * p.b[j];
    }
    rhs.row(r) = p.result.data().transpose();
  }
  Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod(design);
  if (rows < unknowns || cod.rank() < unknowns) {
    std::ostringstream os;
    os << "probes determine only " << cod.rank() << " of " << unknowns
       << " bilinear coefficients per output";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  RealMatrix coeffs = cod.solve(rhs);  // (i*n + j, k) -> constant of a_i b_j in output k
  // Solver noise would turn nilpotent structure (dual numbers) into a nearby
  // diagonalizable ring, so constants at rounding level are taken as zero.
  const double biggest = coeffs.size() == 0 ? 0.0 : coeffs.cwiseAbs().maxCoeff();
  coeffs = coeffs.unaryExpr([cut = 1e-12 * biggest](double c) { return std::abs(c) <= cut ? 0.0 : c; });
  const double scale = 1.0 + (rows > 0 ? rhs.cwiseAbs().maxCoeff() : 0.0);
  const double fit = (design * coeffs - rhs).cwiseAbs().maxCoeff() / scale;

  BlackBoxOp op{n, [n, coeffs = std::move(coeffs)](const Tube& a, const Tube& b) {
                  if (a.size() != n || b.size() != n) {
                    throw Error(ErrorCode::BadDimension, "tube length does not match op");
                  }
                  RealVector outer(n * n);
                  for (Index i = 0; i < n; ++i) {
                    for (Index j = 0; j < n; ++j) outer[i * n + j] = a[i] * b[j];
                  }
                  return Tube(coeffs.transpose() * outer);
                }};
  return {std::move(op), fit};
}

}  // namespace tubal
