#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "tubal/catalog.hpp"

namespace tubal {

/// R with columns R[:, i] = op(a, e_i), so that R x = op(a, x) for bilinear ops.
struct RepMatrix {
  Tube base;
  RealMatrix R;
};

RepMatrix representation_matrix(const BlackBoxOp& op, const Tube& a);

enum class NotTubalReason {
  NotDiagonalizable,
  ResidualTooLarge,
  NotCommutative,
  NotAssociative,
  NotBilinear,
};

std::string_view to_string(NotTubalReason reason);

struct DiscoveryOptions {
  std::uint64_t seed = 0;
  /// Random draws of x before giving up on diagonalizing R_x.
  int max_retries = 5;
  /// Largest accepted condition number of the eigenvector matrix.
  double cond_cap = 1e8;
  /// Random pairs used to certify the recovered transform.
  int residual_trials = 100;
  double residual_tol = 1e-8;
  /// Random samples for the commutativity / associativity / bilinearity pre-checks.
  int precheck_trials = 100;
  double precheck_tol = 1e-9;
};

struct DiscoveryDiagnostics {
  double eigenvector_condition = std::numeric_limits<double>::quiet_NaN();
  double max_residual = std::numeric_limits<double>::quiet_NaN();
  std::optional<Index> realness;
  /// Number of random x draws consumed.
  int trials_used = 0;
  std::string detail;
};

/// Outcome of running the recovery algorithm on a black-box op.
///
/// A Tubal verdict is a certificate: the returned transform reproduced the op
/// on every sampled pair. A NotTubal verdict is evidence only; an arbitrary
/// non-tubal op is not guaranteed to be caught.
struct DiscoveryReport {
  std::optional<TransformSpec> transform;
  std::optional<NotTubalReason> reason;
  DiscoveryDiagnostics diagnostics;

  bool is_tubal() const noexcept { return transform.has_value(); }
};

/// Recovers M with op(a, b) = M^{-1}(Ma .* Mb) from representation matrices:
/// diagonalize R_x = S L S^{-1} for random x, set y = S * ones and
/// M[:, i] = S^{-1} R_{e_i} y. Throws NotDiagonalizable or ResidualTooLarge.
TransformSpec find_transform(const BlackBoxOp& op, const DiscoveryOptions& options = {});

/// Pre-checks commutativity, associativity and bilinearity, then runs
/// find_transform. Never throws for a well-formed op; failures become verdicts.
DiscoveryReport classify_ring(const BlackBoxOp& op, const DiscoveryOptions& options = {});

/// True iff m2 = D P m1 for a permutation P and invertible diagonal D, up to
/// tol * max|m2|.
bool equivalent_transforms(const ComplexMatrix& m1, const ComplexMatrix& m2, double tol = 1e-8);

/// a *_M a^-, an idempotent.
Tube idempotent_of(const TransformSpec& spec, const Tube& a);

/// One sampled evaluation of an op.
struct OpProbe {
  Tube a;
  Tube b;
  Tube result;
};

struct ProbedOp {
  BlackBoxOp op;
  /// max |fitted - recorded| / (1 + max |recorded|) over all probes.
  double fit_residual = 0.0;
};

/// Fits the bilinear op whose structure constants best explain the probes
/// (least squares over the n^2 coefficients per output). Needs probes that
/// determine all n^3 constants, otherwise throws InvalidArgument. Constants
/// below 1e-12 of the largest are snapped to zero.
ProbedOp op_from_probes(Index n, std::span<const OpProbe> probes);

}  // namespace tubal
