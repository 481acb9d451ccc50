#pragma once

#include <optional>
#include <vector>

#include "tubal/tensor.hpp"

namespace tubal {

/// Per-slice target ranks in the transform domain, one entry per tube index.
struct MultiRank {
  std::vector<Index> r;

  Index max() const;
  bool operator==(const MultiRank&) const = default;
};

/// A = U *_M S *_M V^H.
///
/// U (m x m x n) and V (p x p x n) are *_M-unitary, S (m x p x n) is
/// f-diagonal with singular tubes sigma_i on its diagonal. The transform
/// domain factors are kept so truncations need no further SVDs.
struct TSVDFactors {
  TransformSpec spec;
  Tensor3 U;
  Tensor3 S;
  Tensor3 V;
  std::vector<Tube> sigma;
  /// sigma_hat(i, j): i-th singular value of transform slice j, descending in i.
  RealMatrix sigma_hat;
  TransformedTensor U_hat;
  TransformedTensor V_hat;

  Index rows() const noexcept { return U.rows(); }
  Index cols() const noexcept { return V.rows(); }
  Index tube_size() const noexcept { return spec.n(); }
  std::uint64_t spec_id() const noexcept { return spec.id(); }
};

/// Full *_M-SVD: a complex SVD of every transform-domain slice.
///
/// Singular vectors are phase-normalized so the largest-modulus entry of each
/// left singular vector is real and positive. Throws SvdNoConvergence if a
/// slice SVD fails.
TSVDFactors tsvd(const TransformSpec& spec, const Tensor3& a);

/// U *_M S *_M V^H.
Tensor3 reconstruct(const TSVDFactors& f);

/// max(m, p) * machine epsilon, relative to the largest slice singular value.
double default_rank_tol(const TSVDFactors& f);

/// Largest i with max_j sigma_hat(i, j) > rank_tol * max sigma_hat.
Index m_rank(const TSVDFactors& f, std::optional<double> rank_tol = std::nullopt);
MultiRank multirank(const TSVDFactors& f, std::optional<double> rank_tol = std::nullopt);

/// U[:, :k] *_M S[:k, :k] *_M V[:, :k]^H; throws RankOutOfRange unless 0 <= k <= min(m, p).
Tensor3 truncate_rank(const TSVDFactors& f, Index k);

/// Slice j of the result's transform is the rank-r_j truncated SVD of slice j.
/// Ranks must agree on conjugate-paired slices, otherwise the result would not
/// be real; that and out-of-range entries throw RankOutOfRange.
Tensor3 truncate_multirank(const TSVDFactors& f, const MultiRank& r);

// Closed-form truncation errors |A - A_k|_F, valid only when M = c W with W
// unitary; otherwise NotScaledUnitary is thrown.
double tail_error(const TSVDFactors& f, Index k);
double tail_error(const TSVDFactors& f, const MultiRank& r);

}  // namespace tubal
