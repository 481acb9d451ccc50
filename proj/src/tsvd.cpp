#include "tubal/tsvd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/SVD>

namespace tubal {

namespace {

// Rotates column `col` of `u` (and the matching column of `v`, if any) so the
// largest-modulus entry of u's column is real positive.
template <typename MatU, typename MatV>
void normalize_phase(MatU& u, MatV* v, Index col) {
  Index arg = 0;
  double best = -1.0;
  for (Index r = 0; r < u.rows(); ++r) {
    const double a = std::abs(u(r, col));
    if (a > best) {
      best = a;
      arg = r;
    }
  }
  if (best <= 0.0) return;
  const cdouble phase = std::conj(u(arg, col)) / best;
  u.col(col) *= phase;
  if (v != nullptr) v->col(col) *= phase;
}

Index min_dim(const TSVDFactors& f) { return std::min(f.rows(), f.cols()); }

void check_rank(Index k, Index limit) {
  if (k < 0 || k > limit) {
    std::ostringstream os;
    os << "rank " << k << " outside [0, " << limit << "]";
    throw Error(ErrorCode::RankOutOfRange, os.str());
  }
}

void check_multirank(const TSVDFactors& f, const MultiRank& r) {
  if (static_cast<Index>(r.r.size()) != f.tube_size()) {
    std::ostringstream os;
    os << "multirank has " << r.r.size() << " entries, expected " << f.tube_size();
    throw Error(ErrorCode::RankOutOfRange, os.str());
  }
  for (Index rj : r.r) check_rank(rj, min_dim(f));
  for (const RowClass& rc : f.spec.row_classes()) {
    if (rc.kind == RowClass::Kind::ConjPair && r.r[rc.first] != r.r[rc.second]) {
      std::ostringstream os;
      os << "multirank differs on conjugate-paired slices " << rc.first << " and " << rc.second;
      throw Error(ErrorCode::RankOutOfRange, os.str());
    }
  }
}

double require_unitary_scale(const TSVDFactors& f) {
  if (!f.spec.unitary_scale()) {
    throw Error(ErrorCode::NotScaledUnitary,
                "closed-form truncation error needs M = c W with W unitary");
  }
  return *f.spec.unitary_scale();
}

}  // namespace

Index MultiRank::max() const { return r.empty() ? 0 : *std::max_element(r.begin(), r.end()); }

TSVDFactors tsvd(const TransformSpec& spec, const Tensor3& a) {
  const Index m = a.rows(), p = a.cols(), n = a.tube_size();
  const Index k = std::min(m, p);
  const TransformedTensor a_hat = to_transform(spec, a);

  TransformedTensor u_hat(m, m, n, spec.id());
  TransformedTensor v_hat(p, p, n, spec.id());
  RealMatrix sigma_hat = RealMatrix::Zero(k, n);

  auto fail = [](Index j) {
    std::ostringstream os;
    os << "SVD of transform slice " << j << " did not converge";
    throw Error(ErrorCode::SvdNoConvergence, os.str());
  };

  // Real rows get a real SVD and conjugate pairs share one SVD, so the factors
  // map back to real tensors even when singular values repeat or vanish.
  for (const RowClass& rc : spec.row_classes()) {
    const Index j = rc.first;
    ComplexMatrix u, v;
    RealVector sv;
    if (rc.kind == RowClass::Kind::Real) {
      const RealMatrix slice = a_hat.slice(j).real();
      Eigen::JacobiSVD<RealMatrix> svd(slice, Eigen::ComputeFullU | Eigen::ComputeFullV);
      if (svd.info() != Eigen::Success || !svd.singularValues().allFinite()) fail(j);
      u = svd.matrixU().cast<cdouble>();
      v = svd.matrixV().cast<cdouble>();
      sv = svd.singularValues();
    } else {
      const ComplexMatrix slice = a_hat.slice(j);
      Eigen::JacobiSVD<ComplexMatrix> svd(slice, Eigen::ComputeFullU | Eigen::ComputeFullV);
      if (svd.info() != Eigen::Success || !svd.singularValues().allFinite()) fail(j);
      u = svd.matrixU();
      v = svd.matrixV();
      sv = svd.singularValues();
    }
    for (Index c = 0; c < k; ++c) normalize_phase(u, &v, c);
    for (Index c = k; c < m; ++c) normalize_phase(u, static_cast<ComplexMatrix*>(nullptr), c);
    for (Index c = k; c < p; ++c) normalize_phase(v, static_cast<ComplexMatrix*>(nullptr), c);
    u_hat.slice(j) = u;
    v_hat.slice(j) = v;
    sigma_hat.col(j) = sv.head(k);
    if (rc.kind == RowClass::Kind::ConjPair) {
      u_hat.slice(rc.second) = u.conjugate();
      v_hat.slice(rc.second) = v.conjugate();
      sigma_hat.col(rc.second) = sv.head(k);
    }
  }

  Tensor3 s(m, p, n);
  std::vector<Tube> sigma;
  sigma.reserve(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    sigma.push_back(spec.backward(sigma_hat.row(i).transpose().cast<cdouble>()));
    s.set_tube(i, i, sigma.back());
  }

  Tensor3 u = from_transform(spec, u_hat);
  Tensor3 v = from_transform(spec, v_hat);
  return TSVDFactors{spec,          std::move(u),     std::move(s),     std::move(v),
                     std::move(sigma), std::move(sigma_hat), std::move(u_hat), std::move(v_hat)};
}

Tensor3 reconstruct(const TSVDFactors& f) {
  const Tensor3 us = tensor_star(f.spec, f.U, f.S);
  return tensor_star(f.spec, us, herm_transpose(f.spec, f.V));
}

double default_rank_tol(const TSVDFactors& f) {
  return static_cast<double>(std::max(f.rows(), f.cols())) *
         std::numeric_limits<double>::epsilon();
}

MultiRank multirank(const TSVDFactors& f, std::optional<double> rank_tol) {
  const double tol = rank_tol.value_or(default_rank_tol(f));
  const double top = f.sigma_hat.size() == 0 ? 0.0 : f.sigma_hat.maxCoeff();
  const double cutoff = tol * top;
  MultiRank out;
  out.r.assign(static_cast<std::size_t>(f.tube_size()), 0);
  for (Index j = 0; j < f.tube_size(); ++j) {
    Index count = 0;
    for (Index i = 0; i < f.sigma_hat.rows(); ++i) {
      if (f.sigma_hat(i, j) > cutoff) count = i + 1;
    }
    out.r[static_cast<std::size_t>(j)] = count;
  }
  return out;
}

Index m_rank(const TSVDFactors& f, std::optional<double> rank_tol) {
  return multirank(f, rank_tol).max();
}

Tensor3 truncate_multirank(const TSVDFactors& f, const MultiRank& r) {
  check_multirank(f, r);
  const Index m = f.rows(), p = f.cols(), n = f.tube_size();
  TransformedTensor approx(m, p, n, f.spec_id());
  for (Index j = 0; j < n; ++j) {
    const Index rj = r.r[static_cast<std::size_t>(j)];
    if (rj == 0) continue;
    const auto u = f.U_hat.slice(j).leftCols(rj);
    const auto v = f.V_hat.slice(j).leftCols(rj);
    const Eigen::VectorXd s = f.sigma_hat.col(j).head(rj);
    approx.slice(j).noalias() = u * s.cast<cdouble>().asDiagonal() * v.adjoint();
  }
  return from_transform(f.spec, approx);
}

Tensor3 truncate_rank(const TSVDFactors& f, Index k) {
  check_rank(k, min_dim(f));
  MultiRank r;
  r.r.assign(static_cast<std::size_t>(f.tube_size()), k);
  return truncate_multirank(f, r);
}

double tail_error(const TSVDFactors& f, Index k) {
  require_unitary_scale(f);
  check_rank(k, min_dim(f));
  double s = 0.0;
  for (std::size_t i = static_cast<std::size_t>(k); i < f.sigma.size(); ++i) {
    s += f.sigma[i].data().squaredNorm();
  }
  return std::sqrt(s);
}

double tail_error(const TSVDFactors& f, const MultiRank& r) {
  const double c = require_unitary_scale(f);
  check_multirank(f, r);
  double s = 0.0;
  for (Index j = 0; j < f.tube_size(); ++j) {
    for (Index i = r.r[static_cast<std::size_t>(j)]; i < f.sigma_hat.rows(); ++i) {
      s += f.sigma_hat(i, j) * f.sigma_hat(i, j);
    }
  }
  // |M x|_2 = |c| |x|_2, so the transform-domain tail shrinks by |c|^2.
  return std::sqrt(s) / c;
}

}  // namespace tubal
