#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "tubal/tensor.hpp"

using namespace tubal;
using tubal::testing::catalog_specs;
using tubal::testing::direct_tensor_star;
using tubal::testing::random_matrix;
using tubal::testing::random_tensor;
using tubal::testing::random_tube;
using tubal::testing::rel_gap;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::InvalidArgument;
}

/// M = D W: W = DFT_3 / sqrt(3), D = diag(1, 2, 2) (equal on the conjugate pair).
TransformSpec diag_times_unitary() {
  ComplexMatrix m = dft(3).matrix() / std::sqrt(3.0);
  m.row(1) *= 2.0;
  m.row(2) *= 2.0;
  return validate_transform(m);
}

}  // namespace

TEST(Tensor3, LayoutIsSliceMajorRowMajor) {
  Tensor3 t(2, 3, 2);
  t(1, 2, 1) = 5.0;
  EXPECT_EQ(t.data()[1 * 6 + 1 * 3 + 2], 5.0);
  EXPECT_EQ(t.slice(1)(1, 2), 5.0);
  EXPECT_EQ(t.fibers()(1 * 3 + 2, 1), 5.0);
  EXPECT_THROW(Tensor3(2, 2, 2, std::vector<double>(7)), Error);
  EXPECT_THROW(Tensor3(1, 1, 1, std::vector<double>{NAN}), Error);
}

TEST(TwistSqueeze, InversePair) {
  std::mt19937_64 rng(1);
  const RealMatrix x = random_matrix(rng, 4, 5);
  const OrientedMatrix u = twist(x);
  EXPECT_EQ(u.rows(), 4);
  EXPECT_EQ(u.tube_size(), 5);
  EXPECT_EQ(squeeze(u), x);
  for (Index i = 0; i < 4; ++i)
    for (Index k = 0; k < 5; ++k) EXPECT_EQ(u.tensor()(i, 0, k), x(i, k));

  const RealMatrix row = random_matrix(rng, 1, 6);
  EXPECT_EQ(twist(row).tensor().rows(), 1);
  EXPECT_EQ(twist(row).tube(0).data(), row.row(0).transpose());
  EXPECT_EQ(twist(RealMatrix::Zero(3, 2)).tensor(), Tensor3(3, 1, 2));
  EXPECT_EQ(code_of([] { OrientedMatrix(Tensor3(2, 2, 2)); }), ErrorCode::ShapeMismatch);
}

TEST(TransformDomain, Examples) {
  std::mt19937_64 rng(2);
  const Tensor3 a = random_tensor(rng, 2, 3, 4);
  const auto id = identity_transform(4);
  const auto ahat = to_transform(id, a);
  for (Index k = 0; k < 4; ++k)
    for (Index i = 0; i < 2; ++i)
      for (Index j = 0; j < 3; ++j) EXPECT_EQ(ahat(i, j, k), cdouble(a(i, j, k)));

  const auto spec = dft(4);
  const Tube t = random_tube(rng, 4);
  const auto that = to_transform(spec, as_tensor(t));
  const ComplexTube mt = spec.forward(t);
  for (Index k = 0; k < 4; ++k) EXPECT_LT(std::abs(that(0, 0, k) - mt[k]), 1e-14);

  EXPECT_LT(rel_gap(from_transform(spec, to_transform(spec, a)), a), 1e-12);
}

TEST(TransformDomain, RoundTripAllSpecs) {
  std::mt19937_64 rng(3);
  for (const auto& [name, spec] : catalog_specs()) {
    const Tensor3 a = random_tensor(rng, 3, 2, spec.n());
    EXPECT_LT(frobenius_norm(from_transform(spec, to_transform(spec, a)) - a), 1e-12) << name;
  }
}

TEST(TransformDomain, SpecMismatchAndResidual) {
  std::mt19937_64 rng(4);
  const Tensor3 a = random_tensor(rng, 2, 2, 4);
  const auto ahat = to_transform(dft(4), a);
  EXPECT_EQ(code_of([&] { from_transform(skew_dft(4), ahat); }), ErrorCode::SpecMismatch);
  EXPECT_EQ(code_of([&] { facewise_product(ahat, to_transform(skew_dft(4), a)); }),
            ErrorCode::SpecMismatch);
  // Break conjugate symmetry in the transform domain.
  auto broken = ahat;
  broken(0, 0, 1) += cdouble(0.0, 1.0);
  EXPECT_EQ(code_of([&] { from_transform(dft(4), broken); }), ErrorCode::ResidualImaginary);
  EXPECT_EQ(code_of([&] { to_transform(dft(3), a); }), ErrorCode::ShapeMismatch);
}

TEST(Facewise, MatchesTripleLoop) {
  std::mt19937_64 rng(5);
  const auto spec = skew_dft(5);
  const auto a = to_transform(spec, random_tensor(rng, 3, 4, 5));
  const auto b = to_transform(spec, random_tensor(rng, 4, 2, 5));
  const auto c = facewise_product(a, b);
  ASSERT_EQ(c.rows(), 3);
  ASSERT_EQ(c.cols(), 2);
  for (Index k = 0; k < 5; ++k) {
    const ComplexMatrix want = tubal::testing::triple_loop_product(a.slice(k), b.slice(k));
    EXPECT_LT((ComplexMatrix(c.slice(k)) - want).cwiseAbs().maxCoeff(), 1e-13);
  }
  EXPECT_EQ(code_of([&] { facewise_product(a, a); }), ErrorCode::ShapeMismatch);
}

TEST(Facewise, IdentitySlicesAndSingleSlice) {
  std::mt19937_64 rng(6);
  const auto spec = dft(3);
  const auto a = to_transform(spec, random_tensor(rng, 2, 3, 3));
  const auto eye = to_transform(spec, identity_tensor(spec, 3));
  const auto c = facewise_product(a, eye);
  for (Index k = 0; k < 3; ++k) EXPECT_LT((ComplexMatrix(c.slice(k) - a.slice(k))).cwiseAbs().maxCoeff(), 1e-14);

  const auto one = identity_transform(1);
  const Tensor3 x = random_tensor(rng, 2, 3, 1), y = random_tensor(rng, 3, 4, 1);
  const RealMatrix want = RealMatrix(x.slice(0)) * RealMatrix(y.slice(0));
  EXPECT_LT((RealMatrix(tensor_star(one, x, y).slice(0)) - want).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(TensorStar, MatchesDirectDefinition) {
  std::mt19937_64 rng(7);
  for (const auto& [name, spec] : catalog_specs(6)) {
    SCOPED_TRACE(name);
    const Tensor3 a = random_tensor(rng, 2, 3, spec.n()), b = random_tensor(rng, 3, 2, spec.n());
    const Tensor3 c = tensor_star(spec, a, b);
    EXPECT_LT(rel_gap(c, direct_tensor_star(spec, a, b)), 1e-10);
    EXPECT_LT(frobenius_norm(c - from_transform(spec, facewise_product(to_transform(spec, a),
                                                                       to_transform(spec, b)))),
              1e-12);
  }
}

TEST(TensorStar, UnitTensorAndTubeReduction) {
  std::mt19937_64 rng(8);
  for (const auto& [name, spec] : catalog_specs(5)) {
    SCOPED_TRACE(name);
    const Tensor3 a = random_tensor(rng, 3, 2, spec.n());
    EXPECT_LT(rel_gap(tensor_star(spec, identity_tensor(spec, 3), a), a), 1e-12);
    EXPECT_LT(rel_gap(tensor_star(spec, a, identity_tensor(spec, 2)), a), 1e-12);
    const Tube x = random_tube(rng, spec.n()), y = random_tube(rng, spec.n());
    EXPECT_LT(rel_gap(tensor_star(spec, as_tensor(x), as_tensor(y)).tube(0, 0), star(spec, x, y)), 1e-12);
  }
  EXPECT_EQ(code_of([&] { tensor_star(dft(2), Tensor3(2, 3, 2), Tensor3(2, 3, 2)); }),
            ErrorCode::ShapeMismatch);
}

TEST(IdentityTensor, Structure) {
  const auto spec = skew_dft(4);
  const Tensor3 one = identity_tensor(spec, 1);
  EXPECT_LT((one.tube(0, 0) - unit(spec)).max_abs(), 1e-15);
  const auto hat = to_transform(spec, identity_tensor(spec, 3));
  for (Index k = 0; k < 4; ++k) {
    EXPECT_LT((ComplexMatrix(hat.slice(k)) - ComplexMatrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(HermTranspose, Properties) {
  std::mt19937_64 rng(9);
  for (const auto& [name, spec] : catalog_specs(6)) {
    SCOPED_TRACE(name);
    const Tensor3 a = random_tensor(rng, 3, 2, spec.n()), b = random_tensor(rng, 2, 4, spec.n());
    const Tensor3 ah = herm_transpose(spec, a);
    ASSERT_EQ(ah.rows(), 2);
    EXPECT_LT(rel_gap(herm_transpose(spec, ah), a), 1e-12);
    EXPECT_LT(rel_gap(herm_transpose(spec, tensor_star(spec, a, b)),
                      tensor_star(spec, herm_transpose(spec, b), ah)),
              1e-10);
    // Transform-domain form: slices of (A^H)^ are the conjugate transposes of A^ slices.
    const auto ahat = to_transform(spec, a), ahhat = to_transform(spec, ah);
    for (Index k = 0; k < spec.n(); ++k) {
      EXPECT_LT((ComplexMatrix(ahhat.slice(k)) - ComplexMatrix(ahat.slice(k)).adjoint()).cwiseAbs().maxCoeff(),
                1e-10);
    }
    if (spec.is_real_like()) {
      for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 2; ++j) EXPECT_LT((ah.tube(j, i) - a.tube(i, j)).max_abs(), 1e-12);
    }
  }
}

TEST(MDot, Examples) {
  std::mt19937_64 rng(10);
  for (const auto& [name, spec] : catalog_specs(6)) {
    SCOPED_TRACE(name);
    const Index n = spec.n();
    const OrientedMatrix e(as_tensor(unit(spec)));
    EXPECT_LT(rel_gap(mdot(spec, e, e), unit(spec)), 1e-12);
    for (int t = 0; t < 20; ++t) {
      const OrientedMatrix u = twist(random_matrix(rng, 4, n)), v = twist(random_matrix(rng, 4, n));
      EXPECT_TRUE(leq(spec, Tube::zeros(n), mdot(spec, u, u)));
      EXPECT_LT(rel_gap(mdot(spec, u, v), conjugate(spec, mdot(spec, v, u))), 1e-10);
    }
  }
  EXPECT_EQ(code_of([] {
              const auto s = dft(2);
              mdot(s, twist(RealMatrix::Zero(2, 2)), twist(RealMatrix::Zero(3, 2)));
            }),
            ErrorCode::ShapeMismatch);
}

TEST(Frobenius, InnerAndNorm) {
  std::mt19937_64 rng(11);
  const Tensor3 a = random_tensor(rng, 3, 4, 5), b = random_tensor(rng, 3, 4, 5);
  EXPECT_NEAR(frobenius_inner(a, a), frobenius_norm(a) * frobenius_norm(a), 1e-12);
  EXPECT_DOUBLE_EQ(frobenius_inner(a, b), frobenius_inner(b, a));
  EXPECT_EQ(code_of([&] { frobenius_inner(a, Tensor3(3, 4, 4)); }), ErrorCode::ShapeMismatch);
  for (const auto& [name, spec] : tubal::testing::scaled_unitary_specs()) {
    const Tensor3 x = random_tensor(rng, 3, 2, spec.n());
    EXPECT_NEAR(to_transform(spec, x).frobenius_norm(), *spec.unitary_scale() * frobenius_norm(x),
                1e-12 * (1 + frobenius_norm(x)))
        << name;
  }
}

TEST(ModuleStructure, StarLinearityOfTensorMaps) {
  std::mt19937_64 rng(12);
  for (const auto& [name, spec] : catalog_specs(6)) {
    SCOPED_TRACE(name);
    const Index n = spec.n();
    const Tensor3 a = random_tensor(rng, 3, 4, n);
    auto T = [&](const OrientedMatrix& x) { return twist(squeeze(apply(spec, a, x))); };
    for (int t = 0; t < 10; ++t) {
      const Tube r = random_tube(rng, n), s = random_tube(rng, n);
      const OrientedMatrix u = twist(random_matrix(rng, 4, n)), v = twist(random_matrix(rng, 4, n));
      const OrientedMatrix combo(scale_by_tube(spec, r, u.tensor()) + scale_by_tube(spec, s, v.tensor()));
      const Tensor3 lhs = T(combo).tensor();
      const Tensor3 rhs =
          scale_by_tube(spec, r, T(u).tensor()) + scale_by_tube(spec, s, T(v).tensor());
      EXPECT_LT(rel_gap(lhs, rhs), 1e-10);
    }
  }
}

TEST(ModuleStructure, AdjointIdentityGeneralSpec) {
  std::mt19937_64 rng(13);
  for (const auto& [name, spec] : catalog_specs(6)) {
    SCOPED_TRACE(name);
    const Index n = spec.n();
    const Tensor3 a = random_tensor(rng, 3, 4, n);
    const Tensor3 ah = herm_transpose(spec, a);
    for (int t = 0; t < 10; ++t) {
      const OrientedMatrix x = twist(random_matrix(rng, 4, n)), y = twist(random_matrix(rng, 3, n));
      EXPECT_LT(rel_gap(mdot(spec, apply(spec, a, x), y), mdot(spec, x, apply(spec, ah, y))), 1e-10);
    }
  }
}

TEST(Hilbert, HoldsForDiagonalTimesUnitary) {
  std::mt19937_64 rng(14);
  std::vector<TransformSpec> specs{diag_times_unitary(), dft(4), walsh_hadamard(4), skew_dft(3)};
  // WHT rows scaled independently: still D W with D real diagonal.
  ComplexMatrix w = walsh_hadamard(4).matrix();
  for (Index i = 0; i < 4; ++i) w.row(i) *= double(i + 1);
  specs.push_back(validate_transform(w));
  for (const auto& spec : specs) {
    const Index n = spec.n();
    for (int t = 0; t < 50; ++t) {
      const Tube a = random_tube(rng, n), x = random_tube(rng, n), y = random_tube(rng, n);
      const double lhs = star(spec, a, x).data().dot(y.data());
      const double rhs = x.data().dot(star(spec, conjugate(spec, a), y).data());
      EXPECT_NEAR(lhs, rhs, 1e-10);

      const Tensor3 at = random_tensor(rng, 3, 2, n);
      const OrientedMatrix xx = twist(random_matrix(rng, 2, n)), yy = twist(random_matrix(rng, 3, n));
      const double tl = frobenius_inner(apply(spec, at, xx).tensor(), yy.tensor());
      const double tr = frobenius_inner(xx.tensor(), apply(spec, herm_transpose(spec, at), yy).tensor());
      EXPECT_NEAR(tl, tr, 1e-10);
    }
  }
}

TEST(Hilbert, CounterexampleOutsideDiagonalTimesUnitary) {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 1.0, 1.0;  // rows not orthogonal, so M is not D W
  const auto spec = validate_transform(m);
  const Tube a{0, 1}, x{1, 0}, y{0, 1};
  const double lhs = star(spec, a, x).data().dot(y.data());
  const double rhs = x.data().dot(star(spec, conjugate(spec, a), y).data());
  EXPECT_GT(std::abs(lhs - rhs), 1e-4);
}
