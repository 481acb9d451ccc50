#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "support.hpp"
#include "tubal/catalog.hpp"
#include "tubal/io.hpp"

using namespace tubal;
using tubal::testing::random_tube;
using tubal::testing::rel_gap;

TEST(Catalog, Dft2IsSplitComplexMatrix) {
  ComplexMatrix want(2, 2);
  want << 1.0, 1.0, 1.0, -1.0;
  EXPECT_LT((dft(2).matrix() - want).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((split_complex().matrix() - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Catalog, SkewDftIsDftTimesPhaseDiagonal) {
  for (Index n = 1; n <= 8; ++n) {
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    for (Index k = 0; k < n; ++k) d(k, k) = std::polar(1.0, std::numbers::pi * k / n);
    EXPECT_LT((skew_dft(n).matrix() - dft(n).matrix() * d).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Catalog, VandermondeAtRootsOfUnityIsDftUpToRowOrder) {
  for (Index n = 1; n <= 8; ++n) {
    std::vector<cdouble> roots;
    // Listed in reverse so the row order differs from the DFT's.
    for (Index j = n - 1; j >= 0; --j) roots.push_back(std::polar(1.0, -2.0 * std::numbers::pi * j / n));
    const ComplexMatrix v = vandermonde(roots).matrix();
    const ComplexMatrix f = dft(n).matrix();
    std::vector<bool> used(n, false);
    for (Index i = 0; i < n; ++i) {
      bool found = false;
      for (Index k = 0; k < n && !found; ++k) {
        if (!used[k] && (v.row(i) - f.row(k)).cwiseAbs().maxCoeff() < 1e-12) {
          used[k] = found = true;
        }
      }
      EXPECT_TRUE(found) << "n=" << n << " row " << i;
    }
  }
}

TEST(Catalog, VandermondeErrors) {
  const std::vector<cdouble> dup{1.0, 1.0};
  try {
    vandermonde(dup);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateRoots);
  }
  // A lone complex root has no conjugate partner.
  const std::vector<cdouble> lonely{cdouble(0, 1), 2.0};
  EXPECT_THROW(vandermonde(lonely), Error);
}

TEST(Catalog, DimensionErrors) {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  EXPECT_EQ(code_of([] { walsh_hadamard(6); }), ErrorCode::BadDimension);
  EXPECT_EQ(code_of([] { dft(0); }), ErrorCode::BadDimension);
  EXPECT_EQ(code_of([] { xor_conv_op(3); }), ErrorCode::BadDimension);
  EXPECT_EQ(code_of([] { transform_from_name("split-complex", 3); }), ErrorCode::BadDimension);
  EXPECT_EQ(code_of([] { transform_from_name("complex-field", 4); }), ErrorCode::BadDimension);
  EXPECT_EQ(code_of([] { transform_from_name("canonical:4,2", 5); }), ErrorCode::BadDimension);
  EXPECT_EQ(code_of([] { transform_from_name("canonical:4", 4); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { transform_from_name("fourier", 4); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { circ_conv_op(3)(Tube{1, 2}, Tube{1, 2, 3}); }), ErrorCode::BadDimension);
}

TEST(Catalog, TransformNames) {
  EXPECT_EQ(transform_from_name("dft", 5).id(), dft(5).id());
  EXPECT_EQ(transform_from_name("skew-dft", 5).id(), skew_dft(5).id());
  EXPECT_EQ(transform_from_name("wht", 8).id(), walsh_hadamard(8).id());
  EXPECT_EQ(transform_from_name("identity", 3).id(), identity_transform(3).id());
  EXPECT_EQ(transform_from_name("split-complex", 2).id(), split_complex().id());
  EXPECT_EQ(transform_from_name("complex-field", 2).id(), complex_field().id());
  EXPECT_EQ(transform_from_name("canonical:5,3", 5).id(), canonical_transform(5, 3).id());

  const auto path = (std::filesystem::temp_directory_path() / "tubal_catalog_transform.json").string();
  write_transform_file(path, skew_dft(4).matrix());
  const auto spec = transform_from_name("file:" + path, 4);
  EXPECT_EQ(spec.id(), skew_dft(4).id());
  EXPECT_THROW(transform_from_name("file:" + path, 3), Error);
  std::remove(path.c_str());
}

TEST(Catalog, ScaledUnitaryDetection) {
  for (Index n = 1; n <= 16; ++n) {
    ASSERT_TRUE(dft(n).unitary_scale());
    EXPECT_NEAR(*dft(n).unitary_scale(), std::sqrt(double(n)), 1e-12);
    ASSERT_TRUE(skew_dft(n).unitary_scale());
    EXPECT_NEAR(*skew_dft(n).unitary_scale(), std::sqrt(double(n)), 1e-12);
    if (is_power_of_two(n)) {
      ASSERT_TRUE(walsh_hadamard(n).unitary_scale());
      EXPECT_NEAR(*walsh_hadamard(n).unitary_scale(), std::sqrt(double(n)), 1e-12);
      EXPECT_TRUE(walsh_hadamard(n).is_real_like());
    }
  }
  EXPECT_NEAR(*split_complex().unitary_scale(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(*complex_field().unitary_scale(), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(complex_field().realness(), 0);
  EXPECT_EQ(split_complex().realness(), 2);
  EXPECT_FALSE(tubal::testing::cubic_vandermonde().unitary_scale());
}

// ---------------------------------------------------------------------------
// Oracles

TEST(Oracles, Examples) {
  const Tube c = circ_conv_op(3)(Tube{1, 2, 3}, Tube{4, 5, 6});
  EXPECT_EQ(c, (Tube{31, 31, 28}));
  EXPECT_EQ(dual_numbers_op()(Tube{2, 3}, Tube{5, 7}), (Tube{10, 2 * 7 + 3 * 5}));
  // 1 + X times 1 + X mod X^2 + 1 = 2X
  EXPECT_EQ(negacyclic_conv_op(2)(Tube{1, 1}, Tube{1, 1}), (Tube{0, 2}));

  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const Tube a = random_tube(rng, 2), b = random_tube(rng, 2);
    EXPECT_LT(rel_gap(xor_conv_op(2)(a, b), circ_conv_op(2)(a, b)), 1e-15);
    EXPECT_LT(rel_gap(split_complex_op()(a, b), circ_conv_op(2)(a, b)), 1e-15);
  }
}

TEST(Oracles, StarMatchesBruteForce) {
  std::mt19937_64 rng(21);
  for (Index n = 1; n <= 16; ++n) {
    const auto d = dft(n), s = skew_dft(n);
    const auto circ = circ_conv_op(n), nega = negacyclic_conv_op(n);
    for (int t = 0; t < 100; ++t) {
      const Tube a = random_tube(rng, n), b = random_tube(rng, n);
      EXPECT_LT((star(d, a, b) - circ(a, b)).max_abs(), 1e-10) << "dft n=" << n;
      EXPECT_LT((star(s, a, b) - nega(a, b)).max_abs(), 1e-10) << "skew n=" << n;
    }
  }
  for (Index n = 1; n <= 16; n *= 2) {
    const auto w = walsh_hadamard(n);
    const auto x = xor_conv_op(n);
    for (int t = 0; t < 100; ++t) {
      const Tube a = random_tube(rng, n), b = random_tube(rng, n);
      EXPECT_LT((star(w, a, b) - x(a, b)).max_abs(), 1e-10) << "wht n=" << n;
    }
  }
  const auto cf = complex_field();
  for (int t = 0; t < 100; ++t) {
    const Tube a = random_tube(rng, 2), b = random_tube(rng, 2);
    EXPECT_LT((star(cf, a, b) - complex_field_op()(a, b)).max_abs(), 1e-12);
  }
}

TEST(Oracles, GroupRingEquivalence) {
  EXPECT_LT(group_ring_wht_equivalence_check(1, 50), 1e-12);
  EXPECT_LT(group_ring_wht_equivalence_check(3, 100), 1e-10);
  EXPECT_LT(group_ring_wht_equivalence_check(4, 100, 99), 1e-10);

  // delta at the group identity is the unit
  std::mt19937_64 rng(8);
  for (Index n : {1, 2, 4, 8}) {
    EXPECT_LT((unit(walsh_hadamard(n)) - Tube::basis(n, 0)).max_abs(), 1e-14);
    const Tube b = random_tube(rng, n);
    EXPECT_EQ(xor_conv_op(n)(Tube::basis(n, 0), b), b);
  }
}

TEST(Oracles, DualNumbersEpsilonIsNilpotentSandwich) {
  std::mt19937_64 rng(6);
  const auto op = dual_numbers_op();
  const Tube eps{0, 1};
  for (int t = 0; t < 50; ++t) {
    const Tube x = random_tube(rng, 2);
    EXPECT_EQ(op(op(eps, x), eps), Tube::zeros(2));
  }
}

TEST(Oracles, FromTransformWrapsStar) {
  const auto op = from_transform_op(skew_dft(5));
  EXPECT_EQ(op.n, 5);
  std::mt19937_64 rng(12);
  const Tube a = random_tube(rng, 5), b = random_tube(rng, 5);
  EXPECT_EQ(op(a, b), star(skew_dft(5), a, b));
}
