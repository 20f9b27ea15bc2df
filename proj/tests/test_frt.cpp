#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qiso/frt.hpp"

using namespace qiso;

namespace {

TensorOp braid_embed(const TensorOp& t, int legs, int a, int b) { return embed(t, legs, {a, b}); }

}  // namespace

TEST_CASE("doubled weyl exponents") {
  CHECK(rho_doubled(2) == std::vector<int>{0, 0});
  CHECK(rho_doubled(3) == std::vector<int>{1, 0, -1});
  CHECK(rho_doubled(4) == std::vector<int>{2, 0, 0, -2});
  CHECK(rho_doubled(5) == std::vector<int>{3, 1, 0, -1, -3});
  CHECK(rho_doubled(6) == std::vector<int>{4, 2, 0, 0, -2, -4});
}

TEST_CASE("R-matrix builds with validated structure for n = 2..6") {
  for (int n = 2; n <= 6; ++n) {
    CAPTURE(n);
    SoQData d = frt_build(n);
    CHECK(d.sigma == QScalar::q_pow(-1));
    CHECK(rank(d.p_plus) == n * (n + 1) / 2 - 1);
    CHECK(rank(d.p_minus) == n * (n - 1) / 2);
    CHECK(rank(d.p_zero) == 1);
    CHECK(d.p_plus + d.p_minus + d.p_zero == tensor_identity(n, 2));
  }
}

TEST_CASE("braid form satisfies the braid relation") {
  for (int n : {2, 3, 4}) {
    CAPTURE(n);
    SoQData d = frt_build(n);
    TensorOp b12 = braid_embed(d.what, 3, 0, 1);
    TensorOp b23 = braid_embed(d.what, 3, 1, 2);
    CHECK(b12 * b23 * b12 == b23 * b12 * b23);
    CHECK(ybe_defect(d.w).is_zero());
  }
}

TEST_CASE("unique spectral shifts for each projector") {
  for (int n : {3, 4}) {
    CAPTURE(n);
    SoQData d = frt_build(n);
    auto sm = check_spectral_condition(d.p_minus, d.what, n);
    REQUIRE(sm.has_value());
    CHECK(*sm == QScalar::q_pow(-1));
    auto sp = check_spectral_condition(d.p_plus, d.what, n);
    REQUIRE(sp.has_value());
    CHECK(*sp == -QScalar::q());
    auto sz = check_spectral_condition(d.p_zero, d.what, n);
    REQUIRE(sz.has_value());
    CHECK(*sz == -QScalar::q_pow(1 - n));
    // The identity is not annihilated by any shift in the scan window.
    CHECK_FALSE(check_spectral_condition(tensor_identity(n, 2), d.what, n).has_value());
  }
}

TEST_CASE("metric vector is supported on the antidiagonal and classically flat") {
  for (int n : {2, 3, 4, 5}) {
    CAPTURE(n);
    SoQData d = frt_build(n);
    for (const auto& [idx, v] : d.eta.a) {
      int i = static_cast<int>(idx) % n;
      int j = static_cast<int>(idx) / n;
      CHECK(i + j == n - 1);
      CHECK(v.eval_at_one() == GaussRational(1));
    }
    CHECK(d.eta.a.size() == static_cast<size_t>(n));
    CHECK(pair(d.eta_prime, d.eta).is_one());
    CHECK(outer(d.eta, d.eta_prime) == d.p_zero);
    CHECK(check_metric_compat(d));
  }
}

TEST_CASE("reality holds for W and fails for a rescaled mutant") {
  for (int n : {3, 4}) {
    CAPTURE(n);
    SoQData d = frt_build(n);
    CHECK(check_reality(d.w));
    CHECK(check_reality(d.r));
    // The braid form is real up to swap conjugation.
    TensorOp swap = perm_op(n, {1, 0});
    CHECK(star(d.r_hat) == swap * d.r_hat * swap);
    // star(what) is the swap-conjugated inverse, reconstructed spectrally.
    TensorOp winv = QScalar::q_pow(-1) * d.p_plus - QScalar::q() * d.p_minus +
                    QScalar::q_pow(n - 1) * d.p_zero;
    CHECK(star(d.what) == swap * winv * swap);
    // Unit-modulus rescalings preserve reality (star(q) = 1/q); a breaking
    // mutant needs a scale c with c star(c) != 1.
    CHECK(check_reality(QScalar::q() * d.w));
    CHECK_FALSE(check_reality(QScalar(2) * d.w));
    CHECK_FALSE(check_reality((QScalar(1) + QScalar::q()) * d.w));
  }
}

TEST_CASE("middle diagonal coefficient is 1 for odd n") {
  for (int n : {3, 5}) {
    SoQData d = frt_build(n);
    int m = (n - 1) / 2;
    std::uint32_t mm = static_cast<std::uint32_t>(m + n * m);
    CHECK(d.w.at(mm, mm).is_one());
  }
}

TEST_CASE("frozen entries for n = 3 after validation") {
  SoQData d = frt_build(3);
  const QScalar q = QScalar::q();
  const QScalar lam = q - QScalar::q_pow(-1);
  auto at = [](int i, int j) { return static_cast<std::uint32_t>(i + 3 * j); };
  CHECK(d.w.at(at(0, 0), at(0, 0)) == q);
  CHECK(d.w.at(at(2, 2), at(2, 2)) == q);
  CHECK(d.w.at(at(2, 0), at(2, 0)) == QScalar::q_pow(-1));
  CHECK(d.w.at(at(1, 0), at(0, 1)) == lam);
  // Both off-diagonal families collide on (e_0 ox e_2) -> (e_2 ox e_0).
  CHECK(d.w.at(at(2, 0), at(0, 2)) == lam * (QScalar(1) - QScalar::q_pow(-1)));
  // Middle-index correction carries the half-integer power v = q^{1/2}.
  CHECK(d.w.at(at(1, 1), at(0, 2)) == -(lam * QScalar::v_pow(-1)));
  CHECK(d.w.nnz() == 14);

  // Metric vector entries are q^{-rho_i} relative to the last index.
  CHECK(d.eta.a.at(at(2, 0)) == QScalar(1));
  CHECK(d.eta.a.at(at(1, 1)) == QScalar::v_pow(-1));
  CHECK(d.eta.a.at(at(0, 2)) == QScalar::v_pow(-2));
}

TEST_CASE("classical limit: first-order data") {
  SoQData d2 = frt_build(2);
  ClassicalLimit c2 = classical_limit(d2);
  CHECK(c2.r.is_zero());  // so(2) is abelian
  CHECK(c2.s == c2.w);

  for (int n : {3, 4}) {
    CAPTURE(n);
    SoQData d = frt_build(n);
    ClassicalLimit cl = classical_limit(d);
    CHECK(cl.r + cl.s == cl.w);
    CHECK_FALSE(cl.r.is_zero());
    TensorOp swap = perm_op(n, {1, 0});
    CHECK(swap * cl.r * swap == QScalar(-1) * cl.r);
    CHECK(swap * cl.s * swap == cl.s);
    for (const auto& [rc, v] : cl.w.a) {
      CHECK(v.is_constant());
      CHECK(v.constant_value().is_real());
    }
  }
}

TEST_CASE("construction is deterministic") {
  SoQData a = frt_build(3);
  SoQData b = frt_build(3);
  CHECK(dump_str(a.w) == dump_str(b.w));
  CHECK(dump_str(a.p_minus) == dump_str(b.p_minus));
}
