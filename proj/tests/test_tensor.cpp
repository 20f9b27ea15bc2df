#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qiso/linalg.hpp"
#include "qiso/tensor.hpp"

#include <random>
#include <sstream>

using namespace qiso;

namespace {

struct Rng {
  std::mt19937 gen{20260813u};
  int small(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(gen);
  }
  QScalar scalar() {
    // Mix of constants and small q powers so entries exercise the field.
    switch (small(0, 4)) {
      case 0: return QScalar(small(-3, 3));
      case 1: return QScalar::q_pow(small(-2, 2));
      case 2: return QScalar(small(-2, 2)) * QScalar::q() + QScalar(1);
      case 3: return QScalar::i() * QScalar(small(1, 3));
      default: return QScalar(Poly(GaussRational(Rat(small(-3, 3), 2))), Poly::one());
    }
  }
  TensorOp op(int n, int legs, int entries) {
    TensorOp x(n, legs);
    std::uint32_t d = static_cast<std::uint32_t>(tensor_dim(n, legs));
    for (int e = 0; e < entries; ++e) {
      x.add_to(small(0, d - 1), small(0, d - 1), scalar());
    }
    return x;
  }
  TensorVec vec(int n, int legs, int entries) {
    TensorVec v(n, legs);
    std::uint32_t d = static_cast<std::uint32_t>(tensor_dim(n, legs));
    for (int e = 0; e < entries; ++e) v.add_to(small(0, d - 1), scalar());
    return v;
  }
};

// Independent Kronecker-product oracle: entry-by-entry construction,
// little-endian (first factor = least significant digits).
TensorOp kron_oracle(const TensorOp& a, const TensorOp& b) {
  TensorOp out(a.n, a.legs + b.legs);
  std::uint32_t da = static_cast<std::uint32_t>(a.dim());
  for (const auto& [rc1, v1] : a.a) {
    for (const auto& [rc2, v2] : b.a) {
      out.add_to(rc1.first + da * rc2.first, rc1.second + da * rc2.second, v1 * v2);
    }
  }
  return out;
}

// Independent partial-trace oracle over the last leg.
TensorOp trace_last_leg(const TensorOp& x) {
  TensorOp out(x.n, x.legs - 1);
  std::uint32_t dsub = static_cast<std::uint32_t>(tensor_dim(x.n, x.legs - 1));
  for (const auto& [rc, v] : x.a) {
    std::uint32_t rlo = rc.first % dsub, rhi = rc.first / dsub;
    std::uint32_t clo = rc.second % dsub, chi = rc.second / dsub;
    if (rhi == chi) out.add_to(rlo, clo, v);
  }
  return out;
}

QScalar trace(const TensorOp& x) {
  QScalar t;
  for (const auto& [rc, v] : x.a) {
    if (rc.first == rc.second) t += v;
  }
  return t;
}

RatMat antidiag_ones(int n) {
  RatMat g(n, std::vector<GaussRational>(n));
  for (int i = 0; i < n; ++i) g[i][n - 1 - i] = GaussRational(1);
  return g;
}

RatMat split_diag(int n) {
  RatMat g(n, std::vector<GaussRational>(n));
  for (int i = 0; i < n; ++i) g[i][i] = GaussRational(i % 2 == 0 ? 1 : -1);
  return g;
}

}  // namespace

TEST_CASE("index packing is little endian") {
  CHECK(pack_index(3, {1, 2}) == 1 + 3 * 2);
  CHECK(pack_index(5, {4, 0, 3}) == 4 + 25 * 3);
  for (std::uint32_t idx = 0; idx < tensor_dim(4, 3); ++idx) {
    CHECK(pack_index(4, unpack_index(4, 3, idx)) == idx);
  }
  CHECK_THROWS_AS(pack_index(2, {2}), std::out_of_range);
}

TEST_CASE("operator arithmetic and composition") {
  Rng rng;
  int n = 3, legs = 2;
  TensorOp a = rng.op(n, legs, 12), b = rng.op(n, legs, 12), c = rng.op(n, legs, 12);
  TensorOp id = tensor_identity(n, legs);
  CHECK(a * id == a);
  CHECK(id * a == a);
  CHECK((a + b) * c == a * c + b * c);
  CHECK(a * (b + c) == a * b + a * c);
  CHECK((a * b) * c == a * (b * c));
  CHECK(a - a == TensorOp(n, legs));
  QScalar s = QScalar::q() + QScalar(2);
  CHECK(s * (a * b) == (s * a) * b);
  // Star is entrywise, hence an algebra homomorphism on compositions.
  CHECK(star(a * b) == star(a) * star(b));
  CHECK(star(star(a)) == a);
}

TEST_CASE("permutation operators compose like permutations") {
  int n = 3;
  TensorOp p01 = perm_op(n, {1, 0, 2});
  TensorOp p12 = perm_op(n, {0, 2, 1});
  CHECK(p01 * p01 == tensor_identity(n, 3));
  // Routing composition: applying p01 then p12 routes slot t to p12[p01[t]].
  std::vector<int> comp(3);
  std::vector<int> s01 = {1, 0, 2}, s12 = {0, 2, 1};
  for (int t = 0; t < 3; ++t) comp[t] = s12[s01[t]];
  CHECK(p12 * p01 == perm_op(n, comp));

  // Action on a decomposable vector: v_t lands in slot perm[t].
  TensorVec e0(n, 1), e1(n, 1), e2(n, 1);
  e0.add_to(0, QScalar(1));
  e1.add_to(1, QScalar(1));
  e2.add_to(2, QScalar(1));
  TensorVec v012 = tensor_prod(tensor_prod(e0, e1), e2);
  TensorVec want = tensor_prod(tensor_prod(e1, e0), e2);  // slots 0,1 swapped
  CHECK(apply(p01, v012) == want);
}

TEST_CASE("embedding against a direct kronecker oracle") {
  Rng rng;
  int n = 3;
  TensorOp a = rng.op(n, 1, 5), b = rng.op(n, 2, 8);
  TensorOp lhs = embed(a, 3, {0}) * embed(b, 3, {1, 2});
  CHECK(lhs == kron_oracle(a, b));
  // Disjoint-leg embeddings commute.
  CHECK(embed(a, 3, {0}) * embed(b, 3, {1, 2}) == embed(b, 3, {1, 2}) * embed(a, 3, {0}));
  // Embedding into the same leg count is the identity operation.
  CHECK(embed(b, 2, {0, 1}) == b);
  // Leg-reversing embedding equals conjugation by the swap.
  TensorOp sw = perm_op(n, {1, 0});
  CHECK(embed(b, 2, {1, 0}) == sw * b * sw);
}

TEST_CASE("partial trace oracle ties embed and composition together") {
  Rng rng;
  int n = 3;
  TensorOp a = rng.op(n, 2, 10), b = rng.op(n, 1, 4);
  // tr_3((a ox 1)(1 ox 1 ox b)) = a * tr(b) on the first two legs.
  TensorOp big = embed(a, 3, {0, 1}) * embed(b, 3, {2});
  CHECK(trace_last_leg(big) == trace(b) * a);
  // Full trace is multiplicative across disjoint factors.
  CHECK(trace(kron_oracle(a, b)) == trace(a) * trace(b));
}

TEST_CASE("vectors, covectors, pairing and outer products") {
  Rng rng;
  int n = 4;
  TensorOp a = rng.op(n, 1, 6);
  TensorVec v = rng.vec(n, 1, 3);
  TensorCovec c(n, 1);
  c.add_to(0, QScalar(2));
  c.add_to(3, QScalar::q_pow(-1));
  // <c, a v> = <c a, v>.
  CHECK(pair(c, apply(a, v)) == pair(apply(c, a), v));
  // outer(v, c) acts as v * <c, w>.
  TensorVec w = rng.vec(n, 1, 3);
  CHECK(apply(outer(v, c), w) == pair(c, w) * v);
}

TEST_CASE("exact rank with known-rank constructions") {
  CHECK(rank(tensor_identity(3, 2)) == 9);
  CHECK(rank(TensorOp(3, 2)) == 0);

  // Known rank: diagonal with k nonzero entries, conjugated by triangular maps.
  Rng rng;
  int n = 3, legs = 2;
  std::uint32_t d = static_cast<std::uint32_t>(tensor_dim(n, legs));
  for (int k : {1, 3, 5, 9}) {
    TensorOp diag(n, legs);
    for (int i = 0; i < k; ++i) diag.set(i, i, QScalar::q_pow(i - 2));
    TensorOp upper = tensor_identity(n, legs), lower = tensor_identity(n, legs);
    for (int e = 0; e < 8; ++e) {
      std::uint32_t r = rng.small(0, d - 2);
      upper.add_to(r, r + 1 + rng.small(0, d - 2 - r), rng.scalar());
      std::uint32_t c2 = rng.small(0, d - 2);
      lower.add_to(c2 + 1 + rng.small(0, d - 2 - c2), c2, rng.scalar());
    }
    CHECK(rank(lower * diag * upper) == k);
  }

  // Rank-one outer product.
  TensorVec v = rng.vec(3, 2, 4);
  TensorCovec c(3, 2);
  c.add_to(1, QScalar(1));
  c.add_to(7, QScalar::q());
  if (!v.is_zero()) {
    CHECK(rank(outer(v, c)) == 1);
  }
}

TEST_CASE("kernel basis spans the kernel exactly") {
  Rng rng;
  int n = 3, legs = 2;
  TensorOp a = rng.op(n, legs, 14);
  auto ker = kernel_basis(a);
  int r = rank(a);
  CHECK(static_cast<int>(ker.size()) + r == static_cast<int>(a.dim()));
  for (const auto& v : ker) {
    CHECK(apply(a, v).is_zero());
    CHECK_FALSE(v.is_zero());
  }
  // Kernel vectors are linearly independent: stack them as rows and take rank.
  TensorOp stacked(n, legs);
  for (size_t i = 0; i < ker.size(); ++i) {
    for (const auto& [j, val] : ker[i].a) stacked.set(static_cast<std::uint32_t>(i), j, val);
  }
  CHECK(rank(stacked) == static_cast<int>(ker.size()));
}

TEST_CASE("lagrange projectors of the swap operator") {
  int n = 3;
  TensorOp sw = perm_op(n, {1, 0});
  auto ps = lagrange_projectors(sw, {QScalar(1), QScalar(-1)});
  TensorOp id = tensor_identity(n, 2);
  QScalar half(Poly(GaussRational(Rat(1, 2))), Poly::one());
  CHECK(ps[0] == half * (id + sw));
  CHECK(ps[1] == half * (id - sw));
  CHECK(rank(ps[0]) == n * (n + 1) / 2);
  CHECK(rank(ps[1]) == n * (n - 1) / 2);

  CHECK_THROWS_AS(lagrange_projectors(sw, {QScalar(1), QScalar(1)}), std::invalid_argument);
  // Wrong spectrum: annihilating-polynomial validation must fire.
  CHECK_THROWS_AS(lagrange_projectors(sw, {QScalar(1), QScalar(2)}), std::domain_error);
  CHECK_THROWS_AS(lagrange_projectors(sw, {QScalar(1)}), std::domain_error);
}

TEST_CASE("right symmetrizer on three legs") {
  int n = 2;
  TensorOp sym = right_symmetrize3(tensor_identity(n, 3));
  CHECK(sym * sym == sym);
  CHECK(rank(sym) == 4);  // dim Sym^3(C^2)
  // Any permutation acts trivially after symmetrization.
  for (const auto& p : std::vector<std::vector<int>>{{1, 0, 2}, {0, 2, 1}, {2, 1, 0}}) {
    CHECK(right_symmetrize3(perm_op(n, p) - tensor_identity(n, 3)).is_zero());
  }
}

TEST_CASE("classical limit of an operator") {
  TensorOp x(2, 1);
  x.set(0, 0, QScalar::q() + QScalar(1));
  x.set(1, 0, (QScalar::q() - QScalar(1)) * QScalar::i());
  RatMat m = eval_at_one(x);
  CHECK(m[0][0] == GaussRational(2));
  CHECK(m[1][0] == GaussRational(0));
  TensorOp bad(2, 1);
  bad.set(0, 0, QScalar(1) / (QScalar::q() - QScalar(1)));
  CHECK_THROWS_AS(eval_at_one(bad), std::domain_error);
}

TEST_CASE("dump and parse round trip deterministically") {
  Rng rng;
  TensorOp a = rng.op(3, 2, 15);
  std::string text = dump_str(a);
  CHECK(dump_str(a) == text);  // byte-identical on repeat
  TensorOp back = parse_tensor_str(text);
  CHECK(back == a);
  CHECK(dump_str(back) == text);
  CHECK_THROWS_AS(parse_tensor_str("nonsense 1 2 3"), std::invalid_argument);
}

TEST_CASE("sparse echelon spans reduce canonically") {
  SparseRref<int> rr;
  using Row = SparseRref<int>::Row;
  auto row = [](std::initializer_list<std::pair<int, int>> e) {
    Row r;
    for (auto [k, v] : e) r[k] = QScalar(v);
    return r;
  };
  CHECK(rr.insert(row({{0, 1}, {2, 2}})));
  CHECK(rr.insert(row({{1, 3}, {2, 1}})));
  CHECK_FALSE(rr.insert(row({{0, 2}, {1, 6}, {2, 6}})));  // dependent combination
  CHECK(rr.rank() == 2);
  Row p = row({{0, 5}, {1, 3}, {2, 11}});
  rr.reduce(p);
  // Residual is supported off the pivot keys and reduces to zero when in span.
  for (const auto& [k, v] : p) CHECK(rr.rows().find(k) == rr.rows().end());
  Row dep = row({{0, 7}, {2, 14}});
  rr.reduce(dep);
  CHECK(dep.empty());
}

TEST_CASE("rational matrix utilities") {
  RatMat a = {{GaussRational(1), GaussRational(2)}, {GaussRational(2), GaussRational(4)}};
  CHECK(rat_rank(a) == 1);
  auto ker = rat_kernel(a);
  REQUIRE(ker.size() == 1);
  CHECK(ker[0][0] * GaussRational(1) + ker[0][1] * GaussRational(2) == GaussRational(0));

  RatMat b = {{GaussRational(2), GaussRational(1)}, {GaussRational(1), GaussRational(1)}};
  RatMat binv = rat_inverse(b);
  CHECK(rat_mul(b, binv) == rat_identity(2));
  CHECK_THROWS_AS(rat_inverse(a), std::domain_error);

  Signature s = rat_signature(split_diag(4));
  CHECK(s.positive == 2);
  CHECK(s.negative == 2);
  CHECK(s.zero == 0);
}

TEST_CASE("congruence: antidiagonal metric is split over the rationals") {
  for (int n : {2, 3, 4, 5, 6}) {
    RatMat j = antidiag_ones(n);
    Signature s = rat_signature(j);
    CHECK(s.positive == (n + 1) / 2);
    CHECK(s.negative == n / 2);
    CHECK(s.zero == 0);
    auto t = congruence_transform(j, split_diag(n));
    REQUIRE(t.has_value());
    CHECK(rat_mul(rat_mul(rat_transpose(*t), j), *t) == split_diag(n));
  }
  // Different signatures are not congruent: (2,2) vs (1,3).
  RatMat lorentz = {{GaussRational(1), GaussRational(0), GaussRational(0), GaussRational(0)},
                    {GaussRational(0), GaussRational(-1), GaussRational(0), GaussRational(0)},
                    {GaussRational(0), GaussRational(0), GaussRational(-1), GaussRational(0)},
                    {GaussRational(0), GaussRational(0), GaussRational(0), GaussRational(-1)}};
  CHECK_FALSE(congruence_transform(antidiag_ones(4), lorentz).has_value());
  // Congruence covariance survives a random change of basis.
  RatMat c = rat_identity(4);
  c[0][1] = GaussRational(Rat(1, 2));
  c[2][3] = GaussRational(-3);
  c[1][0] = GaussRational(1);
  RatMat g2 = rat_mul(rat_mul(rat_transpose(c), antidiag_ones(4)), c);
  auto t2 = congruence_transform(g2, antidiag_ones(4));
  REQUIRE(t2.has_value());
  CHECK(rat_mul(rat_mul(rat_transpose(*t2), g2), *t2) == antidiag_ones(4));
}
