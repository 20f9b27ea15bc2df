#include "qiso/frt.hpp"

#include <stdexcept>

namespace qiso {

std::vector<int> rho_doubled(int n) {
  if (n < 2) throw std::invalid_argument("rho_doubled: n must be at least 2");
  std::vector<int> rho2(n, 0);
  for (int i = 0; i < n / 2; ++i) {
    rho2[i] = n - 2 - 2 * i;  // 2 * (n/2 - 1 - i)
    rho2[n - 1 - i] = -rho2[i];
  }
  // Odd n: middle entry stays 0.
  return rho2;
}

namespace {

TensorOp build_w(int n) {
  const QScalar q = QScalar::q();
  const QScalar qi = QScalar::q_pow(-1);
  const QScalar lam = q - qi;
  std::vector<int> rho2 = rho_doubled(n);
  auto conj_idx = [n](int i) { return n - 1 - i; };

  TensorOp w(n, 2);
  auto at = [n](int i, int j) { return static_cast<std::uint32_t>(i + n * j); };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      QScalar coeff(1);
      if (i == j) coeff = (i == conj_idx(i)) ? QScalar(1) : q;
      if (j == conj_idx(i) && i != j) coeff = qi;
      w.add_to(at(i, j), at(i, j), coeff);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      // lam E_ij ox E_ji: takes e_j ox e_i to e_i ox e_j.
      w.add_to(at(i, j), at(j, i), lam);
      // -lam q^{rho_i - rho_j} E_ij ox E_{i'j'}: takes e_j ox e_{j'} to e_i ox e_{i'}.
      w.add_to(at(i, conj_idx(i)), at(j, conj_idx(j)), -(lam * QScalar::v_pow(rho2[i] - rho2[j])));
    }
  }
  return w;
}

}  // namespace

TensorOp ybe_defect(const TensorOp& t) {
  if (t.legs != 2) throw std::invalid_argument("ybe_defect: needs a 2-leg operator");
  TensorOp t12 = embed(t, 3, {0, 1});
  TensorOp t13 = embed(t, 3, {0, 2});
  TensorOp t23 = embed(t, 3, {1, 2});
  return t12 * t13 * t23 - t23 * t13 * t12;
}

bool check_reality(const TensorOp& t) { return t * star(t) == tensor_identity(t.n, t.legs); }

bool check_metric_compat(const SoQData& d) {
  int n = d.n;
  TensorOp w13 = embed(d.w, 3, {0, 2});
  TensorOp w23 = embed(d.w, 3, {1, 2});
  TensorOp both = w13 * w23;
  for (int c = 0; c < n; ++c) {
    TensorVec ec(n, 1);
    ec.add_to(static_cast<std::uint32_t>(c), QScalar(1));
    TensorVec in = tensor_prod(d.eta, ec);
    if (!(apply(both, in) == in)) return false;
  }
  return true;
}

std::optional<QScalar> check_spectral_condition(const TensorOp& proj, const TensorOp& what, int n) {
  TensorOp id = tensor_identity(what.n, what.legs);
  std::optional<QScalar> found;
  for (int k = -n; k <= n; ++k) {
    for (int sign : {1, -1}) {
      QScalar sigma = QScalar(sign) * QScalar::q_pow(k);
      if ((proj * (what + sigma * id)).is_zero()) {
        if (found.has_value()) return std::nullopt;  // not unique
        found = sigma;
      }
    }
  }
  return found;
}

SoQData frt_build(int n) {
  if (n < 2) throw std::invalid_argument("frt_build: n must be at least 2");
  SoQData d;
  d.n = n;
  d.w = build_w(n);
  d.sigma = QScalar::q_pow(-1);

  if (!ybe_defect(d.w).is_zero()) throw std::domain_error("frt_build: Yang-Baxter failed");

  TensorOp swap = perm_op(n, {1, 0});
  d.what = swap * d.w;

  const QScalar q = QScalar::q();
  std::vector<QScalar> spec = {q, -QScalar::q_pow(-1), QScalar::q_pow(1 - n)};
  auto ps = lagrange_projectors(d.what, spec);  // validates the spectral identities
  d.p_plus = ps[0];
  d.p_minus = ps[1];
  d.p_zero = ps[2];
  if (rank(d.p_plus) != n * (n + 1) / 2 - 1) throw std::domain_error("frt_build: symmetric-traceless rank");
  if (rank(d.p_minus) != n * (n - 1) / 2) throw std::domain_error("frt_build: antisymmetric rank");
  if (rank(d.p_zero) != 1) throw std::domain_error("frt_build: trace-part rank");

  // Metric vector and covector from the rank-1 projector.
  auto first = d.p_zero.a.begin();
  if (first == d.p_zero.a.end()) throw std::domain_error("frt_build: empty trace projector");
  std::uint32_t r0 = first->first.first, c0 = first->first.second;
  QScalar lead = d.p_zero.at(r0, c0);
  d.eta = TensorVec(n, 2);
  d.eta_prime = TensorCovec(n, 2);
  for (const auto& [rc, v] : d.p_zero.a) {
    if (rc.second == c0) d.eta.add_to(rc.first, v / lead);
    if (rc.first == r0) d.eta_prime.add_to(rc.second, v);
  }
  if (outer(d.eta, d.eta_prime) != d.p_zero) throw std::domain_error("frt_build: trace projector not split");
  if (!pair(d.eta_prime, d.eta).is_one()) throw std::domain_error("frt_build: metric pairing not 1");
  if (!(apply(d.what, d.eta) == QScalar::q_pow(1 - n) * d.eta)) {
    throw std::domain_error("frt_build: metric vector not an eigenvector");
  }

  TensorOp id = tensor_identity(n, 2);
  d.r_hat = id - QScalar(2) * d.p_minus;
  if (d.r_hat * d.r_hat != id) throw std::domain_error("frt_build: involution failed");
  d.r = swap * d.r_hat;

  if (!check_reality(d.w)) throw std::domain_error("frt_build: reality failed");
  if (!check_metric_compat(d)) throw std::domain_error("frt_build: metric invariance failed");

  RatMat w1 = eval_at_one(d.w);
  if (w1 != rat_identity(static_cast<int>(d.w.dim()))) {
    throw std::domain_error("frt_build: classical limit of W is not the identity");
  }
  return d;
}

ClassicalLimit classical_limit(const SoQData& d) {
  int n = d.n;
  ClassicalLimit cl;
  cl.w = TensorOp(n, 2);
  for (const auto& [rc, v] : d.w.a) {
    auto t = v.taylor_at_one(1);
    GaussRational deriv = t[1];
    // Sanity: the constant term must match the identity matrix.
    GaussRational expect0 = rc.first == rc.second ? GaussRational(1) : GaussRational(0);
    if (!(t[0] == expect0)) throw std::domain_error("classical_limit: constant term mismatch");
    if (!deriv.is_zero()) cl.w.set(rc.first, rc.second, QScalar(deriv));
  }
  TensorOp swap = perm_op(n, {1, 0});
  TensorOp flipped = swap * cl.w * swap;
  QScalar half(Poly(GaussRational(Rat(1, 2))), Poly::one());
  cl.r = half * (cl.w - flipped);
  cl.s = half * (cl.w + flipped);
  return cl;
}

}  // namespace qiso
