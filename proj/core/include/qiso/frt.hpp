#pragma once

#include "qiso/tensor.hpp"

#include <optional>

namespace qiso {

// Doubled Weyl-vector exponents 2*rho_i (integers) entering the orthogonal
// R-matrix; antisymmetric under i -> n-1-i, with rho_0 = n/2 - 1.
std::vector<int> rho_doubled(int n);

// The orthogonal R-matrix data for the n-dimensional vector representation,
// built and structurally validated over exact scalars.
struct SoQData {
  int n = 0;
  TensorOp w;        // R-matrix W on V ox V (2 legs)
  TensorOp what;     // braid form: swap composed with W
  TensorOp p_plus;   // spectral projector at eigenvalue q
  TensorOp p_minus;  // spectral projector at eigenvalue -1/q
  TensorOp p_zero;   // rank-1 spectral projector at eigenvalue q^{1-n}
  TensorOp r_hat;    // involutive normalization: identity - 2 p_minus
  TensorOp r;        // swap composed with r_hat
  TensorVec eta;        // invariant metric vector in V ox V (column of p_zero)
  TensorCovec eta_prime;  // matching row, with <eta_prime, eta> = 1
  QScalar sigma;     // braiding scale 1/q
};

// Constructs SoQData for n >= 2 and verifies, exactly:
//   * Yang-Baxter for W in non-braid form,
//   * spectrum of what is {q, -1/q, q^{1-n}} with projector ranks
//     n(n+1)/2 - 1, n(n-1)/2, 1,
//   * p_zero = eta ox eta_prime with <eta_prime, eta> = 1 and
//     what eta = q^{1-n} eta,
//   * r_hat is an involution,
//   * reality W star(W) = identity,
//   * metric invariance (W13 W23)(eta ox e_c) = eta ox e_c,
//   * classical limit W|_{q=1} = identity.
// Throws std::domain_error naming the first failed property.
SoQData frt_build(int n);

// T12 T13 T23 - T23 T13 T12 for a 2-leg operator, on 3 legs.
TensorOp ybe_defect(const TensorOp& t);

// Entrywise star reality: t star(t) = identity.
bool check_reality(const TensorOp& t);

// Invariance of the metric vector under the two-leg coaction braiding:
// (W13 W23)(eta ox e_c) = eta ox e_c for every basis vector e_c.
bool check_metric_compat(const SoQData& d);

// Scans sigma in {+-q^k : |k| <= n} and returns the unique sigma with
// proj (what + sigma id) = 0, or nullopt if none or several match.
std::optional<QScalar> check_spectral_condition(const TensorOp& proj, const TensorOp& what, int n);

// First-order data at q = 1 (entries are exact rational constants):
// w = d/dt W|_{t=0} with q = 1 + t, r/s its (anti)symmetric parts under
// simultaneous swap conjugation.
struct ClassicalLimit {
  TensorOp w;
  TensorOp r;
  TensorOp s;
};
ClassicalLimit classical_limit(const SoQData& d);

}  // namespace qiso
