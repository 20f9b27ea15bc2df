#pragma once

#include "qiso/linalg.hpp"
#include "qiso/qscalar.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

namespace qiso {

// Multi-index packing for tensor legs over an n-dimensional space: leg 0 is
// the least significant digit, idx = i_0 + n*i_1 + n^2*i_2 + ...
std::uint32_t pack_index(int n, const std::vector<int>& digits);
std::vector<int> unpack_index(int n, int legs, std::uint32_t idx);
std::uint64_t tensor_dim(int n, int legs);

// Sparse exact linear operator on (C^n)^{tensor legs}. Entries map
// (row, col) -> coefficient; zero entries are never stored.
struct TensorOp {
  int n = 0;
  int legs = 0;
  std::map<std::pair<std::uint32_t, std::uint32_t>, QScalar> a;

  TensorOp() = default;
  TensorOp(int n_, int legs_) : n(n_), legs(legs_) {}

  std::uint64_t dim() const { return tensor_dim(n, legs); }
  bool is_zero() const { return a.empty(); }
  const QScalar& at(std::uint32_t r, std::uint32_t c) const;
  void set(std::uint32_t r, std::uint32_t c, QScalar v);
  void add_to(std::uint32_t r, std::uint32_t c, const QScalar& v);
  size_t nnz() const { return a.size(); }

  bool operator==(const TensorOp& o) const { return n == o.n && legs == o.legs && a == o.a; }
  bool operator!=(const TensorOp& o) const { return !(*this == o); }
};

TensorOp tensor_identity(int n, int legs);
TensorOp operator+(const TensorOp& x, const TensorOp& y);
TensorOp operator-(const TensorOp& x, const TensorOp& y);
TensorOp operator*(const QScalar& s, const TensorOp& x);
// Operator composition (x then applied after y): (x*y) v = x (y v).
TensorOp operator*(const TensorOp& x, const TensorOp& y);

// Operator permuting tensor legs: input slot t is routed to output slot
// perm[t], so on decomposables P(v_0 ox ... ox v_{k-1}) places v_t at
// position perm[t]. perm must be a permutation of 0..legs-1.
TensorOp perm_op(int n, const std::vector<int>& perm);

// Embeds a (small) operator acting on the listed legs (in order) into an
// operator on total_legs legs, identity elsewhere. positions are 0-based,
// distinct; positions.size() == x.legs.
TensorOp embed(const TensorOp& x, int total_legs, const std::vector<int>& positions);

// Entrywise transpose of the operator (swap row/col multi-indices).
TensorOp transpose_op(const TensorOp& x);

// Entrywise application of the scalar star (q -> 1/q, i -> -i).
TensorOp star(const TensorOp& x);

// Entrywise classical limit q = 1; throws if any entry has a pole there.
RatMat eval_at_one(const TensorOp& x);

// Constant operator from a dense matrix of size dim(n, legs).
TensorOp op_from_matrix(int n, int legs, const RatMat& m);

// Column vector / row covector on legs tensor factors.
struct TensorVec {
  int n = 0;
  int legs = 0;
  std::map<std::uint32_t, QScalar> a;
  TensorVec() = default;
  TensorVec(int n_, int legs_) : n(n_), legs(legs_) {}
  bool is_zero() const { return a.empty(); }
  void add_to(std::uint32_t i, const QScalar& v);
  bool operator==(const TensorVec& o) const { return n == o.n && legs == o.legs && a == o.a; }
};
struct TensorCovec {
  int n = 0;
  int legs = 0;
  std::map<std::uint32_t, QScalar> a;
  TensorCovec() = default;
  TensorCovec(int n_, int legs_) : n(n_), legs(legs_) {}
  bool is_zero() const { return a.empty(); }
  void add_to(std::uint32_t i, const QScalar& v);
  bool operator==(const TensorCovec& o) const { return n == o.n && legs == o.legs && a == o.a; }
};

TensorVec operator+(const TensorVec& x, const TensorVec& y);
TensorVec operator-(const TensorVec& x, const TensorVec& y);
TensorVec operator*(const QScalar& s, const TensorVec& x);
TensorVec apply(const TensorOp& x, const TensorVec& v);
TensorCovec apply(const TensorCovec& c, const TensorOp& x);
QScalar pair(const TensorCovec& c, const TensorVec& v);
TensorOp outer(const TensorVec& v, const TensorCovec& c);
TensorVec tensor_prod(const TensorVec& x, const TensorVec& y);

// Exact rank over the scalar field. Division-controlled elimination with the
// pivot chosen by lowest entry degree, then sparsest row (deterministic).
int rank(const TensorOp& x);

// Basis of the right kernel {v : x v = 0}, canonical reduced echelon form.
std::vector<TensorVec> kernel_basis(const TensorOp& x);

// Spectral (Lagrange) projectors of a diagonalizable operator with the given
// pairwise-distinct eigenvalues: P_i = prod_{j != i} (x - mu_j) / (mu_i - mu_j).
// Validates prod(x - mu_i) = 0, idempotence, orthogonality, sum = identity and
// sum mu_i P_i = x; throws std::domain_error when any of these fail.
std::vector<TensorOp> lagrange_projectors(const TensorOp& x, const std::vector<QScalar>& eigenvalues);

// Composition with the full symmetrizer on three legs: x * (1/6) sum_{s in S3} P_s.
TensorOp right_symmetrize3(const TensorOp& x);

// Plain-text serialization: a header line "legs n", then one line per entry
// "row col | qscalar" in ascending (row, col) order.
void dump(std::ostream& os, const TensorOp& x);
TensorOp parse_tensor(std::istream& is);
std::string dump_str(const TensorOp& x);
TensorOp parse_tensor_str(const std::string& s);

}  // namespace qiso
