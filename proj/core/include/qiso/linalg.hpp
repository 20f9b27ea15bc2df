#pragma once

#include "qiso/qscalar.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace qiso {

// Reduced row echelon span over Q(i)(v) with sparse rows keyed by an ordered
// key type. The pivot of a row is its maximal key under Less; rows are kept
// fully inter-reduced with pivot coefficient 1, so reduce() yields a canonical
// residual supported on non-pivot keys.
template <typename Key, typename Less = std::less<Key>>
class SparseRref {
 public:
  using Row = std::map<Key, QScalar, Less>;

  const std::map<Key, Row, Less>& rows() const { return rows_; }
  size_t rank() const { return rows_.size(); }

  // Fully reduces p against the current span (in place).
  void reduce(Row& p) const {
    // Walk terms from the largest key down; reductions only introduce smaller keys.
    while (true) {
      auto it = p.rbegin();
      Row const* hit = nullptr;
      Key at{};
      for (; it != p.rend(); ++it) {
        if (it->second.is_zero()) continue;
        auto r = rows_.find(it->first);
        if (r != rows_.end()) {
          hit = &r->second;
          at = it->first;
          break;
        }
      }
      if (!hit) break;
      QScalar f = p[at];
      axpy(p, -f, *hit);
    }
    prune(p);
  }

  // Reduces p; if a nonzero residual remains, normalizes and inserts it and
  // back-eliminates its pivot from existing rows. Returns true if rank grew.
  bool insert(Row p) {
    reduce(p);
    if (p.empty()) return false;
    Key lead = p.rbegin()->first;
    QScalar linv = QScalar(1) / p.rbegin()->second;
    for (auto& [k, c] : p) c *= linv;
    for (auto& [l, row] : rows_) {
      auto e = row.find(lead);
      if (e == row.end()) continue;
      QScalar f = e->second;
      axpy(row, -f, p);
      prune(row);
    }
    rows_.emplace(lead, std::move(p));
    return true;
  }

 private:
  static void axpy(Row& dst, const QScalar& f, const Row& src) {
    for (const auto& [k, c] : src) {
      auto it = dst.find(k);
      if (it == dst.end()) {
        dst.emplace(k, f * c);
      } else {
        it->second += f * c;
      }
    }
  }
  static void prune(Row& r) {
    for (auto it = r.begin(); it != r.end();) {
      if (it->second.is_zero()) {
        it = r.erase(it);
      } else {
        ++it;
      }
    }
  }

  std::map<Key, Row, Less> rows_;
};

// Dense exact matrices over Q(i) for the q = 1 (classical) layer.
using RatMat = std::vector<std::vector<GaussRational>>;

RatMat rat_identity(int n);
RatMat rat_mul(const RatMat& a, const RatMat& b);
RatMat rat_transpose(const RatMat& a);
bool rat_is_zero(const RatMat& a);
int rat_rank(RatMat a);
// Basis of the right kernel {x : a x = 0}.
std::vector<std::vector<GaussRational>> rat_kernel(RatMat a);
// Inverse; throws std::domain_error if singular.
RatMat rat_inverse(RatMat a);

// Symmetric congruence diagonalization: returns C with C^T a C diagonal.
// Requires a symmetric; real (rational) entries.
struct Congruence {
  RatMat transform;            // C
  std::vector<Rat> diagonal;   // diag(C^T a C)
};
Congruence congruence_diagonalize(const RatMat& a);

// Signature (positive count, negative count, zero count) of a symmetric
// rational matrix, via exact congruence diagonalization.
struct Signature {
  int positive = 0, negative = 0, zero = 0;
};
Signature rat_signature(const RatMat& a);

// Exact congruence S with S^T g_from S = g_to, when both forms reduce to the
// same +/-1 diagonal canonical shape over Q (square factors of small entries
// are extracted exactly). Returns nullopt when the canonical shapes differ.
std::optional<RatMat> congruence_transform(const RatMat& g_from, const RatMat& g_to);

}  // namespace qiso
