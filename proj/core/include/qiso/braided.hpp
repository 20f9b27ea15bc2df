#pragma once

#include "qiso/frt.hpp"
#include "qiso/nc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qiso {

// Which two-leg coupler drives the vector-matrix rewrite: the R-matrix
// itself, or its negative (which reproduces all single-copy consistency
// checks but has no identity limit at q = 1).
enum class CouplerChoice { kPlus, kMinus };

// The quantum inhomogeneous algebra at size n: matrix and vector generators
// of one copy ("single_copy"), together with a primed duplicate and
// cross-commutation relations ("square") against which the comultiplication
// checks are stated. The braiding of the two vector copies is the scalar
// sigma: x'[j] x[k] = sigma x[k] x'[j].
struct BraidedAlgebra {
  int n = 0;
  SoQData soq;
  TensorOp w_prime;               // coupler used in the vector-matrix rewrite
  QScalar sigma;                  // scalar braiding of the two vector copies
  bool classical_limit_ok = true;  // coupler -> identity at q = 1
  bool small_n_degenerate = false; // n == 2: the antisymmetric projector has rank 1
  RelationSet single_copy;
  RelationSet square;
};

// Builds the algebra. The braiding scale defaults to the spectral value
// attached to the standard coupler (the eigenvalue negation that the
// antisymmetric projector demands); choosing the negated coupler leaves it
// unchanged, which surfaces as a vector-sector failure in the
// comultiplication check. sigma_override supports mutation tests.
BraidedAlgebra assemble(int n, CouplerChoice choice = CouplerChoice::kPlus,
                        std::optional<QScalar> sigma_override = std::nullopt);

// Relation builders, exposed for tests and reports. Entry conventions, with
// pack(i,k) = i + n*k for two-leg operator indices:
//   matrix-matrix:  sum_ab What[ik,ab] h[a,j] h[b,l] - sum_ab h[i,a] h[k,b] What[ab,jl]
//   vector-matrix:  x[k] h[i,j] - sum_ab Wp[ik,ab] h[a,j] x[b]
//   vector-vector:  sum_ab Pminus[jk,ab] x[a] x[b]
//   metric:         sum_ab eta[ab] h[i,a] h[k,b] - eta[ik]    (column form)
//                   sum_ab eta'[ab] h[a,j] h[b,l] - eta'[jl]  (row form)
std::vector<NCPoly> matrix_matrix_relations(const NCAlphabet& a, const TensorOp& what);
std::vector<NCPoly> vector_matrix_relations(const NCAlphabet& a, const TensorOp& w_prime);
std::vector<NCPoly> vector_vector_relations(const NCAlphabet& a, const TensorOp& p_minus);
std::vector<NCPoly> metric_relations(const NCAlphabet& a, const TensorVec& eta,
                                     const TensorCovec& eta_prime);
// Cross-commutation of the two copies: matrix letters commute with every
// primed letter; the vector copies braid by sigma.
std::vector<NCPoly> cross_relations(const NCAlphabet& a, const QScalar& sigma);

struct DeltaFamilyResult {
  std::string name;
  std::size_t probes = 0;
  std::size_t failures = 0;
  bool passed = false;
  NCPoly first_residual;  // first nonzero residual encountered, if any
};

struct DeltaReport {
  std::vector<DeltaFamilyResult> families;
  bool matrix_lemma_holds = false;       // two-leg projector condition for (w', sigma)
  bool expansion_matches_lemma = false;  // vector-vector verdict agrees with the lemma
  bool all_passed() const;
};

// Verifies that the comultiplication h -> h h', x -> x + h x' maps every
// defining relation of the single copy into the two-copy ideal, by full
// expansion and exact reduction. The vector-vector family is additionally
// compared against the projector-condition shortcut; the report records
// whether the two verdicts agree.
DeltaReport check_delta_preserves(const BraidedAlgebra& alg);

struct MatrixLemmaResult {
  bool holds = false;                 // p_minus (what + sigma id) = 0
  TensorOp defect;                    // the two-leg product itself
  bool three_leg_consistent = false;  // the assembled three-leg operator
                                      // vanishes under p_minus[12] iff the
                                      // two-leg condition holds
};
MatrixLemmaResult check_matrix_lemma(const SoQData& d, const QScalar& sigma);

struct UnbraidedObstruction {
  bool nonzero_symbolic = false;        // YBE defect of the involutive coupler
  bool zero_at_classical_point = false; // the defect vanishes entrywise at q = 1
  std::size_t defect_entries = 0;
};
UnbraidedObstruction obstruction_unbraided(const SoQData& d);

// Compares the spans of the two one-sided vector-matrix rewrite families for
// a given (non-braid-form) coupler:
//   left:   x[k] h[i,j] - sum C[ik,ab] h[a,j] x[b]
//   right:  h[k,l] x[i] - sum C[ik,ab] x[a] h[b,l]
// The spans coincide exactly when the braid form of the coupler is an
// involution.
struct RewriteSpanReport {
  bool involutive = false;
  bool spans_equal = false;
  std::size_t rank_left = 0;
  std::size_t rank_right = 0;
  std::size_t rank_union = 0;
};
RewriteSpanReport rewrite_span_equivalence(int n, const TensorOp& coupler);

struct RealityPropagation {
  bool relations_star_closed = false;   // star of each vector-matrix relation
                                        // stays in the single-copy ideal
  bool coupler_unitary = false;         // w' star(w') = identity
  bool implication_consistent = false;  // the two verdicts agree
};
RealityPropagation check_reality_propagation(const SoQData& d, const TensorOp& w_prime);

// Exact interchange identities for mixed reorderings on three legs, with mm
// the matrix-matrix exchange operator and vm the vector-matrix coupler (both
// non-braid form):
//   mm[12] vm[13] vm[23] == vm[23] vm[13] mm[12]
//   vm[12] vm[13] mm[23] == mm[23] vm[13] vm[12]
// These are the consistency conditions behind reordering a mixed triple two
// ways; their failure signals over-collapse in the mixed graded components.
struct MixedInterchange {
  bool mm_vm_consistent = false;
  bool vm_mm_consistent = false;
  TensorOp defect_mm_vm;
  TensorOp defect_vm_mm;
};
MixedInterchange mixed_interchange(const TensorOp& mm, const TensorOp& vm);

}  // namespace qiso
