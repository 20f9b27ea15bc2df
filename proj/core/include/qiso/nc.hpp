#pragma once

#include "qiso/linalg.hpp"
#include "qiso/qscalar.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace qiso {

// Generator sorts of the two-copy coordinate algebra, in the fixed total
// order used for canonical words: matrix entries of the first copy, matrix
// entries of the second copy, vector components of the first copy, vector
// components of the second copy.
enum class Sort : std::uint8_t { kMat = 0, kMatP = 1, kVec = 2, kVecP = 3 };

inline constexpr int kNumSorts = 4;

// Letter counts per sort for the unit parameter n: n^2, n^2, n, n.
// Letters are packed sort-major so that the numeric order of letter ids
// refines the sort order.
class NCAlphabet {
 public:
  NCAlphabet() = default;
  explicit NCAlphabet(int n);

  int n() const { return n_; }
  int count() const { return 2 * n_ * n_ + 2 * n_; }
  int count(Sort s) const { return (s == Sort::kVec || s == Sort::kVecP) ? n_ : n_ * n_; }

  std::uint16_t h(int i, int j) const;    // first-copy matrix entry
  std::uint16_t hp(int i, int j) const;   // second-copy matrix entry
  std::uint16_t x(int i) const;           // first-copy vector component
  std::uint16_t xp(int i) const;          // second-copy vector component
  // k-th letter of the given sort, 0 <= k < count(s).
  std::uint16_t letter(Sort s, int k) const;

  Sort sort(std::uint16_t l) const;
  bool primed(std::uint16_t l) const;
  // (i, j) for matrix letters, (i, -1) for vector letters.
  std::pair<int, int> indices(std::uint16_t l) const;
  std::string name(std::uint16_t l) const;  // "h[i,j]", "h'[i,j]", "x[i]", "x'[i]"

 private:
  int n_ = 0;
};

// A word in the free algebra: a sequence of letter ids. The empty word is
// the unit.
using Word = std::vector<std::uint16_t>;

// Degree-lexicographic order: shorter words first, ties broken by the
// letter-id sequence. Canonical forms and complements are stated in this
// order throughout.
struct DegLexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Letter counts per sort of a word.
using SortDegree = std::array<int, kNumSorts>;

SortDegree word_degree(const NCAlphabet& a, const Word& w);
int total(const SortDegree& d);
std::string degree_str(const SortDegree& d);

// Element of the free associative algebra over the exact scalar field:
// finitely many words with nonzero coefficients, kept in degree-lex order.
class NCPoly {
 public:
  NCPoly() = default;
  explicit NCPoly(QScalar c);  // constant multiple of the unit

  static NCPoly letter(std::uint16_t l);
  static NCPoly word(Word w, QScalar c = QScalar(1));

  bool is_zero() const { return terms_.empty(); }
  const std::map<Word, QScalar, DegLexLess>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  // Length of the longest word; 0 for constants and for the zero element.
  int top_degree() const;
  void add_term(const Word& w, const QScalar& c);

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly operator-() const;
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(const QScalar& s, const NCPoly& p);
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b);  // concatenation product
  friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const NCPoly& a, const NCPoly& b) { return !(a == b); }

  // Anti-involution: reverses every word and stars every coefficient; the
  // letters themselves are fixed (the generators are self-adjoint).
  NCPoly star_involution() const;

  std::string str(const NCAlphabet& a) const;

 private:
  std::map<Word, QScalar, DegLexLess> terms_;
};

// Substitution implementing the standard comultiplication on the generators:
//   h[i,j] -> sum_a h[i,a] h'[a,j]        x[i] -> x[i] + sum_a h[i,a] x'[a]
// Input must use unprimed letters only; throws std::invalid_argument else.
NCPoly comultiply(const NCAlphabet& a, const NCPoly& p);

// Renames every unprimed letter to its primed twin. Throws on primed input.
NCPoly to_primed(const NCAlphabet& a, const NCPoly& p);

// A presentation by quadratic relations with optional lower-degree tails.
// Each relation must be nonzero, of top degree exactly 2, with all degree-2
// words sharing one sort multidegree; lower terms (degree <= 1) are allowed
// and make the relation inhomogeneous (e.g. quadric-minus-constant).
struct RelationSet {
  int n = 0;                  // alphabet parameter
  std::vector<NCPoly> rels;
};

// Outcome of a membership reduction: the canonical residual of the probe in
// the complement of the accumulated relation span. The complement basis is
// the set of words that are not leading words of the span; since leading
// words are degree-lex maximal, the residual is supported on the degree-lex
// least representatives, deterministically.
struct NCReduction {
  bool in_ideal = false;
  NCPoly residual;
};

// Hard cap on total word degree in every reduction and dimension count.
inline constexpr int kNCDegreeCap = 5;

// Linear-algebra engine for two-sided quadratic ideals. Dimensions and
// memberships are computed by exact rank over spans of two-sided shifts
// u * rel * v; no completion procedure is attempted. Membership certificates
// are searched among combinations whose leading multidegree stays within the
// probe's total degree (and the hard cap); elements whose certificates would
// need a higher-degree detour are conservatively reported as non-members.
class NCReducer {
 public:
  NCReducer() = default;
  explicit NCReducer(RelationSet rs);

  const RelationSet& relation_set() const { return rs_; }
  const NCAlphabet& alphabet() const { return alphabet_; }

  // Number of words of the given multidegree in the free algebra.
  static long long word_count(const NCAlphabet& a, const SortDegree& mu);
  // All words of the given multidegree, in degree-lex order.
  static std::vector<Word> words_of_degree(const NCAlphabet& a, const SortDegree& mu);

  // Dimension of the multidegree-mu component of the quotient by the ideal
  // generated by the degree-2 leading parts of the relations (tails are
  // dropped, so this is the associated graded count). Requires total(mu)
  // within the degree cap.
  long long graded_dimension(const SortDegree& mu);

  // Canonical reduction of p modulo the two-sided ideal spanned by the full
  // relations (tails included), restricted as documented above. The span is
  // cached and grows monotonically; residuals are history-independent
  // because rows never mix multidegree chains.
  NCReduction reduce(const NCPoly& p);

 private:
  struct Rel {
    NCPoly p;          // full relation
    NCPoly top;        // degree-2 leading part
    SortDegree top_mu;
  };

  void process_target(const SortDegree& mu);
  std::set<SortDegree> closure_targets(const NCPoly& p) const;

  RelationSet rs_;
  NCAlphabet alphabet_;
  std::vector<Rel> rels_;
  std::vector<SortDegree> steps_;  // top-to-tail multidegree jumps of inhomogeneous relations
  SparseRref<Word, DegLexLess> span_;
  std::set<SortDegree> processed_;
  std::size_t rows_inserted_ = 0;
};

// Reduction in the two-copy algebra whose cross relations let every primed
// letter slide right past every unprimed letter, picking up one factor of
// vec_swap_scale for each (x', x) crossing and 1 otherwise. Membership in
// the two-copy ideal then factorizes: normal-order the probe, reduce the
// unprimed and primed halves independently, and recombine. Valid because
// both single-copy relation sets are sort-homogeneous, so sliding a letter
// across a relation multiplies it by one common scalar.
class CrossedProductReducer {
 public:
  CrossedProductReducer(RelationSet unprimed, RelationSet primed, QScalar vec_swap_scale);

  const NCAlphabet& alphabet() const { return unprimed_.alphabet(); }

  // Probe rewritten with all primed letters to the right of all unprimed
  // ones, relative orders preserved within each class.
  NCPoly normal_order(const NCPoly& p) const;

  NCReduction reduce(const NCPoly& p);

 private:
  NCReducer unprimed_;
  NCReducer primed_;
  QScalar sigma_;
  std::map<Word, NCPoly, DegLexLess> memo_primed_;
};

// Per-multidegree comparison of the quotient's graded dimension against the
// commutative-polynomial count with the same letter supply, over all total
// degree 3 multidegrees supported on the sorts the relations touch. A
// quotient strictly below the commutative count signals over-collapse from
// unresolved rewriting overlaps.
struct OverlapEntry {
  SortDegree mu;
  long long quotient_dim = 0;
  long long classical_dim = 0;
  bool collapsed = false;
};

struct DiamondReport {
  std::vector<OverlapEntry> entries;
  bool any_collapse = false;
};

DiamondReport diamond_overlap_report(NCReducer& red);

}  // namespace qiso
