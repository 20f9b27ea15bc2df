// Poisson structures on the inhomogeneous orthogonal group: coefficient
// polynomials, generator bracket tables, Jacobi sweeps, the quadratic Casimir
// element and its Drinfeld obstruction, and the cross-copy braiding check.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qiso/linalg.hpp"
#include "qiso/tensor.hpp"

namespace qiso {

// ---------------------------------------------------------------------------
// Commutative polynomials in the matrix entries h^i_j, the vector entries x^i,
// and a second primed copy of both.  A monomial is the sorted list of its
// variable ids; coefficients are Gaussian rationals.
// ---------------------------------------------------------------------------

using Mono = std::vector<std::uint16_t>;

// Variable ids for coordinate functions on the doubled group.
struct VarTable {
  int n = 0;

  explicit VarTable(int n_) : n(n_) {}

  std::uint16_t h(int i, int j) const { return static_cast<std::uint16_t>(i * n + j); }
  std::uint16_t x(int i) const { return static_cast<std::uint16_t>(n * n + i); }
  std::uint16_t hp(int i, int j) const {
    return static_cast<std::uint16_t>(n * n + n + i * n + j);
  }
  std::uint16_t xp(int i) const { return static_cast<std::uint16_t>(2 * n * n + n + i); }
  int count() const { return 2 * (n * n + n); }

  // Kind decoding: 0 = h, 1 = x, 2 = h', 3 = x'.
  int kind(std::uint16_t v) const;
  bool primed(std::uint16_t v) const { return kind(v) >= 2; }
  bool vector_kind(std::uint16_t v) const { return kind(v) % 2 == 1; }
  // For h-kinds returns (i, j); for x-kinds returns (i, -1).
  std::pair<int, int> indices(std::uint16_t v) const;
  std::string name(std::uint16_t v) const;
};

class PPoly {
 public:
  PPoly() = default;
  explicit PPoly(GaussRational c);
  static PPoly var(std::uint16_t v);
  static PPoly monomial(Mono m, GaussRational c);

  bool is_zero() const { return t_.empty(); }
  std::size_t term_count() const { return t_.size(); }
  const std::map<Mono, GaussRational>& terms() const { return t_; }
  GaussRational coeff(const Mono& m) const;
  void add_term(const Mono& m, const GaussRational& c);

  PPoly operator+(const PPoly& o) const;
  PPoly operator-(const PPoly& o) const;
  PPoly operator-() const;
  PPoly operator*(const PPoly& o) const;
  PPoly& operator+=(const PPoly& o);
  PPoly& operator-=(const PPoly& o);
  bool operator==(const PPoly& o) const { return t_ == o.t_; }
  bool operator!=(const PPoly& o) const { return !(*this == o); }

  friend PPoly operator*(const GaussRational& c, const PPoly& p);

  std::string str(const VarTable& vt) const;

 private:
  std::map<Mono, GaussRational> t_;
};

// ---------------------------------------------------------------------------
// Bracket data.  The generator table is
//   {h^i_j, h^k_l} =  c^{ik}_{ab} h^a_j h^b_l - h^i_a h^k_b c^{ab}_{jl}
//   {x^i,   h^k_l} =  w^{ik}_{ab} x^a h^b_l + b^{ik}_d h^d_l - h^i_a h^k_b b^{ab}_l
//   {x^i,   x^k  } =  c^{ik}_{ab} x^a x^b + b^{ik}_d x^d - b^{ki}_d x^d
//                     + a^{ik} - h^i_a h^k_b a^{ab}
// with the same table on the primed copy, and the only cross-copy bracket
//   {x'^k, x^j} = nu x^j x'^k   (all other cross pairs vanish).
// Couplers are constant matrices: rows and columns of c and w are pair
// indices (i, k) -> i + n*k.
// ---------------------------------------------------------------------------

struct PoissonSpec {
  int n = 0;
  RatMat c;                      // n^2 x n^2
  RatMat w;                      // n^2 x n^2; equals c in the unextended table
  RatMat b;                      // n^2 x n, empty means zero
  std::vector<GaussRational> a;  // n^2, empty means zero
  std::optional<GaussRational> nu;  // cross-copy coefficient, empty means zero
  RatMat s_sym;                  // symmetric part with w = c + s_sym, may be empty
  RatMat eta;                    // classical metric: coordinates satisfy h^T eta h = eta;
                                 // empty means unconstrained (free polynomial) coordinates
};

class PoissonAlgebra {
 public:
  explicit PoissonAlgebra(PoissonSpec spec);

  const PoissonSpec& spec() const { return spec_; }
  const VarTable& vars() const { return vt_; }

  // Bracket of two generators, cached.
  const PPoly& gen_bracket(std::uint16_t u, std::uint16_t v) const;
  // Bilinear Leibniz extension to polynomials.
  PPoly bracket(const PPoly& f, const PPoly& g) const;
  // {{f,g},h} + {{g,h},f} + {{h,f},g}.
  PPoly jacobiator(const PPoly& f, const PPoly& g, const PPoly& h) const;

 private:
  PPoly compute_gen(std::uint16_t u, std::uint16_t v) const;

  PoissonSpec spec_;
  VarTable vt_;
  mutable std::vector<PPoly> cache_;
  mutable std::vector<char> cached_;
};

// ---------------------------------------------------------------------------
// Group-ideal semantics.  When a classical metric is present the coordinate
// functions live on the special isometry group h^T eta h = eta, det h = 1
// (one copy each); a defect polynomial counts as zero iff it vanishes there.
// Both verdicts come with exact certificates: a nonzero value at an exact
// rational group point proves the defect survives, and an explicit
// representation in terms of the relation polynomials (found by sparse
// elimination over multiplier monomials of the matching multidegree) proves
// it vanishes.  Some quadratic minor identities hold only with det h = 1,
// which is why the relation set carries the compound-matrix pairings and not
// just the quadrics.
// ---------------------------------------------------------------------------

enum class OnGroup { kZero, kInIdeal, kNonzero, kUndecided };

// Exact point of the group {h : h^T eta h = eta}: the Cayley transform
// (I - X)^{-1}(I + X) of a seeded random eta-skew matrix X.
RatMat random_orthogonal_point(const RatMat& eta, std::uint32_t seed);

// Evaluates f at the assignment var id -> values[id].
GaussRational eval_poly(const PPoly& f, const std::vector<GaussRational>& values);

class GroupReducer {
 public:
  // eta empty: free coordinates (only the zero polynomial vanishes).
  GroupReducer(VarTable vt, RatMat eta);

  OnGroup classify(const PPoly& f) const;
  // Relation polynomials (both copies) spanning the vanishing ideal of the
  // special isometry group: the orthogonality quadrics in both orientations
  // and, for every minor size k, the Laplace pairing of the k-th compound
  // matrix with its complementary cofactors (k = n is det - 1).
  std::vector<PPoly> relations() const;

 private:
  struct Relation {
    PPoly p;
    int copy = 0;      // which matrix block the relation's entries belong to
    int lo = 0;        // lowest degree present in that block's entries
  };
  struct SpanState {
    int next_layer = 0;
    std::size_t rows = 0;
    SparseRref<Mono> span;
  };

  PPoly reduce_component(const PPoly& f, const std::array<int, 4>& mdeg) const;

  VarTable vt_;
  RatMat eta_;
  std::vector<Relation> rels_;
  std::vector<std::vector<GaussRational>> points_;      // full variable assignments
  mutable std::map<std::array<int, 4>, SpanState> spans_;
};

// ---------------------------------------------------------------------------
// Jacobi sweep and closed-form defects.
// ---------------------------------------------------------------------------

struct JacobiFailure {
  std::uint16_t u = 0, v = 0, w = 0;
  PPoly defect;
  OnGroup status = OnGroup::kNonzero;
};

struct JacobiReport {
  std::size_t triples_checked = 0;
  std::size_t identically_zero = 0;
  std::size_t vanish_mod_relations = 0;
  std::vector<JacobiFailure> failures;  // status kNonzero or kUndecided
  bool passed() const { return failures.empty(); }
};

// Sweeps the Jacobi identity over every unordered triple of distinct
// generators of both copies; the Jacobiator vanishes identically when two
// arguments coincide, so distinct triples are exhaustive.  Nonzero defects
// are classified against the metric relations when spec.eta is present.
JacobiReport check_jacobi_all_generators(const PoissonAlgebra& alg);

// [[rho, rho]] = [rho_12, rho_13] + [rho_12, rho_23] + [rho_13, rho_23]
// for a 2-leg tensor rho, returned on 3 legs.
TensorOp drinfeld_bracket(const TensorOp& rho);

// Closed forms for the Jacobiator on one copy, as 3-leg coefficient tensors:
//   (h,h,h): J = D h_1h_2h_3 - h_1h_2h_3 D            with D = [[c,c]]
//   (x,h,h): J = ([w_12,w_13] + [w_12 + w_13, c_23]) x_1h_2h_3
//   (x,x,h): J = ([c_12, w_13 + w_23] + [w_13,w_23]) x_1x_2h_3
//   (x,x,x): J = D x_1x_2x_3
// Valid when b and a vanish.
struct ClosedForms {
  int n = 0;
  TensorOp d;    // [[c,c]]
  TensorOp xhh;  // [w_12,w_13] + [w_12 + w_13, c_23]
  TensorOp xxh;  // [c_12, w_13 + w_23] + [w_13, w_23]
};
ClosedForms make_closed_forms(const PoissonAlgebra& alg);

// `primed` selects the second copy's variables.
PPoly closed_jacobiator_hhh(const PoissonAlgebra& alg, const ClosedForms& cf, int i,
                            int j, int k, int l, int m, int p, bool primed = false);
PPoly closed_jacobiator_xhh(const PoissonAlgebra& alg, const ClosedForms& cf, int i,
                            int k, int l, int m, int p, bool primed = false);
PPoly closed_jacobiator_xxh(const PoissonAlgebra& alg, const ClosedForms& cf, int i,
                            int k, int m, int p, bool primed = false);
PPoly closed_jacobiator_xxx(const PoissonAlgebra& alg, const ClosedForms& cf, int i,
                            int k, int m, bool primed = false);

// Determinant -1 isometry of the nondegenerate symmetric form g (a reflection
// in an anisotropic vector).
RatMat metric_reflection(const RatMat& g);

// True when the multi-leg tensor commutes with X(x)I(x)..I + .. + I(x)..(x)X
// for every X in so(g): invariance under the special isometry group.  Entries
// of [t, h(x)..(x)h] then vanish identically on that group.
bool invariant_under_rotations(const TensorOp& t, const RatMat& g);

// invariant_under_rotations plus commutation with the leg-wise conjugation by
// one reflection: invariance under both components of the isometry group.
bool invariant_under_isometries(const TensorOp& t, const RatMat& g);

// ---------------------------------------------------------------------------
// The quadratic Casimir element of so(g) and its Drinfeld obstruction.
// ---------------------------------------------------------------------------

// s~^{jk}_{lm} = (g^{-1})^{jk} g_{lm} - delta^j_m delta^k_l as a constant
// 2-leg operator (row (j,k), column (l,m)).  Requires g symmetric invertible.
TensorOp killing_element(const RatMat& g);

// Omega = [s~_12, s~_13] on 3 legs.
TensorOp omega(const RatMat& g);

// The same element written out by hand:
//   Omega^{abc}_{jkl} =  g^{ab} g_{jl} d^c_k + g^{ac} g_{kl} d^b_j + g^{bc} g_{jk} d^a_l
//                      - g^{ab} g_{kl} d^c_j - g^{bc} g_{jl} d^a_k - g^{ac} g_{jk} d^b_l
//                      + d^a_k d^b_l d^c_j - d^a_l d^b_j d^c_k.
TensorOp omega_closed_form(const RatMat& g);

// Basis of so(g) = { X : X^T g + g X = 0 } as matrices.
std::vector<RatMat> so_basis(const RatMat& g);

// Rotation and boost generators for g = diag(1,-1,-1,-1), with
// (M_i)_{kj} = epsilon_{ijk} (epsilon_{123} = +1) and L_i = E_{0i} + E_{i0}.
struct LorentzGenerators {
  RatMat eta;
  std::vector<RatMat> m;  // rotations M_1, M_2, M_3
  std::vector<RatMat> l;  // boosts    L_1, L_2, L_3
};
LorentzGenerators lorentz_generators();

// Sum_i A_i ox B_i as a constant 2-leg operator.
TensorOp pair_sum(const std::vector<RatMat>& a, const std::vector<RatMat>& b);

// ---------------------------------------------------------------------------
// Braiding coefficient and gradings.
// ---------------------------------------------------------------------------

struct BraidingCheck {
  bool solvable = false;
  GaussRational nu;            // meaningful when solvable
  std::size_t monomials = 0;   // distinct monomial constraints examined
};

// Determines whether  (s - Ps) x_1 h_2 x'_2  =  nu (h_2 {x_1, x'_2}-shape)
// can be cancelled by a cross bracket {x'^k, x^j} = nu x^j x'^k: expands
//   E^{jk} = (s - Ps)^{jk}_{ab} x^a h^b_c x'^c - nu h^k_c x^j x'^c
//                                             + nu h^j_c x^k x'^c
// for all (j,k) and solves the linear system for nu.  s is a constant 2-leg
// coupler on V ox V with rows (j,k) -> j + n*k.
BraidingCheck check_braiding_equation(int n, const RatMat& s);

// True when every generator bracket is homogeneous for the grading that
// counts x and x' degrees (h's have degree 0).  Fails when a != 0.
bool check_dilation_grading(const PoissonAlgebra& alg);

// If t is a nonzero scalar multiple of u, returns the ratio.
std::optional<GaussRational> proportionality_ratio(const TensorOp& t,
                                                   const TensorOp& u);

}  // namespace qiso
