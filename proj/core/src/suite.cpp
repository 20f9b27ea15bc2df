#include "qiso/suite.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qiso/braided.hpp"
#include "qiso/frt.hpp"
#include "qiso/nc.hpp"
#include "qiso/poisson.hpp"

namespace qiso {

namespace {

long long binom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long t = 0; t < k; ++t) r = r * (n - t) / (t + 1);
  return r;
}

RatMat antidiag_ones(int n) {
  RatMat g(static_cast<std::size_t>(n),
           std::vector<GaussRational>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)][static_cast<std::size_t>(n - 1 - i)] = GaussRational(1);
  }
  return g;
}

// The classical bracket specification induced by the first-order coupler
// data; full_coupler selects w = c + s (consistent) over w = c (the variant
// whose Jacobi sweep must fail on vector-matrix shapes).
PoissonSpec limit_spec(const SoQData& d, bool full_coupler) {
  ClassicalLimit cl = classical_limit(d);
  PoissonSpec sp;
  sp.n = d.n;
  sp.c = eval_at_one(cl.r);
  sp.w = full_coupler ? eval_at_one(cl.w) : eval_at_one(cl.r);
  if (full_coupler) sp.s_sym = eval_at_one(cl.s);
  sp.nu = GaussRational(-1);
  sp.eta = antidiag_ones(d.n);
  return sp;
}

// Lazily built R-matrix data shared across suites; construction failures are
// captured once and reported by every suite that needs that size.
class SoqCache {
 public:
  const SoQData* get(int n, std::string* err) {
    auto it = ok_.find(n);
    if (it != ok_.end()) return &it->second;
    auto eit = err_.find(n);
    if (eit != err_.end()) {
      if (err) *err = eit->second;
      return nullptr;
    }
    try {
      auto pos = ok_.emplace(n, frt_build(n)).first;
      return &pos->second;
    } catch (const std::exception& e) {
      err_.emplace(n, e.what());
      if (err) *err = err_.at(n);
      return nullptr;
    }
  }

 private:
  std::map<int, SoQData> ok_;
  std::map<int, std::string> err_;
};

class Recorder {
 public:
  explicit Recorder(RunReport& rep) : rep_(rep), mark_(std::chrono::steady_clock::now()) {}

  void add(const std::string& id, bool ok, const std::string& detail) {
    push(id, ok ? "pass" : "fail", detail);
  }
  void recorded(const std::string& id, const std::string& detail) { push(id, "recorded", detail); }
  void fail(const std::string& id, const std::string& detail) { push(id, "fail", detail); }

 private:
  void push(const std::string& id, const char* status, const std::string& detail) {
    auto now = std::chrono::steady_clock::now();
    CheckRecord r;
    r.id = id;
    r.status = status;
    r.detail = detail;
    r.seconds = std::chrono::duration<double>(now - mark_).count();
    mark_ = now;
    rep_.checks.push_back(std::move(r));
  }

  RunReport& rep_;
  std::chrono::steady_clock::time_point mark_;
};

std::string ntag(int n) { return ".n" + std::to_string(n); }

std::string family_slug(const std::string& name) {
  std::string s = name;
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

void dump_tensors(const SoQData& d, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const std::vector<std::pair<const char*, const TensorOp*>> items = {
      {"w", &d.w},           {"w_braid", &d.what},     {"r_involutive", &d.r},
      {"r_braid", &d.r_hat}, {"proj_plus", &d.p_plus}, {"proj_minus", &d.p_minus},
      {"proj_zero", &d.p_zero}};
  for (const auto& [name, op] : items) {
    std::ofstream os(fs::path(dir) / (std::string(name) + ".n" + std::to_string(d.n) + ".txt"));
    dump(os, *op);
  }
}

// ---------------------------------------------------------------------------
// frt: construction and structural identities of the R-matrix data.
// ---------------------------------------------------------------------------

void run_frt(Recorder& rec, SoqCache& cache, int n, const std::string& dump_dir) {
  std::string err;
  const SoQData* d = cache.get(n, &err);
  if (!d) {
    rec.fail("frt.build" + ntag(n), err);
    return;
  }
  rec.add("frt.build" + ntag(n), true, "constructed with all structural validations");
  rec.add("frt.ybe" + ntag(n), ybe_defect(d->w).is_zero(), "three-leg exchange defect of w");

  const int rp = rank(d->p_plus), rm = rank(d->p_minus), rz = rank(d->p_zero);
  const bool ranks_ok =
      rp == n * (n + 1) / 2 - 1 && rm == n * (n - 1) / 2 && rz == 1;
  rec.add("frt.projector_ranks" + ntag(n), ranks_ok,
          "ranks " + std::to_string(rp) + "/" + std::to_string(rm) + "/" + std::to_string(rz));

  TensorOp id2 = tensor_identity(n, 2);
  rec.add("frt.involution" + ntag(n), d->r_hat * d->r_hat == id2,
          "square of the involutive braid form");
  rec.add("frt.reality" + ntag(n), check_reality(d->w), "w star(w) = id");
  rec.add("frt.metric" + ntag(n), check_metric_compat(*d),
          "metric vector invariant under the two-leg coaction");
  rec.add("frt.classical_identity" + ntag(n), rat_is_zero(eval_at_one(d->w - id2)),
          "w equals the identity at the classical point");

  std::optional<QScalar> s = check_spectral_condition(d->p_minus, d->what, n);
  rec.add("frt.braiding_scale" + ntag(n),
          s.has_value() && *s == d->sigma && *s == QScalar::q_pow(-1),
          s ? "unique scale " + s->str() : "no unique scale in the scanned set");

  if (!dump_dir.empty()) dump_tensors(*d, dump_dir);
}

// ---------------------------------------------------------------------------
// obstructions: Yang-Baxter defect of the involutive coupler.
// ---------------------------------------------------------------------------

void run_obstructions(Recorder& rec, SoqCache& cache, int n) {
  std::string err;
  const SoQData* d = cache.get(n, &err);
  if (!d) {
    rec.fail("obstruction.build" + ntag(n), err);
    return;
  }
  UnbraidedObstruction o = obstruction_unbraided(*d);
  std::string detail = "defect entries " + std::to_string(o.defect_entries) +
                       (o.zero_at_classical_point ? ", zero at the classical point"
                                                  : ", NONZERO at the classical point");
  if (n >= 3) {
    rec.add("obstruction.involutive_coupler" + ntag(n),
            o.nonzero_symbolic && o.zero_at_classical_point, detail);
  } else {
    // The smallest size is degenerate: the defect may vanish identically,
    // so its symbolic value is recorded rather than asserted.
    if (!o.zero_at_classical_point) {
      rec.fail("obstruction.involutive_coupler" + ntag(n), detail);
    } else {
      rec.recorded("obstruction.involutive_coupler" + ntag(n), detail);
    }
  }
  rec.add("obstruction.full_coupler" + ntag(n), ybe_defect(d->w).is_zero(),
          "the full coupler has no exchange defect");
}

// ---------------------------------------------------------------------------
// quantum: braided algebra checks.
// ---------------------------------------------------------------------------

constexpr int kDeltaSizeCap = 4;        // full comultiplication expansion
constexpr long long kWordCap = 4096;    // graded-dimension column budget

void run_quantum(Recorder& rec, SoqCache& cache, int n, int degree_max) {
  std::string err;
  const SoQData* d = cache.get(n, &err);
  if (!d) {
    rec.fail("quantum.build" + ntag(n), err);
    return;
  }
  NCAlphabet a(n);

  if (n <= kDeltaSizeCap) {
    BraidedAlgebra alg;
    alg.n = n;
    alg.soq = *d;
    alg.w_prime = d->w;
    alg.sigma = d->sigma;
    DeltaReport rep = check_delta_preserves(alg);
    for (const auto& f : rep.families) {
      rec.add("quantum.delta." + family_slug(f.name) + ntag(n), f.passed,
              std::to_string(f.probes) + " probes, " + std::to_string(f.failures) + " failures");
    }
    rec.add("quantum.delta.lemma" + ntag(n),
            rep.matrix_lemma_holds && rep.expansion_matches_lemma,
            "projector condition holds and agrees with the expansion verdict");
  } else {
    rec.recorded("quantum.delta" + ntag(n),
                 "full expansion skipped at this size; structural checks still run");
  }

  {
    NCReducer red(RelationSet{n, vector_vector_relations(a, d->p_minus)});
    bool ok = true;
    std::ostringstream detail;
    detail << "dims";
    for (int deg = 2; deg <= degree_max; ++deg) {
      SortDegree mu{0, 0, deg, 0};
      if (NCReducer::word_count(a, mu) > kWordCap) {
        detail << " (budget stop at d=" << deg << ")";
        break;
      }
      long long got = red.graded_dimension(mu);
      ok = ok && got == binom(n + deg - 1, deg);
      detail << " " << got;
    }
    rec.add("quantum.dims.vector" + ntag(n), ok, detail.str());
  }

  if (static_cast<long long>(n) * n * n * n <= kWordCap) {
    NCReducer red_inv(RelationSet{n, matrix_matrix_relations(a, d->r_hat)});
    long long flat = red_inv.graded_dimension({2, 0, 0, 0});
    std::string fd = "degree-2 dimension " + std::to_string(flat);
    if (n <= 3) {
      rec.add("quantum.dims.matrix_involutive" + ntag(n),
              flat == binom(static_cast<long long>(n) * n + 1, 2), fd);
    } else {
      rec.recorded("quantum.dims.matrix_involutive" + ntag(n), fd);
    }
    NCReducer red_full(RelationSet{n, matrix_matrix_relations(a, d->what)});
    long long braid = red_full.graded_dimension({2, 0, 0, 0});
    const long long mp = static_cast<long long>(n) * (n + 1) / 2 - 1;
    const long long mn = static_cast<long long>(n) * (n - 1) / 2;
    rec.add("quantum.dims.matrix_braid_form" + ntag(n), braid == mp * mp + mn * mn + 1,
            "degree-2 dimension " + std::to_string(braid) + " (spectral commutant)");
  }

  {
    RealityPropagation rp = check_reality_propagation(*d, d->w);
    rec.add("quantum.reality" + ntag(n),
            rp.relations_star_closed && rp.coupler_unitary && rp.implication_consistent,
            "conjugation closure of the vector-matrix rewrite");
  }
  {
    RewriteSpanReport rs = rewrite_span_equivalence(n, d->r);
    rec.add("quantum.rewrite_spans" + ntag(n), rs.involutive && rs.spans_equal,
            "one-sided rewrite spans coincide for the involutive coupler");
  }
  {
    MixedInterchange mi = mixed_interchange(d->r, d->w);
    rec.add("quantum.interchange" + ntag(n), mi.mm_vm_consistent && mi.vm_mm_consistent,
            "both mixed three-leg reorderings agree");
  }
}

// ---------------------------------------------------------------------------
// poisson: bracket tables, quasitriangularity, Jacobi sweeps, braiding.
// ---------------------------------------------------------------------------

constexpr int kSweepSizeCap = 5;

void run_poisson(Recorder& rec, SoqCache& cache, int n) {
  std::string err;
  const SoQData* d = cache.get(n, &err);
  if (!d) {
    rec.fail("poisson.build" + ntag(n), err);
    return;
  }
  RatMat g = antidiag_ones(n);
  ClassicalLimit cl = classical_limit(*d);

  {
    bool ww = drinfeld_bracket(cl.w).is_zero();
    bool rr = drinfeld_bracket(cl.r) == QScalar(-1) * omega(g);
    bool sk = cl.s == QScalar(-1) * killing_element(g);
    bool inv = invariant_under_rotations(drinfeld_bracket(cl.r), g);
    std::string detail = std::string("[[w,w]]=0: ") + (ww ? "yes" : "NO") +
                         ", [[r,r]]=-omega: " + (rr ? "yes" : "NO") +
                         ", s=-killing: " + (sk ? "yes" : "NO") +
                         ", obstruction invariant: " + (inv ? "yes" : "NO");
    bool all = ww && rr && sk && inv;
    if (n >= 3 || all) {
      rec.add("poisson.quasitriangular" + ntag(n), all, detail);
    } else {
      rec.recorded("poisson.quasitriangular" + ntag(n), detail);
    }
  }

  {
    TensorOp st = killing_element(g);
    TensorOp p = perm_op(n, {1, 0});
    TensorOp om = omega(g);
    bool base = (st - p * st == tensor_identity(n, 2) - p) && transpose_op(st) == st &&
                invariant_under_isometries(st, g);
    bool omok = om == omega_closed_form(g) && om == drinfeld_bracket(st) &&
                right_symmetrize3(om).is_zero() && invariant_under_isometries(om, g);
    std::string detail = std::string("coupler identities: ") + (base ? "yes" : "NO") +
                         ", obstruction element identities: " + (omok ? "yes" : "NO") +
                         (om.is_zero() ? " (zero at this size)" : "");
    rec.add("poisson.casimir" + ntag(n), base && omok, detail);
  }

  if (n <= kSweepSizeCap) {
    PoissonAlgebra full(limit_spec(*d, true));
    JacobiReport jr = check_jacobi_all_generators(full);
    rec.add("poisson.jacobi.full" + ntag(n), jr.passed(),
            std::to_string(jr.triples_checked) + " triples, " +
                std::to_string(jr.identically_zero) + " identically zero, " +
                std::to_string(jr.vanish_mod_relations) + " vanish on the group, " +
                std::to_string(jr.failures.size()) + " failures");

    PoissonAlgebra bare(limit_spec(*d, false));
    JacobiReport jb = check_jacobi_all_generators(bare);
    std::string bdetail = std::to_string(jb.failures.size()) + " failures detected";
    if (n >= 3) {
      rec.add("poisson.jacobi.bare_coupler_fails" + ntag(n), !jb.passed(), bdetail);
    } else {
      // The obstruction element vanishes identically at the smallest size,
      // so the bare coupler is consistent there: recorded, not asserted.
      rec.recorded("poisson.jacobi.bare_coupler_fails" + ntag(n),
                   bdetail + " (obstruction element vanishes at this size)");
    }
    rec.add("poisson.grading" + ntag(n), check_dilation_grading(full),
            "brackets homogeneous for the vector-degree grading");
  } else {
    rec.recorded("poisson.jacobi" + ntag(n), "sweep skipped at this size");
  }

  {
    BraidingCheck bc = check_braiding_equation(n, eval_at_one(cl.s));
    bool ok = bc.solvable && bc.nu == GaussRational(-1);
    std::string detail = bc.solvable ? "solvable, scale -1 required" : "not solvable";
    if (n >= 3 || ok) {
      rec.add("poisson.braiding" + ntag(n), ok, detail);
    } else {
      rec.recorded("poisson.braiding" + ntag(n), detail);
    }
  }
}

// ---------------------------------------------------------------------------
// lorentz: fixed-size signature (1,3) checks.
// ---------------------------------------------------------------------------

RatMat commutator(const RatMat& a, const RatMat& b) {
  RatMat ab = rat_mul(a, b), ba = rat_mul(b, a);
  for (std::size_t i = 0; i < ab.size(); ++i) {
    for (std::size_t j = 0; j < ab[i].size(); ++j) ab[i][j] -= ba[i][j];
  }
  return ab;
}

GaussRational rat_det_local(const RatMat& g) {
  const std::size_t n = g.size();
  if (n == 1) return g[0][0];
  GaussRational out(0);
  for (std::size_t c = 0; c < n; ++c) {
    RatMat sub(n - 1, std::vector<GaussRational>(n - 1));
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t jj = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) sub[i - 1][jj++] = g[i][j];
      }
    }
    GaussRational term = g[0][c] * rat_det_local(sub);
    out += (c % 2 == 0) ? term : -term;
  }
  return out;
}

RatMat negated(RatMat m) {
  for (auto& row : m) {
    for (auto& e : row) e = -e;
  }
  return m;
}

void run_lorentz(Recorder& rec) {
  LorentzGenerators lg = lorentz_generators();

  {
    bool ok = true;
    RatMat zero(4, std::vector<GaussRational>(4));
    for (int i = 0; i < 3; ++i) {
      int j = (i + 1) % 3, k = (i + 2) % 3;
      ok = ok && commutator(lg.m[i], lg.m[j]) == lg.m[k];
      ok = ok && commutator(lg.l[i], lg.l[j]) == negated(lg.m[k]);
      ok = ok && commutator(lg.m[i], lg.l[j]) == lg.l[k];
      ok = ok && commutator(lg.m[i], lg.l[i]) == zero;
    }
    for (const auto& gens : {lg.m, lg.l}) {
      for (const auto& x : gens) {
        ok = ok && rat_mul(rat_transpose(x), lg.eta) == negated(rat_mul(lg.eta, x));
      }
    }
    rec.add("lorentz.commutators", ok, "rotation/boost bracket table and isometry membership");
  }
  {
    TensorOp mm = pair_sum(lg.m, lg.m);
    TensorOp ll = pair_sum(lg.l, lg.l);
    bool split = killing_element(lg.eta) == mm - ll;
    TensorOp ml = pair_sum(lg.m, lg.l) + pair_sum(lg.l, lg.m);
    bool anti = perm_op(4, {1, 0}) * ml == QScalar(-1) * ml;
    rec.add("lorentz.casimir_split", split && anti,
            "coupler = rotations minus boosts; mixed part antisymmetric");
  }
  {
    RatMat s = metric_reflection(lg.eta);
    rec.add("lorentz.reflection",
            rat_mul(rat_transpose(s), rat_mul(lg.eta, s)) == lg.eta &&
                rat_det_local(s) == GaussRational(-1),
            "orientation-reversing exact isometry");
  }
  {
    RatMat st = eval_at_one(killing_element(lg.eta));
    BraidingCheck plain = check_braiding_equation(4, st);
    BraidingCheck flipped = check_braiding_equation(4, negated(st));
    RatMat ml = eval_at_one(pair_sum(lg.m, lg.l) + pair_sum(lg.l, lg.m));
    BraidingCheck mixed = check_braiding_equation(4, ml);
    bool ok = plain.solvable && plain.nu == GaussRational(1) && flipped.solvable &&
              flipped.nu == GaussRational(-1) && !mixed.solvable;
    rec.add("lorentz.braiding", ok,
            "symmetric couplers solvable with matching scale; mixed coupler not");
  }
  {
    TensorOp om = omega(lg.eta);
    rec.add("lorentz.obstruction_invariance",
            invariant_under_isometries(om, lg.eta) && right_symmetrize3(om).is_zero() &&
                !om.is_zero(),
            "obstruction element invariant, fully antisymmetrized to zero, nonzero");
  }
}

}  // namespace

RunReport run_suites(const RunConfig& cfg) {
  std::vector<int> sizes = cfg.sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  if (sizes.empty()) throw std::invalid_argument("run_suites: no sizes given");
  for (int n : sizes) {
    if (n < 2 || n > 8) throw std::invalid_argument("run_suites: sizes must lie in [2, 8]");
  }
  if (cfg.degree_max < 2 || cfg.degree_max > kNCDegreeCap) {
    throw std::invalid_argument("run_suites: degree_max must lie in [2, 5]");
  }
  std::set<std::string> requested(cfg.suites.begin(), cfg.suites.end());
  for (const auto& s : requested) {
    if (std::find(known_suites().begin(), known_suites().end(), s) == known_suites().end()) {
      throw std::invalid_argument("run_suites: unknown suite \"" + s + "\"");
    }
  }

  RunReport rep;
  rep.sizes = sizes;
  rep.degree_max = cfg.degree_max;
  for (const auto& s : known_suites()) {
    if (requested.count(s)) rep.suites.push_back(s);
  }

  Recorder rec(rep);
  SoqCache cache;
  for (const auto& suite : rep.suites) {
    if (suite == "lorentz") {
      run_lorentz(rec);
      continue;
    }
    for (int n : sizes) {
      if (suite == "frt") {
        run_frt(rec, cache, n, cfg.dump_dir);
      } else if (suite == "obstructions") {
        run_obstructions(rec, cache, n);
      } else if (suite == "quantum") {
        run_quantum(rec, cache, n, cfg.degree_max);
      } else if (suite == "poisson") {
        run_poisson(rec, cache, n);
      }
    }
  }
  return rep;
}

}  // namespace qiso
