#include "qiso/nc.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace qiso {

namespace {

constexpr std::size_t kRowBudget = 200000;

long long binom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long t = 0; t < k; ++t) r = r * (n - t) / (t + 1);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// NCAlphabet

NCAlphabet::NCAlphabet(int n) : n_(n) {
  if (n < 1 || n > 100) throw std::invalid_argument("NCAlphabet: n out of range");
}

std::uint16_t NCAlphabet::h(int i, int j) const {
  return static_cast<std::uint16_t>(i * n_ + j);
}
std::uint16_t NCAlphabet::hp(int i, int j) const {
  return static_cast<std::uint16_t>(n_ * n_ + i * n_ + j);
}
std::uint16_t NCAlphabet::x(int i) const {
  return static_cast<std::uint16_t>(2 * n_ * n_ + i);
}
std::uint16_t NCAlphabet::xp(int i) const {
  return static_cast<std::uint16_t>(2 * n_ * n_ + n_ + i);
}

std::uint16_t NCAlphabet::letter(Sort s, int k) const {
  switch (s) {
    case Sort::kMat:
      return static_cast<std::uint16_t>(k);
    case Sort::kMatP:
      return static_cast<std::uint16_t>(n_ * n_ + k);
    case Sort::kVec:
      return static_cast<std::uint16_t>(2 * n_ * n_ + k);
    case Sort::kVecP:
      return static_cast<std::uint16_t>(2 * n_ * n_ + n_ + k);
  }
  throw std::invalid_argument("NCAlphabet::letter: bad sort");
}

Sort NCAlphabet::sort(std::uint16_t l) const {
  const int nn = n_ * n_;
  if (l < nn) return Sort::kMat;
  if (l < 2 * nn) return Sort::kMatP;
  if (l < 2 * nn + n_) return Sort::kVec;
  if (l < 2 * nn + 2 * n_) return Sort::kVecP;
  throw std::out_of_range("NCAlphabet::sort: letter out of range");
}

bool NCAlphabet::primed(std::uint16_t l) const {
  Sort s = sort(l);
  return s == Sort::kMatP || s == Sort::kVecP;
}

std::pair<int, int> NCAlphabet::indices(std::uint16_t l) const {
  const int nn = n_ * n_;
  switch (sort(l)) {
    case Sort::kMat:
      return {l / n_, l % n_};
    case Sort::kMatP:
      return {(l - nn) / n_, (l - nn) % n_};
    case Sort::kVec:
      return {l - 2 * nn, -1};
    case Sort::kVecP:
      return {l - 2 * nn - n_, -1};
  }
  return {-1, -1};
}

std::string NCAlphabet::name(std::uint16_t l) const {
  auto [i, j] = indices(l);
  std::ostringstream os;
  switch (sort(l)) {
    case Sort::kMat:
      os << "h[" << i << "," << j << "]";
      break;
    case Sort::kMatP:
      os << "h'[" << i << "," << j << "]";
      break;
    case Sort::kVec:
      os << "x[" << i << "]";
      break;
    case Sort::kVecP:
      os << "x'[" << i << "]";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Degrees

SortDegree word_degree(const NCAlphabet& a, const Word& w) {
  SortDegree d{0, 0, 0, 0};
  for (std::uint16_t l : w) ++d[static_cast<int>(a.sort(l))];
  return d;
}

int total(const SortDegree& d) { return d[0] + d[1] + d[2] + d[3]; }

std::string degree_str(const SortDegree& d) {
  std::ostringstream os;
  os << "(" << d[0] << "," << d[1] << "," << d[2] << "," << d[3] << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// NCPoly

NCPoly::NCPoly(QScalar c) {
  if (!c.is_zero()) terms_.emplace(Word{}, std::move(c));
}

NCPoly NCPoly::letter(std::uint16_t l) {
  NCPoly p;
  p.terms_.emplace(Word{l}, QScalar(1));
  return p;
}

NCPoly NCPoly::word(Word w, QScalar c) {
  NCPoly p;
  if (!c.is_zero()) p.terms_.emplace(std::move(w), std::move(c));
  return p;
}

int NCPoly::top_degree() const {
  int d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

void NCPoly::add_term(const Word& w, const QScalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCPoly NCPoly::operator-() const {
  NCPoly r;
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
  return r;
}

NCPoly operator*(const QScalar& s, const NCPoly& p) {
  NCPoly r;
  if (s.is_zero()) return r;
  for (const auto& [w, c] : p.terms_) r.terms_.emplace(w, s * c);
  return r;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
  NCPoly r;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add_term(w, ca * cb);
    }
  }
  return r;
}

NCPoly NCPoly::star_involution() const {
  NCPoly r;
  for (const auto& [w, c] : terms_) {
    Word rw(w.rbegin(), w.rend());
    r.add_term(rw, c.star());
  }
  return r;
}

std::string NCPoly::str(const NCAlphabet& a) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (std::uint16_t l : w) os << "*" << a.name(l);
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Structural maps

NCPoly comultiply(const NCAlphabet& a, const NCPoly& p) {
  const int n = a.n();
  NCPoly out;
  for (const auto& [w, c] : p.terms()) {
    NCPoly acc{QScalar(c)};
    for (std::uint16_t l : w) {
      NCPoly f;
      auto [i, j] = a.indices(l);
      switch (a.sort(l)) {
        case Sort::kMat:
          for (int k = 0; k < n; ++k) f.add_term(Word{a.h(i, k), a.hp(k, j)}, QScalar(1));
          break;
        case Sort::kVec:
          f.add_term(Word{a.x(i)}, QScalar(1));
          for (int k = 0; k < n; ++k) f.add_term(Word{a.h(i, k), a.xp(k)}, QScalar(1));
          break;
        default:
          throw std::invalid_argument("comultiply: input must use unprimed letters only");
      }
      acc = acc * f;
    }
    out += acc;
  }
  return out;
}

NCPoly to_primed(const NCAlphabet& a, const NCPoly& p) {
  NCPoly out;
  for (const auto& [w, c] : p.terms()) {
    Word pw;
    pw.reserve(w.size());
    for (std::uint16_t l : w) {
      auto [i, j] = a.indices(l);
      switch (a.sort(l)) {
        case Sort::kMat:
          pw.push_back(a.hp(i, j));
          break;
        case Sort::kVec:
          pw.push_back(a.xp(i));
          break;
        default:
          throw std::invalid_argument("to_primed: input must use unprimed letters only");
      }
    }
    out.add_term(pw, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// NCReducer

NCReducer::NCReducer(RelationSet rs) : rs_(std::move(rs)), alphabet_(rs_.n) {
  for (const NCPoly& p : rs_.rels) {
    if (p.is_zero()) throw std::invalid_argument("NCReducer: zero relation");
    if (p.top_degree() != 2) throw std::invalid_argument("NCReducer: relation top degree must be 2");
    Rel rel;
    rel.p = p;
    bool have_mu = false;
    for (const auto& [w, c] : p.terms()) {
      if (w.size() == 2) {
        SortDegree mu = word_degree(alphabet_, w);
        if (!have_mu) {
          rel.top_mu = mu;
          have_mu = true;
        } else if (mu != rel.top_mu) {
          throw std::invalid_argument("NCReducer: mixed leading multidegrees in one relation");
        }
        rel.top.add_term(w, c);
      }
    }
    for (const auto& [w, c] : p.terms()) {
      if (w.size() == 2) continue;
      SortDegree beta = word_degree(alphabet_, w);
      SortDegree step{};
      bool nonzero = false;
      for (int s = 0; s < kNumSorts; ++s) {
        step[s] = rel.top_mu[s] - beta[s];
        if (step[s] != 0) nonzero = true;
      }
      if (nonzero && std::find(steps_.begin(), steps_.end(), step) == steps_.end()) {
        steps_.push_back(step);
      }
    }
    rels_.push_back(std::move(rel));
  }
}

long long NCReducer::word_count(const NCAlphabet& a, const SortDegree& mu) {
  long long len = 0;
  for (int s = 0; s < kNumSorts; ++s) {
    if (mu[s] < 0) return 0;
    len += mu[s];
  }
  // Multinomial coefficient counting the sort patterns.
  long long ways = 1;
  long long used = 0;
  for (int s = 0; s < kNumSorts; ++s) {
    used += mu[s];
    ways *= binom(used, mu[s]);
  }
  for (int s = 0; s < kNumSorts; ++s) {
    long long base = a.count(static_cast<Sort>(s));
    for (int t = 0; t < mu[s]; ++t) ways *= base;
  }
  return ways;
}

std::vector<Word> NCReducer::words_of_degree(const NCAlphabet& a, const SortDegree& mu) {
  std::vector<Word> out;
  const int len = total(mu);
  Word cur;
  cur.reserve(len);
  SortDegree rem = mu;
  // Depth-first in ascending letter order yields degree-lex ascending output.
  std::function<void()> rec = [&]() {
    if (static_cast<int>(cur.size()) == len) {
      out.push_back(cur);
      return;
    }
    for (int s = 0; s < kNumSorts; ++s) {
      if (rem[s] == 0) continue;
      --rem[s];
      const int cnt = a.count(static_cast<Sort>(s));
      for (int k = 0; k < cnt; ++k) {
        cur.push_back(a.letter(static_cast<Sort>(s), k));
        rec();
        cur.pop_back();
      }
      ++rem[s];
    }
  };
  rec();
  return out;
}

long long NCReducer::graded_dimension(const SortDegree& mu) {
  for (int s = 0; s < kNumSorts; ++s) {
    if (mu[s] < 0) throw std::invalid_argument("graded_dimension: negative multidegree");
  }
  if (total(mu) > kNCDegreeCap) throw std::invalid_argument("graded_dimension: degree cap exceeded");
  SparseRref<Word, DegLexLess> span;
  std::size_t inserted = 0;
  for (const Rel& rel : rels_) {
    SortDegree delta{};
    bool ok = true;
    for (int s = 0; s < kNumSorts; ++s) {
      delta[s] = mu[s] - rel.top_mu[s];
      if (delta[s] < 0) ok = false;
    }
    if (!ok) continue;
    for (const Word& w : words_of_degree(alphabet_, delta)) {
      for (std::size_t cut = 0; cut <= w.size(); ++cut) {
        SparseRref<Word, DegLexLess>::Row row;
        for (const auto& [t, c] : rel.top.terms()) {
          Word shifted(w.begin(), w.begin() + cut);
          shifted.insert(shifted.end(), t.begin(), t.end());
          shifted.insert(shifted.end(), w.begin() + cut, w.end());
          auto it = row.find(shifted);
          if (it == row.end()) {
            row.emplace(std::move(shifted), c);
          } else {
            it->second += c;
          }
        }
        if (++inserted > kRowBudget) throw std::runtime_error("graded_dimension: row budget exceeded");
        span.insert(std::move(row));
      }
    }
  }
  return word_count(alphabet_, mu) - static_cast<long long>(span.rank());
}

std::set<SortDegree> NCReducer::closure_targets(const NCPoly& p) const {
  const int bound = std::min(kNCDegreeCap, std::max(2, p.top_degree()));
  std::set<SortDegree> seen;
  std::queue<SortDegree> work;
  for (const auto& [w, c] : p.terms()) {
    SortDegree mu = word_degree(alphabet_, w);
    if (seen.insert(mu).second) work.push(mu);
  }
  while (!work.empty()) {
    SortDegree mu = work.front();
    work.pop();
    for (const SortDegree& step : steps_) {
      for (int dir : {+1, -1}) {
        SortDegree nu{};
        bool ok = true;
        for (int s = 0; s < kNumSorts; ++s) {
          nu[s] = mu[s] + dir * step[s];
          if (nu[s] < 0) ok = false;
        }
        if (!ok || total(nu) > bound) continue;
        if (seen.insert(nu).second) work.push(nu);
      }
    }
  }
  return seen;
}

void NCReducer::process_target(const SortDegree& mu) {
  if (!processed_.insert(mu).second) return;
  for (const Rel& rel : rels_) {
    SortDegree delta{};
    bool ok = true;
    for (int s = 0; s < kNumSorts; ++s) {
      delta[s] = mu[s] - rel.top_mu[s];
      if (delta[s] < 0) ok = false;
    }
    if (!ok) continue;
    for (const Word& w : words_of_degree(alphabet_, delta)) {
      for (std::size_t cut = 0; cut <= w.size(); ++cut) {
        SparseRref<Word, DegLexLess>::Row row;
        for (const auto& [t, c] : rel.p.terms()) {
          Word shifted(w.begin(), w.begin() + cut);
          shifted.insert(shifted.end(), t.begin(), t.end());
          shifted.insert(shifted.end(), w.begin() + cut, w.end());
          auto it = row.find(shifted);
          if (it == row.end()) {
            row.emplace(std::move(shifted), c);
          } else {
            it->second += c;
          }
        }
        if (++rows_inserted_ > kRowBudget) throw std::runtime_error("NCReducer: row budget exceeded");
        span_.insert(std::move(row));
      }
    }
  }
}

NCReduction NCReducer::reduce(const NCPoly& p) {
  if (p.top_degree() > kNCDegreeCap) throw std::invalid_argument("NCReducer::reduce: degree cap exceeded");
  for (const SortDegree& mu : closure_targets(p)) process_target(mu);
  SparseRref<Word, DegLexLess>::Row row = p.terms();
  span_.reduce(row);
  NCReduction out;
  for (const auto& [w, c] : row) out.residual.add_term(w, c);
  out.in_ideal = out.residual.is_zero();
  return out;
}

// ---------------------------------------------------------------------------
// CrossedProductReducer

CrossedProductReducer::CrossedProductReducer(RelationSet unprimed, RelationSet primed,
                                             QScalar vec_swap_scale)
    : unprimed_(std::move(unprimed)), primed_(std::move(primed)), sigma_(std::move(vec_swap_scale)) {
  if (unprimed_.relation_set().n != primed_.relation_set().n) {
    throw std::invalid_argument("CrossedProductReducer: mismatched alphabet parameters");
  }
  const NCAlphabet& a = unprimed_.alphabet();
  for (const NCPoly& p : unprimed_.relation_set().rels) {
    for (const auto& [w, c] : p.terms()) {
      for (std::uint16_t l : w) {
        if (a.primed(l)) throw std::invalid_argument("CrossedProductReducer: primed letter in unprimed relations");
      }
    }
  }
  for (const NCPoly& p : primed_.relation_set().rels) {
    for (const auto& [w, c] : p.terms()) {
      for (std::uint16_t l : w) {
        if (!a.primed(l)) throw std::invalid_argument("CrossedProductReducer: unprimed letter in primed relations");
      }
    }
  }
}

NCPoly CrossedProductReducer::normal_order(const NCPoly& p) const {
  const NCAlphabet& a = alphabet();
  NCPoly out;
  for (const auto& [w, c] : p.terms()) {
    int crossings = 0;
    int vecp_before = 0;
    Word un, pr;
    for (std::uint16_t l : w) {
      if (a.primed(l)) {
        pr.push_back(l);
        if (a.sort(l) == Sort::kVecP) ++vecp_before;
      } else {
        un.push_back(l);
        if (a.sort(l) == Sort::kVec) crossings += vecp_before;
      }
    }
    Word nw = std::move(un);
    nw.insert(nw.end(), pr.begin(), pr.end());
    out.add_term(nw, c * sigma_.pow(crossings));
  }
  return out;
}

NCReduction CrossedProductReducer::reduce(const NCPoly& p) {
  if (p.top_degree() > kNCDegreeCap) {
    throw std::invalid_argument("CrossedProductReducer::reduce: degree cap exceeded");
  }
  const NCAlphabet& a = alphabet();
  NCPoly no = normal_order(p);
  // Reduce the primed factor of each term first (memoized per word), then
  // group by the resulting primed complement word, so that each unprimed
  // combination is reduced in one pass with cancellations applied inside
  // the elimination.
  std::map<Word, NCPoly, DegLexLess> groups;
  for (const auto& [w, c] : no.terms()) {
    std::size_t split = 0;
    while (split < w.size() && !a.primed(w[split])) ++split;
    Word u(w.begin(), w.begin() + split);
    Word v(w.begin() + split, w.end());
    auto iv = memo_primed_.find(v);
    if (iv == memo_primed_.end()) {
      iv = memo_primed_.emplace(v, primed_.reduce(NCPoly::word(v)).residual).first;
    }
    for (const auto& [wv, cv] : iv->second.terms()) groups[wv].add_term(u, c * cv);
  }
  NCPoly totalr;
  for (auto& [wv, up] : groups) {
    NCPoly ru = unprimed_.reduce(up).residual;
    for (const auto& [wu, cu] : ru.terms()) {
      Word joined = wu;
      joined.insert(joined.end(), wv.begin(), wv.end());
      totalr.add_term(joined, cu);
    }
  }
  NCReduction out;
  out.residual = std::move(totalr);
  out.in_ideal = out.residual.is_zero();
  return out;
}

// ---------------------------------------------------------------------------
// Diamond / overlap report

DiamondReport diamond_overlap_report(NCReducer& red) {
  const NCAlphabet& a = red.alphabet();
  std::array<bool, kNumSorts> used{};
  for (const NCPoly& p : red.relation_set().rels) {
    for (const auto& [w, c] : p.terms()) {
      for (std::uint16_t l : w) used[static_cast<int>(a.sort(l))] = true;
    }
  }
  DiamondReport rep;
  SortDegree mu{};
  for (mu[0] = 0; mu[0] <= 3; ++mu[0]) {
    for (mu[1] = 0; mu[1] <= 3 - mu[0]; ++mu[1]) {
      for (mu[2] = 0; mu[2] <= 3 - mu[0] - mu[1]; ++mu[2]) {
        mu[3] = 3 - mu[0] - mu[1] - mu[2];
        bool supported = true;
        for (int s = 0; s < kNumSorts; ++s) {
          if (mu[s] > 0 && !used[s]) supported = false;
        }
        if (!supported) continue;
        OverlapEntry e;
        e.mu = mu;
        e.quotient_dim = red.graded_dimension(mu);
        e.classical_dim = 1;
        for (int s = 0; s < kNumSorts; ++s) {
          e.classical_dim *= binom(a.count(static_cast<Sort>(s)) + mu[s] - 1, mu[s]);
        }
        e.collapsed = e.quotient_dim < e.classical_dim;
        rep.any_collapse = rep.any_collapse || e.collapsed;
        rep.entries.push_back(std::move(e));
      }
    }
  }
  return rep;
}

}  // namespace qiso
