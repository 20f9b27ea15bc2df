#include "qiso/tensor.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qiso {

namespace {
const QScalar kZero{};

int entry_degree(const QScalar& s) { return s.num().deg() + s.den().deg(); }
}  // namespace

std::uint32_t pack_index(int n, const std::vector<int>& digits) {
  std::uint64_t idx = 0, base = 1;
  for (int d : digits) {
    if (d < 0 || d >= n) throw std::out_of_range("pack_index: digit out of range");
    idx += base * static_cast<std::uint64_t>(d);
    base *= static_cast<std::uint64_t>(n);
  }
  if (idx > 0xffffffffULL) throw std::length_error("pack_index: index overflow");
  return static_cast<std::uint32_t>(idx);
}

std::vector<int> unpack_index(int n, int legs, std::uint32_t idx) {
  std::vector<int> digits(legs);
  for (int t = 0; t < legs; ++t) {
    digits[t] = static_cast<int>(idx % static_cast<std::uint32_t>(n));
    idx /= static_cast<std::uint32_t>(n);
  }
  return digits;
}

std::uint64_t tensor_dim(int n, int legs) {
  std::uint64_t d = 1;
  for (int t = 0; t < legs; ++t) d *= static_cast<std::uint64_t>(n);
  return d;
}

const QScalar& TensorOp::at(std::uint32_t r, std::uint32_t c) const {
  auto it = a.find({r, c});
  return it == a.end() ? kZero : it->second;
}

void TensorOp::set(std::uint32_t r, std::uint32_t c, QScalar v) {
  if (v.is_zero()) {
    a.erase({r, c});
  } else {
    a[{r, c}] = std::move(v);
  }
}

void TensorOp::add_to(std::uint32_t r, std::uint32_t c, const QScalar& v) {
  if (v.is_zero()) return;
  auto [it, fresh] = a.try_emplace({r, c}, v);
  if (!fresh) {
    it->second += v;
    if (it->second.is_zero()) a.erase(it);
  }
}

TensorOp tensor_identity(int n, int legs) {
  TensorOp x(n, legs);
  std::uint64_t d = x.dim();
  for (std::uint64_t i = 0; i < d; ++i) {
    x.a[{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i)}] = QScalar(1);
  }
  return x;
}

namespace {
void check_shape(const TensorOp& x, const TensorOp& y, const char* what) {
  if (x.n != y.n || x.legs != y.legs) throw std::invalid_argument(std::string(what) + ": shape mismatch");
}
}  // namespace

TensorOp operator+(const TensorOp& x, const TensorOp& y) {
  check_shape(x, y, "tensor add");
  TensorOp out = x;
  for (const auto& [rc, v] : y.a) out.add_to(rc.first, rc.second, v);
  return out;
}

TensorOp operator-(const TensorOp& x, const TensorOp& y) {
  check_shape(x, y, "tensor sub");
  TensorOp out = x;
  for (const auto& [rc, v] : y.a) out.add_to(rc.first, rc.second, -v);
  return out;
}

TensorOp operator*(const QScalar& s, const TensorOp& x) {
  TensorOp out(x.n, x.legs);
  if (s.is_zero()) return out;
  for (const auto& [rc, v] : x.a) out.a[rc] = s * v;
  return out;
}

TensorOp operator*(const TensorOp& x, const TensorOp& y) {
  check_shape(x, y, "tensor compose");
  TensorOp out(x.n, x.legs);
  for (const auto& [rc, xv] : x.a) {
    auto it = y.a.lower_bound({rc.second, 0});
    for (; it != y.a.end() && it->first.first == rc.second; ++it) {
      out.add_to(rc.first, it->first.second, xv * it->second);
    }
  }
  return out;
}

TensorOp perm_op(int n, const std::vector<int>& perm) {
  int legs = static_cast<int>(perm.size());
  std::vector<bool> seen(legs, false);
  for (int p : perm) {
    if (p < 0 || p >= legs || seen[p]) throw std::invalid_argument("perm_op: not a permutation");
    seen[p] = true;
  }
  TensorOp x(n, legs);
  std::uint64_t d = x.dim();
  std::vector<int> jd(legs);
  for (std::uint64_t c = 0; c < d; ++c) {
    std::vector<int> id = unpack_index(n, legs, static_cast<std::uint32_t>(c));
    for (int t = 0; t < legs; ++t) jd[perm[t]] = id[t];
    x.a[{pack_index(n, jd), static_cast<std::uint32_t>(c)}] = QScalar(1);
  }
  return x;
}

TensorOp embed(const TensorOp& x, int total_legs, const std::vector<int>& positions) {
  if (static_cast<int>(positions.size()) != x.legs) {
    throw std::invalid_argument("embed: positions size mismatch");
  }
  std::vector<bool> used(total_legs, false);
  for (int p : positions) {
    if (p < 0 || p >= total_legs || used[p]) throw std::invalid_argument("embed: bad positions");
    used[p] = true;
  }
  std::vector<int> comp;
  for (int t = 0; t < total_legs; ++t) {
    if (!used[t]) comp.push_back(t);
  }
  TensorOp out(x.n, total_legs);
  std::uint64_t cd = tensor_dim(x.n, static_cast<int>(comp.size()));
  std::vector<int> rfull(total_legs), cfull(total_legs);
  for (const auto& [rc, v] : x.a) {
    std::vector<int> rd = unpack_index(x.n, x.legs, rc.first);
    std::vector<int> cdg = unpack_index(x.n, x.legs, rc.second);
    for (std::uint64_t m = 0; m < cd; ++m) {
      std::vector<int> md = unpack_index(x.n, static_cast<int>(comp.size()), static_cast<std::uint32_t>(m));
      for (size_t t = 0; t < positions.size(); ++t) {
        rfull[positions[t]] = rd[t];
        cfull[positions[t]] = cdg[t];
      }
      for (size_t u = 0; u < comp.size(); ++u) {
        rfull[comp[u]] = md[u];
        cfull[comp[u]] = md[u];
      }
      out.add_to(pack_index(x.n, rfull), pack_index(x.n, cfull), v);
    }
  }
  return out;
}

TensorOp transpose_op(const TensorOp& x) {
  TensorOp out(x.n, x.legs);
  for (const auto& [rc, v] : x.a) out.a[{rc.second, rc.first}] = v;
  return out;
}

TensorOp star(const TensorOp& x) {
  TensorOp out(x.n, x.legs);
  for (const auto& [rc, v] : x.a) out.a[rc] = v.star();
  return out;
}

RatMat eval_at_one(const TensorOp& x) {
  std::uint64_t d = x.dim();
  if (d > 100000) throw std::length_error("eval_at_one: operator too large for dense form");
  RatMat m(d, std::vector<GaussRational>(d));
  for (const auto& [rc, v] : x.a) m[rc.first][rc.second] = v.eval_at_one();
  return m;
}

TensorOp op_from_matrix(int n, int legs, const RatMat& m) {
  std::uint64_t d = tensor_dim(n, legs);
  if (m.size() != d) throw std::invalid_argument("op_from_matrix: size mismatch");
  TensorOp x(n, legs);
  for (std::uint32_t r = 0; r < d; ++r) {
    if (m[r].size() != d) throw std::invalid_argument("op_from_matrix: ragged matrix");
    for (std::uint32_t c = 0; c < d; ++c)
      if (!m[r][c].is_zero()) x.a.emplace(std::make_pair(r, c), QScalar(m[r][c]));
  }
  return x;
}

void TensorVec::add_to(std::uint32_t i, const QScalar& v) {
  if (v.is_zero()) return;
  auto [it, fresh] = a.try_emplace(i, v);
  if (!fresh) {
    it->second += v;
    if (it->second.is_zero()) a.erase(it);
  }
}

void TensorCovec::add_to(std::uint32_t i, const QScalar& v) {
  if (v.is_zero()) return;
  auto [it, fresh] = a.try_emplace(i, v);
  if (!fresh) {
    it->second += v;
    if (it->second.is_zero()) a.erase(it);
  }
}

TensorVec operator+(const TensorVec& x, const TensorVec& y) {
  if (x.n != y.n || x.legs != y.legs) throw std::invalid_argument("vec add: shape mismatch");
  TensorVec out = x;
  for (const auto& [i, v] : y.a) out.add_to(i, v);
  return out;
}

TensorVec operator-(const TensorVec& x, const TensorVec& y) {
  if (x.n != y.n || x.legs != y.legs) throw std::invalid_argument("vec sub: shape mismatch");
  TensorVec out = x;
  for (const auto& [i, v] : y.a) out.add_to(i, -v);
  return out;
}

TensorVec operator*(const QScalar& s, const TensorVec& x) {
  TensorVec out(x.n, x.legs);
  if (s.is_zero()) return out;
  for (const auto& [i, v] : x.a) out.a[i] = s * v;
  return out;
}

TensorVec apply(const TensorOp& x, const TensorVec& v) {
  if (x.n != v.n || x.legs != v.legs) throw std::invalid_argument("apply: shape mismatch");
  TensorVec out(x.n, x.legs);
  for (const auto& [rc, xv] : x.a) {
    auto it = v.a.find(rc.second);
    if (it != v.a.end()) out.add_to(rc.first, xv * it->second);
  }
  return out;
}

TensorCovec apply(const TensorCovec& c, const TensorOp& x) {
  if (x.n != c.n || x.legs != c.legs) throw std::invalid_argument("apply: shape mismatch");
  TensorCovec out(x.n, x.legs);
  for (const auto& [rc, xv] : x.a) {
    auto it = c.a.find(rc.first);
    if (it != c.a.end()) out.add_to(rc.second, it->second * xv);
  }
  return out;
}

QScalar pair(const TensorCovec& c, const TensorVec& v) {
  if (c.n != v.n || c.legs != v.legs) throw std::invalid_argument("pair: shape mismatch");
  QScalar s;
  for (const auto& [i, cv] : c.a) {
    auto it = v.a.find(i);
    if (it != v.a.end()) s += cv * it->second;
  }
  return s;
}

TensorOp outer(const TensorVec& v, const TensorCovec& c) {
  if (c.n != v.n || c.legs != v.legs) throw std::invalid_argument("outer: shape mismatch");
  TensorOp out(v.n, v.legs);
  for (const auto& [i, vv] : v.a) {
    for (const auto& [j, cv] : c.a) out.set(i, j, vv * cv);
  }
  return out;
}

TensorVec tensor_prod(const TensorVec& x, const TensorVec& y) {
  if (x.n != y.n) throw std::invalid_argument("tensor_prod: dimension mismatch");
  TensorVec out(x.n, x.legs + y.legs);
  std::uint64_t dx = tensor_dim(x.n, x.legs);
  for (const auto& [i, xv] : x.a) {
    for (const auto& [j, yv] : y.a) {
      out.a[static_cast<std::uint32_t>(i + dx * j)] = xv * yv;
    }
  }
  return out;
}

int rank(const TensorOp& x) {
  // Collect sparse rows.
  std::map<std::uint32_t, std::map<std::uint32_t, QScalar>> by_row;
  for (const auto& [rc, v] : x.a) by_row[rc.first][rc.second] = v;
  std::vector<std::map<std::uint32_t, QScalar>> rows;
  rows.reserve(by_row.size());
  for (auto& [r, row] : by_row) rows.push_back(std::move(row));

  int rk = 0;
  std::vector<bool> done(rows.size(), false);
  while (true) {
    // Pivot: lowest entry degree, then sparsest row, then smallest column/row.
    int best_row = -1;
    std::uint32_t best_col = 0;
    int best_deg = 0;
    size_t best_nnz = 0;
    for (size_t ri = 0; ri < rows.size(); ++ri) {
      if (done[ri] || rows[ri].empty()) continue;
      for (const auto& [cc, vv] : rows[ri]) {
        int dg = entry_degree(vv);
        bool better = best_row < 0 || dg < best_deg ||
                      (dg == best_deg && rows[ri].size() < best_nnz) ||
                      (dg == best_deg && rows[ri].size() == best_nnz && cc < best_col);
        if (better) {
          best_row = static_cast<int>(ri);
          best_col = cc;
          best_deg = dg;
          best_nnz = rows[ri].size();
        }
      }
    }
    if (best_row < 0) break;
    ++rk;
    done[best_row] = true;
    const auto& prow = rows[best_row];
    QScalar pinv = QScalar(1) / prow.at(best_col);
    for (size_t ri = 0; ri < rows.size(); ++ri) {
      if (done[ri]) continue;
      auto hit = rows[ri].find(best_col);
      if (hit == rows[ri].end()) continue;
      QScalar f = hit->second * pinv;
      for (const auto& [cc, vv] : prow) {
        auto it = rows[ri].find(cc);
        if (it == rows[ri].end()) {
          QScalar t = -(f * vv);
          if (!t.is_zero()) rows[ri].emplace(cc, std::move(t));
        } else {
          it->second -= f * vv;
          if (it->second.is_zero()) rows[ri].erase(it);
        }
      }
    }
  }
  return rk;
}

std::vector<TensorVec> kernel_basis(const TensorOp& x) {
  using Rref = SparseRref<std::uint32_t, std::greater<std::uint32_t>>;
  Rref rref;
  {
    std::map<std::uint32_t, Rref::Row> by_row;
    for (const auto& [rc, v] : x.a) by_row[rc.first][rc.second] = v;
    for (auto& [r, row] : by_row) rref.insert(std::move(row));
  }
  std::vector<bool> is_pivot(x.dim(), false);
  for (const auto& [lead, row] : rref.rows()) is_pivot[lead] = true;
  std::vector<TensorVec> basis;
  for (std::uint64_t f = 0; f < x.dim(); ++f) {
    if (is_pivot[f]) continue;
    TensorVec v(x.n, x.legs);
    v.a[static_cast<std::uint32_t>(f)] = QScalar(1);
    for (const auto& [lead, row] : rref.rows()) {
      auto it = row.find(static_cast<std::uint32_t>(f));
      if (it != row.end()) v.a[lead] = -it->second;
    }
    for (auto it = v.a.begin(); it != v.a.end();) {
      it = it->second.is_zero() ? v.a.erase(it) : std::next(it);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<TensorOp> lagrange_projectors(const TensorOp& x, const std::vector<QScalar>& eigenvalues) {
  size_t k = eigenvalues.size();
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = i + 1; j < k; ++j) {
      if (eigenvalues[i] == eigenvalues[j]) {
        throw std::invalid_argument("lagrange_projectors: repeated eigenvalue");
      }
    }
  }
  TensorOp id = tensor_identity(x.n, x.legs);
  // Minimal polynomial check: prod (x - mu_i) = 0.
  TensorOp prod = id;
  for (const auto& mu : eigenvalues) prod = prod * (x - mu * id);
  if (!prod.is_zero()) throw std::domain_error("lagrange_projectors: annihilating polynomial check failed");

  std::vector<TensorOp> ps;
  for (size_t i = 0; i < k; ++i) {
    TensorOp p = id;
    QScalar denom(1);
    for (size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      p = p * (x - eigenvalues[j] * id);
      denom *= eigenvalues[i] - eigenvalues[j];
    }
    ps.push_back((QScalar(1) / denom) * p);
  }
  for (size_t i = 0; i < k; ++i) {
    if (ps[i] * ps[i] != ps[i]) throw std::domain_error("lagrange_projectors: idempotence failed");
    for (size_t j = i + 1; j < k; ++j) {
      if (!(ps[i] * ps[j]).is_zero()) throw std::domain_error("lagrange_projectors: orthogonality failed");
    }
  }
  TensorOp sum(x.n, x.legs), recon(x.n, x.legs);
  for (size_t i = 0; i < k; ++i) {
    sum = sum + ps[i];
    recon = recon + eigenvalues[i] * ps[i];
  }
  if (sum != id) throw std::domain_error("lagrange_projectors: resolution of identity failed");
  if (recon != x) throw std::domain_error("lagrange_projectors: spectral reconstruction failed");
  return ps;
}

TensorOp right_symmetrize3(const TensorOp& x) {
  if (x.legs != 3) throw std::invalid_argument("right_symmetrize3: needs 3 legs");
  static const std::vector<std::vector<int>> s3 = {
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  TensorOp sym(x.n, 3);
  for (const auto& p : s3) sym = sym + perm_op(x.n, p);
  return x * (QScalar(Poly(GaussRational(Rat(1, 6))), Poly::one()) * sym);
}

void dump(std::ostream& os, const TensorOp& x) {
  os << "tensor " << x.legs << ' ' << x.n << ' ' << x.a.size() << '\n';
  for (const auto& [rc, v] : x.a) {
    os << rc.first << ' ' << rc.second << " | " << v.str() << '\n';
  }
}

TensorOp parse_tensor(std::istream& is) {
  std::string tag;
  int legs = 0, n = 0;
  size_t nnz = 0;
  if (!(is >> tag >> legs >> n >> nnz) || tag != "tensor") {
    throw std::invalid_argument("parse_tensor: bad header");
  }
  is.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
  TensorOp x(n, legs);
  for (size_t e = 0; e < nnz; ++e) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("parse_tensor: truncated");
    std::istringstream ls(line);
    std::uint32_t r = 0, c = 0;
    std::string bar;
    if (!(ls >> r >> c >> bar) || bar != "|") throw std::invalid_argument("parse_tensor: bad entry line");
    std::string rest;
    std::getline(ls, rest);
    size_t start = rest.find_first_not_of(' ');
    if (start == std::string::npos) throw std::invalid_argument("parse_tensor: missing scalar");
    x.set(r, c, QScalar::parse(std::string_view(rest).substr(start)));
  }
  return x;
}

std::string dump_str(const TensorOp& x) {
  std::ostringstream os;
  dump(os, x);
  return os.str();
}

TensorOp parse_tensor_str(const std::string& s) {
  std::istringstream is(s);
  return parse_tensor(is);
}

}  // namespace qiso
