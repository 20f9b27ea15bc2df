#include "qiso/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qiso {

namespace {

int rows_of(const RatMat& a) { return static_cast<int>(a.size()); }
int cols_of(const RatMat& a) { return a.empty() ? 0 : static_cast<int>(a[0].size()); }

void check_rect(const RatMat& a) {
  for (const auto& r : a) {
    if (static_cast<int>(r.size()) != cols_of(a)) throw std::invalid_argument("RatMat: ragged rows");
  }
}

Rat real_part(const GaussRational& x) {
  if (!x.im.is_zero()) throw std::domain_error("RatMat: expected real entry");
  return x.re;
}

// x = s^2 * m with m square-free (x > 0). Trial division; entries are small.
void square_free_split(Int x, Int& s, Int& m) {
  s = 1;
  m = 1;
  for (Int f = 2; f * f <= x; ++f) {
    while (x % (f * f) == 0) {
      x /= f * f;
      s *= f;
    }
    while (x % f == 0) {
      x /= f;
      m *= f;
    }
  }
  m *= x;
}

}  // namespace

RatMat rat_identity(int n) {
  RatMat a(n, std::vector<GaussRational>(n));
  for (int i = 0; i < n; ++i) a[i][i] = GaussRational(1);
  return a;
}

RatMat rat_mul(const RatMat& a, const RatMat& b) {
  check_rect(a);
  check_rect(b);
  if (cols_of(a) != rows_of(b)) throw std::invalid_argument("rat_mul: shape mismatch");
  RatMat c(rows_of(a), std::vector<GaussRational>(cols_of(b)));
  for (int i = 0; i < rows_of(a); ++i) {
    for (int k = 0; k < cols_of(a); ++k) {
      if (a[i][k].is_zero()) continue;
      for (int j = 0; j < cols_of(b); ++j) {
        if (b[k][j].is_zero()) continue;
        c[i][j] = c[i][j] + a[i][k] * b[k][j];
      }
    }
  }
  return c;
}

RatMat rat_transpose(const RatMat& a) {
  check_rect(a);
  RatMat t(cols_of(a), std::vector<GaussRational>(rows_of(a)));
  for (int i = 0; i < rows_of(a); ++i) {
    for (int j = 0; j < cols_of(a); ++j) t[j][i] = a[i][j];
  }
  return t;
}

bool rat_is_zero(const RatMat& a) {
  for (const auto& r : a) {
    for (const auto& x : r) {
      if (!x.is_zero()) return false;
    }
  }
  return true;
}

int rat_rank(RatMat a) {
  check_rect(a);
  int m = rows_of(a), n = cols_of(a), rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int piv = -1;
    for (int i = rank; i < m; ++i) {
      if (!a[i][col].is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    GaussRational inv = GaussRational(1) / a[rank][col];
    for (int j = col; j < n; ++j) a[rank][j] = a[rank][j] * inv;
    for (int i = rank + 1; i < m; ++i) {
      if (a[i][col].is_zero()) continue;
      GaussRational f = a[i][col];
      for (int j = col; j < n; ++j) a[i][j] = a[i][j] - f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

std::vector<std::vector<GaussRational>> rat_kernel(RatMat a) {
  check_rect(a);
  int m = rows_of(a), n = cols_of(a);
  std::vector<int> pivot_col;  // pivot column of each echelon row
  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int piv = -1;
    for (int i = rank; i < m; ++i) {
      if (!a[i][col].is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    GaussRational inv = GaussRational(1) / a[rank][col];
    for (int j = col; j < n; ++j) a[rank][j] = a[rank][j] * inv;
    for (int i = 0; i < m; ++i) {
      if (i == rank || a[i][col].is_zero()) continue;
      GaussRational f = a[i][col];
      for (int j = col; j < n; ++j) a[i][j] = a[i][j] - f * a[rank][j];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<GaussRational>> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<GaussRational> x(n);
    x[f] = GaussRational(1);
    for (int r = 0; r < rank; ++r) x[pivot_col[r]] = GaussRational(0) - a[r][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

RatMat rat_inverse(RatMat a) {
  check_rect(a);
  int n = rows_of(a);
  if (n != cols_of(a)) throw std::invalid_argument("rat_inverse: not square");
  RatMat inv = rat_identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i) {
      if (!a[i][col].is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) throw std::domain_error("rat_inverse: singular matrix");
    std::swap(a[col], a[piv]);
    std::swap(inv[col], inv[piv]);
    GaussRational s = GaussRational(1) / a[col][col];
    for (int j = 0; j < n; ++j) {
      a[col][j] = a[col][j] * s;
      inv[col][j] = inv[col][j] * s;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || a[i][col].is_zero()) continue;
      GaussRational f = a[i][col];
      for (int j = 0; j < n; ++j) {
        a[i][j] = a[i][j] - f * a[col][j];
        inv[i][j] = inv[i][j] - f * inv[col][j];
      }
    }
  }
  return inv;
}

namespace {

// In-place congruence column operations on (a, c): a <- E^T a E, c <- c E.
void cg_swap(RatMat& a, RatMat& c, int i, int j) {
  int n = rows_of(a);
  for (int r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
  std::swap(a[i], a[j]);
  for (int r = 0; r < n; ++r) std::swap(c[r][i], c[r][j]);
}

void cg_add(RatMat& a, RatMat& c, int dst, int src, const GaussRational& f) {
  int n = rows_of(a);
  for (int r = 0; r < n; ++r) a[r][dst] = a[r][dst] + f * a[r][src];
  for (int j = 0; j < n; ++j) a[dst][j] = a[dst][j] + f * a[src][j];
  for (int r = 0; r < n; ++r) c[r][dst] = c[r][dst] + f * c[r][src];
}

void cg_scale(RatMat& a, RatMat& c, int i, const GaussRational& t) {
  int n = rows_of(a);
  for (int r = 0; r < n; ++r) a[r][i] = a[r][i] * t;
  for (int j = 0; j < n; ++j) a[i][j] = a[i][j] * t;
  for (int r = 0; r < n; ++r) c[r][i] = c[r][i] * t;
}

}  // namespace

Congruence congruence_diagonalize(const RatMat& a_in) {
  check_rect(a_in);
  int n = rows_of(a_in);
  if (n != cols_of(a_in)) throw std::invalid_argument("congruence: not square");
  RatMat at = rat_transpose(a_in);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!(a_in[i][j] == at[i][j])) throw std::invalid_argument("congruence: not symmetric");
      real_part(a_in[i][j]);
    }
  }
  RatMat a = a_in;
  RatMat c = rat_identity(n);
  for (int k = 0; k < n; ++k) {
    if (a[k][k].is_zero()) {
      int d = -1;
      for (int j = k + 1; j < n; ++j) {
        if (!a[j][j].is_zero()) {
          d = j;
          break;
        }
      }
      if (d >= 0) {
        cg_swap(a, c, k, d);
      } else {
        int off = -1;
        for (int j = k + 1; j < n; ++j) {
          if (!a[k][j].is_zero()) {
            off = j;
            break;
          }
        }
        if (off < 0) {
          // Search the whole trailing block for any nonzero coupling.
          int bi = -1, bj = -1;
          for (int i = k + 1; i < n && bi < 0; ++i) {
            for (int j = i + 1; j < n; ++j) {
              if (!a[i][j].is_zero()) {
                bi = i;
                bj = j;
                break;
              }
            }
          }
          if (bi < 0) continue;  // trailing block is zero
          cg_swap(a, c, k, bi);
          off = bj;
        }
        cg_add(a, c, k, off, GaussRational(1));  // 2*a[k][off] lands on the diagonal
      }
    }
    if (a[k][k].is_zero()) continue;
    for (int j = k + 1; j < n; ++j) {
      if (a[k][j].is_zero()) continue;
      GaussRational f = GaussRational(0) - a[k][j] / a[k][k];
      cg_add(a, c, j, k, f);
    }
  }
  Congruence out;
  out.transform = c;
  out.diagonal.resize(n);
  for (int i = 0; i < n; ++i) out.diagonal[i] = real_part(a[i][i]);
  return out;
}

Signature rat_signature(const RatMat& a) {
  Congruence cg = congruence_diagonalize(a);
  Signature s;
  for (const Rat& d : cg.diagonal) {
    if (d > 0) {
      ++s.positive;
    } else if (d < 0) {
      ++s.negative;
    } else {
      ++s.zero;
    }
  }
  return s;
}

namespace {

// Canonical congruence form: S with S^T g S = diag(d), where each d_i is a
// signed square-free integer, hyperbolic pairs (m, -m) replaced by (1, -1),
// entries sorted descending.
struct CanonicalForm {
  RatMat transform;
  std::vector<Rat> diagonal;
};

CanonicalForm canonical_congruence(const RatMat& g) {
  Congruence cg = congruence_diagonalize(g);
  int n = rows_of(g);
  RatMat s = cg.transform;
  std::vector<Rat> d = cg.diagonal;

  // Represent the running diagonal matrix explicitly so the cg_* helpers apply.
  RatMat dm(n, std::vector<GaussRational>(n));
  for (int i = 0; i < n; ++i) dm[i][i] = GaussRational(d[i]);

  // Scale each entry to its signed square-free integer part.
  for (int i = 0; i < n; ++i) {
    if (d[i].is_zero()) continue;
    Rat ad = d[i] < 0 ? -d[i] : d[i];
    Int p = boost::multiprecision::numerator(ad);
    Int q = boost::multiprecision::denominator(ad);
    Int sq, m;
    square_free_split(p * q, sq, m);
    // d * t^2 = sign(d) * m for t = q / sq.
    GaussRational t{Rat(q, sq), Rat(0)};
    cg_scale(dm, s, i, t);
    d[i] = real_part(dm[i][i]);
  }

  // Pair (m, -m) into (1, -1): columns u = (a, b), v = (b, a) with
  // a = (1 + 1/m)/2, b = (1 - 1/m)/2 satisfy Q(u) = 1, Q(v) = -1, B(u,v) = 0.
  std::map<Rat, std::vector<int>> pos, neg;
  for (int i = 0; i < n; ++i) {
    if (d[i] > 0) pos[d[i]].push_back(i);
    if (d[i] < 0) neg[-d[i]].push_back(i);
  }
  for (auto& [m, pidx] : pos) {
    if (m == 1) continue;
    auto it = neg.find(m);
    if (it == neg.end()) continue;
    auto& nidx = it->second;
    size_t pairs = std::min(pidx.size(), nidx.size());
    for (size_t t = 0; t < pairs; ++t) {
      int ip = pidx[t], in = nidx[t];
      Rat half(1, 2);
      Rat ca = half + Rat(1) / (Rat(2) * m);
      Rat cb = half - Rat(1) / (Rat(2) * m);
      // Column ops: col_ip' = ca*col_ip + cb*col_in ; col_in' = cb*col_ip + ca*col_in.
      // Express via temporaries on s and dm.
      RatMat s_old = s;
      RatMat dm_old = dm;
      for (int r = 0; r < n; ++r) {
        s[r][ip] = s_old[r][ip] * GaussRational(ca) + s_old[r][in] * GaussRational(cb);
        s[r][in] = s_old[r][ip] * GaussRational(cb) + s_old[r][in] * GaussRational(ca);
      }
      // dm' = T^T dm T for the 2x2 block transform.
      RatMat tmat = rat_identity(n);
      tmat[ip][ip] = GaussRational(ca);
      tmat[in][ip] = GaussRational(cb);
      tmat[ip][in] = GaussRational(cb);
      tmat[in][in] = GaussRational(ca);
      dm = rat_mul(rat_mul(rat_transpose(tmat), dm_old), tmat);
      d[ip] = real_part(dm[ip][ip]);
      d[in] = real_part(dm[in][in]);
    }
  }

  // Sort columns by canonical value descending (deterministic).
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return d[x] > d[y]; });
  RatMat s2(n, std::vector<GaussRational>(n));
  std::vector<Rat> d2(n);
  for (int j = 0; j < n; ++j) {
    for (int r = 0; r < n; ++r) s2[r][j] = s[r][order[j]];
    d2[j] = d[order[j]];
  }
  CanonicalForm out;
  out.transform = s2;
  out.diagonal = d2;
  return out;
}

}  // namespace

std::optional<RatMat> congruence_transform(const RatMat& g_from, const RatMat& g_to) {
  if (rows_of(g_from) != rows_of(g_to) || cols_of(g_from) != cols_of(g_to)) return std::nullopt;
  CanonicalForm a = canonical_congruence(g_from);
  CanonicalForm b = canonical_congruence(g_to);
  if (a.diagonal != b.diagonal) return std::nullopt;
  RatMat s = rat_mul(a.transform, rat_inverse(b.transform));
  RatMat check = rat_mul(rat_mul(rat_transpose(s), g_from), s);
  if (!(check == g_to)) throw std::logic_error("congruence_transform: internal verification failed");
  return s;
}

}  // namespace qiso
