#include "core/siegel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <utility>

namespace atlas {

namespace {

bool in_domain(Int k, Int l, Int n) {
  if (k > 0 && 2 * k < n) return l >= 0 && l < n;
  if (k == 0) return l > 0 && 2 * l <= n;
  if (2 * k == n) return l >= 0 && 2 * l <= n;
  return false;
}

}  // namespace

std::vector<APoint> standard_domain(Int n) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "the domain needs level >= 2");
  std::vector<APoint> out;
  for (Int k = 0; 2 * k <= n; ++k)
    for (Int l = 0; l < n; ++l)
      if (in_domain(k, l, n)) out.push_back({k, l});
  return out;
}

APoint fold_point(Int k, Int l, Int n) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "the domain needs level >= 2");
  k = mod_ll(k, n);
  l = mod_ll(l, n);
  if (k == 0 && l == 0)
    fail(ErrorCode::InvalidArgument, "the zero class has no Siegel point");
  if (in_domain(k, l, n)) return {k, l};
  Int k2 = mod_ll(-k, n), l2 = mod_ll(-l, n);
  if (!in_domain(k2, l2, n))
    fail(ErrorCode::Internal, "point folding left the standard domain");
  return {k2, l2};
}

int OrbitSet::orbit_of(const APoint& a) const {
  for (std::size_t i = 0; i < orbits.size(); ++i)
    if (std::binary_search(orbits[i].begin(), orbits[i].end(), a))
      return int(i);
  fail(ErrorCode::InvalidArgument, "point lies outside the standard domain");
}

Int OrbitSet::total_points() const {
  Int t = 0;
  for (const auto& o : orbits) t += Int(o.size());
  return t;
}

OrbitSet siegel_orbits(const Group& h) {
  Int n = h.modulus();
  if (n < 2) fail(ErrorCode::InvalidArgument, "orbits need modulus >= 2");
  Group s = h.intersect_sl2();
  std::vector<APoint> dom = standard_domain(n);
  std::map<APoint, int> index_of;
  for (std::size_t i = 0; i < dom.size(); ++i) index_of[dom[i]] = int(i);
  std::vector<char> seen(dom.size(), 0);

  OrbitSet os;
  os.modulus = n;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    if (seen[i]) continue;
    std::set<APoint> orb;
    for (const Mat2& g : s.elements()) {
      Int kk = dom[i].k * g.a + dom[i].l * g.c;
      Int ll = dom[i].k * g.b + dom[i].l * g.d;
      orb.insert(fold_point(kk, ll, n));
    }
    std::vector<APoint> o(orb.begin(), orb.end());
    for (const APoint& p : o) {
      auto it = index_of.find(p);
      if (it == index_of.end())
        fail(ErrorCode::Internal, "orbit escaped the standard domain");
      seen[std::size_t(it->second)] = 1;
    }
    os.orbits.push_back(std::move(o));
  }
  return os;
}

Rat siegel_leading_exponent(const APoint& a, Int n) {
  if (n < 2 || !in_domain(a.k, a.l, n))
    fail(ErrorCode::InvalidArgument, "not a standard-domain point");
  return make_rat(6 * a.k * a.k - 6 * a.k * n + n * n, 12 * n * n);
}

QSeries<CyclotomicNumber> SiegelProduct::normalized() const {
  QSeries<CyclotomicNumber> t = tail.scaled(tail.leading_coeff().inverse());
  Rat off = q_offset;
  off.canonicalize();
  Int od = Int(off.get_den().get_si());
  Int grid = lcm_ll(modulus, od);
  t = t.rescaled(grid);
  Int shift = Int(off.get_num().get_si()) * (grid / od);
  return t.shifted(shift);
}

SiegelProduct siegel_orbit_product(const OrbitSet& os, int orbit, Int terms) {
  if (orbit < 0 || std::size_t(orbit) >= os.orbits.size())
    fail(ErrorCode::InvalidArgument, "orbit index out of range");
  if (terms < 1) fail(ErrorCode::InvalidArgument, "need at least one term");
  Int n = os.modulus;
  Int two_n2 = 2 * n * n;

  std::vector<CyclotomicNumber> acc(static_cast<std::size_t>(terms));
  acc[0] = CyclotomicNumber::zeta_power(n, 0);  // one, held at level n
  Int unit = 0;
  Rat offset(0);

  auto mul_binomial = [&](Int e, const CyclotomicNumber& coef) {
    if (e >= terms) return;
    for (Int i = terms - 1 - e; i >= 0; --i) {
      if (acc[std::size_t(i)].is_zero()) continue;
      acc[std::size_t(i + e)] =
          acc[std::size_t(i + e)] + coef * acc[std::size_t(i)];
    }
  };

  for (const APoint& a : os.orbits[std::size_t(orbit)]) {
    unit = mod_ll(unit + n * n + a.l * (a.k - n), two_n2);
    offset += make_rat(6 * a.k * a.k - 6 * a.k * n + n * n, 12 * n * n);
    CyclotomicNumber zp = CyclotomicNumber::zeta_power(n, a.l);
    CyclotomicNumber zm = CyclotomicNumber::zeta_power(n, -a.l);
    if (a.k > 0)
      mul_binomial(a.k, -zp);
    else {
      CyclotomicNumber c = CyclotomicNumber(1) - zp;
      for (CyclotomicNumber& v : acc)
        if (!v.is_zero()) v = v * c;
    }
    for (Int m = 1; m * n + a.k < terms; ++m) mul_binomial(m * n + a.k, -zp);
    for (Int m = 1; m * n - a.k < terms; ++m) mul_binomial(m * n - a.k, -zm);
  }

  SiegelProduct sp;
  sp.modulus = n;
  sp.q_offset = offset;
  sp.unit_exponent = unit;
  sp.tail = QSeries<CyclotomicNumber>(n, 0, terms, std::move(acc));
  return sp;
}

std::vector<Int> orbit_divisor(const OrbitSet& os, int orbit,
                               const ModularInvariants& mi) {
  if (orbit < 0 || std::size_t(orbit) >= os.orbits.size())
    fail(ErrorCode::InvalidArgument, "orbit index out of range");
  if (mi.modulus != os.modulus)
    fail(ErrorCode::ModulusMismatch, "orbits and curve have different levels");
  Int n = os.modulus;
  const std::vector<APoint>& orb = os.orbits[std::size_t(orbit)];

  std::vector<Int> div;
  Int total = 0;
  for (const CuspInfo& cusp : mi.cusps) {
    Int alpha = mod_ll(cusp.lift.a, n), gamma = mod_ll(cusp.lift.c, n);
    Rat sum(0);
    for (const APoint& a : orb) {
      Int m = mod_ll(a.k * alpha + a.l * gamma, n);
      sum += make_rat(6 * m * m - 6 * m * n + n * n, 6 * n * n);
    }
    Rat mult = make_rat(6 * n * cusp.width, 1) * sum;
    mult.canonicalize();
    if (mult.get_den() != 1)
      fail(ErrorCode::Internal, "divisor multiplicity is not integral");
    Int v = Int(mult.get_num().get_si());
    div.push_back(v);
    total += v;
  }
  if (total != 0) fail(ErrorCode::Internal, "divisor has nonzero degree");
  return div;
}

namespace {

struct IntSolve {
  bool solvable = false;
  std::vector<Int> particular;
  std::vector<std::vector<Int>> kernel;
};

// Column-echelon reduction over Z with a transformation record; solves
// a * m = t exactly.
IntSolve solve_integer_system(std::vector<std::vector<Int>> a,
                              const std::vector<Int>& t) {
  int rows = int(a.size());
  int cols = rows ? int(a[0].size()) : 0;
  IntSolve out;
  if (cols == 0) {
    for (Int v : t)
      if (v != 0) return out;
    out.solvable = true;
    return out;
  }

  std::vector<std::vector<Int>> u(std::size_t(cols),
                                  std::vector<Int>(std::size_t(cols), 0));
  for (int i = 0; i < cols; ++i) u[std::size_t(i)][std::size_t(i)] = 1;

  auto col_sub = [&](int dst, int src, Int q) {  // column dst -= q * src
    for (int r = 0; r < rows; ++r)
      a[std::size_t(r)][std::size_t(dst)] -= q * a[std::size_t(r)][std::size_t(src)];
    for (int r = 0; r < cols; ++r)
      u[std::size_t(r)][std::size_t(dst)] -= q * u[std::size_t(r)][std::size_t(src)];
  };
  auto col_swap = [&](int x, int y) {
    if (x == y) return;
    for (int r = 0; r < rows; ++r)
      std::swap(a[std::size_t(r)][std::size_t(x)], a[std::size_t(r)][std::size_t(y)]);
    for (int r = 0; r < cols; ++r)
      std::swap(u[std::size_t(r)][std::size_t(x)], u[std::size_t(r)][std::size_t(y)]);
  };
  auto col_neg = [&](int x) {
    for (int r = 0; r < rows; ++r) a[std::size_t(r)][std::size_t(x)] = -a[std::size_t(r)][std::size_t(x)];
    for (int r = 0; r < cols; ++r) u[std::size_t(r)][std::size_t(x)] = -u[std::size_t(r)][std::size_t(x)];
  };

  int pc = 0;
  std::vector<int> pivot_row;
  for (int row = 0; row < rows && pc < cols; ++row) {
    int nz = -1;
    for (int j = pc; j < cols; ++j)
      if (a[std::size_t(row)][std::size_t(j)] != 0) {
        nz = j;
        break;
      }
    if (nz < 0) continue;
    col_swap(pc, nz);
    for (int j = pc + 1; j < cols; ++j) {
      while (a[std::size_t(row)][std::size_t(j)] != 0) {
        Int q = a[std::size_t(row)][std::size_t(j)] / a[std::size_t(row)][std::size_t(pc)];
        col_sub(j, pc, q);
        if (a[std::size_t(row)][std::size_t(j)] == 0) break;
        col_swap(pc, j);
      }
    }
    if (a[std::size_t(row)][std::size_t(pc)] < 0) col_neg(pc);
    pivot_row.push_back(row);
    ++pc;
  }

  std::vector<Int> y(std::size_t(cols), 0);
  std::vector<Int> resid = t;
  for (int i = 0; i < pc; ++i) {
    int row = pivot_row[std::size_t(i)];
    Int piv = a[std::size_t(row)][std::size_t(i)];
    if (resid[std::size_t(row)] % piv != 0) return out;
    Int q = resid[std::size_t(row)] / piv;
    y[std::size_t(i)] = q;
    for (int r = 0; r < rows; ++r)
      resid[std::size_t(r)] -= q * a[std::size_t(r)][std::size_t(i)];
  }
  for (Int v : resid)
    if (v != 0) return out;

  out.solvable = true;
  out.particular.assign(std::size_t(cols), 0);
  for (int i = 0; i < cols; ++i) {
    Int s = 0;
    for (int j = 0; j < cols; ++j) s += u[std::size_t(i)][std::size_t(j)] * y[std::size_t(j)];
    out.particular[std::size_t(i)] = s;
  }
  for (int j = pc; j < cols; ++j) {
    std::vector<Int> k(static_cast<std::size_t>(cols));
    for (int i = 0; i < cols; ++i) k[std::size_t(i)] = u[std::size_t(i)][std::size_t(j)];
    out.kernel.push_back(std::move(k));
  }
  return out;
}

Int inf_norm(const std::vector<Int>& v) {
  Int m = 0;
  for (Int x : v) m = std::max(m, x < 0 ? -x : x);
  return m;
}

}  // namespace

std::vector<Int> solve_exponents(const std::vector<std::vector<Int>>& divisors,
                                 const std::vector<Int>& target) {
  int cols = int(divisors.size());
  int rows = int(target.size());
  for (const auto& d : divisors)
    if (int(d.size()) != rows)
      fail(ErrorCode::InvalidArgument, "divisor vectors have mixed lengths");

  std::vector<std::vector<Int>> a(std::size_t(rows),
                                  std::vector<Int>(std::size_t(cols), 0));
  for (int j = 0; j < cols; ++j)
    for (int r = 0; r < rows; ++r) a[std::size_t(r)][std::size_t(j)] = divisors[std::size_t(j)][std::size_t(r)];

  IntSolve s = solve_integer_system(a, target);
  if (!s.solvable)
    fail(ErrorCode::NoSolution,
         "no integral combination of the divisors matches the target");
  if (cols == 0) return {};

  // greedy lattice size reduction of the particular solution
  std::vector<Int> best = s.particular;
  bool improved = true;
  while (improved) {
    improved = false;
    for (const auto& k : s.kernel) {
      double num = 0, den = 0;
      for (int i = 0; i < cols; ++i) {
        num += double(best[std::size_t(i)]) * double(k[std::size_t(i)]);
        den += double(k[std::size_t(i)]) * double(k[std::size_t(i)]);
      }
      if (den == 0) continue;
      Int t0 = Int(llround(num / den));
      for (Int dt = t0 - 1; dt <= t0 + 1; ++dt) {
        if (dt == 0) continue;
        std::vector<Int> cand = best;
        for (int i = 0; i < cols; ++i) cand[std::size_t(i)] -= dt * k[std::size_t(i)];
        if (inf_norm(cand) < inf_norm(best)) {
          best = cand;
          improved = true;
        }
      }
    }
  }

  // exact minimum-norm search, lexicographically least among ties
  Int bound = inf_norm(best);
  std::vector<std::vector<Int>> suffix(std::size_t(cols) + 1,
                                       std::vector<Int>(std::size_t(rows), 0));
  for (int j = cols - 1; j >= 0; --j)
    for (int r = 0; r < rows; ++r)
      suffix[std::size_t(j)][std::size_t(r)] =
          suffix[std::size_t(j) + 1][std::size_t(r)] +
          (a[std::size_t(r)][std::size_t(j)] < 0 ? -a[std::size_t(r)][std::size_t(j)]
                                                 : a[std::size_t(r)][std::size_t(j)]);

  for (Int radius = 0; radius <= bound; ++radius) {
    std::vector<Int> m(std::size_t(cols), 0), resid = target;
    std::function<bool(int)> dfs = [&](int j) -> bool {
      for (int r = 0; r < rows; ++r) {
        Int v = resid[std::size_t(r)];
        if (v < 0) v = -v;
        if (v > radius * suffix[std::size_t(j)][std::size_t(r)]) return false;
      }
      if (j == cols) return true;
      for (int r = 0; r < rows; ++r)
        resid[std::size_t(r)] += radius * a[std::size_t(r)][std::size_t(j)];
      for (Int v = -radius; v <= radius; ++v) {
        m[std::size_t(j)] = v;
        if (dfs(j + 1)) return true;
        if (v < radius)
          for (int r = 0; r < rows; ++r)
            resid[std::size_t(r)] -= a[std::size_t(r)][std::size_t(j)];
      }
      m[std::size_t(j)] = 0;
      for (int r = 0; r < rows; ++r)
        resid[std::size_t(r)] += radius * a[std::size_t(r)][std::size_t(j)];
      return false;
    };
    if (dfs(0)) return m;
  }
  fail(ErrorCode::Internal, "minimum-norm search missed its upper bound");
}

Hauptmodul find_hauptmodul(const OrbitSet& os, const ModularInvariants& mi,
                           Int terms) {
  if (mi.genus != 0)
    fail(ErrorCode::InvalidArgument, "a hauptmodul needs a genus zero curve");
  if (mi.modulus != os.modulus)
    fail(ErrorCode::ModulusMismatch, "orbits and curve have different levels");
  Int n = os.modulus;

  std::vector<std::vector<Int>> divs;
  for (std::size_t j = 0; j < os.orbits.size(); ++j)
    divs.push_back(orbit_divisor(os, int(j), mi));

  int p1 = cusp_index_of_point(mi, 1, 0);
  int nc = int(mi.cusps.size());
  for (int p2 = 0; p2 < nc; ++p2) {
    if (p2 == p1) continue;
    std::vector<Int> target(std::size_t(nc), 0);
    target[std::size_t(p1)] = -12 * n;
    target[std::size_t(p2)] = 12 * n;
    std::vector<Int> expn;
    try {
      expn = solve_exponents(divs, target);
    } catch (const AtlasError& e) {
      if (e.code() == ErrorCode::NoSolution) continue;
      throw;
    }

    Hauptmodul hm;
    hm.exponents = expn;
    hm.p1 = p1;
    hm.p2 = p2;
    QSeries<CyclotomicNumber> prod = QSeries<CyclotomicNumber>::one(n, terms);
    Rat offset(0);
    for (std::size_t j = 0; j < expn.size(); ++j) {
      if (expn[j] == 0) continue;
      SiegelProduct sp = siegel_orbit_product(os, int(j), terms);
      offset += Rat(long(expn[j])) * sp.q_offset;
      prod = prod * sp.tail.pow(expn[j]);
    }
    offset.canonicalize();
    Int od = Int(offset.get_den().get_si());
    if (n % od != 0)
      fail(ErrorCode::Internal, "hauptmodul order is off the level grid");
    Int shift = Int(offset.get_num().get_si()) * (n / od);
    prod = prod.scaled(prod.leading_coeff().inverse());
    hm.series = prod.shifted(shift);
    return hm;
  }
  fail(ErrorCode::NoSolution, "no cusp pair admits a hauptmodul product");
}

QSeries<Rat> j_expansion(Int terms) {
  if (terms < 2) fail(ErrorCode::InvalidArgument, "need at least two terms");
  static std::mutex mu;
  static std::map<Int, QSeries<Rat>> cache;
  {
    std::scoped_lock lock(mu);
    auto it = cache.find(terms);
    if (it != cache.end()) return it->second;
  }

  std::vector<long long> s3(std::size_t(terms), 0);
  for (Int d = 1; d < terms; ++d)
    for (Int x = d; x < terms; x += d) s3[std::size_t(x)] += d * d * d;
  std::vector<Rat> e4(static_cast<std::size_t>(terms));
  e4[0] = 1;
  for (Int i = 1; i < terms; ++i) e4[std::size_t(i)] = Rat(240) * Rat(long(s3[std::size_t(i)]));

  std::vector<Rat> eta(std::size_t(terms), Rat(0));
  eta[0] = 1;
  for (Int k = 1;; ++k) {
    Int e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
    if (e1 >= terms && e2 >= terms) break;
    Rat sign((k & 1) ? -1 : 1);
    if (e1 < terms) eta[std::size_t(e1)] += sign;
    if (e2 < terms) eta[std::size_t(e2)] += sign;
  }

  QSeries<Rat> E4(1, 0, terms, std::move(e4));
  QSeries<Rat> H(1, 0, terms, std::move(eta));
  QSeries<Rat> delta = H.pow(24).shifted(1);
  QSeries<Rat> j = E4.pow(3) * delta.inverse();

  std::scoped_lock lock(mu);
  cache.emplace(terms, j);
  return j;
}

namespace {

CyclotomicNumber to_cyclo(const Rat& v) { return CyclotomicNumber(v); }
CyclotomicNumber to_cyclo(const CyclotomicNumber& v) { return v; }

template <class K>
std::vector<std::vector<K>> kernel_basis(const std::vector<std::vector<K>>& rows,
                                         int cols) {
  std::vector<std::vector<K>> m = rows;
  int r = int(m.size());
  std::vector<int> pivot_row_of_col(std::size_t(cols), -1);
  int prow = 0;
  for (int col = 0; col < cols && prow < r; ++col) {
    int sel = -1;
    for (int i = prow; i < r; ++i)
      if (!(m[std::size_t(i)][std::size_t(col)] == K())) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(m[std::size_t(prow)], m[std::size_t(sel)]);
    K inv = K(1) / m[std::size_t(prow)][std::size_t(col)];
    for (int j = col; j < cols; ++j)
      m[std::size_t(prow)][std::size_t(j)] = m[std::size_t(prow)][std::size_t(j)] * inv;
    for (int i = 0; i < r; ++i) {
      if (i == prow) continue;
      if (m[std::size_t(i)][std::size_t(col)] == K()) continue;
      K f = m[std::size_t(i)][std::size_t(col)];
      for (int j = col; j < cols; ++j)
        m[std::size_t(i)][std::size_t(j)] =
            m[std::size_t(i)][std::size_t(j)] - f * m[std::size_t(prow)][std::size_t(j)];
    }
    pivot_row_of_col[std::size_t(col)] = prow;
    ++prow;
  }
  std::vector<std::vector<K>> basis;
  for (int col = 0; col < cols; ++col) {
    if (pivot_row_of_col[std::size_t(col)] >= 0) continue;
    std::vector<K> v(static_cast<std::size_t>(cols), K());
    v[std::size_t(col)] = K(1);
    for (int c2 = 0; c2 < cols; ++c2) {
      int pr = pivot_row_of_col[std::size_t(c2)];
      if (pr >= 0) v[std::size_t(c2)] = K() - m[std::size_t(pr)][std::size_t(col)];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class K>
RationalRelation find_relation_core(const QSeries<K>& h0, const QSeries<K>& f0,
                                    Int num_degree, Int den_degree) {
  if (num_degree < 0 || den_degree < 0)
    fail(ErrorCode::InvalidArgument, "relation degrees must be nonnegative");
  Int d = lcm_ll(h0.den(), f0.den());
  QSeries<K> h = h0.rescaled(d), f = f0.rescaled(d);
  Int top = std::max(num_degree, den_degree);
  Int span = h.lo() < 0 ? -h.lo() : h.lo();
  Int big = f.cut() + (top + 1) * (span + 1) + 8;

  std::vector<QSeries<K>> hp;
  hp.reserve(std::size_t(top) + 1);
  hp.push_back(QSeries<K>::one(d, big));
  for (Int i = 1; i <= top; ++i) hp.push_back(hp.back() * h);

  std::vector<QSeries<K>> cols;
  for (Int i = 0; i <= num_degree; ++i) cols.push_back(-hp[std::size_t(i)]);
  for (Int j = 0; j <= den_degree; ++j) cols.push_back(f * hp[std::size_t(j)]);

  Int lo = cols[0].lo(), cut = cols[0].cut();
  for (const auto& c : cols) {
    lo = std::min(lo, c.lo());
    cut = std::min(cut, c.cut());
  }
  int ncols = int(cols.size());
  Int need = Int(ncols) + std::max<Int>(Int(ncols) / 4, 8);
  Int avail = cut - lo;
  if (avail < need)
    fail(ErrorCode::InsufficientPrecision,
         "series are too short for a verified relation");

  Int rows_used = need;
  while (true) {
    std::vector<std::vector<K>> rows(
        static_cast<std::size_t>(rows_used),
        std::vector<K>(static_cast<std::size_t>(ncols)));
    for (Int e = 0; e < rows_used; ++e)
      for (int c = 0; c < ncols; ++c)
        rows[std::size_t(e)][std::size_t(c)] = cols[std::size_t(c)].coeff(lo + e, d);

    std::vector<std::vector<K>> kern = kernel_basis(rows, ncols);
    for (const auto& v : kern) {
      bool den_zero = true;
      for (Int j = 0; j <= den_degree; ++j)
        if (!(v[std::size_t(num_degree + 1 + j)] == K())) den_zero = false;
      if (den_zero) continue;

      QSeries<K> resid = QSeries<K>::zero(d, cut);
      for (int c = 0; c < ncols; ++c) {
        if (v[std::size_t(c)] == K()) continue;
        resid = resid + cols[std::size_t(c)].scaled(v[std::size_t(c)]);
      }
      if (!resid.known_zero()) continue;

      Int lead = den_degree;
      while (v[std::size_t(num_degree + 1 + lead)] == K()) --lead;
      K scale = K(1) / v[std::size_t(num_degree + 1 + lead)];
      std::vector<CyclotomicNumber> nc(std::size_t(num_degree) + 1);
      std::vector<CyclotomicNumber> dc(std::size_t(den_degree) + 1);
      for (Int i = 0; i <= num_degree; ++i)
        nc[std::size_t(i)] = to_cyclo(v[std::size_t(i)] * scale);
      for (Int j = 0; j <= den_degree; ++j)
        dc[std::size_t(j)] = to_cyclo(v[std::size_t(num_degree + 1 + j)] * scale);
      RationalRelation rel;
      rel.num = Poly<CyclotomicNumber>(std::move(nc));
      rel.den = Poly<CyclotomicNumber>(std::move(dc));
      return rel;
    }
    if (kern.empty() || rows_used >= avail)
      fail(ErrorCode::NoSolution, "no relation at the requested degrees");
    rows_used = std::min(avail, rows_used * 2);
  }
}

}  // namespace

RationalRelation find_relation(const QSeries<CyclotomicNumber>& h,
                               const QSeries<CyclotomicNumber>& f,
                               Int num_degree, Int den_degree) {
  std::optional<QSeries<Rat>> hr = try_demote(h);
  std::optional<QSeries<Rat>> fr = try_demote(f);
  if (hr && fr) return find_relation_core<Rat>(*hr, *fr, num_degree, den_degree);
  return find_relation_core<CyclotomicNumber>(h, f, num_degree, den_degree);
}

RationalRelation find_relation(const QSeries<Rat>& h, const QSeries<Rat>& f,
                               Int num_degree, Int den_degree) {
  return find_relation_core<Rat>(h, f, num_degree, den_degree);
}

MoebiusMap MoebiusMap::inverse() const { return {d, CyclotomicNumber() - b, CyclotomicNumber() - c, a}; }

std::optional<CyclotomicNumber> MoebiusMap::eval(
    const std::optional<CyclotomicNumber>& z) const {
  if (!z) {
    if (c.is_zero()) return std::nullopt;
    return a / c;
  }
  CyclotomicNumber den = c * (*z) + d;
  if (den.is_zero()) return std::nullopt;
  return (a * (*z) + b) / den;
}

MoebiusMap moebius_from_points(const std::optional<CyclotomicNumber>& t1,
                               const std::optional<CyclotomicNumber>& t2,
                               const std::optional<CyclotomicNumber>& t3) {
  auto same = [](const std::optional<CyclotomicNumber>& x,
                 const std::optional<CyclotomicNumber>& y) {
    if (!x || !y) return !x && !y;
    return *x == *y;
  };
  if (same(t1, t2) || same(t1, t3) || same(t2, t3))
    fail(ErrorCode::InvalidArgument, "recalibration points must be distinct");

  CyclotomicNumber one(1);
  if (!t1 && t2 && t3)  // (z - t3)^-1 scaled: (t2 - t3) / (z - t3)
    return {CyclotomicNumber(), *t2 - *t3, one, CyclotomicNumber() - *t3};
  if (t1 && !t2 && t3)  // (z - t1) / (z - t3)
    return {one, CyclotomicNumber() - *t1, one, CyclotomicNumber() - *t3};
  if (t1 && t2 && !t3)  // (z - t1) / (t2 - t1)
    return {one, CyclotomicNumber() - *t1, CyclotomicNumber(), *t2 - *t1};
  // all finite
  CyclotomicNumber p = *t2 - *t3, q = *t2 - *t1;
  return {p, CyclotomicNumber() - (*t1 * p), q, CyclotomicNumber() - (*t3 * q)};
}

QSeries<CyclotomicNumber> apply_moebius(const MoebiusMap& mu,
                                        const QSeries<CyclotomicNumber>& h) {
  Int d = h.den();
  Int cut = h.cut();
  auto cst = [&](const CyclotomicNumber& v) {
    return QSeries<CyclotomicNumber>::monomial(v, 0, d, cut);
  };
  QSeries<CyclotomicNumber> num = h.scaled(mu.a) + cst(mu.b);
  QSeries<CyclotomicNumber> den = h.scaled(mu.c) + cst(mu.d);
  if (den.known_zero())
    fail(ErrorCode::InvalidArgument, "the map sends the series to infinity");
  return num * den.inverse();
}

std::optional<QSeries<Rat>> try_demote(const QSeries<CyclotomicNumber>& s) {
  std::vector<Rat> c;
  c.reserve(s.raw().size());
  for (const CyclotomicNumber& v : s.raw()) {
    if (!v.is_rational()) return std::nullopt;
    c.push_back(v.rational_value());
  }
  return QSeries<Rat>(s.den(), s.lo(), s.cut(), std::move(c));
}

QSeries<CyclotomicNumber> promote(const QSeries<Rat>& s) {
  std::vector<CyclotomicNumber> c;
  c.reserve(s.raw().size());
  for (const Rat& v : s.raw()) c.push_back(CyclotomicNumber(v));
  return QSeries<CyclotomicNumber>(s.den(), s.lo(), s.cut(), std::move(c));
}

}  // namespace atlas
