#include "core/congruence.hpp"

#include <algorithm>
#include <numeric>

#include "core/gl2meta.hpp"

namespace atlas {

namespace {

// +-(H cap SL2), the group cut out on the curve side.
Group pm_sl2_part(const Group& h) {
  Int n = h.modulus();
  Group s = h.intersect_sl2();
  if (n <= 2 || s.contains_minus_identity()) return s;
  std::vector<Mat2> elems;
  elems.reserve(std::size_t(2 * s.order()));
  Mat2 mi = mat_minus_identity(n);
  for (const Mat2& x : s.elements()) {
    elems.push_back(x);
    elems.push_back(mat_mul(mi, x, n));
  }
  return Group::from_elements(n, std::move(elems));
}

// gamma in SL2(Z) with first column (num, den); requires gcd(num, den) = 1.
Mat2 unimodular_with_column(Int num, Int den) {
  Int x = 0, y = 0;
  if (ext_gcd(num, den, x, y) != 1)
    fail(ErrorCode::InvalidArgument, "cusp point must be in lowest terms");
  // num*x + den*y = 1  ->  det(num, -y; den, x) = num*x + y*den = 1
  return Mat2{num, -y, den, x};
}

}  // namespace

Mat2 sl2_lift(const Mat2& g, Int n) {
  if (n == 1) return mat_identity();
  Mat2 r = mat_reduce(g, n);
  if (mat_det(r, n) != 1 % n)
    fail(ErrorCode::InvalidArgument, "lift requires determinant 1");
  // Pick a bottom row congruent to (c, d) mod n that is coprime over Z.
  Int c0 = r.c == 0 ? n : r.c;
  Int d0 = r.d;
  Int guard = 0;
  while (std::gcd(c0, d0) != 1) {
    d0 += n;
    if (++guard > 4 * n + 8) fail(ErrorCode::Internal, "lift row search failed");
  }
  // u*d0 - v*c0 = 1, then slide by t*(c0, d0) to hit the top row mod n.
  Int u = 0, v = 0;
  ext_gcd(d0, c0, u, v);  // u*d0 + v*c0 = 1
  v = -v;                 // u*d0 - v*c0 = 1
  Int s = 0, w = 0;
  ext_gcd(c0, d0, s, w);  // s*c0 + w*d0 = 1
  Int da = mod_ll(r.a - u, n), db = mod_ll(r.b - v, n);
  Int t = mod_ll(s % n * da % n + w % n * db % n, n);
  Mat2 lift{u + t * c0, v + t * d0, c0, d0};
  if (lift.a * lift.d - lift.b * lift.c != 1)
    fail(ErrorCode::Internal, "lift determinant is not 1");
  if (mod_ll(lift.a - r.a, n) != 0 || mod_ll(lift.b - r.b, n) != 0 ||
      mod_ll(lift.c - r.c, n) != 0 || mod_ll(lift.d - r.d, n) != 0)
    fail(ErrorCode::Internal, "lift does not reduce correctly");
  return lift;
}

ModularInvariants modular_invariants(const Group& h) {
  Int n = h.modulus();
  Group s = pm_sl2_part(h);
  const std::vector<Mat2>& ambient = sl2_elements(n);

  ModularInvariants mi;
  mi.modulus = n;

  // Right cosets S\SL2: fill each unseen coset by left S-multiplication.
  std::vector<Mat2> reps;
  mi.coset_of.reserve(2 * ambient.size());
  for (const Mat2& g : ambient) {
    if (mi.coset_of.count(mat_key(g, n))) continue;
    int id = int(reps.size());
    reps.push_back(g);  // ambient is key-sorted, so reps are canonical
    for (const Mat2& x : s.elements())
      mi.coset_of.emplace(mat_key(mat_mul(x, g, n), n), id);
  }
  mi.index = Int(reps.size());

  const Mat2 t_mat{1, 1, 0, 1};
  const Mat2 s_mat{0, n - 1, 1, 0};
  const Mat2 st_mat = mat_mul(s_mat, t_mat, n);
  auto act = [&](int id, const Mat2& m) {
    return mi.coset_of.at(mat_key(mat_mul(reps[std::size_t(id)], m, n), n));
  };
  for (int id = 0; id < int(reps.size()); ++id) {
    if (act(id, s_mat) == id) ++mi.e2;
    if (act(id, st_mat) == id) ++mi.e3;
  }

  // Cusps = <T>-orbits on the cosets; width = orbit length.
  mi.cusp_of_coset.assign(reps.size(), -1);
  std::vector<Int> widths;
  for (int id = 0; id < int(reps.size()); ++id) {
    if (mi.cusp_of_coset[std::size_t(id)] != -1) continue;
    int cusp = int(widths.size());
    Int width = 0;
    int cur = id;
    do {
      mi.cusp_of_coset[std::size_t(cur)] = cusp;
      cur = act(cur, t_mat);
      ++width;
    } while (cur != id);
    widths.push_back(width);
  }

  Int num_cusps = Int(widths.size());
  Int twelve_g = 12 + mi.index - 3 * mi.e2 - 4 * mi.e3 - 6 * num_cusps;
  if (twelve_g % 12 != 0 || twelve_g < 0)
    fail(ErrorCode::Internal, "genus formula gave a non-integer");
  mi.genus = twelve_g / 12;

  // Assign each cusp a small representative point of P^1(Q): first oo, then
  // fractions a/c ordered by height, denominator, |a|, sign.
  mi.cusps.assign(std::size_t(num_cusps), CuspInfo{});
  std::vector<char> assigned(std::size_t(num_cusps), 0);
  Int remaining = num_cusps;
  auto try_assign = [&](Int num, Int den, const Mat2& gamma) {
    int cusp = mi.cusp_of_coset[std::size_t(
        mi.coset_of.at(mat_key(mat_reduce(gamma, n), n)))];
    if (assigned[std::size_t(cusp)]) return;
    assigned[std::size_t(cusp)] = 1;
    --remaining;
    mi.cusps[std::size_t(cusp)] =
        CuspInfo{num, den, widths[std::size_t(cusp)], gamma};
  };
  try_assign(1, 0, mat_identity());
  for (Int hgt = 1; hgt <= 2 * n + 2 && remaining > 0; ++hgt) {
    for (Int den = 1; den <= hgt && remaining > 0; ++den) {
      for (Int mag = 0; mag <= hgt && remaining > 0; ++mag) {
        if (std::max(mag, den) != hgt) continue;
        for (Int sign : {Int(1), Int(-1)}) {
          Int a = sign * mag;
          if (a == 0 && sign < 0) continue;
          if (std::gcd(mag, den) != 1) continue;
          try_assign(a, den, unimodular_with_column(a, den));
        }
      }
    }
  }
  if (remaining > 0) fail(ErrorCode::Internal, "cusp representative search failed");

  // Deterministic cusp order: oo first, then by height / denominator / value.
  std::size_t nc = std::size_t(num_cusps);
  std::vector<int> perm(nc);
  std::iota(perm.begin(), perm.end(), 0);
  auto rank = [&](int i) {
    const CuspInfo& c = mi.cusps[std::size_t(i)];
    Int mag = c.num < 0 ? -c.num : c.num;
    return std::tuple<Int, Int, Int, Int>(
        c.den == 0 ? 0 : 1, std::max(mag, c.den), c.den, c.num);
  };
  std::sort(perm.begin(), perm.end(),
            [&](int x, int y) { return rank(x) < rank(y); });
  std::vector<int> inverse(nc);
  std::vector<CuspInfo> sorted(nc);
  for (int i = 0; i < int(num_cusps); ++i) {
    inverse[std::size_t(perm[std::size_t(i)])] = i;
    sorted[std::size_t(i)] = mi.cusps[std::size_t(perm[std::size_t(i)])];
  }
  mi.cusps = std::move(sorted);
  for (int& c : mi.cusp_of_coset) c = inverse[std::size_t(c)];

  mi.sl2_level = sl2_level(h);
  return mi;
}

Int sl2_level(const Group& h) {
  Int n = h.modulus();
  Group s = pm_sl2_part(h);
  std::vector<Int> divisors;
  for (Int m = 1; m <= n; ++m)
    if (n % m == 0) divisors.push_back(m);
  for (Int m : divisors) {
    bool contained = true;
    for (const Mat2& x : sl2_elements(n)) {
      if (mat_reduce(x, m) == mat_reduce(mat_identity(), m) && !s.contains(x)) {
        contained = false;
        break;
      }
    }
    if (contained) return m;
  }
  fail(ErrorCode::Internal, "level search exhausted all divisors");
}

int cusp_index_of_point(const ModularInvariants& mi, Int num, Int den) {
  Mat2 gamma;
  if (den == 0) {
    gamma = mat_identity();
  } else {
    if (den < 0) {
      den = -den;
      num = -num;
    }
    gamma = unimodular_with_column(num, den);
  }
  auto it = mi.coset_of.find(mat_key(mat_reduce(gamma, mi.modulus), mi.modulus));
  if (it == mi.coset_of.end())
    fail(ErrorCode::Internal, "coset table lookup failed");
  return mi.cusp_of_coset[std::size_t(it->second)];
}

}  // namespace atlas
