#include "core/gl2meta.hpp"

#include <map>
#include <mutex>
#include <unordered_map>

namespace atlas {

namespace {

std::mutex cache_mutex;
std::map<Int, std::vector<Mat2>> gl2_cache;
std::map<Int, std::vector<Mat2>> sl2_cache;
std::map<Int, std::unordered_map<std::uint64_t, Int>> order_cache;

std::vector<Mat2> enumerate_with_det(Int n, bool units_only_det_one) {
  std::vector<Mat2> elems;
  for (Int a = 0; a < n; ++a)
    for (Int b = 0; b < n; ++b)
      for (Int c = 0; c < n; ++c)
        for (Int d = 0; d < n; ++d) {
          Int det = mod_ll(a * d - b * c, n);
          if (units_only_det_one ? (det == 1 % n) : is_unit_mod(det, n))
            elems.push_back({a, b, c, d});
        }
  return elems;
}

}  // namespace

const std::vector<Mat2>& gl2_elements(Int n) {
  std::scoped_lock lock(cache_mutex);
  auto it = gl2_cache.find(n);
  if (it == gl2_cache.end())
    it = gl2_cache.emplace(n, enumerate_with_det(n, false)).first;
  return it->second;
}

const std::vector<Mat2>& sl2_elements(Int n) {
  std::scoped_lock lock(cache_mutex);
  auto it = sl2_cache.find(n);
  if (it == sl2_cache.end())
    it = sl2_cache.emplace(n, enumerate_with_det(n, true)).first;
  return it->second;
}

Int gl2_order(Int n) { return Int(gl2_elements(n).size()); }
Int sl2_order(Int n) { return Int(sl2_elements(n).size()); }

Int mat_order_cached(const Mat2& m, Int n) {
  Mat2 r = mat_reduce(m, n);
  std::uint64_t key = mat_key(r, n);
  {
    std::scoped_lock lock(cache_mutex);
    auto& tab = order_cache[n];
    auto it = tab.find(key);
    if (it != tab.end()) return it->second;
  }
  Int o = mat_order(r, n);
  std::scoped_lock lock(cache_mutex);
  order_cache[n].emplace(key, o);
  return o;
}

Group gl2_group(Int n) {
  return Group::from_elements(n, gl2_elements(n));
}

Group sl2_group(Int n) {
  return Group::from_elements(n, sl2_elements(n));
}

Int cartan_epsilon(Int l) {
  if (l < 3) fail(ErrorCode::InvalidArgument, "epsilon needs an odd prime");
  if (l % 4 == 3) return l - 1;  // -1 mod l
  for (Int e = 2; e < l; ++e) {
    if (pow_mod(e, (l - 1) / 2, l) == l - 1) return e;
  }
  fail(ErrorCode::Internal, "no quadratic non-residue found");
}

Group borel_group(Int l) {
  std::vector<Mat2> elems;
  for (Int a = 1; a < l; ++a)
    for (Int d = 1; d < l; ++d)
      for (Int b = 0; b < l; ++b)
        if (is_unit_mod(a * d, l)) elems.push_back({a, b, 0, d});
  return Group::from_elements(l, elems);
}

Group split_cartan_group(Int l) {
  std::vector<Mat2> elems;
  for (Int a = 1; a < l; ++a)
    for (Int d = 1; d < l; ++d)
      if (is_unit_mod(a * d, l)) elems.push_back({a, 0, 0, d});
  return Group::from_elements(l, elems);
}

Group nonsplit_cartan_group(Int l) {
  if (l == 2) return Group::generated(2, {{0, 1, 1, 1}});
  Int eps = cartan_epsilon(l);
  std::vector<Mat2> elems;
  for (Int a = 0; a < l; ++a)
    for (Int b = 0; b < l; ++b) {
      if (a == 0 && b == 0) continue;
      elems.push_back({a, mod_ll(b * eps, l), b, a});
    }
  return Group::from_elements(l, elems);
}

Group split_cartan_normalizer_group(Int l) {
  Group cs = split_cartan_group(l);
  return cs.adjoin({0, 1, 1, 0});
}

Group nonsplit_cartan_normalizer_group(Int l) {
  Group cn = nonsplit_cartan_group(l);
  if (l == 2) return cn.adjoin({0, 1, 1, 0});  // normalizer is all of GL2(Z/2)
  return cn.adjoin({1, 0, 0, l - 1});
}

std::string coarse_label(const Group& g) {
  Int l = g.modulus();
  if (g.same_group(gl2_group(l))) return "GL2";
  const std::pair<const char*, Group> named[] = {
      {"B", borel_group(l)},
      {"Cs", split_cartan_group(l)},
      {"Cn", nonsplit_cartan_group(l)},
      {"Ns", split_cartan_normalizer_group(l)},
      {"Nn", nonsplit_cartan_normalizer_group(l)},
  };
  for (const auto& [name, grp] : named) {
    if (g.order() != grp.order()) continue;
    if (conjugacy_witness(g, grp)) return name;
  }
  return "";
}

}  // namespace atlas
