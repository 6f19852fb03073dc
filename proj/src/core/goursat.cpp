#include "core/goursat.hpp"

#include <algorithm>
#include <numeric>

namespace atlas {

namespace {

// Element orders inside a multiplication-table group.
std::vector<int> table_orders(const QuotientTable& t) {
  int n = int(t.size());
  std::vector<int> orders(std::size_t(n), 1);
  for (int i = 0; i < n; ++i) {
    int x = i, o = 1;
    while (x != 0) {
      x = t.table[std::size_t(x)][std::size_t(i)];
      ++o;
      if (o > n + 1) fail(ErrorCode::Internal, "table is not a group");
    }
    orders[std::size_t(i)] = o;
  }
  return orders;
}

// Greedy small generating sequence for a table group (by decreasing order).
std::vector<int> table_generators(const QuotientTable& t,
                                  const std::vector<int>& orders) {
  int n = int(t.size());
  if (n == 1) return {};
  std::vector<int> by_order(static_cast<std::size_t>(n));
  std::iota(by_order.begin(), by_order.end(), 0);
  std::stable_sort(by_order.begin(), by_order.end(), [&](int x, int y) {
    return orders[std::size_t(x)] > orders[std::size_t(y)];
  });
  std::vector<int> gens;
  std::vector<char> span(std::size_t(n), 0);
  span[0] = 1;
  int span_count = 1;
  auto grow = [&](int g) {
    // close the current span under right multiplication by g and by the
    // existing generators
    std::vector<int> work;
    for (int i = 0; i < n; ++i)
      if (span[std::size_t(i)]) work.push_back(i);
    std::vector<int> mults = gens;
    mults.push_back(g);
    while (!work.empty()) {
      int x = work.back();
      work.pop_back();
      for (int m : mults) {
        int y = t.table[std::size_t(x)][std::size_t(m)];
        if (!span[std::size_t(y)]) {
          span[std::size_t(y)] = 1;
          ++span_count;
          work.push_back(y);
        }
      }
    }
  };
  for (int cand : by_order) {
    if (span[std::size_t(cand)]) continue;
    grow(cand);
    gens.push_back(cand);
    if (span_count == n) break;
  }
  return gens;
}

// Given images for the generators, propagate to a full map (or detect a
// conflict).  Returns false on conflict.
bool propagate_map(const QuotientTable& a, const QuotientTable& b,
                   const std::vector<int>& gens, const std::vector<int>& images,
                   std::vector<int>& phi) {
  int n = int(a.size());
  phi.assign(std::size_t(n), -1);
  phi[0] = 0;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (phi[std::size_t(gens[k])] != -1 && phi[std::size_t(gens[k])] != images[k])
      return false;
    phi[std::size_t(gens[k])] = images[k];
  }
  std::vector<int> work{0};
  for (int g : gens) work.push_back(g);
  while (!work.empty()) {
    int x = work.back();
    work.pop_back();
    if (phi[std::size_t(x)] == -1) continue;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      int y = a.table[std::size_t(x)][std::size_t(gens[k])];
      int fy = b.table[std::size_t(phi[std::size_t(x)])][std::size_t(images[k])];
      if (phi[std::size_t(y)] == -1) {
        phi[std::size_t(y)] = fy;
        work.push_back(y);
      } else if (phi[std::size_t(y)] != fy) {
        return false;
      }
    }
  }
  for (int v : phi)
    if (v == -1) return false;  // gens did not span (should not happen)
  return true;
}

bool is_table_isomorphism(const QuotientTable& a, const QuotientTable& b,
                          const std::vector<int>& phi) {
  int n = int(a.size());
  std::vector<char> hit(std::size_t(n), 0);
  for (int v : phi) {
    if (hit[std::size_t(v)]) return false;
    hit[std::size_t(v)] = 1;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (phi[std::size_t(a.table[std::size_t(i)][std::size_t(j)])] !=
          b.table[std::size_t(phi[std::size_t(i)])][std::size_t(phi[std::size_t(j)])])
        return false;
  return true;
}

}  // namespace

std::vector<std::vector<int>> table_isomorphisms(const QuotientTable& a,
                                                 const QuotientTable& b) {
  std::vector<std::vector<int>> found;
  if (a.size() != b.size()) return found;
  int n = int(a.size());
  if (n == 1) {
    found.push_back({0});
    return found;
  }
  std::vector<int> oa = table_orders(a), ob = table_orders(b);
  {
    std::vector<int> sa = oa, sb = ob;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return found;  // order multisets differ
  }
  std::vector<int> gens = table_generators(a, oa);
  std::vector<int> images(gens.size(), -1), phi;
  // Backtracking over generator images, filtered by element order.
  std::vector<std::vector<int>> candidates(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (int j = 0; j < n; ++j)
      if (ob[std::size_t(j)] == oa[std::size_t(gens[k])])
        candidates[k].push_back(j);
  std::vector<std::size_t> cursor(gens.size(), 0);
  std::size_t depth = 0;
  while (true) {
    if (cursor[depth] == candidates[depth].size()) {
      cursor[depth] = 0;
      if (depth == 0) break;
      --depth;
      ++cursor[depth];
      continue;
    }
    images[depth] = candidates[depth][cursor[depth]];
    if (depth + 1 < gens.size()) {
      ++depth;
      continue;
    }
    if (propagate_map(a, b, gens, images, phi) &&
        is_table_isomorphism(a, b, phi))
      found.push_back(phi);
    ++cursor[depth];
  }
  return found;
}

Group goursat_product(const GoursatTriple& t) {
  Int p = t.left.modulus(), q = t.right.modulus();
  if (gcd_ll(p, q) != 1)
    fail(ErrorCode::InvalidArgument, "component moduli must be coprime");
  if (!t.left_kernel.is_subgroup_of(t.left) ||
      !t.right_kernel.is_subgroup_of(t.right))
    fail(ErrorCode::InvalidArgument, "kernel is not contained in its group");
  QuotientTable qa = quotient_table(t.left, t.left_kernel);
  QuotientTable qb = quotient_table(t.right, t.right_kernel);
  if (qa.size() != qb.size() || t.gluing.size() != qa.size())
    fail(ErrorCode::BadGluing, "gluing size does not match the quotients");
  {
    std::vector<char> hit(qb.size(), 0);
    for (int v : t.gluing) {
      if (v < 0 || std::size_t(v) >= qb.size() || hit[std::size_t(v)])
        fail(ErrorCode::BadGluing, "gluing is not a bijection of cosets");
      hit[std::size_t(v)] = 1;
    }
  }
  if (t.gluing[0] != 0)
    fail(ErrorCode::BadGluing, "gluing must send identity coset to identity");
  for (std::size_t i = 0; i < qa.size(); ++i)
    for (std::size_t j = 0; j < qa.size(); ++j)
      if (t.gluing[std::size_t(qa.table[i][j])] !=
          qb.table[std::size_t(t.gluing[i])][std::size_t(t.gluing[j])])
        fail(ErrorCode::BadGluing, "gluing is not multiplicative");

  std::vector<std::vector<Mat2>> right_cosets(qb.size());
  for (const Mat2& y : t.right.elements())
    right_cosets[std::size_t(qb.coset_index(y))].push_back(y);
  Int n = p * q;
  std::vector<Mat2> elems;
  elems.reserve(std::size_t(t.left.order() * t.right_kernel.order()));
  for (const Mat2& x : t.left.elements()) {
    int target = t.gluing[std::size_t(qa.coset_index(x))];
    for (const Mat2& y : right_cosets[std::size_t(target)])
      elems.push_back(mat_crt(x, p, y, q));
  }
  Group big = Group::from_elements(n, std::move(elems));
  return Group::from_elements(n, big.elements(), big.minimal_generators());
}

std::vector<GoursatTriple> goursat_triples(const Group& left,
                                           const Group& right,
                                           Int max_quotient) {
  std::vector<GoursatTriple> out;
  std::vector<Group> left_normals = normal_subgroups(left);
  std::vector<Group> right_normals = normal_subgroups(right);
  for (const Group& m : left_normals) {
    Int qsize = left.order() / m.order();
    if (max_quotient > 0 && qsize > max_quotient) continue;
    QuotientTable qa = quotient_table(left, m);
    for (const Group& k : right_normals) {
      if (right.order() / k.order() != qsize) continue;
      QuotientTable qb = quotient_table(right, k);
      for (std::vector<int>& phi : table_isomorphisms(qa, qb)) {
        GoursatTriple t{left, m, right, k, std::move(phi)};
        out.push_back(std::move(t));
      }
    }
  }
  return out;
}

}  // namespace atlas
