#pragma once

// Brute-force reference implementations for the tests. Nothing here goes
// through the library's colour tables or enumerator; colours are plain
// structs built from the colour list and the forbidden triangles are
// re-coded from their textual statement.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace oracle {

struct Colour {
  char kind;  // 'g' green g_i, 'G' green g_0^a, 'w' plain white, 'W' white w_i, 'r' red r_ij^l
  int a = 0, b = 0, copy = 0;
  bool green() const { return kind == 'g' || kind == 'G'; }
  bool red() const { return kind == 'r'; }
  Colour converse() const { return red() ? Colour{'r', b, a, copy} : *this; }
  auto key() const { return std::tuple(kind, a, b, copy); }
  bool operator<(const Colour& o) const { return key() < o.key(); }
  bool operator==(const Colour& o) const { return key() == o.key(); }
};

/// greens g_1..g_{n-2}, g_0^a (a in A); whites w, w_0..w_{n-3}; reds r_ij^l,
/// i != j in B, l < N.
inline std::vector<Colour> colours(int n, int greens, int reds, int copies) {
  std::vector<Colour> out;
  for (int i = 1; i <= n - 2; ++i) out.push_back({'g', i});
  for (int a = 0; a < greens; ++a) out.push_back({'G', a});
  out.push_back({'w'});
  for (int i = 0; i < n - 2; ++i) out.push_back({'W', i});
  for (int i = 0; i < reds; ++i)
    for (int j = 0; j < reds; ++j)
      if (i != j)
        for (int l = 0; l < copies; ++l) out.push_back({'r', i, j, l});
  return out;
}

/// The triangle with l(x,y) = p, l(y,z) = q, l(x,z) = s.
inline bool forbidden(const Colour& p, const Colour& q, const Colour& s) {
  if (p.red() && q.red() && s.red()) return !(p.a == s.a && p.b == q.a && q.b == s.b);
  std::vector<Colour> gs;
  std::vector<Colour> rest;
  for (const Colour& c : {p, q, s}) (c.green() ? gs : rest).push_back(c);
  if (gs.size() == 3) return true;
  if (gs.size() != 2) return false;
  const Colour& o = rest[0];
  if (gs[0].kind == 'g' && gs[1].kind == 'g' && gs[0].a == gs[1].a && o.kind == 'w') return true;
  if (gs[0].kind == 'G' && gs[1].kind == 'G') {
    if (o.kind == 'W' && o.a == 0) return true;
    if (o.red() && gs[0].a == gs[1].a) return true;
  }
  return false;
}

/// Atoms at n = 3 when every yellow is y_A: pairs (M, alpha) with alpha :
/// 3 -> M onto and M a valid complete graph, quotiented by equality of the
/// pulled-back labels. Runs over all 27 maps and every edge labelling of
/// the image; each survivor is keyed by its labels on the index pairs
/// (0,1), (0,2), (1,2), with kind 'e' marking a pair sent to one node.
inline std::set<std::vector<Colour>> atom_keys_n3(int greens, int reds, int copies) {
  const auto cs = colours(3, greens, reds, copies);
  const int nc = static_cast<int>(cs.size());
  std::set<std::vector<Colour>> seen;
  for (int f = 0; f < 27; ++f) {
    int alpha[3] = {f % 3, (f / 3) % 3, f / 9};
    std::vector<int> img;
    for (int v : alpha)
      if (std::find(img.begin(), img.end(), v) == img.end()) img.push_back(v);
    std::sort(img.begin(), img.end());
    const int m = static_cast<int>(img.size());
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < m; ++u)
      for (int v = u + 1; v < m; ++v) edges.push_back({img[u], img[v]});
    const int total = static_cast<int>(std::pow(nc, edges.size()) + 0.5);
    for (int code = 0; code < total; ++code) {
      std::map<std::pair<int, int>, Colour> lab;
      int c = code;
      for (auto e : edges) {
        lab[e] = cs[c % nc];
        c /= nc;
      }
      auto label = [&](int x, int y) { return x < y ? lab.at({x, y}) : lab.at({y, x}).converse(); };
      if (m == 3 && forbidden(label(img[0], img[1]), label(img[1], img[2]), label(img[0], img[2]))) continue;
      std::vector<Colour> key;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) key.push_back(alpha[i] == alpha[j] ? Colour{'e'} : label(alpha[i], alpha[j]));
      seen.insert(key);
    }
  }
  return seen;
}

inline std::size_t atom_count_n3(int greens, int reds, int copies) { return atom_keys_n3(greens, reds, copies).size(); }

}  // namespace oracle
