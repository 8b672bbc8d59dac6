#pragma once

// Atomic networks over the rainbow atom structure, the translations
// M -> N_M and N -> M_N, and sc-words with their induced partial maps.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rainbow/atom_structure.hpp"

namespace rainbow {

class NetworkError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// N : ^n Delta -> atoms. Nodes are addressed by position 0..size()-1;
/// node_ids holds the external names. Labels are dense, indexed by the
/// tuple read as a base-size() number.
class Network {
 public:
  Network() = default;
  Network(int n, std::vector<int> node_ids) : n_(n), ids_(std::move(node_ids)) {
    std::size_t total = 1;
    for (int k = 0; k < n_; ++k) total *= ids_.size();
    labels_.assign(total, 0);
  }

  int n() const { return n_; }
  int size() const { return static_cast<int>(ids_.size()); }
  const std::vector<int>& node_ids() const { return ids_; }
  std::size_t tuple_count() const { return labels_.size(); }

  std::size_t index(std::span<const int> tuple) const {
    std::size_t idx = 0;
    for (int v : tuple) idx = idx * ids_.size() + static_cast<std::size_t>(v);
    return idx;
  }
  std::vector<int> tuple_at(std::size_t idx) const {
    std::vector<int> t(n_);
    for (int k = n_ - 1; k >= 0; --k) {
      t[k] = static_cast<int>(idx % ids_.size());
      idx /= ids_.size();
    }
    return t;
  }
  AtomId at(std::span<const int> tuple) const { return labels_[index(tuple)]; }
  AtomId at_index(std::size_t idx) const { return labels_[idx]; }
  void set(std::span<const int> tuple, AtomId a) { labels_[index(tuple)] = a; }
  void set_index(std::size_t idx, AtomId a) { labels_[idx] = a; }

  bool operator==(const Network&) const = default;

 private:
  int n_ = 0;
  std::vector<int> ids_;
  std::vector<AtomId> labels_;
};

enum class NetworkCondition { AtomRange, Diagonal, Cylinder };

struct NetworkViolation {
  NetworkCondition condition;
  std::vector<int> tuple;  // node positions
  int i = -1;
  int j = -1;  // second index for Diagonal, replacement node for Cylinder
  std::string message;
};

struct NetworkReport {
  std::vector<NetworkViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks N(delta^i_j) in E_ij and N(delta[i->d]) T_i-related to N(delta)
/// over every tuple, index pair and node.
inline NetworkReport validate_network(const Network& net, const AtomStructure& s) {
  NetworkReport report;
  if (net.n() != s.n()) throw NetworkError("network dimension differs from the structure");
  const int n = net.n();
  const int d = net.size();
  for (std::size_t idx = 0; idx < net.tuple_count(); ++idx)
    if (net.at_index(idx) >= s.size())
      report.violations.push_back({NetworkCondition::AtomRange, net.tuple_at(idx), -1, -1, "label is not an atom"});
  if (!report.ok()) return report;

  for (std::size_t idx = 0; idx < net.tuple_count(); ++idx) {
    auto t = net.tuple_at(idx);
    AtomId here = net.at_index(idx);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        auto u = t;
        u[i] = t[j];
        if (!s.diag_set(i, j).test(net.at(u)))
          report.violations.push_back({NetworkCondition::Diagonal, u, i, j, "N(delta^i_j) not below d_ij"});
      }
      for (int v = 0; v < d; ++v) {
        auto u = t;
        u[i] = v;
        if (!s.acc_related(i, here, net.at(u)))
          report.violations.push_back({NetworkCondition::Cylinder, t, i, v, "N(delta[i->d]) not below c_i N(delta)"});
      }
    }
  }
  return report;
}

/// N_M: each n-tuple of nodes of M is labelled by the atom it pulls back to.
inline Network graph_to_network(const ColouredGraph& m, const AtomStructure& s) {
  if (m.size() == 0) throw NetworkError("empty graph");
  std::vector<int> ids(m.size());
  std::iota(ids.begin(), ids.end(), 0);
  Network net(s.n(), ids);
  for (std::size_t idx = 0; idx < net.tuple_count(); ++idx) {
    auto t = net.tuple_at(idx);
    auto id = s.find(pull_back(m, t));
    if (!id) throw NetworkError("tuple does not pull back to an atom; graph is not valid");
    net.set_index(idx, *id);
  }
  return net;
}

/// M_N: edges and yellows read back from the atoms labelling the tuples.
/// Throws NetworkError when two tuples disagree (impossible for valid N).
inline ColouredGraph network_to_graph(const Network& net, const AtomStructure& s) {
  if (net.size() == 0) throw NetworkError("empty network");
  const Signature& sig = s.signature();
  const int n = net.n();
  ColouredGraph g(sig, net.size());
  std::vector<int> idx_tuple(n - 1);
  std::vector<int> x(n - 1), ax(n - 1);
  for (std::size_t idx = 0; idx < net.tuple_count(); ++idx) {
    auto z = net.tuple_at(idx);
    const Atom& alpha = s.atom(net.at_index(idx));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (z[i] == z[j]) continue;
        ColourId c = alpha.graph.edge(alpha.assignment[i], alpha.assignment[j]);
        ColourId prev = g.edge(z[i], z[j]);
        if (prev != kNoColour && prev != c) throw NetworkError("tuples disagree on an edge colour");
        g.set_edge(z[i], z[j], c);
      }
    // Every (n-1)-tuple of indices picks out a possible yellow hyperedge.
    std::size_t combos = 1;
    for (int k = 0; k < n - 1; ++k) combos *= static_cast<std::size_t>(n);
    for (std::size_t c = 0; c < combos; ++c) {
      std::size_t rest = c;
      for (int k = n - 2; k >= 0; --k) {
        idx_tuple[k] = static_cast<int>(rest % n);
        rest /= n;
      }
      bool distinct = true;
      for (int a = 0; a < n - 1 && distinct; ++a)
        for (int b = a + 1; b < n - 1; ++b)
          if (z[idx_tuple[a]] == z[idx_tuple[b]]) distinct = false;
      if (!distinct) continue;
      for (int k = 0; k < n - 1; ++k) {
        x[k] = z[idx_tuple[k]];
        ax[k] = alpha.assignment[idx_tuple[k]];
      }
      std::uint32_t y = alpha.graph.yellow(ax);
      if (y == kNoYellow) continue;
      std::uint32_t prev = g.yellow(x);
      if (prev != kNoYellow && prev != y) throw NetworkError("tuples disagree on a yellow");
      g.set_yellow(x, y);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// sc-words

struct ScToken {
  enum Kind { Subst, Cyl };
  Kind kind = Subst;
  int i = 0;
  int j = 0;  // unused for Cyl
  bool operator==(const ScToken&) const = default;
};

using ScWord = std::vector<ScToken>;

/// A partial map on m = {0..m-1}; -1 marks undefined.
using PartialMap = std::vector<int>;

inline std::string to_string(const ScToken& t) {
  return t.kind == ScToken::Subst ? "s" + std::to_string(t.i) + "^" + std::to_string(t.j) : "c" + std::to_string(t.i);
}

inline std::string to_string(const ScWord& w) {
  std::string out;
  for (const auto& t : w) {
    if (!out.empty()) out += ' ';
    out += to_string(t);
  }
  return out;
}

/// Parses whitespace-separated tokens "s<i>^<j>" and "c<k>".
inline ScWord parse_sc_word(const std::string& text) {
  ScWord w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    ScToken t;
    try {
      if (tok.size() >= 2 && tok[0] == 'c') {
        std::size_t used = 0;
        t = {ScToken::Cyl, std::stoi(tok.substr(1), &used), 0};
        if (used + 1 != tok.size()) throw std::invalid_argument(tok);
      } else if (tok.size() >= 4 && tok[0] == 's' && tok.find('^') != std::string::npos) {
        auto caret = tok.find('^');
        std::size_t u1 = 0, u2 = 0;
        t = {ScToken::Subst, std::stoi(tok.substr(1, caret - 1), &u1), std::stoi(tok.substr(caret + 1), &u2)};
        if (u1 + 1 != caret || caret + 1 + u2 != tok.size()) throw std::invalid_argument(tok);
      } else {
        throw std::invalid_argument(tok);
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("bad sc-word token '" + tok + "'");
    }
    w.push_back(t);
  }
  return w;
}

/// w^ by the defining clauses: eps^ = Id, (w s_i^j)^ = w^ o [i|j] with [i|j]
/// sending i to j and fixing the rest, (w c_i)^ = w^ restricted to m \ {i}.
inline PartialMap eval_sc_word(const ScWord& w, int m) {
  for (const auto& t : w)
    if (t.i < 0 || t.i >= m || (t.kind == ScToken::Subst && (t.j < 0 || t.j >= m)))
      throw std::out_of_range("sc-word index out of range for m=" + std::to_string(m));
  PartialMap f(m);
  std::iota(f.begin(), f.end(), 0);
  for (const auto& t : w) {
    if (t.kind == ScToken::Cyl) {
      f[t.i] = -1;
    } else {
      // (f o [i|j])(x) = f(x) for x != i, and f(j) at i.
      f[t.i] = f[t.j];
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Random valid graphs, used to sample networks and in game playouts.

/// A uniformly-labelled random valid coloured graph on `size` nodes, built
/// by randomised backtracking; yellows drawn from the palette subject to
/// the cone condition. Returns nullopt if the attempt budget runs out.
inline std::optional<ColouredGraph> random_valid_graph(const Signature& sig, int size, std::mt19937_64& rng,
                                                       int attempts = 50) {
  std::vector<std::pair<int, int>> pairs;
  for (int v = 1; v < size; ++v)
    for (int u = 0; u < v; ++u) pairs.emplace_back(u, v);
  std::vector<ColourId> order(sig.colour_count());
  std::iota(order.begin(), order.end(), ColourId{0});
  for (int attempt = 0; attempt < attempts; ++attempt) {
    ColouredGraph g(sig, size);
    std::size_t steps = 0;
    std::function<bool(std::size_t)> label = [&](std::size_t k) -> bool {
      if (++steps > 20000) return false;
      if (k == pairs.size()) return true;
      auto [u, v] = pairs[k];
      auto local = order;
      std::shuffle(local.begin(), local.end(), rng);
      for (ColourId c : local) {
        bool ok = true;
        for (int x = 0; x < u && ok; ++x) ok = sig.consistent(g.edge(x, u), c, g.edge(x, v));
        if (!ok) continue;
        g.set_edge(u, v, c);
        if (label(k + 1)) return true;
      }
      g.set_edge(u, v, kNoColour);
      return false;
    };
    if (!label(0)) continue;
    const auto& palette = sig.palette();
    auto cones = find_cones(g);
    bool ok = true;
    for_each_distinct_tuple(size, g.arity(), [&](std::span<const int> t) {
      if (!ok || !g.yellow_eligible(t)) return;
      std::vector<std::uint32_t> allowed;
      for (std::uint32_t y : palette) {
        bool fits = true;
        for (const auto& cone : cones)
          if (std::equal(cone.base.begin(), cone.base.end(), t.begin()) && !((y >> cone.tint) & 1u)) fits = false;
        if (fits) allowed.push_back(y);
      }
      if (allowed.empty()) {
        ok = false;
        return;
      }
      g.set_yellow(t, allowed[rng() % allowed.size()]);
    });
    if (ok && is_valid(g)) return g;
  }
  return std::nullopt;
}

}  // namespace rainbow
