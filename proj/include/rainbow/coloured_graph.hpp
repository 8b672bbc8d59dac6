#pragma once

// Coloured graphs: complete edge-coloured graphs with yellow labels on
// ordered (n-1)-tuples, their validity axioms, cones and canonical forms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "rainbow/signature.hpp"

namespace rainbow {

class LabelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Nodes are 0..size()-1. Edge labels are stored per ordered pair with the
/// red converse convention label(v,u) = converse(label(u,v)). Yellows are
/// stored per ordered tuple of size n-1; kNoYellow means unlabelled.
class ColouredGraph {
 public:
  ColouredGraph() = default;
  ColouredGraph(const Signature& sig, int size) : sig_(&sig), size_(size) {
    arity_ = sig.n() - 1;
    edges_.assign(static_cast<std::size_t>(size) * size, kNoColour);
    yellows_.assign(tuple_space(size), kNoYellow);
  }

  const Signature& signature() const { return *sig_; }
  int size() const { return size_; }
  int arity() const { return arity_; }

  ColourId edge(int u, int v) const { return edges_[static_cast<std::size_t>(u) * size_ + v]; }
  void set_edge(int u, int v, ColourId c) {
    edges_[static_cast<std::size_t>(u) * size_ + v] = c;
    edges_[static_cast<std::size_t>(v) * size_ + u] = c == kNoColour ? kNoColour : sig_->converse(c);
  }
  void set_edge(int u, int v, const EdgeColour& c) { set_edge(u, v, sig_->id_of(c)); }

  std::uint32_t yellow(std::span<const int> tuple) const { return yellows_[tuple_index(tuple)]; }
  void set_yellow(std::span<const int> tuple, std::uint32_t y) { yellows_[tuple_index(tuple)] = y; }
  void set_yellow(std::initializer_list<int> tuple, std::uint32_t y) {
    set_yellow(std::span<const int>(tuple.begin(), tuple.size()), y);
  }
  std::uint32_t yellow(std::initializer_list<int> tuple) const {
    return yellow(std::span<const int>(tuple.begin(), tuple.size()));
  }

  std::size_t tuple_index(std::span<const int> tuple) const {
    std::size_t idx = 0;
    for (int v : tuple) idx = idx * size_ + v;
    return idx;
  }
  std::vector<int> tuple_at(std::size_t index) const {
    std::vector<int> t(arity_);
    for (int k = arity_ - 1; k >= 0; --k) {
      t[k] = static_cast<int>(index % size_);
      index /= size_;
    }
    return t;
  }
  std::size_t tuple_count() const { return yellows_.size(); }
  std::uint32_t yellow_at(std::size_t index) const { return yellows_[index]; }

  /// Appends an isolated node with no labels; returns its id.
  int add_node() {
    ColouredGraph bigger(*sig_, size_ + 1);
    for (int u = 0; u < size_; ++u)
      for (int v = 0; v < size_; ++v) bigger.edges_[static_cast<std::size_t>(u) * (size_ + 1) + v] = edge(u, v);
    copy_yellows_into(bigger, identity_map());
    *this = std::move(bigger);
    return size_ - 1;
  }

  /// Subgraph on `nodes`, relabelled so that nodes[k] becomes k.
  ColouredGraph induced(std::span<const int> nodes) const {
    ColouredGraph sub(*sig_, static_cast<int>(nodes.size()));
    for (std::size_t a = 0; a < nodes.size(); ++a)
      for (std::size_t b = 0; b < nodes.size(); ++b)
        if (a != b) sub.edges_[a * nodes.size() + b] = edge(nodes[a], nodes[b]);
    std::vector<int> map(size_, -1);
    for (std::size_t k = 0; k < nodes.size(); ++k) map[nodes[k]] = static_cast<int>(k);
    copy_yellows_into(sub, map);
    return sub;
  }

  /// Graph with every edge colour c replaced by map[c].
  ColouredGraph recoloured(const std::vector<ColourId>& map) const {
    ColouredGraph out(*this);
    for (auto& c : out.edges_)
      if (c != kNoColour) c = map[c];
    return out;
  }

  /// The same graph read over another signature of equal dimension, edge
  /// colour c becoming map[c].
  ColouredGraph transferred(const Signature& sig, const std::vector<ColourId>& map) const {
    if (sig.n() != sig_->n()) throw LabelError("signatures differ in dimension");
    ColouredGraph out = recoloured(map);
    out.sig_ = &sig;
    return out;
  }

  ColouredGraph without_node(int v) const {
    std::vector<int> keep;
    for (int u = 0; u < size_; ++u)
      if (u != v) keep.push_back(u);
    return induced(keep);
  }

  /// Graph in which node v is renamed to perm[v].
  ColouredGraph permuted(std::span<const int> perm) const {
    std::vector<int> order(size_);
    for (int v = 0; v < size_; ++v) order[perm[v]] = v;
    return induced(order);
  }

  std::vector<int> identity_map() const {
    std::vector<int> m(size_);
    std::iota(m.begin(), m.end(), 0);
    return m;
  }

  bool operator==(const ColouredGraph& o) const {
    return size_ == o.size_ && arity_ == o.arity_ && edges_ == o.edges_ && yellows_ == o.yellows_;
  }

  /// True iff every node of `tuple` is distinct and no internal edge is green.
  bool yellow_eligible(std::span<const int> tuple) const {
    for (std::size_t a = 0; a < tuple.size(); ++a)
      for (std::size_t b = a + 1; b < tuple.size(); ++b) {
        if (tuple[a] == tuple[b]) return false;
        ColourId c = edge(tuple[a], tuple[b]);
        if (c != kNoColour && sig_->is_green(c)) return false;
      }
    return true;
  }

  const std::vector<ColourId>& raw_edges() const { return edges_; }
  const std::vector<std::uint32_t>& raw_yellows() const { return yellows_; }

 private:
  std::size_t tuple_space(int size) const {
    std::size_t s = 1;
    for (int k = 0; k < arity_; ++k) s *= static_cast<std::size_t>(size);
    return s;
  }

  // Copies yellows whose nodes all have a defined image under map.
  void copy_yellows_into(ColouredGraph& target, const std::vector<int>& map) const {
    std::vector<int> t(arity_);
    for (std::size_t idx = 0; idx < yellows_.size(); ++idx) {
      if (yellows_[idx] == kNoYellow) continue;
      std::size_t rest = idx;
      bool ok = true;
      for (int k = arity_ - 1; k >= 0; --k) {
        int v = static_cast<int>(rest % size_);
        rest /= size_;
        t[k] = map[v];
        if (t[k] < 0) ok = false;
      }
      if (ok) target.yellows_[target.tuple_index(t)] = yellows_[idx];
    }
  }

  const Signature* sig_ = nullptr;
  int size_ = 0;
  int arity_ = 0;
  std::vector<ColourId> edges_;
  std::vector<std::uint32_t> yellows_;
};

/// Calls f(tuple) for every ordered tuple of `length` distinct nodes of 0..size-1.
template <typename F>
void for_each_distinct_tuple(int size, int length, F&& f) {
  std::vector<int> t(length);
  std::vector<char> used(size, 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == length) {
      f(std::span<const int>(t));
      return;
    }
    for (int v = 0; v < size; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      t[pos] = v;
      rec(pos + 1);
      used[v] = 0;
    }
  };
  if (length <= size) rec(0);
}

// ---------------------------------------------------------------------------
// Validation

enum class Axiom { Completeness, ForbiddenTriangle, YellowTotality, ConeTint };

struct Violation {
  Axiom axiom;
  std::vector<int> nodes;
  std::optional<ForbiddenRule> rule;  // for ForbiddenTriangle
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(Axiom a) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.axiom == a; });
  }
  bool has(ForbiddenRule r) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.rule && *v.rule == r; });
  }
};

struct Cone {
  std::vector<int> base;
  int apex = -1;
  int tint = -1;
  bool operator==(const Cone&) const = default;
  auto operator<=>(const Cone&) const = default;
};

/// Every cone in g: base tuple (x_0..x_{n-2}), apex z with edge(x_0,z) = g_0^tint,
/// edge(x_j,z) = g_j, and no other green edge on the n nodes.
inline std::vector<Cone> find_cones(const ColouredGraph& g) {
  const Signature& sig = g.signature();
  const int arity = g.arity();
  std::vector<Cone> cones;
  for (int z = 0; z < g.size(); ++z) {
    for_each_distinct_tuple(g.size(), arity, [&](std::span<const int> base) {
      if (std::find(base.begin(), base.end(), z) != base.end()) return;
      ColourId c0 = g.edge(base[0], z);
      if (c0 == kNoColour || sig.kind(c0) != ColourKind::GreenSuper) return;
      for (int j = 1; j < arity; ++j) {
        ColourId cj = g.edge(base[j], z);
        if (cj == kNoColour || sig.kind(cj) != ColourKind::GreenTint || sig.colour(cj).index != j) return;
      }
      for (int a = 0; a < arity; ++a)
        for (int b = a + 1; b < arity; ++b) {
          ColourId c = g.edge(base[a], base[b]);
          if (c == kNoColour || sig.is_green(c)) return;
        }
      cones.push_back(Cone{std::vector<int>(base.begin(), base.end()), z, sig.colour(c0).index});
    });
  }
  std::sort(cones.begin(), cones.end());
  return cones;
}

/// Checks the four coloured-graph axioms and reports every violation.
/// Throws LabelError when a label lies outside the signature.
inline ValidationReport validate(const ColouredGraph& g) {
  const Signature& sig = g.signature();
  ValidationReport report;
  const int m = g.size();
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v) {
      ColourId c = g.edge(u, v);
      if (u == v) {
        if (c != kNoColour) throw LabelError("loop label at node " + std::to_string(u));
        continue;
      }
      if (c != kNoColour && (c < 0 || c >= sig.colour_count()))
        throw LabelError("edge label outside the signature");
    }
  for (std::size_t idx = 0; idx < g.tuple_count(); ++idx) {
    std::uint32_t y = g.yellow_at(idx);
    if (y != kNoYellow && !sig.in_universe(y)) throw LabelError("yellow outside the signature");
  }

  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v)
      if (g.edge(u, v) == kNoColour)
        report.violations.push_back({Axiom::Completeness, {u, v}, std::nullopt,
                                     "missing edge label"});

  for (int x = 0; x < m; ++x)
    for (int y = x + 1; y < m; ++y)
      for (int z = y + 1; z < m; ++z) {
        ColourId a = g.edge(x, y), b = g.edge(y, z), c = g.edge(x, z);
        if (a == kNoColour || b == kNoColour || c == kNoColour) continue;
        if (auto r = sig.rule(a, b, c))
          report.violations.push_back({Axiom::ForbiddenTriangle, {x, y, z}, r,
                                       "forbidden triangle: " + std::string(rule_name(*r))});
      }

  for (std::size_t idx = 0; idx < g.tuple_count(); ++idx) {
    auto t = g.tuple_at(idx);
    bool distinct = true;
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = a + 1; b < t.size(); ++b) distinct &= t[a] != t[b];
    bool has_missing_edge = false;
    if (distinct)
      for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = a + 1; b < t.size(); ++b) has_missing_edge |= g.edge(t[a], t[b]) == kNoColour;
    if (has_missing_edge) continue;
    bool eligible = distinct && g.yellow_eligible(t);
    bool labelled = g.yellow_at(idx) != kNoYellow;
    if (eligible && !labelled)
      report.violations.push_back({Axiom::YellowTotality, t, std::nullopt, "tuple without green edges lacks a yellow"});
    if (!eligible && labelled)
      report.violations.push_back({Axiom::YellowTotality, t, std::nullopt, "yellow on a tuple that is not eligible"});
  }

  for (const Cone& cone : find_cones(g)) {
    std::uint32_t y = g.yellow(cone.base);
    if (y != kNoYellow && !((y >> cone.tint) & 1u)) {
      auto nodes = cone.base;
      nodes.push_back(cone.apex);
      report.violations.push_back({Axiom::ConeTint, nodes, std::nullopt,
                                   "cone tint " + std::to_string(cone.tint) + " not in the base's yellow"});
    }
  }
  return report;
}

/// Fast boolean form of validate for complete graphs.
inline bool is_valid(const ColouredGraph& g) {
  const Signature& sig = g.signature();
  const int m = g.size();
  for (int x = 0; x < m; ++x)
    for (int y = x + 1; y < m; ++y) {
      ColourId a = g.edge(x, y);
      if (a == kNoColour) return false;
      for (int z = y + 1; z < m; ++z) {
        ColourId b = g.edge(y, z), c = g.edge(x, z);
        if (b == kNoColour || c == kNoColour) return false;
        if (!sig.consistent(a, b, c)) return false;
      }
    }
  bool ok = true;
  for (std::size_t idx = 0; idx < g.tuple_count() && ok; ++idx) {
    auto t = g.tuple_at(idx);
    bool distinct = true;
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = a + 1; b < t.size(); ++b) distinct &= t[a] != t[b];
    bool eligible = distinct && g.yellow_eligible(t);
    if (eligible != (g.yellow_at(idx) != kNoYellow)) ok = false;
  }
  if (!ok) return false;
  for (const Cone& cone : find_cones(g))
    if (!((g.yellow(cone.base) >> cone.tint) & 1u)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Canonical forms

struct CanonOptions {
  /// Also quotient by permutations of green tints, red indices and red copies.
  /// Only applied when every yellow is empty or full (those are fixed by all
  /// tint permutations).
  bool colour_symmetry = false;
  /// When false only the given node order is used (colour renaming alone).
  bool node_permutations = true;
};

struct CanonicalForm {
  std::vector<std::int32_t> code;  // equal codes iff isomorphic
  std::vector<int> relabel;        // relabel[v] = canonical position of v
  std::vector<ColourId> colour_map;  // original colour -> canonical colour
  ColouredGraph graph;             // g relabelled and recoloured
};

namespace detail {

class Canonizer {
 public:
  Canonizer(const ColouredGraph& g, CanonOptions opts) : g_(g), sig_(g.signature()), m_(g.size()) {
    colour_sym_ = opts.colour_symmetry;
    node_perms_ = opts.node_permutations;
    if (colour_sym_) {
      const std::uint32_t full = sig_.full_yellow();
      for (std::size_t i = 0; i < g.tuple_count(); ++i) {
        std::uint32_t y = g.yellow_at(i);
        if (y != kNoYellow && y != 0 && y != full) colour_sym_ = false;
      }
    }
    tint_map_.assign(sig_.spec().greens, -1);
    red_map_.assign(sig_.spec().reds, -1);
    copy_map_.assign(sig_.spec().red_copies, -1);
  }

  CanonicalForm run() {
    compute_cells();
    compute_twins();
    order_.clear();
    placed_.assign(m_, 0);
    current_.clear();
    current_.push_back(m_);
    current_.push_back(colour_sym_ ? 1 : 0);
    best_.clear();
    have_best_ = false;
    search(0);
    CanonicalForm out;
    out.code = best_;
    out.relabel.assign(m_, 0);
    for (int p = 0; p < m_; ++p) out.relabel[best_order_[p]] = p;
    out.colour_map = complete_colour_map();
    out.graph = g_.permuted(out.relabel).recoloured(out.colour_map);
    return out;
  }

 private:
  // Extends the first-occurrence names of the best leaf to full permutations
  // (unnamed indices follow in increasing order) and lifts them to colours.
  std::vector<ColourId> complete_colour_map() const {
    std::vector<ColourId> map(sig_.colour_count());
    std::iota(map.begin(), map.end(), ColourId{0});
    if (!colour_sym_) return map;
    auto complete = [](std::vector<int> names) {
      int next = 0;
      for (int x : names) next = std::max(next, x + 1);
      for (int& x : names)
        if (x < 0) x = next++;
      return names;
    };
    auto tint = complete(best_tint_), red = complete(best_red_), copy = complete(best_copy_);
    for (ColourId c = 0; c < sig_.colour_count(); ++c) {
      const EdgeColour& e = sig_.colour(c);
      if (e.kind == ColourKind::GreenSuper)
        map[c] = sig_.id_of(EdgeColour::green_super(tint[e.index]));
      else if (e.kind == ColourKind::Red)
        map[c] = sig_.id_of(EdgeColour::red(red[e.index], red[e.second], copy[e.copy]));
    }
    return map;
  }

  std::int32_t colour_class(ColourId c) const {
    if (c == kNoColour) return -1;
    if (!colour_sym_) return c;
    const EdgeColour& e = sig_.colour(c);
    switch (e.kind) {
      case ColourKind::GreenSuper:
        return 1000;
      case ColourKind::Red:
        return 2000;
      default:
        return c;
    }
  }

  void compute_cells() {
    if (!node_perms_) {
      inv_.assign(m_, 0);
      return;
    }
    std::vector<std::uint64_t> inv(m_, 0);
    for (int v = 0; v < m_; ++v) {
      std::vector<std::int64_t> feats;
      for (int u = 0; u < m_; ++u)
        if (u != v) feats.push_back(colour_class(g_.edge(v, u)));
      std::sort(feats.begin(), feats.end());
      std::uint64_t h = 1469598103934665603ull;
      for (auto f : feats) h = (h ^ static_cast<std::uint64_t>(f + 7)) * 1099511628211ull;
      inv[v] = h;
    }
    for (int round = 0; round < 2; ++round) {
      std::vector<std::uint64_t> next(m_);
      for (int v = 0; v < m_; ++v) {
        std::vector<std::pair<std::int64_t, std::uint64_t>> feats;
        for (int u = 0; u < m_; ++u)
          if (u != v) feats.emplace_back(colour_class(g_.edge(v, u)), inv[u]);
        std::sort(feats.begin(), feats.end());
        std::uint64_t h = inv[v] * 31 + 17;
        for (auto& [c, i] : feats) {
          h = (h ^ static_cast<std::uint64_t>(c + 7)) * 1099511628211ull;
          h = (h ^ i) * 1099511628211ull;
        }
        next[v] = h;
      }
      inv = next;
    }
    inv_ = inv;
  }

  void compute_twins() {
    twin_.assign(static_cast<std::size_t>(m_) * m_, 0);
    if (!node_perms_) return;
    for (int v = 0; v < m_; ++v)
      for (int u = 0; u < v; ++u)
        if (inv_[u] == inv_[v] && is_twin(u, v)) twin_[u * m_ + v] = twin_[v * m_ + u] = 1;
  }

  bool is_twin(int u, int v) const {
    ColourId uv = g_.edge(u, v);
    if (uv != kNoColour && sig_.converse(uv) != uv) return false;
    for (int x = 0; x < m_; ++x) {
      if (x == u || x == v) continue;
      if (g_.edge(u, x) != g_.edge(v, x)) return false;
    }
    std::vector<int> swapped(g_.arity());
    for (std::size_t i = 0; i < g_.tuple_count(); ++i) {
      auto t = g_.tuple_at(i);
      for (std::size_t k = 0; k < t.size(); ++k) swapped[k] = t[k] == u ? v : (t[k] == v ? u : t[k]);
      if (g_.yellow_at(i) != g_.yellow(swapped)) return false;
    }
    return true;
  }

  std::int32_t code_colour(ColourId c, std::vector<int>& tints, std::vector<int>& reds,
                           std::vector<int>& copies, int& nt, int& nr, int& ncp) const {
    if (c == kNoColour) return -1;
    if (!colour_sym_) return c;
    const EdgeColour& e = sig_.colour(c);
    auto name = [](std::vector<int>& map, int x, int& counter) {
      if (map[x] < 0) map[x] = counter++;
      return map[x];
    };
    switch (e.kind) {
      case ColourKind::GreenSuper:
        return 1000 + name(tints, e.index, nt);
      case ColourKind::Red: {
        int i = name(reds, e.index, nr);
        int j = name(reds, e.second, nr);
        int l = name(copies, e.copy, ncp);
        return 100000 + (i * 64 + j) * 64 + l;
      }
      default:
        return c;
    }
  }

  // Appends the code segment contributed by position p (node order_[p]).
  void append_segment(int p) {
    const int v = order_[p];
    for (int q = 0; q < p; ++q)
      current_.push_back(code_colour(g_.edge(order_[q], v), tint_map_, red_map_, copy_map_, nt_, nr_, ncp_));
    const int arity = g_.arity();
    if (arity > p + 1) return;
    std::vector<int> pos(arity), nodes(arity);
    // Tuples of distinct positions <= p that contain p, in lexicographic order.
    for_each_distinct_tuple(p + 1, arity, [&](std::span<const int> t) {
      if (std::find(t.begin(), t.end(), p) == t.end()) return;
      for (int k = 0; k < arity; ++k) nodes[k] = order_[t[k]];
      std::uint32_t y = g_.yellow(nodes);
      current_.push_back(y == kNoYellow ? -1 : static_cast<std::int32_t>(y));
    });
  }

  void search(int p) {
    if (p == m_) {
      if (!have_best_ || current_ < best_) {
        best_ = current_;
        best_order_ = order_;
        best_tint_ = tint_map_;
        best_red_ = red_map_;
        best_copy_ = copy_map_;
        have_best_ = true;
      }
      return;
    }
    std::uint64_t min_inv = ~0ull;
    for (int v = 0; v < m_; ++v)
      if (!placed_[v]) min_inv = std::min(min_inv, inv_[v]);
    std::vector<int> tried;
    for (int v = 0; v < m_; ++v) {
      if (placed_[v] || inv_[v] != min_inv) continue;
      if (!node_perms_ && v != p) continue;
      if (std::any_of(tried.begin(), tried.end(), [&](int t) { return twin_[t * m_ + v] != 0; })) continue;
      tried.push_back(v);
      std::size_t mark = current_.size();
      auto saved_t = tint_map_;
      auto saved_r = red_map_;
      auto saved_c = copy_map_;
      int snt = nt_, snr = nr_, sncp = ncp_;
      order_.push_back(v);
      placed_[v] = 1;
      append_segment(p);
      bool prune = false;
      if (have_best_) {
        auto cmp = std::lexicographical_compare_three_way(
            current_.begin(), current_.end(), best_.begin(),
            best_.begin() + static_cast<std::ptrdiff_t>(current_.size()));
        prune = cmp > 0;
      }
      if (!prune) search(p + 1);
      placed_[v] = 0;
      order_.pop_back();
      current_.resize(mark);
      tint_map_ = saved_t;
      red_map_ = saved_r;
      copy_map_ = saved_c;
      nt_ = snt;
      nr_ = snr;
      ncp_ = sncp;
    }
  }

  const ColouredGraph& g_;
  const Signature& sig_;
  int m_;
  bool colour_sym_ = false;
  std::vector<std::uint64_t> inv_;
  std::vector<char> twin_;  // twin_[u*m+v]: transposition (u v) is an automorphism
  std::vector<int> order_;
  std::vector<char> placed_;
  std::vector<std::int32_t> current_, best_;
  std::vector<int> best_order_;
  bool have_best_ = false;
  std::vector<int> tint_map_, red_map_, copy_map_;
  std::vector<int> best_tint_, best_red_, best_copy_;
  bool node_perms_ = true;
  int nt_ = 0, nr_ = 0, ncp_ = 0;
};

}  // namespace detail

/// Canonical representative under node permutations (and, optionally, colour
/// symmetries). Works on partially labelled graphs too; unset labels are a
/// distinguished value.
inline CanonicalForm canonical_form(const ColouredGraph& g, CanonOptions opts = {}) {
  return detail::Canonizer(g, opts).run();
}

inline bool is_isomorphic(const ColouredGraph& a, const ColouredGraph& b, CanonOptions opts = {}) {
  if (a.size() != b.size()) return false;
  return canonical_form(a, opts).code == canonical_form(b, opts).code;
}

/// Raw (non-canonical) code with the same layout as canonical codes.
inline std::vector<std::int32_t> raw_code(const ColouredGraph& g) {
  std::vector<std::int32_t> code{g.size(), 0};
  for (int p = 0; p < g.size(); ++p) {
    for (int q = 0; q < p; ++q) code.push_back(g.edge(q, p));
    const int arity = g.arity();
    if (arity > p + 1) continue;
    for_each_distinct_tuple(p + 1, arity, [&](std::span<const int> t) {
      if (std::find(t.begin(), t.end(), p) == t.end()) return;
      std::uint32_t y = g.yellow(t);
      code.push_back(y == kNoYellow ? -1 : static_cast<std::int32_t>(y));
    });
  }
  return code;
}

/// Fills yellow labels on every eligible tuple that lacks one.
inline void fill_yellows(ColouredGraph& g, std::uint32_t yellow) {
  for_each_distinct_tuple(g.size(), g.arity(), [&](std::span<const int> t) {
    if (g.yellow_eligible(t) && g.yellow(t) == kNoYellow) g.set_yellow(t, yellow);
  });
}

}  // namespace rainbow
