#pragma once

// Moves of the atomic game on coloured graphs. A round: forall names a face
// F of n-1 nodes of the current graph and a graph Phi on F plus one new node
// k; exists amalgamates, either by pointing at an existing node z that
// realises Phi over F, or by adding k and labelling every missing edge and
// yellow so that the result is again a valid coloured graph.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "rainbow/atom_structure.hpp"

namespace rainbow {

struct GameConfig {
  int rounds = 1;                 // total rounds, the opening M_0 included
  std::optional<int> node_budget; // F^m: at most m nodes
  bool reuse = false;             // F^m: forall may overwrite a node
  bool canonical = true;          // node-permutation canonical forms
};

struct GamePosition {
  ColouredGraph current;  // meaningless before the opening
  bool opened = false;
  int rounds_left = 0;
};

inline GamePosition initial_position(const GameConfig& cfg) { return GamePosition{{}, false, cfg.rounds}; }

struct ForallMove {
  bool opening = false;
  ColouredGraph phi;      // opening: M_0. demand: n nodes, face 0..n-2, new node n-1
  std::vector<int> face;  // phi node j sits on face[j] of the current graph
  int reuse = -1;         // node discarded before the demand (F^m), -1 if none
};

struct ExistsResponse {
  bool identity = false;
  int node = -1;  // the realising node when identity
  ColouredGraph graph;
};

namespace detail {

// Colour order for exists: whites, then reds, then greens.
inline std::vector<ColourId> exists_colour_order(const Signature& sig) {
  std::vector<ColourId> order(sig.colour_count());
  std::iota(order.begin(), order.end(), ColourId{0});
  auto rank = [&](ColourId c) {
    switch (sig.kind(c)) {
      case ColourKind::White:
      case ColourKind::WhiteTint:
        return 0;
      case ColourKind::Red:
        return 1;
      default:
        return 2;
    }
  };
  std::stable_sort(order.begin(), order.end(), [&](ColourId a, ColourId b) { return rank(a) < rank(b); });
  return order;
}

/// Colours unused by a graph are interchangeable under the signature's
/// symmetries (when every yellow is y_A). Enumerations that introduce unused
/// tints, red indices and copies only in increasing order visit one
/// representative per orbit.
class FreshColours {
 public:
  struct State {
    int tints = 0, reds = 0, copies = 0;
  };

  FreshColours() = default;
  explicit FreshColours(const ColouredGraph& g) : sig_(&g.signature()) {
    const RainbowSpec& sp = sig_->spec();
    std::vector<char> t(sp.greens, 0), r(sp.reds, 0), c(sp.red_copies, 0);
    for (int u = 0; u < g.size(); ++u)
      for (int v = 0; v < g.size(); ++v) {
        ColourId id = g.edge(u, v);
        if (id == kNoColour) continue;
        const EdgeColour& e = sig_->colour(id);
        if (e.kind == ColourKind::GreenSuper) t[e.index] = 1;
        if (e.kind == ColourKind::Red) r[e.index] = r[e.second] = c[e.copy] = 1;
      }
    auto rank = [](const std::vector<char>& used) {
      std::vector<int> out(used.size(), -1);
      int k = 0;
      for (std::size_t x = 0; x < used.size(); ++x)
        if (!used[x]) out[x] = k++;
      return out;
    };
    tint_rank_ = rank(t);
    red_rank_ = rank(r);
    copy_rank_ = rank(c);
    active_ = true;
  }

  bool active() const { return active_; }

  /// The state after using colour c, or nullopt if c is not the
  /// representative of its orbit.
  std::optional<State> step(State st, ColourId id) const {
    if (!active_) return st;
    const EdgeColour& e = sig_->colour(id);
    auto use = [](const std::vector<int>& rank, int x, int& counter) {
      int r = rank[x];
      if (r < 0 || r < counter) return true;
      if (r == counter) {
        ++counter;
        return true;
      }
      return false;
    };
    if (e.kind == ColourKind::GreenSuper) {
      if (!use(tint_rank_, e.index, st.tints)) return std::nullopt;
    } else if (e.kind == ColourKind::Red) {
      if (!use(red_rank_, e.index, st.reds) || !use(red_rank_, e.second, st.reds) ||
          !use(copy_rank_, e.copy, st.copies))
        return std::nullopt;
    }
    return st;
  }

 private:
  const Signature* sig_ = nullptr;
  bool active_ = false;
  std::vector<int> tint_rank_, red_rank_, copy_rank_;
};

inline std::string code_key(const std::vector<std::int32_t>& code) {
  return std::string(reinterpret_cast<const char*>(code.data()), code.size() * sizeof(std::int32_t));
}

}  // namespace detail

/// Current graph with `reuse` removed, and the face renumbered to match.
inline ColouredGraph demand_base(const ColouredGraph& m, const ForallMove& mv, std::vector<int>* face) {
  *face = mv.face;
  if (mv.reuse < 0) return m;
  for (int& f : *face)
    if (f > mv.reuse) --f;
  return m.without_node(mv.reuse);
}

/// M*: the current graph plus the new node (last), carrying Phi's labels.
inline ColouredGraph demand_graph(const ColouredGraph& m, const ForallMove& mv) {
  std::vector<int> face;
  ColouredGraph star = demand_base(m, mv, &face);
  const int k = star.add_node();
  const int n = mv.phi.size();
  std::vector<int> place(face);
  place.push_back(k);
  for (int a = 0; a + 1 < n; ++a) star.set_edge(face[a], k, mv.phi.edge(a, n - 1));
  std::vector<int> t(star.arity());
  for_each_distinct_tuple(n, star.arity(), [&](std::span<const int> pt) {
    if (std::find(pt.begin(), pt.end(), n - 1) == pt.end()) return;
    std::uint32_t y = mv.phi.yellow(pt);
    if (y == kNoYellow) return;
    for (std::size_t q = 0; q < pt.size(); ++q) t[q] = place[pt[q]];
    star.set_yellow(t, y);
  });
  return star;
}

/// A node z of the (reduced) current graph such that k -> z is an
/// isomorphism over the face, if any.
inline std::optional<int> identity_witness(const ColouredGraph& m, const ForallMove& mv) {
  std::vector<int> face;
  ColouredGraph base = demand_base(m, mv, &face);
  const int n = mv.phi.size();
  std::vector<int> t(base.arity());
  for (int z = 0; z < base.size(); ++z) {
    if (std::find(face.begin(), face.end(), z) != face.end()) continue;
    bool ok = true;
    for (int a = 0; a + 1 < n && ok; ++a) ok = base.edge(face[a], z) == mv.phi.edge(a, n - 1);
    if (!ok) continue;
    std::vector<int> place(face);
    place.push_back(z);
    for_each_distinct_tuple(n, base.arity(), [&](std::span<const int> pt) {
      if (!ok || std::find(pt.begin(), pt.end(), n - 1) == pt.end()) return;
      for (std::size_t q = 0; q < pt.size(); ++q) t[q] = place[pt[q]];
      ok = base.yellow(t) == mv.phi.yellow(pt);
    });
    if (ok) return z;
  }
  return std::nullopt;
}

/// Calls f(completed graph) for every valid completion of M*, where the last
/// node is the new one. Stops early when f returns true; returns whether it
/// stopped.
template <typename F>
bool for_each_completion(const ColouredGraph& star, F&& f, bool reduce = false) {
  const Signature& sig = star.signature();
  const int k = star.size() - 1;
  std::vector<int> open;
  for (int x = 0; x < k; ++x)
    if (star.edge(x, k) == kNoColour) open.push_back(x);
  const std::vector<ColourId> order = detail::exists_colour_order(sig);
  ColouredGraph g = star;
  std::vector<std::vector<int>> tuples;
  bool stopped = false;
  // With a single yellow y_A every cone condition holds, and the edge search
  // already checks every triangle through k.
  const bool only_top = sig.palette().size() == 1 && sig.palette()[0] == sig.full_yellow();
  detail::FreshColours fresh;
  if (reduce && only_top) fresh = detail::FreshColours(star);

  std::function<void(std::size_t)> yellows = [&](std::size_t q) {
    if (stopped) return;
    if (q == tuples.size()) {
      if (only_top || is_valid(g)) stopped = f(static_cast<const ColouredGraph&>(g));
      return;
    }
    for (std::uint32_t y : sig.palette()) {
      g.set_yellow(tuples[q], y);
      yellows(q + 1);
      if (stopped) break;
    }
    g.set_yellow(tuples[q], kNoYellow);
  };

  std::function<void(std::size_t, detail::FreshColours::State)> edges = [&](std::size_t e,
                                                                          detail::FreshColours::State st) {
    if (stopped) return;
    if (e == open.size()) {
      tuples.clear();
      for_each_distinct_tuple(g.size(), g.arity(), [&](std::span<const int> t) {
        if (std::find(t.begin(), t.end(), k) == t.end()) return;
        if (g.yellow(t) != kNoYellow || !g.yellow_eligible(t)) return;
        tuples.emplace_back(t.begin(), t.end());
      });
      yellows(0);
      return;
    }
    const int x = open[e];
    for (ColourId c : order) {
      auto next = fresh.step(st, c);
      if (!next) continue;
      bool ok = true;
      for (int y = 0; y < k && ok; ++y) {
        if (y == x) continue;
        ColourId yk = g.edge(y, k);
        if (yk == kNoColour) continue;
        ok = sig.consistent(g.edge(y, x), c, yk);
      }
      if (!ok) continue;
      g.set_edge(x, k, c);
      edges(e + 1, *next);
      if (stopped) break;
    }
    g.set_edge(x, k, kNoColour);
  };
  edges(0, {});
  return stopped;
}

inline bool has_completion(const ColouredGraph& star) {
  return for_each_completion(star, [](const ColouredGraph&) { return true; }, true);
}

/// Nodes z of the (reduced) current graph realising the demand: k -> z is
/// an isomorphism over the face.
inline std::vector<int> identity_nodes(const ColouredGraph& m, const ForallMove& mv) {
  std::vector<int> out;
  if (mv.opening) return out;
  std::vector<int> face;
  ColouredGraph base = demand_base(m, mv, &face);
  const int n = mv.phi.size();
  std::vector<int> t(base.arity());
  for (int z = 0; z < base.size(); ++z) {
    if (std::find(face.begin(), face.end(), z) != face.end()) continue;
    bool ok = true;
    for (int a = 0; a + 1 < n && ok; ++a) ok = base.edge(face[a], z) == mv.phi.edge(a, n - 1);
    std::vector<int> place(face);
    place.push_back(z);
    for_each_distinct_tuple(n, base.arity(), [&](std::span<const int> pt) {
      if (!ok || std::find(pt.begin(), pt.end(), n - 1) == pt.end()) return;
      for (std::size_t q = 0; q < pt.size(); ++q) t[q] = place[pt[q]];
      ok = base.yellow(t) == mv.phi.yellow(pt);
    });
    if (ok) out.push_back(z);
  }
  return out;
}

/// True iff g is a valid graph agreeing with every label of M*.
inline bool completes_demand(const ColouredGraph& star, const ColouredGraph& g) {
  if (g.size() != star.size() || !is_valid(g)) return false;
  for (int u = 0; u < g.size(); ++u)
    for (int v = 0; v < g.size(); ++v)
      if (star.edge(u, v) != kNoColour && star.edge(u, v) != g.edge(u, v)) return false;
  for (std::size_t i = 0; i < star.tuple_count(); ++i)
    if (star.yellow_at(i) != kNoYellow && star.yellow_at(i) != g.yellow_at(i)) return false;
  return true;
}

/// Every exists response to `mv`: the identity responses first, then all
/// valid completions of M*.
inline std::vector<ExistsResponse> legal_exists_responses(const GamePosition& p, const ForallMove& mv) {
  std::vector<ExistsResponse> out;
  if (mv.opening) return out;  // no response to the opening
  std::vector<int> face;
  ColouredGraph base = demand_base(p.current, mv, &face);
  for (int z : identity_nodes(p.current, mv)) out.push_back({true, z, base});
  for_each_completion(demand_graph(p.current, mv), [&](const ColouredGraph& g) {
    out.push_back({false, -1, g});
    return false;
  });
  return out;
}

inline int green_spokes(const ForallMove& mv) {
  const int k = mv.phi.size() - 1;
  int g = 0;
  for (int a = 0; a < k; ++a) g += mv.phi.signature().is_green(mv.phi.edge(a, k));
  return g;
}

/// True if some open edge (x, k) of M* admits no white colour. Otherwise
/// exists can answer with whites alone: a triangle with two white sides is
/// never forbidden.
inline bool blocks_all_whites(const ColouredGraph& star) {
  const Signature& sig = star.signature();
  const int k = star.size() - 1;
  for (int x = 0; x < k; ++x) {
    if (star.edge(x, k) != kNoColour) continue;
    bool some_white = false;
    for (ColourId c = 0; c < sig.colour_count() && !some_white; ++c) {
      if (!sig.colour(c).is_white()) continue;
      bool ok = true;
      for (int y = 0; y < k && ok; ++y) {
        ColourId yk = star.edge(y, k);
        if (y != x && yk != kNoColour) ok = sig.consistent(star.edge(y, x), c, yk);
      }
      some_white = ok;
    }
    if (!some_white) return true;
  }
  return false;
}

/// Exists' default answer: each open edge (x, k) gets the first white that
/// fits, yellows are y_A. Only defined for the y_A-only palette.
inline std::optional<ColouredGraph> white_answer(const ColouredGraph& star) {
  const Signature& sig = star.signature();
  if (sig.palette().size() != 1 || sig.palette()[0] != sig.full_yellow()) return std::nullopt;
  const int k = star.size() - 1;
  ColouredGraph g = star;
  for (int x = 0; x < k; ++x) {
    if (g.edge(x, k) != kNoColour) continue;
    ColourId pick = kNoColour;
    for (ColourId c = 0; c < sig.colour_count() && pick == kNoColour; ++c) {
      if (!sig.colour(c).is_white()) continue;
      bool ok = true;
      for (int y = 0; y < k && ok; ++y) {
        ColourId yk = g.edge(y, k);
        if (y != x && yk != kNoColour) ok = sig.consistent(g.edge(y, x), c, yk);
      }
      if (ok) pick = c;
    }
    if (pick == kNoColour) return std::nullopt;
    g.set_edge(x, k, pick);
  }
  fill_yellows(g, sig.full_yellow());
  return g;
}

/// All demand graphs Phi over the face of `base` given by `face`, with at
/// least `min_green` green spokes.
template <typename F>
void for_each_phi(const ColouredGraph& base, const std::vector<int>& face, F&& f,
                  const detail::FreshColours& fresh = {}, int min_green = 0) {
  const Signature& sig = base.signature();
  const int n = sig.n();
  ColouredGraph phi = base.induced(face);
  phi.add_node();
  const int k = n - 1;
  std::vector<std::vector<int>> tuples;
  std::function<void(std::size_t)> yellows = [&](std::size_t q) {
    if (q == tuples.size()) {
      if (is_valid(phi)) f(static_cast<const ColouredGraph&>(phi));
      return;
    }
    for (std::uint32_t y : sig.palette()) {
      phi.set_yellow(tuples[q], y);
      yellows(q + 1);
    }
    phi.set_yellow(tuples[q], kNoYellow);
  };
  std::function<void(int, detail::FreshColours::State, int)> spokes = [&](int a, detail::FreshColours::State st,
                                                                           int greens) {
    if (greens + (k - a) < min_green) return;
    if (a == k) {
      tuples.clear();
      for_each_distinct_tuple(n, phi.arity(), [&](std::span<const int> t) {
        if (std::find(t.begin(), t.end(), k) == t.end()) return;
        if (phi.yellow_eligible(t)) tuples.emplace_back(t.begin(), t.end());
      });
      yellows(0);
      return;
    }
    for (ColourId c = 0; c < sig.colour_count(); ++c) {
      auto next = fresh.step(st, c);
      if (!next) continue;
      bool ok = true;
      for (int b = 0; b < a && ok; ++b) ok = sig.consistent(phi.edge(b, a), c, phi.edge(b, k));
      if (!ok) continue;
      phi.set_edge(a, k, c);
      spokes(a + 1, *next, greens + (sig.is_green(c) ? 1 : 0));
    }
    phi.set_edge(a, k, kNoColour);
  };
  spokes(0, {}, 0);
}

/// Forall's moves. Before the opening: one move per atom graph (up to
/// isomorphism when `dedup`). Afterwards: every face, every valid Phi and,
/// under a node budget, every permitted reuse; with `dedup` moves whose M*
/// coincide up to isomorphism are listed once, with `colour_orbits` unused
/// colours are introduced in increasing order only.
inline std::vector<ForallMove> legal_forall_moves(const GamePosition& p, const AtomStructure& s,
                                                  const GameConfig& cfg, bool dedup = true,
                                                  bool colour_orbits = false, int min_green = 0) {
  std::vector<ForallMove> out;
  if (p.rounds_left <= 0) return out;
  CanonOptions opts;
  opts.node_permutations = cfg.canonical;
  std::unordered_set<std::string> seen;
  if (!p.opened) {
    for (const Atom& a : s.atoms()) {
      if (cfg.node_budget && a.graph.size() > *cfg.node_budget) continue;
      if (dedup && !seen.insert(detail::code_key(canonical_form(a.graph, opts).code)).second) continue;
      ForallMove mv;
      mv.opening = true;
      mv.phi = a.graph;
      out.push_back(std::move(mv));
    }
    return out;
  }
  const ColouredGraph& m = p.current;
  const int arity = m.arity();
  std::vector<int> reuse_options;
  const bool full = cfg.node_budget && m.size() >= *cfg.node_budget;
  if (!full) reuse_options.push_back(-1);
  if (cfg.node_budget && cfg.reuse)
    for (int z = 0; z < m.size(); ++z) reuse_options.push_back(z);
  for (int z : reuse_options) {
    ColouredGraph base = z < 0 ? m : m.without_node(z);
    detail::FreshColours fresh;
    if (colour_orbits && s.signature().palette().size() == 1) fresh = detail::FreshColours(base);
    for_each_distinct_tuple(base.size(), arity, [&](std::span<const int> f) {
      std::vector<int> face(f.begin(), f.end());
      for_each_phi(base, face, [&](const ColouredGraph& phi) {
        ForallMove mv;
        mv.phi = phi;
        mv.face = face;
        if (z >= 0)
          for (int& v : mv.face)
            if (v >= z) ++v;
        mv.reuse = z;
        if (dedup && !seen.insert(detail::code_key(canonical_form(demand_graph(m, mv), opts).code)).second) return;
        out.push_back(std::move(mv));
      }, fresh, min_green);
    });
  }
  return out;
}

/// True if some node outside the face has a g_i edge to one face node and a
/// g_0 edge to another: the only way a demand over this face can block
/// every white on an open edge.
inline bool face_can_block(const ColouredGraph& g, std::span<const int> face) {
  const Signature& sig = g.signature();
  for (int x = 0; x < g.size(); ++x) {
    if (std::find(face.begin(), face.end(), x) != face.end()) continue;
    bool tint = false, super = false;
    for (int f : face) {
      ColourId c = g.edge(f, x);
      if (c == kNoColour) continue;
      tint |= sig.kind(c) == ColourKind::GreenTint;
      super |= sig.kind(c) == ColourKind::GreenSuper;
    }
    if (tint && super) return true;
  }
  return false;
}

/// The demands that might leave exists without an answer this round: those
/// not answerable by identity that block every white on some open edge.
/// Every other demand has an identity answer or a white answer.
inline std::vector<ForallMove> kill_candidates(const GamePosition& p, const GameConfig& cfg, bool colour_orbits) {
  std::vector<ForallMove> out;
  if (!p.opened || p.rounds_left <= 0) return out;
  const ColouredGraph& m = p.current;
  std::vector<int> reuse_options;
  if (!(cfg.node_budget && m.size() >= *cfg.node_budget)) reuse_options.push_back(-1);
  if (cfg.node_budget && cfg.reuse)
    for (int z = 0; z < m.size(); ++z) reuse_options.push_back(z);
  for (int z : reuse_options) {
    ColouredGraph base = z < 0 ? m : m.without_node(z);
    detail::FreshColours fresh;
    if (colour_orbits && m.signature().palette().size() == 1) fresh = detail::FreshColours(base);
    for_each_distinct_tuple(base.size(), m.arity(), [&](std::span<const int> f) {
      if (!face_can_block(base, f)) return;
      std::vector<int> face(f.begin(), f.end());
      for_each_phi(base, face, [&](const ColouredGraph& phi) {
        ForallMove mv;
        mv.phi = phi;
        mv.face = face;
        if (z >= 0)
          for (int& v : mv.face)
            if (v >= z) ++v;
        mv.reuse = z;
        if (identity_witness(m, mv)) return;
        if (!blocks_all_whites(demand_graph(m, mv))) return;
        out.push_back(std::move(mv));
      }, fresh, 2);
    });
  }
  return out;
}

/// Plays `mv` then `r` on p, returning the next position.
inline GamePosition advance(const GamePosition& p, const ForallMove& mv, const ExistsResponse* r) {
  GamePosition q;
  q.opened = true;
  q.rounds_left = p.rounds_left - 1;
  if (mv.opening) {
    q.current = mv.phi;
  } else if (r->identity) {
    std::vector<int> face;
    q.current = demand_base(p.current, mv, &face);
  } else {
    q.current = r->graph;
  }
  return q;
}

}  // namespace rainbow
