#pragma once

// Exhaustive solver for G^k and F^m on coloured graphs, winning-strategy
// certificates in canonical coordinates, and certificate checking.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "rainbow/game_moves.hpp"

namespace rainbow {

enum class Winner { Forall, Exists, Undecided };

inline std::string_view to_string(Winner w) {
  switch (w) {
    case Winner::Forall:
      return "forall";
    case Winner::Exists:
      return "exists";
    default:
      return "undecided";
  }
}

struct SolveLimits {
  double seconds = 0;             // 0 = no time limit
  std::size_t max_positions = 0;  // 0 = no position limit
};

struct SolveStats {
  std::size_t forall_points = 0;  // forall decision points expanded
  std::size_t exists_points = 0;
  std::size_t memo_hits = 0;
  std::size_t completions_tried = 0;
};

/// Keys and coordinates shared by the solver, the script and the checker.
struct CanonicalFrame {
  std::string key;
  std::vector<int> relabel;  // node -> canonical position
  std::vector<int> inverse;  // canonical position -> node
  std::vector<ColourId> colour;
  std::vector<ColourId> colour_inverse;

  static CanonicalFrame of(const ColouredGraph& g, CanonOptions opts) {
    CanonicalForm cf = canonical_form(g, opts);
    CanonicalFrame f;
    f.key = detail::code_key(cf.code);
    f.relabel = cf.relabel;
    f.inverse.assign(f.relabel.size(), 0);
    for (std::size_t v = 0; v < f.relabel.size(); ++v) f.inverse[f.relabel[v]] = static_cast<int>(v);
    f.colour = cf.colour_map;
    f.colour_inverse.assign(f.colour.size(), 0);
    for (std::size_t c = 0; c < f.colour.size(); ++c) f.colour_inverse[f.colour[c]] = static_cast<ColourId>(c);
    return f;
  }

  ForallMove to_canonical(const ForallMove& mv) const {
    ForallMove out = mv;
    out.phi = mv.phi.recoloured(colour);
    for (int& v : out.face) v = relabel[v];
    if (mv.reuse >= 0) out.reuse = relabel[mv.reuse];
    return out;
  }
  ForallMove from_canonical(const ForallMove& mv) const {
    ForallMove out = mv;
    out.phi = mv.phi.recoloured(colour_inverse);
    for (int& v : out.face) v = inverse[v];
    if (mv.reuse >= 0) out.reuse = inverse[mv.reuse];
    return out;
  }
  ColouredGraph to_canonical(const ColouredGraph& g) const { return g.permuted(relabel).recoloured(colour); }
  ColouredGraph from_canonical(const ColouredGraph& g) const {
    return g.recoloured(colour_inverse).permuted(inverse);
  }
};

struct ForallEntry {
  int rounds = 0;  // forall wins from here with this many rounds (or more)
  ForallMove move;  // canonical coordinates
};

struct ExistsEntry {
  int rounds = 0;       // exists survives with this many rounds (or fewer)
  ColouredGraph graph;  // completion of M*, canonical coordinates
};

/// Winning strategy for the claimed winner. Forall entries are keyed by the
/// canonical code of the position, exists entries by that of M*; last-round
/// exists responses are not stored (any valid completion wins that round).
struct Certificate {
  Winner winner = Winner::Undecided;
  GameConfig config;
  bool colour_symmetry = false;
  std::optional<ForallMove> opening;  // forall's M_0 when forall wins
  std::unordered_map<std::string, ForallEntry> forall;
  std::unordered_map<std::string, ExistsEntry> exists;
  SolveStats stats;
  std::string note;                         // e.g. why undecided, or "script refuted"
  std::vector<ColouredGraph> refutation;    // a surviving play against a script
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline CanonOptions solver_options(const Signature& sig, const GameConfig& cfg) {
  CanonOptions o;
  o.node_permutations = cfg.canonical;
  // Tint permutations fix yellows only when every yellow is y_A.
  o.colour_symmetry = sig.palette().size() == 1;
  return o;
}

inline int forall_score(const Signature& sig, const ForallMove& mv) {
  const int k = mv.phi.size() - 1;
  int score = 0;
  for (int a = 0; a < k; ++a) {
    ColourId c = mv.phi.edge(a, k);
    if (sig.is_green(c)) score += 2;
    if (sig.kind(c) == ColourKind::GreenSuper) score += 1;
  }
  return score;
}

inline int green_count(const ColouredGraph& g) {
  int c = 0;
  for (int u = 0; u < g.size(); ++u)
    for (int v = u + 1; v < g.size(); ++v)
      if (g.edge(u, v) != kNoColour && g.signature().is_green(g.edge(u, v))) ++c;
  return c;
}

/// Forall moves worth trying: identity-answerable demands are dropped
/// (exists can leave the graph unchanged, which never helps forall), and
/// greener demands come first.
inline std::vector<ForallMove> useful_forall_moves(const GamePosition& p, const AtomStructure& s,
                                                   const GameConfig& cfg, int min_green = 0) {
  auto moves = legal_forall_moves(p, s, cfg, !p.opened, true, min_green);
  const Signature& sig = s.signature();
  // Ordering only: cones first, and cones piling onto an already coned base
  // before anything else, since that is how forall runs exists out of reds.
  auto is_cone = [](const ColouredGraph& g, int apex) {
    for (const Cone& c : find_cones(g))
      if (apex < 0 || c.apex == apex) return true;
    return false;
  };
  if (!p.opened) {
    std::vector<std::pair<int, std::size_t>> order;
    for (std::size_t i = 0; i < moves.size(); ++i)
      order.push_back({(is_cone(moves[i].phi, -1) ? 100 : 0) + green_count(moves[i].phi), i});
    std::stable_sort(order.begin(), order.end(), [](auto& a, auto& b) { return a.first > b.first; });
    std::vector<ForallMove> sorted;
    for (auto& [sc, i] : order) sorted.push_back(std::move(moves[i]));
    return sorted;
  }
  std::map<std::vector<int>, int> coned;
  for (const Cone& c : find_cones(p.current)) {
    auto b = c.base;
    std::sort(b.begin(), b.end());
    ++coned[b];
  }
  std::vector<std::pair<int, std::size_t>> order;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const ForallMove& mv = moves[i];
    if (identity_witness(p.current, mv)) continue;
    int score = forall_score(sig, mv);
    if (is_cone(mv.phi, mv.phi.size() - 1)) {
      auto b = mv.face;
      std::sort(b.begin(), b.end());
      auto it = coned.find(b);
      score += 100 + 10 * (it == coned.end() ? 0 : it->second);
    }
    order.push_back({score, i});
  }
  std::stable_sort(order.begin(), order.end(), [](auto& a, auto& b) { return a.first > b.first; });
  std::vector<ForallMove> kept;
  for (auto& [sc, i] : order) kept.push_back(std::move(moves[i]));
  return kept;
}

class Solver {
 public:
  Solver(const AtomStructure& s, const GameConfig& cfg, SolveLimits limits)
      : s_(s), cfg_(cfg), limits_(limits), opts_(solver_options(s.signature(), cfg)) {
    start_ = std::chrono::steady_clock::now();
  }

  Certificate run() {
    Certificate cert;
    cert.config = cfg_;
    cert.colour_symmetry = opts_.colour_symmetry;
    try {
      GamePosition root = initial_position(cfg_);
      if (cfg_.rounds <= 1) {
        cert.winner = Winner::Exists;  // exists makes no response to the opening
      } else {
        cert.winner = Winner::Exists;
        for (const auto& mv : useful_forall_moves(root, s_, cfg_)) {
          if (forall_wins(mv.phi, cfg_.rounds - 1)) {
            cert.winner = Winner::Forall;
            cert.opening = mv;
            break;
          }
        }
      }
    } catch (const BudgetExceeded& e) {
      cert.winner = Winner::Undecided;
      cert.note = e.what();
    }
    cert.stats = stats_;
    if (cert.winner == Winner::Forall) cert.forall = std::move(forall_table_);
    if (cert.winner == Winner::Exists) cert.exists = std::move(exists_table_);
    return cert;
  }

 private:
  struct Bounds {
    int forall_min = 1 << 20;  // forall wins with at least this many rounds
    int exists_max = 0;        // exists survives with at most this many rounds
  };

  void tick() {
    ++steps_;
    if (limits_.max_positions && stats_.forall_points + stats_.exists_points > limits_.max_positions)
      throw BudgetExceeded("position budget of " + std::to_string(limits_.max_positions) + " exceeded");
    if (limits_.seconds > 0 && (steps_ & 255) == 0) {
      double used = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      if (used > limits_.seconds) throw BudgetExceeded("time budget of " + std::to_string(limits_.seconds) + " s exceeded");
    }
  }

  // Demand rounds left = r.
  bool forall_wins(const ColouredGraph& m, int r) {
    if (r <= 0) return false;
    CanonicalFrame frame = CanonicalFrame::of(m, opts_);
    Bounds& b = memo_[frame.key];
    if (r >= b.forall_min) {
      ++stats_.memo_hits;
      return true;
    }
    if (r <= b.exists_max) {
      ++stats_.memo_hits;
      return false;
    }
    ++stats_.forall_points;
    tick();
    GamePosition p{m, true, r};
    // A demand can leave exists without an answer only if it blocks every
    // white on some open edge, which takes two green spokes.
    for (const auto& mv : kill_candidates(p, cfg_, opts_.colour_symmetry))
      if (!has_completion(demand_graph(m, mv))) return record_forall(frame, m, r, mv);
    if (r > 1) {
      // With two rounds left a demand without green spokes is answered with
      // whites, after which forall's last-round options are those he had.
      auto moves = useful_forall_moves(p, s_, cfg_, r == 2 ? 1 : 0);
      for (const auto& mv : moves)
        if (!exists_survives(demand_graph(m, mv), r)) return record_forall(frame, m, r, mv);
    }
    Bounds& after = memo_[frame.key];
    after.exists_max = std::max(after.exists_max, r);
    return false;
  }

  bool record_forall(const CanonicalFrame& frame, const ColouredGraph&, int r, const ForallMove& mv) {
    Bounds& b = memo_[frame.key];
    b.forall_min = std::min(b.forall_min, r);
    auto& e = forall_table_[frame.key];
    if (e.rounds == 0 || r < e.rounds) e = {r, frame.to_canonical(mv)};
    return true;
  }

  // Exists must answer M* (r >= 2 demand rounds left, this one included).
  bool exists_survives(const ColouredGraph& star, int r) {
    CanonicalFrame frame = CanonicalFrame::of(star, opts_);
    Bounds& b = star_memo_[frame.key];
    if (r <= b.exists_max) {
      ++stats_.memo_hits;
      return true;
    }
    if (r >= b.forall_min) {
      ++stats_.memo_hits;
      return false;
    }
    ++stats_.exists_points;
    tick();
    // The white answer is exists' default in replay, so it needs no entry.
    if (auto w = white_answer(star)) {
      ++stats_.completions_tried;
      if (!forall_wins(*w, r - 1)) {
        Bounds& after = star_memo_[frame.key];
        after.exists_max = std::max(after.exists_max, r);
        return true;
      }
    }
    std::optional<ColouredGraph> chosen;
    for_each_completion(
        star,
        [&](const ColouredGraph& c) {
          ++stats_.completions_tried;
          if (!forall_wins(c, r - 1)) {
            chosen = c;
            return true;
          }
          return false;
        },
        opts_.colour_symmetry);
    Bounds& after = star_memo_[frame.key];
    if (chosen) {
      after.exists_max = std::max(after.exists_max, r);
      auto& e = exists_table_[frame.key];
      if (r > e.rounds) e = {r, frame.to_canonical(*chosen)};
      return true;
    }
    after.forall_min = std::min(after.forall_min, r);
    return false;
  }

  const AtomStructure& s_;
  GameConfig cfg_;
  SolveLimits limits_;
  CanonOptions opts_;
  std::chrono::steady_clock::time_point start_;
  std::size_t steps_ = 0;
  SolveStats stats_;
  std::unordered_map<std::string, Bounds> memo_, star_memo_;
  std::unordered_map<std::string, ForallEntry> forall_table_;
  std::unordered_map<std::string, ExistsEntry> exists_table_;
};

}  // namespace detail

/// Solves the game described by `cfg` on the atom structure `s`. Returns an
/// Undecided certificate when a limit is hit; never guesses.
inline Certificate solve(const AtomStructure& s, const GameConfig& cfg, SolveLimits limits = {}) {
  if (!s.has_atoms()) throw std::invalid_argument("solver needs an enumerated atom structure");
  return detail::Solver(s, cfg, limits).run();
}

// ---------------------------------------------------------------------------
// Certificate checking

struct ReplayResult {
  bool ok = false;
  std::size_t positions = 0;
  std::string failure;
};

namespace detail {

inline bool same_on_face(const ColouredGraph& m, const ForallMove& mv) {
  std::vector<int> face;
  ColouredGraph base = demand_base(m, mv, &face);
  const int n = mv.phi.size();
  if (static_cast<int>(face.size()) != n - 1) return false;
  for (int v : face)
    if (v < 0 || v >= base.size()) return false;
  ColouredGraph sub = base.induced(face);
  ColouredGraph phi_face = mv.phi.without_node(n - 1);
  return sub == phi_face;
}

/// Exists' move under a certificate: the stored answer, else the white
/// answer, else (last round) any completion.
inline std::optional<ColouredGraph> exists_answer(const Certificate& cert, const ColouredGraph& star, int r,
                                                  const CanonOptions& opts) {
  if (r >= 2 && !cert.exists.empty()) {
    CanonicalFrame sf = CanonicalFrame::of(star, opts);
    auto it = cert.exists.find(sf.key);
    if (it != cert.exists.end() && it->second.rounds >= r) return sf.from_canonical(it->second.graph);
  }
  if (auto w = white_answer(star)) return w;
  if (r == 1) {
    std::optional<ColouredGraph> any;
    for_each_completion(star, [&](const ColouredGraph& g) {
      any = g;
      return true;
    });
    return any;
  }
  return std::nullopt;
}

class Replayer {
 public:
  Replayer(const Certificate& cert, const AtomStructure& s)
      : cert_(cert), s_(s), opts_(solver_options(s.signature(), cert.config)) {}

  ReplayResult run() {
    ReplayResult res;
    const GameConfig& cfg = cert_.config;
    if (cert_.winner == Winner::Undecided) {
      res.failure = "certificate claims no winner";
      return res;
    }
    bool ok = true;
    if (cert_.winner == Winner::Forall) {
      if (!cert_.opening) return fail(res, "forall certificate without an opening");
      if (cfg.rounds <= 1) return fail(res, "forall cannot win with one round");
      if (!is_valid(cert_.opening->phi)) return fail(res, "opening graph is not valid");
      ok = forall_point(cert_.opening->phi, cfg.rounds - 1);
    } else if (cfg.rounds > 1) {
      for (const auto& mv : legal_forall_moves(initial_position(cfg), s_, cfg, true)) {
        if (!exists_point(mv.phi, cfg.rounds - 1)) {
          ok = false;
          break;
        }
      }
    }
    res.ok = ok && failure_.empty();
    res.positions = seen_.size();
    res.failure = failure_;
    if (!ok && res.failure.empty()) res.failure = "strategy does not win";
    return res;
  }

 private:
  ReplayResult fail(ReplayResult& r, std::string why) {
    r.failure = std::move(why);
    return r;
  }
  bool bad(std::string why) {
    if (failure_.empty()) failure_ = std::move(why);
    return false;
  }

  // Forall claims a win at (m, r): follow the table, try every exists answer.
  bool forall_point(const ColouredGraph& m, int r) {
    if (r <= 0) return bad("exists survived all rounds");
    CanonicalFrame frame = CanonicalFrame::of(m, opts_);
    std::string memo = frame.key + "#" + std::to_string(r);
    if (auto it = seen_.find(memo); it != seen_.end()) return it->second;
    auto it = cert_.forall.find(frame.key);
    if (it == cert_.forall.end() || it->second.rounds > r) return bad("no forall move for a reached position");
    ForallMove mv = frame.from_canonical(it->second.move);
    if (!is_valid(mv.phi) || !same_on_face(m, mv)) return bad("stored forall move is not legal here");
    if (mv.reuse >= 0 && !(cert_.config.node_budget && cert_.config.reuse)) return bad("reuse in a game without reuse");
    GamePosition p{m, true, r};
    bool ok = true;
    for (const auto& resp : legal_exists_responses(p, mv)) {
      GamePosition q = advance(p, mv, &resp);
      if (cert_.config.node_budget && q.current.size() > *cert_.config.node_budget) continue;
      if (!forall_point(q.current, r - 1)) {
        ok = false;
        break;
      }
    }
    seen_[memo] = ok;
    return ok;
  }

  // Exists claims survival at (m, r): try every forall move, answer from the table.
  bool exists_point(const ColouredGraph& m, int r) {
    if (r <= 0) return true;
    CanonicalFrame frame = CanonicalFrame::of(m, opts_);
    std::string memo = frame.key + "#" + std::to_string(r);
    if (auto it = seen_.find(memo); it != seen_.end()) return it->second;
    GamePosition p{m, true, r};
    bool ok = true;
    // In the last round only kill candidates need checking; every other
    // demand has an identity or white answer.
    auto moves = r == 1 ? kill_candidates(p, cert_.config, opts_.colour_symmetry)
                        : legal_forall_moves(p, s_, cert_.config, false, opts_.colour_symmetry);
    for (const auto& mv : moves) {
      if (auto z = identity_witness(m, mv)) {
        std::vector<int> face;
        if (!exists_point(demand_base(m, mv, &face), r - 1)) {
          ok = false;
          break;
        }
        continue;
      }
      ColouredGraph star = demand_graph(m, mv);
      auto found = exists_answer(cert_, star, r, opts_);
      if (!found) {
        ok = bad("no exists answer for a reached demand");
        break;
      }
      ColouredGraph answer = std::move(*found);
      if (!completes_demand(star, answer)) {
        ok = bad("stored exists answer does not complete the demand");
        break;
      }
      if (!exists_point(answer, r - 1)) {
        ok = false;
        break;
      }
    }
    seen_[memo] = ok;
    return ok;
  }

  const Certificate& cert_;
  const AtomStructure& s_;
  CanonOptions opts_;
  std::unordered_map<std::string, bool> seen_;
  std::string failure_;
};

}  // namespace detail

/// Replays the certificate's strategy against every opponent move.
inline ReplayResult replay_certificate(const Certificate& cert, const AtomStructure& s) {
  if (!cert.refutation.empty()) {
    ReplayResult r;
    r.failure = "certificate is a script refutation, not a strategy";
    return r;
  }
  return detail::Replayer(cert, s).run();
}

/// The winner follows the certificate, the opponent moves at random.
/// Returns the number of playouts whose outcome contradicts the claim.
inline std::size_t random_playouts(const Certificate& cert, const AtomStructure& s, std::size_t count,
                                   std::uint64_t seed) {
  if (cert.winner == Winner::Undecided || !cert.refutation.empty()) return count;
  const GameConfig& cfg = cert.config;
  const CanonOptions opts = detail::solver_options(s.signature(), cfg);
  std::mt19937_64 rng(seed);
  std::size_t contradictions = 0;
  auto openings = legal_forall_moves(initial_position(cfg), s, cfg, true);
  for (std::size_t t = 0; t < count; ++t) {
    GamePosition p = initial_position(cfg);
    ForallMove first = cert.winner == Winner::Forall ? *cert.opening : openings[rng() % openings.size()];
    p = advance(p, first, nullptr);
    Winner outcome = Winner::Exists;
    bool broken = false;
    while (p.rounds_left > 0 && !broken) {
      ForallMove mv;
      if (cert.winner == Winner::Forall) {
        CanonicalFrame f = CanonicalFrame::of(p.current, opts);
        auto it = cert.forall.find(f.key);
        if (it == cert.forall.end()) {
          broken = true;
          break;
        }
        mv = f.from_canonical(it->second.move);
      } else {
        auto moves = legal_forall_moves(p, s, cfg, true);
        if (moves.empty()) break;
        mv = moves[rng() % moves.size()];
      }
      std::optional<ExistsResponse> resp;
      if (cert.winner == Winner::Exists) {
        if (auto z = identity_witness(p.current, mv)) {
          resp = ExistsResponse{true, *z, {}};
        } else {
          ColouredGraph star = demand_graph(p.current, mv);
          if (auto a = detail::exists_answer(cert, star, p.rounds_left, opts)) resp = ExistsResponse{false, -1, *a};
        }
      } else {
        auto all = legal_exists_responses(p, mv);
        if (!all.empty()) resp = all[rng() % all.size()];
      }
      if (!resp) {
        outcome = Winner::Forall;
        break;
      }
      p = advance(p, mv, &*resp);
    }
    if (broken || outcome != cert.winner) ++contradictions;
  }
  return contradictions;
}

}  // namespace rainbow
