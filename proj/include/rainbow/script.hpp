#pragma once

// Forall's cone-bombarding strategy on the rainbow algebra: open with a
// 0-cone on the base (0, ..., n-2), then keep demanding cones of fresh tints
// on that base. Exists must join the apexes by reds, and the red indices
// run out.

#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "rainbow/solver.hpp"

namespace rainbow {

class ScriptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The opening graph: nodes 0..n-1, w_0 between base nodes, g_i from base
/// node i to the apex n-1, g_0^0 from node 0, y_A on every ordering of the base.
inline ColouredGraph script_opening(const Signature& sig) {
  const int n = sig.n();
  ColouredGraph g(sig, n);
  for (int i = 0; i < n - 1; ++i)
    for (int j = i + 1; j < n - 1; ++j) g.set_edge(i, j, EdgeColour::white_tint(0));
  g.set_edge(0, n - 1, EdgeColour::green_super(0));
  for (int i = 1; i < n - 1; ++i) g.set_edge(i, n - 1, EdgeColour::green_tint(i));
  fill_yellows(g, sig.full_yellow());
  return g;
}

/// The demand of an alpha-cone on the face (0, ..., n-2) of g.
inline ForallMove cone_demand(const ColouredGraph& g, int tint) {
  const Signature& sig = g.signature();
  const int n = sig.n();
  std::vector<int> face(n - 1);
  std::iota(face.begin(), face.end(), 0);
  ForallMove mv;
  mv.face = face;
  mv.phi = g.induced(face);
  mv.phi.add_node();
  mv.phi.set_edge(0, n - 1, EdgeColour::green_super(tint));
  for (int i = 1; i < n - 1; ++i) mv.phi.set_edge(i, n - 1, EdgeColour::green_tint(i));
  fill_yellows(mv.phi, sig.full_yellow());
  return mv;
}

/// Forall's scripted move. Before the opening: the 0-cone. Afterwards: a
/// cone on the base (0, ..., n-2) with the least tint not yet used there;
/// once every tint is used the tints repeat.
inline ForallMove scripted_forall(const GamePosition& p, const Signature& sig) {
  if (!p.opened) {
    ForallMove mv;
    mv.opening = true;
    mv.phi = script_opening(sig);
    return mv;
  }
  const ColouredGraph& g = p.current;
  const int n = sig.n();
  if (g.size() < n) throw ScriptError("position has no scripted base");
  std::vector<int> base(n - 1);
  std::iota(base.begin(), base.end(), 0);
  if (!g.yellow_eligible(base) || g.yellow(base) != sig.full_yellow())
    throw ScriptError("nodes 0..n-2 do not form the scripted base");
  std::set<int> used;
  for (const Cone& c : find_cones(g))
    if (c.base == base) used.insert(c.tint);
  if (used.empty()) throw ScriptError("no cone on the scripted base");
  int tint = 0;
  while (tint < sig.spec().greens && used.count(tint)) ++tint;
  if (tint == sig.spec().greens) tint = static_cast<int>(used.size()) % sig.spec().greens;
  ForallMove mv = cone_demand(g, tint);
  if (!is_valid(mv.phi)) throw ScriptError("scripted demand is not a valid graph");
  return mv;
}

namespace detail {

class ScriptVerifier {
 public:
  ScriptVerifier(const AtomStructure& s, int rounds)
      : s_(s), sig_(s.signature()), rounds_(rounds), opts_(solver_options(sig_, GameConfig{})) {}

  Certificate run() {
    Certificate cert;
    cert.config.rounds = rounds_;
    cert.colour_symmetry = opts_.colour_symmetry;
    GamePosition root = initial_position(cert.config);
    ForallMove opening = scripted_forall(root, sig_);
    cert.opening = opening;
    std::vector<ColouredGraph> play{opening.phi};
    bool all_won = rounds_ > 1 && explore(opening.phi, rounds_ - 1, play);
    cert.stats = stats_;
    if (all_won) {
      cert.winner = Winner::Forall;
      cert.forall = std::move(table_);
    } else {
      cert.winner = Winner::Exists;
      cert.note = "script refuted: exists survives " + std::to_string(rounds_) + " rounds";
      cert.refutation = refutation_;
      if (cert.refutation.empty()) cert.refutation = {opening.phi};
    }
    return cert;
  }

 private:
  bool explore(const ColouredGraph& m, int r, std::vector<ColouredGraph>& play) {
    if (r <= 0) {
      refutation_ = play;
      return false;
    }
    std::string memo = code_key(raw_code(m)) + "#" + std::to_string(r);
    if (won_.count(memo)) {
      ++stats_.memo_hits;
      return true;
    }
    ++stats_.forall_points;
    GamePosition p{m, true, r};
    ForallMove mv = scripted_forall(p, sig_);
    auto responses = legal_exists_responses(p, mv);
    stats_.exists_points += 1;
    stats_.completions_tried += responses.size();
    for (const auto& resp : responses) {
      GamePosition q = advance(p, mv, &resp);
      play.push_back(q.current);
      bool ok = explore(q.current, r - 1, play);
      play.pop_back();
      if (!ok) return false;
    }
    CanonicalFrame frame = CanonicalFrame::of(m, opts_);
    auto& e = table_[frame.key];
    if (e.rounds == 0 || r < e.rounds) e = {r, frame.to_canonical(mv)};
    won_.insert(memo);
    return true;
  }

  const AtomStructure& s_;
  const Signature& sig_;
  int rounds_;
  CanonOptions opts_;
  SolveStats stats_;
  std::unordered_map<std::string, ForallEntry> table_;
  std::unordered_set<std::string> won_;
  std::vector<ColouredGraph> refutation_;
};

}  // namespace detail

/// Plays the script against every exists response for `rounds` rounds (the
/// opening included). A forall certificate means every branch ended with
/// exists unable to answer; otherwise the certificate carries a surviving play.
inline Certificate verify_scripted(const AtomStructure& s, int rounds) {
  return detail::ScriptVerifier(s, rounds).run();
}

/// Checks the surviving play stored in a refuted script certificate: it
/// starts with the scripted opening, and every later graph is a legal exists
/// answer to the scripted demand on the graph before it, for all the rounds.
inline ReplayResult check_refutation(const Certificate& cert, const AtomStructure& s) {
  ReplayResult res;
  const Signature& sig = s.signature();
  const auto& play = cert.refutation;
  if (cert.winner != Winner::Exists || play.empty()) {
    res.failure = "certificate carries no refutation";
    return res;
  }
  if (static_cast<int>(play.size()) != cert.config.rounds) {
    res.failure = "surviving play has " + std::to_string(play.size()) + " graphs for " +
                  std::to_string(cert.config.rounds) + " rounds";
    return res;
  }
  if (!(play[0] == script_opening(sig))) {
    res.failure = "play does not start with the scripted opening";
    return res;
  }
  GamePosition p{play[0], true, cert.config.rounds - 1};
  for (std::size_t i = 1; i < play.size(); ++i) {
    ++res.positions;
    ForallMove mv;
    try {
      mv = scripted_forall(p, sig);
    } catch (const ScriptError& e) {
      res.failure = std::string("round ") + std::to_string(i + 1) + ": " + e.what();
      return res;
    }
    bool legal = false;
    for (const auto& r : legal_exists_responses(p, mv))
      if (advance(p, mv, &r).current == play[i]) {
        legal = true;
        break;
      }
    if (!legal) {
      res.failure = "round " + std::to_string(i + 1) + ": graph is not a legal answer to the script";
      return res;
    }
    p = GamePosition{play[i], true, p.rounds_left - 1};
  }
  res.ok = true;
  return res;
}

/// Least k for which the script wins G^k, searching k = 1..max_rounds.
inline std::optional<int> script_minimal_rounds(const AtomStructure& s, int max_rounds) {
  for (int k = 1; k <= max_rounds; ++k)
    if (verify_scripted(s, k).winner == Winner::Forall) return k;
  return std::nullopt;
}

}  // namespace rainbow
