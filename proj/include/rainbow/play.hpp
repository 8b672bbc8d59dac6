#pragma once

// Terminal play: a human takes one side of G^k, the engine the other. The
// engine's forall follows a certificate if given, else the cone script, else
// its first useful move; its exists follows a certificate if given, else the
// identity, the white answer or the first valid completion. Every accepted
// move goes into a transcript that replay_transcript re-checks.

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rainbow/json_io.hpp"
#include "rainbow/script.hpp"

namespace rainbow {

enum class Side { Forall, Exists };

inline std::string_view to_string(Side s) { return s == Side::Forall ? "forall" : "exists"; }

struct TranscriptStep {
  Side side = Side::Forall;
  ForallMove move;         // forall steps
  ExistsResponse answer;   // exists steps
};

struct Transcript {
  int rounds = 0;
  Side human = Side::Exists;
  std::vector<TranscriptStep> steps;
  Winner outcome = Winner::Undecided;  // undecided when abandoned
};

// --- rendering --------------------------------------------------------------

inline std::string render(const ColouredGraph& g) {
  const Signature& sig = g.signature();
  std::ostringstream os;
  os << g.size() << " nodes\n";
  for (int u = 0; u < g.size(); ++u)
    for (int v = u + 1; v < g.size(); ++v)
      if (g.edge(u, v) != kNoColour) os << "  " << u << "-" << v << "  " << to_string(sig.colour(g.edge(u, v))) << "\n";
  std::size_t labelled = 0;
  bool all_top = true;
  for (std::size_t t = 0; t < g.tuple_count(); ++t)
    if (g.yellow_at(t) != kNoYellow) {
      ++labelled;
      all_top &= g.yellow_at(t) == sig.full_yellow();
    }
  if (labelled && all_top) {
    os << "  yellows: y_A on all " << labelled << " eligible tuples\n";
  } else {
    for (std::size_t t = 0; t < g.tuple_count(); ++t) {
      if (g.yellow_at(t) == kNoYellow) continue;
      os << "  (";
      auto tuple = g.tuple_at(t);
      for (std::size_t k = 0; k < tuple.size(); ++k) os << (k ? "," : "") << tuple[k];
      os << ") " << to_string(YellowColour{g.yellow_at(t)}, sig.spec().greens) << "\n";
    }
  }
  return os.str();
}

inline std::string render(const ForallMove& mv) {
  if (mv.opening) return "opening graph:\n" + render(mv.phi);
  const Signature& sig = mv.phi.signature();
  const int k = mv.phi.size() - 1;
  std::ostringstream os;
  os << "demand on face (";
  for (std::size_t a = 0; a < mv.face.size(); ++a) os << (a ? "," : "") << mv.face[a];
  os << "): new node joined by";
  for (int a = 0; a < k; ++a) os << " " << mv.face[a] << ":" << to_string(sig.colour(mv.phi.edge(a, k)));
  if (mv.reuse >= 0) os << ", replacing node " << mv.reuse;
  os << "\n";
  return os.str();
}

// --- engine -------------------------------------------------------------------

namespace detail {

inline ForallMove engine_forall(const GamePosition& p, const AtomStructure& s, const GameConfig& cfg,
                                const Certificate* cert) {
  if (cert && cert->winner == Winner::Forall) {
    if (!p.opened && cert->opening) return *cert->opening;
    if (p.opened) {
      CanonicalFrame f = CanonicalFrame::of(p.current, solver_options(s.signature(), cfg));
      auto it = cert->forall.find(f.key);
      if (it != cert->forall.end()) return f.from_canonical(it->second.move);
    }
  }
  try {
    return scripted_forall(p, s.signature());
  } catch (const ScriptError&) {
  }
  auto moves = useful_forall_moves(p, s, cfg);
  if (moves.empty()) moves = legal_forall_moves(p, s, cfg);
  if (moves.empty()) throw std::runtime_error("forall has no legal move");
  return moves.front();
}

inline std::optional<ExistsResponse> engine_exists(const GamePosition& p, const ForallMove& mv, const AtomStructure& s,
                                                   const GameConfig& cfg, const Certificate* cert) {
  auto ids = identity_nodes(p.current, mv);
  std::vector<int> face;
  if (!ids.empty()) return ExistsResponse{true, ids.front(), demand_base(p.current, mv, &face)};
  ColouredGraph star = demand_graph(p.current, mv);
  if (cert && cert->winner == Winner::Exists && cert->refutation.empty()) {
    if (auto g = exists_answer(*cert, star, p.rounds_left, solver_options(s.signature(), cfg)))
      return ExistsResponse{false, -1, *g};
  }
  if (auto w = white_answer(star)) return ExistsResponse{false, -1, *w};
  std::optional<ExistsResponse> any;
  for_each_completion(star, [&](const ColouredGraph& g) {
    any = ExistsResponse{false, -1, g};
    return true;
  });
  return any;
}

inline std::vector<std::string> words(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

inline std::optional<int> to_int(const std::string& w) {
  try {
    std::size_t used = 0;
    int v = std::stoi(w, &used);
    if (used == w.size()) return v;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

}  // namespace detail

// --- human input ------------------------------------------------------------

/// Parses and checks one human exists command against the demand. Returns the
/// response, or sets `why` to the reason for rejection.
inline std::optional<ExistsResponse> parse_exists_command(const std::string& line, const GamePosition& p,
                                                          const ForallMove& mv, std::string& why) {
  auto w = detail::words(line);
  const Signature& sig = p.current.signature();
  std::vector<int> face;
  ColouredGraph base = demand_base(p.current, mv, &face);
  if (w.size() == 2 && w[0] == "id") {
    auto z = detail::to_int(w[1]);
    if (!z) {
      why = "expected a node number";
      return std::nullopt;
    }
    auto ids = identity_nodes(p.current, mv);
    if (std::find(ids.begin(), ids.end(), *z) == ids.end()) {
      why = "node " + w[1] + " does not realise the demand";
      return std::nullopt;
    }
    return ExistsResponse{true, *z, base};
  }
  if (!w.empty() && w[0] == "label") {
    ColouredGraph g = demand_graph(p.current, mv);
    const int k = g.size() - 1;
    std::vector<int> open;
    for (int x = 0; x < k; ++x)
      if (g.edge(x, k) == kNoColour) open.push_back(x);
    if (w.size() != open.size() + 1) {
      why = "expected " + std::to_string(open.size()) + " colours, for the edges to the new node from nodes";
      for (int x : open) why += " " + std::to_string(x);
      return std::nullopt;
    }
    for (std::size_t e = 0; e < open.size(); ++e) {
      std::optional<ColourId> c;
      try {
        c = sig.find(parse_edge_colour(w[e + 1]));
      } catch (const SpecError& err) {
        why = err.what();
        return std::nullopt;
      }
      if (!c) {
        why = "colour " + w[e + 1] + " is not in the signature";
        return std::nullopt;
      }
      g.set_edge(open[e], k, *c);
    }
    fill_yellows(g, sig.full_yellow());
    ValidationReport rep = validate(g);
    if (!rep.ok()) {
      const Violation& v = rep.violations.front();
      why = "rejected: " + v.message + " at nodes";
      for (int x : v.nodes) why += " " + std::to_string(x);
      return std::nullopt;
    }
    return ExistsResponse{false, -1, g};
  }
  why = "commands: id Z | label C1 C2 ... | pick N | moves | show | quit";
  return std::nullopt;
}

/// Parses and checks one human forall command.
inline std::optional<ForallMove> parse_forall_command(const std::string& line, const GamePosition& p,
                                                      const AtomStructure& s, std::string& why) {
  auto w = detail::words(line);
  const Signature& sig = s.signature();
  const int n = sig.n();
  if (w.size() == 1 && w[0] == "script") {
    try {
      return scripted_forall(p, sig);
    } catch (const ScriptError& e) {
      why = e.what();
      return std::nullopt;
    }
  }
  if (!p.opened) {
    if (w.size() == 2 && w[0] == "open") {
      auto a = detail::to_int(w[1]);
      if (!a || *a < 0 || static_cast<std::size_t>(*a) >= s.size()) {
        why = "expected an atom id below " + std::to_string(s.size());
        return std::nullopt;
      }
      ForallMove mv;
      mv.opening = true;
      mv.phi = s.atom(static_cast<AtomId>(*a)).graph;
      return mv;
    }
    why = "commands: open ATOM | script | quit";
    return std::nullopt;
  }
  // demand f_0 .. f_{n-2} : c_0 .. c_{n-2}
  if (w.size() == 2 * static_cast<std::size_t>(n - 1) + 2 && w[0] == "demand" && w[n] == ":") {
    ForallMove mv;
    for (int a = 0; a < n - 1; ++a) {
      auto v = detail::to_int(w[1 + a]);
      if (!v || *v < 0 || *v >= p.current.size() ||
          std::find(mv.face.begin(), mv.face.end(), *v) != mv.face.end()) {
        why = "face nodes must be distinct nodes of the current graph";
        return std::nullopt;
      }
      mv.face.push_back(*v);
    }
    mv.phi = p.current.induced(mv.face);
    mv.phi.add_node();
    for (int a = 0; a < n - 1; ++a) {
      std::optional<ColourId> c;
      try {
        c = sig.find(parse_edge_colour(w[n + 1 + a]));
      } catch (const SpecError& err) {
        why = err.what();
        return std::nullopt;
      }
      if (!c) {
        why = "colour " + w[n + 1 + a] + " is not in the signature";
        return std::nullopt;
      }
      mv.phi.set_edge(a, n - 1, *c);
    }
    fill_yellows(mv.phi, sig.full_yellow());
    ValidationReport rep = validate(mv.phi);
    if (!rep.ok()) {
      why = "rejected: " + rep.violations.front().message;
      return std::nullopt;
    }
    return mv;
  }
  why = "commands: demand F0 .. : C0 .. (" + std::to_string(n - 1) + " face nodes, " + std::to_string(n - 1) +
        " colours) | script | show | quit";
  return std::nullopt;
}

// --- the session --------------------------------------------------------------

inline Transcript play_interactive(const AtomStructure& s, int rounds, Side human, std::istream& in,
                                   std::ostream& out, const Certificate* cert = nullptr) {
  GameConfig cfg;
  cfg.rounds = rounds;
  Transcript tr;
  tr.rounds = rounds;
  tr.human = human;
  GamePosition p = initial_position(cfg);
  std::string line;
  auto prompt = [&](const std::string& who) -> bool {
    out << who << "> " << std::flush;
    return static_cast<bool>(std::getline(in, line));
  };
  auto quit = [&]() {
    out << "game abandoned\n";
    return tr;
  };

  bool first = true;
  while (first || p.rounds_left > 0) {
    const int round = rounds - p.rounds_left + 1;
    out << "round " << round << " of " << rounds << "\n";
    ForallMove mv;
    if (human == Side::Forall) {
      if (p.opened) out << render(p.current);
      while (true) {
        if (!prompt("forall")) return quit();
        auto w = detail::words(line);
        if (w.empty()) continue;
        if (w[0] == "quit") return quit();
        if (w[0] == "show") {
          if (p.opened) out << render(p.current);
          continue;
        }
        std::string why;
        if (auto m = parse_forall_command(line, p, s, why)) {
          mv = *m;
          break;
        }
        out << why << "\n";
      }
    } else {
      mv = detail::engine_forall(p, s, cfg, cert);
    }
    out << "forall plays " << render(mv);
    tr.steps.push_back({Side::Forall, mv, {}});
    if (first) {
      p = advance(p, mv, nullptr);
      first = false;
      continue;
    }

    std::optional<ExistsResponse> resp;
    if (human == Side::Exists) {
      auto legal = legal_exists_responses(p, mv);
      if (legal.empty()) {
        out << "exists has no legal response\n";
        tr.outcome = Winner::Forall;
        out << "forall wins\n";
        return tr;
      }
      ColouredGraph star = demand_graph(p.current, mv);
      std::vector<int> open;
      for (int x = 0; x + 1 < star.size(); ++x)
        if (star.edge(x, star.size() - 1) == kNoColour) open.push_back(x);
      out << "new node " << star.size() - 1 << "; label its edges from";
      for (int x : open) out << " " << x;
      out << " (" << legal.size() << " legal responses)\n";
      while (!resp) {
        if (!prompt("exists")) return quit();
        auto w = detail::words(line);
        if (w.empty()) continue;
        if (w[0] == "quit") return quit();
        if (w[0] == "show") {
          out << render(p.current) << render(mv);
          continue;
        }
        if (w[0] == "moves") {
          for (std::size_t i = 0; i < legal.size() && i < 20; ++i) {
            out << "  " << i << ": ";
            if (legal[i].identity) {
              out << "id " << legal[i].node << "\n";
            } else {
              out << "label";
              for (int x : open) out << " " << to_string(star.signature().colour(legal[i].graph.edge(x, star.size() - 1)));
              out << "\n";
            }
          }
          if (legal.size() > 20) out << "  ... " << legal.size() - 20 << " more\n";
          continue;
        }
        if (w[0] == "pick" && w.size() == 2) {
          auto i = detail::to_int(w[1]);
          if (i && *i >= 0 && static_cast<std::size_t>(*i) < legal.size()) {
            resp = legal[*i];
            break;
          }
          out << "no such response\n";
          continue;
        }
        std::string why;
        resp = parse_exists_command(line, p, mv, why);
        if (!resp) out << why << "\n";
      }
    } else {
      resp = detail::engine_exists(p, mv, s, cfg, cert);
      if (!resp) {
        out << "exists has no legal response\nforall wins\n";
        tr.outcome = Winner::Forall;
        return tr;
      }
    }
    out << "exists " << (resp->identity ? "points at node " + std::to_string(resp->node) + "\n" : "answers\n");
    tr.steps.push_back({Side::Exists, {}, *resp});
    p = advance(p, mv, &*resp);
  }
  tr.outcome = Winner::Exists;
  out << "exists survives all " << rounds << " rounds\nexists wins\n";
  return tr;
}

// --- transcripts --------------------------------------------------------------

inline json to_json(const Transcript& t) {
  json steps = json::array();
  for (const auto& st : t.steps) {
    if (st.side == Side::Forall) {
      steps.push_back(json{{"side", "forall"}, {"move", to_json(st.move)}});
    } else {
      json a{{"side", "exists"}, {"identity", st.answer.identity}};
      if (st.answer.identity)
        a["node"] = st.answer.node;
      else
        a["graph"] = to_json(st.answer.graph);
      steps.push_back(a);
    }
  }
  return json{{"rounds", t.rounds}, {"human", to_string(t.human)}, {"steps", steps}, {"outcome", to_string(t.outcome)}};
}

inline Transcript transcript_from_json(const json& j, const Signature& sig) {
  Transcript t;
  t.rounds = detail::field<int>(j, "rounds");
  t.human = detail::field<std::string>(j, "human") == "forall" ? Side::Forall : Side::Exists;
  t.outcome = winner_from_string(detail::field<std::string>(j, "outcome"));
  for (const auto& st : detail::sub(j, "steps")) {
    TranscriptStep step;
    std::string side = detail::field<std::string>(st, "side");
    if (side == "forall") {
      step.side = Side::Forall;
      step.move = move_from_json(detail::sub(st, "move"), sig);
    } else if (side == "exists") {
      step.side = Side::Exists;
      step.answer.identity = detail::field<bool>(st, "identity");
      if (step.answer.identity)
        step.answer.node = detail::field<int>(st, "node");
      else
        step.answer.graph = graph_from_json(detail::sub(st, "graph"), sig);
    } else {
      throw InputError("step side must be forall or exists");
    }
    t.steps.push_back(std::move(step));
  }
  return t;
}

struct TranscriptCheck {
  bool ok = false;
  Winner outcome = Winner::Undecided;
  std::string failure;
};

/// Re-plays every step, checking legality, and recomputes the outcome.
inline TranscriptCheck replay_transcript(const AtomStructure& s, const Transcript& t) {
  TranscriptCheck res;
  GameConfig cfg;
  cfg.rounds = t.rounds;
  GamePosition p = initial_position(cfg);
  auto fail = [&](std::size_t i, const std::string& why) {
    res.failure = "step " + std::to_string(i + 1) + ": " + why;
    return res;
  };
  std::size_t i = 0;
  while (i < t.steps.size()) {
    const auto& st = t.steps[i];
    if (st.side != Side::Forall) return fail(i, "expected a forall move");
    const ForallMove& mv = st.move;
    if (!p.opened) {
      if (!mv.opening || !is_valid(mv.phi) || mv.phi.size() < 1 || mv.phi.size() > s.n())
        return fail(i, "opening must be a valid graph on at most n nodes");
      p = advance(p, mv, nullptr);
      ++i;
      continue;
    }
    if (p.rounds_left <= 0) return fail(i, "move after the last round");
    if (mv.opening || !is_valid(mv.phi) || !detail::same_on_face(p.current, mv))
      return fail(i, "demand does not agree with the current graph on its face");
    ++i;
    if (i == t.steps.size()) {
      bool stuck = identity_nodes(p.current, mv).empty() && !has_completion(demand_graph(p.current, mv));
      res.outcome = stuck ? Winner::Forall : Winner::Undecided;
      break;
    }
    const auto& an = t.steps[i];
    if (an.side != Side::Exists) return fail(i, "expected an exists answer");
    if (an.answer.identity) {
      auto ids = identity_nodes(p.current, mv);
      if (std::find(ids.begin(), ids.end(), an.answer.node) == ids.end())
        return fail(i, "node does not realise the demand");
      std::vector<int> face;
      ExistsResponse r{true, an.answer.node, demand_base(p.current, mv, &face)};
      p = advance(p, mv, &r);
    } else {
      if (!completes_demand(demand_graph(p.current, mv), an.answer.graph))
        return fail(i, "answer is not a valid completion of the demand");
      p = advance(p, mv, &an.answer);
    }
    ++i;
  }
  if (p.opened && p.rounds_left == 0 && i == t.steps.size() && res.outcome == Winner::Undecided)
    res.outcome = Winner::Exists;
  if (res.outcome != t.outcome) {
    res.failure = "recorded outcome " + std::string(to_string(t.outcome)) + " but replay gives " +
                  std::string(to_string(res.outcome));
    return res;
  }
  res.ok = true;
  return res;
}

}  // namespace rainbow
