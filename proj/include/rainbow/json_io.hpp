#pragma once

// JSON forms of specs, graphs, atom structures, networks, certificates and
// check reports. Every report carries the spec hash, the seed and the format
// version, and nothing time-dependent, so reruns are byte-identical.

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rainbow/complex_algebra.hpp"
#include "rainbow/networks.hpp"
#include "rainbow/solver.hpp"

namespace rainbow {

using json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1";

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("field '") + key + "': " + e.what());
  }
}

inline const json& sub(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}
}  // namespace detail

// --- spec -----------------------------------------------------------------

inline json to_json(const RainbowSpec& s) {
  return json{{"dimension", s.dimension},
              {"greens", s.greens},
              {"reds", s.reds},
              {"red_copies", s.red_copies},
              {"yellows", s.yellows == YellowPalette::Top ? "top" : "all"}};
}

inline RainbowSpec spec_from_json(const json& j) {
  RainbowSpec s;
  s.dimension = detail::field<int>(j, "dimension");
  s.greens = detail::field<int>(j, "greens");
  s.reds = detail::field<int>(j, "reds");
  s.red_copies = j.contains("red_copies") ? detail::field<int>(j, "red_copies") : 1;
  std::string y = j.contains("yellows") ? detail::field<std::string>(j, "yellows") : "top";
  if (y == "top")
    s.yellows = YellowPalette::Top;
  else if (y == "all")
    s.yellows = YellowPalette::All;
  else
    throw InputError("yellows must be \"top\" or \"all\"");
  try {
    s.validate();
  } catch (const SpecError& e) {
    throw InputError(e.what());
  }
  return s;
}

/// FNV-1a over the compact dump of the spec.
inline std::string spec_hash(const RainbowSpec& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : to_json(s).dump()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return detail::hex64(h);
}

// --- graphs ---------------------------------------------------------------

/// {"nodes": m, "edges": [[u, v, "g1"], ...] for u < v, "yellows": [[[tuple], [tints]], ...]}
inline json to_json(const ColouredGraph& g) {
  const Signature& sig = g.signature();
  json edges = json::array();
  for (int u = 0; u < g.size(); ++u)
    for (int v = u + 1; v < g.size(); ++v)
      if (g.edge(u, v) != kNoColour) edges.push_back(json::array({u, v, to_string(sig.colour(g.edge(u, v)))}));
  json yellows = json::array();
  for (std::size_t t = 0; t < g.tuple_count(); ++t) {
    std::uint32_t y = g.yellow_at(t);
    if (y == kNoYellow) continue;
    json tints = json::array();
    for (int a = 0; a < sig.spec().greens; ++a)
      if ((y >> a) & 1u) tints.push_back(a);
    yellows.push_back(json::array({g.tuple_at(t), tints}));
  }
  return json{{"nodes", g.size()}, {"edges", edges}, {"yellows", yellows}};
}

inline ColouredGraph graph_from_json(const json& j, const Signature& sig) {
  int m = detail::field<int>(j, "nodes");
  if (m < 0 || m > 64) throw InputError("node count out of range");
  ColouredGraph g(sig, m);
  auto node = [&](const json& x) {
    int v = x.get<int>();
    if (v < 0 || v >= m) throw InputError("node " + std::to_string(v) + " out of range");
    return v;
  };
  try {
    for (const auto& e : detail::sub(j, "edges")) {
      if (!e.is_array() || e.size() != 3) throw InputError("edge must be [u, v, colour]");
      int u = node(e[0]), v = node(e[1]);
      if (u == v) throw InputError("loop edge");
      auto c = sig.find(parse_edge_colour(e[2].get<std::string>()));
      if (!c) throw InputError("colour " + e[2].get<std::string>() + " is outside the signature");
      g.set_edge(u, v, *c);
    }
    if (j.contains("yellows"))
      for (const auto& y : j.at("yellows")) {
        if (!y.is_array() || y.size() != 2) throw InputError("yellow must be [tuple, tints]");
        std::vector<int> t;
        for (const auto& x : y[0]) t.push_back(node(x));
        if (static_cast<int>(t.size()) != g.arity()) throw InputError("yellow tuple has the wrong length");
        std::uint32_t mask = 0;
        for (const auto& a : y[1]) {
          int tint = a.get<int>();
          if (tint < 0 || tint >= sig.spec().greens) throw InputError("yellow tint out of range");
          mask |= 1u << tint;
        }
        g.set_yellow(t, mask);
      }
  } catch (const json::exception& e) {
    throw InputError(e.what());
  } catch (const SpecError& e) {
    throw InputError(e.what());
  }
  return g;
}

// --- atom structures and networks ------------------------------------------

inline json summary_json(const AtomStructure& s) {
  const Signature& sig = s.signature();
  int greens = 0, whites = 0, reds = 0;
  for (const auto& c : sig.colours()) {
    if (c.is_green()) ++greens;
    if (c.is_white()) ++whites;
    if (c.is_red()) ++reds;
  }
  json classes = json::array();
  for (int i = 0; i < s.n(); ++i) classes.push_back(s.t_class_count(i));
  return json{{"atoms", s.size()},
              {"edge_colours", sig.colour_count()},
              {"greens", greens},
              {"whites", whites},
              {"reds", reds},
              {"yellows", sig.palette().size()},
              {"t_classes", classes}};
}

inline json to_json(const AtomStructure& s, bool with_atoms) {
  json j{{"spec", to_json(s.signature().spec())}, {"summary", summary_json(s)}};
  if (with_atoms) {
    json atoms = json::array();
    for (const Atom& a : s.atoms()) atoms.push_back(json{{"assignment", a.assignment}, {"graph", to_json(a.graph)}});
    j["atoms"] = atoms;
  }
  return j;
}

inline json to_json(const Network& net) {
  std::vector<AtomId> labels(net.tuple_count());
  for (std::size_t t = 0; t < labels.size(); ++t) labels[t] = net.at_index(t);
  return json{{"n", net.n()}, {"nodes", net.node_ids()}, {"labels", labels}};
}

inline Network network_from_json(const json& j) {
  Network net(detail::field<int>(j, "n"), detail::field<std::vector<int>>(j, "nodes"));
  auto labels = detail::field<std::vector<AtomId>>(j, "labels");
  if (labels.size() != net.tuple_count()) throw InputError("network needs one label per tuple");
  for (std::size_t t = 0; t < labels.size(); ++t) net.set_index(t, labels[t]);
  return net;
}

// --- moves and certificates -------------------------------------------------

inline json to_json(const ForallMove& mv) {
  json j{{"opening", mv.opening}, {"phi", to_json(mv.phi)}};
  if (!mv.opening) j["face"] = mv.face;
  if (mv.reuse >= 0) j["reuse"] = mv.reuse;
  return j;
}

inline ForallMove move_from_json(const json& j, const Signature& sig) {
  ForallMove mv;
  mv.opening = j.contains("opening") && detail::field<bool>(j, "opening");
  mv.phi = graph_from_json(detail::sub(j, "phi"), sig);
  if (j.contains("face")) mv.face = detail::field<std::vector<int>>(j, "face");
  if (j.contains("reuse")) mv.reuse = detail::field<int>(j, "reuse");
  return mv;
}

inline json to_json(const SolveStats& s) {
  return json{{"forall_points", s.forall_points},
              {"exists_points", s.exists_points},
              {"memo_hits", s.memo_hits},
              {"completions_tried", s.completions_tried}};
}

namespace detail {
// Table keys are canonical codes; they go out as int arrays.
inline json key_to_json(const std::string& key) {
  std::vector<std::int32_t> code(key.size() / 4);
  std::memcpy(code.data(), key.data(), code.size() * 4);
  return code;
}
inline std::string key_from_json(const json& j) {
  auto code = j.get<std::vector<std::int32_t>>();
  return code_key(code);
}
template <class Map>
std::vector<const typename Map::value_type*> sorted_entries(const Map& m) {
  std::vector<const typename Map::value_type*> out;
  for (const auto& e : m) out.push_back(&e);
  std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return a->first < b->first; });
  return out;
}
}  // namespace detail

/// {winner, tree, stats}. The tree holds forall's opening, his move per
/// canonical position and exists' stored answers per canonical demand.
inline json to_json(const Certificate& c) {
  json tree{{"rounds", c.config.rounds}, {"canonical", c.config.canonical}, {"colour_symmetry", c.colour_symmetry}};
  if (c.config.node_budget) tree["node_budget"] = *c.config.node_budget;
  if (c.config.reuse) tree["reuse"] = true;
  if (c.opening) tree["opening"] = to_json(*c.opening);
  json fa = json::array();
  for (auto* e : detail::sorted_entries(c.forall))
    fa.push_back(json{{"position", detail::key_to_json(e->first)}, {"rounds", e->second.rounds}, {"move", to_json(e->second.move)}});
  json ex = json::array();
  for (auto* e : detail::sorted_entries(c.exists))
    ex.push_back(json{{"demand", detail::key_to_json(e->first)}, {"rounds", e->second.rounds}, {"answer", to_json(e->second.graph)}});
  tree["forall"] = fa;
  tree["exists"] = ex;
  if (!c.refutation.empty()) {
    json play = json::array();
    for (const auto& g : c.refutation) play.push_back(to_json(g));
    tree["refutation"] = play;
  }
  json j{{"winner", to_string(c.winner)}, {"tree", tree}, {"stats", to_json(c.stats)}};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline Winner winner_from_string(const std::string& s) {
  if (s == "forall") return Winner::Forall;
  if (s == "exists") return Winner::Exists;
  if (s == "undecided") return Winner::Undecided;
  throw InputError("unknown winner '" + s + "'");
}

inline Certificate certificate_from_json(const json& j, const Signature& sig) {
  Certificate c;
  c.winner = winner_from_string(detail::field<std::string>(j, "winner"));
  const json& tree = detail::sub(j, "tree");
  c.config.rounds = detail::field<int>(tree, "rounds");
  c.config.canonical = !tree.contains("canonical") || detail::field<bool>(tree, "canonical");
  if (tree.contains("node_budget")) c.config.node_budget = detail::field<int>(tree, "node_budget");
  c.config.reuse = tree.contains("reuse") && detail::field<bool>(tree, "reuse");
  c.colour_symmetry = tree.contains("colour_symmetry") && detail::field<bool>(tree, "colour_symmetry");
  if (tree.contains("opening")) c.opening = move_from_json(tree.at("opening"), sig);
  try {
    for (const auto& e : detail::sub(tree, "forall"))
      c.forall[detail::key_from_json(e.at("position"))] = {e.at("rounds").get<int>(), move_from_json(e.at("move"), sig)};
    for (const auto& e : detail::sub(tree, "exists"))
      c.exists[detail::key_from_json(e.at("demand"))] = {e.at("rounds").get<int>(), graph_from_json(e.at("answer"), sig)};
  } catch (const json::exception& e) {
    throw InputError(e.what());
  }
  if (tree.contains("refutation"))
    for (const auto& g : tree.at("refutation")) c.refutation.push_back(graph_from_json(g, sig));
  if (j.contains("stats")) {
    const json& s = j.at("stats");
    c.stats.forall_points = s.value("forall_points", std::size_t{0});
    c.stats.exists_points = s.value("exists_points", std::size_t{0});
    c.stats.memo_hits = s.value("memo_hits", std::size_t{0});
    c.stats.completions_tried = s.value("completions_tried", std::size_t{0});
  }
  if (j.contains("note")) c.note = j.at("note").get<std::string>();
  return c;
}

// --- reports --------------------------------------------------------------

inline json to_json(const CheckResult& r) {
  return json{{"name", r.name}, {"pass", r.pass}, {"failures", r.failures}, {"witnesses", r.witnesses}};
}

inline json to_json(const CheckReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return json{{"pass", r.pass()}, {"samples", r.samples}, {"checks", checks}};
}

/// Report envelope: what ran, on which spec, with which seed.
inline json report_json(const std::string& command, const RainbowSpec& spec, std::uint64_t seed, json body) {
  return json{{"version", kFormatVersion},
              {"command", command},
              {"spec", to_json(spec)},
              {"spec_hash", spec_hash(spec)},
              {"seed", seed},
              {"result", std::move(body)}};
}

}  // namespace rainbow
