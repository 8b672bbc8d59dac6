#pragma once

// Graphviz rendering of coloured graphs. Yellow labels go into the graph
// caption, one line per labelled tuple.

#include <sstream>
#include <string>

#include "rainbow/coloured_graph.hpp"

namespace rainbow {

inline std::string to_dot(const ColouredGraph& g, const std::string& name = "M") {
  const Signature& sig = g.signature();
  std::ostringstream os;
  os << "graph " << name << " {\n  node [shape=circle];\n";
  for (int v = 0; v < g.size(); ++v) os << "  " << v << ";\n";
  for (int u = 0; u < g.size(); ++u)
    for (int v = u + 1; v < g.size(); ++v) {
      ColourId c = g.edge(u, v);
      if (c == kNoColour) continue;
      const char* ink = sig.is_green(c) ? "darkgreen" : sig.is_red(c) ? "red" : "gray50";
      os << "  " << u << " -- " << v << " [label=\"" << to_string(sig.colour(c)) << "\", color=" << ink
         << ", fontcolor=" << ink << "];\n";
    }
  std::string caption;
  for (std::size_t t = 0; t < g.tuple_count(); ++t) {
    std::uint32_t y = g.yellow_at(t);
    if (y == kNoYellow) continue;
    caption += "(";
    auto tuple = g.tuple_at(t);
    for (std::size_t k = 0; k < tuple.size(); ++k) caption += (k ? "," : "") + std::to_string(tuple[k]);
    caption += ") " + to_string(YellowColour{y}, sig.spec().greens) + "\\l";
  }
  if (!caption.empty()) os << "  label=\"" << caption << "\";\n  labeljust=l;\n";
  os << "}\n";
  return os.str();
}

}  // namespace rainbow
