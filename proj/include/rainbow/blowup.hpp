#pragma once

// Splitting every red into N copies and lifting the unsplit algebra into the
// complex algebra of the split atom structure, atom a going to the join of
// all atoms that erase to a.

#include <stdexcept>
#include <string>
#include <vector>

#include "rainbow/complex_algebra.hpp"

namespace rainbow {

class BlowupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline RainbowSpec split_spec(const RainbowSpec& spec, int copies) {
  if (copies < 1) throw SpecError("red copies must be at least 1");
  RainbowSpec out = spec;
  out.red_copies = copies;
  out.validate();
  return out;
}

/// Split colour id -> base colour id, dropping copy superscripts.
inline std::vector<ColourId> erasure_map(const Signature& split, const Signature& base) {
  std::vector<ColourId> map(split.colour_count());
  for (ColourId c = 0; c < split.colour_count(); ++c) {
    auto id = base.find(split.erase(c));
    if (!id) throw BlowupError("colour " + to_string(split.colour(c)) + " erases outside the base signature");
    map[c] = *id;
  }
  return map;
}

inline Atom erase_copies(const Atom& a, const Signature& base, const std::vector<ColourId>& map) {
  return Atom{a.assignment, a.graph.transferred(base, map)};
}

struct SplitMap {
  std::vector<std::vector<AtomId>> copies;  // per base atom, ascending
  std::vector<AtomId> original;             // per split atom
};

inline SplitMap build_split_map(const AtomStructure& base, const AtomStructure& split) {
  if (!base.has_atoms() || !split.has_atoms()) throw BlowupError("both structures must be enumerated");
  const RainbowSpec& bs = base.signature().spec();
  const RainbowSpec& ss = split.signature().spec();
  if (bs.dimension != ss.dimension || bs.greens != ss.greens || bs.reds != ss.reds)
    throw BlowupError("split structure does not come from the base spec");
  auto map = erasure_map(split.signature(), base.signature());
  SplitMap out;
  out.copies.assign(base.size(), {});
  out.original.assign(split.size(), 0);
  for (AtomId a = 0; a < split.size(); ++a) {
    auto orig = base.find(erase_copies(split.atom(a), base.signature(), map));
    if (!orig) throw BlowupError("split atom " + std::to_string(a) + " erases to no base atom");
    out.original[a] = *orig;
    out.copies[*orig].push_back(a);
  }
  return out;
}

inline AtomSet lift_set(const SplitMap& m, AtomId base_atom, std::size_t split_size) {
  AtomSet out(split_size);
  for (AtomId a : m.copies.at(base_atom)) out.set(a);
  return out;
}

inline AlgebraElement lift(const ComplexAlgebra& split, const SplitMap& m, AtomId base_atom) {
  return split.element(lift_set(m, base_atom, split.structure().size()));
}

inline bool has_red(const ColouredGraph& g) {
  for (int u = 0; u < g.size(); ++u)
    for (int v = u + 1; v < g.size(); ++v)
      if (g.edge(u, v) != kNoColour && g.signature().is_red(g.edge(u, v))) return true;
  return false;
}

/// For every split atom a' over original a and every red-free split atom b:
/// a' T_i b in the split structure iff a T_i b in the base.
///
/// Grouped by b's (split class, base class) pair: the iff holds for b exactly
/// when its split class consists of atoms over its base class and contains
/// every copy of every member of that base class.
inline CheckResult check_cylindric_transfer(const AtomStructure& base, const AtomStructure& split,
                                            const SplitMap& m) {
  CheckResult res{"cylindric transfer"};
  for (int i = 0; i < split.n(); ++i) {
    std::vector<std::size_t> copies_in_class(base.t_class_count(i), 0);
    for (AtomId a = 0; a < base.size(); ++a) copies_in_class[base.t_class(i, a)] += m.copies[a].size();
    std::vector<char> done(split.t_class_count(i), 0);
    for (AtomId b = 0; b < split.size(); ++b) {
      if (has_red(split.atom(b).graph)) continue;
      auto sc = split.t_class(i, b);
      if (done[sc]) continue;
      done[sc] = 1;
      auto bc = base.t_class(i, m.original[b]);
      std::string w = "T_" + std::to_string(i) + ", atom " + std::to_string(b);
      bool ok = true;
      for (AtomId a : split.t_class_members(i, sc))
        if (base.t_class(i, m.original[a]) != bc) {
          res.fail(w + " related to " + std::to_string(a) + " whose original is not");
          ok = false;
          break;
        }
      if (ok && split.t_class_members(i, sc).size() != copies_in_class[bc]) {
        for (AtomId a : base.t_class_members(i, bc))
          for (AtomId c : m.copies[a])
            if (split.t_class(i, c) != sc) {
              if (ok) res.fail(w + " unrelated to " + std::to_string(c) + " whose original is related");
              ok = false;
            }
      }
    }
  }
  return res;
}

/// Embedding checks on the additive extension of lift, plus the atom-level
/// transfer check.
inline CheckReport verify_blowup(const AtomStructure& base, const AtomStructure& split, const SplitMap& m,
                                 std::size_t samples = 200, std::uint64_t seed = 1) {
  std::vector<AtomSet> image;
  image.reserve(base.size());
  for (AtomId a = 0; a < base.size(); ++a) image.push_back(lift_set(m, a, split.size()));
  CheckReport report = verify_embedding(image, base, split, samples, seed);
  report.checks.push_back(check_cylindric_transfer(base, split, m));
  return report;
}

inline CheckReport verify_blowup(const AtomStructure& base, const AtomStructure& split, std::size_t samples = 200,
                                 std::uint64_t seed = 1) {
  return verify_blowup(base, split, build_split_map(base, split), samples, seed);
}

}  // namespace rainbow
