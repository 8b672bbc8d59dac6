#pragma once

// Atoms are ~-classes of surjections a: n -> M with M a coloured graph on at
// most n nodes. Each class is stored by its pull-back: the assignment renamed
// so that nodes are numbered by first occurrence (a restricted growth string)
// together with the graph relabelled accordingly. Two surjections are
// ~-equivalent exactly when their pull-backs coincide.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rainbow/atom_set.hpp"
#include "rainbow/coloured_graph.hpp"

namespace rainbow {

using AtomId = std::uint32_t;

struct Atom {
  std::vector<int> assignment;  // restricted growth string of length n
  ColouredGraph graph;          // graph on assignment's image, nodes 0..m-1

  int node_count() const { return graph.size(); }
  bool operator==(const Atom&) const = default;
};

namespace detail {
inline std::string key_bytes(std::span<const int> assignment, const std::vector<std::int32_t>& code) {
  std::string key;
  key.reserve(assignment.size() + code.size() * 4);
  for (int a : assignment) key.push_back(static_cast<char>(a));
  for (std::int32_t c : code) key.append(reinterpret_cast<const char*>(&c), sizeof c);
  return key;
}
}  // namespace detail

inline std::string atom_key(const Atom& a) { return detail::key_bytes(a.assignment, raw_code(a.graph)); }

/// The atom [alpha] for alpha(i) = tuple[i] over graph g.
inline Atom pull_back(const ColouredGraph& g, std::span<const int> tuple) {
  Atom atom;
  std::vector<int> nodes;
  std::vector<int> index_of(g.size(), -1);
  atom.assignment.reserve(tuple.size());
  for (int v : tuple) {
    if (index_of[v] < 0) {
      index_of[v] = static_cast<int>(nodes.size());
      nodes.push_back(v);
    }
    atom.assignment.push_back(index_of[v]);
  }
  atom.graph = g.induced(nodes);
  return atom;
}

/// Restriction of an atom to the indices other than `dropped`, as a key.
inline std::string restriction_key(const Atom& a, int dropped) {
  std::vector<int> tuple;
  for (int i = 0; i < static_cast<int>(a.assignment.size()); ++i)
    if (i != dropped) tuple.push_back(a.assignment[i]);
  Atom r = pull_back(a.graph, tuple);
  return atom_key(r);
}

class AtomStructure {
 public:
  AtomStructure() = default;

  /// A bare structure from explicit diagonals and T_i partitions; used for
  /// fixtures and fault injection. class_of[i][a] is a's T_i class.
  static AtomStructure from_partitions(int n, std::size_t atom_count, std::vector<std::vector<AtomSet>> diag,
                                       std::vector<std::vector<std::uint32_t>> class_of) {
    AtomStructure s;
    s.n_ = n;
    s.count_ = atom_count;
    s.diag_ = std::move(diag);
    s.class_of_ = std::move(class_of);
    s.build_classes();
    return s;
  }

  int n() const { return n_; }
  std::size_t size() const { return count_; }
  const std::shared_ptr<const Signature>& signature_ptr() const { return sig_; }
  const Signature& signature() const { return *sig_; }
  bool has_atoms() const { return !atoms_.empty(); }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const Atom& atom(AtomId id) const { return atoms_.at(id); }

  std::optional<AtomId> find(const Atom& a) const {
    auto it = index_.find(atom_key(a));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// E_ij; E_ii is the full atom set.
  const AtomSet& diag_set(int i, int j) const {
    check_index(i);
    check_index(j);
    return diag_[i][j];
  }

  std::uint32_t t_class(int i, AtomId a) const {
    check_index(i);
    return class_of_[i][a];
  }
  std::size_t t_class_count(int i) const { return class_sets_.at(i).size(); }
  const AtomSet& t_class_set(int i, std::uint32_t cls) const { return class_sets_[i][cls]; }
  const std::vector<AtomId>& t_class_members(int i, std::uint32_t cls) const { return class_members_[i][cls]; }
  bool acc_related(int i, AtomId a, AtomId b) const { return t_class(i, a) == t_class(i, b); }

  /// T_i as explicit pairs (small structures only).
  std::vector<std::pair<AtomId, AtomId>> acc_rel(int i) const {
    check_index(i);
    std::vector<std::pair<AtomId, AtomId>> pairs;
    for (const auto& members : class_members_[i])
      for (AtomId a : members)
        for (AtomId b : members) pairs.emplace_back(a, b);
    std::sort(pairs.begin(), pairs.end());
    return pairs;
  }

  /// Moves atom a into T_i class `cls` (fault injection in tests).
  void corrupt_t_class(int i, AtomId a, std::uint32_t cls) {
    class_of_[i][a] = cls;
    build_classes();
  }

  friend AtomStructure enumerate_atoms(std::shared_ptr<const Signature> sig, std::size_t max_atoms);

 private:
  void check_index(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("index " + std::to_string(i) + " out of range");
  }

  void build_classes() {
    class_sets_.assign(n_, {});
    class_members_.assign(n_, {});
    for (int i = 0; i < n_; ++i) {
      std::uint32_t classes = 0;
      for (auto c : class_of_[i]) classes = std::max(classes, c + 1);
      class_sets_[i].assign(classes, AtomSet(count_));
      class_members_[i].assign(classes, {});
      for (AtomId a = 0; a < count_; ++a) {
        class_sets_[i][class_of_[i][a]].set(a);
        class_members_[i][class_of_[i][a]].push_back(a);
      }
    }
  }

  int n_ = 0;
  std::size_t count_ = 0;
  std::shared_ptr<const Signature> sig_;
  std::vector<Atom> atoms_;
  std::unordered_map<std::string, AtomId> index_;
  std::vector<std::vector<AtomSet>> diag_;
  std::vector<std::vector<std::uint32_t>> class_of_;
  std::vector<std::vector<AtomSet>> class_sets_;
  std::vector<std::vector<std::vector<AtomId>>> class_members_;
};

class ResourceExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Restricted growth strings of length n in lexicographic order.
inline std::vector<std::vector<int>> set_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> rgs(n, 0);
  std::function<void(int, int)> rec = [&](int pos, int blocks) {
    if (pos == n) {
      out.push_back(rgs);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      rgs[pos] = b;
      rec(pos + 1, std::max(blocks, b + 1));
    }
  };
  rgs[0] = 0;
  if (n > 0) rec(1, 1);
  return out;
}

class AtomEnumerator {
 public:
  AtomEnumerator(const Signature& sig, std::size_t max_atoms) : sig_(sig), max_atoms_(max_atoms) {}

  std::vector<Atom> run() {
    for (const auto& rgs : set_partitions(sig_.n())) {
      int m = 0;
      for (int b : rgs) m = std::max(m, b + 1);
      assignment_ = rgs;
      graph_ = ColouredGraph(sig_, m);
      pairs_.clear();
      for (int v = 1; v < m; ++v)
        for (int u = 0; u < v; ++u) pairs_.emplace_back(u, v);
      label_edge(0);
    }
    return std::move(out_);
  }

 private:
  void label_edge(std::size_t k) {
    if (k == pairs_.size()) {
      tuples_.clear();
      for_each_distinct_tuple(graph_.size(), graph_.arity(), [&](std::span<const int> t) {
        if (graph_.yellow_eligible(t)) tuples_.emplace_back(t.begin(), t.end());
      });
      label_yellow(0);
      return;
    }
    auto [u, v] = pairs_[k];
    for (ColourId c = 0; c < sig_.colour_count(); ++c) {
      // Pairs are ordered by (v, u), so triangles x < u < v are complete now.
      bool ok = true;
      for (int x = 0; x < u && ok; ++x) ok = sig_.consistent(graph_.edge(x, u), c, graph_.edge(x, v));
      if (!ok) continue;
      graph_.set_edge(u, v, c);
      label_edge(k + 1);
    }
    graph_.set_edge(u, v, kNoColour);
  }

  void label_yellow(std::size_t k) {
    if (k == tuples_.size()) {
      if (!is_valid(graph_)) return;
      if (out_.size() >= max_atoms_) throw ResourceExhausted("atom enumeration exceeded " + std::to_string(max_atoms_) + " atoms");
      out_.push_back(Atom{assignment_, graph_});
      return;
    }
    for (std::uint32_t y : sig_.palette()) {
      graph_.set_yellow(tuples_[k], y);
      label_yellow(k + 1);
    }
    graph_.set_yellow(tuples_[k], kNoYellow);
  }

  const Signature& sig_;
  std::size_t max_atoms_;
  std::vector<int> assignment_;
  ColouredGraph graph_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<std::vector<int>> tuples_;
  std::vector<Atom> out_;
};

}  // namespace detail

/// All atoms of the rainbow atom structure for `sig`, with E_ij and T_i.
/// Atom ids follow partition order, then edge labels, then yellows.
inline AtomStructure enumerate_atoms(std::shared_ptr<const Signature> sig,
                                     std::size_t max_atoms = 5'000'000) {
  AtomStructure s;
  s.n_ = sig->n();
  s.sig_ = sig;
  s.atoms_ = detail::AtomEnumerator(*sig, max_atoms).run();
  s.count_ = s.atoms_.size();
  s.index_.reserve(s.count_ * 2);
  for (AtomId id = 0; id < s.count_; ++id) s.index_.emplace(atom_key(s.atoms_[id]), id);

  const int n = s.n_;
  s.diag_.assign(n, std::vector<AtomSet>(n, AtomSet(s.count_)));
  for (AtomId id = 0; id < s.count_; ++id) {
    const auto& as = s.atoms_[id].assignment;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (as[i] == as[j]) s.diag_[i][j].set(id);
  }
  s.class_of_.assign(n, std::vector<std::uint32_t>(s.count_));
  for (int i = 0; i < n; ++i) {
    std::unordered_map<std::string, std::uint32_t> classes;
    for (AtomId id = 0; id < s.count_; ++id) {
      auto [it, fresh] = classes.emplace(restriction_key(s.atoms_[id], i), static_cast<std::uint32_t>(classes.size()));
      s.class_of_[i][id] = it->second;
    }
  }
  s.build_classes();
  return s;
}

inline AtomStructure enumerate_atoms(const RainbowSpec& spec) { return enumerate_atoms(Signature::make(spec)); }

}  // namespace rainbow
