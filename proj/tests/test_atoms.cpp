#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "rainbow/atom_structure.hpp"

using namespace rainbow;

namespace {

oracle::Colour to_oracle(const EdgeColour& c) {
  switch (c.kind) {
    case ColourKind::GreenTint:
      return {'g', c.index};
    case ColourKind::GreenSuper:
      return {'G', c.index};
    case ColourKind::White:
      return {'w'};
    case ColourKind::WhiteTint:
      return {'W', c.index};
    case ColourKind::Red:
      return {'r', c.index, c.second, c.copy};
  }
  return {'?'};
}

// The labels an atom puts on the index pairs (i, j), i < j, in oracle form.
std::vector<oracle::Colour> pair_labels(const Atom& a) {
  const auto& sig = a.graph.signature();
  std::vector<oracle::Colour> key;
  const int n = static_cast<int>(a.assignment.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int u = a.assignment[i], v = a.assignment[j];
      key.push_back(u == v ? oracle::Colour{'e'} : to_oracle(sig.colour(a.graph.edge(u, v))));
    }
  return key;
}

std::set<std::vector<oracle::Colour>> library_keys(const AtomStructure& s) {
  std::set<std::vector<oracle::Colour>> keys;
  for (const auto& a : s.atoms()) keys.insert(pair_labels(a));
  return keys;
}

}  // namespace

TEST_CASE("preset atom count is 5883") {
  auto s = enumerate_atoms(preset_ca_n2_n1(3));
  CHECK(s.size() == 5883);
}

TEST_CASE("enumerated atoms are exactly the brute-force atoms") {
  struct Case {
    int a, b, copies;
    std::size_t count;
  };
  for (auto c : {Case{5, 4, 1, 5883}, Case{5, 4, 2, 18579}, Case{5, 4, 3, 38475}, Case{2, 2, 1, 303},
                 Case{1, 3, 1, 789}}) {
    CAPTURE(c.a, c.b, c.copies);
    auto s = enumerate_atoms(RainbowSpec(3, c.a, c.b, c.copies));
    auto ref = oracle::atom_keys_n3(c.a, c.b, c.copies);
    CHECK(ref.size() == c.count);
    CHECK(s.size() == c.count);
    // With only y_A yellows, an atom is determined by its pair labels.
    CHECK(library_keys(s) == ref);
  }
}

TEST_CASE("every atom is a valid graph under a restricted growth string") {
  auto s = enumerate_atoms(preset_ca_n2_n1(3));
  for (const auto& a : s.atoms()) {
    REQUIRE(is_valid(a.graph));
    int next = 0;
    for (int v : a.assignment) {
      REQUIRE(v <= next);
      if (v == next) ++next;
    }
    REQUIRE(next == a.graph.size());
    REQUIRE(s.find(a).has_value());
  }
}

TEST_CASE("diagonals hold exactly when two indices share a node") {
  auto s = enumerate_atoms(preset_ca_n2_n1(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (AtomId a = 0; a < s.size(); ++a) {
        const auto& as = s.atom(a).assignment;
        REQUIRE(s.diag_set(i, j).test(a) == (as[i] == as[j]));
      }
  CHECK(s.diag_set(1, 1).count() == s.size());
  CHECK_THROWS_AS(s.diag_set(0, 3), std::out_of_range);
}

TEST_CASE("T_i relates atoms that agree away from index i") {
  for (int copies : {1, 2}) {
    auto s = enumerate_atoms(RainbowSpec(3, 5, 4, copies));
    for (int i = 0; i < 3; ++i) {
      // The two remaining indices j < k: their equality and, if distinct, the label between them.
      int j = i == 0 ? 1 : 0, k = i == 2 ? 1 : 2;
      std::map<oracle::Colour, std::uint32_t> to_class;
      std::map<std::uint32_t, oracle::Colour> from_class;
      for (AtomId a = 0; a < s.size(); ++a) {
        const auto& at = s.atom(a);
        int u = at.assignment[j], v = at.assignment[k];
        auto key = u == v ? oracle::Colour{'e'} : to_oracle(at.graph.signature().colour(at.graph.edge(u, v)));
        auto cls = s.t_class(i, a);
        auto [it1, fresh1] = to_class.emplace(key, cls);
        auto [it2, fresh2] = from_class.emplace(cls, key);
        REQUIRE(it1->second == cls);
        REQUIRE(it2->second == key);
      }
      // One class per remaining pair-label (plus the collapsed pair).
      CHECK(s.t_class_count(i) == s.signature().colour_count() + 1);
    }
  }
}

TEST_CASE("T_i classes are equivalence classes") {
  auto s = enumerate_atoms(RainbowSpec(3, 2, 2));
  for (int i = 0; i < 3; ++i) {
    auto rel = s.acc_rel(i);
    std::set<std::pair<AtomId, AtomId>> r(rel.begin(), rel.end());
    for (AtomId a = 0; a < s.size(); ++a) REQUIRE(r.count({a, a}));
    for (auto [a, b] : r) REQUIRE(r.count({b, a}));
    std::size_t total = 0;
    for (std::uint32_t c = 0; c < s.t_class_count(i); ++c) total += s.t_class_set(i, c).count();
    CHECK(total == s.size());
  }
}

TEST_CASE("higher dimension atoms stay consistent") {
  auto s = enumerate_atoms(RainbowSpec(4, 1, 2));
  INFO("atoms " << s.size());
  CHECK(s.size() > 0);
  for (const auto& a : s.atoms()) REQUIRE(is_valid(a.graph));
  // Each T_i class determines the restriction to the other three indices.
  for (int i = 0; i < 4; ++i)
    for (std::uint32_t c = 0; c < s.t_class_count(i); ++c) {
      const auto& members = s.t_class_members(i, c);
      auto key = restriction_key(s.atom(members.front()), i);
      for (AtomId a : members) REQUIRE(restriction_key(s.atom(a), i) == key);
    }
}

TEST_CASE("atom budget is enforced") {
  CHECK_THROWS_AS(enumerate_atoms(Signature::make(preset_ca_n2_n1(3)), 100), ResourceExhausted);
}
