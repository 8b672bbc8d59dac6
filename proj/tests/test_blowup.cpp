#include <catch_amalgamated.hpp>

#include <map>

#include "rainbow/blowup.hpp"

using namespace rainbow;

namespace {

// Pair labels of an atom by colour name with any copy superscript cut off.
std::vector<std::string> erased_key(const Atom& a) {
  std::vector<std::string> key;
  const int n = static_cast<int>(a.assignment.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int u = a.assignment[i], v = a.assignment[j];
      if (u == v) {
        key.push_back("=");
        continue;
      }
      std::string name = to_string(a.graph.signature().colour(a.graph.edge(u, v)));
      if (name[0] == 'r') name = name.substr(0, name.find('^'));
      key.push_back(name);
    }
  return key;
}

int red_pairs(const Atom& a) {
  int reds = 0;
  const auto& g = a.graph;
  for (int u = 0; u < g.size(); ++u)
    for (int v = u + 1; v < g.size(); ++v) reds += g.signature().is_red(g.edge(u, v));
  return reds;
}

const CheckResult& result(const CheckReport& r, const std::string& name) {
  const CheckResult* c = r.find(name);
  REQUIRE(c != nullptr);
  return *c;
}

struct Pair {
  AtomStructure base = enumerate_atoms(preset_ca_n2_n1(3));
  AtomStructure split;
  explicit Pair(int copies) : split(enumerate_atoms(split_spec(preset_ca_n2_n1(3), copies))) {}
};

}  // namespace

TEST_CASE("split specs") {
  auto spec = preset_ca_n2_n1(3);
  CHECK(split_spec(spec, 3).red_copies == 3);
  CHECK(split_spec(spec, 3).greens == spec.greens);
  CHECK_THROWS_AS(split_spec(spec, 0), SpecError);
  CHECK_THROWS_AS(split_spec(spec, -2), SpecError);
}

TEST_CASE("one copy maps every atom to itself") {
  Pair p(1);
  auto m = build_split_map(p.base, p.split);
  for (AtomId a = 0; a < p.base.size(); ++a) {
    REQUIRE(m.copies[a] == std::vector<AtomId>{a});
    REQUIRE(m.original[a] == a);
  }
  CHECK(verify_blowup(p.base, p.split, m, 50).pass());
}

TEST_CASE("copy counts match an independent erasure") {
  for (int copies : {2, 3}) {
    Pair p(copies);
    auto m = build_split_map(p.base, p.split);
    std::map<std::vector<std::string>, std::size_t> ref;
    for (const auto& a : p.split.atoms()) ++ref[erased_key(a)];
    CHECK(ref.size() == p.base.size());

    std::size_t total = 0, largest = 0;
    std::vector<int> seen(p.split.size(), 0);
    for (AtomId a = 0; a < p.base.size(); ++a) {
      const auto& cs = m.copies[a];
      total += cs.size();
      largest = std::max(largest, cs.size());
      REQUIRE(cs.size() == ref.at(erased_key(p.base.atom(a))));
      // Each red edge can carry any of the copies.
      std::size_t expected = 1;
      for (int r = 0; r < red_pairs(p.base.atom(a)); ++r) expected *= static_cast<std::size_t>(copies);
      REQUIRE(cs.size() == expected);
      for (AtomId c : cs) {
        ++seen[c];
        REQUIRE(m.original[c] == a);
      }
    }
    CHECK(total == p.split.size());
    CHECK(std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; }));
    CHECK(largest == static_cast<std::size_t>(copies * copies * copies));
  }
}

TEST_CASE("the all-red atom has eight copies with two copies per red") {
  Pair p(2);
  auto m = build_split_map(p.base, p.split);
  const Signature& sig = p.base.signature();
  ColouredGraph g(sig, 3);
  g.set_edge(0, 1, EdgeColour::red(0, 1));
  g.set_edge(1, 2, EdgeColour::red(1, 2));
  g.set_edge(0, 2, EdgeColour::red(0, 2));
  fill_yellows(g, sig.full_yellow());
  auto id = p.base.find(Atom{{0, 1, 2}, g});
  REQUIRE(id);
  const auto& cs = m.copies[*id];
  REQUIRE(cs.size() == 8);
  std::set<std::vector<int>> superscripts;
  for (AtomId c : cs) {
    const auto& h = p.split.atom(c).graph;
    superscripts.insert({h.signature().colour(h.edge(0, 1)).copy, h.signature().colour(h.edge(1, 2)).copy,
                         h.signature().colour(h.edge(0, 2)).copy});
  }
  CHECK(superscripts.size() == 8);
}

TEST_CASE("the lifted map is an embedding") {
  for (int copies : {2, 3}) {
    Pair p(copies);
    auto r = verify_blowup(p.base, p.split, 100, 1);
    for (const auto& c : r.checks) {
      INFO(copies << " " << c.name << " " << (c.witnesses.empty() ? "" : c.witnesses.front()));
      CHECK(c.pass);
    }
    ComplexAlgebra ca(p.split);
    auto m = build_split_map(p.base, p.split);
    CHECK(lift(ca, m, 0).size() == m.copies[0].size());
  }
}

TEST_CASE("moving a red copy to its own class breaks the cylindrifiers") {
  Pair p(2);
  auto m = build_split_map(p.base, p.split);
  AtomId red = 0;
  while (!has_red(p.split.atom(red).graph)) ++red;
  auto bad = p.split;
  bad.corrupt_t_class(0, red, static_cast<std::uint32_t>(bad.t_class_count(0)));
  auto r = verify_blowup(p.base, bad, m, 20, 1);
  CHECK_FALSE(r.pass());
  const auto& cyl = result(r, "cylindrifiers preserved");
  REQUIRE_FALSE(cyl.pass);
  REQUIRE_FALSE(cyl.witnesses.empty());
  CHECK(cyl.witnesses.front().rfind("c_0 on atom", 0) == 0);
}

TEST_CASE("moving a red-free atom breaks the transfer check") {
  Pair p(2);
  auto m = build_split_map(p.base, p.split);
  AtomId plain = 0;
  while (has_red(p.split.atom(plain).graph) || p.split.t_class_members(1, p.split.t_class(1, plain)).size() < 2)
    ++plain;
  auto bad = p.split;
  bad.corrupt_t_class(1, plain, static_cast<std::uint32_t>(bad.t_class_count(1)));
  auto t = check_cylindric_transfer(p.base, bad, m);
  CHECK_FALSE(t.pass);
  REQUIRE_FALSE(t.witnesses.empty());
  CHECK(t.witnesses.front().rfind("T_1", 0) == 0);
}

TEST_CASE("mismatched structures are rejected") {
  auto base = enumerate_atoms(preset_ca_n2_n1(3));
  auto other = enumerate_atoms(RainbowSpec(3, 4, 4, 2));
  CHECK_THROWS_AS(build_split_map(base, other), BlowupError);
  AtomStructure bare;
  CHECK_THROWS_AS(build_split_map(base, bare), BlowupError);
}
