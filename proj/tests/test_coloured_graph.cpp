#include <catch_amalgamated.hpp>

#include <random>

#include "rainbow/networks.hpp"
#include "rainbow/script.hpp"

using namespace rainbow;
using E = EdgeColour;

namespace {

ColouredGraph triangle(const Signature& sig, E a, E b, E c) {
  ColouredGraph g(sig, 3);
  g.set_edge(0, 1, a);
  g.set_edge(1, 2, b);
  g.set_edge(0, 2, c);
  fill_yellows(g, sig.full_yellow());
  return g;
}

// Any graph at all: random or missing edge labels, random or missing yellows.
ColouredGraph scrambled(const Signature& sig, int size, std::mt19937_64& rng) {
  ColouredGraph g(sig, size);
  for (int u = 0; u < size; ++u)
    for (int v = u + 1; v < size; ++v)
      if (rng() % 8) g.set_edge(u, v, static_cast<ColourId>(rng() % sig.colour_count()));
  for (std::size_t i = 0; i < g.tuple_count(); ++i) {
    auto t = g.tuple_at(i);
    if (t[0] != t[1] && rng() % 3) g.set_yellow(t, static_cast<std::uint32_t>(rng() % (sig.full_yellow() + 1)));
  }
  return g;
}

bool brute_isomorphic(const ColouredGraph& a, const ColouredGraph& b) {
  if (a.size() != b.size()) return false;
  std::vector<int> p(a.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    if (a.permuted(p) == b) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

}  // namespace

TEST_CASE("triangle validation") {
  Signature sig(preset_ca_n2_n1(3));
  CHECK(validate(triangle(sig, E::red(0, 1), E::red(1, 2), E::red(0, 2))).ok());
  CHECK(validate(triangle(sig, E::white(), E::white(), E::white())).ok());

  auto bad = validate(triangle(sig, E::green_super(0), E::green_super(0), E::red(0, 1)));
  CHECK(bad.has(ForbiddenRule::SameTintSuperPairRed));
  CHECK(bad.violations.front().nodes == std::vector<int>{0, 1, 2});
  CHECK_FALSE(is_valid(triangle(sig, E::green_super(0), E::green_super(0), E::red(0, 1))));
  CHECK(is_valid(triangle(sig, E::green_super(0), E::green_super(1), E::red(0, 1))));

  auto mismatch = validate(triangle(sig, E::red(0, 1), E::red(2, 3), E::red(0, 3)));
  CHECK(mismatch.has(ForbiddenRule::RedIndexMismatch));
  CHECK(validate(triangle(sig, E::green_super(1), E::green_super(2), E::white_tint(0)))
            .has(ForbiddenRule::SuperPairWhiteZero));
  CHECK(validate(triangle(sig, E::green_tint(1), E::green_super(0), E::green_super(2)))
            .has(Axiom::ForbiddenTriangle));
}

TEST_CASE("completeness and yellow totality") {
  Signature sig(preset_ca_n2_n1(3));
  ColouredGraph g(sig, 3);
  g.set_edge(0, 1, E::white());
  g.set_edge(1, 2, E::white());
  auto r = validate(g);
  CHECK(r.has(Axiom::Completeness));
  CHECK_FALSE(is_valid(g));

  g.set_edge(0, 2, E::white());
  CHECK(validate(g).has(Axiom::YellowTotality));
  fill_yellows(g, sig.full_yellow());
  CHECK(validate(g).ok());

  // A yellow on a green edge is not allowed.
  auto h = triangle(sig, E::green_super(0), E::white(), E::white());
  h.set_yellow({0, 1}, sig.full_yellow());
  CHECK(validate(h).has(Axiom::YellowTotality));
  CHECK_FALSE(is_valid(h));
}

TEST_CASE("cones and their tints") {
  Signature sig(preset_ca_n2_n1(3));
  auto g = script_opening(sig);
  REQUIRE(validate(g).ok());
  auto cones = find_cones(g);
  REQUIRE(cones.size() == 1);
  CHECK(cones[0].base == std::vector<int>{0, 1});
  CHECK(cones[0].apex == 2);
  CHECK(cones[0].tint == 0);

  // The base yellow must contain the cone's tint.
  g.set_yellow({0, 1}, sig.full_yellow() & ~1u);
  auto r = validate(g);
  CHECK(r.has(Axiom::ConeTint));
  CHECK_FALSE(is_valid(g));

  // Swapping the spokes gives no cone: g_1 must sit on the second base node.
  ColouredGraph h(sig, 3);
  h.set_edge(0, 1, E::white_tint(0));
  h.set_edge(0, 2, E::green_tint(1));
  h.set_edge(1, 2, E::green_super(3));
  fill_yellows(h, sig.full_yellow());
  auto hc = find_cones(h);
  REQUIRE(hc.size() == 1);
  CHECK(hc[0].base == std::vector<int>{1, 0});
  CHECK(hc[0].tint == 3);
}

TEST_CASE("out-of-signature labels throw") {
  Signature sig(preset_ca_n2_n1(3));
  ColouredGraph g(sig, 2);
  CHECK_THROWS_AS(g.set_edge(0, 1, E::red(0, 9)), SpecError);
  g.set_edge(0, 1, E::white());
  g.set_yellow({0, 1}, 1u << 7);
  CHECK_THROWS_AS(validate(g), LabelError);
}

TEST_CASE("canonical codes agree with brute-force isomorphism") {
  Signature sig(RainbowSpec(3, 2, 3, 1, YellowPalette::All));
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    const int size = 1 + static_cast<int>(rng() % 5);
    auto a = scrambled(sig, size, rng);
    std::vector<int> p(size);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    auto b = a.permuted(p);
    REQUIRE(canonical_form(a).code == canonical_form(b).code);
    auto ca = canonical_form(a);
    CHECK(ca.graph == a.permuted(ca.relabel));
    CHECK(brute_isomorphic(a, ca.graph));

    if (size == 1) continue;
    // Either an unrelated graph or a near miss (b with one edge relabelled).
    auto c = scrambled(sig, size, rng);
    if (trial % 2) {
      c = b;
      c.set_edge(0, size - 1, static_cast<ColourId>(rng() % 2));
    }
    CHECK((canonical_form(a).code == canonical_form(c).code) == brute_isomorphic(a, c));
  }
}

TEST_CASE("canonical codes of valid graphs agree with brute force") {
  Signature sig(RainbowSpec(3, 2, 3, 1, YellowPalette::All));
  std::mt19937_64 rng(11);
  int pairs = 0, iso = 0;
  while (pairs < 300) {
    const int size = 2 + static_cast<int>(rng() % 4);
    auto a = random_valid_graph(sig, size, rng);
    auto b = random_valid_graph(sig, size, rng);
    if (!a || !b) continue;
    ++pairs;
    bool same = brute_isomorphic(*a, *b);
    iso += same;
    CHECK(is_isomorphic(*a, *b) == same);
  }
  // Also the isomorphic case, which random pairs rarely hit.
  for (int t = 0; t < 100; ++t) {
    auto a = random_valid_graph(sig, 5, rng);
    REQUIRE(a);
    std::vector<int> p{4, 2, 0, 3, 1};
    CHECK(is_isomorphic(*a, a->permuted(p)));
  }
}

TEST_CASE("colour symmetry identifies graphs that differ by a renaming of indices") {
  Signature sig(preset_ca_n2_n1(3));
  CanonOptions sym;
  sym.colour_symmetry = true;
  auto a = triangle(sig, E::red(0, 1), E::red(1, 2), E::red(0, 2));
  auto b = triangle(sig, E::red(3, 0), E::red(0, 1), E::red(3, 1));
  CHECK_FALSE(is_isomorphic(a, b));
  CHECK(is_isomorphic(a, b, sym));

  auto c = triangle(sig, E::green_super(0), E::white(), E::white());
  auto d = triangle(sig, E::green_super(4), E::white(), E::white());
  CHECK_FALSE(is_isomorphic(c, d));
  CHECK(is_isomorphic(c, d, sym));
  // Different shapes stay apart.
  auto e = triangle(sig, E::green_super(0), E::white_tint(0), E::white());
  CHECK_FALSE(is_isomorphic(c, e, sym));

  // A yellow that is neither empty nor full pins the tints.
  Signature all(RainbowSpec(3, 5, 4, 1, YellowPalette::All));
  auto f = triangle(all, E::green_super(0), E::white(), E::white());
  auto h = triangle(all, E::green_super(4), E::white(), E::white());
  f.set_yellow({1, 2}, 1u);
  h.set_yellow({1, 2}, 1u);
  CHECK_FALSE(is_isomorphic(f, h, sym));
}

TEST_CASE("graph editing") {
  Signature sig(preset_ca_n2_n1(3));
  auto g = script_opening(sig);
  CHECK(g.edge(2, 0) == g.edge(0, 2));
  g.set_edge(0, 1, E::red(0, 1));
  CHECK(sig.colour(g.edge(1, 0)) == E::red(1, 0));
  int v = g.add_node();
  CHECK(v == 3);
  CHECK(g.edge(0, 3) == kNoColour);
  CHECK(g.yellow({0, 1}) == sig.full_yellow());
  auto sub = g.without_node(3);
  CHECK(sub.size() == 3);
  CHECK(sub.edge(0, 1) == g.edge(0, 1));
  std::vector<int> keep{2, 0};
  auto ind = g.induced(keep);
  CHECK(ind.edge(0, 1) == g.edge(2, 0));
}
