#include <catch_amalgamated.hpp>

#include "rainbow/complex_algebra.hpp"

using namespace rainbow;

namespace {

// The full cylindric set algebra of dimension n on the base {0,1}: atoms are
// the 2^n tuples, T_i relates tuples that differ at most at i.
AtomStructure set_algebra(int n, bool merge_t0 = false) {
  const std::size_t count = std::size_t{1} << n;
  std::vector<std::vector<AtomSet>> diag(n, std::vector<AtomSet>(n, AtomSet(count)));
  std::vector<std::vector<std::uint32_t>> class_of(n, std::vector<std::uint32_t>(count));
  auto bit = [](std::size_t t, int i) { return (t >> i) & 1u; };
  for (std::size_t t = 0; t < count; ++t) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (bit(t, i) == bit(t, j)) diag[i][j].set(t);
    for (int i = 0; i < n; ++i) class_of[i][t] = static_cast<std::uint32_t>(t & ~(std::size_t{1} << i));
  }
  // Renumber classes densely.
  for (auto& cls : class_of) {
    std::map<std::uint32_t, std::uint32_t> dense;
    for (auto& c : cls) c = dense.emplace(c, static_cast<std::uint32_t>(dense.size())).first->second;
  }
  if (merge_t0)
    for (auto& c : class_of[0]) c = 0;
  return AtomStructure::from_partitions(n, count, std::move(diag), std::move(class_of));
}

const CheckResult& result(const CheckReport& r, const std::string& name) {
  const CheckResult* c = r.find(name);
  REQUIRE(c != nullptr);
  return *c;
}

}  // namespace

TEST_CASE("set algebra fixture satisfies the axioms") {
  for (int n : {2, 3, 4}) {
    auto s = set_algebra(n);
    auto r = verify_ca_axioms(s, 300, 5);
    CAPTURE(n);
    CHECK(r.pass());
    CHECK(r.checks.size() == 7);
  }
}

TEST_CASE("merging T_0 classes breaks diagonal substitution") {
  auto s = set_algebra(3, true);
  auto r = verify_ca_axioms(s, 100, 5);
  CHECK_FALSE(r.pass());
  const auto& d = result(r, "c_i(d_ij . x) . c_i(d_ij . -x) = 0");
  CHECK_FALSE(d.pass);
  REQUIRE_FALSE(d.witnesses.empty());
  CHECK(d.witnesses.front().rfind("i=0", 0) == 0);
}

TEST_CASE("rainbow complex algebra satisfies the axioms") {
  auto s = enumerate_atoms(preset_ca_n2_n1(3));
  auto r = verify_ca_axioms(s, 200, 1);
  for (const auto& c : r.checks) {
    INFO(c.name << " " << (c.witnesses.empty() ? "" : c.witnesses.front()));
    CHECK(c.pass);
  }
}

TEST_CASE("corrupted rainbow structure is caught with a witness") {
  auto s = enumerate_atoms(RainbowSpec(3, 2, 2));
  // Put an E_01 atom into the T_0 class of a different E_01 atom.
  const auto& e = s.diag_set(0, 1);
  auto members = e.members();
  AtomId a = static_cast<AtomId>(members.front());
  AtomId b = 0;
  for (auto m : members)
    if (s.t_class(0, static_cast<AtomId>(m)) != s.t_class(0, a)) {
      b = static_cast<AtomId>(m);
      break;
    }
  REQUIRE(b != 0);
  auto bad = s;
  bad.corrupt_t_class(0, b, bad.t_class(0, a));
  auto r = verify_ca_axioms(bad, 50, 1);
  CHECK_FALSE(r.pass());
  std::size_t failing = 0;
  for (const auto& c : r.checks)
    if (!c.pass) {
      ++failing;
      CHECK_FALSE(c.witnesses.empty());
    }
  CHECK(failing >= 1);
  CHECK_FALSE(result(r, "c_i(d_ij . x) . c_i(d_ij . -x) = 0").pass);
}

TEST_CASE("element operations") {
  auto s = enumerate_atoms(RainbowSpec(3, 1, 3));
  ComplexAlgebra ca(s);
  auto x = ca.atom(5);
  for (int i = 0; i < 3; ++i) CHECK(ca.cyl(i, x).members() == s.t_class_set(i, s.t_class(i, 5)));
  CHECK((x + -x) == ca.one());
  CHECK((x * -x).is_zero());
  CHECK(x <= ca.one());
  CHECK(ca.diag(0, 0) == ca.one());

  auto other = enumerate_atoms(RainbowSpec(3, 1, 3));
  ComplexAlgebra cb(other);
  CHECK_THROWS_AS(x + cb.atom(5), StructureMismatch);
  CHECK_THROWS_AS(ca.cyl(0, cb.atom(5)), StructureMismatch);
}

TEST_CASE("embedding check") {
  auto s = enumerate_atoms(RainbowSpec(3, 1, 3));
  std::vector<AtomSet> id;
  for (AtomId a = 0; a < s.size(); ++a) {
    AtomSet one(s.size());
    one.set(a);
    id.push_back(one);
  }
  CHECK(verify_embedding(id, s, s, 50).pass());

  // Swapping an atom on the diagonal with one off it breaks the diagonals.
  auto swapped = id;
  AtomId on = static_cast<AtomId>(s.diag_set(0, 1).members().front());
  AtomId off = static_cast<AtomId>((~s.diag_set(0, 1)).members().front());
  std::swap(swapped[on], swapped[off]);
  auto r = verify_embedding(swapped, s, s, 50);
  CHECK_FALSE(r.pass());
  CHECK_FALSE(result(r, "diagonals preserved").pass);

  auto lost = id;
  lost[3] = AtomSet(s.size());
  CHECK_FALSE(result(verify_embedding(lost, s, s, 10), "injective").pass);
}

TEST_CASE("axiom reports are deterministic for a seed") {
  auto s = set_algebra(3, true);
  auto a = verify_ca_axioms(s, 100, 9);
  auto b = verify_ca_axioms(s, 100, 9);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t k = 0; k < a.checks.size(); ++k) {
    CHECK(a.checks[k].failures == b.checks[k].failures);
    CHECK(a.checks[k].witnesses == b.checks[k].witnesses);
  }
}
