#pragma once

// The complex algebra Cm(At) over a finite atom structure, the CA axiom
// checker and a verifier for atom-determined embeddings between two complex
// algebras.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rainbow/atom_structure.hpp"

namespace rainbow {

class StructureMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class AlgebraElement {
 public:
  AlgebraElement(const AtomStructure& owner, AtomSet members) : owner_(&owner), members_(std::move(members)) {
    if (members_.universe() != owner.size()) throw StructureMismatch("element universe differs from structure");
  }
  const AtomStructure& owner() const { return *owner_; }
  const AtomSet& members() const { return members_; }
  bool contains(AtomId a) const { return members_.test(a); }
  std::size_t size() const { return members_.count(); }
  bool is_zero() const { return members_.empty(); }

  bool operator==(const AlgebraElement& o) const {
    same(o);
    return members_ == o.members_;
  }
  bool operator<=(const AlgebraElement& o) const {
    same(o);
    return members_.subset_of(o.members_);
  }
  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    a.same(b);
    return {*a.owner_, a.members_ | b.members_};
  }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    a.same(b);
    return {*a.owner_, a.members_ & b.members_};
  }
  AlgebraElement operator-() const { return {*owner_, ~members_}; }

 private:
  void same(const AlgebraElement& o) const {
    if (owner_ != o.owner_) throw StructureMismatch("elements of different atom structures");
  }
  const AtomStructure* owner_;
  AtomSet members_;
};

/// Cm(At): Boolean set algebra with c_i the T_i-image and d_ij = E_ij.
class ComplexAlgebra {
 public:
  explicit ComplexAlgebra(const AtomStructure& s) : s_(s) {}

  const AtomStructure& structure() const { return s_; }
  int n() const { return s_.n(); }

  AlgebraElement zero() const { return {s_, AtomSet(s_.size())}; }
  AlgebraElement one() const { return {s_, AtomSet::full(s_.size())}; }
  AlgebraElement atom(AtomId a) const {
    AtomSet m(s_.size());
    m.set(a);
    return {s_, std::move(m)};
  }
  AlgebraElement element(AtomSet m) const { return {s_, std::move(m)}; }

  AlgebraElement cyl(int i, const AlgebraElement& x) const {
    check_owner(x);
    return {s_, cyl_set(i, x.members())};
  }
  AlgebraElement diag(int i, int j) const { return {s_, s_.diag_set(i, j)}; }

  AtomSet cyl_set(int i, const AtomSet& x) const {
    if (i < 0 || i >= s_.n()) throw std::out_of_range("cylindrifier index out of range");
    std::vector<char> hit(s_.t_class_count(i), 0);
    AtomSet out(s_.size());
    x.for_each([&](std::size_t a) {
      auto c = s_.t_class(i, static_cast<AtomId>(a));
      if (!hit[c]) {
        hit[c] = 1;
        out |= s_.t_class_set(i, c);
      }
    });
    return out;
  }

 private:
  void check_owner(const AlgebraElement& x) const {
    if (&x.owner() != &s_) throw StructureMismatch("element of a different atom structure");
  }
  const AtomStructure& s_;
};

// ---------------------------------------------------------------------------
// Reports

struct CheckResult {
  CheckResult(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  bool pass = true;
  std::vector<std::string> witnesses;  // capped at kMaxWitnesses
  std::size_t failures = 0;

  static constexpr std::size_t kMaxWitnesses = 10;
  void fail(std::string witness) {
    pass = false;
    ++failures;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(witness));
  }
};

struct CheckReport {
  std::vector<CheckResult> checks;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

/// Seeded random elements of varied density: a few atoms, unions of
/// accessibility classes, sparse and dense Bernoulli sets.
inline AtomSet random_element(const AtomStructure& s, std::mt19937_64& rng) {
  AtomSet x(s.size());
  if (s.size() == 0) return x;
  std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
  switch (rng() % 4) {
    case 0: {
      std::size_t k = 1 + rng() % 8;
      for (std::size_t t = 0; t < k; ++t) x.set(pick(rng));
      break;
    }
    case 1: {
      int i = static_cast<int>(rng() % s.n());
      std::size_t k = 1 + rng() % 3;
      for (std::size_t t = 0; t < k; ++t) {
        auto a = static_cast<AtomId>(pick(rng));
        // Part of a class, so that cylindrification is not a no-op.
        s.t_class_set(i, s.t_class(i, a)).for_each([&](std::size_t b) {
          if (rng() % 3 == 0) x.set(b);
        });
      }
      break;
    }
    case 2: {
      std::bernoulli_distribution coin(0.01);
      for (std::size_t a = 0; a < s.size(); ++a)
        if (coin(rng)) x.set(a);
      break;
    }
    default: {
      std::bernoulli_distribution coin(0.5);
      for (std::size_t a = 0; a < s.size(); ++a)
        if (coin(rng)) x.set(a);
      break;
    }
  }
  return x;
}

inline std::string idx(int i) { return std::to_string(i); }

}  // namespace detail

/// Checks the cylindric-algebra axioms on Cm(At): atom-level exhaustively
/// (each family is atom-determined by complete additivity) and on `samples`
/// seeded pairs of arbitrary elements.
inline CheckReport verify_ca_axioms(const AtomStructure& s, std::size_t samples = 1000, std::uint64_t seed = 1) {
  ComplexAlgebra ca(s);
  const int n = s.n();
  CheckReport report;
  report.seed = seed;
  report.samples = samples;
  CheckResult c0{"c_i 0 = 0"}, ext{"x <= c_i x"}, mod{"c_i(x . c_i y) = c_i x . c_i y"},
      comm{"c_i c_j x = c_j c_i x"}, dii{"d_ii = 1"}, dij{"d_ij = c_k(d_ik . d_kj)"},
      dsub{"c_i(d_ij . x) . c_i(d_ij . -x) = 0"};

  for (int i = 0; i < n; ++i)
    if (!ca.cyl(i, ca.zero()).is_zero()) c0.fail("i=" + detail::idx(i));

  // Extensivity: every atom lies in its own T_i-image.
  for (int i = 0; i < n; ++i)
    for (AtomId a = 0; a < s.size(); ++a)
      if (!s.t_class_set(i, s.t_class(i, a)).test(a)) ext.fail("i=" + detail::idx(i) + " atom=" + std::to_string(a));

  // Modularity reduces, by additivity in x, to x an atom; c_i y ranges over
  // unions of T_i-classes, and meets distribute, so y over class representatives.
  for (int i = 0; i < n; ++i) {
    const std::size_t classes = s.t_class_count(i);
    std::vector<AtomId> rep(classes);
    for (std::uint32_t c = 0; c < classes; ++c) rep[c] = s.t_class_members(i, c).front();
    std::vector<char> seen(classes, 0);
    for (AtomId a = 0; a < s.size(); ++a) {
      auto ca_cls = s.t_class(i, a);
      // c_i{a} depends only on a's class when T_i is a partition; check each
      // class once, through the first member, plus every atom's self-membership.
      if (seen[ca_cls]) continue;
      seen[ca_cls] = 1;
      AtomSet ca_set = ca.cyl_set(i, ca.atom(a).members());
      for (std::uint32_t c = 0; c < classes; ++c) {
        AtomSet cy = ca.cyl_set(i, ca.atom(rep[c]).members());
        AtomSet inner = ca.atom(a).members() & cy;
        AtomSet lhs = ca.cyl_set(i, inner);
        AtomSet rhs = ca_set & cy;
        if (!(lhs == rhs)) mod.fail("i=" + detail::idx(i) + " x=atom " + std::to_string(a) + " y=atom " + std::to_string(rep[c]));
      }
    }
  }

  // Commutativity on atoms: c_i c_j {a} depends on a's T_j class only.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto images = [&](int outer, int inner) {
        std::vector<AtomSet> u;
        for (std::uint32_t c = 0; c < s.t_class_count(inner); ++c)
          u.push_back(ca.cyl_set(outer, s.t_class_set(inner, c)));
        return u;
      };
      auto ij = images(i, j);  // c_i c_j
      auto ji = images(j, i);  // c_j c_i
      std::set<std::pair<std::uint32_t, std::uint32_t>> done;
      for (AtomId a = 0; a < s.size(); ++a) {
        auto key = std::make_pair(s.t_class(j, a), s.t_class(i, a));
        if (!done.insert(key).second) continue;
        if (!(ij[key.first] == ji[key.second]))
          comm.fail("i=" + detail::idx(i) + " j=" + detail::idx(j) + " atom=" + std::to_string(a));
      }
    }

  for (int i = 0; i < n; ++i)
    if (!(ca.diag(i, i) == ca.one())) dii.fail("i=" + detail::idx(i));

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (!(ca.diag(i, j) == ca.cyl(k, ca.diag(i, k) * ca.diag(k, j))))
          dij.fail("i=" + detail::idx(i) + " j=" + detail::idx(j) + " k=" + detail::idx(k));
      }

  // Atom form: no T_i class holds two distinct atoms of E_ij.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const AtomSet& e = s.diag_set(i, j);
      for (std::uint32_t c = 0; c < s.t_class_count(i); ++c) {
        AtomSet both = s.t_class_set(i, c) & e;
        if (both.count() > 1) {
          auto m = both.members();
          dsub.fail("i=" + detail::idx(i) + " j=" + detail::idx(j) + " atoms " + std::to_string(m[0]) + "," +
                    std::to_string(m[1]));
        }
      }
    }

  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < samples; ++t) {
    AlgebraElement x = ca.element(detail::random_element(s, rng));
    AlgebraElement y = ca.element(detail::random_element(s, rng));
    std::string w = " sample " + std::to_string(t);
    for (int i = 0; i < n; ++i) {
      AlgebraElement cx = ca.cyl(i, x);
      if (!(x <= cx)) ext.fail("i=" + detail::idx(i) + w);
      AlgebraElement cy = ca.cyl(i, y);
      if (!(ca.cyl(i, x * cy) == cx * cy)) mod.fail("i=" + detail::idx(i) + w);
      for (int j = i + 1; j < n; ++j)
        if (!(ca.cyl(i, ca.cyl(j, x)) == ca.cyl(j, cx))) comm.fail("i=" + detail::idx(i) + " j=" + detail::idx(j) + w);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        AlgebraElement d = ca.diag(i, j);
        if (!(ca.cyl(i, d * x) * ca.cyl(i, d * -x)).is_zero())
          dsub.fail("i=" + detail::idx(i) + " j=" + detail::idx(j) + w);
      }
    }
  }

  report.checks = {c0, ext, mod, comm, dii, dij, dsub};
  return report;
}

/// Verifies that the additive extension of `image` (source atom -> target
/// element) is an injective homomorphism of complex algebras: Boolean
/// operations, every diagonal and every cylindrifier. Cylindrifiers are
/// checked on every source atom and on sampled elements.
inline CheckReport verify_embedding(const std::vector<AtomSet>& image, const AtomStructure& source,
                                    const AtomStructure& target, std::size_t samples = 200,
                                    std::uint64_t seed = 1) {
  CheckReport report;
  report.seed = seed;
  report.samples = samples;
  CheckResult total{"h total"}, inj{"injective"}, boole{"Boolean operations preserved"},
      diag{"diagonals preserved"}, cyl{"cylindrifiers preserved"};
  ComplexAlgebra src(source), tgt(target);
  if (image.size() != source.size()) {
    total.fail("image has " + std::to_string(image.size()) + " entries for " + std::to_string(source.size()) + " atoms");
    report.checks = {total};
    return report;
  }
  for (const auto& im : image)
    if (im.universe() != target.size()) throw StructureMismatch("image outside the target structure");

  auto apply = [&](const AtomSet& x) {
    AtomSet out(target.size());
    x.for_each([&](std::size_t a) { out |= image[a]; });
    return out;
  };

  AtomSet covered(target.size());
  for (AtomId a = 0; a < source.size(); ++a) {
    if (image[a].empty()) inj.fail("atom " + std::to_string(a) + " maps to 0");
    if (covered.intersects(image[a])) {
      for (AtomId b = 0; b < a; ++b)
        if (image[b].intersects(image[a])) {
          inj.fail("atoms " + std::to_string(b) + "," + std::to_string(a) + " have overlapping images");
          break;
        }
    }
    covered |= image[a];
  }
  if (!(covered == AtomSet::full(target.size()))) boole.fail("h(1) != 1");

  const int n = source.n();
  if (target.n() != n) throw StructureMismatch("dimensions differ");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(apply(source.diag_set(i, j)) == target.diag_set(i, j)))
        diag.fail("d_" + detail::idx(i) + detail::idx(j));

  for (int i = 0; i < n; ++i) {
    std::vector<AtomSet> lifted_class(source.t_class_count(i));
    std::vector<char> have(source.t_class_count(i), 0);
    for (AtomId a = 0; a < source.size(); ++a) {
      auto c = source.t_class(i, a);
      if (!have[c]) {
        lifted_class[c] = apply(source.t_class_set(i, c));
        have[c] = 1;
      }
      AtomSet rhs = tgt.cyl_set(i, image[a]);
      if (!(lifted_class[c] == rhs)) cyl.fail("c_" + detail::idx(i) + " on atom " + std::to_string(a));
    }
  }

  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < samples; ++t) {
    AtomSet x = detail::random_element(source, rng);
    AtomSet y = detail::random_element(source, rng);
    AtomSet hx = apply(x), hy = apply(y);
    std::string w = "sample " + std::to_string(t);
    if (!(apply(x | y) == (hx | hy))) boole.fail("join, " + w);
    if (!(apply(x & y) == (hx & hy))) boole.fail("meet, " + w);
    if (!(apply(~x) == ~hx)) boole.fail("complement, " + w);
    for (int i = 0; i < n; ++i)
      if (!(apply(src.cyl_set(i, x)) == tgt.cyl_set(i, hx))) cyl.fail("c_" + detail::idx(i) + ", " + w);
  }
  report.checks = {total, inj, boole, diag, cyl};
  return report;
}

}  // namespace rainbow
