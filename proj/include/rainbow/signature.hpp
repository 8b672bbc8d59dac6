#pragma once

// Rainbow signatures: colour systems, their integer encoding, and the
// forbidden-triangle predicate every other module consults.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rainbow {

class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class YellowPalette { Top, All };

struct RainbowSpec {
  int dimension = 3;     // n
  int greens = 1;        // |A|
  int reds = 2;          // |B|
  int red_copies = 1;    // N
  YellowPalette yellows = YellowPalette::Top;

  RainbowSpec() = default;
  RainbowSpec(int n, int a, int b, int copies = 1, YellowPalette palette = YellowPalette::Top)
      : dimension(n), greens(a), reds(b), red_copies(copies), yellows(palette) {
    validate();
  }

  void validate() const {
    if (dimension < 3) throw SpecError("dimension must be at least 3");
    if (greens < 1) throw SpecError("green index set must be nonempty");
    if (reds < 1) throw SpecError("red index set must be nonempty");
    if (red_copies < 1) throw SpecError("red copy count must be at least 1");
    if (greens > 16) throw SpecError("at most 16 greens supported");
    if (dimension > 8) throw SpecError("dimension above 8 not supported");
  }

  bool operator==(const RainbowSpec&) const = default;
};

/// The CA_{n+2,n+1} preset: greens n+2, reds n+1.
inline RainbowSpec preset_ca_n2_n1(int n) { return RainbowSpec(n, n + 2, n + 1); }

enum class ColourKind : std::uint8_t { GreenTint, GreenSuper, White, WhiteTint, Red };

struct EdgeColour {
  ColourKind kind = ColourKind::White;
  int index = 0;   // tint for GreenTint/GreenSuper/WhiteTint, first red index
  int second = 0;  // second red index
  int copy = 0;    // red copy superscript

  static EdgeColour green_tint(int i) { return {ColourKind::GreenTint, i, 0, 0}; }
  static EdgeColour green_super(int a) { return {ColourKind::GreenSuper, a, 0, 0}; }
  static EdgeColour white() { return {ColourKind::White, 0, 0, 0}; }
  static EdgeColour white_tint(int i) { return {ColourKind::WhiteTint, i, 0, 0}; }
  static EdgeColour red(int i, int j, int copy = 0) { return {ColourKind::Red, i, j, copy}; }

  bool is_green() const { return kind == ColourKind::GreenTint || kind == ColourKind::GreenSuper; }
  bool is_red() const { return kind == ColourKind::Red; }
  bool is_white() const { return kind == ColourKind::White || kind == ColourKind::WhiteTint; }

  EdgeColour converse() const { return is_red() ? red(second, index, copy) : *this; }
  /// Red with copy superscript dropped; every other colour is unchanged.
  EdgeColour erased() const { return is_red() ? red(index, second, 0) : *this; }

  bool operator==(const EdgeColour&) const = default;
  auto operator<=>(const EdgeColour&) const = default;
};

struct YellowColour {
  std::uint32_t tints = 0;  // bitmask over A
  bool contains(int tint) const { return (tints >> tint) & 1u; }
  bool operator==(const YellowColour&) const = default;
};

std::string to_string(const EdgeColour& c);
std::string to_string(const YellowColour& y, int greens);
EdgeColour parse_edge_colour(std::string_view text);

using ColourId = std::int16_t;
inline constexpr ColourId kNoColour = -1;
inline constexpr std::uint32_t kNoYellow = 0xFFFFFFFFu;

/// Which rule rejects a triangle.
enum class ForbiddenRule : std::uint8_t {
  ThreeGreens,          // (g, g', g*)
  TintPairWhite,        // (g_i, g_i, w)
  SuperPairWhiteZero,   // (g_0^j, g_0^k, w_0)
  SameTintSuperPairRed, // (g_0^i, g_0^i, r_kl)
  RedIndexMismatch,     // (r_ij, r_j'k', r_i*k*) with mismatching indices
};

std::string_view rule_name(ForbiddenRule rule);

/// Forbidden-triangle test on explicit colours, triangle read as
/// (label(x,y), label(y,z), label(x,z)).
inline std::optional<ForbiddenRule> forbidden_rule(const EdgeColour& c1, const EdgeColour& c2,
                                                   const EdgeColour& c3) {
  if (c1.is_red() && c2.is_red() && c3.is_red()) {
    bool ok = c1.index == c3.index && c1.second == c2.index && c2.second == c3.second;
    if (!ok) return ForbiddenRule::RedIndexMismatch;
    return std::nullopt;
  }
  std::array<const EdgeColour*, 3> cs{&c1, &c2, &c3};
  int greens = 0;
  for (auto* c : cs) greens += c->is_green();
  if (greens == 3) return ForbiddenRule::ThreeGreens;
  if (greens != 2) return std::nullopt;
  const EdgeColour* other = nullptr;
  const EdgeColour* g[2];
  int gi = 0;
  for (auto* c : cs) {
    if (c->is_green())
      g[gi++] = c;
    else
      other = c;
  }
  if (g[0]->kind == ColourKind::GreenTint && g[1]->kind == ColourKind::GreenTint &&
      g[0]->index == g[1]->index && other->kind == ColourKind::White)
    return ForbiddenRule::TintPairWhite;
  if (g[0]->kind == ColourKind::GreenSuper && g[1]->kind == ColourKind::GreenSuper) {
    if (other->kind == ColourKind::WhiteTint && other->index == 0)
      return ForbiddenRule::SuperPairWhiteZero;
    if (other->is_red() && g[0]->index == g[1]->index) return ForbiddenRule::SameTintSuperPairRed;
  }
  return std::nullopt;
}

inline bool forbidden_triple(const EdgeColour& c1, const EdgeColour& c2, const EdgeColour& c3) {
  return forbidden_rule(c1, c2, c3).has_value();
}

/// A spec together with its dense colour encoding and triangle table.
///
/// Colour ids follow the universe order: green tints g_1..g_{n-2}, green
/// supers g_0^a, plain white, white tints w_0..w_{n-3}, then reds r_ij^l by
/// (i, j, l). Instances are immutable and shared through shared_ptr.
class Signature {
 public:
  explicit Signature(RainbowSpec spec);

  static std::shared_ptr<const Signature> make(const RainbowSpec& spec) {
    return std::make_shared<const Signature>(spec);
  }

  const RainbowSpec& spec() const { return spec_; }
  int n() const { return spec_.dimension; }
  int colour_count() const { return static_cast<int>(colours_.size()); }
  const EdgeColour& colour(ColourId id) const { return colours_.at(id); }
  const std::vector<EdgeColour>& colours() const { return colours_; }
  ColourId id_of(const EdgeColour& c) const;  // throws SpecError if outside the universe
  std::optional<ColourId> find(const EdgeColour& c) const;
  ColourId converse(ColourId id) const { return converse_[id]; }
  bool is_green(ColourId id) const { return colours_[id].is_green(); }
  bool is_red(ColourId id) const { return colours_[id].is_red(); }
  ColourKind kind(ColourId id) const { return colours_[id].kind; }

  /// True iff the oriented triangle (l(x,y), l(y,z), l(x,z)) is consistent.
  bool consistent(ColourId xy, ColourId yz, ColourId xz) const {
    return consistent_[(static_cast<std::size_t>(xy) * colour_count() + yz) * colour_count() + xz];
  }
  std::optional<ForbiddenRule> rule(ColourId xy, ColourId yz, ColourId xz) const {
    return forbidden_rule(colours_[xy], colours_[yz], colours_[xz]);
  }

  std::uint32_t full_yellow() const { return (1u << spec_.greens) - 1u; }
  /// Yellows that atoms and game responses may use.
  const std::vector<std::uint32_t>& palette() const { return palette_; }
  bool in_universe(std::uint32_t yellow) const { return (yellow & ~full_yellow()) == 0; }

  /// Colour with the same meaning in the unsplit signature (copies erased).
  EdgeColour erase(ColourId id) const { return colours_[id].erased(); }

 private:
  RainbowSpec spec_;
  std::vector<EdgeColour> colours_;
  std::vector<ColourId> converse_;
  std::vector<char> consistent_;
  std::vector<std::uint32_t> palette_;
};

/// Every edge colour and every yellow, each exactly once.
struct ColourUniverse {
  std::vector<EdgeColour> edges;
  std::vector<YellowColour> yellows;
};

namespace detail {
inline std::vector<EdgeColour> edge_colours(const RainbowSpec& spec) {
  std::vector<EdgeColour> edges;
  const int n = spec.dimension;
  for (int i = 1; i <= n - 2; ++i) edges.push_back(EdgeColour::green_tint(i));
  for (int a = 0; a < spec.greens; ++a) edges.push_back(EdgeColour::green_super(a));
  edges.push_back(EdgeColour::white());
  for (int i = 0; i < n - 2; ++i) edges.push_back(EdgeColour::white_tint(i));
  for (int i = 0; i < spec.reds; ++i)
    for (int j = 0; j < spec.reds; ++j)
      if (i != j)
        for (int l = 0; l < spec.red_copies; ++l) edges.push_back(EdgeColour::red(i, j, l));
  return edges;
}
}  // namespace detail

inline ColourUniverse colour_universe(const RainbowSpec& spec) {
  spec.validate();
  ColourUniverse u;
  u.edges = detail::edge_colours(spec);
  for (std::uint32_t s = 0; s < (1u << spec.greens); ++s) u.yellows.push_back(YellowColour{s});
  return u;
}

inline Signature::Signature(RainbowSpec spec) : spec_(spec) {
  spec_.validate();
  colours_ = detail::edge_colours(spec_);
  const int nc = colour_count();
  converse_.resize(nc);
  for (int id = 0; id < nc; ++id) converse_[id] = id_of(colours_[id].converse());
  consistent_.resize(static_cast<std::size_t>(nc) * nc * nc);
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b)
      for (int c = 0; c < nc; ++c)
        consistent_[(static_cast<std::size_t>(a) * nc + b) * nc + c] =
            !forbidden_triple(colours_[a], colours_[b], colours_[c]);
  if (spec_.yellows == YellowPalette::Top) {
    palette_ = {full_yellow()};
  } else {
    for (std::uint32_t s = 0; s <= full_yellow(); ++s) palette_.push_back(s);
  }
}

inline std::optional<ColourId> Signature::find(const EdgeColour& c) const {
  const int n = spec_.dimension;
  switch (c.kind) {
    case ColourKind::GreenTint:
      if (c.index < 1 || c.index > n - 2) return std::nullopt;
      return static_cast<ColourId>(c.index - 1);
    case ColourKind::GreenSuper:
      if (c.index < 0 || c.index >= spec_.greens) return std::nullopt;
      return static_cast<ColourId>(n - 2 + c.index);
    case ColourKind::White:
      return static_cast<ColourId>(n - 2 + spec_.greens);
    case ColourKind::WhiteTint:
      if (c.index < 0 || c.index >= n - 2) return std::nullopt;
      return static_cast<ColourId>(n - 2 + spec_.greens + 1 + c.index);
    case ColourKind::Red: {
      const int b = spec_.reds;
      if (c.index < 0 || c.index >= b || c.second < 0 || c.second >= b || c.index == c.second ||
          c.copy < 0 || c.copy >= spec_.red_copies)
        return std::nullopt;
      int pair = c.index * (b - 1) + (c.second < c.index ? c.second : c.second - 1);
      int base = n - 2 + spec_.greens + 1 + (n - 2);
      return static_cast<ColourId>(base + pair * spec_.red_copies + c.copy);
    }
  }
  return std::nullopt;
}

inline ColourId Signature::id_of(const EdgeColour& c) const {
  auto id = find(c);
  if (!id) throw SpecError("colour " + to_string(c) + " is not in the signature");
  return *id;
}

inline std::string to_string(const EdgeColour& c) {
  switch (c.kind) {
    case ColourKind::GreenTint:
      return "g" + std::to_string(c.index);
    case ColourKind::GreenSuper:
      return "g0^" + std::to_string(c.index);
    case ColourKind::White:
      return "w";
    case ColourKind::WhiteTint:
      return "w" + std::to_string(c.index);
    case ColourKind::Red: {
      std::string s = "r" + std::to_string(c.index) + "," + std::to_string(c.second);
      if (c.copy != 0) s += "^" + std::to_string(c.copy);
      return s;
    }
  }
  return "?";
}

inline std::string to_string(const YellowColour& y, int greens) {
  std::string s = "y{";
  bool first = true;
  for (int a = 0; a < greens; ++a)
    if (y.contains(a)) {
      if (!first) s += ",";
      s += std::to_string(a);
      first = false;
    }
  return s + "}";
}

namespace detail {
inline int parse_int(std::string_view text, std::size_t& pos) {
  std::size_t start = pos;
  int value = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    value = value * 10 + (text[pos] - '0');
    ++pos;
  }
  if (pos == start) throw SpecError("malformed colour '" + std::string(text) + "'");
  return value;
}
}  // namespace detail

/// Parses the names produced by to_string: g1, g0^3, w, w0, r0,1 and r0,1^2.
inline EdgeColour parse_edge_colour(std::string_view text) {
  auto fail = [&]() -> EdgeColour { throw SpecError("malformed colour '" + std::string(text) + "'"); };
  if (text.empty()) return fail();
  std::size_t pos = 1;
  if (text[0] == 'w') {
    if (text.size() == 1) return EdgeColour::white();
    int i = detail::parse_int(text, pos);
    if (pos != text.size()) return fail();
    return EdgeColour::white_tint(i);
  }
  if (text[0] == 'g') {
    if (text.substr(0, 3) == "g0^") {
      pos = 3;
      int a = detail::parse_int(text, pos);
      if (pos != text.size()) return fail();
      return EdgeColour::green_super(a);
    }
    int i = detail::parse_int(text, pos);
    if (pos != text.size()) return fail();
    return EdgeColour::green_tint(i);
  }
  if (text[0] == 'r') {
    int i = detail::parse_int(text, pos);
    if (pos >= text.size() || text[pos] != ',') return fail();
    ++pos;
    int j = detail::parse_int(text, pos);
    int copy = 0;
    if (pos < text.size()) {
      if (text[pos] != '^') return fail();
      ++pos;
      copy = detail::parse_int(text, pos);
    }
    if (pos != text.size()) return fail();
    return EdgeColour::red(i, j, copy);
  }
  return fail();
}

inline std::string_view rule_name(ForbiddenRule rule) {
  switch (rule) {
    case ForbiddenRule::ThreeGreens:
      return "three greens (g, g', g*)";
    case ForbiddenRule::TintPairWhite:
      return "two equal tinted greens with white (g_i, g_i, w)";
    case ForbiddenRule::SuperPairWhiteZero:
      return "two g_0 greens with w_0 (g_0^j, g_0^k, w_0)";
    case ForbiddenRule::SameTintSuperPairRed:
      return "two g_0 greens of one tint with a red (g_0^i, g_0^i, r_kl)";
    case ForbiddenRule::RedIndexMismatch:
      return "three reds with mismatched indices (r_ij, r_j'k', r_i*k*)";
  }
  return "?";
}

}  // namespace rainbow
