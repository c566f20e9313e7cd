#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexlearn {

/// A set of leaf types, the canonical value of any boolean type expression.
///
/// Unification is intersection, union is set union, and the empty set is
/// bottom (failed unification). Leaves are addressed by their index in the
/// owning TypeHierarchy; at most kMaxLeaves leaves are supported.
class LeafSet {
 public:
  static constexpr std::size_t kMaxLeaves = 64;

  constexpr LeafSet() = default;
  static constexpr LeafSet from_bits(std::uint64_t bits) { return LeafSet{bits}; }
  static constexpr LeafSet single(std::size_t leaf) { return LeafSet{std::uint64_t{1} << leaf}; }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(std::size_t leaf) const { return (bits_ >> leaf) & 1U; }
  constexpr int count() const { return std::popcount(bits_); }

  /// true iff every leaf of `other` is also in this set.
  constexpr bool includes(LeafSet other) const { return (other.bits_ & ~bits_) == 0; }
  constexpr bool strictly_includes(LeafSet other) const { return includes(other) && bits_ != other.bits_; }
  constexpr bool intersects(LeafSet other) const { return (bits_ & other.bits_) != 0; }

  constexpr LeafSet operator&(LeafSet o) const { return LeafSet{bits_ & o.bits_}; }
  constexpr LeafSet operator|(LeafSet o) const { return LeafSet{bits_ | o.bits_}; }
  constexpr LeafSet minus(LeafSet o) const { return LeafSet{bits_ & ~o.bits_}; }
  constexpr LeafSet& operator&=(LeafSet o) { bits_ &= o.bits_; return *this; }
  constexpr LeafSet& operator|=(LeafSet o) { bits_ |= o.bits_; return *this; }

  constexpr bool operator==(const LeafSet&) const = default;
  constexpr auto operator<=>(const LeafSet&) const = default;

  /// Leaf indices in ascending order.
  std::vector<std::size_t> leaves() const;

 private:
  constexpr explicit LeafSet(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

/// Greatest lower bound. An empty result means the types do not unify.
constexpr LeafSet unify_types(LeafSet a, LeafSet b) { return a & b; }
/// Least upper bound.
constexpr LeafSet union_types(LeafSet a, LeafSet b) { return a | b; }
/// true iff `b` is at least as specific as `a`.
constexpr bool subsumes(LeafSet a, LeafSet b) { return a.includes(b); }
constexpr bool strictly_subsumes(LeafSet a, LeafSet b) { return a.strictly_includes(b); }

/// Closed-world type system over a finite leaf alphabet.
///
/// Every named type denotes a nonempty set of leaves. The marker leaves
/// `u_g` (unknown generalizable) and `u_s` (unknown specializable) are kept
/// disjoint from every declared content type. The list leaves `elist` and
/// `nelist` back the first/rest list encoding of feature structures.
///
/// Immutable once loaded.
class TypeHierarchy {
 public:
  /// Parses the line-oriented declaration format:
  ///
  ///     leaf fem masc neut
  ///     type non_fem = masc | neut   # comment
  ///
  /// Operands may name types declared later in the file. Throws SyntaxError
  /// with the offending line on duplicate names, unknown names, cycles and
  /// empty denotations.
  static TypeHierarchy parse(std::string_view text);
  static TypeHierarchy load(const std::string& path);

  std::size_t leaf_count() const { return leaves_.size(); }
  const std::vector<std::string>& leaf_names() const { return leaves_; }
  /// Declared non-leaf names with their denotations.
  const std::map<std::string, LeafSet>& named_types() const { return named_; }

  LeafSet top() const { return top_; }

  /// Looks up a leaf or named type; `top` is always defined.
  std::optional<LeafSet> find(std::string_view name) const;
  /// Like find, but throws Error for unknown names.
  LeafSet at(std::string_view name) const;

  /// Parses `a∨b`, `a\/b` or `a | b` into the union of the named denotations.
  /// `⊥` and `bottom` denote the empty set.
  LeafSet parse_expression(std::string_view expr) const;

  /// Renders a set using declared names.
  ///
  /// A set equal to a declared denotation renders as that name. Otherwise
  /// marker leaves come first, followed by a greedy exact cover that prefers
  /// the largest contained denotation (ties broken lexicographically), all
  /// joined by `∨`. With `hide_u_s` the u_s marker is omitted.
  std::string display(LeafSet set, bool hide_u_s = false) const;

  std::optional<LeafSet> u_g() const { return u_g_; }
  std::optional<LeafSet> u_s() const { return u_s_; }
  /// Both markers together (empty if none are declared).
  LeafSet markers() const;

  /// List encoding types: cons cells, the closed end, and an open tail.
  /// Throws Error when the hierarchy does not declare `elist`/`nelist`.
  LeafSet list_cons() const;
  LeafSet list_end() const;
  LeafSet list_open() const { return list_cons() | list_end(); }
  bool has_lists() const { return nelist_.has_value() && elist_.has_value(); }

 private:
  std::vector<std::string> leaves_;
  std::map<std::string, std::size_t, std::less<>> leaf_index_;
  std::map<std::string, LeafSet> named_;
  LeafSet top_;
  std::optional<LeafSet> u_g_;
  std::optional<LeafSet> u_s_;
  std::optional<LeafSet> nelist_;
  std::optional<LeafSet> elist_;
};

}  // namespace lexlearn
