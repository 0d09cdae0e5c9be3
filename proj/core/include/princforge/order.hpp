#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "princforge/errors.hpp"

namespace princforge {

/// Element identifiers are plain text tokens. All element vectors are kept
/// sorted lexicographically so every iteration order is reproducible.
using ElementId = std::string;

using IdPair = std::pair<ElementId, ElementId>;

/// A finite ordered set with designated distinct bottom and top.
/// The order is stored as the reflexive-transitive closure of whatever
/// generating relation was supplied, so callers may pass covers only.
class BoundedPoset {
public:
  /// Validates and closes the relation. Throws Error(invalid_input) on
  /// duplicate ids, cycles (antisymmetry, with a witness cycle in the
  /// message), missing or non-extremal bounds, or bottom == top.
  static BoundedPoset build(std::vector<ElementId> elements,
                            const std::vector<IdPair>& relation,
                            const ElementId& bottom, const ElementId& top);

  std::size_t size() const { return ids_.size(); }
  const std::vector<ElementId>& elements() const { return ids_; }

  std::size_t index_of(const ElementId& id) const;
  const ElementId& id_of(std::size_t i) const { return ids_[i]; }
  bool contains(const ElementId& id) const;

  bool leq(std::size_t a, std::size_t b) const {
    return (up_[a * words_ + b / 64] >> (b % 64)) & 1u;
  }
  bool leq_ids(const ElementId& a, const ElementId& b) const {
    return leq(index_of(a), index_of(b));
  }
  bool lt(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }

  std::size_t bottom() const { return bottom_; }
  std::size_t top() const { return top_; }

  /// Hasse diagram edges (a, b) with a covered by b, in index order.
  std::vector<std::pair<std::size_t, std::size_t>> cover_pairs() const;

  /// Indices of all elements except bottom and top.
  std::vector<std::size_t> interior() const;

  /// All strict comparable interior pairs (a, b) with a < b in the order.
  std::vector<std::pair<std::size_t, std::size_t>> interior_strict_pairs() const;

  /// Induced subposet on the given indices; bounds must be included.
  BoundedPoset restrict_to(std::span<const std::size_t> subset) const;

  bool same_order_as(const BoundedPoset& other) const;

private:
  BoundedPoset() = default;
  friend class PosetBuilder;

  std::vector<ElementId> ids_;  // sorted
  std::size_t words_ = 0;
  std::vector<std::uint64_t> up_;  // row-major bit rows: up_[a] = {b : a <= b}
  std::size_t bottom_ = 0;
  std::size_t top_ = 0;
};

struct InteriorClassification {
  std::vector<std::size_t> interior;  // P minus bounds
  std::vector<std::size_t> isolated;  // interior elements comparable to no other interior element
};

InteriorClassification classify_interior(const BoundedPoset& p);

/// The nonempty down-closed subsets of a poset (or of an induced subset of
/// one), ordered by inclusion. Members are enumerated deterministically,
/// sorted by size and then lexicographically by member indices.
class DownSetFamily {
public:
  std::size_t size() const { return members_.size(); }
  const std::vector<ElementId>& base() const { return base_ids_; }
  const std::vector<std::vector<std::size_t>>& members() const { return members_; }
  std::vector<ElementId> member_ids(std::size_t m) const;
  bool subset_leq(std::size_t a, std::size_t b) const;  // inclusion
  std::optional<std::size_t> index_of_member(const std::vector<ElementId>& ids) const;

private:
  friend DownSetFamily nonempty_down_sets(const BoundedPoset&);
  friend DownSetFamily nonempty_down_sets(const BoundedPoset&,
                                          std::span<const std::size_t>);
  std::vector<ElementId> base_ids_;                 // sorted
  std::vector<std::vector<std::size_t>> members_;   // indices into base_ids_
  std::vector<std::uint64_t> masks_;
};

DownSetFamily nonempty_down_sets(const BoundedPoset& p);
DownSetFamily nonempty_down_sets(const BoundedPoset& p,
                                 std::span<const std::size_t> subset);

/// A total map between bounded posets, candidate for the isotone,
/// bounded, {0}-separating checks of validate_map.
class IsotoneMap {
public:
  /// Throws Error(invalid_input) if the assignment is not total or uses
  /// unknown ids. No order conditions are checked here; see validate_map.
  static IsotoneMap build(BoundedPoset domain, BoundedPoset codomain,
                          const std::vector<IdPair>& pairs);

  const BoundedPoset& domain() const { return domain_; }
  const BoundedPoset& codomain() const { return codomain_; }
  std::size_t apply(std::size_t domain_index) const { return map_[domain_index]; }
  ElementId apply_id(const ElementId& id) const {
    return codomain_.id_of(map_[domain_.index_of(id)]);
  }
  const std::vector<std::size_t>& assignment() const { return map_; }

private:
  BoundedPoset domain_, codomain_;
  std::vector<std::size_t> map_;
};

struct MapCheck {
  bool pass = false;
  std::optional<IdPair> witness;  // offending pair (or element, element) on failure
};

struct MapValidation {
  MapCheck isotone;
  MapCheck bounded;           // psi(0)=0 and psi(1)=1
  MapCheck zero_separating;   // only 0 maps to 0
  bool all_pass() const { return isotone.pass && bounded.pass && zero_separating.pass; }
};

MapValidation validate_map(const IsotoneMap& psi);

struct GlueBoundsResult {
  BoundedPoset glued;                       // R
  std::vector<IdPair> renames;              // (original right id, id used in R)
  std::vector<ElementId> left_interior;     // tokens of P^- inside R
  std::vector<ElementId> right_interior;    // tokens of Q^- inside R (post rename)
};

/// Disjoint union with the two bottoms and the two tops identified.
/// Interior id collisions are resolved by suffixing ":<right_tag>" to the
/// right-hand element; every rename is recorded.
GlueBoundsResult glue_bounds(const BoundedPoset& left, const BoundedPoset& right,
                             const std::string& right_tag = "Q");

/// Exact backtracking search with invariant pruning (degree/height/down-set
/// size refinement). Bottom maps to bottom and top to top. Deterministic:
/// the lexicographically first isomorphism in the pruned search order.
std::optional<std::vector<IdPair>> order_isomorphism(const BoundedPoset& a,
                                                     const BoundedPoset& b);

}  // namespace princforge
