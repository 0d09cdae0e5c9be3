#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "princforge/order.hpp"

namespace princforge {

/// Produced when an order fails lattice certification: a pair whose set of
/// minimal upper bounds (join_side) or maximal lower bounds is not a
/// singleton.
struct NotALatticeWitness {
  ElementId x, y;
  bool join_side = true;
  std::vector<ElementId> candidates;
  std::string describe() const;
};

/// A finite lattice: a bounded poset whose join/meet tables are materialized
/// and exhaustively certified (LUB/GLB agreement, associativity, absorption)
/// at construction time.
class FiniteLattice {
public:
  const BoundedPoset& carrier() const { return carrier_; }
  std::size_t size() const { return carrier_.size(); }
  std::size_t bottom() const { return carrier_.bottom(); }
  std::size_t top() const { return carrier_.top(); }
  const ElementId& id_of(std::size_t i) const { return carrier_.id_of(i); }
  std::size_t index_of(const ElementId& id) const { return carrier_.index_of(id); }
  bool leq(std::size_t a, std::size_t b) const { return carrier_.leq(a, b); }

  std::size_t join(std::size_t a, std::size_t b) const {
    return join_[a * size() + b];
  }
  std::size_t meet(std::size_t a, std::size_t b) const {
    return meet_[a * size() + b];
  }

  /// Pair (x join y, x meet y) by element id; unknown ids are invalid_input.
  std::pair<ElementId, ElementId> ops_eval(const ElementId& x,
                                           const ElementId& y) const;

  /// Lower covers of an element.
  std::vector<std::size_t> lower_covers(std::size_t x) const;
  /// True iff x = u join v for some u, v strictly below x.
  bool join_reducible(std::size_t x) const;

private:
  friend std::variant<FiniteLattice, NotALatticeWitness> lattice_from_order(
      const BoundedPoset&);
  BoundedPoset carrier_;
  std::vector<std::uint16_t> join_, meet_;
};

/// Certifies an order as a lattice; on failure returns the first failing
/// pair in index order.
std::variant<FiniteLattice, NotALatticeWitness> lattice_from_order(
    const BoundedPoset& p);

/// Same, but failure throws Error(construction_failure).
FiniteLattice lattice_from_order_or_throw(const BoundedPoset& p);

struct SublatticeWitness {
  ElementId x, y;
  bool join_side = true;
  ElementId result;  // the join/meet that escapes the subset
  std::string describe() const;
};

/// nullopt = the subset is closed under both operations.
std::optional<SublatticeWitness> is_sublattice(const FiniteLattice& l,
                                               std::span<const std::size_t> subset);

/// The subset as a lattice of its own (tables restricted). Requires
/// is_sublattice to pass and both bounds to be in the subset.
FiniteLattice sublattice_view(const FiniteLattice& l,
                              std::span<const std::size_t> subset);

/// Role labels tying elements to their structural roles: "o", "i", "a0",
/// "a1", "a(p)", "b(p)", "x(p,q)", "s(p,q):k". One element may carry several
/// roles (the two-element frame aliases a0 to o and a1 to i).
class Labeling {
public:
  void set(const std::string& role, const ElementId& element);
  bool has(const std::string& role) const { return roles_.count(role) > 0; }
  const ElementId& element_of(const std::string& role) const;
  const std::map<std::string, ElementId>& roles() const { return roles_; }
  std::vector<std::string> roles_of(const ElementId& element) const;
  void merge(const Labeling& other);  // invalid_input on conflicting role

private:
  std::map<std::string, ElementId> roles_;
};

struct LatticePart {
  FiniteLattice lattice;
  Labeling labels;
};

struct GlueOrdersResult {
  BoundedPoset order;
  Labeling labels;  // merged labels, rewritten onto the glued element names
};

/// Union of the part orders after identifying equally-labeled elements
/// (labels sharing an element alias transitively), transitively closed.
/// All parts must share the bound roles "o" and "i". Cycles across parts are
/// invalid_input with the cycle reported. Unlabeled elements keep their ids
/// and must be distinct across parts.
GlueOrdersResult glue_orders(std::span<const LatticePart> parts);

struct SlimResult {
  FiniteLattice lattice;
  ElementId deleted;
  ElementId lower_cover;        // the unique element the deleted one covered
  std::size_t remapped_meets;   // incomparable pairs whose meet dropped to the cover
};

/// Deletes a join-irreducible non-bound element with a unique lower cover.
/// Joins are unchanged, meets that evaluated to x drop to its cover; the
/// result is re-certified from scratch. Violations throw
/// Error(construction_failure) with a witness description.
SlimResult slim(const FiniteLattice& l, const ElementId& x);

}  // namespace princforge
