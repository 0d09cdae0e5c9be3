#include "princforge/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace princforge {

std::string NotALatticeWitness::describe() const {
  std::ostringstream os;
  os << "(" << x << ", " << y << ") has no unique "
     << (join_side ? "least upper" : "greatest lower") << " bound; "
     << (join_side ? "minimal upper" : "maximal lower") << " bounds: {";
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    os << (i ? ", " : "") << candidates[i];
  }
  os << "}";
  return os.str();
}

std::string SublatticeWitness::describe() const {
  std::ostringstream os;
  os << x << (join_side ? " join " : " meet ") << y << " = " << result
     << " escapes the subset";
  return os.str();
}

std::variant<FiniteLattice, NotALatticeWitness> lattice_from_order(
    const BoundedPoset& p) {
  const std::size_t n = p.size();
  if (n > 65535) fail(ErrorKind::size_guard, "lattice carrier too large");
  FiniteLattice l;
  l.carrier_ = p;
  l.join_.assign(n * n, 0);
  l.meet_.assign(n * n, 0);
  std::vector<std::size_t> bounds;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      for (int side = 0; side < 2; ++side) {
        const bool join_side = (side == 0);
        bounds.clear();
        for (std::size_t c = 0; c < n; ++c) {
          const bool ok = join_side ? (p.leq(a, c) && p.leq(b, c))
                                    : (p.leq(c, a) && p.leq(c, b));
          if (ok) bounds.push_back(c);
        }
        std::size_t best = n;
        for (std::size_t c : bounds) {
          bool extremal = true;
          for (std::size_t d : bounds) {
            if (join_side ? !p.leq(c, d) : !p.leq(d, c)) {
              extremal = false;
              break;
            }
          }
          if (extremal) {
            best = c;
            break;
          }
        }
        if (best == n) {
          NotALatticeWitness w;
          w.x = p.id_of(a);
          w.y = p.id_of(b);
          w.join_side = join_side;
          for (std::size_t c : bounds) {
            bool minimal = true;
            for (std::size_t d : bounds) {
              if (d != c && (join_side ? p.leq(d, c) : p.leq(c, d))) {
                minimal = false;
                break;
              }
            }
            if (minimal) w.candidates.push_back(p.id_of(c));
          }
          return w;
        }
        auto& table = join_side ? l.join_ : l.meet_;
        table[a * n + b] = table[b * n + a] = static_cast<std::uint16_t>(best);
      }
    }
  }
  // Algebraic laws, checked exhaustively. Commutativity holds by symmetric
  // fill; idempotence and absorption are n^2, associativity n^3.
  for (std::size_t a = 0; a < n; ++a) {
    if (l.join(a, a) != a || l.meet(a, a) != a) {
      fail(ErrorKind::engine_bug, "idempotence failed");
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (l.join(a, l.meet(a, b)) != a || l.meet(a, l.join(a, b)) != a) {
        fail(ErrorKind::engine_bug, "absorption failed");
      }
      const bool le = p.leq(a, b);
      if ((l.join(a, b) == b) != le || (l.meet(a, b) == a) != le) {
        fail(ErrorKind::engine_bug, "order/table disagreement");
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (l.join(l.join(a, b), c) != l.join(a, l.join(b, c)) ||
            l.meet(l.meet(a, b), c) != l.meet(a, l.meet(b, c))) {
          fail(ErrorKind::engine_bug, "associativity failed");
        }
      }
    }
  }
  return l;
}

FiniteLattice lattice_from_order_or_throw(const BoundedPoset& p) {
  auto r = lattice_from_order(p);
  if (auto* w = std::get_if<NotALatticeWitness>(&r)) {
    fail(ErrorKind::construction_failure, "order is not a lattice: " + w->describe());
  }
  return std::get<FiniteLattice>(std::move(r));
}

std::pair<ElementId, ElementId> FiniteLattice::ops_eval(const ElementId& x,
                                                        const ElementId& y) const {
  const std::size_t a = index_of(x), b = index_of(y);
  return {id_of(join(a, b)), id_of(meet(a, b))};
}

std::vector<std::size_t> FiniteLattice::lower_covers(std::size_t x) const {
  std::vector<std::size_t> out;
  const std::size_t n = size();
  for (std::size_t y = 0; y < n; ++y) {
    if (y == x || !leq(y, x)) continue;
    bool cover = true;
    for (std::size_t z = 0; z < n && cover; ++z) {
      if (z != x && z != y && leq(y, z) && leq(z, x)) cover = false;
    }
    if (cover) out.push_back(y);
  }
  return out;
}

bool FiniteLattice::join_reducible(std::size_t x) const {
  const std::size_t n = size();
  for (std::size_t u = 0; u < n; ++u) {
    if (u == x || !leq(u, x)) continue;
    for (std::size_t v = u + 1; v < n; ++v) {
      if (v == x || !leq(v, x)) continue;
      if (join(u, v) == x) return true;
    }
  }
  return false;
}

std::optional<SublatticeWitness> is_sublattice(const FiniteLattice& l,
                                               std::span<const std::size_t> subset) {
  std::vector<bool> in(l.size(), false);
  for (std::size_t i : subset) in[i] = true;
  for (std::size_t a : subset) {
    for (std::size_t b : subset) {
      if (!in[l.join(a, b)]) {
        return SublatticeWitness{l.id_of(a), l.id_of(b), true, l.id_of(l.join(a, b))};
      }
      if (!in[l.meet(a, b)]) {
        return SublatticeWitness{l.id_of(a), l.id_of(b), false, l.id_of(l.meet(a, b))};
      }
    }
  }
  return std::nullopt;
}

FiniteLattice sublattice_view(const FiniteLattice& l,
                              std::span<const std::size_t> subset) {
  if (auto w = is_sublattice(l, subset)) {
    fail(ErrorKind::invalid_input, "not a sublattice: " + w->describe());
  }
  std::vector<std::size_t> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  // In a sublattice the restricted table entries are the LUB/GLB of the
  // restricted order, so certification from the restricted order suffices.
  return lattice_from_order_or_throw(l.carrier().restrict_to(s));
}

void Labeling::set(const std::string& role, const ElementId& element) {
  auto [it, inserted] = roles_.emplace(role, element);
  if (!inserted && it->second != element) {
    fail(ErrorKind::invalid_input,
         "role " + role + " already labels " + it->second);
  }
}

const ElementId& Labeling::element_of(const std::string& role) const {
  auto it = roles_.find(role);
  if (it == roles_.end()) fail(ErrorKind::invalid_input, "no element with role " + role);
  return it->second;
}

std::vector<std::string> Labeling::roles_of(const ElementId& element) const {
  std::vector<std::string> out;
  for (const auto& [role, el] : roles_) {
    if (el == element) out.push_back(role);
  }
  return out;
}

void Labeling::merge(const Labeling& other) {
  for (const auto& [role, el] : other.roles()) set(role, el);
}

GlueOrdersResult glue_orders(std::span<const LatticePart> parts) {
  if (parts.empty()) fail(ErrorKind::invalid_input, "glue_orders needs at least one part");
  // Union-find over identification keys: every role of an element and, for
  // unlabeled elements, a per-part fallback key.
  std::map<std::string, std::size_t> key_index;
  std::vector<std::size_t> parent;
  auto key_of = [&](const std::string& k) {
    auto [it, inserted] = key_index.emplace(k, parent.size());
    if (inserted) parent.push_back(it->second);
    return it->second;
  };
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<std::size_t>> part_elem_key(parts.size());
  std::set<std::string> fallback_seen;
  for (std::size_t pi = 0; pi < parts.size(); ++pi) {
    const auto& part = parts[pi];
    if (!part.labels.has("o") || !part.labels.has("i")) {
      fail(ErrorKind::invalid_input, "every part must label its bounds o and i");
    }
    if (part.labels.element_of("o") != part.lattice.id_of(part.lattice.bottom()) ||
        part.labels.element_of("i") != part.lattice.id_of(part.lattice.top())) {
      fail(ErrorKind::invalid_input, "o/i labels must sit on the part bounds");
    }
    part_elem_key[pi].resize(part.lattice.size());
    for (std::size_t e = 0; e < part.lattice.size(); ++e) {
      const ElementId& id = part.lattice.id_of(e);
      auto roles = part.labels.roles_of(id);
      std::size_t k;
      if (roles.empty()) {
        const std::string fb = "#" + id;
        if (!fallback_seen.insert(fb).second) {
          fail(ErrorKind::invalid_input,
               "unlabeled element id collides across parts: " + id);
        }
        k = key_of(fb);
      } else {
        k = key_of("@" + roles.front());
        for (std::size_t r = 1; r < roles.size(); ++r) {
          std::size_t k2 = key_of("@" + roles[r]);
          parent[find(k2)] = find(k);
        }
      }
      part_elem_key[pi][e] = k;
    }
  }
  // Name each class: lexicographically least role if any, else the fallback id.
  std::map<std::size_t, std::string> class_name;
  for (const auto& [key, idx] : key_index) {
    const std::size_t root = find(idx);
    std::string name = key.substr(1);
    auto it = class_name.find(root);
    const bool is_role = key[0] == '@';
    if (it == class_name.end()) {
      class_name[root] = name;
    } else if (is_role && name < it->second) {
      // roles win over fallbacks only when lexicographically smaller too;
      // any role name is preferred to a raw id of a labeled element, but a
      // labeled element always has at least one role key, so plain
      // lexicographic choice among role keys is enough.
      it->second = name;
    }
  }
  std::vector<ElementId> elements;
  std::set<ElementId> names_seen;
  for (const auto& [root, name] : class_name) {
    if (!names_seen.insert(name).second) {
      fail(ErrorKind::invalid_input, "glued element name collision: " + name);
    }
  }
  std::vector<IdPair> rel;
  Labeling labels;
  for (std::size_t pi = 0; pi < parts.size(); ++pi) {
    const auto& part = parts[pi];
    auto name_of = [&](std::size_t e) {
      return class_name.at(find(part_elem_key[pi][e]));
    };
    for (std::size_t e = 0; e < part.lattice.size(); ++e) {
      elements.push_back(name_of(e));
      for (const auto& role : part.labels.roles_of(part.lattice.id_of(e))) {
        labels.set(role, name_of(e));
      }
    }
    for (std::size_t a = 0; a < part.lattice.size(); ++a) {
      for (std::size_t b = 0; b < part.lattice.size(); ++b) {
        if (a != b && part.lattice.leq(a, b)) rel.emplace_back(name_of(a), name_of(b));
      }
    }
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  GlueOrdersResult out;
  out.order = BoundedPoset::build(std::move(elements), rel, labels.element_of("o"),
                                  labels.element_of("i"));
  out.labels = std::move(labels);
  return out;
}

SlimResult slim(const FiniteLattice& l, const ElementId& x_id) {
  const std::size_t n = l.size();
  const std::size_t x = l.index_of(x_id);
  if (x == l.bottom() || x == l.top()) {
    fail(ErrorKind::construction_failure, "cannot slim a bound: " + x_id);
  }
  const auto covers = l.lower_covers(x);
  if (covers.size() != 1) {
    std::ostringstream os;
    os << x_id << " has " << covers.size() << " lower covers";
    fail(ErrorKind::construction_failure, os.str());
  }
  for (std::size_t u = 0; u < n; ++u) {
    if (u == x || !l.leq(u, x)) continue;
    for (std::size_t v = u + 1; v < n; ++v) {
      if (v == x || !l.leq(v, x)) continue;
      if (l.join(u, v) == x) {
        fail(ErrorKind::construction_failure,
             "join-reducible: " + l.id_of(u) + " join " + l.id_of(v) + " = " + x_id);
      }
    }
  }
  const std::size_t xstar = covers.front();
  std::vector<std::size_t> keep;
  for (std::size_t e = 0; e < n; ++e) {
    if (e != x) keep.push_back(e);
  }
  SlimResult out;
  out.lattice = lattice_from_order_or_throw(l.carrier().restrict_to(keep));
  out.deleted = x_id;
  out.lower_cover = l.id_of(xstar);
  out.remapped_meets = 0;
  // Joins must be untouched; meets may only move from x to its cover.
  for (std::size_t a : keep) {
    for (std::size_t b : keep) {
      if (a >= b) continue;
      const std::size_t a2 = out.lattice.index_of(l.id_of(a));
      const std::size_t b2 = out.lattice.index_of(l.id_of(b));
      if (out.lattice.id_of(out.lattice.join(a2, b2)) != l.id_of(l.join(a, b))) {
        fail(ErrorKind::engine_bug, "slim changed a join");
      }
      std::size_t expected = l.meet(a, b);
      if (expected == x) {
        expected = xstar;
        if (!l.leq(a, b) && !l.leq(b, a)) ++out.remapped_meets;
      }
      if (out.lattice.id_of(out.lattice.meet(a2, b2)) != l.id_of(expected)) {
        fail(ErrorKind::engine_bug, "slim meet remap mismatch");
      }
    }
  }
  return out;
}

}  // namespace princforge
