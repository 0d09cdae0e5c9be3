#include "princforge/order.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace princforge {

namespace {

std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

void set_bit(std::vector<std::uint64_t>& rows, std::size_t words, std::size_t a,
             std::size_t b) {
  rows[a * words + b / 64] |= std::uint64_t{1} << (b % 64);
}

bool get_bit(const std::vector<std::uint64_t>& rows, std::size_t words,
             std::size_t a, std::size_t b) {
  return (rows[a * words + b / 64] >> (b % 64)) & 1u;
}

// Transitive closure in place, bit-parallel Warshall.
void close(std::vector<std::uint64_t>& rows, std::size_t n, std::size_t words) {
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (get_bit(rows, words, i, k)) {
        for (std::size_t w = 0; w < words; ++w) {
          rows[i * words + w] |= rows[k * words + w];
        }
      }
    }
  }
}

}  // namespace

class PosetBuilder {
public:
  static BoundedPoset finish(std::vector<ElementId> ids, std::size_t words,
                             std::vector<std::uint64_t> up, std::size_t bottom,
                             std::size_t top) {
    BoundedPoset p;
    p.ids_ = std::move(ids);
    p.words_ = words;
    p.up_ = std::move(up);
    p.bottom_ = bottom;
    p.top_ = top;
    return p;
  }
};

BoundedPoset BoundedPoset::build(std::vector<ElementId> elements,
                                 const std::vector<IdPair>& relation,
                                 const ElementId& bottom, const ElementId& top) {
  if (elements.empty()) fail(ErrorKind::invalid_input, "poset has no elements");
  std::sort(elements.begin(), elements.end());
  for (std::size_t i = 0; i + 1 < elements.size(); ++i) {
    if (elements[i] == elements[i + 1]) {
      fail(ErrorKind::invalid_input, "duplicate element id: " + elements[i]);
    }
    if (elements[i].empty()) fail(ErrorKind::invalid_input, "empty element id");
  }
  auto index = [&](const ElementId& id) -> std::size_t {
    auto it = std::lower_bound(elements.begin(), elements.end(), id);
    if (it == elements.end() || *it != id) {
      fail(ErrorKind::invalid_input, "unknown element id: " + id);
    }
    return static_cast<std::size_t>(it - elements.begin());
  };
  if (bottom == top) fail(ErrorKind::invalid_input, "bottom and top must differ");
  const std::size_t n = elements.size();
  const std::size_t words = word_count(n);
  std::vector<std::uint64_t> up(n * words, 0);
  for (std::size_t i = 0; i < n; ++i) set_bit(up, words, i, i);
  const std::size_t bi = index(bottom);
  const std::size_t ti = index(top);
  for (const auto& [a, b] : relation) set_bit(up, words, index(a), index(b));
  for (std::size_t i = 0; i < n; ++i) {
    set_bit(up, words, bi, i);
    set_bit(up, words, i, ti);
  }
  close(up, n, words);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (get_bit(up, words, a, b) && get_bit(up, words, b, a)) {
        std::ostringstream os;
        os << "relation is not antisymmetric; cycle through {";
        bool first = true;
        for (std::size_t c = 0; c < n; ++c) {
          if (get_bit(up, words, a, c) && get_bit(up, words, c, a)) {
            os << (first ? "" : ", ") << elements[c];
            first = false;
          }
        }
        os << "}";
        fail(ErrorKind::invalid_input, os.str());
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!get_bit(up, words, bi, i)) {
      fail(ErrorKind::invalid_input, "bottom is not below " + elements[i]);
    }
    if (!get_bit(up, words, i, ti)) {
      fail(ErrorKind::invalid_input, "top is not above " + elements[i]);
    }
  }
  return PosetBuilder::finish(std::move(elements), words, std::move(up), bi, ti);
}

std::size_t BoundedPoset::index_of(const ElementId& id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) {
    fail(ErrorKind::invalid_input, "unknown element id: " + id);
  }
  return static_cast<std::size_t>(it - ids_.begin());
}

bool BoundedPoset::contains(const ElementId& id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

std::vector<std::pair<std::size_t, std::size_t>> BoundedPoset::cover_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !leq(a, b)) continue;
      bool covered = true;
      for (std::size_t c = 0; c < n && covered; ++c) {
        if (c != a && c != b && leq(a, c) && leq(c, b)) covered = false;
      }
      if (covered) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<std::size_t> BoundedPoset::interior() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (i != bottom_ && i != top_) out.push_back(i);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> BoundedPoset::interior_strict_pairs()
    const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto in = interior();
  for (std::size_t a : in) {
    for (std::size_t b : in) {
      if (a != b && leq(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

BoundedPoset BoundedPoset::restrict_to(std::span<const std::size_t> subset) const {
  std::vector<ElementId> ids;
  ids.reserve(subset.size());
  bool has_bottom = false, has_top = false;
  for (std::size_t i : subset) {
    ids.push_back(ids_[i]);
    has_bottom |= (i == bottom_);
    has_top |= (i == top_);
  }
  if (!has_bottom || !has_top) {
    fail(ErrorKind::invalid_input, "restriction must keep both bounds");
  }
  std::vector<IdPair> rel;
  for (std::size_t a : subset) {
    for (std::size_t b : subset) {
      if (a != b && leq(a, b)) rel.emplace_back(ids_[a], ids_[b]);
    }
  }
  return build(std::move(ids), rel, ids_[bottom_], ids_[top_]);
}

bool BoundedPoset::same_order_as(const BoundedPoset& other) const {
  return ids_ == other.ids_ && up_ == other.up_ && bottom_ == other.bottom_ &&
         top_ == other.top_;
}

InteriorClassification classify_interior(const BoundedPoset& p) {
  InteriorClassification out;
  out.interior = p.interior();
  for (std::size_t a : out.interior) {
    bool comparable = false;
    for (std::size_t b : out.interior) {
      if (a != b && (p.leq(a, b) || p.leq(b, a))) {
        comparable = true;
        break;
      }
    }
    if (!comparable) out.isolated.push_back(a);
  }
  return out;
}

namespace {

DownSetFamily down_sets_over(const BoundedPoset& p,
                             const std::vector<std::size_t>& subset) {
  const std::size_t n = subset.size();
  if (n > 20) fail(ErrorKind::size_guard, "down-set base larger than 20 elements");
  DownSetFamily fam;
  for (std::size_t i : subset) fam.base_ids_.push_back(p.id_of(i));
  // base_ids_ sorted because subset indices are ascending and ids_ is sorted
  std::vector<std::pair<std::uint64_t, std::vector<std::size_t>>> found;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    bool down = true;
    for (std::size_t hi = 0; hi < n && down; ++hi) {
      if (!((mask >> hi) & 1)) continue;
      for (std::size_t lo = 0; lo < n; ++lo) {
        if (((mask >> lo) & 1) == 0 && p.leq(subset[lo], subset[hi])) {
          down = false;
          break;
        }
      }
    }
    if (!down) continue;
    std::vector<std::size_t> ixs;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1) ixs.push_back(i);
    }
    found.emplace_back(mask, std::move(ixs));
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.second.size() != b.second.size()) return a.second.size() < b.second.size();
    return a.second < b.second;
  });
  for (auto& [mask, ixs] : found) {
    fam.masks_.push_back(mask);
    fam.members_.push_back(std::move(ixs));
  }
  return fam;
}

}  // namespace

std::vector<ElementId> DownSetFamily::member_ids(std::size_t m) const {
  std::vector<ElementId> out;
  for (std::size_t i : members_[m]) out.push_back(base_ids_[i]);
  return out;
}

bool DownSetFamily::subset_leq(std::size_t a, std::size_t b) const {
  return (masks_[a] & ~masks_[b]) == 0;
}

std::optional<std::size_t> DownSetFamily::index_of_member(
    const std::vector<ElementId>& ids) const {
  std::uint64_t mask = 0;
  for (const auto& id : ids) {
    auto it = std::lower_bound(base_ids_.begin(), base_ids_.end(), id);
    if (it == base_ids_.end() || *it != id) return std::nullopt;
    mask |= std::uint64_t{1} << (it - base_ids_.begin());
  }
  for (std::size_t m = 0; m < masks_.size(); ++m) {
    if (masks_[m] == mask) return m;
  }
  return std::nullopt;
}

DownSetFamily nonempty_down_sets(const BoundedPoset& p) {
  std::vector<std::size_t> all(p.size());
  std::iota(all.begin(), all.end(), 0);
  return down_sets_over(p, all);
}

DownSetFamily nonempty_down_sets(const BoundedPoset& p,
                                 std::span<const std::size_t> subset) {
  std::vector<std::size_t> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  return down_sets_over(p, s);
}

IsotoneMap IsotoneMap::build(BoundedPoset domain, BoundedPoset codomain,
                             const std::vector<IdPair>& pairs) {
  IsotoneMap m;
  m.map_.assign(domain.size(), domain.size());
  for (const auto& [a, b] : pairs) {
    const std::size_t ai = domain.index_of(a);
    const std::size_t bi = codomain.index_of(b);
    if (m.map_[ai] != domain.size() && m.map_[ai] != bi) {
      fail(ErrorKind::invalid_input, "map assigns " + a + " twice");
    }
    m.map_[ai] = bi;
  }
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (m.map_[i] == domain.size()) {
      fail(ErrorKind::invalid_input,
           "map is not total: no image for " + domain.id_of(i));
    }
  }
  m.domain_ = std::move(domain);
  m.codomain_ = std::move(codomain);
  return m;
}

MapValidation validate_map(const IsotoneMap& psi) {
  MapValidation v;
  const auto& d = psi.domain();
  const auto& c = psi.codomain();
  v.isotone.pass = true;
  for (std::size_t a = 0; a < d.size() && v.isotone.pass; ++a) {
    for (std::size_t b = 0; b < d.size(); ++b) {
      if (d.leq(a, b) && !c.leq(psi.apply(a), psi.apply(b))) {
        v.isotone.pass = false;
        v.isotone.witness = IdPair{d.id_of(a), d.id_of(b)};
        break;
      }
    }
  }
  v.bounded.pass = true;
  if (psi.apply(d.bottom()) != c.bottom()) {
    v.bounded.pass = false;
    v.bounded.witness = IdPair{d.id_of(d.bottom()), c.id_of(psi.apply(d.bottom()))};
  } else if (psi.apply(d.top()) != c.top()) {
    v.bounded.pass = false;
    v.bounded.witness = IdPair{d.id_of(d.top()), c.id_of(psi.apply(d.top()))};
  }
  v.zero_separating.pass = true;
  for (std::size_t a = 0; a < d.size(); ++a) {
    if (a != d.bottom() && psi.apply(a) == c.bottom()) {
      v.zero_separating.pass = false;
      v.zero_separating.witness = IdPair{d.id_of(a), c.id_of(c.bottom())};
      break;
    }
  }
  return v;
}

GlueBoundsResult glue_bounds(const BoundedPoset& left, const BoundedPoset& right,
                             const std::string& right_tag) {
  GlueBoundsResult out;
  const ElementId bottom = left.id_of(left.bottom());
  const ElementId top = left.id_of(left.top());
  std::set<ElementId> used;
  for (const auto& id : left.elements()) used.insert(id);
  std::map<ElementId, ElementId> right_name;
  right_name[right.id_of(right.bottom())] = bottom;
  right_name[right.id_of(right.top())] = top;
  if (right.id_of(right.bottom()) != bottom) {
    out.renames.emplace_back(right.id_of(right.bottom()), bottom);
  }
  if (right.id_of(right.top()) != top) {
    out.renames.emplace_back(right.id_of(right.top()), top);
  }
  for (std::size_t i : right.interior()) {
    ElementId id = right.id_of(i);
    if (used.count(id)) {
      ElementId renamed = id + ":" + right_tag;
      while (used.count(renamed)) renamed += "'";
      out.renames.emplace_back(id, renamed);
      id = renamed;
    }
    right_name[right.id_of(i)] = id;
    used.insert(id);
  }
  std::vector<ElementId> elements(used.begin(), used.end());
  std::vector<IdPair> rel;
  const std::size_t nl = left.size();
  for (std::size_t a = 0; a < nl; ++a) {
    for (std::size_t b = 0; b < nl; ++b) {
      if (a != b && left.leq(a, b)) rel.emplace_back(left.id_of(a), left.id_of(b));
    }
  }
  for (std::size_t a = 0; a < right.size(); ++a) {
    for (std::size_t b = 0; b < right.size(); ++b) {
      if (a != b && right.leq(a, b)) {
        rel.emplace_back(right_name.at(right.id_of(a)), right_name.at(right.id_of(b)));
      }
    }
  }
  out.glued = BoundedPoset::build(std::move(elements), rel, bottom, top);
  for (std::size_t i : left.interior()) out.left_interior.push_back(left.id_of(i));
  for (std::size_t i : right.interior()) {
    out.right_interior.push_back(right_name.at(right.id_of(i)));
  }
  std::sort(out.left_interior.begin(), out.left_interior.end());
  std::sort(out.right_interior.begin(), out.right_interior.end());
  return out;
}

namespace {

// Iterated degree/height refinement signature used to prune the
// isomorphism backtracking.
std::vector<std::size_t> refinement_colors(const BoundedPoset& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> color(n, 0);
  {
    std::vector<std::tuple<std::size_t, std::size_t>> sig(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t below = 0, above = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (p.leq(j, i)) ++below;
        if (p.leq(i, j)) ++above;
      }
      sig[i] = {below, above};
    }
    std::vector<std::tuple<std::size_t, std::size_t>> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t i = 0; i < n; ++i) {
      color[i] = static_cast<std::size_t>(
          std::lower_bound(sorted.begin(), sorted.end(), sig[i]) - sorted.begin());
    }
  }
  for (std::size_t round = 0; round < n; ++round) {
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> sig(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> neigh;
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && p.leq(i, j)) neigh.push_back(2 * color[j]);
        if (i != j && p.leq(j, i)) neigh.push_back(2 * color[j] + 1);
      }
      std::sort(neigh.begin(), neigh.end());
      sig[i] = {color[i], std::move(neigh)};
    }
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = static_cast<std::size_t>(
          std::lower_bound(sorted.begin(), sorted.end(), sig[i]) - sorted.begin());
    }
    if (next == color) break;
    color = std::move(next);
  }
  return color;
}

}  // namespace

std::optional<std::vector<IdPair>> order_isomorphism(const BoundedPoset& a,
                                                     const BoundedPoset& b) {
  const std::size_t n = a.size();
  if (n != b.size()) return std::nullopt;
  const auto ca = refinement_colors(a);
  const auto cb = refinement_colors(b);
  {
    auto sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  std::vector<std::size_t> image(n, n);
  std::vector<bool> used(n, false);
  auto compatible = [&](std::size_t x, std::size_t y) {
    if (ca[x] != cb[y]) return false;
    for (std::size_t z = 0; z < n; ++z) {
      if (image[z] == n) continue;
      if (a.leq(x, z) != b.leq(y, image[z])) return false;
      if (a.leq(z, x) != b.leq(image[z], y)) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t x) -> bool {
    while (x < n && image[x] != n) ++x;
    if (x == n) return true;
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || !compatible(x, y)) continue;
      image[x] = y;
      used[y] = true;
      if (self(self, x + 1)) return true;
      image[x] = n;
      used[y] = false;
    }
    return false;
  };
  image[a.bottom()] = b.bottom();
  used[b.bottom()] = true;
  image[a.top()] = b.top();
  used[b.top()] = true;
  if (ca[a.bottom()] != cb[b.bottom()] || ca[a.top()] != cb[b.top()]) {
    return std::nullopt;
  }
  if (!rec(rec, 0)) return std::nullopt;
  std::vector<IdPair> out;
  for (std::size_t x = 0; x < n; ++x) out.emplace_back(a.id_of(x), b.id_of(image[x]));
  return out;
}

}  // namespace princforge
