#include "polygrowth/rule.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

namespace polygrowth {

Neighborhood::Neighborhood(std::vector<Vec2i> offsets) : offsets_(std::move(offsets)) {
  std::vector<Vec2i> sorted = offsets_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("neighborhood has duplicate offsets");
  for (std::size_t i = 0; i < offsets_.size(); ++i) {
    if (offsets_[i] == Vec2i{0, 0}) origin_ = static_cast<int>(i);
    radius_ = std::max(radius_, chebyshev(offsets_[i]));
  }
}

Neighborhood Neighborhood::box(int range) {
  if (range < 0) throw std::invalid_argument("box range must be nonnegative");
  std::vector<Vec2i> v;
  for (int y = -range; y <= range; ++y)
    for (int x = -range; x <= range; ++x) v.push_back({x, y});
  return Neighborhood(std::move(v));
}

Neighborhood Neighborhood::diamond(int range) {
  if (range < 0) throw std::invalid_argument("diamond range must be nonnegative");
  std::vector<Vec2i> v;
  for (int y = -range; y <= range; ++y)
    for (int x = -range; x <= range; ++x)
      if (std::abs(x) + std::abs(y) <= range) v.push_back({x, y});
  return Neighborhood(std::move(v));
}

std::optional<int> Neighborhood::index_of(Vec2i v) const {
  for (std::size_t i = 0; i < offsets_.size(); ++i)
    if (offsets_[i] == v) return static_cast<int>(i);
  return std::nullopt;
}

Subset Neighborhood::mask_of(std::span<const Vec2i> subset) const {
  if (size() > kMaxMaskSites) throw std::invalid_argument("neighborhood too large for mask encoding");
  Subset m = 0;
  for (Vec2i v : subset) {
    auto i = index_of(v);
    if (!i) {
      std::ostringstream os;
      os << "offset " << v << " is not in the neighborhood";
      throw std::invalid_argument(os.str());
    }
    m |= Subset{1} << *i;
  }
  return m;
}

std::vector<Vec2i> Neighborhood::offsets_of(Subset s) const {
  std::vector<Vec2i> out;
  for (std::size_t i = 0; i < size() && i < 64; ++i)
    if (s & (Subset{1} << i)) out.push_back(offsets_[i]);
  return out;
}

MonotoneRule::MonotoneRule(Neighborhood nbhd, RuleKind kind) : nbhd_(std::move(nbhd)), kind_(std::move(kind)) {
  if (nbhd_.origin_index() >= 0 && mask_capable()) origin_bit_ = Subset{1} << nbhd_.origin_index();

  if (auto* t = std::get_if<Threshold>(&kind_)) {
    if (t->theta < 1) throw std::invalid_argument("threshold must be a positive integer");
  } else if (auto* a = std::get_if<Antichain>(&kind_)) {
    if (!mask_capable()) throw std::invalid_argument("antichain rules need |N| <= 64");
    for (const auto& s : a->minimal_sets) minimal_masks_.push_back(nbhd_.mask_of(s));
  } else {
    const auto& pt = std::get<ProbTable>(kind_);
    if (nbhd_.size() > kMaxTableSites) throw std::invalid_argument("probability tables need |N| <= 20");
    std::map<Subset, double> listed;
    for (const auto& e : pt.entries) {
      if (!(e.probability >= 0.0 && e.probability <= 1.0))
        throw std::invalid_argument("probability entries must lie in [0,1]");
      listed[nbhd_.mask_of(e.set)] = e.probability;
    }
    const std::size_t n = std::size_t{1} << nbhd_.size();
    table_.assign(n, 0.0);
    for (Subset s = 0; s < n; ++s) {
      if (auto it = listed.find(s); it != listed.end()) {
        table_[s] = it->second;
      } else if (s & origin_bit_) {
        table_[s] = 1.0;
      } else {
        double best = 0.0;
        for (Subset rest = s; rest; rest &= rest - 1) best = std::max(best, table_[s & ~(rest & -rest)]);
        table_[s] = best;
      }
    }
  }
}

double MonotoneRule::probability(Subset s) const {
  if (s & origin_bit_) return 1.0;
  if (auto* t = std::get_if<Threshold>(&kind_)) return std::popcount(s) >= t->theta ? 1.0 : 0.0;
  if (std::holds_alternative<Antichain>(kind_)) {
    for (Subset m : minimal_masks_)
      if ((m & ~s) == 0) return 1.0;
    return 0.0;
  }
  return table_[s];
}

double MonotoneRule::threshold_probability(std::size_t non_origin_count, bool has_origin) const {
  const auto& t = std::get<Threshold>(kind_);
  return (has_origin || non_origin_count >= static_cast<std::size_t>(t.theta)) ? 1.0 : 0.0;
}

MonotoneRule MonotoneRule::skeleton() const {
  if (is_deterministic()) return *this;
  Antichain a;
  for (Subset s = 1; s < table_.size(); ++s) {
    if (s & origin_bit_ || table_[s] <= 0.0) continue;
    bool minimal = true;
    for (Subset rest = s; rest && minimal; rest &= rest - 1)
      if (table_[s & ~(rest & -rest)] > 0.0) minimal = false;
    if (minimal) a.minimal_sets.push_back(nbhd_.offsets_of(s));
  }
  return MonotoneRule(nbhd_, std::move(a));
}

MonotoneRule MonotoneRule::transformed(Dihedral g) const {
  std::vector<Vec2i> offs;
  for (Vec2i v : nbhd_.offsets()) offs.push_back(g.apply(v));
  auto map_set = [&](const std::vector<Vec2i>& s) {
    std::vector<Vec2i> out;
    for (Vec2i v : s) out.push_back(g.apply(v));
    return out;
  };
  RuleKind k = kind_;
  if (auto* a = std::get_if<Antichain>(&k)) {
    for (auto& s : a->minimal_sets) s = map_set(s);
  } else if (auto* p = std::get_if<ProbTable>(&k)) {
    for (auto& e : p->entries) e.set = map_set(e.set);
  }
  return MonotoneRule(Neighborhood(std::move(offs)), std::move(k));
}

std::string MonotoneRule::describe() const {
  std::ostringstream os;
  if (auto* t = std::get_if<Threshold>(&kind_)) {
    os << "threshold theta=" << t->theta;
  } else if (auto* a = std::get_if<Antichain>(&kind_)) {
    os << "antichain with " << a->minimal_sets.size() << " minimal sets";
  } else {
    os << "probability table with " << std::get<ProbTable>(kind_).entries.size() << " entries";
  }
  os << " on a " << nbhd_.size() << "-site neighborhood";
  return os.str();
}

double sufficiency(const MonotoneRule& rule, std::span<const Vec2i> subset) {
  const auto& n = rule.neighborhood();
  if (!rule.mask_capable()) {
    std::size_t count = 0;
    bool origin = false;
    for (Vec2i v : subset) {
      if (!n.contains(v)) throw std::invalid_argument("offset is not in the neighborhood");
      if (v == Vec2i{0, 0}) origin = true;
      else ++count;
    }
    return rule.threshold_probability(count, origin);
  }
  return rule.probability(n.mask_of(subset));
}

namespace {

// Permutation of offset indices induced by v -> -v; -1 where -v is missing.
std::vector<int> negation_map(const Neighborhood& n) {
  std::vector<int> out(n.size(), -1);
  for (std::size_t i = 0; i < n.size(); ++i) out[i] = n.index_of(-n[i]).value_or(-1);
  return out;
}

Subset negate(Subset s, const std::vector<int>& neg) {
  Subset out = 0;
  for (std::size_t i = 0; i < neg.size(); ++i)
    if (s & (Subset{1} << i)) out |= Subset{1} << neg[i];
  return out;
}

std::string set_str(const Neighborhood& n, Subset s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (Vec2i v : n.offsets_of(s)) {
    os << (first ? "" : ",") << v;
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace

std::vector<RuleViolation> validate_rule(const MonotoneRule& rule) {
  std::vector<RuleViolation> out;
  const auto& n = rule.neighborhood();
  if (n.origin_index() < 0) out.push_back({"origin", "neighborhood does not contain (0,0)"});

  const auto neg = negation_map(n);
  const bool nbhd_symmetric = std::none_of(neg.begin(), neg.end(), [](int i) { return i < 0; });
  if (!nbhd_symmetric) out.push_back({"neighborhood-symmetry", "neighborhood is not closed under x -> -x"});

  if (rule.is_threshold()) return out;  // totalistic rules satisfy the rest by construction

  if (!rule.mask_capable())
    out.push_back({"cardinality", "mask-encoded rules need at most 64 neighborhood sites"});

  if (std::holds_alternative<Antichain>(rule.kind())) {
    auto masks = rule.minimal_masks();
    for (std::size_t i = 0; i < masks.size(); ++i) {
      if (masks[i] == 0) out.push_back({"contact", "the empty set is listed as sufficient"});
      for (std::size_t j = 0; j < masks.size(); ++j) {
        if (i == j) continue;
        if ((masks[i] & ~masks[j]) == 0 && (i < j || masks[i] != masks[j]))
          out.push_back({"not an antichain",
                         set_str(n, masks[i]) + " is contained in " + set_str(n, masks[j])});
      }
    }
    if (nbhd_symmetric) {
      std::vector<Subset> a(masks.begin(), masks.end()), b;
      for (Subset m : masks) b.push_back(negate(m, neg));
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
      b.erase(std::unique(b.begin(), b.end()), b.end());
      if (a != b) out.push_back({"symmetry", "minimal sets are not closed under S -> -S"});
    }
    return out;
  }

  const auto table = rule.raw_table();
  const Subset origin_bit = n.origin_index() >= 0 ? Subset{1} << n.origin_index() : 0;
  if (table[0] > 0.0) out.push_back({"contact", "pi(empty set) must be 0"});
  std::size_t solid_bad = 0, mono_bad = 0, sym_bad = 0;
  std::string first_mono, first_sym, first_solid;
  for (Subset s = 0; s < table.size(); ++s) {
    if ((s & origin_bit) && table[s] < 1.0) {
      if (solid_bad++ == 0) first_solid = set_str(n, s);
    }
    for (std::size_t i = 0; i < n.size(); ++i) {
      const Subset bit = Subset{1} << i;
      if (s & bit) continue;
      if (table[s] > table[s | bit]) {
        if (mono_bad++ == 0)
          first_mono = "pi(" + set_str(n, s) + ")=" + std::to_string(table[s]) + " > pi(" +
                       set_str(n, s | bit) + ")=" + std::to_string(table[s | bit]);
      }
    }
    if (nbhd_symmetric && table[s] != table[negate(s, neg)]) {
      if (sym_bad++ == 0) first_sym = set_str(n, s);
    }
  }
  if (mono_bad) out.push_back({"monotonicity", first_mono});
  if (solid_bad) out.push_back({"solidify", "pi(S) < 1 for S containing the origin, e.g. " + first_solid});
  if (sym_bad) out.push_back({"symmetry", "pi(-S) != pi(S), e.g. S=" + first_sym});
  return out;
}

}  // namespace polygrowth
