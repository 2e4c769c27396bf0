#include "kitaev/syndrome.hpp"

#include <algorithm>
#include <set>

#include "kitaev/config_space.hpp"

namespace kitaev {

SyndromeConfig::SyndromeConfig(GroupSpec group, const std::vector<SiteId>& window) : group_(std::move(group)) {
  for (const auto& s : window) set_index(s, 0);
}

std::uint32_t SyndromeConfig::index_at(const SiteId& s) const {
  auto it = values_.find(s);
  return it == values_.end() ? 0 : it->second;
}

Character SyndromeConfig::vertex_value(const SiteId& v) const {
  if (!v.is_vertex()) throw std::invalid_argument("vertex_value called on " + to_string(v));
  return group_.character_at(index_at(v));
}

GroupElement SyndromeConfig::face_value(const SiteId& f) const {
  if (!f.is_face()) throw std::invalid_argument("face_value called on " + to_string(f));
  return group_.element_at(index_at(f));
}

void SyndromeConfig::set_index(const SiteId& s, std::uint32_t index) {
  if (index >= group_.order()) throw SpecMismatch("label index out of range for " + group_.to_string());
  auto [it, inserted] = values_.insert({s, index});
  if (inserted)
    window_.push_back(s);
  else
    it->second = index;
}

void SyndromeConfig::set_vertex(const SiteId& v, const Character& chi) {
  if (!v.is_vertex()) throw std::invalid_argument("set_vertex called on " + to_string(v));
  group_.validate(chi.residues);
  set_index(v, group_.index_of(chi.residues));
}

void SyndromeConfig::set_face(const SiteId& f, const GroupElement& g) {
  if (!f.is_face()) throw std::invalid_argument("set_face called on " + to_string(f));
  group_.validate(g.residues);
  set_index(f, group_.index_of(g.residues));
}

std::vector<SiteId> SyndromeConfig::support() const {
  std::vector<SiteId> out;
  for (const auto& [s, v] : values_)
    if (v != 0) out.push_back(s);
  return out;
}

bool operator==(const SyndromeConfig& a, const SyndromeConfig& b) {
  return a.group_ == b.group_ && a.support() == b.support() &&
         std::all_of(a.values_.begin(), a.values_.end(), [&](const auto& kv) { return b.index_at(kv.first) == kv.second; });
}

GammaElement::GammaElement(SyndromeConfig config) : config_(std::move(config)) {
  if (!in_gamma(config_)) throw NotInGamma("configuration has non-trivial total charge");
}

GammaElement GammaElement::inverse() const {
  GroupTables t(group());
  SyndromeConfig out(group());
  for (const auto& s : config_.window()) out.set_index(s, t.inverse(config_.index_at(s)));
  return GammaElement(std::move(out));
}

GammaElement GammaElement::compose(const GammaElement& other) const { return GammaElement(act(*this, other.config_)); }

}  // namespace kitaev
