#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "kitaev/group.hpp"
#include "kitaev/lattice.hpp"

namespace kitaev {

/// Point of Omega restricted to a finite window: a character at each vertex
/// and a group element at each face, stored as enumeration indices. Sites
/// outside the window carry the neutral label.
class SyndromeConfig {
 public:
  explicit SyndromeConfig(GroupSpec group) : group_(std::move(group)) {}
  /// All-neutral configuration on the given window.
  SyndromeConfig(GroupSpec group, const std::vector<SiteId>& window);

  const GroupSpec& group() const { return group_; }
  /// Window sites in insertion order.
  const std::vector<SiteId>& window() const { return window_; }
  bool in_window(const SiteId& s) const { return values_.count(s) != 0; }

  std::uint32_t index_at(const SiteId& s) const;
  Character vertex_value(const SiteId& v) const;
  GroupElement face_value(const SiteId& f) const;

  /// Sets a value, extending the window when needed.
  void set_index(const SiteId& s, std::uint32_t index);
  void set_vertex(const SiteId& v, const Character& chi);
  void set_face(const SiteId& f, const GroupElement& g);

  /// Sites with a non-neutral value, sorted.
  std::vector<SiteId> support() const;

  /// Equality as functions on W (windows may differ).
  friend bool operator==(const SyndromeConfig& a, const SyndromeConfig& b);

 private:
  GroupSpec group_;
  std::vector<SiteId> window_;
  std::map<SiteId, std::uint32_t> values_;
};

/// Thrown when a configuration is not in Gamma = ker(pi_hat).
class NotInGamma : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite-support translation with trivial total charge.
class GammaElement {
 public:
  /// Neutral element (empty support).
  explicit GammaElement(GroupSpec group) : config_(std::move(group)) {}
  /// Throws NotInGamma unless pi_hat(config) is neutral.
  explicit GammaElement(SyndromeConfig config);

  const SyndromeConfig& config() const { return config_; }
  const GroupSpec& group() const { return config_.group(); }
  std::vector<SiteId> support() const { return config_.support(); }

  GammaElement inverse() const;
  GammaElement compose(const GammaElement& other) const;

  friend bool operator==(const GammaElement& a, const GammaElement& b) { return a.config_ == b.config_; }

 private:
  SyndromeConfig config_;
};

/// Elementary generator: delta_chi^e (target vertex, label a character) or
/// delta_g^e (target face, label a group element), label as enumeration index.
struct EdgeDelta {
  EdgeId edge;
  SiteKind target = SiteKind::vertex;
  std::uint32_t label = 0;

  friend bool operator==(const EdgeDelta&, const EdgeDelta&) = default;
};

}  // namespace kitaev
