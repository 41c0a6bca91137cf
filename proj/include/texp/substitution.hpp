#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "texp/value.hpp"

namespace texp {

using VarName = std::string;

/// Finite partial map from variable names to values.
class Substitution {
public:
  using Map = std::map<VarName, Value, std::less<>>;

  Substitution() = default;
  Substitution(std::initializer_list<Map::value_type> init) : bindings_(init) {}
  explicit Substitution(Map m) : bindings_(std::move(m)) {}

  [[nodiscard]] bool empty() const { return bindings_.empty(); }
  [[nodiscard]] std::size_t size() const { return bindings_.size(); }
  [[nodiscard]] bool contains(std::string_view x) const { return bindings_.find(x) != bindings_.end(); }

  /// Absent names yield nullptr, never a default value.
  [[nodiscard]] const Value *lookup(std::string_view x) const {
    auto it = bindings_.find(x);
    return it == bindings_.end() ? nullptr : &it->second;
  }

  /// Binds x, or checks agreement with an existing binding.
  bool bind(const VarName &x, const Value &v) {
    auto [it, inserted] = bindings_.emplace(x, v);
    return inserted || valueEq(it->second, v);
  }

  void erase(std::string_view x) {
    if (auto it = bindings_.find(x); it != bindings_.end())
      bindings_.erase(it);
  }

  [[nodiscard]] const Map &bindings() const { return bindings_; }
  [[nodiscard]] auto begin() const { return bindings_.begin(); }
  [[nodiscard]] auto end() const { return bindings_.end(); }

  friend bool operator==(const Substitution &, const Substitution &) = default;
  friend auto operator<=>(const Substitution &a, const Substitution &b) {
    return std::lexicographical_compare_three_way(a.bindings_.begin(), a.bindings_.end(),
                                                  b.bindings_.begin(), b.bindings_.end());
  }

  [[nodiscard]] std::size_t hash() const {
    std::size_t h = bindings_.size();
    for (const auto &[k, v] : bindings_) {
      h ^= std::hash<std::string>{}(k) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h ^= v.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

private:
  Map bindings_;
};

/// Union of two substitutions that agree on their shared domain;
/// std::nullopt is the conflict case.
inline std::optional<Substitution> mergeSubst(const Substitution &s1, const Substitution &s2) {
  Substitution out = s1;
  for (const auto &[x, v] : s2)
    if (!out.bind(x, v))
      return std::nullopt;
  return out;
}

inline Substitution restrictSubst(Substitution s, std::string_view x) {
  s.erase(x);
  return s;
}

inline std::string toString(const Substitution &s) {
  std::string out = "{";
  bool first = true;
  for (const auto &[x, v] : s) {
    if (!first)
      out += ", ";
    first = false;
    out += x;
    out += "=";
    out += toString(v);
  }
  return out + "}";
}

} // namespace texp

template <> struct std::hash<texp::Substitution> {
  std::size_t operator()(const texp::Substitution &s) const noexcept { return s.hash(); }
};
