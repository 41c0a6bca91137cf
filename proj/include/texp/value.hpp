#pragma once

#include <charconv>
#include <cmath>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace texp {

/// A value exchanged on the wire: null, boolean, number, text, sequence or
/// keyed map. Numbers are a single numeric type compared by value, so the
/// JSON integer 9 and the decimal 9.0 are the same value.
class Value {
public:
  using Array = std::vector<Value>;
  using Object = std::map<std::string, Value, std::less<>>;

  enum class Kind : std::uint8_t { Null, Bool, Number, Text, Array, Object };

  Value() = default;
  Value(std::nullptr_t) {}
  Value(bool b) : data_(b) {}
  Value(int n) : data_(static_cast<double>(n)) {}
  Value(long n) : data_(static_cast<double>(n)) {}
  Value(long long n) : data_(static_cast<double>(n)) {}
  Value(unsigned n) : data_(static_cast<double>(n)) {}
  Value(unsigned long n) : data_(static_cast<double>(n)) {}
  Value(unsigned long long n) : data_(static_cast<double>(n)) {}
  Value(double d) : data_(d == 0.0 ? 0.0 : d) {}
  Value(const char *s) : data_(std::string(s)) {}
  Value(std::string s) : data_(std::move(s)) {}
  Value(Array a) : data_(std::move(a)) {}
  Value(Object o) : data_(std::move(o)) {}

  [[nodiscard]] Kind kind() const { return static_cast<Kind>(data_.index()); }
  [[nodiscard]] bool isNull() const { return kind() == Kind::Null; }
  [[nodiscard]] bool isBool() const { return kind() == Kind::Bool; }
  [[nodiscard]] bool isNumber() const { return kind() == Kind::Number; }
  [[nodiscard]] bool isText() const { return kind() == Kind::Text; }
  [[nodiscard]] bool isArray() const { return kind() == Kind::Array; }
  [[nodiscard]] bool isObject() const { return kind() == Kind::Object; }

  [[nodiscard]] bool asBool() const { return std::get<bool>(data_); }
  [[nodiscard]] double asNumber() const { return std::get<double>(data_); }
  [[nodiscard]] const std::string &asText() const { return std::get<std::string>(data_); }
  [[nodiscard]] const Array &asArray() const { return std::get<Array>(data_); }
  [[nodiscard]] const Object &asObject() const { return std::get<Object>(data_); }

  /// Looks up a key of a map value; null pointer when absent or not a map.
  [[nodiscard]] const Value *find(std::string_view key) const {
    if (!isObject())
      return nullptr;
    const auto &obj = asObject();
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &it->second;
  }

  /// Total order consistent with valueEq. Kinds order first, then contents.
  friend std::strong_ordering compare(const Value &a, const Value &b) {
    if (a.kind() != b.kind())
      return a.kind() <=> b.kind();
    switch (a.kind()) {
    case Kind::Null:
      return std::strong_ordering::equal;
    case Kind::Bool:
      return a.asBool() <=> b.asBool();
    case Kind::Number: {
      double x = a.asNumber(), y = b.asNumber();
      if (x < y)
        return std::strong_ordering::less;
      if (y < x)
        return std::strong_ordering::greater;
      return std::strong_ordering::equal;
    }
    case Kind::Text:
      return a.asText().compare(b.asText()) <=> 0;
    case Kind::Array: {
      const auto &xs = a.asArray(), &ys = b.asArray();
      for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i)
        if (auto c = compare(xs[i], ys[i]); c != 0)
          return c;
      return xs.size() <=> ys.size();
    }
    case Kind::Object: {
      const auto &xs = a.asObject(), &ys = b.asObject();
      auto i = xs.begin();
      auto j = ys.begin();
      for (; i != xs.end() && j != ys.end(); ++i, ++j) {
        if (auto c = i->first.compare(j->first) <=> 0; c != 0)
          return c;
        if (auto c = compare(i->second, j->second); c != 0)
          return c;
      }
      return xs.size() <=> ys.size();
    }
    }
    return std::strong_ordering::equal;
  }

  friend bool operator==(const Value &a, const Value &b) { return compare(a, b) == 0; }
  friend std::strong_ordering operator<=>(const Value &a, const Value &b) { return compare(a, b); }

  [[nodiscard]] std::size_t hash() const {
    std::size_t h = std::hash<std::size_t>{}(data_.index());
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    switch (kind()) {
    case Kind::Null:
      break;
    case Kind::Bool:
      mix(asBool());
      break;
    case Kind::Number:
      mix(std::hash<double>{}(asNumber()));
      break;
    case Kind::Text:
      mix(std::hash<std::string>{}(asText()));
      break;
    case Kind::Array:
      for (const auto &v : asArray())
        mix(v.hash());
      break;
    case Kind::Object:
      for (const auto &[k, v] : asObject()) {
        mix(std::hash<std::string>{}(k));
        mix(v.hash());
      }
      break;
    }
    return h;
  }

private:
  std::variant<std::monostate, bool, double, std::string, Array, Object> data_;
};

/// Deep structural equality; numbers compare by numeric value.
inline bool valueEq(const Value &a, const Value &b) { return a == b; }

inline Value fromJson(const nlohmann::json &j) {
  switch (j.type()) {
  case nlohmann::json::value_t::null:
  case nlohmann::json::value_t::discarded:
    return Value{};
  case nlohmann::json::value_t::boolean:
    return Value{j.get<bool>()};
  case nlohmann::json::value_t::number_integer:
    return Value{j.get<long long>()};
  case nlohmann::json::value_t::number_unsigned:
    return Value{j.get<unsigned long long>()};
  case nlohmann::json::value_t::number_float:
    return Value{j.get<double>()};
  case nlohmann::json::value_t::string:
    return Value{j.get<std::string>()};
  case nlohmann::json::value_t::array: {
    Value::Array out;
    out.reserve(j.size());
    for (const auto &x : j)
      out.push_back(fromJson(x));
    return Value{std::move(out)};
  }
  case nlohmann::json::value_t::object: {
    Value::Object out;
    for (const auto &[k, v] : j.items())
      out.emplace(k, fromJson(v));
    return Value{std::move(out)};
  }
  case nlohmann::json::value_t::binary:
    break;
  }
  return Value{};
}

inline nlohmann::json toJson(const Value &v) {
  switch (v.kind()) {
  case Value::Kind::Null:
    return nullptr;
  case Value::Kind::Bool:
    return v.asBool();
  case Value::Kind::Number: {
    double d = v.asNumber();
    if (std::nearbyint(d) == d && std::fabs(d) < 9.007199254740992e15)
      return static_cast<long long>(d);
    return d;
  }
  case Value::Kind::Text:
    return v.asText();
  case Value::Kind::Array: {
    auto out = nlohmann::json::array();
    for (const auto &x : v.asArray())
      out.push_back(toJson(x));
    return out;
  }
  case Value::Kind::Object: {
    auto out = nlohmann::json::object();
    for (const auto &[k, x] : v.asObject())
      out[k] = toJson(x);
    return out;
  }
  }
  return nullptr;
}

/// Compact JSON rendering. Integral numbers print without a fraction and
/// other numbers use the shortest round-tripping form.
inline std::string toString(const Value &v) { return toJson(v).dump(); }

} // namespace texp

template <> struct std::hash<texp::Value> {
  std::size_t operator()(const texp::Value &v) const noexcept { return v.hash(); }
};
