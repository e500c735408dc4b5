#include "graphivm/value.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <functional>

namespace graphivm {

Bag::Bag(std::vector<Value> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
}

bool Bag::operator==(const Bag& other) const { return items_ == other.items_; }

bool Value::is_property_value() const {
  if (is_null() || is_scalar()) return true;
  if (const auto* bag = std::get_if<Bag>(&data)) {
    return std::all_of(bag->items().begin(), bag->items().end(),
                       [](const Value& v) { return v.is_scalar(); });
  }
  return false;
}

double Value::as_double() const {
  if (const auto* i = std::get_if<int64_t>(&data)) return static_cast<double>(*i);
  return std::get<double>(data);
}

namespace {

int rank(const Value& v) {
  switch (v.data.index()) {
    case 1: return 0;           // bool
    case 2: case 3: return 1;   // numbers
    case 4: return 2;           // string
    case 5: return 3;           // bag
    case 8: return 4;           // path
    case 6: return 5;           // vertex
    case 7: return 6;           // edge
    default: return 7;          // null
  }
}

std::strong_ordering compare_numbers(const Value& a, const Value& b) {
  const bool ai = a.is<int64_t>();
  const bool bi = b.is<int64_t>();
  if (ai && bi) return a.as<int64_t>() <=> b.as<int64_t>();
  const double x = a.as_double();
  const double y = b.as_double();
  const bool xn = std::isnan(x);
  const bool yn = std::isnan(y);
  if (xn != yn) return xn ? std::strong_ordering::greater : std::strong_ordering::less;
  if (!xn) {
    if (x < y) return std::strong_ordering::less;
    if (x > y) return std::strong_ordering::greater;
  }
  // numerically equal (or both NaN): integers order before floats
  if (ai != bi) return ai ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering compare(const Value& a, const Value& b) {
  const int ra = rank(a);
  const int rb = rank(b);
  if (ra != rb) return ra <=> rb;
  switch (ra) {
    case 0: return a.as<bool>() <=> b.as<bool>();
    case 1: return compare_numbers(a, b);
    case 2: {
      const int c = a.as<std::string>().compare(b.as<std::string>());
      return c <=> 0;
    }
    case 3: {
      const auto& x = a.as<Bag>().items();
      const auto& y = b.as<Bag>().items();
      return std::lexicographical_compare_three_way(
          x.begin(), x.end(), y.begin(), y.end(),
          [](const Value& l, const Value& r) { return compare(l, r); });
    }
    case 4: return a.as<Path>().edges <=> b.as<Path>().edges;
    case 5: return a.as<VertexRef>().id <=> b.as<VertexRef>().id;
    case 6: return a.as<EdgeRef>().id <=> b.as<EdgeRef>().id;
    default: return std::strong_ordering::equal;
  }
}

std::strong_ordering compare(const Tuple& a, const Tuple& b) {
  return std::lexicographical_compare_three_way(
      a.begin(), a.end(), b.begin(), b.end(),
      [](const Value& l, const Value& r) { return compare(l, r); });
}

namespace {
inline size_t mix(size_t seed, size_t h) {
  return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}
}  // namespace

size_t hash_value(const Value& v) {
  size_t seed = v.data.index();
  switch (v.data.index()) {
    case 0: return mix(seed, 0);
    case 1: return mix(seed, v.as<bool>() ? 1 : 0);
    case 2: return mix(seed, std::hash<int64_t>{}(v.as<int64_t>()));
    case 3: {
      double d = v.as<double>();
      if (std::isnan(d)) return mix(seed, 0x7ff8);
      if (d == 0.0) d = 0.0;  // fold -0.0
      uint64_t bits;
      std::memcpy(&bits, &d, sizeof bits);
      return mix(seed, std::hash<uint64_t>{}(bits));
    }
    case 4: return mix(seed, std::hash<std::string>{}(v.as<std::string>()));
    case 5:
      for (const auto& item : v.as<Bag>().items()) seed = mix(seed, hash_value(item));
      return seed;
    case 6: return mix(seed, v.as<VertexRef>().id);
    case 7: return mix(seed, v.as<EdgeRef>().id);
    case 8:
      for (uint32_t e : v.as<Path>().edges) seed = mix(seed, e);
      return seed;
  }
  return seed;
}

size_t TupleHash::operator()(const Tuple& t) const {
  size_t seed = t.size();
  for (const auto& v : t) seed = mix(seed, hash_value(v));
  return seed;
}

std::string format_double(double d) {
  if (std::isnan(d)) return "NaN";
  if (std::isinf(d)) return d > 0 ? "Infinity" : "-Infinity";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  std::string out(buf, res.ptr);
  if (out.find_first_of(".eE") == std::string::npos) out += ".0";
  return out;
}

namespace {

std::string element_name(bool vertex, uint32_t id, const IdNames* names) {
  if (names != nullptr) return vertex ? names->vertex_name(id) : names->edge_name(id);
  return "#" + std::to_string(id);
}

std::string render(const Value& v, const IdNames* names, bool quote_strings) {
  switch (v.data.index()) {
    case 0: return "null";
    case 1: return v.as<bool>() ? "true" : "false";
    case 2: return std::to_string(v.as<int64_t>());
    case 3: return format_double(v.as<double>());
    case 4: {
      if (!quote_strings) return v.as<std::string>();
      std::string out = "'";
      for (char c : v.as<std::string>()) {
        if (c == '\'' || c == '\\') out += '\\';
        out += c;
      }
      return out + "'";
    }
    case 5: {
      const char* open = quote_strings ? "[" : "{";
      const char* close = quote_strings ? "]" : "}";
      std::string out = open;
      bool first = true;
      for (const auto& item : v.as<Bag>().items()) {
        if (!first) out += ", ";
        first = false;
        out += render(item, names, quote_strings);
      }
      return out + close;
    }
    case 6: return element_name(true, v.as<VertexRef>().id, names);
    case 7: return element_name(false, v.as<EdgeRef>().id, names);
    case 8: {
      std::string out = "[";
      bool first = true;
      for (uint32_t e : v.as<Path>().edges) {
        if (!first) out += ", ";
        first = false;
        out += element_name(false, e, names);
      }
      return out + "]";
    }
  }
  return "?";
}

}  // namespace

std::string display(const Value& v, const IdNames* names) { return render(v, names, false); }

std::string literal_text(const Value& v) { return render(v, nullptr, true); }

}  // namespace graphivm
