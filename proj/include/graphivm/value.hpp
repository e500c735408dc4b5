#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace graphivm {

struct Value;

struct Null {
  bool operator==(const Null&) const = default;
};

/// Interned vertex identifier. Dense, never reused for a different external id.
struct VertexRef {
  uint32_t id = 0;
  bool operator==(const VertexRef&) const = default;
};

struct EdgeRef {
  uint32_t id = 0;
  bool operator==(const EdgeRef&) const = default;
};

/// Edge ids in path order; position in the vector is the path index.
struct Path {
  std::vector<uint32_t> edges;
  bool operator==(const Path&) const = default;
};

/// Finite multiset. Items are kept sorted by the total value order, so
/// vector equality is multiset equality.
class Bag {
 public:
  Bag() = default;
  explicit Bag(std::vector<Value> items);

  const std::vector<Value>& items() const { return items_; }
  size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  bool operator==(const Bag& other) const;

 private:
  std::vector<Value> items_;
};

struct Value {
  using Storage = std::variant<Null, bool, int64_t, double, std::string, Bag,
                               VertexRef, EdgeRef, Path>;
  Storage data;

  Value() = default;
  Value(Null n) : data(n) {}
  Value(bool b) : data(b) {}
  Value(int v) : data(int64_t{v}) {}
  Value(int64_t v) : data(v) {}
  Value(double v) : data(v) {}
  Value(const char* s) : data(std::string(s)) {}
  Value(std::string s) : data(std::move(s)) {}
  Value(Bag b) : data(std::move(b)) {}
  Value(VertexRef v) : data(v) {}
  Value(EdgeRef e) : data(e) {}
  Value(Path p) : data(std::move(p)) {}

  bool is_null() const { return std::holds_alternative<Null>(data); }
  bool is_numeric() const {
    return std::holds_alternative<int64_t>(data) ||
           std::holds_alternative<double>(data);
  }
  bool is_scalar() const {
    return std::holds_alternative<bool>(data) || is_numeric() ||
           std::holds_alternative<std::string>(data);
  }
  bool is_element() const {
    return std::holds_alternative<VertexRef>(data) ||
           std::holds_alternative<EdgeRef>(data);
  }
  /// The property value domain: null, scalar, or bag of scalars.
  bool is_property_value() const;

  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(data);
  }
  template <typename T>
  const T& as() const {
    return std::get<T>(data);
  }
  double as_double() const;
};

/// Total order over all values: booleans < numbers < strings < bags < paths
/// < vertices < edges < null. Integers and floats compare numerically; a tie
/// between an integer and an equal float puts the integer first.
std::strong_ordering compare(const Value& a, const Value& b);

/// Identity equality (null == null, 1 != 1.0). Consistent with compare().
inline bool operator==(const Value& a, const Value& b) {
  return compare(a, b) == std::strong_ordering::equal;
}
inline bool operator<(const Value& a, const Value& b) {
  return compare(a, b) == std::strong_ordering::less;
}

size_t hash_value(const Value& v);

using Tuple = std::vector<Value>;

std::strong_ordering compare(const Tuple& a, const Tuple& b);

struct TupleHash {
  size_t operator()(const Tuple& t) const;
};

struct TupleLess {
  bool operator()(const Tuple& a, const Tuple& b) const {
    return compare(a, b) == std::strong_ordering::less;
  }
};

/// Resolves interned ids back to their external names for display.
class IdNames {
 public:
  virtual ~IdNames() = default;
  virtual const std::string& vertex_name(uint32_t id) const = 0;
  virtual const std::string& edge_name(uint32_t id) const = 0;
};

/// Result-table rendering: strings unquoted, null as "null", bags as {...},
/// paths as [edge-ids]. With names == nullptr elements print as #<n>.
std::string display(const Value& v, const IdNames* names = nullptr);

/// Literal rendering used by query printers (strings quoted).
std::string literal_text(const Value& v);

std::string format_double(double d);

}  // namespace graphivm
