#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tksub {

using Vertex = std::int32_t;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

inline VertexSet make_set(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline bool set_contains(const VertexSet& s, Vertex v) {
  return std::binary_search(s.begin(), s.end(), v);
}

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool sets_disjoint(const VertexSet& a, const VertexSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) ++i; else ++j;
  }
  return true;
}

/// Dense membership mask over vertex ids 0..n-1. Used for avoid sets so that
/// "G - W" never has to be materialized.
class VertexMask {
 public:
  VertexMask() = default;
  explicit VertexMask(std::size_t n) : bits_(n, 0) {}
  VertexMask(std::size_t n, std::span<const Vertex> members) : bits_(n, 0) {
    for (Vertex v : members) insert(v);
  }

  std::size_t universe() const { return bits_.size(); }
  bool contains(Vertex v) const { return bits_[static_cast<std::size_t>(v)] != 0; }
  void insert(Vertex v) { bits_[static_cast<std::size_t>(v)] = 1; }
  void erase(Vertex v) { bits_[static_cast<std::size_t>(v)] = 0; }
  void insert_all(std::span<const Vertex> vs) {
    for (Vertex v : vs) insert(v);
  }

  VertexSet members() const {
    VertexSet out;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out.push_back(static_cast<Vertex>(i));
    return out;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

/// Outcome codes for searches that may legitimately come up empty.
/// Misuse of an API (violated structural preconditions) throws instead.
enum class Status {
  Ok,
  NoPath,
  TooLong,
  Insufficient,
  NoCycle,
  InsufficientExpansion,
  ParityMismatch,
  Unsatisfiable,
  PreconditionUnmet,
  BudgetExceeded,
};

const char* status_name(Status s);

template <class T>
struct Outcome {
  std::optional<T> value;
  Status status = Status::Ok;
  std::string detail;

  bool ok() const { return status == Status::Ok && value.has_value(); }
  explicit operator bool() const { return ok(); }
  const T& operator*() const { return *value; }
  const T* operator->() const { return &*value; }

  static Outcome success(T v, std::string detail = {}) {
    return Outcome{std::move(v), Status::Ok, std::move(detail)};
  }
  static Outcome failure(Status s, std::string detail = {}) {
    return Outcome{std::nullopt, s, std::move(detail)};
  }
};

/// Result of a structural check: which clause failed and why.
struct Verdict {
  bool ok = true;
  std::string clause;
  std::string reason;

  explicit operator bool() const { return ok; }
  static Verdict pass() { return {}; }
  static Verdict fail(std::string clause, std::string reason) {
    return Verdict{false, std::move(clause), std::move(reason)};
  }
};

}  // namespace tksub
