#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>

namespace coarse {

/// Opaque point identifier. Each space documents its encoding; line-based spaces
/// use (coordinate, 0), decorated spaces use (attachment, position).
struct PointRef {
  std::int64_t major = 0;
  std::int64_t minor = 0;

  friend auto operator<=>(const PointRef&, const PointRef&) = default;
};

inline PointRef pt(std::int64_t major, std::int64_t minor = 0) { return PointRef{major, minor}; }

struct PointRefHash {
  std::size_t operator()(const PointRef& p) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(p.major) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(p.minor) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

std::ostream& operator<<(std::ostream& os, const PointRef& p);

}  // namespace coarse

template <>
struct std::hash<coarse::PointRef> : coarse::PointRefHash {};
