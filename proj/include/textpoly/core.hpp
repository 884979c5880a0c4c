#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace textpoly {

// Library-wide exception base so the CLI can catch one type at the boundary.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside an operation's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Geometry collapsed below what the operation can handle (zero tangents etc.).
class DegenerateGeometryError : public Error {
 public:
  using Error::Error;
};

// A target state that a single update step cannot reach.
class NotRepresentableError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
inline Vec2 operator*(Vec2 a, double k) { return k * a; }
inline Vec2 operator/(Vec2 a, double k) { return {a.x / k, a.y / k}; }
inline Vec2& operator+=(Vec2& a, Vec2 b) { a = a + b; return a; }
inline Vec2& operator-=(Vec2& a, Vec2 b) { a = a - b; return a; }
inline bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Counterclockwise quarter turn; the left normal of a travel direction
// in the y-up axis convention used throughout the library.
inline Vec2 rot90ccw(Vec2 a) { return {-a.y, a.x}; }

inline bool finite(Vec2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

// Axis-aligned box in center/size form.
struct Box {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;
};

inline bool box_valid(const Box& b) {
  return std::isfinite(b.cx) && std::isfinite(b.cy) && std::isfinite(b.w) &&
         std::isfinite(b.h) && b.w > 0.0 && b.h > 0.0;
}

inline void validate_box(const Box& b) {
  if (!box_valid(b)) throw DomainError("invalid box: sizes must be positive and finite");
}

}  // namespace textpoly
