#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace dgla {

/// Handle to an interned graded generator.
///
/// A generator is identified by its (name, degree) pair; interning the same
/// pair twice yields the same handle. Distinct algebras may reuse a name with
/// a different degree (the cube's degree-0 edge `f1` and the banana's degree-1
/// face `f1` are different generators). Uniqueness of names inside a single
/// algebra is enforced by Model.
///
/// The intern table is process-wide and internally synchronized; handles are
/// trivially copyable and safe to share between threads.
class Generator {
 public:
  Generator() = default;

  /// Interns (name, degree). Names must be non-empty and contain no
  /// whitespace or the characters `()[],"`.
  static Generator make(std::string_view name, int degree);

  /// Reconstructs a handle from its raw id (as stored in a Word).
  static Generator from_id(std::uint16_t id) { return Generator(id); }

  std::uint16_t id() const { return id_; }
  int degree() const;
  bool odd() const { return (degree() & 1) != 0; }
  std::string name() const;

  friend bool operator==(Generator, Generator) = default;
  friend auto operator<=>(Generator, Generator) = default;

 private:
  explicit Generator(std::uint16_t id) : id_(id) {}
  std::uint16_t id_ = 0;
};

/// (-1)^(p*q) for integer degrees.
inline int koszul_sign(int p, int q) { return ((p & 1) && (q & 1)) ? -1 : 1; }

}  // namespace dgla

template <>
struct std::hash<dgla::Generator> {
  std::size_t operator()(dgla::Generator g) const noexcept { return g.id(); }
};
