#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "whitney/geometry.hpp"

namespace whitney {

// Element of the fundamental group: a reduced word in the free group on
// generators g1..gk, or a vector of the lattice Z^2 (torus).
//
// Letters are stored as signed generator indices: +j is g_j, -j is g_j^-1.
class GroupElement {
 public:
  enum class Kind { FreeWord, Lattice };

  // The empty word.
  GroupElement() = default;

  static GroupElement word(std::vector<int> letters);
  static GroupElement generator(int index, int exponent = 1);
  static GroupElement lattice(long a, long b);
  static GroupElement lattice(IVec2 v) { return lattice(v.a, v.b); }

  Kind kind() const { return kind_; }
  const std::vector<int>& letters() const { return letters_; }
  IVec2 lattice_vector() const { return lattice_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const;
  int max_generator() const;

  GroupElement inverse() const;

  // Shortlex under g1 < g1^-1 < g2 < g2^-1 < ...; lattice elements
  // lexicographically. Words sort before lattice vectors.
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b);
  friend bool operator==(const GroupElement& a, const GroupElement& b) = default;

  // "1", "g1^2.g2^-1", "(a,b)".
  std::string to_string() const;
  static GroupElement parse(std::string_view text);

 private:
  Kind kind_ = Kind::FreeWord;
  std::vector<int> letters_;
  IVec2 lattice_;
};

// Group law. Throws VariantMismatch when mixing words and lattice vectors.
GroupElement multiply(const GroupElement& a, const GroupElement& b);
inline GroupElement operator*(const GroupElement& a, const GroupElement& b) { return multiply(a, b); }

// Free reduction by a single left-to-right stack pass.
std::vector<int> reduce_letters(std::vector<int> letters);

// Position of a letter in the fixed total order g1 < g1^-1 < g2 < ...
inline int letter_rank(int letter) { return 2 * (letter > 0 ? letter - 1 : -letter - 1) + (letter < 0); }

// Conjugacy class of a group element: the homotopy class of a free loop.
class FreeLoopClass {
 public:
  FreeLoopClass() = default;
  const GroupElement& canonical() const { return canonical_; }
  bool is_trivial() const { return canonical_.is_identity(); }

  friend auto operator<=>(const FreeLoopClass&, const FreeLoopClass&) = default;
  friend bool operator==(const FreeLoopClass&, const FreeLoopClass&) = default;

  // "[g1.g2]"
  std::string to_string() const { return "[" + canonical_.to_string() + "]"; }

 private:
  friend FreeLoopClass conjugacy_class(const GroupElement& a);
  explicit FreeLoopClass(GroupElement canonical) : canonical_(std::move(canonical)) {}
  GroupElement canonical_;
};

// Least cyclic rotation of the cyclically reduced word.
FreeLoopClass conjugacy_class(const GroupElement& a);

// Exact element of (1/2)Z. Stored doubled.
struct HalfInt {
  std::int64_t doubled = 0;

  static constexpr HalfInt integer(std::int64_t n) { return {2 * n}; }
  static constexpr HalfInt halves(std::int64_t n) { return {n}; }
  bool is_integer() const { return doubled % 2 == 0; }
  friend auto operator<=>(HalfInt, HalfInt) = default;
  std::string to_string() const;
};

enum class Basis { Based, Free };

// Finite formal combination with half-integer coefficients of group
// elements (based loops) or of conjugacy classes (free loops). For the free
// basis the stored keys are canonical representatives.
class RingElement {
 public:
  explicit RingElement(Basis basis = Basis::Based) : basis_(basis) {}

  static RingElement term(const GroupElement& g, HalfInt c = HalfInt::integer(1));
  static RingElement term(const FreeLoopClass& cls, HalfInt c = HalfInt::integer(1));

  Basis basis() const { return basis_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_integral() const;
  std::size_t size() const { return terms_.size(); }
  const std::map<GroupElement, std::int64_t>& doubled_terms() const { return terms_; }

  HalfInt coefficient(const GroupElement& g) const;
  HalfInt coefficient(const FreeLoopClass& cls) const { return coefficient(cls.canonical()); }

  void add(const GroupElement& g, HalfInt c);
  void add(const FreeLoopClass& cls, HalfInt c);

  RingElement& operator+=(const RingElement& other);
  RingElement& operator-=(const RingElement& other);
  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  RingElement operator-() const;

  // Throws InvalidInput if a coefficient leaves (1/2)Z.
  RingElement scaled(HalfInt c) const;

  // Sum of all coefficients (the image under the augmentation map).
  HalfInt augmentation() const;

  friend bool operator==(const RingElement& a, const RingElement& b);

  // Terms in key order, "c1*w1 + c2*w2"; zero is "0". Free keys are bracketed.
  std::string to_string() const;
  static RingElement parse(std::string_view text, Basis empty_basis = Basis::Based);

 private:
  void check_basis(const RingElement& other) const;
  void add_doubled(const GroupElement& key, std::int64_t d);

  Basis basis_;
  std::map<GroupElement, std::int64_t> terms_;
};

// True iff x = c([gamma] - 1) for an integer c.
bool is_pushoff_trivial(const RingElement& x, const FreeLoopClass& gamma_class);

}  // namespace whitney
