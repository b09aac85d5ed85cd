#pragma once

// Brute-force reference computations, independent of the library code paths.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "whitney/geometry.hpp"

namespace oracle {

using Word = std::vector<int>;

// Delete one cancelling pair at a time until none is left.
inline Word reduce(Word w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] == -w[i + 1]) {
        w.erase(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

inline Word inverse(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

inline Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// g1 < g1^-1 < g2 < g2^-1 < ...
inline int rank(int letter) { return letter > 0 ? 2 * letter - 2 : -2 * letter - 1; }

inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (rank(a[i]) != rank(b[i])) return rank(a[i]) < rank(b[i]);
  return false;
}

// Least cyclic rotation of the cyclically reduced form: conjugate by every
// rotation and keep the shortest, then the least.
inline Word canonical_conjugate(const Word& w) {
  Word best = reduce(w);
  bool changed = true;
  while (changed) {
    changed = false;
    const Word cur = best;
    for (std::size_t k = 0; k < cur.size(); ++k) {
      Word rot(cur.begin() + static_cast<long>(k), cur.end());
      rot.insert(rot.end(), cur.begin(), cur.begin() + static_cast<long>(k));
      rot = reduce(rot);
      if (shortlex_less(rot, best)) {
        best = rot;
        changed = true;
      }
    }
  }
  return best;
}

// Every letter sequence of exactly `length` letters over g1..g_gens and inverses.
inline void for_each_word(int length, int gens, const std::function<void(const Word&)>& f) {
  std::vector<int> alphabet;
  for (int g = 1; g <= gens; ++g) {
    alphabet.push_back(g);
    alphabet.push_back(-g);
  }
  Word w(static_cast<std::size_t>(length), 0);
  std::vector<std::size_t> idx(static_cast<std::size_t>(length), 0);
  while (true) {
    for (int i = 0; i < length; ++i) w[static_cast<std::size_t>(i)] = alphabet[idx[static_cast<std::size_t>(i)]];
    f(w);
    int i = length - 1;
    while (i >= 0 && ++idx[static_cast<std::size_t>(i)] == alphabet.size()) idx[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
  }
}

// Only freely reduced words, built letter by letter.
inline void for_each_reduced_word(int max_length, int gens, const std::function<void(const Word&)>& f) {
  Word w;
  std::function<void()> rec = [&] {
    f(w);
    if (static_cast<int>(w.size()) == max_length) return;
    for (int g = 1; g <= gens; ++g) {
      for (int l : {g, -g}) {
        if (!w.empty() && w.back() == -l) continue;
        w.push_back(l);
        rec();
        w.pop_back();
      }
    }
  };
  rec();
}

// Proper crossings of all segment pairs of a closed polyline, O(n^2).
inline int count_self_crossings(const std::vector<whitney::Vec2>& pts) {
  const std::size_t n = pts.size();
  int count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const whitney::Vec2 a = pts[i], b = pts[(i + 1) % n], c = pts[j], d = pts[(j + 1) % n];
      const double d1 = whitney::cross(b - a, c - a), d2 = whitney::cross(b - a, d - a);
      const double d3 = whitney::cross(d - c, a - c), d4 = whitney::cross(d - c, b - c);
      if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) ++count;
    }
  }
  return count;
}

// Total turning of a closed polyline in units of full turns.
inline double turning(const std::vector<whitney::Vec2>& pts) {
  const std::size_t n = pts.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const whitney::Vec2 d0 = pts[(i + 1) % n] - pts[i];
    const whitney::Vec2 d1 = pts[(i + 2) % n] - pts[(i + 1) % n];
    total += std::atan2(whitney::cross(d0, d1), whitney::dot(d0, d1));
  }
  return total / (2 * std::numbers::pi);
}

// Signed area, positive for counter-clockwise loops.
inline double signed_area(const std::vector<whitney::Vec2>& pts) {
  double a = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) a += whitney::cross(pts[i], pts[(i + 1) % pts.size()]);
  return a / 2;
}

// Winding number of a closed polyline around q by summed angles.
inline int winding_around(const std::vector<whitney::Vec2>& pts, whitney::Vec2 q) {
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const whitney::Vec2 a = pts[i] - q, b = pts[(i + 1) % pts.size()] - q;
    total += std::atan2(whitney::cross(a, b), whitney::dot(a, b));
  }
  return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

}  // namespace oracle
