#include "whitney/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace whitney {

double polyline_length(std::span<const Vec2> pts) {
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) total += norm(pts[i] - pts[i - 1]);
  return total;
}

namespace {

// A piece of an original segment, possibly translated into the fundamental
// square (periodic mode). original point = piece point + shift.
struct Piece {
  Vec2 p0, p1;
  std::size_t seg;
  double f0, f1;
  IVec2 shift;
};

constexpr double kMaxPeriodicPiece = 0.25;

// slack on segment parameters so crossings through vertices are not lost
constexpr double kWindow = 1e-9;

std::vector<Piece> make_pieces(std::span<const Vec2> pts, bool periodic) {
  std::vector<Piece> out;
  if (pts.size() < 2) return out;
  out.reserve(pts.size());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Vec2 a = pts[i];
    const Vec2 b = pts[i + 1];
    if (!periodic) {
      out.push_back({a, b, i, 0.0, 1.0, {}});
      continue;
    }
    const double len = norm(b - a);
    const int parts = std::max(1, static_cast<int>(std::ceil(len / kMaxPeriodicPiece)));
    for (int k = 0; k < parts; ++k) {
      const double f0 = static_cast<double>(k) / parts;
      const double f1 = static_cast<double>(k + 1) / parts;
      const Vec2 q0 = lerp(a, b, f0);
      const Vec2 q1 = k + 1 == parts ? b : lerp(a, b, f1);
      const IVec2 shift{static_cast<long>(std::floor(std::min(q0.x, q1.x))),
                        static_cast<long>(std::floor(std::min(q0.y, q1.y)))};
      const Vec2 s = to_vec(shift);
      out.push_back({q0 - s, q1 - s, i, f0, f1, shift});
    }
  }
  return out;
}

class SegmentGrid {
 public:
  explicit SegmentGrid(const std::vector<Piece>& pieces) : pieces_(pieces) {
    if (pieces.empty()) return;
    lo_ = {std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    Vec2 hi{-std::numeric_limits<double>::max(), -std::numeric_limits<double>::max()};
    double total = 0.0;
    for (const auto& p : pieces) {
      lo_.x = std::min({lo_.x, p.p0.x, p.p1.x});
      lo_.y = std::min({lo_.y, p.p0.y, p.p1.y});
      hi.x = std::max({hi.x, p.p0.x, p.p1.x});
      hi.y = std::max({hi.y, p.p0.y, p.p1.y});
      total += norm(p.p1 - p.p0);
    }
    const double extent = std::max({hi.x - lo_.x, hi.y - lo_.y, 1e-12});
    cell_ = std::max(2.0 * total / static_cast<double>(pieces.size()), extent / 256.0);
    cell_ = std::max(cell_, 1e-12);
    nx_ = static_cast<long>((hi.x - lo_.x) / cell_) + 1;
    ny_ = static_cast<long>((hi.y - lo_.y) / cell_) + 1;
    cells_.resize(static_cast<std::size_t>(nx_ * ny_));
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      const auto& p = pieces[k];
      for_cells(std::min(p.p0.x, p.p1.x), std::min(p.p0.y, p.p1.y), std::max(p.p0.x, p.p1.x),
                std::max(p.p0.y, p.p1.y),
                [&](std::size_t c) { cells_[c].push_back(static_cast<std::uint32_t>(k)); });
    }
    stamp_.assign(pieces.size(), 0);
  }

  template <class F>
  void query(Vec2 a, Vec2 b, F&& visit) {
    if (pieces_.empty()) return;
    ++epoch_;
    for_cells(std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y),
              [&](std::size_t c) {
                for (std::uint32_t k : cells_[c]) {
                  if (stamp_[k] == epoch_) continue;
                  stamp_[k] = epoch_;
                  visit(k);
                }
              });
  }

 private:
  template <class F>
  void for_cells(double x0, double y0, double x1, double y1, F&& f) const {
    const double pad = 1e-9 * cell_;
    long i0 = static_cast<long>(std::floor((x0 - pad - lo_.x) / cell_));
    long j0 = static_cast<long>(std::floor((y0 - pad - lo_.y) / cell_));
    long i1 = static_cast<long>(std::floor((x1 + pad - lo_.x) / cell_));
    long j1 = static_cast<long>(std::floor((y1 + pad - lo_.y) / cell_));
    if (i1 < 0 || j1 < 0 || i0 >= nx_ || j0 >= ny_) return;
    i0 = std::max(i0, 0L);
    j0 = std::max(j0, 0L);
    i1 = std::min(i1, nx_ - 1);
    j1 = std::min(j1, ny_ - 1);
    for (long j = j0; j <= j1; ++j)
      for (long i = i0; i <= i1; ++i) f(static_cast<std::size_t>(j * nx_ + i));
  }

  const std::vector<Piece>& pieces_;
  Vec2 lo_;
  double cell_ = 1.0;
  long nx_ = 0, ny_ = 0;
  std::vector<std::vector<std::uint32_t>> cells_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
};

}  // namespace

std::vector<SegmentHit> intersect_polylines(std::span<const Vec2> a, std::span<const Vec2> b,
                                            bool periodic) {
  std::vector<SegmentHit> hits;
  const auto pa = make_pieces(a, periodic);
  const auto pb = make_pieces(b, periodic);
  if (pa.empty() || pb.empty()) return hits;
  SegmentGrid grid(pb);

  static constexpr IVec2 kZero[] = {{0, 0}};
  static constexpr IVec2 kNeighbours[] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 0},
                                          {0, 1},   {1, -1}, {1, 0},  {1, 1}};
  const std::span<const IVec2> shifts = periodic ? std::span<const IVec2>(kNeighbours)
                                                 : std::span<const IVec2>(kZero);

  for (const auto& piece_a : pa) {
    for (IVec2 n : shifts) {
      const Vec2 p = piece_a.p0 + to_vec(n);
      const Vec2 r = piece_a.p1 - piece_a.p0;
      grid.query(p, p + r, [&](std::uint32_t k) {
        const Piece& piece_b = pb[k];
        const Vec2 q = piece_b.p0;
        const Vec2 s = piece_b.p1 - piece_b.p0;
        const double den = cross(r, s);
        if (den == 0.0) return;
        const Vec2 qp = q - p;
        const double ta = cross(qp, s) / den;
        const double tb = cross(qp, r) / den;
        if (!(ta >= -kWindow && ta <= 1.0 + kWindow && tb >= -kWindow && tb <= 1.0 + kWindow)) return;

        SegmentHit hit;
        hit.first = piece_a.seg;
        hit.second = piece_b.seg;
        hit.first_frac = std::clamp(piece_a.f0 + ta * (piece_a.f1 - piece_a.f0), 0.0, std::nextafter(1.0, 0.0));
        hit.second_frac = std::clamp(piece_b.f0 + tb * (piece_b.f1 - piece_b.f0), 0.0, std::nextafter(1.0, 0.0));
        hit.offset = piece_a.shift - piece_b.shift - n;
        const Vec2 da = a[hit.first + 1] - a[hit.first];
        const Vec2 db = b[hit.second + 1] - b[hit.second];
        hit.location = lerp(a[hit.first], a[hit.first + 1], hit.first_frac);
        hit.det = cross(da, db);
        hit.sin_angle = std::abs(hit.det) / (norm(da) * norm(db));
        hits.push_back(hit);
      });
    }
  }
  std::sort(hits.begin(), hits.end(), [](const SegmentHit& x, const SegmentHit& y) {
    if (x.first != y.first) return x.first < y.first;
    if (x.first_frac != y.first_frac) return x.first_frac < y.first_frac;
    if (x.second != y.second) return x.second < y.second;
    return x.second_frac < y.second_frac;
  });

  // a crossing at a shared vertex shows up once per adjacent segment
  auto param = [](std::size_t seg, double frac) { return static_cast<double>(seg) + frac; };
  std::vector<SegmentHit> merged;
  for (const SegmentHit& h : hits) {
    bool duplicate = false;
    for (auto it = merged.rbegin(); it != merged.rend(); ++it) {
      if (param(h.first, h.first_frac) - param(it->first, it->first_frac) > 2 * kWindow) break;
      if (std::abs(param(h.second, h.second_frac) - param(it->second, it->second_frac)) <= 2 * kWindow &&
          h.offset == it->offset) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) merged.push_back(h);
  }
  return merged;
}

std::vector<SegmentHit> self_intersections(std::span<const Vec2> closed, bool periodic,
                                           IVec2 closure) {
  std::vector<SegmentHit> out;
  if (closed.size() < 4) return out;
  const std::size_t n = closed.size() - 1;
  for (const auto& h : intersect_polylines(closed, closed, periodic)) {
    if (h.first >= h.second) continue;
    if (h.second == h.first + 1 && h.offset == IVec2{}) continue;
    if (h.first == 0 && h.second == n - 1 && h.offset == -closure) continue;
    out.push_back(h);
  }
  return out;
}

}  // namespace whitney
