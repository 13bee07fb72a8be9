#include "gddp/model.hpp"

#include <algorithm>
#include <set>

namespace gddp {

namespace {

constexpr std::array<std::string_view, kPredCount> kNames{
    "coll", "para", "perp", "midp", "cong", "eqangle", "eqratio", "simtri", "cyclic", "neq"};

Perm identity_perm() {
  Perm p{};
  for (std::uint8_t i = 0; i < kMaxArity; ++i) p[i] = i;
  return p;
}

Perm make_perm(std::initializer_list<int> head) {
  Perm p = identity_perm();
  std::uint8_t i = 0;
  for (int v : head) p[i++] = static_cast<std::uint8_t>(v);
  return p;
}

Perm compose(const Perm& a, const Perm& b) {
  // (a then b): image[i] = args[a[b[i]]]
  Perm r{};
  for (std::size_t i = 0; i < kMaxArity; ++i) r[i] = a[b[i]];
  return r;
}

std::vector<Perm> close_group(const std::vector<Perm>& generators) {
  std::vector<Perm> group{identity_perm()};
  std::set<Perm> seen{group.front()};
  for (std::size_t k = 0; k < group.size(); ++k) {
    for (const Perm& g : generators) {
      Perm next = compose(group[k], g);
      if (seen.insert(next).second) group.push_back(next);
    }
  }
  return group;
}

// Segment-level generators for the 8-ary ratio/angle predicates. With the
// four segments s0..s3 the relation is s0*s3 = s1*s2 (ratios) or
// theta0 + theta3 = theta1 + theta2 (full angles), so each segment may be
// reversed and the segments permuted by the dihedral group fixing the
// pairing {{0,3},{1,2}}.
std::vector<Perm> four_segment_generators() {
  return {
      make_perm({1, 0, 2, 3, 4, 5, 6, 7}),
      make_perm({0, 1, 3, 2, 4, 5, 6, 7}),
      make_perm({0, 1, 2, 3, 5, 4, 6, 7}),
      make_perm({0, 1, 2, 3, 4, 5, 7, 6}),
      make_perm({6, 7, 2, 3, 4, 5, 0, 1}),  // s0 <-> s3
      make_perm({0, 1, 4, 5, 2, 3, 6, 7}),  // s1 <-> s2
      make_perm({2, 3, 0, 1, 6, 7, 4, 5}),  // (s0 s1)(s2 s3)
  };
}

std::vector<std::vector<Perm>> build_groups() {
  std::vector<std::vector<Perm>> g(kPredCount);
  auto set = [&](Pred p, std::vector<Perm> gens) {
    g[static_cast<std::size_t>(p)] = close_group(gens);
  };
  set(Pred::coll, {make_perm({1, 0, 2}), make_perm({0, 2, 1})});
  std::vector<Perm> two_segments{make_perm({1, 0, 2, 3}), make_perm({0, 1, 3, 2}),
                                 make_perm({2, 3, 0, 1})};
  set(Pred::para, two_segments);
  set(Pred::perp, two_segments);
  set(Pred::cong, two_segments);
  set(Pred::midp, {make_perm({0, 2, 1})});
  set(Pred::eqangle, four_segment_generators());
  set(Pred::eqratio, four_segment_generators());
  set(Pred::simtri, {make_perm({1, 0, 2, 4, 3, 5}), make_perm({0, 2, 1, 3, 5, 4}),
                     make_perm({3, 4, 5, 0, 1, 2})});
  set(Pred::cyclic, {make_perm({1, 0, 2, 3}), make_perm({1, 2, 3, 0})});
  set(Pred::neq, {make_perm({1, 0})});
  return g;
}

const std::vector<std::vector<Perm>>& groups() {
  static const std::vector<std::vector<Perm>> g = build_groups();
  return g;
}

bool same_segment(PointId a, PointId b, PointId c, PointId d) {
  return (a == c && b == d) || (a == d && b == c);
}

}  // namespace

std::string_view pred_name(Pred p) { return kNames[static_cast<std::size_t>(p)]; }

std::optional<Pred> pred_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kPredCount; ++i)
    if (kNames[i] == name) return static_cast<Pred>(i);
  return std::nullopt;
}

std::span<const Perm> symmetry_group(Pred p) {
  return groups()[static_cast<std::size_t>(p)];
}

Fact::Fact(Pred p, std::span<const PointId> points) : pred(p) {
  if (points.size() != arity(p))
    throw MalformedFact(std::string(pred_name(p)) + "/" + std::to_string(arity(p)) +
                        " applied to " + std::to_string(points.size()) + " points");
  std::copy(points.begin(), points.end(), args.begin());
}

Fact apply_perm(const Fact& f, const Perm& p) {
  Fact r;
  r.pred = f.pred;
  for (std::size_t i = 0; i < f.size(); ++i) r.args[i] = f.args[p[i]];
  return r;
}

namespace {

using Seg = std::array<PointId, 2>;

Seg segment(const Fact& f, std::size_t i) {
  const PointId a = f.args[2 * i], b = f.args[2 * i + 1];
  return a < b ? Seg{a, b} : Seg{b, a};
}

Fact from_segments(Pred pred, std::initializer_list<Seg> segs) {
  Fact r;
  r.pred = pred;
  std::size_t i = 0;
  for (const Seg& s : segs) {
    r.args[i++] = s[0];
    r.args[i++] = s[1];
  }
  return r;
}

}  // namespace

// Segment reversals act independently on disjoint positions, so the orbit
// minimum is reached by ordering each segment first and then trying only
// the segment arrangements.
Fact canonicalize(const Fact& f) {
  Fact r = f;
  auto sort_args = [&](std::size_t from, std::size_t to) {
    std::sort(r.args.begin() + static_cast<long>(from), r.args.begin() + static_cast<long>(to));
  };
  switch (f.pred) {
    case Pred::coll: sort_args(0, 3); return r;
    case Pred::cyclic: sort_args(0, 4); return r;
    case Pred::neq: sort_args(0, 2); return r;
    case Pred::midp: sort_args(1, 3); return r;
    case Pred::para:
    case Pred::perp:
    case Pred::cong: {
      Seg a = segment(f, 0), b = segment(f, 1);
      if (b < a) std::swap(a, b);
      return from_segments(f.pred, {a, b});
    }
    case Pred::eqangle:
    case Pred::eqratio: {
      const Seg s0 = segment(f, 0), s1 = segment(f, 1), s2 = segment(f, 2), s3 = segment(f, 3);
      const Fact options[] = {
          from_segments(f.pred, {s0, s1, s2, s3}), from_segments(f.pred, {s0, s2, s1, s3}),
          from_segments(f.pred, {s3, s1, s2, s0}), from_segments(f.pred, {s3, s2, s1, s0}),
          from_segments(f.pred, {s1, s0, s3, s2}), from_segments(f.pred, {s1, s3, s0, s2}),
          from_segments(f.pred, {s2, s0, s3, s1}), from_segments(f.pred, {s2, s3, s0, s1})};
      return *std::min_element(std::begin(options), std::end(options));
    }
    case Pred::simtri:
      break;
  }
  Fact best = f;
  for (const Perm& p : symmetry_group(f.pred)) {
    Fact image = apply_perm(f, p);
    if (image < best) best = image;
  }
  return best;
}

bool is_canonical(const Fact& f) { return canonicalize(f) == f; }

std::vector<Fact> orbit(const Fact& f) {
  std::vector<Fact> out;
  for (const Perm& p : symmetry_group(f.pred)) {
    Fact image = apply_perm(f, p);
    if (std::find(out.begin(), out.end(), image) == out.end()) out.push_back(image);
  }
  return out;
}

bool is_tautology(const Fact& f) {
  const auto& a = f.args;
  switch (f.pred) {
    case Pred::coll:
      return a[0] == a[1] || a[1] == a[2] || a[0] == a[2];
    case Pred::cyclic:
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
          if (a[i] == a[j]) return true;
      return false;
    case Pred::perp:
      return a[0] == a[1] || a[2] == a[3];
    case Pred::cong:
      return same_segment(a[0], a[1], a[2], a[3]);
    case Pred::midp:
      return a[0] == a[1] && a[1] == a[2];
    case Pred::eqangle: {
      if (a[0] == a[1] || a[2] == a[3] || a[4] == a[5] || a[6] == a[7]) return true;
      const bool same_angle = same_segment(a[0], a[1], a[4], a[5]) &&
                              same_segment(a[2], a[3], a[6], a[7]);
      const bool both_zero = same_segment(a[0], a[1], a[2], a[3]) &&
                             same_segment(a[4], a[5], a[6], a[7]);
      return same_angle || both_zero;
    }
    case Pred::eqratio: {
      const bool same_ratio = same_segment(a[0], a[1], a[4], a[5]) &&
                              same_segment(a[2], a[3], a[6], a[7]);
      const bool both_unit = same_segment(a[0], a[1], a[2], a[3]) &&
                             same_segment(a[4], a[5], a[6], a[7]);
      return same_ratio || both_unit;
    }
    case Pred::simtri:
      return a[0] == a[3] && a[1] == a[4] && a[2] == a[5];
    case Pred::para:
      return a[0] != a[1] && same_segment(a[0], a[1], a[2], a[3]);
    case Pred::neq:
      return false;
  }
  return false;
}

bool is_ill_formed(const Fact& f) {
  return f.pred == Pred::para && (f.args[0] == f.args[1] || f.args[2] == f.args[3]);
}

std::size_t FactHash::operator()(const Fact& f) const noexcept {
  std::size_t h = static_cast<std::size_t>(f.pred) * 0x9E3779B97F4A7C15ull;
  for (std::size_t i = 0; i < f.size(); ++i) {
    h ^= f.args[i].index + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::string to_string(const Fact& f, std::span<const std::string> names) {
  std::string s(pred_name(f.pred));
  s += '(';
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += ',';
    const auto idx = f.args[i].index;
    s += idx < names.size() ? names[idx] : "#" + std::to_string(idx);
  }
  s += ')';
  return s;
}

}  // namespace gddp
