#include "gddp/numeric.hpp"

#include <random>
#include <string>

#ifdef GDDP_HAVE_OPENMP
#include <omp.h>
#endif

namespace gddp {

namespace {

struct Vec {
  mpq_class x, y;
};

Vec sub(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
mpq_class cross(const Vec& u, const Vec& v) { return u.x * v.y - u.y * v.x; }
mpq_class dot(const Vec& u, const Vec& v) { return u.x * v.x + u.y * v.y; }
mpq_class norm2(const Vec& u) { return dot(u, u); }

class Degenerate {};

mpq_class draw(std::mt19937_64& rng) {
  const long num = static_cast<long>(rng() % 201) - 100;
  const long den = static_cast<long>(rng() % 10) + 1;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

Point2 build(const Constructor& c, const std::vector<Point2>& pts, std::mt19937_64& rng) {
  auto at = [&](std::size_t i) -> const Point2& { return pts[c.args[i].index]; };
  switch (c.kind) {
    case CtorKind::free:
      return {draw(rng), draw(rng)};
    case CtorKind::midpoint:
      return {(at(0).x + at(1).x) / 2, (at(0).y + at(1).y) / 2};
    case CtorKind::on_line: {
      if (at(0) == at(1)) throw Degenerate{};
      const mpq_class t = draw(rng);
      return {at(0).x + t * (at(1).x - at(0).x), at(0).y + t * (at(1).y - at(0).y)};
    }
    case CtorKind::intersect: {
      const Vec u = sub(at(1), at(0)), v = sub(at(3), at(2));
      const mpq_class den = cross(u, v);
      if (den == 0) throw Degenerate{};
      const mpq_class t = cross(sub(at(2), at(0)), v) / den;
      return {at(0).x + t * u.x, at(0).y + t * u.y};
    }
    case CtorKind::parallel_point:
      return {at(0).x + at(2).x - at(1).x, at(0).y + at(2).y - at(1).y};
    case CtorKind::foot: {
      const Vec d = sub(at(2), at(1));
      const mpq_class n = norm2(d);
      if (n == 0) throw Degenerate{};
      const mpq_class t = dot(sub(at(0), at(1)), d) / n;
      return {at(1).x + t * d.x, at(1).y + t * d.y};
    }
  }
  throw Degenerate{};
}

std::string describe(const Problem& p, std::size_t i) {
  const auto& c = *p.points[i].ctor;
  std::string s = p.points[i].name + " = " + std::string(ctor_name(c.kind));
  if (c.kind == CtorKind::free) return s;
  s += "(";
  for (std::size_t k = 0; k < c.args.size(); ++k)
    s += (k ? "," : "") + p.points[c.args[k].index].name;
  return s + ")";
}

}  // namespace

NumericModel realize(const Problem& problem, std::uint64_t seed) {
  if (problem.format != Format::construct)
    throw UnsupportedFormat("numeric realization needs a construct-format problem");
  std::mt19937_64 rng(seed);
  std::string culprit = "no points";
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    std::vector<Point2> pts;
    pts.reserve(problem.points.size());
    bool ok = true;
    for (std::size_t i = 0; i < problem.points.size() && ok; ++i) {
      try {
        pts.push_back(build(*problem.points[i].ctor, pts, rng));
      } catch (const Degenerate&) {
        culprit = describe(problem, i);
        ok = false;
        break;
      }
      for (std::size_t j = 0; j < i; ++j)
        if (pts[j] == pts[i]) {
          culprit = describe(problem, i);
          ok = false;
          break;
        }
    }
    if (ok) return {std::move(pts), seed};
  }
  throw RealizationError("cannot realize " + culprit + " after " +
                         std::to_string(kMaxRedraws) + " draws");
}

bool eval_fact(const NumericModel& m, const Fact& f) {
  auto P = [&](std::size_t i) -> const Point2& { return m.at(f.args[i]); };
  auto seg = [&](std::size_t i) { return sub(P(i + 1), P(i)); };
  switch (f.pred) {
    case Pred::coll:
      return cross(seg(0), sub(P(2), P(0))) == 0;
    case Pred::para:
      return cross(seg(0), seg(2)) == 0 && P(0) != P(1) && P(2) != P(3);
    case Pred::perp:
      return dot(seg(0), seg(2)) == 0;
    case Pred::midp:
      return 2 * P(0).x == P(1).x + P(2).x && 2 * P(0).y == P(1).y + P(2).y;
    case Pred::cong:
      return norm2(seg(0)) == norm2(seg(2));
    case Pred::eqangle: {
      const Vec u = seg(0), v = seg(2), w = seg(4), z = seg(6);
      return cross(u, v) * dot(w, z) == cross(w, z) * dot(u, v);
    }
    case Pred::eqratio:
      return norm2(seg(0)) * norm2(seg(6)) == norm2(seg(2)) * norm2(seg(4));
    case Pred::simtri: {
      const mpq_class a1 = norm2(sub(P(1), P(0))), b1 = norm2(sub(P(2), P(1))),
                      c1 = norm2(sub(P(0), P(2)));
      const mpq_class a2 = norm2(sub(P(4), P(3))), b2 = norm2(sub(P(5), P(4))),
                      c2 = norm2(sub(P(3), P(5)));
      return a1 * b2 == b1 * a2 && b1 * c2 == c1 * b2 && c1 * a2 == a1 * c2;
    }
    case Pred::cyclic: {
      // rows (x^2+y^2, x, y, 1); subtract row 0 to get a 3x3 determinant
      mpq_class r[3][3];
      const mpq_class w0 = P(0).x * P(0).x + P(0).y * P(0).y;
      for (std::size_t i = 0; i < 3; ++i) {
        const Point2& q = P(i + 1);
        r[i][0] = q.x * q.x + q.y * q.y - w0;
        r[i][1] = q.x - P(0).x;
        r[i][2] = q.y - P(0).y;
      }
      const mpq_class det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
                            r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
                            r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
      return det == 0;
    }
    case Pred::neq:
      return P(0) != P(1);
  }
  return false;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::supported: return "supported";
    case Verdict::refuted: return "refuted";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

// 0 = not valid, 1 = valid and goal false, 2 = valid and goal true
int check_one(const Problem& problem, const std::vector<Fact>& hyps, std::uint64_t seed) {
  NumericModel m;
  try {
    m = realize(problem, seed);
  } catch (const RealizationError&) {
    return 0;
  }
  for (const Fact& h : hyps)
    if (!eval_fact(m, h)) return 0;
  return eval_fact(m, problem.goal) ? 2 : 1;
}

}  // namespace

CheckReport check_conjecture(const Problem& problem, std::size_t n_models, std::uint64_t seed,
                             Exec exec, std::size_t min_valid) {
  if (problem.format != Format::construct)
    throw UnsupportedFormat("numeric check needs a construct-format problem");
  const auto hyps = initial_facts(problem);
  std::vector<int> outcome(n_models, 0);
  const auto n = static_cast<std::int64_t>(n_models);
  if (exec == Exec::parallel) {
#ifdef GDDP_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t i = 0; i < n; ++i)
      outcome[i] = check_one(problem, hyps, seed + static_cast<std::uint64_t>(i));
  } else {
    for (std::int64_t i = 0; i < n; ++i)
      outcome[i] = check_one(problem, hyps, seed + static_cast<std::uint64_t>(i));
  }

  CheckReport r;
  r.models_tried = n_models;
  for (std::size_t i = 0; i < n_models; ++i) {
    if (outcome[i] == 0) continue;
    ++r.models_valid;
    if (outcome[i] == 2) ++r.goal_holds;
    else if (!r.first_refuting) r.first_refuting = i;
  }
  if (r.first_refuting) r.verdict = Verdict::refuted;
  else if (r.models_valid >= min_valid) r.verdict = Verdict::supported;
  else r.verdict = Verdict::inconclusive;
  return r;
}

namespace {

struct SeedOutcome {
  bool valid = false;
  std::vector<std::size_t> failed;  // indices into the fact list
};

SeedOutcome sweep_one(const Problem& problem, const std::vector<Fact>& hyps,
                      std::span<const Fact> facts, std::uint64_t seed) {
  SeedOutcome out;
  NumericModel m;
  try {
    m = realize(problem, seed);
  } catch (const RealizationError&) {
    return out;
  }
  for (const Fact& h : hyps)
    if (!eval_fact(m, h)) return out;
  out.valid = true;
  for (std::size_t i = 0; i < facts.size(); ++i)
    if (!eval_fact(m, facts[i])) out.failed.push_back(i);
  return out;
}

}  // namespace

SweepReport soundness_sweep(const Problem& model_problem, std::span<const Fact> facts,
                            std::span<const PointId> point_map, std::uint64_t first_seed,
                            std::size_t n, Exec exec) {
  std::vector<Fact> mapped(facts.begin(), facts.end());
  if (!point_map.empty())
    for (Fact& f : mapped)
      for (std::size_t i = 0; i < arity(f.pred); ++i) f.args[i] = point_map[f.args[i].index];
  const auto hyps = initial_facts(model_problem);

  std::vector<SeedOutcome> per_seed(n);
  const auto count = static_cast<std::int64_t>(n);
  if (exec == Exec::parallel) {
#ifdef GDDP_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t i = 0; i < count; ++i)
      per_seed[i] = sweep_one(model_problem, hyps, mapped, first_seed + static_cast<std::uint64_t>(i));
  } else {
    for (std::int64_t i = 0; i < count; ++i)
      per_seed[i] = sweep_one(model_problem, hyps, mapped, first_seed + static_cast<std::uint64_t>(i));
  }

  SweepReport r;
  for (std::size_t i = 0; i < n; ++i) {
    if (!per_seed[i].valid) continue;
    ++r.models_valid;
    r.evaluations += mapped.size();
    for (std::size_t k : per_seed[i].failed)
      r.violations.push_back({first_seed + i, facts[k]});
  }
  return r;
}

}  // namespace gddp
