#include <random>

#include "doctest.h"
#include "gddp/engine.hpp"
#include "gddp/numeric.hpp"
#include "support.hpp"

using namespace gddp;
using namespace gddp::test;

namespace {

mpq_class oracle_draw(std::mt19937_64& rng) {
  const long n = static_cast<long>(rng() % 201) - 100;
  const long d = static_cast<long>(rng() % 10) + 1;
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

// Free points only: draw x then y per point, redraw everything on a coincidence.
std::vector<Point2> oracle_free_model(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  while (true) {
    std::vector<Point2> pts;
    bool clash = false;
    for (std::size_t i = 0; i < n && !clash; ++i) {
      Point2 p{oracle_draw(rng), oracle_draw(rng)};
      for (const auto& q : pts) clash = clash || q == p;
      pts.push_back(p);
    }
    if (!clash) return pts;
  }
}

bool cross_zero(const Point2& a, const Point2& b, const Point2& c) {
  return (b.x - a.x) * (c.y - a.y) == (b.y - a.y) * (c.x - a.x);
}

// Concyclic or all on one line, via an explicit circumcenter.
bool oracle_cyclic(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  if (cross_zero(a, b, c)) {
    if (a == b || b == c || a == c) return true;
    return cross_zero(a, b, d);
  }
  // perpendicular bisectors of ab and ac
  const mpq_class a1 = 2 * (b.x - a.x), b1 = 2 * (b.y - a.y);
  const mpq_class c1 = b.x * b.x + b.y * b.y - a.x * a.x - a.y * a.y;
  const mpq_class a2 = 2 * (c.x - a.x), b2 = 2 * (c.y - a.y);
  const mpq_class c2 = c.x * c.x + c.y * c.y - a.x * a.x - a.y * a.y;
  const mpq_class det = a1 * b2 - a2 * b1;
  const mpq_class ox = (c1 * b2 - c2 * b1) / det, oy = (a1 * c2 - a2 * c1) / det;
  auto r2 = [&](const Point2& p) -> mpq_class { return (p.x - ox) * (p.x - ox) + (p.y - oy) * (p.y - oy); };
  return r2(d) == r2(a);
}

// Angle(u,v) = angle(w,z) mod pi iff (v * conj u) * conj(z * conj w) is real.
bool oracle_eqangle(const NumericModel& m, const Fact& f) {
  auto v = [&](std::size_t i) {
    const Point2& p = m.at(f.args[i]);
    const Point2& q = m.at(f.args[i + 1]);
    return std::pair<mpq_class, mpq_class>{q.x - p.x, q.y - p.y};
  };
  auto mul_conj = [](auto a, auto b) {  // a * conj(b)
    return std::pair<mpq_class, mpq_class>{a.first * b.first + a.second * b.second,
                                           a.second * b.first - a.first * b.second};
  };
  const auto l = mul_conj(v(2), v(0));
  const auto r = mul_conj(v(6), v(4));
  return mul_conj(l, r).second == 0;
}

NumericModel lattice_model(std::mt19937_64& rng, std::size_t n) {
  NumericModel m;
  for (std::size_t i = 0; i < n; ++i)
    m.coords.push_back({mpq_class(static_cast<long>(rng() % 3)), mpq_class(static_cast<long>(rng() % 3))});
  return m;
}

Fact random_fact(std::mt19937_64& rng, Pred pred, std::size_t n) {
  std::vector<PointId> a(arity(pred));
  for (auto& v : a) v = PointId{static_cast<std::uint32_t>(rng() % n)};
  return Fact(pred, a);
}

const std::array<Pred, kPredCount> kAllPreds{Pred::coll,    Pred::para,   Pred::perp,  Pred::midp,
                                             Pred::cong,    Pred::eqangle, Pred::eqratio,
                                             Pred::simtri,  Pred::cyclic, Pred::neq};

}  // namespace

TEST_CASE("free points follow the documented draw") {
  const Problem p = load_problem("problems/p2.gdd");
  for (std::uint64_t seed : {0ull, 1ull, 42ull, 12345ull}) {
    CAPTURE(seed);
    CHECK(realize(p, seed).coords == oracle_free_model(4, seed));
  }
}

TEST_CASE("midpoint and intersection coordinates") {
  const Problem p1 = load_problem("problems/p1.gdd");
  const NumericModel m = realize(p1, 3);
  const Point2 &A = m.at(pt(p1, "A")), &B = m.at(pt(p1, "B")), &E = m.at(pt(p1, "E"));
  CHECK(E.x == (A.x + B.x) / 2);
  CHECK(E.y == (A.y + B.y) / 2);

  const Problem p3 = load_problem("problems/p3.gdd");
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const NumericModel n = realize(p3, seed);
    const Point2 &G = n.at(pt(p3, "G")), &F = n.at(pt(p3, "F")), &Q = n.at(pt(p3, "Q")),
                 &C = n.at(pt(p3, "C")), &A2 = n.at(pt(p3, "A"));
    CHECK(cross_zero(F, Q, G));
    CHECK(cross_zero(C, A2, G));
  }
}

TEST_CASE("realization is deterministic") {
  for (const auto& file : {"problems/p1.gdd", "problems/p3.gdd", "problems/p4.gdd"}) {
    const Problem p = load_problem(file);
    CHECK(realize(p, 9) == realize(p, 9));
    CHECK_FALSE(realize(p, 9) == realize(p, 10));
  }
}

TEST_CASE("constructors are faithful") {
  for (const auto& file : {"problems/p1.gdd", "problems/p3.gdd", "problems/p4.gdd"}) {
    CAPTURE(file);
    const Problem p = load_problem(file);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const NumericModel m = realize(p, seed);
      for (const Fact& f : constructor_facts(p)) CHECK(eval_fact(m, f));
      for (std::size_t i = 0; i < p.points.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(m.coords[i] == m.coords[j]);
    }
  }
  const Problem p3 = load_problem("problems/p3.gdd");
  const NumericModel m = realize(p3, 4);
  CHECK(eval_fact(m, fact(p3, Pred::perp, {"D", "K", "C", "X"})));
  CHECK(eval_fact(m, fact(p3, Pred::cong, {"C", "B", "C", "D"})));
}

TEST_CASE("evaluation agrees with independent formulas on a small lattice") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 3000; ++trial) {
    const NumericModel m = lattice_model(rng, 5);
    const Fact c = random_fact(rng, Pred::cyclic, 5);
    CHECK(eval_fact(m, c) ==
          oracle_cyclic(m.at(c.args[0]), m.at(c.args[1]), m.at(c.args[2]), m.at(c.args[3])));
    const Fact e = random_fact(rng, Pred::eqangle, 5);
    CHECK(eval_fact(m, e) == oracle_eqangle(m, e));
    const Fact mp = random_fact(rng, Pred::midp, 5);
    const Point2 &M = m.at(mp.args[0]), &X = m.at(mp.args[1]), &Y = m.at(mp.args[2]);
    CHECK(eval_fact(m, mp) == (cross_zero(X, Y, M) &&
                               (M.x - X.x) * (M.x - X.x) + (M.y - X.y) * (M.y - X.y) ==
                                   (M.x - Y.x) * (M.x - Y.x) + (M.y - Y.y) * (M.y - Y.y) &&
                               (X == Y ? M == X : true)));
  }
}

TEST_CASE("property: every group image of a fact has the same truth value") {
  std::mt19937_64 rng(29);
  std::size_t true_seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const NumericModel m = lattice_model(rng, 6);
    for (Pred pred : kAllPreds) {
      const Fact f = random_fact(rng, pred, 6);
      const bool v = eval_fact(m, f);
      true_seen += v;
      for (const Perm& g : symmetry_group(pred)) REQUIRE(eval_fact(m, apply_perm(f, g)) == v);
    }
  }
  CHECK(true_seen > 200);
}

TEST_CASE("numeric check of the quadrilateral") {
  const Problem p = load_problem("problems/p1.gdd");
  const CheckReport r = check_conjecture(p, 100, 0);
  CHECK(r.verdict == Verdict::supported);
  CHECK(r.models_tried == 100);
  CHECK(r.models_valid == 100);
  CHECK(r.goal_holds == 100);
  CHECK_FALSE(r.first_refuting);
  CHECK(check_conjecture(p, 100, 0, Exec::parallel) == r);

  Problem wrong = p;
  wrong.goal = fact(p, Pred::para, {"E", "F", "F", "H"});
  const CheckReport w = check_conjecture(wrong, 100, 0);
  CHECK(w.verdict == Verdict::refuted);
  REQUIRE(w.first_refuting);
  CHECK(*w.first_refuting < 5);
}

TEST_CASE("negative corpus problems are refuted numerically") {
  for (const auto& file : {"problems/p2.gdd", "problems/p4.gdd"}) {
    CAPTURE(file);
    CHECK(check_conjecture(load_problem(file), 20, 0).verdict == Verdict::refuted);
  }
  CHECK(check_conjecture(load_problem("problems/p3.gdd"), 50, 0).verdict == Verdict::supported);
}

TEST_CASE("too few valid models is inconclusive") {
  const Problem p = parse_problem(
      "point A = free\npoint B = free\npoint C = free\nhypothesis coll(A,B,C)\ngoal coll(A,B,C)\n",
      Format::construct);
  const CheckReport r = check_conjecture(p, 30, 0);
  CHECK(r.models_valid < kMinValidModels);
  CHECK(r.verdict == Verdict::inconclusive);
}

TEST_CASE("fof problems cannot be realized") {
  const Problem p = load_problem("problems/p1.p");
  CHECK_THROWS_AS(realize(p, 0), UnsupportedFormat);
  CHECK_THROWS_AS(check_conjecture(p, 10, 0), UnsupportedFormat);
}

TEST_CASE("an always degenerate constructor gives up") {
  const Problem p = parse_problem(
      "point A = free\npoint B = free\npoint X = intersect(A,B,A,B)\ngoal coll(A,B,X)\n",
      Format::construct);
  try {
    realize(p, 0);
    FAIL("expected a realization error");
  } catch (const RealizationError& e) {
    CHECK(std::string(e.what()) == "cannot realize X = intersect(A,B,A,B) after 100 draws");
  }
}

TEST_CASE("the sweep reports false facts with their seeds") {
  const Problem p = load_problem("problems/p1.gdd");
  const std::vector<Fact> facts{fact(p, Pred::para, {"E", "F", "G", "H"}),
                                fact(p, Pred::para, {"A", "B", "C", "D"})};
  const SweepReport r = soundness_sweep(p, facts, {}, 0, 10);
  CHECK(r.models_valid == 10);
  CHECK(r.evaluations == 20);
  REQUIRE(r.violations.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(r.violations[i].seed == i);
    CHECK(r.violations[i].fact == facts[1]);
  }
  CHECK(soundness_sweep(p, facts, {}, 0, 10, Exec::parallel) == r);
}

TEST_CASE("saturation closures hold in random models") {
  const Limits limits{200000, 10000, 60.0};
  for (const auto& entry : corpus()) {
    CAPTURE(entry.file);
    const Problem p = load_problem(entry.file);
    const Problem model = load_problem(entry.model);
    const auto sat = saturate(p, default_rules(), limits);
    REQUIRE(sat.saturated);
    std::vector<Fact> facts;
    for (FactId id = 0; id < sat.factbase.size(); ++id) facts.push_back(sat.factbase.fact(id));
    const auto map = point_map(p, model);
    const SweepReport r = soundness_sweep(model, facts, map, 0, 25, Exec::parallel);
    CHECK(r.models_valid == 25);
    CHECK(r.violations.empty());
  }
}
