// Exact-rational realization of construct problems and fact evaluation.

#ifndef GDDP_NUMERIC_HPP_
#define GDDP_NUMERIC_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "gddp/exec.hpp"
#include "gddp/problem.hpp"

namespace gddp {

struct Point2 {
  mpq_class x, y;

  bool operator==(const Point2& o) const { return x == o.x && y == o.y; }
};

struct NumericModel {
  std::vector<Point2> coords;  // indexed by PointId
  std::uint64_t seed = 0;

  const Point2& at(PointId p) const { return coords.at(p.index); }
  bool operator==(const NumericModel&) const = default;
};

class RealizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedFormat : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxRedraws = 100;
inline constexpr std::size_t kMinValidModels = 20;

// Free points get coordinates n/d with n in [-100,100], d in [1,10].
// Redraws the whole model while a constructor degenerates or two points
// coincide.
NumericModel realize(const Problem& problem, std::uint64_t seed);

bool eval_fact(const NumericModel& model, const Fact& fact);

enum class Verdict { supported, refuted, inconclusive };

std::string_view verdict_name(Verdict v);

struct CheckReport {
  std::size_t models_tried = 0;
  std::size_t models_valid = 0;
  std::size_t goal_holds = 0;
  Verdict verdict = Verdict::inconclusive;
  std::optional<std::size_t> first_refuting;  // 0-based model index

  bool operator==(const CheckReport&) const = default;
};

// Models use seeds seed..seed+n-1. A model is valid when it was realized
// and every initial fact of the problem holds in it.
CheckReport check_conjecture(const Problem& problem, std::size_t n_models, std::uint64_t seed,
                             Exec exec = Exec::serial, std::size_t min_valid = kMinValidModels);

struct Violation {
  std::uint64_t seed = 0;
  Fact fact;

  bool operator==(const Violation&) const = default;
};

struct SweepReport {
  std::size_t models_valid = 0;
  std::size_t evaluations = 0;
  std::vector<Violation> violations;  // ordered by seed, then fact order

  bool operator==(const SweepReport&) const = default;
};

// Evaluates `facts` in every valid model of `model_problem` for the seeds
// [first_seed, first_seed + n). `point_map[i]` is the model point for fact
// point i; empty means identity.
SweepReport soundness_sweep(const Problem& model_problem, std::span<const Fact> facts,
                            std::span<const PointId> point_map, std::uint64_t first_seed,
                            std::size_t n, Exec exec = Exec::serial);

}  // namespace gddp

#endif  // GDDP_NUMERIC_HPP_
