// Points, predicates, facts and their canonical forms.

#ifndef GDDP_MODEL_HPP_
#define GDDP_MODEL_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gddp {

// Dense parse-time index of a symbolic point. Names live in the Problem.
struct PointId {
  std::uint32_t index = 0;
  auto operator<=>(const PointId&) const = default;
};

enum class Pred : std::uint8_t {
  coll, para, perp, midp, cong, eqangle, eqratio, simtri, cyclic, neq
};

inline constexpr std::size_t kPredCount = 10;
inline constexpr std::size_t kMaxArity = 8;

constexpr std::size_t arity(Pred p) {
  constexpr std::array<std::size_t, kPredCount> table{3, 4, 4, 3, 4, 8, 8, 6, 4, 2};
  return table[static_cast<std::size_t>(p)];
}

std::string_view pred_name(Pred p);
std::optional<Pred> pred_from_name(std::string_view name);

// A permutation of argument positions: image[i] = args[perm[i]].
using Perm = std::array<std::uint8_t, kMaxArity>;

// The symmetry group of a predicate, identity first. Orbits under this
// group are truth-preserving, so facts are stored as the lex-min image.
std::span<const Perm> symmetry_group(Pred p);

class MalformedFact : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Fact {
  Pred pred = Pred::coll;
  std::array<PointId, kMaxArity> args{};

  Fact() = default;
  // Throws MalformedFact when the point count disagrees with the arity.
  Fact(Pred p, std::span<const PointId> points);
  Fact(Pred p, std::initializer_list<PointId> points)
      : Fact(p, std::span<const PointId>(points.begin(), points.size())) {}

  std::size_t size() const { return arity(pred); }
  std::span<const PointId> points() const { return {args.data(), size()}; }

  // Unused trailing slots are always zero, so whole-array comparison is exact.
  auto operator<=>(const Fact&) const = default;
};

Fact apply_perm(const Fact& f, const Perm& p);

Fact canonicalize(const Fact& f);
bool is_canonical(const Fact& f);

// All distinct images of f under its predicate's group, in group order.
std::vector<Fact> orbit(const Fact& f);

// True for facts that hold in every model by their shape alone (a repeated
// point in coll or cyclic, a segment compared with itself, ...). The engine
// never stores such conclusions.
bool is_tautology(const Fact& f);

// True for para facts with a zero-length segment, which name no line.
// The engine drops such conclusions instead of storing them.
bool is_ill_formed(const Fact& f);

struct FactHash {
  std::size_t operator()(const Fact& f) const noexcept;
};

// Renders a fact as `pred(A,B,...)` using the supplied point names.
std::string to_string(const Fact& f, std::span<const std::string> names);

}  // namespace gddp

#endif  // GDDP_MODEL_HPP_
