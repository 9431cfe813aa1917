#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "contsem/errors.hpp"

namespace contsem {

class Space;
using SpacePtr = std::shared_ptr<const Space>;

// Hard ceiling on the cardinality of any space we address by point index.
inline constexpr std::uint64_t kMaxSpaceCard = std::uint64_t{1} << 20;

// The finite base spaces the continuation machinery evaluates over.
//
//   truth      the two-point space t = {0,1}
//   atom       a quantifier domain (a sort of n elements, points 0..n-1)
//   pair       a binary product, row-major indexed (left varies slowest)
//   preds      P(S); a point is a bit mask over the points of S
//   conts      C(S) = P(P(S)); a point is a truth table over the 2^|S|
//              predicate masks of S, indexed by mask value
//
// Cardinality is computed lazily and is absent for spaces too large to
// address by index (their points are then carried as Cont values).
class Space {
public:
  enum class Kind { truth, atom, pair, preds, conts };

  static SpacePtr truth();
  static SpacePtr atom(std::string name, std::size_t size);
  static SpacePtr pair(SpacePtr left, SpacePtr right);
  static SpacePtr preds(SpacePtr inner);
  static SpacePtr conts(SpacePtr inner);

  Kind kind() const { return kind_; }
  const std::string& atom_name() const { return name_; }
  const SpacePtr& left() const { return left_; }
  const SpacePtr& right() const { return right_; }
  const SpacePtr& inner() const { return left_; }

  bool has_card() const { return has_card_; }
  // Number of points; throws EvalError when the space is not indexable.
  std::uint64_t card() const;

  std::string describe() const;

private:
  Space() = default;

  Kind kind_ = Kind::truth;
  std::string name_;
  SpacePtr left_, right_; // pair children; preds/conts reuse left_
  bool has_card_ = false;
  std::uint64_t card_ = 0;
};

bool same_space(const SpacePtr& a, const SpacePtr& b);

} // namespace contsem
