#include "contsem/space.hpp"

namespace contsem {

SpacePtr Space::truth() {
  auto s = std::shared_ptr<Space>(new Space());
  s->kind_ = Kind::truth;
  s->has_card_ = true;
  s->card_ = 2;
  return s;
}

SpacePtr Space::atom(std::string name, std::size_t size) {
  auto s = std::shared_ptr<Space>(new Space());
  s->kind_ = Kind::atom;
  s->name_ = std::move(name);
  s->has_card_ = true;
  s->card_ = size;
  return s;
}

SpacePtr Space::pair(SpacePtr left, SpacePtr right) {
  auto s = std::shared_ptr<Space>(new Space());
  s->kind_ = Kind::pair;
  if (left->has_card_ && right->has_card_) {
    std::uint64_t c = left->card_ * right->card_;
    if (left->card_ != 0 && c / left->card_ != right->card_) c = kMaxSpaceCard + 1;
    if (c <= kMaxSpaceCard) {
      s->has_card_ = true;
      s->card_ = c;
    }
  }
  s->left_ = std::move(left);
  s->right_ = std::move(right);
  return s;
}

SpacePtr Space::preds(SpacePtr inner) {
  auto s = std::shared_ptr<Space>(new Space());
  s->kind_ = Kind::preds;
  if (inner->has_card_ && inner->card_ <= 20) {
    s->has_card_ = true;
    s->card_ = std::uint64_t{1} << inner->card_;
  }
  s->left_ = std::move(inner);
  return s;
}

SpacePtr Space::conts(SpacePtr inner) {
  auto s = std::shared_ptr<Space>(new Space());
  s->kind_ = Kind::conts;
  if (inner->has_card_ && inner->card_ <= 4) {
    s->has_card_ = true;
    s->card_ = std::uint64_t{1} << (std::uint64_t{1} << inner->card_);
  }
  s->left_ = std::move(inner);
  return s;
}

std::uint64_t Space::card() const {
  if (!has_card_)
    throw EvalError("space " + describe() + " is too large to enumerate");
  return card_;
}

std::string Space::describe() const {
  switch (kind_) {
    case Kind::truth: return "t";
    case Kind::atom: return name_;
    case Kind::pair: return "(" + left_->describe() + "*" + right_->describe() + ")";
    case Kind::preds: return "P(" + left_->describe() + ")";
    case Kind::conts: return "C(" + left_->describe() + ")";
  }
  return "?";
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Space::Kind::truth: return true;
    case Space::Kind::atom:
      return a->atom_name() == b->atom_name() && a->card() == b->card();
    case Space::Kind::pair:
      return same_space(a->left(), b->left()) && same_space(a->right(), b->right());
    case Space::Kind::preds:
    case Space::Kind::conts:
      return same_space(a->inner(), b->inner());
  }
  return false;
}

} // namespace contsem
