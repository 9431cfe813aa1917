#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "contsem/errors.hpp"

namespace contsem {

inline constexpr std::size_t kMaxUniverse = 8;
// Predicate enumeration is exhaustive, so the point space of anything we
// enumerate predicates over is capped at 16 (2^16 predicate masks).
inline constexpr std::size_t kMaxPredPoints = 16;
// Relation enumeration walks all 2^n relations over a tuple space.
inline constexpr std::size_t kMaxRelPoints = 12;
// Tuple spaces are addressed by 64-bit masks.
inline constexpr std::size_t kMaxTupleSpace = 64;

struct Universe {
  std::vector<std::string> elements; // index i is element i

  std::size_t size() const { return elements.size(); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const Universe&, const Universe&) = default;
};

// A named subset of the universe. Quantifier domains are sorts, not the
// universe itself; sorts may overlap.
struct Sort {
  std::string name;
  std::uint32_t members = 0; // bit i set <=> universe element i belongs

  std::size_t size() const;
  bool contains(std::size_t universe_index) const;
  std::size_t rank_of(std::size_t universe_index) const;  // position among members
  std::size_t member_at(std::size_t rank) const;          // universe index
  std::vector<std::size_t> member_list() const;

  friend bool operator==(const Sort&, const Sort&) = default;
};

// Row-major tuple indexing over a product of finite sorts; the first
// coordinate varies slowest. This is the one canonical tuple<->index map;
// everything extensional in the library depends on it.
std::size_t tuple_index(std::span<const std::size_t> sizes,
                        std::span<const std::size_t> ranks);
std::vector<std::size_t> tuple_of_index(std::span<const std::size_t> sizes,
                                        std::size_t index);

// Bit set over the row-major tuple space of one sort or a product of sorts.
struct Pred {
  std::vector<Sort> sorts;
  std::uint64_t bits = 0;

  Pred() = default;
  Pred(std::vector<Sort> s, std::uint64_t b);

  std::size_t space_size() const;
  bool contains(std::span<const std::size_t> ranks) const;

  friend bool operator==(const Pred&, const Pred&) = default;
};

// Tuples hold universe element indices; unused trailing slots stay 0.
using Tuple = std::array<std::uint8_t, 3>;

struct Rel {
  std::string name;
  int arity = 0;
  std::vector<std::string> columns; // sort names, one per coordinate
  std::vector<Tuple> tuples;        // sorted, duplicate-free

  void normalize();
  bool contains(const Tuple& t) const;

  friend bool operator==(const Rel&, const Rel&) = default;
};

enum class Category { det, noun, v, vt, vdt };

const char* category_name(Category c);
std::optional<Category> category_of(std::string_view s);

struct LexEntry {
  std::string word;   // underscores stand for spaces in multiword entries
  Category cat = Category::noun;
  std::string target; // sort name, relation name, or determiner spec

  friend bool operator==(const LexEntry&, const LexEntry&) = default;
};

struct Model {
  Universe universe;
  std::vector<Sort> sorts;    // kept name-sorted
  std::vector<Rel> relations; // kept name-sorted
  std::vector<LexEntry> lexicon;

  const Sort* find_sort(std::string_view name) const;
  const Rel* find_rel(std::string_view name) const;
  const LexEntry* find_word(std::string_view word) const;

  friend bool operator==(const Model&, const Model&) = default;
};

// Parses the line-oriented model format:
//   universe: e1 e2 ...
//   sort NAME: e1 e2 ...
//   rel NAME/ARITY COL1 ... : (x,y,...) (x,y,...)
//   lex WORD CATEGORY TARGET
// '#' starts a comment line; blank lines are skipped. Throws ParseError with
// a line number on anything invalid.
Model parse_model(std::string_view text);

// Canonical text: universe first, then sorts, relations and lexicon entries
// in name order, tuples sorted componentwise in universe order.
// parse_model(serialize_model(m)) == m.
std::string serialize_model(const Model& m);

// Drops tuples that fall outside the product of the given sorts.
Rel restrict_relation(const Rel& r, std::span<const Sort> columns);

// All 2^n predicates over the product, in increasing bit-pattern order.
std::vector<Pred> enumerate_predicates(std::vector<Sort> sorts);

// All 2^n relations over the product in increasing bit-pattern order, or the
// first `cap` of them.
std::vector<Rel> enumerate_relations(std::string name,
                                     std::vector<Sort> columns,
                                     std::optional<std::size_t> cap = std::nullopt);

} // namespace contsem
