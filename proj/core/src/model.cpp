#include "contsem/model.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>

#include "contsem/quant.hpp"

namespace contsem {

namespace {

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
    if (c == '#' || c == ':' || c == ',' || c == '(' || c == ')' || c == '/')
      return false;
  }
  return true;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

} // namespace

std::optional<std::size_t> Universe::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == name) return i;
  return std::nullopt;
}

std::size_t Sort::size() const { return std::popcount(members); }

bool Sort::contains(std::size_t u) const {
  return u < 32 && (members >> u) & 1u;
}

std::size_t Sort::rank_of(std::size_t u) const {
  if (!contains(u)) throw EvalError("element not in sort " + name);
  return std::popcount(members & ((1u << u) - 1u));
}

std::size_t Sort::member_at(std::size_t rank) const {
  std::uint32_t m = members;
  for (std::size_t u = 0; m != 0; ++u, m >>= 1) {
    if (m & 1u) {
      if (rank == 0) return u;
      --rank;
    }
  }
  throw EvalError("member rank out of range in sort " + name);
}

std::vector<std::size_t> Sort::member_list() const {
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < 32; ++u)
    if (contains(u)) out.push_back(u);
  return out;
}

std::size_t tuple_index(std::span<const std::size_t> sizes,
                        std::span<const std::size_t> ranks) {
  if (sizes.size() != ranks.size())
    throw EvalError("tuple_index: rank/size arity mismatch");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (ranks[i] >= sizes[i]) throw EvalError("tuple_index: rank out of range");
    idx = idx * sizes[i] + ranks[i];
  }
  return idx;
}

std::vector<std::size_t> tuple_of_index(std::span<const std::size_t> sizes,
                                        std::size_t index) {
  std::vector<std::size_t> ranks(sizes.size(), 0);
  for (std::size_t i = sizes.size(); i-- > 0;) {
    ranks[i] = index % sizes[i];
    index /= sizes[i];
  }
  if (index != 0) throw EvalError("tuple_of_index: index out of range");
  return ranks;
}

Pred::Pred(std::vector<Sort> s, std::uint64_t b) : sorts(std::move(s)), bits(b) {
  std::size_t n = space_size();
  if (n < kMaxTupleSpace && (bits >> n) != 0)
    throw EvalError("predicate bits exceed tuple space");
}

std::size_t Pred::space_size() const {
  std::size_t n = 1;
  for (const Sort& s : sorts) {
    n *= s.size();
    if (n > kMaxTupleSpace) throw EvalError("tuple space exceeds 64 points");
  }
  return n;
}

bool Pred::contains(std::span<const std::size_t> ranks) const {
  std::vector<std::size_t> sizes;
  sizes.reserve(sorts.size());
  for (const Sort& s : sorts) sizes.push_back(s.size());
  return (bits >> tuple_index(sizes, ranks)) & 1u;
}

void Rel::normalize() {
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
}

bool Rel::contains(const Tuple& t) const {
  return std::binary_search(tuples.begin(), tuples.end(), t);
}

const char* category_name(Category c) {
  switch (c) {
    case Category::det: return "det";
    case Category::noun: return "noun";
    case Category::v: return "v";
    case Category::vt: return "vt";
    case Category::vdt: return "vdt";
  }
  return "?";
}

std::optional<Category> category_of(std::string_view s) {
  if (s == "det") return Category::det;
  if (s == "noun") return Category::noun;
  if (s == "v") return Category::v;
  if (s == "vt") return Category::vt;
  if (s == "vdt") return Category::vdt;
  return std::nullopt;
}

const Sort* Model::find_sort(std::string_view name) const {
  for (const Sort& s : sorts)
    if (s.name == name) return &s;
  return nullptr;
}

const Rel* Model::find_rel(std::string_view name) const {
  for (const Rel& r : relations)
    if (r.name == name) return &r;
  return nullptr;
}

const LexEntry* Model::find_word(std::string_view word) const {
  for (const LexEntry& e : lexicon)
    if (e.word == word) return &e;
  return nullptr;
}

Model parse_model(std::string_view text) {
  Model m;
  bool saw_universe = false;
  std::size_t lineno = 0;

  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    auto words = split_ws(line);
    const std::string& head = words.front();

    if (head == "universe:" || head == "universe") {
      if (saw_universe) fail(lineno, "duplicate universe section");
      saw_universe = true;
      std::string_view rest = line;
      auto colon = rest.find(':');
      if (colon == std::string_view::npos) fail(lineno, "expected ':' after universe");
      for (const auto& e : split_ws(rest.substr(colon + 1))) {
        if (!valid_name(e)) fail(lineno, "invalid element name '" + e + "'");
        if (m.universe.index_of(e)) fail(lineno, "duplicate element '" + e + "'");
        m.universe.elements.push_back(e);
      }
      if (m.universe.size() > kMaxUniverse)
        fail(lineno, "universe exceeds cap of " + std::to_string(kMaxUniverse));
      continue;
    }
    if (!saw_universe) fail(lineno, "universe must be declared first");

    if (head == "sort") {
      auto colon = line.find(':');
      if (colon == std::string_view::npos) fail(lineno, "expected ':' in sort line");
      auto name_part = split_ws(line.substr(4, colon - 4));
      if (name_part.size() != 1) fail(lineno, "expected one sort name");
      const std::string& name = name_part[0];
      if (!valid_name(name)) fail(lineno, "invalid sort name '" + name + "'");
      if (m.find_sort(name)) fail(lineno, "duplicate sort '" + name + "'");
      Sort s{name, 0};
      for (const auto& e : split_ws(line.substr(colon + 1))) {
        auto idx = m.universe.index_of(e);
        if (!idx) fail(lineno, "unknown element '" + e + "' in sort '" + name + "'");
        s.members |= 1u << *idx;
      }
      m.sorts.push_back(std::move(s));
      continue;
    }

    if (head == "rel") {
      auto colon = line.find(':');
      if (colon == std::string_view::npos) fail(lineno, "expected ':' in rel line");
      auto sig = split_ws(line.substr(3, colon - 3));
      if (sig.empty()) fail(lineno, "expected NAME/ARITY in rel line");
      auto slash = sig[0].find('/');
      if (slash == std::string::npos) fail(lineno, "expected NAME/ARITY in rel line");
      Rel r;
      r.name = sig[0].substr(0, slash);
      if (!valid_name(r.name)) fail(lineno, "invalid relation name '" + r.name + "'");
      if (m.find_rel(r.name)) fail(lineno, "duplicate relation '" + r.name + "'");
      std::string arity_s = sig[0].substr(slash + 1);
      int arity = 0;
      auto [p, ec] = std::from_chars(arity_s.data(), arity_s.data() + arity_s.size(), arity);
      if (ec != std::errc() || p != arity_s.data() + arity_s.size() || arity < 1 || arity > 3)
        fail(lineno, "relation arity must be 1, 2 or 3");
      r.arity = arity;
      if (static_cast<int>(sig.size()) - 1 != arity)
        fail(lineno, "relation '" + r.name + "' declares " + std::to_string(sig.size() - 1) +
                         " columns for arity " + std::to_string(arity));
      for (int i = 1; i <= arity; ++i) {
        if (!m.find_sort(sig[i]))
          fail(lineno, "unknown sort '" + sig[i] + "' in relation column");
        r.columns.push_back(sig[i]);
      }
      // tuples: (a,b) (c,d) ...
      std::string_view rest = trim(line.substr(colon + 1));
      std::size_t i = 0;
      while (i < rest.size()) {
        while (i < rest.size() && std::isspace(static_cast<unsigned char>(rest[i]))) ++i;
        if (i >= rest.size()) break;
        if (rest[i] != '(') fail(lineno, "expected '(' in tuple list");
        auto close = rest.find(')', i);
        if (close == std::string_view::npos) fail(lineno, "unterminated tuple");
        std::string_view body = rest.substr(i + 1, close - i - 1);
        Tuple t{0, 0, 0};
        int coord = 0;
        std::size_t start = 0;
        for (std::size_t k = 0; k <= body.size(); ++k) {
          if (k == body.size() || body[k] == ',') {
            std::string_view e = trim(body.substr(start, k - start));
            if (coord >= arity) fail(lineno, "tuple arity mismatch in '" + r.name + "'");
            auto idx = m.universe.index_of(e);
            if (!idx) fail(lineno, "unknown element '" + std::string(e) + "' in tuple");
            const Sort* col = m.find_sort(r.columns[coord]);
            if (!col->contains(*idx))
              fail(lineno, "element '" + std::string(e) + "' outside sort '" + col->name + "'");
            t[coord++] = static_cast<std::uint8_t>(*idx);
            start = k + 1;
          }
        }
        if (coord != arity) fail(lineno, "tuple arity mismatch in '" + r.name + "'");
        r.tuples.push_back(t);
        i = close + 1;
      }
      r.normalize();
      m.relations.push_back(std::move(r));
      continue;
    }

    if (head == "lex") {
      if (words.size() != 4) fail(lineno, "expected 'lex WORD CATEGORY TARGET'");
      const std::string& word = words[1];
      if (!valid_name(word)) fail(lineno, "invalid word '" + word + "'");
      if (m.find_word(word)) fail(lineno, "duplicate lexicon word '" + word + "'");
      auto cat = category_of(words[2]);
      if (!cat) fail(lineno, "unknown category '" + words[2] + "'");
      const std::string& target = words[3];
      switch (*cat) {
        case Category::noun:
          if (!m.find_sort(target)) fail(lineno, "unknown sort '" + target + "' in lex line");
          break;
        case Category::v:
        case Category::vt:
        case Category::vdt: {
          const Rel* r = m.find_rel(target);
          if (!r) fail(lineno, "unknown relation '" + target + "' in lex line");
          int want = *cat == Category::v ? 1 : *cat == Category::vt ? 2 : 3;
          if (r->arity != want)
            fail(lineno, "relation '" + target + "' has arity " + std::to_string(r->arity) +
                             ", verb category wants " + std::to_string(want));
          break;
        }
        case Category::det:
          try {
            (void)parse_determiner(target, m.universe);
          } catch (const ParseError& e) {
            fail(lineno, e.what());
          }
          break;
      }
      m.lexicon.push_back(LexEntry{word, *cat, target});
      continue;
    }

    fail(lineno, "unrecognized line '" + std::string(line) + "'");
  }

  if (!saw_universe) throw ParseError("missing universe section");

  std::sort(m.sorts.begin(), m.sorts.end(),
            [](const Sort& a, const Sort& b) { return a.name < b.name; });
  std::sort(m.relations.begin(), m.relations.end(),
            [](const Rel& a, const Rel& b) { return a.name < b.name; });
  std::sort(m.lexicon.begin(), m.lexicon.end(),
            [](const LexEntry& a, const LexEntry& b) { return a.word < b.word; });
  return m;
}

std::string serialize_model(const Model& m) {
  std::ostringstream out;
  out << "universe:";
  for (const auto& e : m.universe.elements) out << ' ' << e;
  out << '\n';
  for (const Sort& s : m.sorts) {
    out << "sort " << s.name << ':';
    for (std::size_t u : s.member_list()) out << ' ' << m.universe.elements[u];
    out << '\n';
  }
  for (const Rel& r : m.relations) {
    out << "rel " << r.name << '/' << r.arity;
    for (const auto& c : r.columns) out << ' ' << c;
    out << ':';
    for (const Tuple& t : r.tuples) {
      out << " (";
      for (int i = 0; i < r.arity; ++i) {
        if (i) out << ',';
        out << m.universe.elements[t[i]];
      }
      out << ')';
    }
    out << '\n';
  }
  for (const LexEntry& e : m.lexicon)
    out << "lex " << e.word << ' ' << category_name(e.cat) << ' ' << e.target << '\n';
  return out.str();
}

Rel restrict_relation(const Rel& r, std::span<const Sort> columns) {
  if (static_cast<std::size_t>(r.arity) != columns.size())
    throw EvalError("restrict_relation: arity mismatch for '" + r.name + "'");
  Rel out;
  out.name = r.name;
  out.arity = r.arity;
  for (const Sort& s : columns) out.columns.push_back(s.name);
  for (const Tuple& t : r.tuples) {
    bool inside = true;
    for (int i = 0; i < r.arity && inside; ++i)
      inside = columns[i].contains(t[i]);
    if (inside) out.tuples.push_back(t);
  }
  out.normalize();
  return out;
}

std::vector<Pred> enumerate_predicates(std::vector<Sort> sorts) {
  std::size_t n = 1;
  for (const Sort& s : sorts) n *= s.size();
  if (n > kMaxPredPoints)
    throw EvalError("predicate space of " + std::to_string(n) + " points exceeds cap");
  std::vector<Pred> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits)
    out.emplace_back(sorts, bits);
  return out;
}

std::vector<Rel> enumerate_relations(std::string name, std::vector<Sort> columns,
                                     std::optional<std::size_t> cap) {
  std::size_t n = 1;
  std::vector<std::size_t> sizes;
  for (const Sort& s : columns) {
    sizes.push_back(s.size());
    n *= s.size();
  }
  if (n > kMaxRelPoints)
    throw EvalError("relation space of " + std::to_string(n) + " points exceeds cap");
  std::uint64_t total = std::uint64_t{1} << n;
  std::uint64_t want = cap ? std::min<std::uint64_t>(*cap, total) : total;

  std::vector<Rel> out;
  out.reserve(want);
  for (std::uint64_t mask = 0; mask < total && out.size() < want; ++mask) {
    Rel r;
    r.name = name;
    r.arity = static_cast<int>(columns.size());
    for (const Sort& s : columns) r.columns.push_back(s.name);
    for (std::size_t idx = 0; idx < n; ++idx) {
      if (!((mask >> idx) & 1u)) continue;
      auto ranks = tuple_of_index(sizes, idx);
      Tuple t{0, 0, 0};
      for (std::size_t i = 0; i < columns.size(); ++i)
        t[i] = static_cast<std::uint8_t>(columns[i].member_at(ranks[i]));
      r.tuples.push_back(t);
    }
    r.normalize();
    out.push_back(std::move(r));
  }
  return out;
}

} // namespace contsem
