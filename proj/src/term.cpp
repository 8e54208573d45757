#include "magmakit/term.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_set>

#include "magmakit/errors.hpp"

namespace magmakit {

namespace detail {

struct TermNode {
  TermNode const* left;
  TermNode const* right;
  std::uint32_t sym;       // leaves only
  std::uint32_t leftmost;  // symbol of the leftmost leaf
  std::uint64_t length;
  std::size_t hash;
};

}  // namespace detail

namespace {

using detail::TermNode;

std::size_t mix(std::size_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

class SymbolTable {
 public:
  SymbolTable() { names_.emplace_back(); }

  std::uint32_t intern(std::string_view name) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = ids_.find(std::string(name)); it != ids_.end())
        return it->second;
    }
    std::unique_lock lock(mutex_);
    auto [it, inserted] = ids_.try_emplace(std::string(name), 0);
    if (inserted) {
      it->second = static_cast<std::uint32_t>(names_.size());
      names_.emplace_back(name);
    }
    return it->second;
  }

  std::string const& name(std::uint32_t id) {
    std::shared_lock lock(mutex_);
    return names_.at(id);
  }

 private:
  std::shared_mutex mutex_;
  std::deque<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

SymbolTable& symbols() {
  static SymbolTable table;
  return table;
}

struct NodeKey {
  TermNode const* left;
  TermNode const* right;
  std::uint32_t sym;
  friend bool operator==(NodeKey const&, NodeKey const&) = default;
};

struct NodeKeyHash {
  std::size_t operator()(NodeKey const& k) const noexcept {
    return mix(reinterpret_cast<std::uintptr_t>(k.left) * 31 +
               reinterpret_cast<std::uintptr_t>(k.right) * 17 + k.sym);
  }
};

// Nodes are never freed; the store lives for the whole process.
class TermStore {
 public:
  TermNode const* get(NodeKey const& key) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = index_.find(key); it != index_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    TermNode node{};
    node.left = key.left;
    node.right = key.right;
    node.sym = key.sym;
    if (key.left == nullptr) {
      node.leftmost = key.sym;
      node.length = 1;
      node.hash = mix(key.sym + 0x51ed27);
    } else {
      node.leftmost = key.left->leftmost;
      node.length = key.left->length + key.right->length;
      node.hash = mix(key.left->hash * 0x9e3779b97f4a7c15ULL + key.right->hash +
                      0x2545f491);
    }
    TermNode const* stored = &nodes_.emplace_back(node);
    index_.emplace(key, stored);
    return stored;
  }

 private:
  std::shared_mutex mutex_;
  std::deque<TermNode> nodes_;
  std::unordered_map<NodeKey, TermNode const*, NodeKeyHash> index_;
};

TermStore& store() {
  static TermStore s;
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Generator, Alphabet
// ---------------------------------------------------------------------------

bool Generator::valid_name(std::string_view name) noexcept {
  if (name == "1") return true;
  if (name.empty()) return false;
  auto head = static_cast<unsigned char>(name.front());
  if (!std::isalpha(head) && head != '_') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

Generator::Generator(std::string_view name) {
  if (!valid_name(name))
    throw std::invalid_argument("invalid generator name '" + std::string(name) +
                                "'");
  id_ = symbols().intern(name);
}

std::string const& Generator::name() const { return symbols().name(id_); }

Alphabet::Alphabet(std::initializer_list<std::string_view> names) {
  for (auto n : names) add(Generator(n));
}

Alphabet::Alphabet(std::vector<Generator> gens) {
  for (auto g : gens) add(g);
}

Alphabet Alphabet::cyclic() { return Alphabet{"1"}; }

void Alphabet::add(Generator g) {
  if (g.id() == 0) throw std::invalid_argument("uninitialized generator");
  auto [it, inserted] = index_.try_emplace(g.id(), gens_.size());
  if (!inserted)
    throw std::invalid_argument("duplicate generator '" + g.name() + "'");
  gens_.push_back(g);
}

bool Alphabet::contains(Generator g) const noexcept {
  return index_.contains(g.id());
}

std::optional<std::size_t> Alphabet::index_of(Generator g) const noexcept {
  auto it = index_.find(g.id());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// Term
// ---------------------------------------------------------------------------

Term Term::leaf(Generator g) {
  if (g.id() == 0) throw std::invalid_argument("uninitialized generator");
  return Term(store().get(NodeKey{nullptr, nullptr, g.id()}));
}

Term Term::sum(Term x, Term y) {
  if (!x.valid() || !y.valid())
    throw std::invalid_argument("sum of an empty term");
  return Term(store().get(NodeKey{x.node_, y.node_, 0}));
}

bool Term::is_leaf() const noexcept { return node_->left == nullptr; }

Generator Term::generator() const {
  if (!is_leaf()) throw std::logic_error("generator() on a sum");
  return Generator::from_id(node_->sym);
}

Term Term::left() const {
  if (is_leaf()) throw std::logic_error("left() on a leaf");
  return Term(node_->left);
}

Term Term::right() const {
  if (is_leaf()) throw std::logic_error("right() on a leaf");
  return Term(node_->right);
}

std::uint64_t Term::length() const noexcept { return node_->length; }
std::size_t Term::hash() const noexcept { return node_->hash; }

namespace {

void print(TermNode const* n, bool parens, std::string& out) {
  if (n->left == nullptr) {
    out += symbols().name(n->sym);
    return;
  }
  if (parens) out += '(';
  print(n->left, true, out);
  out += '+';
  print(n->right, true, out);
  if (parens) out += ')';
}

}  // namespace

std::string Term::str() const {
  std::string out;
  print(node_, false, out);
  return out;
}

std::string Term::str_full() const {
  std::string out;
  print(node_, true, out);
  return out;
}

std::string to_string(TermPair const& p) {
  return p.first.str() + " = " + p.second.str();
}

// ---------------------------------------------------------------------------
// Orders
// ---------------------------------------------------------------------------

std::strong_ordering TermOrder::compare_leaves(Generator a, Generator b) const {
  if (a == b) return std::strong_ordering::equal;
  if (alphabet_ != nullptr) {
    auto ia = alphabet_->index_of(a);
    auto ib = alphabet_->index_of(b);
    if (ia && ib) return *ia <=> *ib;
    if (ia) return std::strong_ordering::less;
    if (ib) return std::strong_ordering::greater;
  }
  return a.name() <=> b.name();
}

std::strong_ordering TermOrder::compare(Term a, Term b) const {
  if (a == b) return std::strong_ordering::equal;
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  if (a.is_leaf()) return compare_leaves(a.generator(), b.generator());
  // Equal lengths > 1: compare leftmost leaves, then children.
  Term la = a, lb = b;
  while (la.is_sum()) la = la.left();
  while (lb.is_sum()) lb = lb.left();
  if (auto c = compare_leaves(la.generator(), lb.generator()); c != 0) return c;
  if (auto c = compare(a.left(), b.left()); c != 0) return c;
  return compare(a.right(), b.right());
}

bool PairOrder::operator()(TermPair const& a, TermPair const& b) const {
  if (auto c = order_.compare(a.first, b.first); c != 0) return c < 0;
  return order_.compare(a.second, b.second) < 0;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

class TermParser {
 public:
  TermParser(std::string_view text, Alphabet const* closed, Alphabet* open)
      : text_(text), closed_(closed), open_(open) {}

  Term top() {
    Term first = term();
    skip_ws();
    if (peek() == '+') {
      ++pos_;
      Term second = term();
      first = first + second;
    }
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return first;
  }

 private:
  Term term() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      Term x = term();
      expect('+');
      Term y = term();
      expect(')');
      return x + y;
    }
    if (is_ident_char(c)) return ident();
    if (c == '\0') fail("unexpected end of input");
    fail("expected identifier or '(' but found '" + std::string(1, c) + "'");
  }

  Term ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    if (!Generator::valid_name(name))
      fail_at(start, "invalid identifier '" + std::string(name) + "'");
    Generator g(name);
    if (closed_ != nullptr && !closed_->contains(g))
      fail_at(start, "unknown generator '" + std::string(name) + "'");
    if (open_ != nullptr && !open_->contains(g)) open_->add(g);
    return Term::leaf(g);
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) {
      if (peek() == '\0')
        fail(std::string("expected '") + c + "' but reached end of input");
      fail(std::string("expected '") + c + "' but found '" + peek() + "'");
    }
    ++pos_;
  }

  static bool is_ident_char(char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  [[noreturn]] void fail(std::string const& msg) const { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t pos, std::string const& msg) const {
    throw ParseError(msg, 0, pos + 1);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Alphabet const* closed_;
  Alphabet* open_;
};

}  // namespace

ParseError::ParseError(std::string const& what, std::size_t line,
                       std::size_t column)
    : std::runtime_error(
          (line > 0 ? "line " + std::to_string(line) + ", " : std::string()) +
          "column " + std::to_string(column) + ": " + what),
      message_(what),
      line_(line),
      column_(column) {}

Term parse_term(std::string_view text, Alphabet const& alphabet) {
  return TermParser(text, &alphabet, nullptr).top();
}

Term parse_term_open(std::string_view text, Alphabet& alphabet) {
  return TermParser(text, nullptr, &alphabet).top();
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

Term n_minus(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("n_minus: n must be positive");
  Term one = Term::leaf("1");
  Term t = one;
  for (std::uint64_t i = 1; i < n; ++i) t = t + one;
  return t;
}

Term n_plus(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("n_plus: n must be positive");
  Term one = Term::leaf("1");
  Term t = one;
  for (std::uint64_t i = 1; i < n; ++i) t = one + t;
  return t;
}

namespace {

Term substitute_memo(Term t, Substitution const& mapping,
                     std::unordered_map<Term, Term>& memo) {
  if (t.is_leaf()) {
    auto it = mapping.find(t.generator());
    return it == mapping.end() ? t : it->second;
  }
  if (auto it = memo.find(t); it != memo.end()) return it->second;
  Term r = substitute_memo(t.left(), mapping, memo) +
           substitute_memo(t.right(), mapping, memo);
  memo.emplace(t, r);
  return r;
}

template <typename F>
void visit_leaves(Term t, std::unordered_set<Term>& seen, F&& f) {
  if (!seen.insert(t).second) return;
  if (t.is_leaf()) {
    f(t.generator());
    return;
  }
  visit_leaves(t.left(), seen, f);
  visit_leaves(t.right(), seen, f);
}

}  // namespace

Term substitute(Term t, Substitution const& mapping) {
  if (mapping.empty()) return t;
  std::unordered_map<Term, Term> memo;
  return substitute_memo(t, mapping, memo);
}

Term substitute(Term t, Generator from, Term to) {
  Substitution m;
  m.emplace(from, to);
  return substitute(t, m);
}

std::vector<Generator> leaves(Term t) {
  std::vector<Generator> out;
  std::unordered_set<Term> seen;
  visit_leaves(t, seen, [&](Generator g) { out.push_back(g); });
  return out;
}

bool occurs(Generator g, Term t) {
  std::unordered_set<Term> seen;
  bool found = false;
  visit_leaves(t, seen, [&](Generator h) { found = found || h == g; });
  return found;
}

Term magma_product(Term x, Term y) {
  Generator one("1");
  auto cyclic = [&](Term t) {
    auto ls = leaves(t);
    return ls.size() == 1 && ls.front() == one;
  };
  if (!cyclic(x) || !cyclic(y))
    throw std::invalid_argument("magma_product: terms must be over {1}");
  return substitute(y, one, x);
}

TermSet generate_bounded(std::span<Term const> X, std::uint64_t max_length) {
  std::vector<std::vector<Term>> layers(max_length + 1);
  std::vector<std::unordered_set<Term>> seen(max_length + 1);
  for (Term x : X) {
    auto len = x.length();
    if (len <= max_length && seen[len].insert(x).second) layers[len].push_back(x);
  }
  for (std::uint64_t k = 2; k <= max_length; ++k) {
    for (std::uint64_t i = 1; i < k; ++i) {
      for (Term s : layers[i]) {
        for (Term t : layers[k - i]) {
          Term z = s + t;
          if (seen[k].insert(z).second) layers[k].push_back(z);
        }
      }
    }
  }
  TermSet out;
  for (auto const& layer : layers) out.insert(layer.begin(), layer.end());
  return out;
}

std::vector<Term> enumerate_terms(Alphabet const& alphabet,
                                  std::uint64_t max_length) {
  std::vector<Term> gens;
  for (Generator g : alphabet) gens.push_back(Term::leaf(g));
  std::vector<std::vector<Term>> layers(max_length + 1);
  if (max_length >= 1) layers[1] = gens;
  for (std::uint64_t k = 2; k <= max_length; ++k)
    for (std::uint64_t i = 1; i < k; ++i)
      for (Term s : layers[i])
        for (Term t : layers[k - i]) layers[k].push_back(s + t);
  std::vector<Term> out;
  TermOrder order(alphabet);
  for (auto& layer : layers) {
    std::sort(layer.begin(), layer.end(), order);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

namespace {

class Membership {
 public:
  explicit Membership(std::span<Term const> X) : gens_(X.begin(), X.end()) {
    for (Term x : X) min_length_ = std::min(min_length_, x.length());
  }

  bool contains(Term t) {
    if (t.length() < min_length_) return false;
    if (gens_.contains(t)) return true;
    if (t.is_leaf()) return false;
    if (auto it = memo_.find(t); it != memo_.end()) return it->second;
    bool r = contains(t.left()) && contains(t.right());
    memo_.emplace(t, r);
    return r;
  }

 private:
  std::unordered_set<Term> gens_;
  std::unordered_map<Term, bool> memo_;
  std::uint64_t min_length_ = UINT64_MAX;
};

}  // namespace

bool submagma_contains(std::span<Term const> X, Term t) {
  return Membership(X).contains(t);
}

TermSet minimal_generators(std::span<Term const> X) {
  Membership member(X);
  TermSet out;
  // g_N(z): descend while both components stay inside <X>.
  auto g = [&](auto&& self, Term z) -> void {
    if (z.is_sum() && member.contains(z.left()) && member.contains(z.right())) {
      self(self, z.left());
      self(self, z.right());
    } else {
      out.insert(z);
    }
  };
  for (Term x : X) g(g, x);
  return out;
}

bool pair_generators_check(TermPair const& p) {
  return p.first.is_leaf() || p.second.is_leaf();
}

std::vector<TermPair> pair_split(TermPair const& p) {
  std::vector<TermPair> out;
  auto split = [&](auto&& self, Term x, Term y) -> void {
    if (x.is_leaf() || y.is_leaf()) {
      out.push_back({x, y});
      return;
    }
    self(self, x.left(), y.left());
    self(self, x.right(), y.right());
  };
  split(split, p.first, p.second);
  std::sort(out.begin(), out.end(), PairOrder{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace magmakit
