#pragma once

// Free-magma terms: hash-consed binary trees over a generator alphabet.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace magmakit {

namespace detail {
struct TermNode;
}

/// An interned generator name. Two generators with the same name are the
/// same object; comparison is by identity.
class Generator {
 public:
  Generator() = default;

  /// Interns `name`. Valid names are identifiers `[A-Za-z_][A-Za-z0-9_]*`
  /// plus the literal `1` used for the cyclic free magma.
  explicit Generator(std::string_view name);

  static bool valid_name(std::string_view name) noexcept;
  static Generator from_id(std::uint32_t id) noexcept {
    Generator g;
    g.id_ = id;
    return g;
  }

  std::string const& name() const;
  std::uint32_t id() const noexcept { return id_; }

  friend bool operator==(Generator, Generator) = default;

 private:
  std::uint32_t id_ = 0;
};

/// Ordered set of generators; iteration order is declaration order.
class Alphabet {
 public:
  Alphabet() = default;
  Alphabet(std::initializer_list<std::string_view> names);
  explicit Alphabet(std::vector<Generator> gens);

  /// The one-letter alphabet {1} of the cyclic free magma.
  static Alphabet cyclic();

  void add(Generator g);
  bool contains(Generator g) const noexcept;
  std::optional<std::size_t> index_of(Generator g) const noexcept;
  std::size_t size() const noexcept { return gens_.size(); }
  bool empty() const noexcept { return gens_.empty(); }
  Generator operator[](std::size_t i) const { return gens_[i]; }
  auto begin() const noexcept { return gens_.begin(); }
  auto end() const noexcept { return gens_.end(); }
  std::vector<Generator> const& generators() const noexcept { return gens_; }

  friend bool operator==(Alphabet const& a, Alphabet const& b) {
    return a.gens_ == b.gens_;
  }

 private:
  std::vector<Generator> gens_;
  std::unordered_map<std::uint32_t, std::size_t> index_;
};

/// An element of the free magma. A cheap handle onto an immutable interned
/// node: structural equality is pointer equality.
class Term {
 public:
  Term() = default;

  static Term leaf(Generator g);
  static Term leaf(std::string_view name) { return leaf(Generator(name)); }
  static Term sum(Term x, Term y);

  bool valid() const noexcept { return node_ != nullptr; }
  bool is_leaf() const noexcept;
  bool is_sum() const noexcept { return !is_leaf(); }

  Generator generator() const;  // leaves only
  Term left() const;            // sums only
  Term right() const;           // sums only

  /// Number of leaves.
  std::uint64_t length() const noexcept;
  std::size_t hash() const noexcept;

  friend bool operator==(Term a, Term b) noexcept { return a.node_ == b.node_; }

  /// Canonical text: fully parenthesized except the outermost sum.
  std::string str() const;
  /// Fully parenthesized, including the outermost sum.
  std::string str_full() const;

 private:
  explicit Term(detail::TermNode const* n) : node_(n) {}
  detail::TermNode const* node_ = nullptr;
};

inline Term operator+(Term x, Term y) { return Term::sum(x, y); }

struct TermHash {
  std::size_t operator()(Term t) const noexcept { return t.hash(); }
};

/// Total order on terms: by length, then by the alphabet rank of the leftmost
/// leaf, then recursively on the children (left first). Without an alphabet,
/// leaves are ranked by name.
class TermOrder {
 public:
  TermOrder() = default;
  explicit TermOrder(Alphabet const& alphabet) : alphabet_(&alphabet) {}

  std::strong_ordering compare(Term a, Term b) const;
  bool operator()(Term a, Term b) const { return compare(a, b) < 0; }

 private:
  std::strong_ordering compare_leaves(Generator a, Generator b) const;
  Alphabet const* alphabet_ = nullptr;
};

using TermSet = std::set<Term, TermOrder>;

struct TermPair {
  Term first;
  Term second;

  friend bool operator==(TermPair const&, TermPair const&) = default;
};

struct TermPairHash {
  std::size_t operator()(TermPair const& p) const noexcept {
    return p.first.hash() * 0x9e3779b97f4a7c15ULL ^ p.second.hash();
  }
};

/// Lexicographic order on pairs induced by a TermOrder.
class PairOrder {
 public:
  PairOrder() = default;
  explicit PairOrder(Alphabet const& alphabet) : order_(alphabet) {}
  bool operator()(TermPair const& a, TermPair const& b) const;

 private:
  TermOrder order_;
};

struct GeneratorHash {
  std::size_t operator()(Generator g) const noexcept { return g.id(); }
};

using Substitution = std::unordered_map<Generator, Term, GeneratorHash>;

// ---------------------------------------------------------------------------
// Parsing and printing
// ---------------------------------------------------------------------------

/// Parses a `top_term`. Every identifier must belong to `alphabet`.
/// Throws ParseError with a 1-based column on failure.
Term parse_term(std::string_view text, Alphabet const& alphabet);

/// Parses a `top_term`, collecting unseen identifiers into `alphabet` in
/// order of first occurrence.
Term parse_term_open(std::string_view text, Alphabet& alphabet);

std::string to_string(TermPair const& p);

// ---------------------------------------------------------------------------
// Operations on terms
// ---------------------------------------------------------------------------

inline std::uint64_t length(Term t) noexcept { return t.length(); }

/// Left comb of length n over {1}: 1_- = 1, (n+1)_- = n_- + 1.
Term n_minus(std::uint64_t n);
/// Right comb of length n over {1}: 1_+ = 1, (n+1)_+ = 1 + n_+.
Term n_plus(std::uint64_t n);

/// Simultaneous substitution of generators; unmapped generators are fixed.
Term substitute(Term t, Substitution const& mapping);
Term substitute(Term t, Generator from, Term to);

/// Multiplication on the cyclic free magma: every leaf of y is replaced by x.
/// Both terms must be over {1}.
Term magma_product(Term x, Term y);

/// Distinct generators occurring as leaves of t, in order of first occurrence.
std::vector<Generator> leaves(Term t);
bool occurs(Generator g, Term t);

/// All elements of <X> of length at most max_length.
TermSet generate_bounded(std::span<Term const> X, std::uint64_t max_length);

/// All terms over `alphabet` with length at most max_length, ordered.
std::vector<Term> enumerate_terms(Alphabet const& alphabet,
                                  std::uint64_t max_length);

/// Membership in the submagma generated by X.
bool submagma_contains(std::span<Term const> X, Term t);

/// The unique minimal generating set of <X>; always a subset of X.
TermSet minimal_generators(std::span<Term const> X);

/// True iff the pair is a generator of the square magma: one component is a
/// generator.
bool pair_generators_check(TermPair const& p);

/// Decomposes a pair into generators of the square magma (sorted, distinct).
std::vector<TermPair> pair_split(TermPair const& p);

}  // namespace magmakit

template <>
struct std::hash<magmakit::Term> {
  std::size_t operator()(magmakit::Term t) const noexcept { return t.hash(); }
};
