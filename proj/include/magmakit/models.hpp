#pragma once

// Concrete equidecomposable magmas: diamond and up-arrow operations on the
// positive integers, shuffled periodic sequences, finite languages, and the
// free and presented magmas themselves.

#include <gmpxx.h>

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "magmakit/congruence.hpp"
#include "magmakit/model.hpp"
#include "magmakit/presentation.hpp"
#include "magmakit/term.hpp"

namespace magmakit {

using BigInt = mpz_class;

// ---------------------------------------------------------------------------
// Diamond: x<>y = (x^2 + y^2 + 2xy - x - 3y + 2) / 2, a bijection N x N -> N.
// ---------------------------------------------------------------------------

BigInt diamond(BigInt const& x, BigInt const& y);
std::pair<BigInt, BigInt> diamond_decompose(BigInt const& z);

class DiamondModel {
 public:
  using Element = BigInt;
  Element op(Element const& x, Element const& y) const { return diamond(x, y); }
  bool equal(Element const& x, Element const& y) const { return x == y; }
  std::optional<std::pair<Element, Element>> decompose(Element const& z) const {
    return diamond_decompose(z);
  }
  std::vector<Element> enumerate(std::size_t count) const;
  std::string show(Element const& x) const { return x.get_str(); }
  Element parse(std::string_view text) const;
  std::string name() const { return "diamond"; }
  bool has_decomposition() const { return true; }
  bool is_enumerable() const { return true; }
};

// ---------------------------------------------------------------------------
// Up-arrow: x^y = 2^x * 3^y.
// ---------------------------------------------------------------------------

/// Throws OverflowError when the result would need more than max_bits bits.
BigInt uparrow(BigInt const& x, BigInt const& y,
               unsigned long max_bits = 1u << 20);
std::optional<std::pair<BigInt, BigInt>> uparrow_decompose(BigInt const& z);

class UpArrowModel {
 public:
  using Element = BigInt;
  explicit UpArrowModel(unsigned long max_bits = 1u << 20) : max_bits_(max_bits) {}
  Element op(Element const& x, Element const& y) const {
    return uparrow(x, y, max_bits_);
  }
  bool equal(Element const& x, Element const& y) const { return x == y; }
  std::optional<std::pair<Element, Element>> decompose(Element const& z) const {
    return uparrow_decompose(z);
  }
  std::vector<Element> enumerate(std::size_t count) const;
  std::string show(Element const& x) const { return x.get_str(); }
  Element parse(std::string_view text) const;
  std::string name() const { return "uparrow"; }
  bool has_decomposition() const { return true; }
  bool is_enumerable() const { return true; }

 private:
  unsigned long max_bits_;
};

// ---------------------------------------------------------------------------
// Periodic sequences under shuffle.
// ---------------------------------------------------------------------------

/// Length of the shortest word whose repetition gives `word`.
std::size_t minimal_period(std::string_view word);

/// A purely periodic sequence, stored as its minimal period word.
class PeriodicSeq {
 public:
  PeriodicSeq() = default;
  /// Any nonempty word generating the sequence; it is minimized.
  explicit PeriodicSeq(std::string_view word);

  std::string const& word() const noexcept { return word_; }
  std::size_t period() const noexcept { return word_.size(); }
  char at(std::size_t i) const { return word_[i % word_.size()]; }  // 0-based

  friend bool operator==(PeriodicSeq const&, PeriodicSeq const&) = default;
  friend auto operator<=>(PeriodicSeq const&, PeriodicSeq const&) = default;

 private:
  std::string word_;
};

PeriodicSeq shuffle(PeriodicSeq const& a, PeriodicSeq const& b);
std::pair<PeriodicSeq, PeriodicSeq> shuffle_decompose(PeriodicSeq const& s);

class SeqModel {
 public:
  using Element = PeriodicSeq;
  /// `symbols` is the finite alphabet used for enumeration and parsing.
  explicit SeqModel(std::string symbols = "01") : symbols_(std::move(symbols)) {}
  Element op(Element const& x, Element const& y) const { return shuffle(x, y); }
  bool equal(Element const& x, Element const& y) const { return x == y; }
  std::optional<std::pair<Element, Element>> decompose(Element const& z) const {
    return shuffle_decompose(z);
  }
  /// Sequences by period length, then lexicographically.
  std::vector<Element> enumerate(std::size_t count) const;
  std::string show(Element const& x) const { return x.word(); }
  Element parse(std::string_view text) const;
  std::string name() const { return "seq"; }
  bool has_decomposition() const { return true; }
  bool is_enumerable() const { return true; }

 private:
  std::string symbols_;
};

// ---------------------------------------------------------------------------
// Finite languages over {a, b} with L (+) M = aL u bM.
// ---------------------------------------------------------------------------

/// Words are strings over 'a' and 'b'; the empty string is the empty word.
struct FiniteLanguage {
  std::set<std::string> words;

  bool contains_empty_word() const { return words.contains(""); }
  /// Sum over words of (length + 1); the empty language has size 0.
  std::size_t size() const;
  friend bool operator==(FiniteLanguage const&, FiniteLanguage const&) = default;
  friend auto operator<=>(FiniteLanguage const&, FiniteLanguage const&) = default;
};

FiniteLanguage lang_oplus(FiniteLanguage const& L, FiniteLanguage const& M);
/// nullopt iff the empty word is in L.
std::optional<std::pair<FiniteLanguage, FiniteLanguage>> lang_decompose(
    FiniteLanguage const& L);
/// The root-to-leaf paths of a term over {1}: left edge 'a', right edge 'b'.
FiniteLanguage term_to_language(Term t);
/// No word is a proper prefix of another.
bool is_prefix_free(FiniteLanguage const& L);
/// `{}` or `{eps, a, ab}`.
std::string show_language(FiniteLanguage const& L);
FiniteLanguage parse_language(std::string_view text);

class LangModel {
 public:
  using Element = FiniteLanguage;
  /// With include_empty false the carrier is the nonempty finite languages.
  explicit LangModel(bool include_empty = true) : include_empty_(include_empty) {}
  Element op(Element const& x, Element const& y) const { return lang_oplus(x, y); }
  bool equal(Element const& x, Element const& y) const { return x == y; }
  std::optional<std::pair<Element, Element>> decompose(Element const& z) const;
  /// Languages by size, then lexicographically.
  std::vector<Element> enumerate(std::size_t count) const;
  std::string show(Element const& x) const { return show_language(x); }
  Element parse(std::string_view text) const;
  std::string name() const { return "lang"; }
  bool has_decomposition() const { return true; }
  bool is_enumerable() const { return true; }

 private:
  bool include_empty_;
};

// ---------------------------------------------------------------------------
// Small models.
// ---------------------------------------------------------------------------

/// The one-element magma.
class TrivialModel {
 public:
  using Element = int;
  Element op(Element, Element) const { return 0; }
  bool equal(Element x, Element y) const { return x == y; }
  std::optional<std::pair<Element, Element>> decompose(Element) const {
    return std::pair{0, 0};
  }
  std::vector<Element> enumerate(std::size_t count) const {
    return count == 0 ? std::vector<Element>{} : std::vector<Element>{0};
  }
  std::string show(Element x) const { return std::to_string(x); }
  Element parse(std::string_view text) const;
  std::string name() const { return "trivial"; }
  bool has_decomposition() const { return true; }
  bool is_enumerable() const { return true; }
};

/// x*y = 1 for all x, y on the positive integers. Not equidecomposable.
class ConstantModel {
 public:
  using Element = std::uint64_t;
  Element op(Element, Element) const { return 1; }
  bool equal(Element x, Element y) const { return x == y; }
  std::optional<std::pair<Element, Element>> decompose(Element z) const {
    if (z == 1) return std::pair<Element, Element>{1, 1};
    return std::nullopt;
  }
  std::vector<Element> enumerate(std::size_t count) const;
  std::string show(Element x) const { return std::to_string(x); }
  Element parse(std::string_view text) const;
  std::string name() const { return "constant"; }
  bool has_decomposition() const { return true; }
  bool is_enumerable() const { return true; }
};

/// The free magma over an alphabet.
class FreeMagmaModel {
 public:
  using Element = Term;
  explicit FreeMagmaModel(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
  Element op(Element x, Element y) const { return x + y; }
  bool equal(Element x, Element y) const { return x == y; }
  std::optional<std::pair<Element, Element>> decompose(Element z) const {
    if (z.is_leaf()) return std::nullopt;
    return std::pair{z.left(), z.right()};
  }
  /// Terms by length, then term order.
  std::vector<Element> enumerate(std::size_t count) const;
  std::string show(Element x) const { return x.str(); }
  Element parse(std::string_view text) const { return parse_term(text, alphabet_); }
  std::string name() const { return "free"; }
  bool has_decomposition() const { return true; }
  bool is_enumerable() const { return true; }
  Alphabet const& alphabet() const { return alphabet_; }

 private:
  Alphabet alphabet_;
};

/// The E-magma of an E-form; elements are rewrite normal forms.
class EMagmaModel {
 public:
  using Element = Term;
  explicit EMagmaModel(EForm e, std::size_t max_rules = 10'000);
  Element op(Element x, Element y) const { return rs_.normalize(x + y); }
  bool equal(Element x, Element y) const { return x == y; }
  std::optional<std::pair<Element, Element>> decompose(Element z) const;
  /// Distinct normal forms: generators first, then rounds of sums.
  std::vector<Element> enumerate(std::size_t count) const;
  std::string show(Element x) const { return x.str(); }
  Element parse(std::string_view text) const;
  std::string name() const { return "eform"; }
  bool has_decomposition() const { return rs_.complete(); }
  bool is_enumerable() const { return rs_.complete(); }
  EForm const& eform() const { return e_; }
  RewriteSystem const& rewrite_system() const { return rs_; }

 private:
  EForm e_;
  RewriteSystem rs_;
};

}  // namespace magmakit
