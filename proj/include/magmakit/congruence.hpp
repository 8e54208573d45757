#pragma once

// Congruence closure over finite term universes, bounded closed-congruence
// saturation, ground completion for E-forms and the word problem.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "magmakit/presentation.hpp"
#include "magmakit/term.hpp"

namespace magmakit {

/// Union-find congruence closure on a subterm-closed set of terms. With
/// `injective` set, merging two classes that both contain sums also merges
/// the corresponding components, which yields the least closed congruence.
class CongruenceClosure {
 public:
  explicit CongruenceClosure(bool injective = true);

  /// Adds t and all its subterms; returns the node id of t.
  std::size_t add(Term t);
  void merge(Term a, Term b);

  bool contains(Term t) const;
  /// Both terms must have been added.
  bool equivalent(Term a, Term b);
  std::size_t class_of(Term t);
  std::size_t size() const noexcept { return nodes_.size(); }
  Term term(std::size_t id) const { return nodes_[id].term; }

 private:
  struct Node {
    Term term;
    std::int64_t left = -1;
    std::int64_t right = -1;
  };
  struct SigHash {
    std::size_t operator()(std::pair<std::size_t, std::size_t> p) const noexcept {
      return p.first * 0x9e3779b97f4a7c15ULL ^ p.second;
    }
  };

  std::size_t find(std::size_t x);
  void propagate();
  void unite(std::size_t a, std::size_t b);

  bool injective_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> parent_;
  std::vector<std::vector<std::size_t>> uses_;  // sums with a child in class
  std::vector<std::int64_t> sum_rep_;           // some sum node in class
  std::vector<std::size_t> class_size_;
  std::unordered_map<Term, std::size_t> ids_;
  std::unordered_map<std::pair<std::size_t, std::size_t>, std::size_t, SigHash>
      signatures_;
  std::vector<std::pair<std::size_t, std::size_t>> pending_;
};

struct SaturationOptions {
  /// Apply the decomposition rule (closed congruence) or not (congruence).
  bool decomposition = true;
  /// Cap on the number of terms in the working universe.
  std::size_t max_terms = 1'000'000;
};

/// A congruence restricted to the terms of length at most size_bound,
/// stored as a partition.
class PairSet {
 public:
  PairSet() = default;
  PairSet(Alphabet alphabet, std::uint64_t size_bound, std::vector<Term> terms,
          std::vector<std::size_t> class_ids);

  std::uint64_t size_bound() const noexcept { return bound_; }
  Alphabet const& alphabet() const noexcept { return alphabet_; }
  bool contains(TermPair const& p) const;
  bool contains(Term a, Term b) const { return contains(TermPair{a, b}); }
  std::optional<std::size_t> class_of(Term t) const;
  /// Number of stored pairs: the sum of squared class sizes.
  std::uint64_t pair_count() const;
  std::size_t term_count() const noexcept { return terms_.size(); }
  /// Classes with members in term order, ordered by their least member.
  std::vector<std::vector<Term>> classes() const;
  /// All pairs in the relation (quadratic; for small bounds only).
  std::vector<TermPair> pairs() const;

 private:
  Alphabet alphabet_;
  std::uint64_t bound_ = 0;
  std::vector<Term> terms_;
  std::unordered_map<Term, std::size_t> class_ids_;
};

/// The least (closed) congruence containing R, restricted to terms over the
/// alphabet of length at most size_bound. Relations longer than the bound are
/// allowed; their subterms join the working universe.
/// Throws ResourceLimitExceeded when the universe exceeds options.max_terms.
PairSet saturate_bounded(std::span<TermPair const> R, Alphabet const& alphabet,
                         std::uint64_t size_bound, SaturationOptions options = {});

/// True iff the congruence generated by R, restricted to the bound, is closed:
/// equivalent sums always have equivalent components.
bool is_closed_bounded(std::span<TermPair const> R, Alphabet const& alphabet,
                       std::uint64_t size_bound, std::size_t max_terms = 1'000'000);

/// Equivalence classes of the E-magma's congruence among terms up to the bound.
std::vector<std::vector<Term>> classes_bounded(EForm const& e,
                                               std::uint64_t size_bound,
                                               std::size_t max_terms = 1'000'000);

/// True iff [x]+[x'] = [y]+[y'] implies [x]=[y] and [x']=[y'] for all sums
/// within the saturated bound.
bool quotient_is_equidecomposable(PairSet const& s);

/// Ground rewrite rules lhs -> rhs, ordered by (length, term order).
class RewriteSystem {
 public:
  struct Rule {
    Term lhs;
    Term rhs;
  };

  RewriteSystem() = default;

  std::vector<Rule> const& rules() const noexcept { return rules_; }
  /// False when completion hit its cap; normal forms are then not unique.
  bool complete() const noexcept { return complete_; }
  /// The rule with this left side, if any.
  std::optional<Term> lookup(Term lhs) const;
  /// The unique sum u+v with u+v -> g, if any.
  std::optional<Term> sum_rule_for(Generator g) const;

  /// Innermost normal form.
  Term normalize(Term t) const;

 private:
  friend RewriteSystem build_rewrite_system(EForm const&, std::size_t);
  std::vector<Rule> rules_;
  std::unordered_map<Term, Term> index_;
  std::unordered_map<Term, Term> sum_by_rhs_;
  bool complete_ = true;
};

/// Ground completion of {phi(a) -> a} with the decomposition rule for sums.
/// Stops with complete() == false once more than max_rules rules exist.
RewriteSystem build_rewrite_system(EForm const& e, std::size_t max_rules = 10'000);

Term normalize(RewriteSystem const& rs, Term t);

struct WordAnswer {
  enum class Verdict { Equal, Unequal, Undecided };
  Verdict verdict;
  std::uint64_t bound = 0;  // working size when undecided

  std::string str() const;  // `equal`, `unequal`, `undecided(bound=n)`
};

struct WordOptions {
  std::size_t max_rules = 10'000;
  std::size_t max_terms = 1'000'000;
};

/// Decides s = t in the E-magma. Uses rewriting when completion succeeds and
/// congruence closure over the subterms of phi, s and t otherwise.
WordAnswer word_equal(EForm const& e, Term s, Term t, WordOptions options = {});
WordAnswer word_equal(EForm const& e, RewriteSystem const& rs, Term s, Term t,
                      WordOptions options = {});

/// Closure-only decision procedure (no rewriting).
WordAnswer word_equal_by_closure(EForm const& e, Term s, Term t,
                                 std::size_t max_terms = 1'000'000);

}  // namespace magmakit
