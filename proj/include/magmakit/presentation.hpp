#pragma once

// Finite presentations (A | R), reduction to E-form, and E-form utilities.

#include <optional>
#include <string>
#include <vector>

#include "magmakit/term.hpp"

namespace magmakit {

/// A finite presentation. Relations are kept sorted (by the alphabet's pair
/// order) and free of duplicates; call normalize() after editing them.
struct Presentation {
  Alphabet alphabet;
  std::vector<TermPair> relations;

  void normalize();
  bool contains(TermPair const& p) const;
  friend bool operator==(Presentation const&, Presentation const&) = default;
};

/// An injective map phi: A -> M_A with every a occurring as a leaf of phi(a).
class EForm {
 public:
  EForm() = default;
  /// Throws std::invalid_argument unless the map is total, injective and
  /// self-referential and every image is over the alphabet.
  EForm(Alphabet alphabet, std::vector<Term> images);

  Alphabet const& alphabet() const noexcept { return alphabet_; }
  std::vector<Term> const& images() const noexcept { return images_; }
  Term image(Generator g) const;
  std::size_t size() const noexcept { return images_.size(); }

  /// The relations {(a, phi(a))}.
  std::vector<TermPair> relations() const;
  Presentation as_presentation() const;

  /// One line: `a -> (a+a); b -> b`.
  std::string str() const;

  friend bool operator==(EForm const&, EForm const&) = default;

  /// Describes why (alphabet, images) is not an E-form, or nullopt.
  static std::optional<std::string> check(Alphabet const& alphabet,
                                          std::vector<Term> const& images);

 private:
  Alphabet alphabet_;
  std::vector<Term> images_;
};

enum class Transformation {
  Split,          // I
  LeftMerge,      // II
  RightMerge,     // III
  Flip,           // IV
  AddDiagonal,    // V
  DropDuplicate,  // VI
  Eliminate,      // VII
  DropDiagonal,   // remove (a,a) when a has another relation
  MergeGenerators // relation between two distinct generators
};

/// `I` .. `VII`, `drop-diag`, `merge`.
std::string tag(Transformation t);
bool is_first_phase(Transformation t);

struct ReductionStep {
  Transformation which;
  Presentation before;
  Presentation after;
  std::string description;  // e.g. `drop c, rewrite c->a`
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
};

struct StepResult {
  Presentation after;
  std::string description;
  /// Generator removed by the step and the term it now stands for.
  std::optional<std::pair<Generator, Term>> eliminated;
};

/// Applies one transformation to the deterministically chosen smallest
/// applicable instance; nullopt when the side condition fails everywhere.
std::optional<StepResult> apply_transformation(Presentation const& p,
                                               Transformation which);

struct Reduction {
  EForm eform;
  ReductionTrace trace;
  /// Image of every original generator as a term over the final alphabet.
  Substitution sigma;
  /// Original alphabet, for iterating sigma in declaration order.
  Alphabet original;
};

/// Reduces to E-form. First-phase moves (I-III) are preferred whenever
/// applicable; then IV, V, VII, VI, drop-diag, merge.
/// Throws std::logic_error if the result is not an E-form.
Reduction reduce(Presentation const& p);

std::uint64_t alpha_measure(std::vector<TermPair> const& relations);
std::uint64_t beta_measure(Presentation const& p);

struct FreeProduct {
  EForm eform;
  Substitution left_renaming;   // generators of e1 -> leaves of the result
  Substitution right_renaming;  // generators of e2 -> leaves of the result
};

/// Disjoint union of two E-forms. Colliding names get numeric suffixes on
/// both sides (a -> a1, a2).
FreeProduct free_product(EForm const& e1, EForm const& e2);

/// The cyclic E-form {1 -> x}; x must be over {1}.
EForm cyclic(Term x);

/// The identity E-form on an alphabet (the free magma).
EForm identity_eform(Alphabet const& alphabet);

}  // namespace magmakit
