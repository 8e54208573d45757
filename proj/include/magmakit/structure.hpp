#pragma once

// Structure of E-magmas: initial/full split, isomorphism by conjugacy,
// mirror images, indecomposables of products, and the projections of full
// equidecomposable models.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "magmakit/model.hpp"
#include "magmakit/presentation.hpp"
#include "magmakit/term.hpp"

namespace magmakit {

struct SplitResult {
  std::vector<Generator> initial_gens;  // phi(a) = a
  std::vector<Generator> full_gens;     // the rest
  EForm initial_eform;                  // identity on initial_gens (may be empty)
  /// Relations a = phi(a) of the full generators, over the whole alphabet.
  Presentation full_part_presentation;
};

SplitResult split(EForm const& e);

/// True iff the class of t lies in the full part: t has a full generator
/// among its leaves.
bool in_full_part(EForm const& e, Term t);

bool is_free(EForm const& e);
bool is_full(EForm const& e);

/// A generator bijection g with g(phi(a)) = psi(g(a)).
struct ConjugacyWitness {
  std::vector<std::pair<Generator, Generator>> mapping;  // in e1's order

  Generator operator()(Generator a) const;
  Term apply(Term t) const;
  ConjugacyWitness inverse() const;
  /// (other o this): first this, then other.
  ConjugacyWitness then(ConjugacyWitness const& other) const;
};

struct ConjugacyOptions {
  std::size_t max_gens = 12;
  unsigned threads = 1;
};

/// Backtracking search for a conjugacy. Throws ResourceLimitExceeded
/// ("search too large") when the alphabets exceed options.max_gens.
std::optional<ConjugacyWitness> conjugate(EForm const& e1, EForm const& e2,
                                          ConjugacyOptions options = {});

/// Checks a witness independently of the search.
bool verify_conjugacy(EForm const& e1, EForm const& e2, ConjugacyWitness const& w);

bool isomorphic(EForm const& e1, EForm const& e2, ConjugacyOptions options = {});

/// Swaps the operands of every sum.
Term mirror(Term t);
EForm mirror_eform(EForm const& e);

/// Elements (t, x) with t over A of length at most term_bound and x among the
/// first element_count elements of m that do not decompose in the product
/// M_A x m. Components decompose jointly, so (t, x) is indecomposable iff t
/// is a generator or x is indecomposable.
template <MagmaModel M>
std::vector<std::pair<Term, typename M::Element>> product_indecomposables_bounded(
    Alphabet const& A, M const& m, std::uint64_t term_bound,
    std::size_t element_count) {
  if (!m.is_enumerable())
    throw std::invalid_argument("model " + std::string(m.name()) + " is not enumerable");
  if (!m.has_decomposition())
    throw std::invalid_argument("model " + std::string(m.name()) +
                                " has no decomposition oracle");
  std::vector<std::pair<Term, typename M::Element>> out;
  auto elements = m.enumerate(element_count);
  std::vector<bool> indecomposable;
  for (auto const& x : elements) indecomposable.push_back(!m.decompose(x));
  for (Term t : enumerate_terms(A, term_bound))
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (t.is_leaf() || indecomposable[i]) out.emplace_back(t, elements[i]);
  return out;
}

template <typename E>
struct Projections {
  std::function<E(E const&)> p;
  std::function<E(E const&)> q;
};

/// The first and second components of the decomposition. The model must be
/// full; p and q throw std::domain_error on an indecomposable element.
template <MagmaModel M>
Projections<typename M::Element> jonsson_tarski(M m) {
  using E = typename M::Element;
  if (!m.has_decomposition())
    throw std::invalid_argument("model " + std::string(m.name()) +
                                " has no decomposition oracle");
  auto part = [m](E const& z, bool first) -> E {
    auto d = m.decompose(z);
    if (!d)
      throw std::domain_error("element " + std::string(m.show(z)) +
                              " is indecomposable");
    return first ? d->first : d->second;
  };
  return {[part](E const& z) { return part(z, true); },
          [part](E const& z) { return part(z, false); }};
}

}  // namespace magmakit
