#pragma once

// Solving P(x1..xn) = k in an equidecomposable model. Solutions are unique
// when they exist.

#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "magmakit/model.hpp"
#include "magmakit/term.hpp"

namespace magmakit {

template <typename Element>
using Assignment = std::unordered_map<Generator, Element, GeneratorHash>;

/// Returns the unique assignment of P's variables with P = k, or nullopt.
/// Throws std::invalid_argument if the model cannot decompose.
template <MagmaModel M>
std::optional<Assignment<typename M::Element>> solve_equation(
    M const& m, Term P, typename M::Element const& k) {
  using E = typename M::Element;
  if (!m.has_decomposition())
    throw std::invalid_argument("model " + std::string(m.name()) +
                                " has no decomposition oracle");
  Assignment<E> binding;
  auto solve = [&](auto&& self, Term p, E const& target) -> bool {
    if (p.is_leaf()) {
      auto [it, inserted] = binding.try_emplace(p.generator(), target);
      return inserted || m.equal(it->second, target);
    }
    auto parts = m.decompose(target);
    if (!parts) return false;
    return self(self, p.left(), parts->first) &&
           self(self, p.right(), parts->second);
  };
  if (!solve(solve, P, k)) return std::nullopt;
  return binding;
}

/// Evaluates P under an assignment (every variable must be bound).
template <MagmaModel M>
typename M::Element evaluate(M const& m, Term P,
                             Assignment<typename M::Element> const& a) {
  if (P.is_leaf()) return a.at(P.generator());
  return m.op(evaluate(m, P.left(), a), evaluate(m, P.right(), a));
}

}  // namespace magmakit
