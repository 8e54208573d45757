#pragma once

// The magma model interface. A model exposes
//
//   using Element = ...;
//   Element op(Element const&, Element const&) const;
//   bool equal(Element const&, Element const&) const;
//   std::optional<std::pair<Element, Element>> decompose(Element const&) const;
//   std::vector<Element> enumerate(std::size_t count) const;  // first `count`
//   std::string show(Element const&) const;
//   Element parse(std::string_view) const;
//   std::string name() const;
//   bool has_decomposition() const;
//   bool is_enumerable() const;
//
// decompose returns nullopt for indecomposable elements and throws
// std::logic_error when has_decomposition() is false.

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace magmakit {

template <typename M>
concept MagmaModel = requires(M const& m, typename M::Element const& x,
                              std::string_view text, std::size_t n) {
  typename M::Element;
  { m.op(x, x) } -> std::same_as<typename M::Element>;
  { m.equal(x, x) } -> std::same_as<bool>;
  { m.decompose(x) } ->
      std::same_as<std::optional<std::pair<typename M::Element, typename M::Element>>>;
  { m.enumerate(n) } -> std::same_as<std::vector<typename M::Element>>;
  { m.show(x) } -> std::convertible_to<std::string>;
  { m.parse(text) } -> std::same_as<typename M::Element>;
  { m.name() } -> std::convertible_to<std::string>;
  { m.has_decomposition() } -> std::same_as<bool>;
  { m.is_enumerable() } -> std::same_as<bool>;
};

struct EquidecReport {
  std::string model;
  std::size_t samples = 0;
  std::size_t violations = 0;  // samples with at least one failure
  std::vector<std::string> messages;  // first few violations
};

/// Samples pairs from the first `pool` enumerated elements and checks that op
/// is injective on them and that decompose inverts op.
template <MagmaModel M>
EquidecReport check_equidec_sampled(M const& m, std::size_t n_samples,
                                    std::uint64_t seed = 1,
                                    std::size_t pool = 200) {
  EquidecReport report{m.name(), n_samples, 0, {}};
  auto elements = m.enumerate(pool);
  if (elements.empty()) return report;
  std::vector<std::string> found;
  auto note = [&](std::string msg) { found.push_back(std::move(msg)); };
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, elements.size() - 1);
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t i = 0; i < n_samples; ++i) {
    std::size_t xi = pick(rng), yi = pick(rng);
    auto const& x = elements[xi];
    auto const& y = elements[yi];
    auto z = m.op(x, y);
    found.clear();
    auto [it, inserted] = seen.try_emplace(m.show(z), xi, yi);
    if (!inserted && (!m.equal(elements[it->second.first], x) ||
                      !m.equal(elements[it->second.second], y)))
      note("op(" + m.show(elements[it->second.first]) + ", " +
           m.show(elements[it->second.second]) + ") = op(" + m.show(x) + ", " +
           m.show(y) + ") = " + m.show(z));
    if (m.has_decomposition()) {
      auto d = m.decompose(z);
      if (!d || !m.equal(d->first, x) || !m.equal(d->second, y))
        note("decompose(" + m.show(z) + ") does not return (" + m.show(x) +
             ", " + m.show(y) + ")");
    }
    if (found.empty()) continue;
    ++report.violations;
    for (auto& msg : found)
      if (report.messages.size() < 10) report.messages.push_back(std::move(msg));
  }
  return report;
}

}  // namespace magmakit
