#include "magmakit/structure.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <unordered_map>

#include "magmakit/errors.hpp"

namespace magmakit {

// ---------------------------------------------------------------------------
// Split
// ---------------------------------------------------------------------------

SplitResult split(EForm const& e) {
  SplitResult out;
  Alphabet initial;
  std::vector<Term> initial_images;
  out.full_part_presentation.alphabet = e.alphabet();
  for (Generator a : e.alphabet()) {
    Term img = e.image(a);
    if (img == Term::leaf(a)) {
      out.initial_gens.push_back(a);
      initial.add(a);
      initial_images.push_back(img);
    } else {
      out.full_gens.push_back(a);
      out.full_part_presentation.relations.push_back({Term::leaf(a), img});
    }
  }
  out.full_part_presentation.normalize();
  if (!initial.empty()) out.initial_eform = EForm(initial, initial_images);
  return out;
}

bool in_full_part(EForm const& e, Term t) {
  for (Generator g : leaves(t))
    if (e.image(g) != Term::leaf(g)) return true;
  return false;
}

bool is_free(EForm const& e) {
  for (Generator a : e.alphabet())
    if (e.image(a) != Term::leaf(a)) return false;
  return true;
}

bool is_full(EForm const& e) {
  for (Generator a : e.alphabet())
    if (e.image(a) == Term::leaf(a)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Conjugacy
// ---------------------------------------------------------------------------

Generator ConjugacyWitness::operator()(Generator a) const {
  for (auto const& [x, y] : mapping)
    if (x == a) return y;
  throw std::invalid_argument("generator " + a.name() + " not in witness");
}

Term ConjugacyWitness::apply(Term t) const {
  Substitution s;
  for (auto const& [x, y] : mapping) s.emplace(x, Term::leaf(y));
  return substitute(t, s);
}

ConjugacyWitness ConjugacyWitness::inverse() const {
  ConjugacyWitness out;
  for (auto const& [x, y] : mapping) out.mapping.emplace_back(y, x);
  return out;
}

ConjugacyWitness ConjugacyWitness::then(ConjugacyWitness const& other) const {
  ConjugacyWitness out;
  for (auto const& [x, y] : mapping) out.mapping.emplace_back(x, other(y));
  return out;
}

namespace {

struct Signature {
  bool fixed;
  std::uint64_t length;
  std::vector<std::size_t> leaf_counts;  // sorted occurrence counts
  std::string shape;

  friend bool operator==(Signature const&, Signature const&) = default;
};

void shape_of(Term t, std::string& out) {
  if (t.is_leaf()) {
    out += '.';
    return;
  }
  out += '(';
  shape_of(t.left(), out);
  shape_of(t.right(), out);
  out += ')';
}

void count_leaves(Term t, std::map<std::uint32_t, std::size_t>& counts) {
  if (t.is_leaf()) {
    ++counts[t.generator().id()];
    return;
  }
  count_leaves(t.left(), counts);
  count_leaves(t.right(), counts);
}

Signature signature(Generator a, Term img) {
  Signature s{img == Term::leaf(a), img.length(), {}, {}};
  std::map<std::uint32_t, std::size_t> counts;
  count_leaves(img, counts);
  for (auto const& [g, n] : counts) s.leaf_counts.push_back(n);
  std::sort(s.leaf_counts.begin(), s.leaf_counts.end());
  shape_of(img, s.shape);
  return s;
}

class ConjugacySearch {
 public:
  ConjugacySearch(EForm const& e1, EForm const& e2) : e1_(e1), e2_(e2) {
    std::size_t n = e1.size();
    fwd_.assign(n, -1);
    bwd_.assign(n, -1);
    std::vector<Signature> s1, s2;
    for (std::size_t i = 0; i < n; ++i) {
      s1.push_back(signature(e1.alphabet()[i], e1.images()[i]));
      s2.push_back(signature(e2.alphabet()[i], e2.images()[i]));
    }
    candidates_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (s1[i] == s2[j]) candidates_[i].push_back(j);
    order_.resize(n);
    for (std::size_t i = 0; i < n; ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t x, std::size_t y) {
      return candidates_[x].size() < candidates_[y].size();
    });
  }

  /// The generator the search branches on first, if any.
  std::optional<std::size_t> first_choice() const {
    if (order_.empty()) return std::nullopt;
    return order_.front();
  }
  std::vector<std::size_t> const& candidates(std::size_t i) const {
    return candidates_[i];
  }

  /// Full search with an optional forced first assignment.
  bool run(std::optional<std::pair<std::size_t, std::size_t>> forced = {}) {
    if (forced) {
      std::size_t mark = trail_.size();
      if (!assign(forced->first, forced->second)) {
        undo(mark);
        return false;
      }
    }
    return search(0);
  }

  ConjugacyWitness witness() const {
    ConjugacyWitness w;
    for (std::size_t i = 0; i < fwd_.size(); ++i)
      w.mapping.emplace_back(e1_.alphabet()[i],
                             e2_.alphabet()[static_cast<std::size_t>(fwd_[i])]);
    return w;
  }

 private:
  bool search(std::size_t k) {
    while (k < order_.size() && fwd_[order_[k]] >= 0) ++k;
    if (k == order_.size()) return true;
    std::size_t a = order_[k];
    for (std::size_t b : candidates_[a]) {
      if (bwd_[b] >= 0) continue;
      std::size_t mark = trail_.size();
      if (assign(a, b) && search(k + 1)) return true;
      undo(mark);
    }
    return false;
  }

  // Assigns a -> b and everything it forces through the images.
  bool assign(std::size_t a, std::size_t b) {
    std::vector<std::pair<std::size_t, std::size_t>> work{{a, b}};
    while (!work.empty()) {
      auto [x, y] = work.back();
      work.pop_back();
      if (fwd_[x] == static_cast<std::int64_t>(y)) continue;
      if (fwd_[x] >= 0 || bwd_[y] >= 0) return false;
      fwd_[x] = static_cast<std::int64_t>(y);
      bwd_[y] = static_cast<std::int64_t>(x);
      trail_.push_back(x);
      if (!unify(e1_.images()[x], e2_.images()[y], work)) return false;
    }
    return true;
  }

  bool unify(Term s, Term t,
             std::vector<std::pair<std::size_t, std::size_t>>& work) const {
    if (s.is_leaf() != t.is_leaf()) return false;
    if (s.is_leaf()) {
      work.emplace_back(*e1_.alphabet().index_of(s.generator()),
                        *e2_.alphabet().index_of(t.generator()));
      return true;
    }
    return unify(s.left(), t.left(), work) && unify(s.right(), t.right(), work);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      std::size_t x = trail_.back();
      trail_.pop_back();
      bwd_[static_cast<std::size_t>(fwd_[x])] = -1;
      fwd_[x] = -1;
    }
  }

  EForm const& e1_;
  EForm const& e2_;
  std::vector<std::int64_t> fwd_, bwd_;
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> trail_;
};

}  // namespace

std::optional<ConjugacyWitness> conjugate(EForm const& e1, EForm const& e2,
                                          ConjugacyOptions options) {
  if (e1.size() != e2.size()) return std::nullopt;
  if (e1.size() > options.max_gens)
    throw ResourceLimitExceeded("search too large: " + std::to_string(e1.size()) +
                                " generators, cap " + std::to_string(options.max_gens));
  ConjugacySearch root(e1, e2);
  auto first = root.first_choice();
  if (!first) return ConjugacyWitness{};

  auto const& cands = root.candidates(*first);
  if (options.threads <= 1 || cands.size() <= 1) {
    if (root.run()) return root.witness();
    return std::nullopt;
  }

  // Fan out over the first branching choice; the lowest successful branch
  // wins so the witness does not depend on scheduling.
  unsigned workers = std::min<unsigned>(options.threads,
                                        static_cast<unsigned>(cands.size()));
  std::vector<std::future<std::vector<std::optional<ConjugacyWitness>>>> jobs;
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      std::vector<std::optional<ConjugacyWitness>> found(cands.size());
      for (std::size_t i = w; i < cands.size(); i += workers) {
        ConjugacySearch s(e1, e2);
        if (s.run(std::pair{*first, cands[i]})) found[i] = s.witness();
      }
      return found;
    }));
  }
  std::vector<std::optional<ConjugacyWitness>> results(cands.size());
  for (unsigned w = 0; w < workers; ++w) {
    auto part = jobs[w].get();
    for (std::size_t i = w; i < cands.size(); i += workers) results[i] = part[i];
  }
  for (auto& r : results)
    if (r) return r;
  return std::nullopt;
}

bool verify_conjugacy(EForm const& e1, EForm const& e2, ConjugacyWitness const& w) {
  if (e1.size() != e2.size() || w.mapping.size() != e1.size()) return false;
  std::unordered_map<Generator, Generator, GeneratorHash> seen_image;
  for (auto const& [a, b] : w.mapping) {
    if (!e1.alphabet().contains(a) || !e2.alphabet().contains(b)) return false;
    if (!seen_image.emplace(b, a).second) return false;
  }
  for (auto const& [a, b] : w.mapping)
    if (w.apply(e1.image(a)) != e2.image(b)) return false;
  return true;
}

bool isomorphic(EForm const& e1, EForm const& e2, ConjugacyOptions options) {
  return conjugate(e1, e2, options).has_value();
}

// ---------------------------------------------------------------------------
// Mirror
// ---------------------------------------------------------------------------

Term mirror(Term t) {
  std::unordered_map<Term, Term> memo;
  auto go = [&](auto&& self, Term u) -> Term {
    if (u.is_leaf()) return u;
    if (auto it = memo.find(u); it != memo.end()) return it->second;
    Term v = self(self, u.right()) + self(self, u.left());
    memo.emplace(u, v);
    return v;
  };
  return go(go, t);
}

EForm mirror_eform(EForm const& e) {
  std::vector<Term> images;
  for (Term t : e.images()) images.push_back(mirror(t));
  return EForm(e.alphabet(), std::move(images));
}

}  // namespace magmakit
