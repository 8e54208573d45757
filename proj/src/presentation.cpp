#include "magmakit/presentation.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace magmakit {

namespace {

bool over_alphabet(Term t, Alphabet const& alphabet) {
  auto ls = leaves(t);
  return std::all_of(ls.begin(), ls.end(),
                     [&](Generator g) { return alphabet.contains(g); });
}

Alphabet without(Alphabet const& alphabet, Generator g) {
  Alphabet out;
  for (Generator h : alphabet)
    if (h != g) out.add(h);
  return out;
}

std::string show(TermPair const& p) { return to_string(p); }

std::string show_all(std::vector<TermPair> const& ps) {
  std::string out;
  for (auto const& p : ps) {
    if (!out.empty()) out += "; ";
    out += show(p);
  }
  return out;
}

std::vector<TermPair> rewrite_all(std::vector<TermPair> const& rels,
                                  Generator from, Term to) {
  std::vector<TermPair> out;
  out.reserve(rels.size());
  for (auto const& r : rels)
    out.push_back({substitute(r.first, from, to), substitute(r.second, from, to)});
  return out;
}

Presentation make(Alphabet alphabet, std::vector<TermPair> rels) {
  Presentation p{std::move(alphabet), std::move(rels)};
  p.normalize();
  return p;
}

std::vector<TermPair> erase_one(std::vector<TermPair> rels, TermPair const& r) {
  rels.erase(std::remove(rels.begin(), rels.end(), r), rels.end());
  return rels;
}

std::optional<StepResult> split(Presentation const& p) {
  std::vector<TermPair> out;
  std::string desc;
  for (auto const& r : p.relations) {
    auto parts = pair_split(r);
    if (!pair_generators_check(r)) {
      if (!desc.empty()) desc += " | ";
      desc += show(r) + " -> " + show_all(parts);
    }
    out.insert(out.end(), parts.begin(), parts.end());
  }
  if (desc.empty()) return std::nullopt;
  return StepResult{make(p.alphabet, std::move(out)), "split " + desc, {}};
}

// Shared by II and III: two relations meeting at a generator on one side with
// composite terms on the other. Keeps the shorter term, drops the longer.
std::optional<StepResult> merge_images(Presentation const& p, bool left_side) {
  std::map<std::size_t, std::vector<Term>> by_gen;
  for (auto const& r : p.relations) {
    Term g = left_side ? r.first : r.second;
    Term y = left_side ? r.second : r.first;
    if (g.is_leaf() && y.is_sum())
      by_gen[*p.alphabet.index_of(g.generator())].push_back(y);
  }
  TermOrder order(p.alphabet);
  for (auto& [index, images] : by_gen) {
    if (images.size() < 2) continue;
    std::sort(images.begin(), images.end(), order);
    Term g = Term::leaf(p.alphabet[index]);
    Term keep = images[0], drop = images[1];
    TermPair dropped = left_side ? TermPair{g, drop} : TermPair{drop, g};
    auto added = pair_split(left_side ? TermPair{keep, drop} : TermPair{drop, keep});
    auto rels = erase_one(p.relations, dropped);
    rels.insert(rels.end(), added.begin(), added.end());
    return StepResult{make(p.alphabet, std::move(rels)),
                      "drop " + show(dropped) + ", add " + show_all(added),
                      {}};
  }
  return std::nullopt;
}

std::optional<StepResult> flip(Presentation const& p) {
  for (auto const& r : p.relations) {
    if (r.first.is_leaf()) continue;
    TermPair flipped{r.second, r.first};
    auto rels = erase_one(p.relations, r);
    rels.push_back(flipped);
    return StepResult{make(p.alphabet, std::move(rels)),
                      "flip " + show(r) + " -> " + show(flipped),
                      {}};
  }
  return std::nullopt;
}

std::optional<StepResult> add_diagonal(Presentation const& p) {
  std::unordered_set<Generator, GeneratorHash> has_left;
  for (auto const& r : p.relations)
    if (r.first.is_leaf()) has_left.insert(r.first.generator());
  for (Generator a : p.alphabet) {
    if (has_left.contains(a)) continue;
    Term t = Term::leaf(a);
    auto rels = p.relations;
    rels.push_back({t, t});
    return StepResult{make(p.alphabet, std::move(rels)),
                      "add " + show({t, t}),
                      {}};
  }
  return std::nullopt;
}

std::map<std::uint32_t, int> left_counts(Presentation const& p) {
  std::map<std::uint32_t, int> counts;
  for (auto const& r : p.relations)
    if (r.first.is_leaf()) ++counts[r.first.generator().id()];
  return counts;
}

StepResult remove_generator(Presentation const& p, TermPair const& dropped,
                            Generator g, Term replacement) {
  auto rels = rewrite_all(erase_one(p.relations, dropped), g, replacement);
  return StepResult{
      make(without(p.alphabet, g), std::move(rels)),
      "drop " + g.name() + ", rewrite " + g.name() + "->" + replacement.str_full(),
      std::make_pair(g, replacement)};
}

std::optional<StepResult> eliminate(Presentation const& p) {
  auto counts = left_counts(p);
  for (auto const& r : p.relations) {
    if (!r.first.is_leaf()) continue;
    Generator a = r.first.generator();
    if (counts[a.id()] != 1 || occurs(a, r.second)) continue;
    return remove_generator(p, r, a, r.second);
  }
  return std::nullopt;
}

std::optional<StepResult> drop_duplicate(Presentation const& p) {
  std::map<Term, std::vector<std::size_t>, TermOrder> by_image{
      TermOrder(p.alphabet)};
  for (auto const& r : p.relations)
    if (r.first.is_leaf())
      by_image[r.second].push_back(*p.alphabet.index_of(r.first.generator()));
  for (auto& [y, gens] : by_image) {
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    if (gens.size() < 2) continue;
    Generator keep = p.alphabet[gens[0]];
    Generator drop = p.alphabet[gens[1]];
    return remove_generator(p, {Term::leaf(drop), y}, drop, Term::leaf(keep));
  }
  return std::nullopt;
}

std::optional<StepResult> drop_diagonal(Presentation const& p) {
  auto counts = left_counts(p);
  for (Generator a : p.alphabet) {
    Term t = Term::leaf(a);
    if (counts[a.id()] < 2 || !p.contains({t, t})) continue;
    return StepResult{make(p.alphabet, erase_one(p.relations, {t, t})),
                      "remove " + show({t, t}),
                      {}};
  }
  return std::nullopt;
}

std::optional<StepResult> merge_generators(Presentation const& p) {
  for (auto const& r : p.relations) {
    if (!r.first.is_leaf() || !r.second.is_leaf() || r.first == r.second)
      continue;
    Generator a = r.first.generator(), b = r.second.generator();
    if (*p.alphabet.index_of(a) > *p.alphabet.index_of(b)) std::swap(a, b);
    return remove_generator(p, r, b, Term::leaf(a));
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------

void Presentation::normalize() {
  std::sort(relations.begin(), relations.end(), PairOrder(alphabet));
  relations.erase(std::unique(relations.begin(), relations.end()),
                  relations.end());
}

bool Presentation::contains(TermPair const& p) const {
  return std::find(relations.begin(), relations.end(), p) != relations.end();
}

std::optional<std::string> EForm::check(Alphabet const& alphabet,
                                        std::vector<Term> const& images) {
  if (images.size() != alphabet.size())
    return "map is not total: " + std::to_string(images.size()) +
           " images for " + std::to_string(alphabet.size()) + " generators";
  std::unordered_set<Term> seen;
  for (std::size_t i = 0; i < images.size(); ++i) {
    Generator a = alphabet[i];
    Term y = images[i];
    if (!y.valid()) return "missing image for " + a.name();
    if (!over_alphabet(y, alphabet))
      return "image of " + a.name() + " uses an unknown generator";
    if (!occurs(a, y))
      return a.name() + " does not occur in its image " + y.str();
    if (!seen.insert(y).second)
      return "map is not injective: " + y.str() + " is repeated";
  }
  return std::nullopt;
}

EForm::EForm(Alphabet alphabet, std::vector<Term> images)
    : alphabet_(std::move(alphabet)), images_(std::move(images)) {
  if (auto err = check(alphabet_, images_))
    throw std::invalid_argument("not an E-form: " + *err);
}

Term EForm::image(Generator g) const {
  auto i = alphabet_.index_of(g);
  if (!i) throw std::invalid_argument("generator " + g.name() + " not in E-form");
  return images_[*i];
}

std::vector<TermPair> EForm::relations() const {
  std::vector<TermPair> out;
  for (std::size_t i = 0; i < images_.size(); ++i)
    out.push_back({Term::leaf(alphabet_[i]), images_[i]});
  return out;
}

Presentation EForm::as_presentation() const {
  return make(alphabet_, relations());
}

std::string EForm::str() const {
  std::string out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i > 0) out += "; ";
    out += alphabet_[i].name() + " -> " + images_[i].str_full();
  }
  return out;
}

std::string tag(Transformation t) {
  switch (t) {
    case Transformation::Split: return "I";
    case Transformation::LeftMerge: return "II";
    case Transformation::RightMerge: return "III";
    case Transformation::Flip: return "IV";
    case Transformation::AddDiagonal: return "V";
    case Transformation::DropDuplicate: return "VI";
    case Transformation::Eliminate: return "VII";
    case Transformation::DropDiagonal: return "drop-diag";
    case Transformation::MergeGenerators: return "merge";
  }
  return "?";
}

bool is_first_phase(Transformation t) {
  return t == Transformation::Split || t == Transformation::LeftMerge ||
         t == Transformation::RightMerge;
}

std::optional<StepResult> apply_transformation(Presentation const& p,
                                               Transformation which) {
  for (auto const& r : p.relations)
    if (!over_alphabet(r.first, p.alphabet) || !over_alphabet(r.second, p.alphabet))
      throw std::invalid_argument("relation " + to_string(r) +
                                  " uses a generator outside the alphabet");
  switch (which) {
    case Transformation::Split: return split(p);
    case Transformation::LeftMerge: return merge_images(p, true);
    case Transformation::RightMerge: return merge_images(p, false);
    case Transformation::Flip: return flip(p);
    case Transformation::AddDiagonal: return add_diagonal(p);
    case Transformation::DropDuplicate: return drop_duplicate(p);
    case Transformation::Eliminate: return eliminate(p);
    case Transformation::DropDiagonal: return drop_diagonal(p);
    case Transformation::MergeGenerators: return merge_generators(p);
  }
  return std::nullopt;
}

Reduction reduce(Presentation const& input) {
  static constexpr Transformation schedule[] = {
      Transformation::Split,         Transformation::LeftMerge,
      Transformation::RightMerge,    Transformation::Flip,
      Transformation::AddDiagonal,   Transformation::Eliminate,
      Transformation::DropDuplicate, Transformation::DropDiagonal,
      Transformation::MergeGenerators};
  static constexpr std::size_t max_steps = 1'000'000;

  Presentation p = input;
  p.normalize();
  Reduction out;
  out.original = p.alphabet;
  for (Generator g : p.alphabet) out.sigma.emplace(g, Term::leaf(g));

  for (std::size_t steps = 0;; ++steps) {
    if (steps > max_steps)
      throw std::logic_error("internal error: reduction did not terminate");
    std::optional<StepResult> r;
    Transformation which{};
    for (Transformation t : schedule) {
      if ((r = apply_transformation(p, t))) {
        which = t;
        break;
      }
    }
    if (!r) break;
    if (r->eliminated) {
      auto [g, term] = *r->eliminated;
      for (auto& [orig, image] : out.sigma) image = substitute(image, g, term);
    }
    out.trace.steps.push_back({which, p, r->after, r->description});
    p = std::move(r->after);
  }

  std::vector<Term> images(p.alphabet.size());
  for (auto const& r : p.relations) {
    auto i = r.first.is_leaf() ? p.alphabet.index_of(r.first.generator())
                               : std::nullopt;
    if (!i || images[*i].valid())
      throw std::logic_error("internal error: irreducible relations " +
                             show_all(p.relations) + " do not form a map");
    images[*i] = r.second;
  }
  if (auto err = EForm::check(p.alphabet, images))
    throw std::logic_error("internal error: reduced presentation is not an "
                           "E-form: " + *err);
  out.eform = EForm(p.alphabet, std::move(images));
  return out;
}

std::uint64_t alpha_measure(std::vector<TermPair> const& relations) {
  std::uint64_t alpha = 0;
  for (auto const& r : relations)
    alpha = std::max({alpha, r.first.length(), r.second.length()});
  return alpha;
}

std::uint64_t beta_measure(Presentation const& p) {
  std::uint64_t beta = p.alphabet.size() + p.relations.size();
  for (auto const& r : p.relations)
    if (r.second.is_leaf()) ++beta;
  for (Generator a : p.alphabet) {
    Term t = Term::leaf(a);
    if (!p.contains({t, t})) ++beta;
  }
  return beta;
}

FreeProduct free_product(EForm const& e1, EForm const& e2) {
  std::unordered_set<std::string> used;
  for (Generator g : e1.alphabet()) used.insert(g.name());
  for (Generator g : e2.alphabet()) used.insert(g.name());

  FreeProduct out;
  for (Generator g : e1.alphabet())
    out.left_renaming.emplace(g, Term::leaf(g));
  for (Generator g : e2.alphabet())
    out.right_renaming.emplace(g, Term::leaf(g));

  auto fresh = [&](std::string const& base, int from) {
    int i = from;
    while (used.contains(base + std::to_string(i))) ++i;
    used.insert(base + std::to_string(i));
    return i;
  };
  for (Generator g : e1.alphabet()) {
    if (!e2.alphabet().contains(g)) continue;
    std::string base = g.name() == "1" ? "u" : g.name();
    int i = fresh(base, 1);
    int j = fresh(base, i + 1);
    out.left_renaming[g] = Term::leaf(base + std::to_string(i));
    out.right_renaming[g] = Term::leaf(base + std::to_string(j));
  }

  Alphabet alphabet;
  std::vector<Term> images;
  for (Generator g : e1.alphabet()) {
    alphabet.add(out.left_renaming[g].generator());
    images.push_back(substitute(e1.image(g), out.left_renaming));
  }
  for (Generator g : e2.alphabet()) {
    alphabet.add(out.right_renaming[g].generator());
    images.push_back(substitute(e2.image(g), out.right_renaming));
  }
  out.eform = EForm(std::move(alphabet), std::move(images));
  return out;
}

EForm cyclic(Term x) {
  Alphabet one = Alphabet::cyclic();
  if (!over_alphabet(x, one))
    throw std::invalid_argument("cyclic: term must be over {1}");
  return EForm(one, {x});
}

EForm identity_eform(Alphabet const& alphabet) {
  std::vector<Term> images;
  for (Generator g : alphabet) images.push_back(Term::leaf(g));
  return EForm(alphabet, std::move(images));
}

}  // namespace magmakit
