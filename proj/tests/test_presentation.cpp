#include "doctest.h"
#include "generators.hpp"
#include "magmakit/congruence.hpp"
#include "magmakit/errors.hpp"
#include "magmakit/io.hpp"
#include "magmakit/presentation.hpp"
#include "magmakit/structure.hpp"

using namespace magmakit;
using testgen::Rng;

namespace {

Presentation pres(std::string_view text) { return parse_presentation(text); }

std::set<std::string> rel_strings(Presentation const& p) {
  std::set<std::string> out;
  for (auto const& r : p.relations) out.insert(to_string(r));
  return out;
}

std::size_t composite_pairs(Presentation const& p) {
  std::size_t n = 0;
  for (auto const& r : p.relations)
    if (r.first.is_sum() && r.second.is_sum()) ++n;
  return n;
}

std::size_t beta4(Presentation const& p) {
  std::size_t n = 0;
  for (Generator a : p.alphabet)
    if (!p.contains({Term::leaf(a), Term::leaf(a)})) ++n;
  return n;
}

// Multiset of max(l(x), l(y)) over the relations, compared in the multiset
// extension of <.
std::multiset<std::uint64_t> weights(Presentation const& p) {
  std::multiset<std::uint64_t> out;
  for (auto const& r : p.relations)
    out.insert(std::max(r.first.length(), r.second.length()));
  return out;
}

bool multiset_less(std::multiset<std::uint64_t> a, std::multiset<std::uint64_t> b) {
  for (auto it = a.begin(); it != a.end();) {
    auto jt = b.find(*it);
    if (jt != b.end()) {
      b.erase(jt);
      it = a.erase(it);
    } else {
      ++it;
    }
  }
  if (a.empty() && b.empty()) return false;
  for (auto x : a)
    if (b.empty() || *b.rbegin() <= x) return false;
  return true;
}

}  // namespace

TEST_CASE("presentation file format") {
  Presentation p = pres("# comment\ngens: a b c d\n\nrel: (c+d)+(a+c) = (a+a)+a  # trailing\n");
  CHECK(p.alphabet.size() == 4);
  REQUIRE(p.relations.size() == 1);
  CHECK(to_string(p.relations[0]) == "(c+d)+(a+c) = (a+a)+a");
  CHECK(parse_presentation(format_presentation(p)) == p);
}

TEST_CASE("presentation parse errors report line and column") {
  try {
    pres("gens: a b\nrel: a+b = (a+c)\n");
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 15);
  }
  CHECK_THROWS_AS(pres(""), ParseError);
  CHECK_THROWS_AS(pres("gens: a a\n"), ParseError);
  CHECK_THROWS_AS(pres("gens: a\nrel: a\n"), ParseError);
  CHECK_THROWS_AS(pres("gen: a\n"), ParseError);
}

TEST_CASE("eform file format") {
  EForm e = parse_eform("eform:\nmap: a -> a+a\nmap: b -> b\n");
  CHECK(e.str() == "a -> (a+a); b -> b");
  CHECK(format_eform(e) == "eform:\nmap: a -> a+a\nmap: b -> b\n");
  CHECK(parse_eform(format_eform(e)) == e);
  CHECK_THROWS_AS(parse_eform("eform:\nmap: a -> b\nmap: b -> b\n"), ParseError);
  CHECK_THROWS_AS(parse_eform("eform:\nmap: a -> a\nmap: a -> a+a\n"), ParseError);
  CHECK_THROWS_AS(parse_eform("eform:\n"), ParseError);
  try {
    parse_eform("eform:\nmap: a -> a+\n");
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("EForm validation") {
  Alphabet ab{"a", "b"};
  Term a = Term::leaf("a"), b = Term::leaf("b");
  CHECK_NOTHROW(EForm(ab, {a + a, a + b}));
  CHECK_THROWS_AS(EForm(ab, {a}), std::invalid_argument);          // not total
  CHECK_THROWS_AS(EForm(ab, {a + b, a + b}), std::invalid_argument);  // not injective
  CHECK_THROWS_AS(EForm(ab, {b, b + b}), std::invalid_argument);  // a missing from its image
}

TEST_CASE("transformation I on the worked example") {
  Presentation p = pres("gens: a b c d\nrel: (c+d)+(a+c) = (a+a)+a\n");
  auto r = apply_transformation(p, Transformation::Split);
  REQUIRE(r);
  CHECK(rel_strings(r->after) == std::set<std::string>{"c = a", "d = a", "a+c = a"});
  CHECK_FALSE(apply_transformation(r->after, Transformation::Split));
}

TEST_CASE("transformation V adds a diagonal") {
  Presentation p = pres("gens: a b c d\nrel: c = a\nrel: d = a\nrel: a = a+c\n");
  auto r = apply_transformation(p, Transformation::AddDiagonal);
  REQUIRE(r);
  CHECK(rel_strings(r->after) ==
        std::set<std::string>{"c = a", "d = a", "a = a+c", "b = b"});
  CHECK(r->description == "add b = b");
}

TEST_CASE("transformation VII chained") {
  Presentation p = pres("gens: a b d\nrel: d = a\nrel: a+a = a\nrel: b = b\n");
  // a+a = a must be flipped first; VII then removes d.
  auto flipped = apply_transformation(p, Transformation::Flip);
  REQUIRE(flipped);
  auto r = apply_transformation(flipped->after, Transformation::Eliminate);
  REQUIRE(r);
  CHECK(r->after.alphabet == Alphabet{"a", "b"});
  CHECK(rel_strings(r->after) == std::set<std::string>{"a = a+a", "b = b"});
  CHECK(r->description == "drop d, rewrite d->a");
}

TEST_CASE("transformations II, III, IV, VI in isolation") {
  Presentation p2 = pres("gens: a\nrel: a = a+a\nrel: a = (a+a)+(a+a)\n");
  auto r2 = apply_transformation(p2, Transformation::LeftMerge);
  REQUIRE(r2);
  CHECK(rel_strings(r2->after) == std::set<std::string>{"a = a+a"});

  Presentation p3 = pres("gens: a\nrel: a+a = a\nrel: (a+a)+a = a\n");
  auto r3 = apply_transformation(p3, Transformation::RightMerge);
  REQUIRE(r3);
  CHECK(rel_strings(r3->after) == std::set<std::string>{"a+a = a", "a = a"});
  CHECK_FALSE(apply_transformation(p3, Transformation::LeftMerge));

  Presentation p4 = pres("gens: a\nrel: a+a = a\n");
  auto r4 = apply_transformation(p4, Transformation::Flip);
  REQUIRE(r4);
  CHECK(rel_strings(r4->after) == std::set<std::string>{"a = a+a"});
  CHECK(r4->description == "flip a+a = a -> a = a+a");

  Presentation p6 = pres("gens: a b\nrel: a = a+b\nrel: b = a+b\n");
  auto r6 = apply_transformation(p6, Transformation::DropDuplicate);
  REQUIRE(r6);
  CHECK(r6->after.alphabet == Alphabet{"a"});
  CHECK(rel_strings(r6->after) == std::set<std::string>{"a = a+a"});
  CHECK(r6->description == "drop b, rewrite b->a");
}

TEST_CASE("reduce the worked example") {
  Presentation p = pres("gens: a b c d\nrel: (c+d)+(a+c) = (a+a)+a\n");
  Reduction r = reduce(p);
  CHECK(r.eform.str() == "a -> (a+a); b -> b");
  std::vector<std::string> tags;
  for (auto const& s : r.trace.steps) tags.push_back(tag(s.which));
  CHECK(tags == std::vector<std::string>{"I", "IV", "V", "VII", "VII"});
  CHECK(r.sigma.at(Generator("c")) == Term::leaf("a"));
  CHECK(r.sigma.at(Generator("d")) == Term::leaf("a"));
  CHECK(r.sigma.at(Generator("b")) == Term::leaf("b"));
}

TEST_CASE("reduce small examples") {
  CHECK(reduce(pres("gens: a\n")).eform.str() == "a -> a");
  CHECK(reduce(pres("gens: a\nrel: a = a+a\nrel: a = (a+a)+(a+a)\n")).eform.str() ==
        "a -> (a+a)");
  CHECK(reduce(pres("gens: a\nrel: a = a\nrel: a = a+a\n")).eform.str() == "a -> (a+a)");
  auto merged = reduce(pres("gens: a b\nrel: a = b\nrel: a = a+b\nrel: b = b+a\n"));
  CHECK(merged.eform.size() == 1);
}

TEST_CASE("reduction keeps the quotient of a doubled relation") {
  Presentation p = pres("gens: a\nrel: a = a+a\nrel: a = (a+a)+(a+a)\n");
  Reduction r = reduce(p);
  auto input = saturate_bounded(p.relations, p.alphabet, 6);
  auto output = saturate_bounded(r.eform.relations(), r.eform.alphabet(), 6);
  CHECK(input.classes() == output.classes());
}

TEST_CASE("measures") {
  Alphabet a1{"a"};
  Term a = Term::leaf("a");
  CHECK(alpha_measure({{a, parse_term("(a+a)+a", a1)}}) == 3);
  CHECK(alpha_measure({{a, a}}) == 1);
  Alphabet abcd{"a", "b", "c", "d"};
  Term c = Term::leaf("c"), d = Term::leaf("d");
  CHECK(alpha_measure({{c, a}, {d, a}, {a + c, a}}) == 2);
  CHECK(alpha_measure({}) == 0);
  CHECK(beta_measure(pres("gens: a\nrel: a = a\n")) == 3);
  CHECK(beta_measure(pres("gens: a b\nrel: a = a+a\n")) == 5);
  CHECK(beta_measure(pres("gens: a\n")) == 2);
}

TEST_CASE("free product examples") {
  Alphabet a1{"a"}, b1{"b"};
  EForm ea = identity_eform(a1);
  EForm eb(b1, {parse_term("b+b", b1)});
  auto fp = free_product(ea, eb);
  CHECK(fp.eform.str() == "a -> a; b -> (b+b)");

  auto free = free_product(identity_eform(Alphabet{"a", "b"}), identity_eform(Alphabet{"c"}));
  CHECK(free.eform == identity_eform(Alphabet{"a", "b", "c"}));

  EForm ia(a1, {parse_term("a+a", a1)});
  auto self = free_product(ia, ia);
  CHECK(self.eform.str() == "a1 -> (a1+a1); a2 -> (a2+a2)");
  CHECK(self.left_renaming.at(Generator("a")) == Term::leaf("a1"));
  CHECK(self.right_renaming.at(Generator("a")) == Term::leaf("a2"));

  auto cyc = free_product(cyclic(n_plus(3)), cyclic(n_minus(3)));
  CHECK(cyc.eform.str() == "u1 -> (u1+(u1+u1)); u2 -> ((u2+u2)+u2)");
}

TEST_CASE("cyclic examples") {
  CHECK(cyclic(Term::leaf("1")).str() == "1 -> 1");
  CHECK(cyclic(n_minus(2)).str() == "1 -> (1+1)");
  CHECK(cyclic(n_plus(3)).str() == "1 -> (1+(1+1))");
  CHECK(is_free(cyclic(Term::leaf("1"))));
  CHECK_THROWS_AS(cyclic(Term::leaf("a")), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Properties of reduce on random presentations
// ---------------------------------------------------------------------------

TEST_CASE("reduction traces chain, decrease their measures and terminate") {
  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    Presentation p = testgen::random_presentation(rng, 6, 6, 8);
    CAPTURE(format_presentation(p));
    Reduction r = reduce(p);
    auto const& steps = r.trace.steps;
    CHECK(steps.size() <= 10 * (alpha_measure(p.relations) + beta_measure(p)));
    for (std::size_t k = 0; k < steps.size(); ++k) {
      auto const& s = steps[k];
      CAPTURE(tag(s.which));
      CAPTURE(s.description);
      if (k + 1 < steps.size()) CHECK(s.after == steps[k + 1].before);
      switch (s.which) {
        case Transformation::Split:
          CHECK(alpha_measure(s.after.relations) <= alpha_measure(s.before.relations));
          CHECK(composite_pairs(s.after) < composite_pairs(s.before));
          CHECK(multiset_less(weights(s.after), weights(s.before)));
          break;
        case Transformation::LeftMerge:
        case Transformation::RightMerge:
          CHECK(alpha_measure(s.after.relations) <= alpha_measure(s.before.relations));
          CHECK(multiset_less(weights(s.after), weights(s.before)));
          break;
        case Transformation::AddDiagonal:
          // beta as a whole grows by one here; its diagonal part shrinks.
          CHECK(beta4(s.after) + 1 == beta4(s.before));
          break;
        default:
          CHECK(beta_measure(s.after) < beta_measure(s.before));
      }
    }
    if (!steps.empty()) CHECK(steps.back().after == r.eform.as_presentation());
  }
}

TEST_CASE("reduce output is an E-form and sigma maps into it") {
  Rng rng(22);
  for (int i = 0; i < 300; ++i) {
    Presentation p = testgen::random_presentation(rng, 5, 5, 6);
    Reduction r = reduce(p);
    CHECK_FALSE(EForm::check(r.eform.alphabet(), r.eform.images()));
    for (Generator g : p.alphabet) {
      Term s = r.sigma.at(g);
      for (Generator h : leaves(s)) CHECK(r.eform.alphabet().contains(h));
    }
  }
}

TEST_CASE("reduce is stable on E-forms") {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    EForm e = testgen::random_eform(rng, 4, 5);
    Reduction r = reduce(e.as_presentation());
    CHECK(r.eform == e);
    for (auto const& s : r.trace.steps) CHECK(s.which == Transformation::AddDiagonal);
  }
}

TEST_CASE("reduction preserves the quotient") {
  Rng rng(24);
  for (int i = 0; i < 60; ++i) {
    Presentation p = testgen::random_presentation(rng, 2, 3, 4);
    CAPTURE(format_presentation(p));
    Reduction r = reduce(p);
    RewriteSystem rs = build_rewrite_system(r.eform);
    REQUIRE(rs.complete());
    PairSet in = saturate_bounded(p.relations, p.alphabet, 6);
    auto terms = enumerate_terms(p.alphabet, 6);
    std::unordered_map<Term, std::size_t> by_nf;
    std::unordered_map<std::size_t, Term> nf_of_class;
    for (Term t : terms) {
      Term nf = rs.normalize(substitute(t, r.sigma));
      std::size_t cls = *in.class_of(t);
      auto [it, fresh] = nf_of_class.try_emplace(cls, nf);
      CHECK(it->second == nf);  // same class, same normal form
      auto [jt, fresh2] = by_nf.try_emplace(nf, cls);
      CHECK(jt->second == cls);  // same normal form, same class
    }
  }
}

TEST_CASE("renaming generators gives conjugate reductions") {
  Rng rng(25);
  for (int i = 0; i < 200; ++i) {
    Presentation p = testgen::random_presentation(rng, 4, 4, 5);
    std::vector<Generator> gens(p.alphabet.begin(), p.alphabet.end());
    std::vector<Generator> perm = gens;
    std::shuffle(perm.begin(), perm.end(), rng);
    Substitution rename;
    for (std::size_t k = 0; k < gens.size(); ++k) rename[gens[k]] = Term::leaf(perm[k]);
    Presentation q;
    q.alphabet = Alphabet(perm);
    for (auto const& rel : p.relations)
      q.relations.push_back({substitute(rel.first, rename), substitute(rel.second, rename)});
    q.normalize();
    EForm e1 = reduce(p).eform, e2 = reduce(q).eform;
    CAPTURE(format_presentation(p));
    CAPTURE(e1.str());
    CAPTURE(e2.str());
    CHECK(isomorphic(e1, e2));
  }
}
