#include "doctest.h"
#include "generators.hpp"
#include "magmakit/errors.hpp"
#include "magmakit/term.hpp"

using namespace magmakit;
using testgen::Rng;

namespace {

Term P(std::string_view s, Alphabet const& a) { return parse_term(s, a); }

std::set<std::string> strs(TermSet const& s) {
  std::set<std::string> out;
  for (Term t : s) out.insert(t.str());
  return out;
}

}  // namespace

TEST_CASE("parse_term examples") {
  Alphabet ab{"a", "b"};
  CHECK(P("a", ab) == Term::leaf("a"));
  CHECK(P("(a+(b+a))", ab) == Term::leaf("a") + (Term::leaf("b") + Term::leaf("a")));
  Alphabet abcd{"a", "b", "c", "d"};
  Term c = Term::leaf("c"), d = Term::leaf("d"), a = Term::leaf("a");
  CHECK(P("(c+d)+(a+c)", abcd) == (c + d) + (a + c));
  CHECK(P("  ( c + d )+ ( a+c ) ", abcd) == (c + d) + (a + c));
}

TEST_CASE("parse_term errors carry columns") {
  Alphabet ab{"a", "b"};
  CHECK_THROWS_AS(P("a+b+a", ab), ParseError);
  CHECK_THROWS_AS(P("(a+b", ab), ParseError);
  CHECK_THROWS_AS(P("", ab), ParseError);
  CHECK_THROWS_AS(P("a+c", ab), ParseError);
  try {
    P("a+c", ab);
  } catch (ParseError const& e) {
    CHECK(e.column() == 3);
  }
  try {
    P("(a+b))", ab);
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.column() == 6);
  }
}

TEST_CASE("parse_term_open collects generators") {
  Alphabet a;
  Term t = parse_term_open("x+(y+x)", a);
  CHECK(a.size() == 2);
  CHECK(a[0].name() == "x");
  CHECK(a[1].name() == "y");
  CHECK(t.str() == "x+(y+x)");
}

TEST_CASE("printing") {
  Alphabet ab{"a", "b"};
  Term t = P("(a+b)+a", ab);
  CHECK(t.str() == "(a+b)+a");
  CHECK(t.str_full() == "((a+b)+a)");
  CHECK(Term::leaf("a").str_full() == "a");
  CHECK(to_string(TermPair{Term::leaf("a"), t}) == "a = (a+b)+a");
}

TEST_CASE("length") {
  CHECK(length(Term::leaf("a")) == 1);
  CHECK(length(parse_term("(1+1)+(1+(1+1))", Alphabet::cyclic())) == 5);
  CHECK(length(n_minus(4)) == 4);
}

TEST_CASE("combs") {
  Alphabet one = Alphabet::cyclic();
  CHECK(n_minus(1) == Term::leaf("1"));
  CHECK(n_minus(3) == P("(1+1)+1", one));
  CHECK(n_plus(3) == P("1+(1+1)", one));
  CHECK_THROWS(n_minus(0));
  CHECK_THROWS(n_plus(0));
}

TEST_CASE("substitute") {
  Alphabet ab{"a", "b"};
  Generator a("a");
  CHECK(substitute(P("a+(a+b)", ab), a, P("b+b", ab)) == P("(b+b)+((b+b)+b)", ab));
  Substitution id{{a, Term::leaf(a)}, {Generator("b"), Term::leaf("b")}};
  Term t = P("(a+b)+(b+a)", ab);
  CHECK(substitute(t, id) == t);
  Alphabet ab2{"a2", "a", "b"};
  CHECK(substitute(P("a2+b", ab2), Generator("a2"), Term::leaf("a")) == P("a+b", ab));
}

TEST_CASE("magma_product examples") {
  Alphabet one = Alphabet::cyclic();
  Term x = P("(1+1)+1", one);
  Term u = Term::leaf("1");
  CHECK(magma_product(x, u) == x);
  CHECK(magma_product(u, x) == x);
  Term two = P("1+1", one);
  CHECK(magma_product(two, two) == P("(1+1)+(1+1)", one));
  CHECK_THROWS(magma_product(Term::leaf("a"), u));
}

TEST_CASE("generate_bounded examples") {
  Alphabet ab{"a", "b"};
  std::vector<Term> X{Term::leaf("a")};
  CHECK(strs(generate_bounded(X, 3)) ==
        std::set<std::string>{"a", "a+a", "a+(a+a)", "(a+a)+a"});
  std::vector<Term> Y{P("a+b", ab)};
  CHECK(strs(generate_bounded(Y, 2)) == std::set<std::string>{"a+b"});
  std::vector<Term> Z{Term::leaf("a"), Term::leaf("b")};
  CHECK(strs(generate_bounded(Z, 2)) ==
        std::set<std::string>{"a", "b", "a+a", "a+b", "b+a", "b+b"});
}

TEST_CASE("enumerate_terms counts") {
  // Catalan(n-1) * k^n terms of length n over k letters.
  Alphabet one = Alphabet::cyclic();
  CHECK(enumerate_terms(one, 5).size() == 1 + 1 + 2 + 5 + 14);
  CHECK(enumerate_terms(Alphabet{"a", "b"}, 3).size() == 2 + 4 + 16);
  Alphabet ab{"a", "b"};
  auto ts = enumerate_terms(ab, 4);
  TermOrder order(ab);
  CHECK(std::is_sorted(ts.begin(), ts.end(), order));
}

TEST_CASE("submagma_contains examples") {
  Alphabet ab{"a", "b"};
  std::vector<Term> X{Term::leaf("a")};
  CHECK(submagma_contains(X, P("(a+a)+a", ab)));
  std::vector<Term> Y{P("a+b", ab)};
  CHECK_FALSE(submagma_contains(Y, Term::leaf("a")));
  std::vector<Term> Z{Term::leaf("a"), P("b+b", ab)};
  CHECK(submagma_contains(Z, P("(b+b)+a", ab)));
  CHECK_FALSE(submagma_contains(Z, P("b+a", ab)));
}

TEST_CASE("minimal_generators examples") {
  Alphabet ab{"a", "b"};
  std::vector<Term> X{Term::leaf("a"), P("a+a", ab)};
  CHECK(strs(minimal_generators(X)) == std::set<std::string>{"a"});
  std::vector<Term> Y{P("a+b", ab), Term::leaf("a"), Term::leaf("b")};
  CHECK(strs(minimal_generators(Y)) == std::set<std::string>{"a", "b"});
  std::vector<Term> Z{P("a+b", ab)};
  CHECK(strs(minimal_generators(Z)) == std::set<std::string>{"a+b"});
}

TEST_CASE("pair_generators_check examples") {
  Alphabet abcd{"a", "b", "c", "d"};
  CHECK(pair_generators_check({Term::leaf("a"), P("(a+a)+a", abcd)}));
  CHECK_FALSE(pair_generators_check({P("a+b", abcd), P("c+d", abcd)}));
  CHECK(pair_generators_check({Term::leaf("a"), Term::leaf("b")}));
}

TEST_CASE("pair_split examples") {
  Alphabet abcd{"a", "b", "c", "d"};
  auto show = [](std::vector<TermPair> const& v) {
    std::set<std::string> out;
    for (auto const& p : v) out.insert(to_string(p));
    return out;
  };
  CHECK(show(pair_split({P("(c+d)+(a+c)", abcd), P("(a+a)+a", abcd)})) ==
        std::set<std::string>{"c = a", "d = a", "a+c = a"});
  Term y = P("b+(a+b)", abcd);
  CHECK(show(pair_split({Term::leaf("a"), y})) ==
        std::set<std::string>{"a = b+(a+b)"});
  CHECK(show(pair_split({P("a+b", abcd), P("a+b", abcd)})) ==
        std::set<std::string>{"a = a", "b = b"});
}

TEST_CASE("hash-consing gives structural identity") {
  Alphabet ab{"a", "b"};
  CHECK(P("(a+b)+a", ab) == P("((a+b)+a)", ab));
  CHECK(P("(a+b)+a", ab) != P("a+(b+a)", ab));
  CHECK(Generator("a") == Generator("a"));
  CHECK(Generator("a") != Generator("b"));
}

TEST_CASE("leaves and occurs") {
  Alphabet abc{"a", "b", "c"};
  Term t = P("(b+a)+(b+b)", abc);
  auto ls = leaves(t);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == Generator("b"));
  CHECK(ls[1] == Generator("a"));
  CHECK(occurs(Generator("a"), t));
  CHECK_FALSE(occurs(Generator("c"), t));
}

TEST_CASE("term order") {
  Alphabet ba{"b", "a"};
  TermOrder order(ba);
  Term a = Term::leaf("a"), b = Term::leaf("b");
  CHECK(order(b, a));  // declaration order, not name order
  CHECK(order(a, b + b));
  CHECK(order(b + a, a + b));
  CHECK(order(a + b, a + a));
  CHECK(order.compare(a + b, a + b) == 0);
}

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

TEST_CASE("round trip through printing") {
  Rng rng(11);
  Alphabet abc = testgen::letters(3);
  for (int i = 0; i < 500; ++i) {
    Term t = testgen::random_term(rng, abc, 20);
    CHECK(parse_term(t.str(), abc) == t);
    CHECK(parse_term(t.str_full(), abc) == t);
  }
}

TEST_CASE("length is additive") {
  Rng rng(12);
  Alphabet abc = testgen::letters(3);
  for (int i = 0; i < 300; ++i) {
    Term s = testgen::random_term(rng, abc, 64);
    Term t = testgen::random_term(rng, abc, 64);
    CHECK(length(s + t) == length(s) + length(t));
  }
}

TEST_CASE("minimal generators form a Galois pair with generation") {
  Rng rng(13);
  Alphabet ab = testgen::letters(2);
  for (int i = 0; i < 60; ++i) {
    std::vector<Term> X;
    std::size_t n = testgen::uniform(rng, 1, 8);
    for (std::size_t k = 0; k < n; ++k) X.push_back(testgen::random_term(rng, ab, 6));
    TermSet g = minimal_generators(X);
    for (Term t : g) CHECK(std::find(X.begin(), X.end(), t) != X.end());
    std::vector<Term> gv(g.begin(), g.end());
    std::uint64_t bound = testgen::uniform(rng, 1, 8);
    CHECK(generate_bounded(gv, bound) == generate_bounded(X, bound));
  }
}

TEST_CASE("membership agrees with bounded generation") {
  Rng rng(14);
  Alphabet ab = testgen::letters(2);
  for (int i = 0; i < 60; ++i) {
    std::vector<Term> X;
    std::size_t n = testgen::uniform(rng, 1, 4);
    for (std::size_t k = 0; k < n; ++k) X.push_back(testgen::random_term(rng, ab, 3));
    TermSet reach = generate_bounded(X, 8);
    for (int j = 0; j < 20; ++j) {
      Term t = testgen::random_term(rng, ab, 8);
      CHECK(submagma_contains(X, t) == reach.contains(t));
    }
  }
}

TEST_CASE("cyclic product laws") {
  Rng rng(15);
  Alphabet one = Alphabet::cyclic();
  Term u = Term::leaf("1");
  for (int i = 0; i < 200; ++i) {
    Term x = testgen::random_term(rng, one, 10);
    Term y = testgen::random_term(rng, one, 10);
    Term z = testgen::random_term(rng, one, 10);
    CHECK(magma_product(x, u) == x);
    CHECK(magma_product(u, x) == x);
    CHECK(magma_product(magma_product(x, y), z) == magma_product(x, magma_product(y, z)));
    CHECK(magma_product(x, y + z) == magma_product(x, y) + magma_product(x, z));
    CHECK(length(magma_product(x, y)) == length(x) * length(y));
  }
}

TEST_CASE("pair_split output is generator pairs that reassemble") {
  Rng rng(16);
  Alphabet abc = testgen::letters(3);
  for (int i = 0; i < 300; ++i) {
    TermPair p{testgen::random_term(rng, abc, 8), testgen::random_term(rng, abc, 8)};
    auto parts = pair_split(p);
    for (auto const& q : parts) CHECK(pair_generators_check(q));
    // Rebuild: replay the split recursion and look every leaf pair up.
    std::function<bool(Term, Term)> rebuilds = [&](Term x, Term y) {
      if (pair_generators_check({x, y}))
        return std::find(parts.begin(), parts.end(), TermPair{x, y}) != parts.end();
      return rebuilds(x.left(), y.left()) && rebuilds(x.right(), y.right());
    };
    CHECK(rebuilds(p.first, p.second));
  }
}
