#include <sstream>

#include "doctest.h"
#include "magmakit/cli.hpp"

using namespace magmakit;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::string data(std::string const& name) { return std::string(TEST_DATA_DIR) + "/" + name; }

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("reduce prints the trace and the E-form") {
  auto r = cli({"reduce", data("worked_example.pres")});
  CHECK(r.code == kSuccess);
  CHECK(r.out ==
        "[I] split (c+d)+(a+c) = (a+a)+a -> c = a; d = a; a+c = a\n"
        "[IV] flip a+c = a -> a = a+c\n"
        "[V] add b = b\n"
        "[VII] drop c, rewrite c->a\n"
        "[VII] drop d, rewrite d->a\n"
        "eform: a -> (a+a); b -> b\n");
}

TEST_CASE("eform prints a readable E-form file") {
  auto r = cli({"eform", data("worked_example.pres")});
  CHECK(r.code == kSuccess);
  CHECK(r.out == "eform:\nmap: a -> a+a\nmap: b -> b\n");
}

TEST_CASE("iso") {
  auto no = cli({"iso", data("c3minus.eform"), data("c3plus.eform")});
  CHECK(no.code == kNegative);
  CHECK(no.out == "not isomorphic\n");
  auto yes = cli({"iso", data("c3plus.eform"), data("c3plus.eform")});
  CHECK(yes.code == kSuccess);
  CHECK(yes.out == "isomorphic\n1 -> 1\n");
  auto capped = cli({"--max-gens", "1", "iso", data("diamond.eform"), data("diamond.eform")});
  CHECK(capped.code == kResource);
  CHECK(capped.out.find("search too large") == 0);
  auto threaded = cli({"--threads", "4", "iso", data("diamond.eform"), data("diamond.eform")});
  CHECK(threaded.code == kSuccess);
  CHECK(threaded.out == cli({"iso", data("diamond.eform"), data("diamond.eform")}).out);
}

TEST_CASE("normalize and equal") {
  auto n = cli({"normalize", data("lang.eform"), "(a+(a+b))"});
  CHECK(n.code == kSuccess);
  CHECK(n.out == "b\n");
  auto eq = cli({"equal", data("lang.eform"), "a+(a+b)", "b"});
  CHECK(eq.code == kSuccess);
  CHECK(eq.out == "equal\n");
  auto ne = cli({"equal", data("c3plus.eform"), "1", "(1+1)+1"});
  CHECK(ne.code == kNegative);
  CHECK(ne.out == "unequal\n");
  auto bad = cli({"normalize", data("lang.eform"), "a+c"});
  CHECK(bad.code == kUsage);
  CHECK(bad.err.find("column 3") != std::string::npos);
  auto capped = cli({"--max-rules", "0", "normalize", data("lang.eform"), "a+b"});
  CHECK(capped.code == kResource);
  auto undecided =
      cli({"--max-rules", "0", "--max-pairs", "2", "equal", data("lang.eform"), "a+b", "b"});
  CHECK(undecided.code == kResource);
  CHECK(undecided.out.find("undecided(bound=") == 0);
}

TEST_CASE("classes") {
  auto r = cli({"classes", data("lang.eform"), "--bound", "2"});
  CHECK(r.code == kSuccess);
  CHECK(r.out == "a\nb ~ a+b\na+a\nb+a\nb+b\n");
  auto global = cli({"--bound", "2", "classes", data("lang.eform")});
  CHECK(global.out == r.out);
  auto capped = cli({"--max-pairs", "10", "classes", data("lang.eform"), "--bound", "4"});
  CHECK(capped.code == kResource);
}

TEST_CASE("solve") {
  auto d = cli({"solve", "diamond", "x+y", "2"});
  CHECK(d.code == kSuccess);
  CHECK(d.out == "x = 1\ny = 2\n");
  auto none = cli({"solve", "uparrow", "x+y", "5"});
  CHECK(none.code == kNegative);
  CHECK(none.out == "no solution\n");
  auto seq = cli({"solve", "seq", "x+y", "0011"});
  CHECK(seq.out == "x = 01\ny = 01\n");
  auto lang = cli({"solve", "lang", "x+y", "{a, b}"});
  CHECK(lang.out == "x = {eps}\ny = {eps}\n");
  auto triv = cli({"solve", "trivial", "x+(y+x)", "0"});
  CHECK(triv.code == kSuccess);
  auto emagma = cli({"solve", data("lang.eform"), "x+y", "b"});
  CHECK(emagma.code == kSuccess);
  CHECK(emagma.out == "x = a\ny = b\n");
  auto clash = cli({"solve", data("lang.eform"), "a+y", "b"});
  CHECK(clash.code == kUsage);
  auto unknown = cli({"solve", "quaternions", "x", "1"});
  CHECK(unknown.code == kUsage);
  auto bad_element = cli({"solve", "diamond", "x", "-3"});
  CHECK(bad_element.code == kUsage);
}

TEST_CASE("split") {
  auto mixed = cli({"split", data("worked.eform")});
  CHECK(mixed.code == kSuccess);
  CHECK(mixed.out ==
        "initial: b\nfull: a\ninitial eform: b -> b\nfull relation: a = a+a\nmixed\n");
  auto full = cli({"split", data("diamond.eform")});
  CHECK(full.out.substr(full.out.rfind('\n', full.out.size() - 2) + 1) == "full\n");
}

TEST_CASE("product") {
  auto r = cli({"product", data("c3minus.eform"), data("c3plus.eform")});
  CHECK(r.code == kSuccess);
  CHECK(r.out ==
        "# left 1 -> u1\n# right 1 -> u2\neform:\nmap: u1 -> (u1+u1)+u1\nmap: u2 -> u2+(u2+u2)\n");
}

TEST_CASE("models-check") {
  for (std::string m : {"diamond", "uparrow", "seq", "lang", "trivial"}) {
    auto r = cli({"models-check", m, "--samples", "500"});
    CHECK(r.code == kSuccess);
    CHECK(r.out == "model: " + m + "\nsamples: 500\nviolations: 0\n");
  }
  auto broken = cli({"models-check", "constant", "--samples", "50"});
  CHECK(broken.code == kNegative);
  CHECK(broken.out.find("violations: 50\n") != std::string::npos);
  auto unknown = cli({"models-check", "nope"});
  CHECK(unknown.code == kUsage);
}

TEST_CASE("usage errors") {
  CHECK(cli({}).code == kUsage);
  CHECK(cli({"frobnicate"}).code == kUsage);
  CHECK(cli({"reduce"}).code == kUsage);
  CHECK(cli({"reduce", data("no_such_file.pres")}).code == kUsage);
  auto parse = cli({"reduce", data("bad.pres")});
  CHECK(parse.code == kUsage);
  CHECK(parse.err.find("line 2, column 15") != std::string::npos);
  CHECK(cli({"--bound", "x", "classes", data("lang.eform")}).code == kUsage);
  CHECK(cli({"--threads", "0", "iso", data("lang.eform"), data("lang.eform")}).code == kUsage);
  CHECK(cli({"iso", data("worked_example.pres"), data("lang.eform")}).code == kUsage);
}

TEST_CASE("help exits cleanly") {
  auto r = cli({"--help"});
  CHECK(r.code == kSuccess);
  CHECK(r.out.find("Subcommands:") != std::string::npos);
}
