#include "magmakit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>

#include "magmakit/congruence.hpp"
#include "magmakit/equation.hpp"
#include "magmakit/errors.hpp"
#include "magmakit/io.hpp"
#include "magmakit/models.hpp"
#include "magmakit/presentation.hpp"
#include "magmakit/structure.hpp"

namespace magmakit {

namespace {

struct Settings {
  std::uint64_t bound = 6;
  std::size_t max_pairs = 1'000'000;
  std::size_t max_rules = 10'000;
  std::size_t max_gens = 12;
  unsigned threads = 1;
  std::size_t samples = 10'000;
  std::uint64_t seed = 1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename F>
auto from_file(std::string const& path, F load) {
  try {
    return load(path);
  } catch (ParseError const& e) {
    throw UsageError(path + ": " + e.what());
  } catch (std::invalid_argument const& e) {
    throw UsageError(path + ": " + e.what());
  } catch (std::runtime_error const& e) {
    throw UsageError(e.what());
  }
}

EForm eform_file(std::string const& path) {
  return from_file(path, [](std::string const& p) { return load_eform(p); });
}

Presentation pres_file(std::string const& path) {
  return from_file(path, [](std::string const& p) { return load_presentation(p); });
}

Term term_arg(std::string const& text, Alphabet const& alphabet) {
  try {
    return parse_term(text, alphabet);
  } catch (ParseError const& e) {
    throw UsageError("term '" + text + "': " + e.what());
  }
}

std::string join(std::vector<Generator> const& gens) {
  if (gens.empty()) return "-";
  std::string out;
  for (Generator g : gens) {
    if (!out.empty()) out += ' ';
    out += g.name();
  }
  return out;
}

int cmd_reduce(std::string const& path, std::ostream& out) {
  auto r = reduce(pres_file(path));
  for (auto const& step : r.trace.steps)
    out << '[' << tag(step.which) << "] " << step.description << '\n';
  out << "eform: " << r.eform.str() << '\n';
  return kSuccess;
}

int cmd_eform(std::string const& path, std::ostream& out) {
  out << format_eform(reduce(pres_file(path)).eform);
  return kSuccess;
}

int cmd_iso(std::string const& a, std::string const& b, Settings const& s,
            std::ostream& out) {
  EForm e1 = eform_file(a), e2 = eform_file(b);
  std::optional<ConjugacyWitness> w;
  try {
    w = conjugate(e1, e2, {.max_gens = s.max_gens, .threads = s.threads});
  } catch (ResourceLimitExceeded const& e) {
    out << e.what() << '\n';
    return kResource;
  }
  if (!w) {
    out << "not isomorphic\n";
    return kNegative;
  }
  out << "isomorphic\n";
  for (auto const& [x, y] : w->mapping) out << x.name() << " -> " << y.name() << '\n';
  return kSuccess;
}

int cmd_normalize(std::string const& path, std::string const& term,
                  Settings const& s, std::ostream& out, std::ostream& err) {
  EForm e = eform_file(path);
  Term t = term_arg(term, e.alphabet());
  auto rs = build_rewrite_system(e, s.max_rules);
  if (!rs.complete()) {
    err << "rewrite system incomplete after " << s.max_rules
        << " rules; use `equal` for the closure-based decision\n";
    return kResource;
  }
  out << rs.normalize(t).str() << '\n';
  return kSuccess;
}

int cmd_equal(std::string const& path, std::string const& a, std::string const& b,
              Settings const& s, std::ostream& out) {
  EForm e = eform_file(path);
  auto answer = word_equal(e, term_arg(a, e.alphabet()), term_arg(b, e.alphabet()),
                           {.max_rules = s.max_rules, .max_terms = s.max_pairs});
  out << answer.str() << '\n';
  switch (answer.verdict) {
    case WordAnswer::Verdict::Equal: return kSuccess;
    case WordAnswer::Verdict::Unequal: return kNegative;
    case WordAnswer::Verdict::Undecided: return kResource;
  }
  return kSuccess;
}

int cmd_classes(std::string const& path, Settings const& s, std::ostream& out) {
  EForm e = eform_file(path);
  for (auto const& cls : classes_bounded(e, s.bound, s.max_pairs)) {
    for (std::size_t i = 0; i < cls.size(); ++i)
      out << (i ? " ~ " : "") << cls[i].str();
    out << '\n';
  }
  return kSuccess;
}

int cmd_solve(std::string const& model, std::string const& poly,
              std::string const& element, Settings const& s, std::ostream& out) {
  Alphabet vars;
  Term P;
  try {
    P = parse_term_open(poly, vars);
  } catch (ParseError const& e) {
    throw UsageError("polynomial '" + poly + "': " + e.what());
  }
  auto solve_in = [&](auto const& m) -> int {
    typename std::decay_t<decltype(m)>::Element k;
    try {
      k = m.parse(element);
    } catch (std::exception const& e) {
      throw UsageError("element '" + element + "': " + e.what());
    }
    auto sol = solve_equation(m, P, k);
    if (!sol) {
      out << "no solution\n";
      return kNegative;
    }
    for (Generator v : vars) out << v.name() << " = " << m.show(sol->at(v)) << '\n';
    return kSuccess;
  };
  if (model == "diamond") return solve_in(DiamondModel{});
  if (model == "uparrow") return solve_in(UpArrowModel{});
  if (model == "seq") return solve_in(SeqModel{});
  if (model == "lang") return solve_in(LangModel{});
  if (model == "trivial") return solve_in(TrivialModel{});
  EForm e = eform_file(model);
  for (Generator v : vars)
    if (e.alphabet().contains(v))
      throw UsageError("variable '" + v.name() +
                       "' clashes with a generator of the E-form");
  EMagmaModel m(e, s.max_rules);
  if (!m.has_decomposition())
    throw ResourceLimitExceeded("rewrite system incomplete after " +
                                std::to_string(s.max_rules) + " rules");
  return solve_in(m);
}

int cmd_split(std::string const& path, std::ostream& out) {
  EForm e = eform_file(path);
  auto r = split(e);
  out << "initial: " << join(r.initial_gens) << '\n';
  out << "full: " << join(r.full_gens) << '\n';
  out << "initial eform: " << (r.initial_gens.empty() ? "-" : r.initial_eform.str())
      << '\n';
  for (auto const& rel : r.full_part_presentation.relations)
    out << "full relation: " << to_string(rel) << '\n';
  out << (is_free(e) ? "free\n" : is_full(e) ? "full\n" : "mixed\n");
  return kSuccess;
}

int cmd_product(std::string const& a, std::string const& b, std::ostream& out) {
  EForm e1 = eform_file(a), e2 = eform_file(b);
  auto fp = free_product(e1, e2);
  for (Generator g : e1.alphabet())
    if (fp.left_renaming.at(g) != Term::leaf(g))
      out << "# left " << g.name() << " -> " << fp.left_renaming.at(g).str() << '\n';
  for (Generator g : e2.alphabet())
    if (fp.right_renaming.at(g) != Term::leaf(g))
      out << "# right " << g.name() << " -> " << fp.right_renaming.at(g).str() << '\n';
  out << format_eform(fp.eform);
  return kSuccess;
}

int cmd_models_check(std::string const& model, Settings const& s,
                     std::ostream& out) {
  auto check = [&](auto const& m) -> int {
    auto report = check_equidec_sampled(m, s.samples, s.seed);
    out << "model: " << report.model << '\n'
        << "samples: " << report.samples << '\n'
        << "violations: " << report.violations << '\n';
    for (auto const& msg : report.messages) out << "  " << msg << '\n';
    return report.violations == 0 ? kSuccess : kNegative;
  };
  if (model == "diamond") return check(DiamondModel{});
  if (model == "uparrow") return check(UpArrowModel{});
  if (model == "seq") return check(SeqModel{});
  if (model == "lang") return check(LangModel{});
  if (model == "trivial") return check(TrivialModel{});
  if (model == "constant") return check(ConstantModel{});
  throw UsageError("unknown model '" + model +
                   "' (diamond, uparrow, seq, lang, trivial, constant)");
}

}  // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free magmas, presentations and E-magmas", "magmakit"};
  app.fallthrough();
  app.require_subcommand(1);

  Settings s;
  app.add_option("--bound", s.bound, "Term length bound for class listings")
      ->capture_default_str();
  app.add_option("--max-pairs", s.max_pairs, "Cap on the saturation universe")
      ->capture_default_str();
  app.add_option("--max-rules", s.max_rules, "Cap on completion rules")
      ->capture_default_str();
  app.add_option("--max-gens", s.max_gens, "Cap on conjugacy search alphabets")
      ->capture_default_str();
  app.add_option("--threads", s.threads, "Worker threads for searches")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--samples", s.samples, "Samples for models-check")
      ->capture_default_str();
  app.add_option("--seed", s.seed, "Random seed for models-check")
      ->capture_default_str();

  std::string f1, f2, t1, t2;
  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a presentation, printing the trace");
  reduce_cmd->add_option("file", f1, "Presentation file")->required();
  auto* eform_cmd = app.add_subcommand("eform", "Print the E-form of a presentation");
  eform_cmd->add_option("file", f1, "Presentation file")->required();
  auto* iso_cmd = app.add_subcommand("iso", "Decide isomorphism of two E-magmas");
  iso_cmd->add_option("a", f1, "E-form file")->required();
  iso_cmd->add_option("b", f2, "E-form file")->required();
  auto* norm_cmd = app.add_subcommand("normalize", "Normal form of a term");
  norm_cmd->add_option("file", f1, "E-form file")->required();
  norm_cmd->add_option("term", t1, "Term")->required();
  auto* equal_cmd = app.add_subcommand("equal", "Decide equality of two terms");
  equal_cmd->add_option("file", f1, "E-form file")->required();
  equal_cmd->add_option("s", t1, "Term")->required();
  equal_cmd->add_option("t", t2, "Term")->required();
  auto* classes_cmd = app.add_subcommand("classes", "Classes of terms up to --bound");
  classes_cmd->add_option("file", f1, "E-form file")->required();
  auto* solve_cmd = app.add_subcommand("solve", "Solve P = k in a model or E-magma");
  solve_cmd->add_option("model", f1, "diamond, uparrow, seq, lang, trivial or an E-form file")
      ->required();
  solve_cmd->add_option("poly", t1, "Polynomial term over variables")->required();
  solve_cmd->add_option("element", t2, "Target element")->required();
  auto* split_cmd = app.add_subcommand("split", "Initial and full parts");
  split_cmd->add_option("file", f1, "E-form file")->required();
  auto* product_cmd = app.add_subcommand("product", "Free product of two E-forms");
  product_cmd->add_option("a", f1, "E-form file")->required();
  product_cmd->add_option("b", f2, "E-form file")->required();
  auto* models_cmd = app.add_subcommand("models-check", "Sampled equidecomposability check");
  models_cmd->add_option("model", f1, "diamond, uparrow, seq, lang, trivial or constant")
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (CLI::CallForHelp const&) {
    out << app.help();
    return kSuccess;
  } catch (CLI::CallForAllHelp const&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (CLI::ParseError const& e) {
    err << "error: " << e.what() << "\nrun with --help for usage\n";
    return kUsage;
  }

  try {
    if (*reduce_cmd) return cmd_reduce(f1, out);
    if (*eform_cmd) return cmd_eform(f1, out);
    if (*iso_cmd) return cmd_iso(f1, f2, s, out);
    if (*norm_cmd) return cmd_normalize(f1, t1, s, out, err);
    if (*equal_cmd) return cmd_equal(f1, t1, t2, s, out);
    if (*classes_cmd) return cmd_classes(f1, s, out);
    if (*solve_cmd) return cmd_solve(f1, t1, t2, s, out);
    if (*split_cmd) return cmd_split(f1, out);
    if (*product_cmd) return cmd_product(f1, f2, out);
    if (*models_cmd) return cmd_models_check(f1, s, out);
  } catch (UsageError const& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (ResourceLimitExceeded const& e) {
    err << "error: " << e.what() << '\n';
    return kResource;
  } catch (OverflowError const& e) {
    err << "error: " << e.what() << '\n';
    return kResource;
  } catch (std::invalid_argument const& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (std::exception const& e) {
    err << "internal error: " << e.what() << '\n';
    return 4;
  }
  return kUsage;
}

}  // namespace magmakit
