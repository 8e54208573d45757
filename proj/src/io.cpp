#include "magmakit/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "magmakit/errors.hpp"

namespace magmakit {

namespace {

struct Line {
  std::size_t number;
  std::string_view text;  // comment stripped
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty() || number == 0) {
    ++number;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") != std::string_view::npos)
      out.push_back({number, line});
    if (nl == std::string_view::npos) break;
  }
  return out;
}

bool is_blank(char c) { return c == ' ' || c == '\t'; }

// Returns the column just past `keyword:` or throws.
std::size_t expect_keyword(Line const& line, std::string_view keyword) {
  std::size_t i = 0;
  while (i < line.text.size() && is_blank(line.text[i])) ++i;
  if (line.text.substr(i, keyword.size()) != keyword)
    throw ParseError("expected '" + std::string(keyword) + "'", line.number, i + 1);
  return i + keyword.size();
}

// Parses a term occupying text[from, to) of a line; errors get line/column.
Term parse_at(Line const& line, std::size_t from, std::size_t to,
              Alphabet const& alphabet) {
  try {
    return parse_term(line.text.substr(from, to - from), alphabet);
  } catch (ParseError const& e) {
    throw ParseError(e.message(), line.number, from + e.column());
  }
}

Alphabet parse_gens(Line const& line, std::size_t from) {
  Alphabet alphabet;
  std::size_t i = from;
  while (i < line.text.size()) {
    while (i < line.text.size() && is_blank(line.text[i])) ++i;
    if (i == line.text.size()) break;
    std::size_t start = i;
    while (i < line.text.size() && !is_blank(line.text[i])) ++i;
    std::string_view name = line.text.substr(start, i - start);
    if (!Generator::valid_name(name))
      throw ParseError("invalid generator name '" + std::string(name) + "'",
                       line.number, start + 1);
    Generator g(name);
    if (alphabet.contains(g))
      throw ParseError("duplicate generator '" + std::string(name) + "'",
                       line.number, start + 1);
    alphabet.add(g);
  }
  if (alphabet.empty())
    throw ParseError("no generators declared", line.number, from + 1);
  return alphabet;
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("missing 'gens:' line", 1, 1);
  Presentation p;
  p.alphabet = parse_gens(lines[0], expect_keyword(lines[0], "gens:"));
  for (std::size_t k = 1; k < lines.size(); ++k) {
    Line const& line = lines[k];
    std::size_t from = expect_keyword(line, "rel:");
    auto eq = line.text.find('=', from);
    if (eq == std::string_view::npos)
      throw ParseError("expected '=' in relation", line.number,
                       line.text.size() + 1);
    Term lhs = parse_at(line, from, eq, p.alphabet);
    Term rhs = parse_at(line, eq + 1, line.text.size(), p.alphabet);
    p.relations.push_back({lhs, rhs});
  }
  p.normalize();
  return p;
}

EForm parse_eform(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("missing 'eform:' header", 1, 1);
  std::size_t after = expect_keyword(lines[0], "eform:");
  if (lines[0].text.find_first_not_of(" \t", after) != std::string_view::npos)
    throw ParseError("unexpected text after 'eform:'", lines[0].number,
                     lines[0].text.find_first_not_of(" \t", after) + 1);

  struct Entry {
    Line line;
    std::size_t term_from;
  };
  Alphabet alphabet;
  std::vector<Entry> entries;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    Line const& line = lines[k];
    std::size_t i = expect_keyword(line, "map:");
    auto arrow = line.text.find("->", i);
    if (arrow == std::string_view::npos)
      throw ParseError("expected '->' in map line", line.number,
                       line.text.size() + 1);
    while (i < arrow && is_blank(line.text[i])) ++i;
    std::size_t end = arrow;
    while (end > i && is_blank(line.text[end - 1])) --end;
    std::string_view name = line.text.substr(i, end - i);
    if (!Generator::valid_name(name))
      throw ParseError("invalid generator name '" + std::string(name) + "'",
                       line.number, i + 1);
    Generator g(name);
    if (alphabet.contains(g))
      throw ParseError("generator '" + std::string(name) + "' mapped twice",
                       line.number, i + 1);
    alphabet.add(g);
    entries.push_back({line, arrow + 2});
  }
  if (alphabet.empty())
    throw ParseError("E-form has no map lines", lines[0].number, 1);

  std::vector<Term> images;
  for (auto const& e : entries)
    images.push_back(parse_at(e.line, e.term_from, e.line.text.size(), alphabet));
  if (auto err = EForm::check(alphabet, images))
    throw ParseError("not an E-form: " + *err, entries.front().line.number, 1);
  return EForm(std::move(alphabet), std::move(images));
}

std::string format_presentation(Presentation const& p) {
  std::ostringstream out;
  out << "gens:";
  for (Generator g : p.alphabet) out << ' ' << g.name();
  out << '\n';
  for (auto const& r : p.relations)
    out << "rel: " << r.first.str() << " = " << r.second.str() << '\n';
  return out.str();
}

std::string format_eform(EForm const& e) {
  std::ostringstream out;
  out << "eform:\n";
  for (std::size_t i = 0; i < e.size(); ++i)
    out << "map: " << e.alphabet()[i].name() << " -> " << e.images()[i].str()
        << '\n';
  return out.str();
}

std::string read_file(std::filesystem::path const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Presentation load_presentation(std::filesystem::path const& path) {
  return parse_presentation(read_file(path));
}

EForm load_eform(std::filesystem::path const& path) {
  return parse_eform(read_file(path));
}

}  // namespace magmakit
