#include "magmakit/models.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "magmakit/errors.hpp"

namespace magmakit {

namespace {

BigInt parse_positive(std::string_view text) {
  std::string s(text);
  s.erase(0, s.find_first_not_of(" \t"));
  s.erase(s.find_last_not_of(" \t") + 1);
  if (s.empty() || !std::all_of(s.begin(), s.end(),
                                [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw std::invalid_argument("expected a positive integer, got '" +
                                std::string(text) + "'");
  BigInt v(s, 10);
  if (v < 1)
    throw std::invalid_argument("expected a positive integer, got '" + s + "'");
  return v;
}

void require_positive(BigInt const& x, char const* what) {
  if (x < 1) throw std::invalid_argument(std::string(what) + " must be positive");
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

// ---------------------------------------------------------------------------
// Diamond
// ---------------------------------------------------------------------------

BigInt diamond(BigInt const& x, BigInt const& y) {
  require_positive(x, "diamond: x");
  require_positive(y, "diamond: y");
  BigInt num = x * x + y * y + 2 * x * y - x - 3 * y + 2;
  if (mpz_odd_p(num.get_mpz_t()))
    throw std::logic_error("diamond: odd numerator for " + x.get_str() + ", " +
                           y.get_str());
  return num / 2;
}

std::pair<BigInt, BigInt> diamond_decompose(BigInt const& z) {
  require_positive(z, "diamond_decompose: z");
  // Diagonal d holds the values d(d-1)/2 + 1 .. d(d+1)/2.
  BigInt root;
  BigInt disc = 8 * z + 1;
  mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
  BigInt d = (root - 1) / 2;
  if (d < 1) d = 1;
  auto tri = [](BigInt const& n) -> BigInt { return n * (n + 1) / 2; };
  while (tri(d) < z) ++d;
  while (d > 1 && tri(d - 1) >= z) --d;
  BigInt y = tri(d) - z + 1;
  BigInt x = d + 1 - y;
  return {x, y};
}

std::vector<BigInt> DiamondModel::enumerate(std::size_t count) const {
  std::vector<BigInt> out;
  for (std::size_t i = 1; i <= count; ++i) out.emplace_back(static_cast<unsigned long>(i));
  return out;
}

BigInt DiamondModel::parse(std::string_view text) const {
  return parse_positive(text);
}

// ---------------------------------------------------------------------------
// Up-arrow
// ---------------------------------------------------------------------------

BigInt uparrow(BigInt const& x, BigInt const& y, unsigned long max_bits) {
  require_positive(x, "uparrow: x");
  require_positive(y, "uparrow: y");
  if (x + 2 * y > max_bits)
    throw OverflowError("uparrow: 2^" + x.get_str() + " * 3^" + y.get_str() +
                        " exceeds " + std::to_string(max_bits) + " bits");
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 3, y.get_ui());
  mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), x.get_ui());
  return out;
}

std::optional<std::pair<BigInt, BigInt>> uparrow_decompose(BigInt const& z) {
  require_positive(z, "uparrow_decompose: z");
  unsigned long a = mpz_scan1(z.get_mpz_t(), 0);
  BigInt rest;
  mpz_fdiv_q_2exp(rest.get_mpz_t(), z.get_mpz_t(), a);
  unsigned long b = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), BigInt(3).get_mpz_t());
  if (rest != 1 || a == 0 || b == 0) return std::nullopt;
  return std::pair{BigInt(a), BigInt(b)};
}

std::vector<BigInt> UpArrowModel::enumerate(std::size_t count) const {
  std::vector<BigInt> out;
  for (std::size_t i = 1; i <= count; ++i) out.emplace_back(static_cast<unsigned long>(i));
  return out;
}

BigInt UpArrowModel::parse(std::string_view text) const {
  return parse_positive(text);
}

// ---------------------------------------------------------------------------
// Periodic sequences
// ---------------------------------------------------------------------------

std::size_t minimal_period(std::string_view word) {
  std::size_t n = word.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = word[i] == word[i - p];
    if (ok) return p;
  }
  return n;
}

PeriodicSeq::PeriodicSeq(std::string_view word) {
  if (word.empty()) throw std::invalid_argument("empty period word");
  word_ = std::string(word.substr(0, minimal_period(word)));
}

PeriodicSeq shuffle(PeriodicSeq const& a, PeriodicSeq const& b) {
  std::size_t l = std::lcm(a.period(), b.period());
  std::string out(2 * l, '\0');
  for (std::size_t i = 0; i < l; ++i) {
    out[2 * i] = a.at(i);
    out[2 * i + 1] = b.at(i);
  }
  return PeriodicSeq(out);
}

std::pair<PeriodicSeq, PeriodicSeq> shuffle_decompose(PeriodicSeq const& s) {
  std::size_t n = s.period();
  std::string even(n, '\0'), odd(n, '\0');
  for (std::size_t i = 0; i < n; ++i) {
    even[i] = s.at(2 * i);
    odd[i] = s.at(2 * i + 1);
  }
  return {PeriodicSeq(even), PeriodicSeq(odd)};
}

std::vector<PeriodicSeq> SeqModel::enumerate(std::size_t count) const {
  std::vector<PeriodicSeq> out;
  std::size_t k = symbols_.size();
  if (k == 0) return out;
  for (std::size_t len = 1; out.size() < count; ++len) {
    std::vector<std::size_t> digits(len, 0);
    for (;;) {
      std::string w(len, '\0');
      for (std::size_t i = 0; i < len; ++i) w[i] = symbols_[digits[i]];
      if (minimal_period(w) == len) {
        out.emplace_back(w);
        if (out.size() == count) return out;
      }
      std::size_t i = len;
      while (i > 0 && digits[i - 1] + 1 == k) digits[--i] = 0;
      if (i == 0) break;
      ++digits[i - 1];
    }
    if (k == 1) break;  // only one sequence exists
  }
  return out;
}

PeriodicSeq SeqModel::parse(std::string_view text) const {
  std::string w = trim(text);
  for (char c : w)
    if (symbols_.find(c) == std::string::npos)
      throw std::invalid_argument("symbol '" + std::string(1, c) +
                                  "' not in sequence alphabet '" + symbols_ + "'");
  return PeriodicSeq(w);
}

// ---------------------------------------------------------------------------
// Finite languages
// ---------------------------------------------------------------------------

std::size_t FiniteLanguage::size() const {
  std::size_t n = 0;
  for (auto const& w : words) n += w.size() + 1;
  return n;
}

FiniteLanguage lang_oplus(FiniteLanguage const& L, FiniteLanguage const& M) {
  FiniteLanguage out;
  for (auto const& w : L.words) out.words.insert("a" + w);
  for (auto const& w : M.words) out.words.insert("b" + w);
  return out;
}

std::optional<std::pair<FiniteLanguage, FiniteLanguage>> lang_decompose(
    FiniteLanguage const& L) {
  if (L.contains_empty_word()) return std::nullopt;
  std::pair<FiniteLanguage, FiniteLanguage> out;
  for (auto const& w : L.words) {
    if (w.front() == 'a')
      out.first.words.insert(w.substr(1));
    else if (w.front() == 'b')
      out.second.words.insert(w.substr(1));
    else
      throw std::invalid_argument("word '" + w + "' is not over {a, b}");
  }
  return out;
}

FiniteLanguage term_to_language(Term t) {
  if (t.is_leaf()) {
    if (t.generator().name() != "1")
      throw std::invalid_argument("term_to_language: term must be over {1}");
    return FiniteLanguage{{""}};
  }
  return lang_oplus(term_to_language(t.left()), term_to_language(t.right()));
}

bool is_prefix_free(FiniteLanguage const& L) {
  for (auto it = L.words.begin(); it != L.words.end(); ++it) {
    auto next = std::next(it);
    if (next != L.words.end() && next->compare(0, it->size(), *it) == 0)
      return false;
  }
  return true;
}

std::string show_language(FiniteLanguage const& L) {
  std::string out = "{";
  bool first = true;
  for (auto const& w : L.words) {
    if (!first) out += ", ";
    first = false;
    out += w.empty() ? "eps" : w;
  }
  return out + "}";
}

FiniteLanguage parse_language(std::string_view text) {
  std::string s = trim(text);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw std::invalid_argument("expected a language like {eps, ab}, got '" +
                                std::string(text) + "'");
  FiniteLanguage out;
  std::string body = s.substr(1, s.size() - 2);
  if (trim(body).empty()) return out;
  std::size_t start = 0;
  for (;;) {
    auto comma = body.find(',', start);
    std::string item = trim(std::string_view(body).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start));
    if (item == "eps") {
      out.words.insert("");
    } else {
      if (item.empty() || item.find_first_not_of("ab") != std::string::npos)
        throw std::invalid_argument("invalid word '" + item + "' (use a, b or eps)");
      out.words.insert(item);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<std::pair<FiniteLanguage, FiniteLanguage>> LangModel::decompose(
    FiniteLanguage const& z) const {
  auto parts = lang_decompose(z);
  if (parts && !include_empty_ &&
      (parts->first.words.empty() || parts->second.words.empty()))
    return std::nullopt;
  return parts;
}

std::vector<FiniteLanguage> LangModel::enumerate(std::size_t count) const {
  std::vector<FiniteLanguage> out;
  if (count == 0) return out;
  if (include_empty_) out.push_back({});
  // Words ordered by length then lexicographically; weight = length + 1.
  std::vector<std::string> words{""};
  std::size_t generated_len = 0;
  for (std::size_t size = 1; out.size() < count; ++size) {
    while (generated_len + 1 < size) {
      ++generated_len;
      std::vector<std::string> next;
      for (auto const& w : words)
        if (w.size() + 1 == generated_len) {
          next.push_back(w + "a");
          next.push_back(w + "b");
        }
      words.insert(words.end(), next.begin(), next.end());
    }
    std::vector<FiniteLanguage> layer;
    FiniteLanguage current;
    auto choose = [&](auto&& self, std::size_t from, std::size_t remaining) -> void {
      if (remaining == 0) {
        layer.push_back(current);
        return;
      }
      for (std::size_t i = from; i < words.size(); ++i) {
        std::size_t w = words[i].size() + 1;
        if (w > remaining) break;
        current.words.insert(words[i]);
        self(self, i + 1, remaining - w);
        current.words.erase(words[i]);
      }
    };
    choose(choose, 0, size);
    std::sort(layer.begin(), layer.end());
    for (auto& L : layer) {
      out.push_back(std::move(L));
      if (out.size() == count) break;
    }
  }
  return out;
}

FiniteLanguage LangModel::parse(std::string_view text) const {
  auto L = parse_language(text);
  if (!include_empty_ && L.words.empty())
    throw std::invalid_argument("the empty language is excluded from this model");
  return L;
}

// ---------------------------------------------------------------------------
// Small models
// ---------------------------------------------------------------------------

int TrivialModel::parse(std::string_view text) const {
  if (trim(text) != "0")
    throw std::invalid_argument("the trivial magma has the single element 0");
  return 0;
}

std::vector<std::uint64_t> ConstantModel::enumerate(std::size_t count) const {
  std::vector<std::uint64_t> out(count);
  std::iota(out.begin(), out.end(), 1);
  return out;
}

std::uint64_t ConstantModel::parse(std::string_view text) const {
  BigInt v = parse_positive(text);
  if (!v.fits_ulong_p()) throw OverflowError("element too large");
  return v.get_ui();
}

std::vector<Term> FreeMagmaModel::enumerate(std::size_t count) const {
  if (alphabet_.empty() || count == 0) return {};
  std::vector<Term> terms;
  for (std::uint64_t len = 1; terms.size() < count; ++len)
    terms = enumerate_terms(alphabet_, len);
  terms.resize(count);
  return terms;
}

EMagmaModel::EMagmaModel(EForm e, std::size_t max_rules)
    : e_(std::move(e)), rs_(build_rewrite_system(e_, max_rules)) {}

std::optional<std::pair<Term, Term>> EMagmaModel::decompose(Term z) const {
  if (!rs_.complete())
    throw std::logic_error("E-magma decomposition needs a complete rewrite system");
  if (z.is_sum()) return std::pair{z.left(), z.right()};
  if (auto u = rs_.sum_rule_for(z.generator())) return std::pair{u->left(), u->right()};
  return std::nullopt;
}

std::vector<Term> EMagmaModel::enumerate(std::size_t count) const {
  std::vector<Term> out;
  std::unordered_set<Term> seen;
  for (Generator g : e_.alphabet()) {
    Term t = rs_.normalize(Term::leaf(g));
    if (seen.insert(t).second) out.push_back(t);
  }
  // Normal forms are closed under taking components, so sums of earlier
  // normal forms reach every normal form.
  std::size_t known = 0;
  while (out.size() < count && known < out.size()) {
    std::size_t limit = out.size();
    std::vector<Term> fresh;
    for (std::size_t i = 0; i < limit; ++i)
      for (std::size_t j = 0; j < limit; ++j) {
        if (i < known && j < known) continue;
        Term t = rs_.normalize(out[i] + out[j]);
        if (seen.insert(t).second) fresh.push_back(t);
      }
    known = limit;
    std::sort(fresh.begin(), fresh.end(), TermOrder(e_.alphabet()));
    out.insert(out.end(), fresh.begin(), fresh.end());
  }
  if (out.size() > count) out.resize(count);
  return out;
}

Term EMagmaModel::parse(std::string_view text) const {
  return rs_.normalize(parse_term(text, e_.alphabet()));
}

}  // namespace magmakit
