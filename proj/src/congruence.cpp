#include "magmakit/congruence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "magmakit/errors.hpp"

namespace magmakit {

// ---------------------------------------------------------------------------
// CongruenceClosure
// ---------------------------------------------------------------------------

CongruenceClosure::CongruenceClosure(bool injective) : injective_(injective) {}

std::size_t CongruenceClosure::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

std::size_t CongruenceClosure::add(Term t) {
  if (auto it = ids_.find(t); it != ids_.end()) return it->second;
  std::int64_t l = -1, r = -1;
  if (t.is_sum()) {
    l = static_cast<std::int64_t>(add(t.left()));
    r = static_cast<std::int64_t>(add(t.right()));
  }
  std::size_t id = nodes_.size();
  nodes_.push_back({t, l, r});
  parent_.push_back(id);
  uses_.emplace_back();
  sum_rep_.push_back(t.is_sum() ? static_cast<std::int64_t>(id) : -1);
  class_size_.push_back(1);
  ids_.emplace(t, id);
  if (t.is_sum()) {
    std::size_t cl = find(l), cr = find(r);
    uses_[cl].push_back(id);
    if (cr != cl) uses_[cr].push_back(id);
    auto [it, inserted] = signatures_.try_emplace({cl, cr}, id);
    if (!inserted) {
      pending_.emplace_back(id, it->second);
      propagate();
    }
  }
  return id;
}

void CongruenceClosure::merge(Term a, Term b) {
  std::size_t x = add(a), y = add(b);
  pending_.emplace_back(x, y);
  propagate();
}

bool CongruenceClosure::contains(Term t) const { return ids_.contains(t); }

bool CongruenceClosure::equivalent(Term a, Term b) {
  return find(ids_.at(a)) == find(ids_.at(b));
}

std::size_t CongruenceClosure::class_of(Term t) { return find(ids_.at(t)); }

void CongruenceClosure::propagate() {
  while (!pending_.empty()) {
    auto [a, b] = pending_.back();
    pending_.pop_back();
    unite(a, b);
  }
}

void CongruenceClosure::unite(std::size_t a, std::size_t b) {
  std::size_t ra = find(a), rb = find(b);
  if (ra == rb) return;
  if (class_size_[ra] < class_size_[rb]) std::swap(ra, rb);
  parent_[rb] = ra;
  class_size_[ra] += class_size_[rb];

  if (injective_ && sum_rep_[ra] >= 0 && sum_rep_[rb] >= 0) {
    auto const& s1 = nodes_[static_cast<std::size_t>(sum_rep_[ra])];
    auto const& s2 = nodes_[static_cast<std::size_t>(sum_rep_[rb])];
    pending_.emplace_back(s1.left, s2.left);
    pending_.emplace_back(s1.right, s2.right);
  }
  if (sum_rep_[ra] < 0) sum_rep_[ra] = sum_rep_[rb];

  auto moved = std::move(uses_[rb]);
  uses_[rb].clear();
  for (std::size_t p : moved) {
    auto const& n = nodes_[p];
    std::pair<std::size_t, std::size_t> sig{find(n.left), find(n.right)};
    auto [it, inserted] = signatures_.try_emplace(sig, p);
    if (!inserted && find(it->second) != find(p))
      pending_.emplace_back(p, it->second);
    uses_[ra].push_back(p);
  }
}

// ---------------------------------------------------------------------------
// PairSet and bounded saturation
// ---------------------------------------------------------------------------

PairSet::PairSet(Alphabet alphabet, std::uint64_t size_bound,
                 std::vector<Term> terms, std::vector<std::size_t> class_ids)
    : alphabet_(std::move(alphabet)), bound_(size_bound), terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i)
    class_ids_.emplace(terms_[i], class_ids[i]);
}

bool PairSet::contains(TermPair const& p) const {
  auto a = class_ids_.find(p.first);
  auto b = class_ids_.find(p.second);
  return a != class_ids_.end() && b != class_ids_.end() && a->second == b->second;
}

std::optional<std::size_t> PairSet::class_of(Term t) const {
  auto it = class_ids_.find(t);
  if (it == class_ids_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t PairSet::pair_count() const {
  std::unordered_map<std::size_t, std::uint64_t> sizes;
  for (auto const& [t, c] : class_ids_) ++sizes[c];
  std::uint64_t total = 0;
  for (auto const& [c, n] : sizes) total += n * n;
  return total;
}

std::vector<std::vector<Term>> PairSet::classes() const {
  TermOrder order(alphabet_);
  std::map<std::size_t, std::vector<Term>> groups;
  for (auto const& [t, c] : class_ids_) groups[c].push_back(t);
  std::vector<std::vector<Term>> out;
  for (auto& [c, members] : groups) {
    std::sort(members.begin(), members.end(), order);
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end(), [&](auto const& x, auto const& y) {
    return order(x.front(), y.front());
  });
  return out;
}

std::vector<TermPair> PairSet::pairs() const {
  std::vector<TermPair> out;
  for (auto const& cls : classes())
    for (Term a : cls)
      for (Term b : cls) out.push_back({a, b});
  return out;
}

namespace {

double universe_size(std::size_t generators, std::uint64_t bound) {
  // Sum over n <= bound of Catalan(n-1) * k^n.
  double total = 0, catalan = 1, power = 1;
  for (std::uint64_t n = 1; n <= bound; ++n) {
    power *= static_cast<double>(generators);
    total += catalan * power;
    catalan = catalan * 2 * (2 * static_cast<double>(n) - 1) /
              (static_cast<double>(n) + 1);
    if (total > 1e18) break;
  }
  return total;
}

void require_over(Term t, Alphabet const& alphabet) {
  for (Generator g : leaves(t))
    if (!alphabet.contains(g))
      throw std::invalid_argument("term " + t.str() + " uses generator '" +
                                  g.name() + "' outside the alphabet");
}

struct BoundedClosure {
  CongruenceClosure closure;
  std::vector<Term> terms;  // all terms up to the bound, ordered
};

BoundedClosure close_bounded(std::span<TermPair const> R, Alphabet const& alphabet,
                             std::uint64_t size_bound, bool decomposition,
                             std::size_t max_terms) {
  if (size_bound == 0) throw std::invalid_argument("size bound must be positive");
  for (auto const& r : R) {
    require_over(r.first, alphabet);
    require_over(r.second, alphabet);
  }
  double expected = universe_size(alphabet.size(), size_bound);
  if (expected > static_cast<double>(max_terms))
    throw ResourceLimitExceeded(
        "saturation universe of " + std::to_string(static_cast<std::uint64_t>(expected)) +
        " terms exceeds the cap of " + std::to_string(max_terms));
  BoundedClosure out{CongruenceClosure(decomposition),
                     enumerate_terms(alphabet, size_bound)};
  for (Term t : out.terms) out.closure.add(t);
  for (auto const& r : R) {
    out.closure.add(r.first);
    out.closure.add(r.second);
  }
  if (out.closure.size() > max_terms)
    throw ResourceLimitExceeded("saturation universe exceeds the cap of " +
                                std::to_string(max_terms) + " terms");
  for (auto const& r : R) out.closure.merge(r.first, r.second);
  return out;
}

}  // namespace

PairSet saturate_bounded(std::span<TermPair const> R, Alphabet const& alphabet,
                         std::uint64_t size_bound, SaturationOptions options) {
  auto bc = close_bounded(R, alphabet, size_bound, options.decomposition,
                          options.max_terms);
  std::vector<std::size_t> ids;
  ids.reserve(bc.terms.size());
  for (Term t : bc.terms) ids.push_back(bc.closure.class_of(t));
  return PairSet(alphabet, size_bound, std::move(bc.terms), std::move(ids));
}

bool is_closed_bounded(std::span<TermPair const> R, Alphabet const& alphabet,
                       std::uint64_t size_bound, std::size_t max_terms) {
  auto bc = close_bounded(R, alphabet, size_bound, false, max_terms);
  std::unordered_map<std::size_t, std::pair<std::size_t, std::size_t>> parts;
  for (Term t : bc.terms) {
    if (t.is_leaf()) continue;
    std::pair<std::size_t, std::size_t> comp{bc.closure.class_of(t.left()),
                                             bc.closure.class_of(t.right())};
    auto [it, inserted] = parts.try_emplace(bc.closure.class_of(t), comp);
    if (!inserted && it->second != comp) return false;
  }
  return true;
}

std::vector<std::vector<Term>> classes_bounded(EForm const& e,
                                               std::uint64_t size_bound,
                                               std::size_t max_terms) {
  auto rels = e.relations();
  return saturate_bounded(rels, e.alphabet(), size_bound,
                          {.decomposition = true, .max_terms = max_terms})
      .classes();
}

bool quotient_is_equidecomposable(PairSet const& s) {
  std::unordered_map<std::size_t, std::pair<std::size_t, std::size_t>> parts;
  for (auto const& cls : s.classes()) {
    for (Term t : cls) {
      if (t.is_leaf()) continue;
      std::pair<std::size_t, std::size_t> comp{*s.class_of(t.left()),
                                               *s.class_of(t.right())};
      auto [it, inserted] = parts.try_emplace(*s.class_of(t), comp);
      if (!inserted && it->second != comp) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Ground completion
// ---------------------------------------------------------------------------

namespace {

bool has_subterm(Term haystack, Term needle) {
  if (haystack.length() < needle.length()) return false;
  std::unordered_set<Term> seen;
  std::vector<Term> stack{haystack};
  while (!stack.empty()) {
    Term t = stack.back();
    stack.pop_back();
    if (t == needle) return true;
    if (t.is_leaf() || t.length() <= needle.length()) continue;
    if (!seen.insert(t).second) continue;
    stack.push_back(t.left());
    stack.push_back(t.right());
  }
  return false;
}

class Completion {
 public:
  Completion(Alphabet const& alphabet, std::size_t max_rules)
      : order_(alphabet), max_rules_(max_rules) {}

  void push(Term s, Term t) { queue_.emplace_back(s, t); }

  // Returns false when the cap was hit.
  bool run() {
    std::size_t budget = 100 * max_rules_ + 1000;
    for (;;) {
      while (!queue_.empty()) {
        if (budget-- == 0) return false;
        auto [s, t] = queue_.front();
        queue_.pop_front();
        s = nf(s);
        t = nf(t);
        if (s == t) continue;
        if (s.is_sum() && t.is_sum()) {
          push(s.left(), t.left());
          push(s.right(), t.right());
          continue;
        }
        if (order_(s, t)) std::swap(s, t);
        add_rule(s, t);
        if (rules_.size() > max_rules_) return false;
      }
      // Injectivity: two sums rewriting to the same generator.
      std::unordered_map<Term, Term> by_rhs;
      for (auto const& [l, r] : rules_) {
        if (l.is_leaf()) continue;
        auto [it, inserted] = by_rhs.try_emplace(r, l);
        if (!inserted) {
          push(it->second.left(), l.left());
          push(it->second.right(), l.right());
        }
      }
      if (queue_.empty()) return true;
    }
  }

  Term nf(Term t) const {
    if (t.is_sum()) t = nf(t.left()) + nf(t.right());
    auto it = rules_.find(t);
    return it == rules_.end() ? t : it->second;
  }

  std::unordered_map<Term, Term> const& rules() const { return rules_; }

 private:
  void add_rule(Term l, Term r) {
    for (auto it = rules_.begin(); it != rules_.end();) {
      if (has_subterm(it->first, l)) {
        push(it->first, it->second);
        it = rules_.erase(it);
        continue;
      }
      if (it->second == l) it->second = r;
      ++it;
    }
    rules_.emplace(l, r);
  }

  TermOrder order_;
  std::size_t max_rules_;
  std::unordered_map<Term, Term> rules_;
  std::deque<std::pair<Term, Term>> queue_;
};

}  // namespace

RewriteSystem build_rewrite_system(EForm const& e, std::size_t max_rules) {
  Alphabet const& alphabet = e.alphabet();
  Completion completion(alphabet, max_rules);
  for (std::size_t i = 0; i < e.size(); ++i)
    completion.push(e.images()[i], Term::leaf(alphabet[i]));
  RewriteSystem rs;
  rs.complete_ = completion.run();
  for (auto const& [l, r] : completion.rules()) rs.rules_.push_back({l, r});
  TermOrder order(alphabet);
  std::sort(rs.rules_.begin(), rs.rules_.end(),
            [&](auto const& x, auto const& y) { return order(x.lhs, y.lhs); });
  for (auto const& rule : rs.rules_) {
    rs.index_.emplace(rule.lhs, rule.rhs);
    if (rule.lhs.is_sum()) rs.sum_by_rhs_.emplace(rule.rhs, rule.lhs);
  }
  return rs;
}

std::optional<Term> RewriteSystem::lookup(Term lhs) const {
  auto it = index_.find(lhs);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Term> RewriteSystem::sum_rule_for(Generator g) const {
  auto it = sum_by_rhs_.find(Term::leaf(g));
  if (it == sum_by_rhs_.end()) return std::nullopt;
  return it->second;
}

Term RewriteSystem::normalize(Term t) const {
  if (index_.empty()) return t;
  std::unordered_map<Term, Term> memo;
  auto go = [&](auto&& self, Term u) -> Term {
    if (auto m = memo.find(u); m != memo.end()) return m->second;
    Term v = u;
    if (u.is_sum()) v = self(self, u.left()) + self(self, u.right());
    if (auto it = index_.find(v); it != index_.end()) v = it->second;
    memo.emplace(u, v);
    return v;
  };
  return go(go, t);
}

Term normalize(RewriteSystem const& rs, Term t) { return rs.normalize(t); }

// ---------------------------------------------------------------------------
// Word problem
// ---------------------------------------------------------------------------

std::string WordAnswer::str() const {
  switch (verdict) {
    case Verdict::Equal: return "equal";
    case Verdict::Unequal: return "unequal";
    case Verdict::Undecided: return "undecided(bound=" + std::to_string(bound) + ")";
  }
  return "?";
}

WordAnswer word_equal_by_closure(EForm const& e, Term s, Term t,
                                 std::size_t max_terms) {
  require_over(s, e.alphabet());
  require_over(t, e.alphabet());
  std::uint64_t bound = std::max(s.length(), t.length());
  CongruenceClosure closure(true);
  try {
    for (Term img : e.images()) closure.add(img);
    closure.add(s);
    closure.add(t);
    if (closure.size() > max_terms)
      return {WordAnswer::Verdict::Undecided, bound};
    for (auto const& r : e.relations()) closure.merge(r.first, r.second);
  } catch (std::bad_alloc const&) {
    return {WordAnswer::Verdict::Undecided, bound};
  }
  return {closure.equivalent(s, t) ? WordAnswer::Verdict::Equal
                                   : WordAnswer::Verdict::Unequal,
          bound};
}

WordAnswer word_equal(EForm const& e, RewriteSystem const& rs, Term s, Term t,
                      WordOptions options) {
  require_over(s, e.alphabet());
  require_over(t, e.alphabet());
  if (rs.complete()) {
    bool eq = rs.normalize(s) == rs.normalize(t);
    return {eq ? WordAnswer::Verdict::Equal : WordAnswer::Verdict::Unequal,
            std::max(s.length(), t.length())};
  }
  return word_equal_by_closure(e, s, t, options.max_terms);
}

WordAnswer word_equal(EForm const& e, Term s, Term t, WordOptions options) {
  return word_equal(e, build_rewrite_system(e, options.max_rules), s, t, options);
}

}  // namespace magmakit
