#include "nilself/tree.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace nilself {

namespace {

class IdentitySource : public AutomatonSource
{
public:
  explicit IdentitySource(std::size_t m) : m_(m) {}
  std::size_t alphabet_size() const override { return m_; }
  Letter image(StateId, Letter x) const override { return x; }
  StateId next(StateId, Letter) const override { return 0; }
  bool known_identity(StateId) const override { return true; }

private:
  std::size_t m_;
};

class ProductSource : public AutomatonSource
{
public:
  ProductSource(std::shared_ptr<AutomatonSource const> a, std::shared_ptr<AutomatonSource const> b)
    : a_(std::move(a)), b_(std::move(b))
  {}

  std::size_t alphabet_size() const override { return a_->alphabet_size(); }

  Letter image(StateId s, Letter x) const override
  {
    auto [pa, pb] = pair_of(s);
    return b_->image(pb, a_->image(pa, x));
  }

  StateId next(StateId s, Letter x) const override
  {
    auto [pa, pb] = pair_of(s);
    return intern(a_->next(pa, x), b_->next(pb, a_->image(pa, x)));
  }

  bool known_identity(StateId s) const override
  {
    auto [pa, pb] = pair_of(s);
    return a_->known_identity(pa) && b_->known_identity(pb);
  }

  StateId intern(StateId pa, StateId pb) const
  {
    std::lock_guard lock(mutex_);
    auto [it, fresh] = ids_.try_emplace({pa, pb}, pairs_.size());
    if (fresh)
      pairs_.emplace_back(pa, pb);
    return it->second;
  }

private:
  std::pair<StateId, StateId> pair_of(StateId s) const
  {
    std::lock_guard lock(mutex_);
    return pairs_.at(s);
  }

  std::shared_ptr<AutomatonSource const> a_, b_;
  mutable std::mutex mutex_;
  mutable std::vector<std::pair<StateId, StateId>> pairs_;
  mutable std::map<std::pair<StateId, StateId>, StateId> ids_;
};

class InverseSource : public AutomatonSource
{
public:
  explicit InverseSource(std::shared_ptr<AutomatonSource const> a) : a_(std::move(a)) {}

  std::size_t alphabet_size() const override { return a_->alphabet_size(); }
  Letter image(StateId s, Letter y) const override { return inverse_perm(s)[y]; }
  StateId next(StateId s, Letter y) const override { return a_->next(s, inverse_perm(s)[y]); }
  bool known_identity(StateId s) const override { return a_->known_identity(s); }

private:
  std::vector<Letter> const &inverse_perm(StateId s) const
  {
    {
      std::lock_guard lock(mutex_);
      auto it = cache_.find(s);
      if (it != cache_.end())
        return it->second;
    }
    std::size_t m = a_->alphabet_size();
    std::vector<Letter> inv(m);
    for (Letter x = 0; x < m; ++x)
      inv[a_->image(s, x)] = x;
    std::lock_guard lock(mutex_);
    return cache_.try_emplace(s, std::move(inv)).first->second;
  }

  std::shared_ptr<AutomatonSource const> a_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<StateId, std::vector<Letter>> cache_;
};

void require_alphabet(TreeAutomorphism const &a, TreeAutomorphism const &b)
{
  if (a.alphabet_size() != b.alphabet_size())
    throw std::invalid_argument("tree automorphisms act on trees of different arity");
}

struct TripleHash {
  std::size_t operator()(std::tuple<StateId, StateId, std::size_t> const &t) const
  {
    auto [a, b, c] = t;
    std::size_t h = std::hash<StateId>()(a);
    h ^= std::hash<StateId>()(b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::size_t>()(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

std::string cycle_notation(std::span<Letter const> p)
{
  std::vector<bool> seen(p.size(), false);
  std::string s;
  for (Letter x = 0; x < p.size(); ++x) {
    if (seen[x] || p[x] == x)
      continue;
    s += "(";
    Letter y = x;
    bool first = true;
    while (!seen[y]) {
      seen[y] = true;
      if (!first)
        s += " ";
      s += std::to_string(y);
      first = false;
      y = p[y];
    }
    s += ")";
  }
  return s.empty() ? "()" : s;
}

bool is_identity_perm(std::span<Letter const> p)
{
  for (Letter x = 0; x < p.size(); ++x)
    if (p[x] != x)
      return false;
  return true;
}

} // namespace

TreeAutomorphism::TreeAutomorphism(std::shared_ptr<AutomatonSource const> src, StateId id)
  : src_(std::move(src)), id_(id)
{
  if (!src_)
    throw std::invalid_argument("null automaton source");
}

TreeAutomorphism TreeAutomorphism::identity(std::size_t alphabet)
{
  return TreeAutomorphism(std::make_shared<IdentitySource>(alphabet), 0);
}

Letter TreeAutomorphism::image(Letter x) const
{
  if (x >= alphabet_size())
    throw std::out_of_range("letter outside the alphabet");
  return src_->image(id_, x);
}

TreeAutomorphism TreeAutomorphism::state(Letter x) const
{
  if (x >= alphabet_size())
    throw std::out_of_range("letter outside the alphabet");
  return TreeAutomorphism(src_, src_->next(id_, x));
}

std::vector<Letter> TreeAutomorphism::root_permutation() const
{
  std::vector<Letter> p(alphabet_size());
  for (Letter x = 0; x < p.size(); ++x)
    p[x] = src_->image(id_, x);
  return p;
}

std::optional<Letter> TreeAutomorphism::first_moved_letter() const
{
  if (src_->known_identity(id_))
    return std::nullopt;
  for (Letter x = 0; x < alphabet_size(); ++x)
    if (src_->image(id_, x) != x)
      return x;
  return std::nullopt;
}

std::vector<Letter> TreeAutomorphism::act_on_word(std::vector<Letter> const &w) const
{
  std::vector<Letter> out;
  out.reserve(w.size());
  StateId s = id_;
  for (Letter x : w) {
    if (x >= alphabet_size())
      throw std::out_of_range("letter outside the alphabet");
    out.push_back(src_->image(s, x));
    s = src_->next(s, x);
  }
  return out;
}

TreeAutomorphism compose(TreeAutomorphism const &alpha, TreeAutomorphism const &beta)
{
  require_alphabet(alpha, beta);
  auto src = std::make_shared<ProductSource>(alpha.source(), beta.source());
  StateId id = src->intern(alpha.id(), beta.id());
  return TreeAutomorphism(src, id);
}

TreeAutomorphism inverse(TreeAutomorphism const &alpha)
{
  return TreeAutomorphism(std::make_shared<InverseSource>(alpha.source()), alpha.id());
}

bool equal_to_depth(TreeAutomorphism const &a, TreeAutomorphism const &b, std::size_t depth)
{
  require_alphabet(a, b);
  auto const &sa = *a.source();
  auto const &sb = *b.source();
  bool same_source = a.source() == b.source();
  std::size_t m = a.alphabet_size();
  std::unordered_map<std::tuple<StateId, StateId, std::size_t>, bool, TripleHash> memo;
  auto eq = [&](auto &&self, StateId x, StateId y, std::size_t r) -> bool {
    if (r == 0 || (same_source && x == y) || (sa.known_identity(x) && sb.known_identity(y)))
      return true;
    auto key = std::make_tuple(x, y, r);
    if (auto it = memo.find(key); it != memo.end())
      return it->second;
    bool ok = true;
    for (Letter l = 0; l < m && ok; ++l)
      ok = sa.image(x, l) == sb.image(y, l);
    for (Letter l = 0; l < m && ok && r > 1; ++l)
      ok = self(self, sa.next(x, l), sb.next(y, l), r - 1);
    memo[key] = ok;
    return ok;
  };
  return eq(eq, a.id(), b.id(), depth);
}

std::optional<std::size_t> least_nontrivial_depth(TreeAutomorphism const &a, std::size_t max_depth)
{
  auto const &src = *a.source();
  std::size_t m = a.alphabet_size();
  std::map<std::pair<StateId, std::size_t>, bool> memo;
  auto nontrivial = [&](auto &&self, StateId s, std::size_t r) -> bool {
    if (r == 0 || src.known_identity(s))
      return false;
    auto key = std::make_pair(s, r);
    if (auto it = memo.find(key); it != memo.end())
      return it->second;
    bool found = false;
    for (Letter x = 0; x < m && !found; ++x)
      found = src.image(s, x) != x;
    for (Letter x = 0; x < m && !found && r > 1; ++x)
      found = self(self, src.next(s, x), r - 1);
    memo[key] = found;
    return found;
  };
  for (std::size_t r = 1; r <= max_depth; ++r)
    if (nontrivial(nontrivial, a.id(), r))
      return r;
  return std::nullopt;
}

bool trivial_to_depth(TreeAutomorphism const &a, std::size_t depth)
{
  return !least_nontrivial_depth(a, depth).has_value();
}

Portrait::Portrait(std::size_t alphabet, std::size_t depth, std::vector<Letter> entries)
  : alphabet_(alphabet), depth_(depth), entries_(std::move(entries))
{
  std::size_t expect = 0, level = 1;
  for (std::size_t d = 0; d < depth_; ++d) {
    expect += level;
    level *= alphabet_;
  }
  if (entries_.size() != expect * alphabet_)
    throw std::invalid_argument("portrait has the wrong number of entries");
  std::vector<std::size_t> seen(alphabet_, 0);
  for (std::size_t v = 0; v < expect; ++v)
    for (Letter x : permutation(v)) {
      if (x >= alphabet_ || seen[x] == v + 1)
        throw std::invalid_argument("portrait entry is not a permutation");
      seen[x] = v + 1;
    }
}

bool Portrait::is_trivial() const
{
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] != i % alphabet_)
      return false;
  return true;
}

namespace {

std::string vertex_word(std::size_t alphabet, std::size_t level, std::size_t pos)
{
  if (level == 0)
    return "root";
  std::vector<std::size_t> letters(level);
  for (std::size_t i = level; i-- > 0;) {
    letters[i] = pos % alphabet;
    pos /= alphabet;
  }
  std::string s;
  for (std::size_t i = 0; i < level; ++i) {
    if (i && alphabet > 10)
      s += ".";
    s += std::to_string(letters[i]);
  }
  return s;
}

template <class F>
void for_each_vertex(std::size_t alphabet, std::size_t depth, F &&f)
{
  std::size_t idx = 0, count = 1;
  for (std::size_t level = 0; level < depth; ++level) {
    for (std::size_t pos = 0; pos < count; ++pos, ++idx)
      f(idx, level, pos);
    count *= alphabet;
  }
}

} // namespace

std::string Portrait::to_text() const
{
  std::ostringstream os;
  os << "portrait alphabet=" << alphabet_ << " depth=" << depth_ << "\n";
  for_each_vertex(alphabet_, depth_, [&](std::size_t idx, std::size_t level, std::size_t pos) {
    if (!is_identity_perm(permutation(idx)))
      os << "  " << vertex_word(alphabet_, level, pos) << ": " << cycle_notation(permutation(idx)) << "\n";
  });
  if (is_trivial())
    os << "  trivial\n";
  return os.str();
}

std::string Portrait::to_dot() const
{
  std::ostringstream os;
  os << "digraph portrait {\n  node [shape=box];\n";
  for_each_vertex(alphabet_, depth_, [&](std::size_t idx, std::size_t level, std::size_t pos) {
    os << "  v" << idx << " [label=\"" << vertex_word(alphabet_, level, pos) << "\\n"
       << cycle_notation(permutation(idx)) << "\"];\n";
    if (level + 1 < depth_) {
      // children of vertex `pos` at the next level
      std::size_t level_start = idx - pos;
      std::size_t next_start = level_start;
      std::size_t count = 1;
      for (std::size_t l = 0; l < level; ++l)
        count *= alphabet_;
      next_start += count;
      for (std::size_t x = 0; x < alphabet_; ++x)
        os << "  v" << idx << " -> v" << next_start + pos * alphabet_ + x << " [label=\"" << x << "\"];\n";
    }
  });
  os << "}\n";
  return os.str();
}

nlohmann::json Portrait::to_json() const
{
  nlohmann::json j;
  j["alphabet"] = alphabet_;
  j["depth"] = depth_;
  nlohmann::json vertices = nlohmann::json::array();
  for (std::size_t v = 0; v < vertex_count(); ++v) {
    auto p = permutation(v);
    vertices.push_back(std::vector<Letter>(p.begin(), p.end()));
  }
  j["vertices"] = std::move(vertices);
  return j;
}

Portrait portrait(TreeAutomorphism const &a, std::size_t depth, std::size_t max_letters)
{
  std::size_t m = a.alphabet_size();
  std::size_t total = 0, level = 1;
  for (std::size_t d = 0; d < depth; ++d) {
    total += level * m;
    if (total > max_letters)
      throw std::domain_error("portrait too large: alphabet " + std::to_string(m) + ", depth " +
                              std::to_string(depth));
    level *= m;
  }
  auto const &src = *a.source();
  // Vertices sharing a state share their subtree data.
  struct Expansion {
    std::vector<Letter> perm;
    std::vector<StateId> next;
  };
  std::unordered_map<StateId, Expansion> cache;
  auto expand = [&](StateId s) -> Expansion const & {
    auto it = cache.find(s);
    if (it != cache.end())
      return it->second;
    Expansion e{std::vector<Letter>(m), std::vector<StateId>(m)};
    bool ident = src.known_identity(s);
    for (Letter x = 0; x < m; ++x) {
      e.perm[x] = ident ? x : src.image(s, x);
      e.next[x] = ident ? s : src.next(s, x);
    }
    return cache.emplace(s, std::move(e)).first->second;
  };
  std::vector<Letter> perms;
  perms.reserve(total);
  std::vector<StateId> current{a.id()};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<StateId> next_level;
    if (d + 1 < depth)
      next_level.reserve(current.size() * m);
    for (StateId s : current) {
      auto const &e = expand(s);
      perms.insert(perms.end(), e.perm.begin(), e.perm.end());
      if (d + 1 < depth)
        next_level.insert(next_level.end(), e.next.begin(), e.next.end());
    }
    current = std::move(next_level);
  }
  return Portrait(m, depth, std::move(perms));
}

Portrait compose_to_depth(TreeAutomorphism const &a, TreeAutomorphism const &b, std::size_t depth)
{
  return portrait(compose(a, b), depth);
}

Portrait compose(Portrait const &a, Portrait const &b)
{
  if (a.alphabet_size() != b.alphabet_size() || a.depth() != b.depth())
    throw std::invalid_argument("portraits of different shape");
  std::size_t m = a.alphabet_size();
  std::vector<Letter> out(a.entries().size());
  // image[pos] = position (within its level) of the image of vertex pos under a
  std::vector<std::size_t> image{0};
  std::size_t offset = 0;
  for (std::size_t level = 0; level < a.depth(); ++level) {
    std::vector<std::size_t> next_image;
    if (level + 1 < a.depth())
      next_image.reserve(image.size() * m);
    for (std::size_t pos = 0; pos < image.size(); ++pos) {
      auto sa = a.permutation(offset + pos);
      auto sb = b.permutation(offset + image[pos]);
      for (Letter x = 0; x < m; ++x) {
        out[(offset + pos) * m + x] = sb[sa[x]];
        if (level + 1 < a.depth())
          next_image.push_back(image[pos] * m + sa[x]);
      }
    }
    offset += image.size();
    image = std::move(next_image);
  }
  return Portrait(m, a.depth(), std::move(out));
}

std::vector<Portrait> states(TreeAutomorphism const &a, std::size_t depth)
{
  auto const &src = *a.source();
  std::size_t m = a.alphabet_size();
  std::vector<StateId> order{a.id()};
  std::set<StateId> seen{a.id()};
  std::vector<StateId> frontier{a.id()};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<StateId> next;
    for (StateId s : frontier)
      for (Letter x = 0; x < m; ++x) {
        StateId t = src.next(s, x);
        if (seen.insert(t).second) {
          order.push_back(t);
          next.push_back(t);
        }
      }
    frontier = std::move(next);
  }
  std::set<Portrait> distinct;
  for (StateId s : order)
    distinct.insert(portrait(TreeAutomorphism(a.source(), s), depth));
  return {distinct.begin(), distinct.end()};
}

FiniteAutomaton::FiniteAutomaton(std::size_t alphabet, std::vector<State> states)
  : alphabet_(alphabet), states_(std::move(states))
{
  for (auto const &s : states_) {
    if (s.perm.size() != alphabet_ || s.next.size() != alphabet_)
      throw std::invalid_argument("automaton state has the wrong arity");
    std::vector<bool> hit(alphabet_, false);
    for (Letter x : s.perm) {
      if (x >= alphabet_ || hit[x])
        throw std::invalid_argument("automaton state permutation is not a permutation");
      hit[x] = true;
    }
    for (StateId t : s.next)
      if (t >= states_.size())
        throw std::invalid_argument("automaton transition to an unknown state");
  }
}

bool FiniteAutomaton::known_identity(StateId s) const
{
  // s is the identity iff no state reachable from s moves a letter.
  std::vector<bool> seen(states_.size(), false);
  std::vector<StateId> stack{s};
  seen.at(s) = true;
  while (!stack.empty()) {
    StateId t = stack.back();
    stack.pop_back();
    if (!is_identity_perm(states_[t].perm))
      return false;
    for (StateId u : states_[t].next)
      if (!seen[u]) {
        seen[u] = true;
        stack.push_back(u);
      }
  }
  return true;
}

nlohmann::json export_automaton(TreeAutomorphism const &a, std::size_t max_states)
{
  auto const &src = *a.source();
  std::size_t m = a.alphabet_size();
  std::map<StateId, std::size_t> index{{a.id(), 0}};
  std::deque<StateId> queue{a.id()};
  nlohmann::json states = nlohmann::json::array();
  bool truncated = false;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    nlohmann::json perm = nlohmann::json::array(), next = nlohmann::json::array();
    for (Letter x = 0; x < m; ++x) {
      perm.push_back(src.image(s, x));
      StateId t = src.next(s, x);
      auto it = index.find(t);
      if (it == index.end()) {
        if (index.size() >= max_states) {
          truncated = true;
          next.push_back(nullptr);
          continue;
        }
        it = index.emplace(t, index.size()).first;
        queue.push_back(t);
      }
      next.push_back(it->second);
    }
    states.push_back({{"perm", perm}, {"next", next}});
  }
  nlohmann::json j;
  j["alphabet"] = m;
  j["states"] = states;
  j["initial"] = 0;
  j["truncated"] = truncated;
  return j;
}

TreeAutomorphism import_automaton(nlohmann::json const &j)
{
  std::size_t m = j.at("alphabet").get<std::size_t>();
  std::vector<FiniteAutomaton::State> states;
  for (auto const &s : j.at("states")) {
    FiniteAutomaton::State st;
    st.perm = s.at("perm").get<std::vector<Letter>>();
    for (auto const &t : s.at("next")) {
      if (t.is_null())
        throw std::invalid_argument("cannot import a truncated automaton");
      st.next.push_back(t.get<StateId>());
    }
    states.push_back(std::move(st));
  }
  auto src = std::make_shared<FiniteAutomaton>(m, std::move(states));
  return TreeAutomorphism(src, j.at("initial").get<StateId>());
}

} // namespace nilself
