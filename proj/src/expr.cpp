#include "nilself/expr.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace nilself {

namespace {

class Parser
{
public:
  Parser(PresentationPtr g, std::string const &s) : g_(std::move(g)), s_(s) {}

  GroupElement parse()
  {
    auto x = product();
    skip();
    if (pos_ != s_.size())
      fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return x;
  }

private:
  [[noreturn]] void fail(std::string const &what) const
  {
    throw std::invalid_argument("cannot parse element \"" + s_ + "\" at position " + std::to_string(pos_) + ": " +
                                what);
  }

  void skip()
  {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool eat(char c)
  {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  GroupElement product()
  {
    auto x = power();
    while (eat('*'))
      x *= power();
    return x;
  }

  GroupElement power()
  {
    auto x = atom();
    while (eat('^')) {
      skip();
      std::size_t start = pos_;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+'))
        ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      if (pos_ == start || !std::isdigit(static_cast<unsigned char>(s_[pos_ - 1])))
        fail("expected an integer exponent");
      x = x.pow(parse_int(s_.substr(start, pos_ - start)));
    }
    return x;
  }

  GroupElement atom()
  {
    skip();
    if (pos_ >= s_.size())
      fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto x = product();
      if (!eat(')'))
        fail("expected ')'");
      return x;
    }
    if (c == '[') {
      ++pos_;
      auto x = product();
      if (!eat(','))
        fail("expected ',' in a commutator");
      do
        x = commutator(x, product());
      while (eat(','));
      if (!eat(']'))
        fail("expected ']'");
      return x;
    }
    if (c == '1') {
      ++pos_;
      return GroupElement(g_);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      auto i = g_->index_of(name);
      if (!i) {
        pos_ = start;
        fail("unknown generator '" + name + "'");
      }
      return GroupElement::generator(g_, *i);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  PresentationPtr g_;
  std::string s_;
  std::size_t pos_ = 0;
};

std::string trim(std::string const &s)
{
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

} // namespace

GroupElement parse_element(PresentationPtr const &g, std::string const &text)
{
  return Parser(g, text).parse();
}

GDataFile parse_gdata(std::istream &in, std::optional<GroupSpec> const &expected)
{
  std::optional<GroupSpec> spec = expected;
  PresentationPtr g;
  std::vector<std::vector<std::pair<std::string, std::string>>> parts;
  std::string line;
  std::size_t lineno = 0;
  auto where = [&] { return "line " + std::to_string(lineno) + ": "; };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    if (line.rfind("group", 0) == 0 && (line.size() == 5 || std::isspace(static_cast<unsigned char>(line[5])))) {
      auto s = parse_group_spec(trim(line.substr(5)));
      if (expected && s.to_string() != expected->to_string())
        throw std::invalid_argument(where() + "group " + s.to_string() + " conflicts with " + expected->to_string());
      if (!parts.empty())
        throw std::invalid_argument(where() + "group must precede the parts");
      spec = s;
      continue;
    }
    if (line == "part") {
      parts.emplace_back();
      continue;
    }
    auto arrow = line.find("->");
    if (arrow == std::string::npos)
      throw std::invalid_argument(where() + "expected 'group', 'part' or 'word -> word'");
    if (parts.empty())
      throw std::invalid_argument(where() + "generator outside a part");
    parts.back().emplace_back(trim(line.substr(0, arrow)), trim(line.substr(arrow + 2)));
  }
  if (!spec)
    throw std::invalid_argument("G-data file names no group");
  if (parts.empty())
    throw std::invalid_argument("G-data file has no parts");
  g = make_group(*spec);
  std::vector<VirtualEndomorphism> fs;
  for (auto const &p : parts) {
    if (p.empty())
      throw std::invalid_argument("empty part in G-data file");
    std::vector<std::pair<GroupElement, GroupElement>> pairs;
    for (auto const &[x, y] : p)
      pairs.emplace_back(parse_element(g, x), parse_element(g, y));
    fs.push_back(VirtualEndomorphism::from_pairs(g, pairs));
  }
  return {*spec, g, GData(std::move(fs))};
}

std::vector<Letter> parse_tree_word(std::string const &text, std::size_t alphabet)
{
  std::vector<Letter> w;
  bool separated = text.find_first_of(".,") != std::string::npos || alphabet > 10;
  if (separated) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, text.find(',') != std::string::npos ? ',' : '.')) {
      item = trim(item);
      if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad tree word \"" + text + "\"");
      w.push_back(static_cast<Letter>(std::stoul(item)));
    }
  } else {
    for (char c : text) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("bad tree word \"" + text + "\"");
      w.push_back(static_cast<Letter>(c - '0'));
    }
  }
  for (Letter x : w)
    if (x >= alphabet)
      throw std::invalid_argument("letter " + std::to_string(x) + " outside alphabet of size " +
                                  std::to_string(alphabet));
  return w;
}

std::string format_tree_word(std::vector<Letter> const &w, std::size_t alphabet)
{
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (alphabet > 10 && i)
      s += ".";
    s += std::to_string(w[i]);
  }
  return s;
}

} // namespace nilself
