#include "nilself/cli.hpp"

#include "nilself/expr.hpp"
#include "nilself/suites.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <sstream>

namespace nilself {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string group;
  std::string endo = "canonical";
  std::string element;
  std::string word;
  std::string data;
  std::string format;
  std::size_t depth = 4;
  std::string suite;
};

struct Built {
  std::string group;
  std::string endo;
  RepresentationPtr rep;
};

std::vector<std::string> split(std::string const &s, char sep)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    out.push_back(item);
  return out;
}

GDataFile read_gdata(std::string const &path, std::string const &group)
{
  std::ifstream in(path);
  if (!in)
    throw UsageError("cannot open G-data file " + path);
  std::optional<GroupSpec> expected;
  if (!group.empty())
    expected = parse_group_spec(group);
  return parse_gdata(in, expected);
}

Built build(Options const &o)
{
  if (!o.data.empty()) {
    auto file = read_gdata(o.data, o.group);
    return {file.spec.to_string(), "data:" + o.data, build_representation(file.data)};
  }
  if (o.group.empty())
    throw UsageError("--group or --data is required");
  auto spec = parse_group_spec(o.group);
  auto g = make_group(spec);
  Built b{spec.to_string(), o.endo, nullptr};
  std::string const &e = o.endo;
  if (e == "canonical") {
    if (spec.kind == GroupKind::n34)
      b.rep = build_representation(canonical_gdata(spec, g));
    else
      b.rep = build_cosettree_rep(canonical_endomorphism(spec, g));
  } else if (e == "double") {
    b.rep = build_cosettree_rep(squaring_endomorphism(g));
  } else if (e.rfind("psi:", 0) == 0) {
    auto p = split(e.substr(4), ',');
    if (p.size() != 3)
      throw UsageError("psi needs three parameters m1,m2,m3");
    b.rep = build_cosettree_rep(psi_endo(g, parse_int(p[0]), parse_int(p[1]), parse_int(p[2])));
  } else if (e.rfind("dm:", 0) == 0) {
    if (spec.kind != GroupKind::unitriangular)
      throw UsageError("dm endomorphisms need a unitriangular group");
    auto n = static_cast<std::size_t>(to_i64(spec.params.at(0)));
    b.rep = build_cosettree_rep(dm_conjugation(n, parse_int(e.substr(3))));
  } else if (e.rfind("images:", 0) == 0) {
    std::vector<GroupElement> images;
    for (auto const &w : split(e.substr(7), ';'))
      images.push_back(parse_element(g, w));
    if (images.size() != g->weight_end(1))
      throw UsageError("images: expected " + std::to_string(g->weight_end(1)) + " words");
    b.rep = build_cosettree_rep(Endomorphism::from_generator_images(g, images));
  } else {
    throw UsageError("unknown endomorphism '" + e + "'");
  }
  return b;
}

std::size_t clamp_depth(std::size_t depth, std::ostream &err)
{
  std::size_t cap = max_expansion_depth();
  if (depth > cap) {
    err << "note: depth " << depth << " clamped to " << cap << " (SELFSIM_MAX_DEPTH)\n";
    return cap;
  }
  return depth;
}

std::string automaton_dot(std::string const &name, nlohmann::json const &a)
{
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  auto const &states = a.at("states");
  for (std::size_t s = 0; s < states.size(); ++s) {
    auto const &perm = states[s].at("perm");
    bool identity = true;
    for (std::size_t x = 0; x < perm.size(); ++x)
      identity = identity && perm[x].get<std::size_t>() == x;
    os << "  s" << s << " [label=\"s" << s << (identity ? "" : "*") << "\"];\n";
  }
  for (std::size_t s = 0; s < states.size(); ++s) {
    auto const &perm = states[s].at("perm");
    auto const &next = states[s].at("next");
    for (std::size_t x = 0; x < next.size(); ++x) {
      if (next[x].is_null())
        continue;
      os << "  s" << s << " -> s" << next[x].get<std::size_t>() << " [label=\"" << x << "|"
         << perm[x].get<std::size_t>() << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

int cmd_group(Options const &o, std::ostream &out)
{
  if (o.group.empty())
    throw UsageError("group: a group spec is required");
  auto spec = parse_group_spec(o.group);
  auto g = make_group(spec);
  auto z = center_lattice(*g);
  auto c = consistency_check(*g);
  if (o.format == "json") {
    nlohmann::json j;
    j["group"] = spec.to_string();
    j["hirsch_length"] = g->hirsch_length();
    j["class"] = g->max_weight();
    j["center_rank"] = z.rank();
    j["consistent"] = c.ok;
    for (std::size_t i = 0; i < g->size(); ++i)
      j["basis"].push_back({{"name", g->name(i)}, {"weight", g->weight(i)}});
    out << j.dump(2) << "\n";
  } else {
    out << "group " << spec.to_string() << "\n";
    out << "Hirsch length " << g->hirsch_length() << "\n";
    out << "class " << g->max_weight() << "\n";
    out << "basis:\n";
    for (std::size_t i = 0; i < g->size(); ++i)
      out << "  " << i << " " << g->name(i) << " weight " << g->weight(i) << "\n";
    out << "center rank " << z.rank() << "\n";
    out << "consistent " << (c.ok ? "yes" : "no") << "\n";
  }
  return c.ok ? 0 : 1;
}

int cmd_portrait(Options const &o, std::ostream &out, std::ostream &err)
{
  if (o.element.empty())
    throw UsageError("--element is required");
  auto b = build(o);
  auto x = parse_element(b.rep->presentation(), o.element);
  std::size_t depth = clamp_depth(o.depth, err);
  auto p = portrait(b.rep->lambda(x), depth);
  if (o.format == "json") {
    nlohmann::json j;
    j["group"] = b.group;
    j["endo"] = b.endo;
    j["element"] = x.to_string();
    j["portrait"] = p.to_json();
    out << j.dump(2) << "\n";
  } else if (o.format == "dot") {
    out << p.to_dot();
  } else {
    out << "group " << b.group << "\nendo " << b.endo << "\nelement " << x.to_string() << "\n" << p.to_text();
  }
  return 0;
}

int cmd_rep(Options const &o, std::ostream &out, std::ostream &err)
{
  if (!o.element.empty())
    return cmd_portrait(o, out, err);
  auto b = build(o);
  auto g = b.rep->presentation();
  std::size_t const max_states = 256;
  nlohmann::json j;
  j["group"] = b.group;
  j["endo"] = b.endo;
  j["alphabet"] = b.rep->alphabet_size();
  j["generators"] = nlohmann::json::array();
  for (std::size_t i = 0; i < g->weight_end(1); ++i) {
    auto a = export_automaton(b.rep->lambda(GroupElement::generator(g, i)), max_states);
    j["generators"].push_back({{"name", g->name(i)}, {"automaton", a}});
  }
  if (o.format == "dot") {
    for (auto const &gen : j["generators"])
      out << automaton_dot(gen["name"].get<std::string>(), gen["automaton"]);
  } else if (o.format == "text") {
    out << "group " << b.group << "\nendo " << b.endo << "\nalphabet " << b.rep->alphabet_size() << "\n";
    for (auto const &gen : j["generators"]) {
      auto const &a = gen["automaton"];
      out << "generator " << gen["name"].get<std::string>() << ": " << a["states"].size() << " states"
          << (a["truncated"].get<bool>() ? " (truncated)" : "") << "\n";
    }
  } else {
    out << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_act(Options const &o, std::ostream &out)
{
  if (o.element.empty() || o.word.empty())
    throw UsageError("act needs --element and --word");
  auto b = build(o);
  auto x = parse_element(b.rep->presentation(), o.element);
  std::size_t m = b.rep->alphabet_size();
  auto w = parse_tree_word(o.word, m);
  if (w.size() > max_expansion_depth())
    throw UsageError("word longer than SELFSIM_MAX_DEPTH");
  auto image = b.rep->lambda(x).act_on_word(w);
  if (o.format == "json") {
    nlohmann::json j;
    j["element"] = x.to_string();
    j["word"] = format_tree_word(w, m);
    j["image"] = format_tree_word(image, m);
    out << j.dump(2) << "\n";
  } else {
    out << format_tree_word(image, m) << "\n";
  }
  return 0;
}

int cmd_verify(Options const &o, std::ostream &out)
{
  SuiteResult r;
  if (o.suite == "n34-relations")
    r = suite_n34_relations();
  else if (o.suite == "psi")
    r = suite_psi();
  else if (o.suite == "dm")
    r = suite_dm();
  else if (o.suite == "consistency")
    r = o.group.empty() ? suite_consistency() : suite_consistency({o.group});
  else
    throw UsageError("unknown suite '" + o.suite + "' (n34-relations, psi, dm, consistency)");
  r.print(out);
  return r.passed() ? 0 : 1;
}

std::string matrix_string(IntMatrix const &m)
{
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i)
    s += (i ? "; " : "") + to_string(m.row(i));
  return s + "]";
}

int cmd_witness(Options const &o, std::ostream &out)
{
  if (o.data.empty())
    throw UsageError("witness needs --data FILE");
  auto file = read_gdata(o.data, o.group);
  auto r = fcore_witness(file.data);
  auto const &p = r.powers;
  if (o.format == "json") {
    nlohmann::json j;
    j["group"] = file.spec.to_string();
    j["parts"] = file.data.parts().size();
    j["powers"] = {p[0].str(), p[1].str(), p[2].str(), p[3].str()};
    for (std::size_t i = 0; i < r.nf.size(); ++i)
      j["nf"].push_back({{"matrix", matrix_string(r.nf[i])}, {"det", r.determinants[i].str()}});
    j["method"] = r.method;
    j["verified"] = r.witness.has_value();
    j["message"] = r.message;
    j["pointwise_fixed"] = r.pointwise_fixed;
    j["witness"] = nlohmann::json::array();
    if (r.witness)
      for (auto const &s : r.witness->standard_sequence())
        j["witness"].push_back(s.to_string());
    out << j.dump(2) << "\n";
  } else {
    out << "group " << file.spec.to_string() << "\n";
    out << "parts " << file.data.parts().size() << "\n";
    out << "K powers (m,n,k,j) = (" << p[0] << "," << p[1] << "," << p[2] << "," << p[3] << ")\n";
    for (std::size_t i = 0; i < r.nf.size(); ++i)
      out << "part " << i << ": index " << file.data.part_sizes()[i] << ", N_f = " << matrix_string(r.nf[i])
          << ", det " << r.determinants[i] << "\n";
    out << "method " << r.method << "\n";
    if (r.witness) {
      out << "witness generators:\n";
      for (auto const &s : r.witness->standard_sequence())
        out << "  " << s.to_string() << "\n";
      out << "checks: nontrivial yes, inside domains yes, normal yes, invariant yes\n";
      out << "pointwise fixed " << (r.pointwise_fixed ? "yes" : "no") << "\n";
    }
    out << r.message << "\n";
  }
  return r.witness ? 0 : 1;
}

} // namespace

int run_cli(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Self-similar actions of torsion-free nilpotent groups", "nilself"};
  app.require_subcommand(1);
  Options o;
  auto add_group = [&](CLI::App *s) { s->add_option("--group", o.group, "group spec, e.g. heisenberg or ut:4"); };
  auto add_rep = [&](CLI::App *s) {
    add_group(s);
    s->add_option("--endo", o.endo, "canonical, double, psi:m1,m2,m3, dm:m or images:w1;w2;...");
    s->add_option("--data", o.data, "G-data file");
    s->add_option("--depth", o.depth, "portrait depth")->check(CLI::PositiveNumber);
  };

  auto *group = app.add_subcommand("group", "presentation summary");
  group->add_option("spec", o.group, "group spec");
  add_group(group);
  group->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

  auto *rep = app.add_subcommand("rep", "build a representation and export generator automata");
  add_rep(rep);
  rep->add_option("--element", o.element, "element word; prints its portrait instead");
  rep->add_option("--format", o.format)->check(CLI::IsMember({"json", "dot", "text"}));

  auto *por = app.add_subcommand("portrait", "truncated portrait of an element");
  add_rep(por);
  por->add_option("--element", o.element, "element word")->required();
  por->add_option("--format", o.format)->check(CLI::IsMember({"json", "dot", "text"}));

  auto *act = app.add_subcommand("act", "apply an element to a tree word");
  add_rep(act);
  act->add_option("--element", o.element, "element word")->required();
  act->add_option("--word", o.word, "tree word such as 0110 or 3.0.12")->required();
  act->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

  auto *ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", o.suite, "n34-relations, psi, dm or consistency")->required();
  add_group(ver);

  auto *wit = app.add_subcommand("witness", "search for an invariant normal subgroup of a G-data");
  add_group(wit);
  wit->add_option("--data", o.data, "G-data file")->required();
  wit->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (CLI::CallForHelp const &) {
    out << app.help();
    return 0;
  } catch (CLI::ParseError const &e) {
    auto *sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << "error: " << e.what() << "\n" << sub->help();
    return 2;
  }

  try {
    if (group->parsed())
      return cmd_group(o, out);
    if (rep->parsed()) {
      if (o.format.empty())
        o.format = o.element.empty() ? "json" : "text";
      return cmd_rep(o, out, err);
    }
    if (por->parsed())
      return cmd_portrait(o, out, err);
    if (act->parsed())
      return cmd_act(o, out);
    if (ver->parsed())
      return cmd_verify(o, out);
    if (wit->parsed())
      return cmd_witness(o, out);
  } catch (std::domain_error const &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (std::invalid_argument const &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (std::out_of_range const &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (std::exception const &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

} // namespace nilself
