#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "contset/complement.hpp"
#include "contset/constructions.hpp"
#include "contset/continuity.hpp"
#include "contset/error.hpp"
#include "contset/io.hpp"
#include "contset/omega.hpp"
#include "contset/pcp.hpp"

namespace contset::cli {

namespace {

enum FlagMask : unsigned {
  max_flag = 1,
  bound_flag = 2,
  letter_flag = 4,
  method_flag = 8,
  alphabet_flag = 16,
  primitive_flag = 32,
  dot_flag = 64,
};

struct Invocation {
  std::vector<std::string> args;
  std::optional<std::size_t> max;
  std::size_t bound = 4;
  std::optional<std::string> letter;
  std::string method = "automatic";
  std::optional<std::string> alphabet;
  bool primitive = false;
  bool dot = false;
};

using Handler = int (*)(const Invocation&, std::ostream&);

struct Command {
  CommandInfo info;
  std::vector<std::string> args;
  unsigned flags;
  Handler handler;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parse errors name the file they come from.
template <class F>
auto load(const std::string& path, F&& parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Nba load_nba(const std::string& path) { return load(path, parse_as_nba); }
Dba load_dba(const std::string& path) { return load(path, parse_as_dba); }
DetMuller load_muller(const std::string& path) { return load(path, parse_as_muller); }
Automaton load_automaton(const std::string& path) { return load(path, parse_automaton); }
Transducer load_transducer(const std::string& path) { return load(path, parse_transducer); }
SyncTransducer load_sync(const std::string& path) { return load(path, parse_as_sync); }
PcpInstance load_pcp(const std::string& path) { return load(path, parse_pcp); }

template <class T>
int emit(const Invocation& inv, std::ostream& out, const T& value) {
  if constexpr (std::is_same_v<T, SyncTransducer>)
    out << (inv.dot ? to_dot(value.general()) : to_text(value));
  else if constexpr (std::is_same_v<T, Dba>)
    out << (inv.dot ? to_dot(value.nba()) : to_text(value));
  else
    out << (inv.dot ? to_dot(value) : to_text(value));
  return 0;
}

int answer(std::ostream& out, bool value, const std::optional<LassoWord>& witness = std::nullopt) {
  out << (value ? "true" : "false") << '\n';
  if (witness) out << witness->to_string() << '\n';
  return value ? 0 : 1;
}

int verdict(std::ostream& out, const Verdict& v) { return answer(out, v.holds, v.counterexample); }

Symbol letter_of(const Invocation& inv, const Alphabet& sigma) {
  return inv.letter ? sigma.symbol(*inv.letter) : static_cast<Symbol>(sigma.size() - 1);
}

ComplementMethod method_of(const std::string& name) {
  static const std::map<std::string, ComplementMethod> methods{
      {"automatic", ComplementMethod::automatic},
      {"rank-based", ComplementMethod::rank_based},
      {"determinization", ComplementMethod::determinization},
      {"breakpoint", ComplementMethod::breakpoint},
      {"deterministic-components", ComplementMethod::deterministic_components}};
  return methods.at(name);
}

/// "1 2 3", "1,2,3" or, for instances with fewer than ten pairs, "123".
IndexSequence parse_sequence(const std::string& text, std::size_t n) {
  IndexSequence s;
  const bool packed = n < 10 && std::all_of(text.begin(), text.end(), [](char c) {
                        return std::isdigit(static_cast<unsigned char>(c)) != 0;
                      });
  if (packed) {
    for (char c : text) s.push_back(static_cast<std::size_t>(c - '0'));
  } else {
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
      std::istringstream words(token);
      std::string w;
      while (words >> w) {
        if (!std::all_of(w.begin(), w.end(),
                         [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }))
          throw ParseError("bad index '" + w + "' in sequence '" + text + "'");
        s.push_back(std::stoul(w));
      }
    }
  }
  if (s.empty()) throw PreconditionError("index sequence must be non-empty");
  for (std::size_t i : s)
    if (i < 1 || i > n)
      throw PreconditionError("index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
  return s;
}

std::string sequence_text(const IndexSequence& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
  return out;
}

/// Alphabet for bare lasso arguments: --alphabet, or their letters sorted.
Alphabet lasso_alphabet(const Invocation& inv, std::initializer_list<std::string> words) {
  if (inv.alphabet) {
    std::istringstream in(*inv.alphabet);
    std::vector<std::string> names;
    for (std::string s; in >> s;) names.push_back(s);
    return Alphabet(names);
  }
  std::vector<std::string> names;
  for (const auto& w : words)
    for (char c : w)
      if (c != '(' && c != ')' && !std::isspace(static_cast<unsigned char>(c)))
        names.emplace_back(1, c);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  if (names.empty()) throw PreconditionError("cannot infer an alphabet; pass --alphabet");
  return Alphabet(names);
}

// ---------------------------------------------------------------- handlers

int cmd_trim(const Invocation& inv, std::ostream& out) {
  auto a = load_automaton(inv.args[0]);
  if (auto* m = std::get_if<DetMuller>(&a)) return emit(inv, out, trim(*m));
  if (auto* d = std::get_if<Dba>(&a)) return emit(inv, out, Dba(trim(d->nba())));
  return emit(inv, out, trim(std::get<Nba>(a)));
}

int cmd_empty(const Invocation& inv, std::ostream& out) {
  auto w = find_accepted_word(load_nba(inv.args[0]));
  return answer(out, !w.has_value(), w);
}

int cmd_member(const Invocation& inv, std::ostream& out) {
  auto a = load_nba(inv.args[0]);
  return answer(out, accepts(a, LassoWord::parse(a.alphabet(), inv.args[1])));
}

int cmd_intersect(const Invocation& inv, std::ostream& out) {
  return emit(inv, out, intersect(load_nba(inv.args[0]), load_nba(inv.args[1])));
}

int cmd_union(const Invocation& inv, std::ostream& out) {
  return emit(inv, out, unite(load_nba(inv.args[0]), load_nba(inv.args[1])));
}

int cmd_complement(const Invocation& inv, std::ostream& out) {
  auto a = load_automaton(inv.args[0]);
  if (auto* m = std::get_if<DetMuller>(&a); m && inv.method == "automatic")
    return emit(inv, out, complement(*m));
  return emit(inv, out, complement(load_nba(inv.args[0]), method_of(inv.method)));
}

int cmd_included(const Invocation& inv, std::ostream& out) {
  return verdict(out, is_included(load_nba(inv.args[0]), load_nba(inv.args[1])));
}

int cmd_equiv(const Invocation& inv, std::ostream& out) {
  return verdict(out, is_equivalent(load_nba(inv.args[0]), load_nba(inv.args[1])));
}

int cmd_closure(const Invocation& inv, std::ostream& out) {
  return emit(inv, out, closure(load_nba(inv.args[0])));
}

int cmd_dense_in(const Invocation& inv, std::ostream& out) {
  return answer(out, is_dense_in(load_nba(inv.args[0]), load_nba(inv.args[1])));
}

int cmd_isolated(const Invocation& inv, std::ostream& out) {
  auto a = load_automaton(inv.args[0]);
  if (auto* m = std::get_if<DetMuller>(&a)) return emit(inv, out, isolated_points(*m));
  if (auto* d = std::get_if<Dba>(&a)) return emit(inv, out, isolated_points(*d));
  return emit(inv, out, isolated_points(Dba(std::get<Nba>(a))));
}

int cmd_dom(const Invocation& inv, std::ostream& out) {
  return emit(inv, out, domain(load_transducer(inv.args[0])));
}

int cmd_im(const Invocation& inv, std::ostream& out) {
  return emit(inv, out, image(load_transducer(inv.args[0])));
}

int cmd_eval(const Invocation& inv, std::ostream& out) {
  auto t = load_transducer(inv.args[0]);
  auto r = evaluate(t, LassoWord::parse(t.input_alphabet(), inv.args[1]), inv.bound);
  for (const auto& y : r.outputs) out << y.to_string() << '\n';
  if (r.truncated) out << "...\n";
  if (r.outputs.empty()) out << "none\n";
  return r.outputs.empty() ? 1 : 0;
}

int cmd_functional(const Invocation& inv, std::ostream& out) {
  auto v = check_functional(load_sync(inv.args[0]));
  answer(out, v.functional);
  if (v.witness)
    out << v.witness->input.to_string() << '\n'
        << v.witness->first_output.to_string() << '\n'
        << v.witness->second_output.to_string() << '\n';
  return v.functional ? 0 : 1;
}

int cmd_nonfunctional(const Invocation& inv, std::ostream& out) {
  auto w = find_nonfunctional_witness(load_transducer(inv.args[0]), inv.max.value_or(6));
  answer(out, w.has_value());
  if (w)
    out << w->input.to_string() << '\n'
        << w->first_output.to_string() << '\n'
        << w->second_output.to_string() << '\n';
  return w ? 0 : 1;
}

int cmd_disc_auto(const Invocation& inv, std::ostream& out) {
  return emit(inv, out, discontinuity_automaton(load_sync(inv.args[0])));
}

int cmd_cont_set(const Invocation& inv, std::ostream& out) {
  return emit(inv, out, continuity_set(load_sync(inv.args[0])));
}

int cmd_is_cont(const Invocation& inv, std::ostream& out) {
  const auto t = load_sync(inv.args[0]);
  if (is_continuous(t)) return answer(out, true);
  return answer(out, false, find_accepted_word(discontinuity_automaton(t)));
}

int cmd_is_cont_at(const Invocation& inv, std::ostream& out) {
  const auto t = load_sync(inv.args[0]);
  return answer(out, is_continuous_at(t, LassoWord::parse(t.input_alphabet(), inv.args[1])));
}

int cmd_pi2_witness(const Invocation& inv, std::ostream& out) {
  const auto a = load_dba(inv.args[0]);
  return emit(inv, out, pi2_witness(a, letter_of(inv, a.alphabet())));
}

int cmd_dense_partition(const Invocation& inv, std::ostream& out) {
  auto [first, second] = dense_partition(load_muller(inv.args[0]));
  out << "# first part\n";
  emit(inv, out, first);
  out << "# second part\n";
  return emit(inv, out, second);
}

int cmd_domain_witness(const Invocation& inv, std::ostream& out) {
  const auto d = load_muller(inv.args[0]);
  return emit(inv, out, witness_on_domain(d, load_dba(inv.args[1]), letter_of(inv, d.alphabet())));
}

int cmd_globalize(const Invocation& inv, std::ostream& out) {
  return emit(inv, out, globalize_pi2(load_nba(inv.args[0]), load_nba(inv.args[1])));
}

int cmd_pcp_solve(const Invocation& inv, std::ostream& out) {
  auto solutions = pcp_solve_bounded(load_pcp(inv.args[0]), inv.max.value_or(6));
  if (inv.primitive) solutions = primitive_solutions(solutions);
  for (const auto& s : solutions) out << sequence_text(s) << '\n';
  return 0;
}

int cmd_pcp_build(const Invocation& inv, std::ostream& out) {
  return emit(inv, out, pcp_transducer(load_pcp(inv.args[0])));
}

int cmd_pcp_build_nested(const Invocation& inv, std::ostream& out) {
  return emit(inv, out, pcp_nested_transducer(load_pcp(inv.args[0])));
}

int cmd_pcp_point(const Invocation& inv, std::ostream& out) {
  const auto p = load_pcp(inv.args[0]);
  return answer(out, pcp_point_continuity(p, parse_sequence(inv.args[1], p.size())));
}

int cmd_pcp_point_nested(const Invocation& inv, std::ostream& out) {
  const auto p = load_pcp(inv.args[0]);
  return answer(out, pcp_nested_point_continuity(p, parse_sequence(inv.args[1], p.size()),
                                                 parse_sequence(inv.args[2], pcp_one().size())));
}

int cmd_pcp_falsify(const Invocation& inv, std::ostream& out) {
  const auto p = load_pcp(inv.args[0]);
  auto w = discontinuity_falsifier(p, parse_sequence(inv.args[1], p.size()), inv.max.value_or(8));
  answer(out, w.has_value());
  if (!w) return 1;
  out << "point " << w->point.to_string() << '\n';
  out << "image " << w->image.to_string() << '\n';
  out << "bound " << w->bound << '\n';
  for (const auto& step : w->steps)
    out << "depth " << step.depth << ' ' << step.approximant.to_string() << " agreement "
        << step.output_agreement << '\n';
  return 0;
}

int cmd_normalize(const Invocation& inv, std::ostream& out) {
  const auto sigma = lasso_alphabet(inv, {inv.args[0]});
  out << lasso_normalize(LassoWord::parse(sigma, inv.args[0])).to_string() << '\n';
  return 0;
}

int cmd_lasso_eq(const Invocation& inv, std::ostream& out) {
  const auto sigma = lasso_alphabet(inv, {inv.args[0], inv.args[1]});
  return answer(out, lasso_equal(LassoWord::parse(sigma, inv.args[0]),
                                 LassoWord::parse(sigma, inv.args[1])));
}

int cmd_divergence(const Invocation& inv, std::ostream& out) {
  const auto sigma = lasso_alphabet(inv, {inv.args[0], inv.args[1]});
  auto d = prefix_divergence(LassoWord::parse(sigma, inv.args[0]),
                             LassoWord::parse(sigma, inv.args[1]));
  if (d)
    out << *d << '\n';
  else
    out << "equal\n";
  return 0;
}

int cmd_to_nba(const Invocation& inv, std::ostream& out) {
  return emit(inv, out, to_nba(load_muller(inv.args[0])));
}

int cmd_prefix_dfa(const Invocation& inv, std::ostream& out) {
  return emit(inv, out, prefix_dfa(load_nba(inv.args[0])));
}

int cmd_trim_transducer(const Invocation& inv, std::ostream& out) {
  return emit(inv, out, trim(load_transducer(inv.args[0])));
}

const std::vector<Command>& table() {
  static const std::vector<Command> cmds{
      {{"trim", "trim", "Remove useless states of an automaton"}, {"automaton"}, dot_flag, cmd_trim},
      {{"empty", "find_accepted_word", "Emptiness; prints an accepted lasso otherwise"},
       {"automaton"}, 0, cmd_empty},
      {{"member", "accepts", "Lasso membership"}, {"automaton", "lasso"}, 0, cmd_member},
      {{"intersect", "intersect", "Product automaton"}, {"left", "right"}, dot_flag, cmd_intersect},
      {{"union", "unite", "Union automaton"}, {"left", "right"}, dot_flag, cmd_union},
      {{"complement", "complement", "Complement (Muller input stays Muller)"}, {"automaton"},
       dot_flag | method_flag, cmd_complement},
      {{"included", "is_included", "Language inclusion; prints a counterexample"},
       {"left", "right"}, 0, cmd_included},
      {{"equiv", "is_equivalent", "Language equivalence; prints a counterexample"},
       {"left", "right"}, 0, cmd_equiv},
      {{"closure", "closure", "Topological closure"}, {"automaton"}, dot_flag, cmd_closure},
      {{"dense-in", "is_dense_in", "Whether the first language is dense in the second"},
       {"candidate", "set"}, 0, cmd_dense_in},
      {{"isolated", "isolated_points", "Isolated points of a deterministic language"},
       {"automaton"}, dot_flag, cmd_isolated},
      {{"dom", "domain", "Domain of a transducer"}, {"transducer"}, dot_flag, cmd_dom},
      {{"im", "image", "Image of a transducer"}, {"transducer"}, dot_flag, cmd_im},
      {{"eval", "evaluate", "Outputs of a transducer on a lasso"}, {"transducer", "lasso"},
       bound_flag, cmd_eval},
      {{"functional", "check_functional", "Functionality of a synchronous transducer"},
       {"transducer"}, 0, cmd_functional},
      {{"disc-auto", "discontinuity_automaton", "Discontinuity points"}, {"transducer"},
       dot_flag, cmd_disc_auto},
      {{"cont-set", "continuity_set", "Continuity set"}, {"transducer"}, dot_flag, cmd_cont_set},
      {{"is-cont", "is_continuous", "Global continuity; prints a discontinuity point"},
       {"transducer"}, 0, cmd_is_cont},
      {{"is-cont-at", "is_continuous_at", "Continuity at a lasso"}, {"transducer", "lasso"}, 0,
       cmd_is_cont_at},
      {{"pi2-witness", "pi2_witness", "Function whose continuity set is L(A)"}, {"dba"},
       dot_flag | letter_flag, cmd_pi2_witness},
      {{"dense-partition", "dense_partition", "Split into two dense parts"}, {"muller"},
       dot_flag, cmd_dense_partition},
      {{"domain-witness", "witness_on_domain", "Function on L(D) with continuity set X"},
       {"domain", "set"}, dot_flag | letter_flag, cmd_domain_witness},
      {{"globalize", "globalize_pi2", "X union the complement of D"}, {"set", "domain"},
       dot_flag, cmd_globalize},
      {{"pcp-solve", "pcp_solve_bounded", "Bounded PCP solutions, one per line"}, {"instance"},
       max_flag | primitive_flag, cmd_pcp_solve},
      {{"pcp-build", "pcp_transducer", "Transducer for a PCP instance"}, {"instance"}, dot_flag,
       cmd_pcp_build},
      {{"pcp-build-nested", "pcp_nested_transducer", "Transducer with a nested PCP block"},
       {"instance"}, dot_flag, cmd_pcp_build_nested},
      {{"pcp-point", "pcp_point_continuity", "Continuity at points with a given C-prefix"},
       {"instance", "sequence"}, 0, cmd_pcp_point},
      {{"pcp-falsify", "discontinuity_falsifier", "Metric witnesses of discontinuity"},
       {"instance", "sequence"}, max_flag, cmd_pcp_falsify},
      {{"normalize", "lasso_normalize", "Canonical form of a lasso"}, {"lasso"}, alphabet_flag,
       cmd_normalize},
      {{"lasso-eq", "lasso_equal", "Whether two lassos denote the same word"}, {"left", "right"},
       alphabet_flag, cmd_lasso_eq},
      {{"divergence", "prefix_divergence", "Longest common prefix length"}, {"left", "right"},
       alphabet_flag, cmd_divergence},
      {{"to-nba", "to_nba", "Buchi automaton for a Muller automaton"}, {"muller"}, dot_flag,
       cmd_to_nba},
      {{"prefix-dfa", "prefix_dfa", "Automaton of the finite prefixes"}, {"automaton"}, dot_flag,
       cmd_prefix_dfa},
      {{"nonfunctional", "find_nonfunctional_witness", "Bounded search for two outputs"},
       {"transducer"}, max_flag, cmd_nonfunctional},
      {{"trim-transducer", "trim_transducer", "Remove useless transducer states"},
       {"transducer"}, dot_flag, cmd_trim_transducer},
      {{"pcp-point-nested", "pcp_nested_point_continuity",
        "Continuity for the nested construction"},
       {"instance", "sequence", "nested-sequence"}, 0, cmd_pcp_point_nested},
  };
  return cmds;
}

}  // namespace

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> infos = [] {
    std::vector<CommandInfo> out;
    for (const auto& c : table()) out.push_back(c.info);
    return out;
  }();
  return infos;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continuity of synchronous functions on infinite words", "contset"};
  app.require_subcommand(1, 1);
  Invocation inv;
  std::string out_path;
  std::map<const CLI::App*, const Command*> by_app;
  // Options bind to these slots, so size them once up front.
  for (const auto& c : table()) inv.args.resize(std::max(inv.args.size(), c.args.size()));
  for (const auto& c : table()) {
    auto* sub = app.add_subcommand(c.info.name, c.info.summary);
    by_app[sub] = &c;
    for (std::size_t i = 0; i < c.args.size(); ++i)
      sub->add_option(c.args[i], inv.args[i])->required();
    sub->add_option("--out", out_path, "Write the result to a file");
    if (c.flags & dot_flag) sub->add_flag("--dot", inv.dot, "Graphviz output");
    if (c.flags & max_flag) sub->add_option("--max", inv.max, "Search bound");
    if (c.flags & bound_flag) sub->add_option("--bound", inv.bound, "Maximum number of outputs");
    if (c.flags & letter_flag)
      sub->add_option("--letter", inv.letter, "Distinguished letter (default: last)");
    if (c.flags & method_flag)
      sub->add_option("--method", inv.method, "Complementation method")
          ->check(CLI::IsMember({"automatic", "rank-based", "determinization", "breakpoint",
                                 "deterministic-components"}));
    if (c.flags & alphabet_flag)
      sub->add_option("--alphabet", inv.alphabet, "Space separated letters");
    if (c.flags & primitive_flag)
      sub->add_flag("--primitive", inv.primitive, "Only solutions that are not concatenations");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const Command* command = by_app.at(app.get_subcommands().front());
  std::ostringstream buffer;
  int code = 0;
  try {
    if (inv.bound == 0) throw PreconditionError("--bound must be at least 1");
    code = command->handler(inv, out_path.empty() ? out : buffer);
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  if (!out_path.empty()) {
    std::ofstream file(out_path, std::ios::binary);
    if (!(file << buffer.str())) {
      err << "error: cannot write '" << out_path << "'\n";
      return 2;
    }
  }
  return code;
}

}  // namespace contset::cli
