#include "contset/io.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "contset/error.hpp"
#include "contset/omega.hpp"

namespace contset {

namespace {

struct Line {
  std::size_t number;
  std::string value;
};

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string trim_ws(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// `key: value` lines grouped by key, in file order.
class Document {
 public:
  explicit Document(std::string_view text) {
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view raw = text.substr(pos, end - pos);
      pos = end + 1;
      ++number;
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      std::string line = trim_ws(raw);
      if (line.empty()) continue;
      auto colon = line.find(':');
      if (colon == std::string::npos) fail(number, "expected 'key: value'");
      std::string key = trim_ws(line.substr(0, colon));
      entries_[key].push_back({number, trim_ws(line.substr(colon + 1))});
    }
  }

  [[noreturn]] static void fail(std::size_t line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
  }

  void allow(std::initializer_list<std::string_view> keys) const {
    for (const auto& [key, lines] : entries_) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end())
        fail(lines.front().number, "unknown key '" + key + "'");
    }
  }

  const Line& one(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ParseError("missing '" + key + ":' line");
    if (it->second.size() > 1) fail(it->second[1].number, "repeated '" + key + ":' line");
    return it->second.front();
  }

  const Line* optional(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    if (it->second.size() > 1) fail(it->second[1].number, "repeated '" + key + ":' line");
    return &it->second.front();
  }

  std::vector<Line> all(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? std::vector<Line>{} : it->second;
  }

 private:
  std::map<std::string, std::vector<Line>> entries_;
};

std::size_t parse_number(const Line& line, std::string_view tok) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    Document::fail(line.number, "expected a number, got '" + std::string(tok) + "'");
  return v;
}

State parse_state(const Line& line, std::string_view tok, std::size_t n) {
  std::size_t v = parse_number(line, tok);
  if (v >= n) Document::fail(line.number, "state " + std::string(tok) + " out of range");
  return static_cast<State>(v);
}

std::vector<State> parse_states(const Line& line, std::size_t n) {
  std::vector<State> out;
  for (const auto& tok : split_ws(line.value)) out.push_back(parse_state(line, tok, n));
  return out;
}

Alphabet parse_alphabet(const Line& line) {
  try {
    return Alphabet(split_ws(line.value));
  } catch (const PreconditionError& e) {
    Document::fail(line.number, e.what());
  }
}

Word parse_word(const Line& line, const Alphabet& alphabet, const std::vector<std::string>& toks) {
  if (toks.size() == 1 && toks[0] == "eps") return {};
  Word w;
  for (const auto& t : toks) {
    try {
      Word part = alphabet.tokenize(t);
      w.insert(w.end(), part.begin(), part.end());
    } catch (const PreconditionError& e) {
      Document::fail(line.number, e.what());
    }
  }
  return w;
}

template <class F>
auto wrap(F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

std::string join_states(const std::vector<State>& states) {
  std::string out;
  for (State q : states) out += ' ' + std::to_string(q);
  return out;
}

std::string word_text(const Alphabet& a, const Word& w) {
  if (w.empty()) return "eps";
  return a.spell(w);
}

std::string alphabet_text(const Alphabet& a) {
  std::string out;
  for (const auto& n : a.names()) out += ' ' + n;
  return out;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

Automaton parse_automaton(std::string_view text) {
  Document doc(text);
  doc.allow({"kind", "alphabet", "states", "initial", "accepting", "table", "trans"});
  const Line& kind_line = doc.one("kind");
  const std::string kind = kind_line.value;
  if (kind != "nba" && kind != "dba" && kind != "muller")
    Document::fail(kind_line.number, "unknown automaton kind '" + kind + "'");
  Alphabet alphabet = parse_alphabet(doc.one("alphabet"));
  const Line& states_line = doc.one("states");
  const std::size_t n = parse_number(states_line, states_line.value);
  if (n == 0) Document::fail(states_line.number, "need at least one state");
  const Line& init_line = doc.one("initial");
  State initial = parse_state(init_line, init_line.value, n);
  std::vector<Transition> ts;
  for (const auto& line : doc.all("trans")) {
    auto toks = split_ws(line.value);
    if (toks.size() != 3) Document::fail(line.number, "expected 'trans: src symbol dst'");
    auto sym = alphabet.find(toks[1]);
    if (!sym) Document::fail(line.number, "unknown symbol '" + toks[1] + "'");
    ts.push_back({parse_state(line, toks[0], n), *sym, parse_state(line, toks[2], n)});
  }
  if (kind == "muller") {
    if (doc.optional("accepting")) throw ParseError("Muller automata use 'table:' lines");
    std::vector<std::vector<State>> table;
    for (const auto& line : doc.all("table")) {
      table.push_back(parse_states(line, n));
      if (table.back().empty()) Document::fail(line.number, "empty table entry");
    }
    return wrap([&]() -> Automaton {
      return DetMuller(alphabet, n, initial, std::move(ts), std::move(table));
    });
  }
  if (!doc.all("table").empty()) throw ParseError("Buchi automata use 'accepting:'");
  std::vector<State> acc;
  if (const Line* line = doc.optional("accepting")) acc = parse_states(*line, n);
  Nba nba(alphabet, n, initial, std::move(acc), std::move(ts));
  if (kind == "dba") return wrap([&]() -> Automaton { return Dba(std::move(nba)); });
  return nba;
}

Transducer parse_transducer(std::string_view text) {
  Document doc(text);
  doc.allow({"kind", "alphabet", "output-alphabet", "states", "initial", "accepting", "trans"});
  const Line& kind_line = doc.one("kind");
  if (kind_line.value != "transducer" && kind_line.value != "sync-transducer")
    Document::fail(kind_line.number, "unknown transducer kind '" + kind_line.value + "'");
  Alphabet in = parse_alphabet(doc.one("alphabet"));
  Alphabet out = parse_alphabet(doc.one("output-alphabet"));
  const Line& states_line = doc.one("states");
  const std::size_t n = parse_number(states_line, states_line.value);
  if (n == 0) Document::fail(states_line.number, "need at least one state");
  const Line& init_line = doc.one("initial");
  State initial = parse_state(init_line, init_line.value, n);
  std::vector<State> acc;
  if (const Line* line = doc.optional("accepting")) acc = parse_states(*line, n);
  std::vector<TransducerTransition> ts;
  for (const auto& line : doc.all("trans")) {
    auto slash = line.value.find('/');
    if (slash == std::string::npos)
      Document::fail(line.number, "expected 'trans: src input / output dst'");
    auto left = split_ws(line.value.substr(0, slash));
    auto right = split_ws(line.value.substr(slash + 1));
    if (left.size() < 2 || right.size() < 2)
      Document::fail(line.number, "expected 'trans: src input / output dst'");
    State src = parse_state(line, left[0], n);
    State dst = parse_state(line, right.back(), n);
    Word iw = parse_word(line, in, {left.begin() + 1, left.end()});
    Word ow = parse_word(line, out, {right.begin(), right.end() - 1});
    ts.push_back({src, std::move(iw), std::move(ow), dst});
  }
  Transducer t(in, out, n, initial, std::move(acc), std::move(ts));
  if (kind_line.value == "sync-transducer" && !t.is_synchronous())
    Document::fail(kind_line.number, "sync-transducer labels must be letter pairs");
  return t;
}

PcpInstance parse_pcp(std::string_view text) {
  Document doc(text);
  doc.allow({"n", "gamma", "u", "v"});
  const Line& n_line = doc.one("n");
  const std::size_t n = parse_number(n_line, n_line.value);
  Alphabet gamma = parse_alphabet(doc.one("gamma"));
  auto words = [&](const std::string& key) {
    const Line& line = doc.one(key);
    std::vector<Word> out;
    for (const auto& tok : split_ws(line.value)) out.push_back(parse_word(line, gamma, {tok}));
    if (out.size() != n)
      Document::fail(line.number, "expected " + std::to_string(n) + " words");
    return out;
  };
  auto u = words("u");
  auto v = words("v");
  return wrap([&] { return PcpInstance(gamma, std::move(u), std::move(v)); });
}

Nba parse_as_nba(std::string_view text) {
  return std::visit(
      [](const auto& a) -> Nba {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Nba>) return a;
        else if constexpr (std::is_same_v<T, Dba>) return a.nba();
        else return to_nba(a);
      },
      parse_automaton(text));
}

Dba parse_as_dba(std::string_view text) {
  auto a = parse_automaton(text);
  if (auto* d = std::get_if<Dba>(&a)) return *d;
  if (auto* n = std::get_if<Nba>(&a)) return wrap([&] { return Dba(*n); });
  throw ParseError("expected a deterministic Buchi automaton");
}

DetMuller parse_as_muller(std::string_view text) {
  auto a = parse_automaton(text);
  if (auto* m = std::get_if<DetMuller>(&a)) return *m;
  throw ParseError("expected a Muller automaton (kind: muller)");
}

SyncTransducer parse_as_sync(std::string_view text) {
  auto t = parse_transducer(text);
  return wrap([&] { return SyncTransducer(std::move(t)); });
}

namespace {

std::string buchi_text(const Nba& a, const char* kind) {
  std::string out = std::string("kind: ") + kind + "\n";
  out += "alphabet:" + alphabet_text(a.alphabet()) + "\n";
  out += "states: " + std::to_string(a.num_states()) + "\n";
  out += "initial: " + std::to_string(a.initial()) + "\n";
  out += "accepting:" + join_states(a.accepting_states()) + "\n";
  for (const auto& t : a.transitions())
    out += "trans: " + std::to_string(t.src) + ' ' + a.alphabet().name(t.symbol) + ' ' +
           std::to_string(t.dst) + "\n";
  return out;
}

}  // namespace

std::string to_text(const Nba& a) { return buchi_text(a, "nba"); }
std::string to_text(const Dba& a) { return buchi_text(a.nba(), "dba"); }

std::string to_text(const DetMuller& m) {
  std::string out = "kind: muller\n";
  out += "alphabet:" + alphabet_text(m.alphabet()) + "\n";
  out += "states: " + std::to_string(m.num_states()) + "\n";
  out += "initial: " + std::to_string(m.initial()) + "\n";
  for (const auto& set : m.table()) out += "table:" + join_states(set) + "\n";
  for (const auto& t : m.transitions())
    out += "trans: " + std::to_string(t.src) + ' ' + m.alphabet().name(t.symbol) + ' ' +
           std::to_string(t.dst) + "\n";
  return out;
}

std::string to_text(const Automaton& a) {
  return std::visit([](const auto& x) { return to_text(x); }, a);
}

std::string to_text(const Transducer& t) {
  std::string out = t.is_synchronous() ? "kind: sync-transducer\n" : "kind: transducer\n";
  out += "alphabet:" + alphabet_text(t.input_alphabet()) + "\n";
  out += "output-alphabet:" + alphabet_text(t.output_alphabet()) + "\n";
  out += "states: " + std::to_string(t.num_states()) + "\n";
  out += "initial: " + std::to_string(t.initial()) + "\n";
  out += "accepting:" + join_states(t.accepting_states()) + "\n";
  for (const auto& tr : t.transitions())
    out += "trans: " + std::to_string(tr.src) + ' ' + word_text(t.input_alphabet(), tr.input) +
           " / " + word_text(t.output_alphabet(), tr.output) + ' ' + std::to_string(tr.dst) + "\n";
  return out;
}

std::string to_text(const SyncTransducer& t) { return to_text(t.general()); }

std::string to_text(const PcpInstance& inst) {
  std::string out = "n: " + std::to_string(inst.size()) + "\n";
  out += "gamma:" + alphabet_text(inst.gamma()) + "\n";
  auto words = [&](const std::vector<Word>& ws) {
    std::string s;
    for (const auto& w : ws) {
      std::string spelled;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0 && !inst.gamma().single_char()) spelled += '.';
        spelled += inst.gamma().name(w[i]);
      }
      s += ' ' + spelled;
    }
    return s;
  };
  out += "u:" + words(inst.u()) + "\n";
  out += "v:" + words(inst.v()) + "\n";
  return out;
}

std::string to_text(const PrefixDfa& d) {
  std::string out = "kind: prefix-dfa\n";
  out += "alphabet:" + alphabet_text(d.alphabet()) + "\n";
  out += "states: " + std::to_string(d.num_states()) + "\n";
  out += "initial: " + std::to_string(d.initial()) + "\n";
  out += "sink: " + std::to_string(d.sink()) + "\n";
  for (State q = 0; q < d.num_states(); ++q)
    for (Symbol a = 0; a < d.alphabet().size(); ++a)
      out += "trans: " + std::to_string(q) + ' ' + d.alphabet().name(a) + ' ' +
             std::to_string(d.next(q, a)) + "\n";
  return out;
}

namespace {

std::string dot_header(State initial) {
  return "digraph G {\n  rankdir=LR;\n  start [shape=point];\n  start -> " +
         std::to_string(initial) + ";\n";
}

}  // namespace

std::string to_dot(const Nba& a) {
  std::string out = dot_header(a.initial());
  for (State q = 0; q < a.num_states(); ++q)
    out += "  " + std::to_string(q) +
           (a.is_accepting(q) ? " [shape=doublecircle];\n" : " [shape=circle];\n");
  for (const auto& t : a.transitions())
    out += "  " + std::to_string(t.src) + " -> " + std::to_string(t.dst) +
           " [label=" + quote(a.alphabet().name(t.symbol)) + "];\n";
  return out + "}\n";
}

std::string to_dot(const DetMuller& m) {
  std::string out = dot_header(m.initial());
  std::string table;
  for (const auto& set : m.table()) table += "{" + join_states(set).substr(1) + "} ";
  out += "  label=" + quote("table: " + table) + ";\n";
  for (State q = 0; q < m.num_states(); ++q) out += "  " + std::to_string(q) + " [shape=circle];\n";
  for (const auto& t : m.transitions())
    out += "  " + std::to_string(t.src) + " -> " + std::to_string(t.dst) +
           " [label=" + quote(m.alphabet().name(t.symbol)) + "];\n";
  return out + "}\n";
}

std::string to_dot(const Transducer& t) {
  std::string out = dot_header(t.initial());
  for (State q = 0; q < t.num_states(); ++q)
    out += "  " + std::to_string(q) +
           (t.is_accepting(q) ? " [shape=doublecircle];\n" : " [shape=circle];\n");
  for (const auto& tr : t.transitions())
    out += "  " + std::to_string(tr.src) + " -> " + std::to_string(tr.dst) + " [label=" +
           quote(word_text(t.input_alphabet(), tr.input) + "|" +
                 word_text(t.output_alphabet(), tr.output)) +
           "];\n";
  return out + "}\n";
}

std::string to_dot(const PrefixDfa& d) {
  std::string out = dot_header(d.initial());
  for (State q = 0; q < d.num_states(); ++q)
    out += "  " + std::to_string(q) +
           (d.is_live(q) ? " [shape=doublecircle];\n" : " [shape=box];\n");
  for (State q = 0; q < d.num_states(); ++q)
    for (Symbol a = 0; a < d.alphabet().size(); ++a)
      out += "  " + std::to_string(q) + " -> " + std::to_string(d.next(q, a)) +
             " [label=" + quote(d.alphabet().name(a)) + "];\n";
  return out + "}\n";
}

}  // namespace contset
