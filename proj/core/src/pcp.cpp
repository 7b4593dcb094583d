#include "contset/pcp.hpp"

#include <algorithm>
#include <set>

#include "contset/error.hpp"

namespace contset {

PcpInstance::PcpInstance(Alphabet gamma, std::vector<Word> u, std::vector<Word> v)
    : gamma_(std::move(gamma)), u_(std::move(u)), v_(std::move(v)) {
  if (gamma_.size() < 2) throw PreconditionError("PCP alphabet needs at least two letters");
  if (u_.empty() || u_.size() != v_.size())
    throw PreconditionError("PCP word lists must be non-empty and of equal length");
  for (const auto* list : {&u_, &v_}) {
    for (const Word& w : *list) {
      if (w.empty()) throw PreconditionError("PCP words must be non-empty");
      for (Symbol s : w)
        if (!gamma_.contains(s)) throw PreconditionError("PCP letter outside the alphabet");
    }
  }
}

PcpInstance pcp_one() {
  Alphabet g({"c", "d"});
  const Symbol c = 0, d = 1;
  return PcpInstance(g, {{c, c}, {d}, {d}}, {{c}, {c}, {d, d}});
}

namespace {

// Concatenation of the words selected by s, checking the indices.
Word concat(const std::vector<Word>& words, const IndexSequence& s) {
  Word out;
  for (std::size_t i : s) {
    if (i < 1 || i > words.size())
      throw PreconditionError("index " + std::to_string(i) + " out of range");
    out.insert(out.end(), words[i - 1].begin(), words[i - 1].end());
  }
  return out;
}

bool length_lex(const IndexSequence& a, const IndexSequence& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

std::vector<IndexSequence> pcp_solve_bounded(const PcpInstance& inst, std::size_t k) {
  // Depth-first search over partial sequences; `overhang` is the part of the
  // longer side not yet matched, `top` tells which side is longer.
  std::vector<IndexSequence> solutions;
  IndexSequence seq;
  auto extend = [&](auto&& self, const Word& overhang, bool top) -> void {
    if (seq.size() == k) return;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      // Append u_i to the top and v_i to the bottom.
      Word upper = top ? overhang : Word{};
      Word lower = top ? Word{} : overhang;
      upper.insert(upper.end(), inst.u()[i].begin(), inst.u()[i].end());
      lower.insert(lower.end(), inst.v()[i].begin(), inst.v()[i].end());
      const std::size_t common = std::min(upper.size(), lower.size());
      if (!std::equal(upper.begin(), upper.begin() + static_cast<long>(common), lower.begin()))
        continue;
      bool next_top = upper.size() >= lower.size();
      const Word& longer = next_top ? upper : lower;
      Word rest(longer.begin() + static_cast<long>(common), longer.end());
      seq.push_back(i + 1);
      if (rest.empty()) solutions.push_back(seq);
      self(self, rest, next_top);
      seq.pop_back();
    }
  };
  extend(extend, Word{}, true);
  std::sort(solutions.begin(), solutions.end(), length_lex);
  return solutions;
}

std::vector<IndexSequence> primitive_solutions(const std::vector<IndexSequence>& solutions) {
  std::set<IndexSequence> known(solutions.begin(), solutions.end());
  std::vector<IndexSequence> out;
  for (const auto& s : solutions) {
    bool split = false;
    for (std::size_t cut = 1; cut < s.size() && !split; ++cut)
      split = known.count(IndexSequence(s.begin(), s.begin() + static_cast<long>(cut))) > 0;
    if (!split) out.push_back(s);
  }
  return out;
}

bool is_solution(const PcpInstance& inst, const IndexSequence& s) {
  if (s.empty()) return false;
  return concat(inst.u(), s) == concat(inst.v(), s);
}

namespace {

struct Layout {
  Alphabet input;
  Alphabet output;
  PcpLetters in;
  Symbol out_a, out_b;
  Symbol t_offset = 0;      // first letter used for the nested instance
};

Layout make_layout(const PcpInstance& inst, bool nested) {
  const PcpInstance one = pcp_one();
  std::vector<std::string> used(inst.gamma().names().begin(), inst.gamma().names().end());
  auto fresh = [&](const std::string& base) {
    std::string name = fresh_token(base, {}, used);
    used.push_back(name);
    return name;
  };
  std::vector<std::string> t_names;
  if (nested)
    for (const auto& name : one.gamma().names()) t_names.push_back(fresh(name));
  std::vector<std::string> c_names, d_names;
  for (std::size_t i = 1; i <= inst.size(); ++i) c_names.push_back(fresh("c" + std::to_string(i)));
  if (nested)
    for (std::size_t j = 1; j <= one.size(); ++j) d_names.push_back(fresh("d" + std::to_string(j)));
  const std::string a_name = fresh("a"), b_name = fresh("b");

  std::vector<std::string> in_names = c_names;
  in_names.insert(in_names.end(), d_names.begin(), d_names.end());
  in_names.push_back(a_name);
  in_names.push_back(b_name);
  std::vector<std::string> out_names(inst.gamma().names().begin(), inst.gamma().names().end());
  const auto t_offset = static_cast<Symbol>(out_names.size());
  out_names.insert(out_names.end(), t_names.begin(), t_names.end());
  out_names.push_back(a_name);
  out_names.push_back(b_name);

  Layout l{Alphabet(in_names), Alphabet(out_names), {}, 0, 0, t_offset};
  for (std::size_t i = 0; i < c_names.size(); ++i) l.in.c.push_back(static_cast<Symbol>(i));
  for (std::size_t j = 0; j < d_names.size(); ++j)
    l.in.d.push_back(static_cast<Symbol>(c_names.size() + j));
  l.in.a = static_cast<Symbol>(in_names.size() - 2);
  l.in.b = static_cast<Symbol>(in_names.size() - 1);
  l.out_a = static_cast<Symbol>(out_names.size() - 2);
  l.out_b = static_cast<Symbol>(out_names.size() - 1);
  return l;
}

Transducer build(const PcpInstance& inst, bool nested) {
  const PcpInstance one = pcp_one();
  Layout l = make_layout(inst, nested);
  auto shift = [&](const Word& w) {
    Word out;
    for (Symbol s : w) out.push_back(s + l.t_offset);
    return out;
  };
  // States: 0 initial; per side (u then v): reading C, reading D, then the
  // tail automaton over A.
  constexpr State init = 0, uc = 1, ud = 2, ua = 3, ub = 4, vc = 5, vd = 6, v1 = 7, v2 = 8,
                  count = 9;
  std::vector<TransducerTransition> ts;
  auto side = [&](const std::vector<Word>& words, const std::vector<Word>& nested_words,
                  State c_state, State d_state) {
    for (std::size_t i = 0; i < inst.size(); ++i) {
      ts.push_back({init, {l.in.c[i]}, words[i], c_state});
      ts.push_back({c_state, {l.in.c[i]}, words[i], c_state});
    }
    if (!nested) return c_state;
    for (std::size_t j = 0; j < one.size(); ++j) {
      ts.push_back({c_state, {l.in.d[j]}, shift(nested_words[j]), d_state});
      ts.push_back({d_state, {l.in.d[j]}, shift(nested_words[j]), d_state});
    }
    return d_state;
  };
  const Word a_in{l.in.a}, b_in{l.in.b}, a_out{l.out_a}, b_out{l.out_b};
  // Infinitely many a: u-images.
  State u_last = side(inst.u(), one.u(), uc, ud);
  for (State from : {u_last, ua, ub}) {
    ts.push_back({from, a_in, a_out, ua});
    ts.push_back({from, b_in, b_out, ub});
  }
  // Finitely many a: v-images; v2 only reads b.
  State v_last = side(inst.v(), one.v(), vc, vd);
  for (State from : {v_last, v1}) {
    ts.push_back({from, a_in, a_out, v1});
    ts.push_back({from, b_in, b_out, v1});
    ts.push_back({from, b_in, b_out, v2});
  }
  ts.push_back({v2, b_in, b_out, v2});
  return trim(Transducer(l.input, l.output, count, init, {ua, v2}, std::move(ts)));
}

}  // namespace

Transducer pcp_transducer(const PcpInstance& inst) { return build(inst, false); }
Transducer pcp_nested_transducer(const PcpInstance& inst) { return build(inst, true); }

PcpLetters pcp_letters(const Transducer& t, const PcpInstance& inst) {
  const std::size_t n = inst.size();
  const std::size_t size = t.input_alphabet().size();
  if (size != n + 2 && size != n + 5)
    throw PreconditionError("transducer was not built for this instance");
  PcpLetters l;
  for (std::size_t i = 0; i < n; ++i) l.c.push_back(static_cast<Symbol>(i));
  for (std::size_t j = n; j + 2 < size; ++j) l.d.push_back(static_cast<Symbol>(j));
  l.a = static_cast<Symbol>(size - 2);
  l.b = static_cast<Symbol>(size - 1);
  return l;
}

bool pcp_point_continuity(const PcpInstance& inst, const IndexSequence& s) {
  if (s.empty()) throw PreconditionError("index sequence must be non-empty");
  return is_solution(inst, s);
}

bool pcp_nested_point_continuity(const PcpInstance& inst, const IndexSequence& s,
                                 const IndexSequence& j) {
  if (s.empty() || j.empty()) throw PreconditionError("index sequences must be non-empty");
  return is_solution(inst, s) && is_solution(pcp_one(), j);
}

std::optional<DiscontinuityWitness> discontinuity_falsifier(const PcpInstance& inst,
                                                            const IndexSequence& s,
                                                            std::size_t k) {
  if (s.empty()) throw PreconditionError("index sequence must be non-empty");
  const Transducer t = pcp_transducer(inst);
  const PcpLetters l = pcp_letters(t, inst);
  Word c_prefix;
  for (std::size_t i : s) {
    if (i < 1 || i > inst.size())
      throw PreconditionError("index " + std::to_string(i) + " out of range");
    c_prefix.push_back(l.c[i - 1]);
  }
  const std::size_t bound = std::min(concat(inst.u(), s).size(), concat(inst.v(), s).size());
  auto image_of = [&](const LassoWord& x) {
    auto r = evaluate(t, x, 1);
    if (r.outputs.empty()) throw Error("point " + x.to_string() + " has no image");
    return r.outputs.front();
  };
  LassoWord x(t.input_alphabet(), c_prefix, {l.a});
  DiscontinuityWitness w{x, image_of(x), bound, {}};
  for (std::size_t depth = 1; depth <= k; ++depth) {
    Word prefix = c_prefix;
    prefix.insert(prefix.end(), depth, l.a);
    LassoWord y(t.input_alphabet(), std::move(prefix), {l.b});
    auto agreement = prefix_divergence(w.image, image_of(y));
    if (!agreement || *agreement > bound) return std::nullopt;
    w.steps.push_back({depth, std::move(y), *agreement});
  }
  return w;
}

}  // namespace contset
