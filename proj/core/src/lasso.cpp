#include "contset/lasso.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "contset/error.hpp"

namespace contset {

namespace {

void check_word(const Alphabet& alphabet, const Word& w) {
  for (Symbol s : w) {
    if (!alphabet.contains(s))
      throw PreconditionError("lasso letter outside the alphabet");
  }
}

Word primitive_root(const Word& v) {
  const std::size_t n = v.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = v[i] == v[i - p];
    if (periodic) return Word(v.begin(), v.begin() + static_cast<long>(p));
  }
  return v;
}

}  // namespace

LassoWord::LassoWord(Alphabet alphabet, Word prefix, Word loop)
    : alphabet_(std::move(alphabet)),
      prefix_(std::move(prefix)),
      loop_(std::move(loop)) {
  if (loop_.empty()) throw PreconditionError("lasso loop must not be empty");
  check_word(alphabet_, prefix_);
  check_word(alphabet_, loop_);
}

Symbol LassoWord::at(std::size_t i) const noexcept {
  if (i < prefix_.size()) return prefix_[i];
  return loop_[(i - prefix_.size()) % loop_.size()];
}

Word LassoWord::take(std::size_t n) const {
  Word out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = at(i);
  return out;
}

LassoWord LassoWord::normalized() const {
  Word loop = primitive_root(loop_);
  Word prefix = prefix_;
  while (!prefix.empty() && prefix.back() == loop.back()) {
    prefix.pop_back();
    std::rotate(loop.rbegin(), loop.rbegin() + 1, loop.rend());
  }
  return LassoWord(alphabet_, std::move(prefix), std::move(loop));
}

bool LassoWord::is_normalized() const {
  LassoWord n = normalized();
  return n.prefix_ == prefix_ && n.loop_ == loop_;
}

std::string LassoWord::to_string() const {
  if (alphabet_.single_char()) {
    return alphabet_.spell(prefix_) + "(" + alphabet_.spell(loop_) + ")";
  }
  std::string out = alphabet_.spell(prefix_);
  if (!out.empty()) out += ' ';
  out += "( " + alphabet_.spell(loop_) + " )";
  return out;
}

LassoWord LassoWord::parse(const Alphabet& alphabet, std::string_view text) {
  auto open = text.find('(');
  auto close = text.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos ||
      close < open) {
    throw ParseError("lasso '" + std::string(text) + "' must look like u(v)");
  }
  for (char ch : text.substr(close + 1)) {
    if (!std::isspace(static_cast<unsigned char>(ch)))
      throw ParseError("trailing text after lasso loop");
  }
  try {
    Word u = alphabet.tokenize(text.substr(0, open));
    Word v = alphabet.tokenize(text.substr(open + 1, close - open - 1));
    if (v.empty()) throw ParseError("lasso loop must not be empty");
    return LassoWord(alphabet, std::move(u), std::move(v));
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("lasso: ") + e.what());
  }
}

LassoWord lasso_normalize(const LassoWord& w) { return w.normalized(); }

std::optional<std::size_t> prefix_divergence(const LassoWord& x,
                                             const LassoWord& y) {
  require_same_alphabet(x.alphabet(), y.alphabet(), "prefix_divergence");
  const std::size_t horizon =
      std::max(x.prefix().size(), y.prefix().size()) +
      std::lcm(x.loop().size(), y.loop().size());
  for (std::size_t i = 0; i < horizon; ++i) {
    if (x.at(i) != y.at(i)) return i;
  }
  return std::nullopt;
}

bool lasso_equal(const LassoWord& x, const LassoWord& y) {
  return !prefix_divergence(x, y).has_value();
}

}  // namespace contset
