#include "contset/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "contset/error.hpp"

namespace contset {

struct Alphabet::Data {
  std::vector<std::string> names;
  std::map<std::string, Symbol, std::less<>> index;
  std::size_t longest = 0;
  bool single_char = true;
};

Alphabet::Alphabet(std::vector<std::string> symbols) {
  if (symbols.empty()) throw PreconditionError("alphabet must not be empty");
  auto data = std::make_shared<Data>();
  for (auto& s : symbols) {
    if (s.empty()) throw PreconditionError("alphabet token must not be empty");
    for (char ch : s) {
      if (std::isspace(static_cast<unsigned char>(ch)) || ch == '(' ||
          ch == ')' || ch == '.' || ch == '#' || ch == '/') {
        throw PreconditionError("alphabet token '" + s +
                                "' contains a reserved character");
      }
    }
    if (s == "eps") throw PreconditionError("'eps' is reserved");
    auto id = static_cast<Symbol>(data->names.size());
    if (!data->index.emplace(s, id).second) {
      throw PreconditionError("duplicate alphabet token '" + s + "'");
    }
    data->longest = std::max(data->longest, s.size());
    if (s.size() != 1) data->single_char = false;
    data->names.push_back(std::move(s));
  }
  data_ = std::move(data);
}

std::size_t Alphabet::size() const noexcept { return data_->names.size(); }

const std::string& Alphabet::name(Symbol s) const {
  if (!contains(s)) throw PreconditionError("symbol index out of range");
  return data_->names[s];
}

std::span<const std::string> Alphabet::names() const noexcept {
  return data_->names;
}

std::optional<Symbol> Alphabet::find(std::string_view token) const {
  auto it = data_->index.find(token);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::symbol(std::string_view token) const {
  if (auto s = find(token)) return *s;
  throw PreconditionError("symbol '" + std::string(token) +
                          "' is not in the alphabet");
}

bool Alphabet::single_char() const noexcept { return data_->single_char; }

Word Alphabet::tokenize(std::string_view text) const {
  Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '.') {
      ++i;
      continue;
    }
    std::size_t len = std::min(data_->longest, text.size() - i);
    bool matched = false;
    for (; len > 0; --len) {
      if (auto s = find(text.substr(i, len))) {
        out.push_back(*s);
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) {
      std::size_t end = i;
      while (end < text.size() &&
             !std::isspace(static_cast<unsigned char>(text[end])))
        ++end;
      throw PreconditionError("cannot split '" +
                              std::string(text.substr(i, end - i)) +
                              "' into alphabet symbols");
    }
  }
  return out;
}

std::string Alphabet::spell(std::span<const Symbol> word) const {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0 && !single_char()) out += ' ';
    out += name(word[i]);
  }
  return out;
}

bool operator==(const Alphabet& a, const Alphabet& b) {
  return a.data_ == b.data_ || a.data_->names == b.data_->names;
}

void require_same_alphabet(const Alphabet& a, const Alphabet& b,
                           std::string_view context) {
  if (!(a == b)) {
    throw PreconditionError("alphabet mismatch in " + std::string(context));
  }
}

std::string fresh_token(std::string base,
                        std::span<const Alphabet* const> taken,
                        std::span<const std::string> also_taken) {
  auto used = [&](const std::string& s) {
    for (const Alphabet* a : taken)
      if (a->find(s)) return true;
    return std::find(also_taken.begin(), also_taken.end(), s) !=
           also_taken.end();
  };
  while (used(base)) base += '\'';
  return base;
}

}  // namespace contset
