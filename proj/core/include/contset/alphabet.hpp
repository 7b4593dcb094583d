#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace contset {

/// Index of a letter inside its Alphabet.
using Symbol = std::uint32_t;
/// Finite word, as letter indices.
using Word = std::vector<Symbol>;

/// Ordered finite set of distinct tokens. Copies share storage.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const noexcept;
  bool contains(Symbol s) const noexcept { return s < size(); }
  const std::string& name(Symbol s) const;
  std::span<const std::string> names() const noexcept;

  std::optional<Symbol> find(std::string_view token) const;
  /// Throws PreconditionError for unknown tokens.
  Symbol symbol(std::string_view token) const;

  /// True when every token is a single character, so words can be
  /// written without separators.
  bool single_char() const noexcept;

  /// Splits `text` into letters. Whitespace separates chunks; inside a
  /// chunk tokens are matched greedily, longest first.
  Word tokenize(std::string_view text) const;

  /// Writes a word compactly when single_char(), else space separated.
  std::string spell(std::span<const Symbol> word) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b);

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

/// Throws PreconditionError("alphabet mismatch ...") unless a == b.
void require_same_alphabet(const Alphabet& a, const Alphabet& b,
                           std::string_view context);

/// Returns `base` or a primed variant of it that is not in any of `taken`.
std::string fresh_token(std::string base,
                        std::span<const Alphabet* const> taken,
                        std::span<const std::string> also_taken = {});

}  // namespace contset
