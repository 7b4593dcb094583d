#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "contset/alphabet.hpp"

namespace contset {

/// Ultimately periodic omega-word prefix . loop^omega.
///
/// Any representation is accepted on construction; normalized() yields the
/// unique canonical one (primitive loop, shortest prefix).
class LassoWord {
 public:
  LassoWord(Alphabet alphabet, Word prefix, Word loop);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const Word& prefix() const noexcept { return prefix_; }
  const Word& loop() const noexcept { return loop_; }

  /// Letter at 0-based position i of the infinite word.
  Symbol at(std::size_t i) const noexcept;
  /// The first n letters.
  Word take(std::size_t n) const;

  LassoWord normalized() const;
  bool is_normalized() const;

  /// `u(v)` text form; compact when the alphabet is single-character.
  std::string to_string() const;
  static LassoWord parse(const Alphabet& alphabet, std::string_view text);

 private:
  Alphabet alphabet_;
  Word prefix_;
  Word loop_;
};

LassoWord lasso_normalize(const LassoWord& w);

/// True iff both lassos denote the same omega-word.
bool lasso_equal(const LassoWord& x, const LassoWord& y);

/// Length of the longest common prefix; std::nullopt when x and y are the
/// same word (infinite common prefix, distance 0).
std::optional<std::size_t> prefix_divergence(const LassoWord& x,
                                             const LassoWord& y);

}  // namespace contset
