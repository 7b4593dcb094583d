#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "contset/alphabet.hpp"
#include "contset/lasso.hpp"
#include "contset/transducer.hpp"

namespace contset {

/// Post correspondence instance: pairs (u_i, v_i) of non-empty words.
class PcpInstance {
 public:
  PcpInstance(Alphabet gamma, std::vector<Word> u, std::vector<Word> v);

  const Alphabet& gamma() const noexcept { return gamma_; }
  std::size_t size() const noexcept { return u_.size(); }
  const std::vector<Word>& u() const noexcept { return u_; }
  const std::vector<Word>& v() const noexcept { return v_; }

 private:
  Alphabet gamma_;
  std::vector<Word> u_;
  std::vector<Word> v_;
};

/// 1-based indices into the instance.
using IndexSequence = std::vector<std::size_t>;

/// The instance ((cc, d, d), (c, c, dd)) whose solutions are generated by
/// 1^i 2^i 3^i and 3^i 2^i 1^i.
PcpInstance pcp_one();

/// All solutions of length at most k, shortest first, then lexicographic.
std::vector<IndexSequence> pcp_solve_bounded(const PcpInstance& inst,
                                             std::size_t k);

/// Solutions that are not concatenations of shorter solutions.
std::vector<IndexSequence> primitive_solutions(
    const std::vector<IndexSequence>& solutions);

bool is_solution(const PcpInstance& inst, const IndexSequence& s);

/// Fresh letters of the built transducers.
struct PcpLetters {
  std::vector<Symbol> c;
  std::vector<Symbol> d;
  Symbol a;
  Symbol b;
};

/// Function on C+.A^omega: u-images of the C-prefix followed by z when z has
/// infinitely many a, v-images followed by z otherwise.
Transducer pcp_transducer(const PcpInstance& inst);

/// Adds a D+ block translated through pcp_one(): domain C+.D+.A^omega.
Transducer pcp_nested_transducer(const PcpInstance& inst);

/// Letters of the input alphabet of the transducer built for `inst`.
PcpLetters pcp_letters(const Transducer& t, const PcpInstance& inst);

/// Continuity of pcp_transducer(inst) at any point with C-prefix s.
bool pcp_point_continuity(const PcpInstance& inst, const IndexSequence& s);

/// Continuity of pcp_nested_transducer(inst) at prefix c_s . d_j.
bool pcp_nested_point_continuity(const PcpInstance& inst,
                                 const IndexSequence& s,
                                 const IndexSequence& j);

struct FalsifierStep {
  std::size_t depth;
  LassoWord approximant;
  /// Common output prefix length with f(x).
  std::size_t output_agreement;
};

struct DiscontinuityWitness {
  LassoWord point;
  LassoWord image;
  /// Bound on output agreement that holds at every depth.
  std::size_t bound;
  std::vector<FalsifierStep> steps;
};

/// For x = c_s.a^omega, evaluates the approximants c_s.a^d.b^omega for
/// d = 1..k. Returns the sequence when every approximant's output agrees
/// with f(x) on at most min(|u_s|, |v_s|) letters, std::nullopt otherwise.
std::optional<DiscontinuityWitness> discontinuity_falsifier(
    const PcpInstance& inst, const IndexSequence& s, std::size_t k);

}  // namespace contset
