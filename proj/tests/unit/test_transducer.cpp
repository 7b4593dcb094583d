#include "doctest.h"
#include "support.hpp"

#include "contset/complement.hpp"
#include "contset/error.hpp"

using namespace contset;
using namespace contset::testing;

namespace {

bool has_output(const EvalResult& r, const LassoWord& y) {
  return std::any_of(r.outputs.begin(), r.outputs.end(),
                     [&](const LassoWord& o) { return lasso_equal(o, y); });
}

}  // namespace

TEST_CASE("transducer construction checks its input") {
  CHECK_THROWS_AS(Transducer(ab(), ab(), 0, 0, {}, {}), PreconditionError);
  CHECK_THROWS_AS(Transducer(ab(), ab(), 1, 1, {}, {}), PreconditionError);
  CHECK_THROWS_AS(Transducer(ab(), ab(), 1, 0, {}, {{0, {2}, {0}, 0}}), PreconditionError);
  Transducer doubling(ab(), ab(), 1, 0, {0}, {{0, {0}, {0, 0}, 0}});
  CHECK_FALSE(doubling.is_synchronous());
  CHECK_THROWS_AS(SyncTransducer{doubling}, PreconditionError);
  CHECK(identity_t().general().is_synchronous());
}

TEST_CASE("identity transducer") {
  auto t = identity_t();
  CHECK(is_equivalent(domain(t), Nba::universal(ab())));
  CHECK(is_equivalent(image(t), Nba::universal(ab())));
  CHECK(check_functional(t));
  Rng rng(51);
  for (int i = 0; i < 100; ++i) {
    auto x = random_lasso(rng);
    auto r = evaluate(t, x, 4);
    REQUIRE(r.outputs.size() == 1);
    CHECK_FALSE(r.truncated);
    CHECK(lasso_equal(r.outputs[0], x));
    CHECK(r.outputs[0].is_normalized());
  }
}

TEST_CASE("infinitely-many-a transducer") {
  auto t = inf_a_t();
  CHECK(is_equivalent(domain(t), Nba::universal(ab())));
  CHECK(check_functional(t));
  auto a_omega = lasso(ab(), "(a)"), b_omega = lasso(ab(), "(b)");
  CHECK(is_equivalent(image(t), unite(Nba(ab(), 1, 0, {0}, {{0, 0, 0}}),
                                      Nba(ab(), 1, 0, {0}, {{0, 1, 0}}))));
  Rng rng(52);
  for (int i = 0; i < 100; ++i) {
    auto x = random_lasso(rng);
    bool inf_a = std::find(x.loop().begin(), x.loop().end(), Symbol{0}) != x.loop().end();
    auto r = evaluate(t, x, 4);
    REQUIRE(r.outputs.size() == 1);
    CHECK(lasso_equal(r.outputs[0], inf_a ? a_omega : b_omega));
    CHECK(oracle_relates(t, x, r.outputs[0]));
  }
}

TEST_CASE("non-functional transducer") {
  auto t = id_or_swap();
  auto v = check_functional(t);
  CHECK_FALSE(v);
  REQUIRE(v.witness);
  const auto& w = *v.witness;
  CHECK_FALSE(lasso_equal(w.first_output, w.second_output));
  CHECK(oracle_relates(t, w.input, w.first_output));
  CHECK(oracle_relates(t, w.input, w.second_output));

  auto found = find_nonfunctional_witness(t.general(), 2);
  REQUIRE(found);
  CHECK(oracle_relates(t, found->input, found->first_output));
  CHECK(oracle_relates(t, found->input, found->second_output));
  CHECK_FALSE(find_nonfunctional_witness(identity_t().general(), 6));

  auto r = evaluate(t, lasso(ab(), "(ab)"), 1);
  CHECK(r.outputs.size() == 1);
  CHECK(r.truncated);
  r = evaluate(t, lasso(ab(), "(ab)"), 5);
  CHECK(r.outputs.size() == 2);
  CHECK_FALSE(r.truncated);
  CHECK(has_output(r, lasso(ab(), "(ba)")));
  CHECK_THROWS_AS(evaluate(t, lasso(ab(), "(ab)"), 0), PreconditionError);
}

TEST_CASE("evaluate agrees with the pair oracle") {
  Rng rng(53);
  for (int i = 0; i < 60; ++i) {
    auto t = random_sync(rng, 3);
    for (int j = 0; j < 8; ++j) {
      auto x = random_lasso(rng, ab(), 2, 2);
      auto r = evaluate(t, x, 16);
      for (const auto& y : r.outputs) CHECK(oracle_relates(t, x, y));
      if (!r.truncated) {
        for_each_lasso(ab(), 4, [&](const LassoWord& y) {
          if (oracle_relates(t, x, y)) CHECK(has_output(r, y));
        });
      }
      CHECK(accepts(domain(t), x) == !r.outputs.empty());
      for (const auto& y : r.outputs) CHECK(accepts(image(t), y));
    }
  }
}

TEST_CASE("functionality decision agrees with bounded search") {
  Rng rng(54);
  int functional = 0, not_functional = 0;
  for (int i = 0; i < 150; ++i) {
    auto t = random_sync(rng, 3, 0.2);
    auto v = check_functional(t);
    bool two_outputs = false;
    for_each_lasso(ab(), 5, [&](const LassoWord& x) {
      if (!two_outputs && evaluate(t, x, 2).outputs.size() > 1) two_outputs = true;
    });
    if (v) {
      ++functional;
      CHECK_FALSE(two_outputs);
    } else {
      ++not_functional;
      REQUIRE(v.witness);
      CHECK(oracle_relates(t, v.witness->input, v.witness->first_output));
      CHECK(oracle_relates(t, v.witness->input, v.witness->second_output));
      CHECK_FALSE(lasso_equal(v.witness->first_output, v.witness->second_output));
    }
  }
  CHECK(functional > 20);
  CHECK(not_functional > 20);
}

TEST_CASE("trim preserves the relation") {
  Rng rng(55);
  for (int i = 0; i < 60; ++i) {
    auto t = random_sync(rng, 4);
    auto tt = trim(t);
    CHECK(tt.num_states() <= t.num_states());
    CHECK(is_equivalent(domain(t), domain(tt)));
    CHECK(is_equivalent(image(t), image(tt)));
    CHECK(trim(tt).num_states() == tt.num_states());
    for (int j = 0; j < 10; ++j) {
      auto x = random_lasso(rng, ab(), 2, 3);
      auto r1 = evaluate(t, x, 8), r2 = evaluate(tt, x, 8);
      CHECK(r1.outputs.size() == r2.outputs.size());
      CHECK(r1.truncated == r2.truncated);
      if (!r1.truncated)
        for (const auto& y : r1.outputs) CHECK(has_output(r2, y));
    }
  }
}

TEST_CASE("general transducers with words on edges") {
  // Doubles each a, deletes each b.
  Transducer t(ab(), ab(), 1, 0, {0}, {{0, {0}, {0, 0}, 0}, {0, {1}, {}, 0}});
  auto r = evaluate(t, lasso(ab(), "b(ab)"), 4);
  REQUIRE(r.outputs.size() == 1);
  CHECK(lasso_equal(r.outputs[0], lasso(ab(), "(a)")));
  // Finite output is not an accepted pair.
  CHECK(evaluate(t, lasso(ab(), "a(b)"), 4).outputs.empty());
  CHECK_FALSE(accepts(domain(t), lasso(ab(), "a(b)")));
  CHECK(accepts(domain(t), lasso(ab(), "(abb)")));

  // Reads two letters, writes them swapped.
  Transducer swap(ab(), ab(), 1, 0, {0}, {{0, {0, 1}, {1, 0}, 0}, {0, {1, 1}, {1, 1}, 0}});
  r = evaluate(swap, lasso(ab(), "(abbb)"), 4);
  REQUIRE(r.outputs.size() == 1);
  CHECK(lasso_equal(r.outputs[0], lasso(ab(), "(babb)")));
  CHECK(evaluate(swap, lasso(ab(), "b(ab)"), 4).outputs.empty());

  // An output-only loop never finishes reading.
  Transducer stall(ab(), ab(), 2, 0, {1}, {{0, {0}, {0}, 1}, {1, {}, {0}, 1}});
  CHECK(is_empty(domain(stall)));
  CHECK(trim(stall).transitions().empty());
  CHECK(evaluate(stall, lasso(ab(), "(a)"), 4).outputs.empty());

  auto bounded = find_nonfunctional_witness(t, 4);
  CHECK_FALSE(bounded);
}
