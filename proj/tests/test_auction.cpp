#include <doctest.h>

#include <duogame/auction.hpp>
#include <duogame/errors.hpp>
#include <duogame/oracle.hpp>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace duogame;
using testing::uniform;

namespace {

// R1A = 100 with profit_B(1) = 40, R2A = 90 with profit_B(2) = 30 under the
// default reserve and investment costs.
AuctionInputs example_inputs(double gamma) {
  AuctionInputs in;
  in.r1_A = 100.0;
  in.r2_A = 90.0;
  in.r1_B = 41.2;
  in.r2_B = 31.2;
  in.gamma = gamma;
  return in;
}

AuctionInputs random_inputs(std::mt19937_64& rng, double gamma) {
  AuctionInputs in;
  in.r1_A = uniform(rng, 5.0, 100.0);
  in.r2_A = uniform(rng, 5.0, 100.0);
  // Keep losing profitable but less attractive than a cheap win.
  in.r1_B = uniform(rng, in.c_B + in.c_BS, in.c_B + in.c_BS + 0.8 * in.r1_A);
  in.r2_B = uniform(rng, in.c_B + in.c_BS, in.c_B + in.c_BS + 0.8 * in.r2_A);
  in.gamma = gamma;
  return in;
}

}  // namespace

TEST_CASE("input validation names the offending field") {
  AuctionInputs in = example_inputs(0.0);
  CHECK_NOTHROW(validate(in));
  in.gamma = 1.2;
  CHECK_THROWS_WITH_AS(validate(in), doctest::Contains("gamma"), validity_error);
  in = example_inputs(0.0);
  in.gamma = -0.1;
  CHECK_THROWS_AS(validate(in), validity_error);
  in = example_inputs(0.0);
  in.r1_A = -1.0;
  CHECK_THROWS_WITH_AS(validate(in), doctest::Contains("r1_A"), validity_error);
  in = example_inputs(0.0);
  in.c_A = -0.5;
  CHECK_THROWS_AS(validate(in), validity_error);
}

TEST_CASE("losing profit is computed on demand") {
  const AuctionInputs in = example_inputs(0.3);
  CHECK(profit_B(in, 1) == doctest::Approx(40.0).epsilon(1e-15));
  CHECK(profit_B(in, 2) == doctest::Approx(30.0).epsilon(1e-15));
}

TEST_CASE("self-interested bids split the surplus over the losing option") {
  const BidPair b = equilibrium_bids(example_inputs(0.0));
  CHECK(b.b1 == doctest::Approx((100.0 + 0.1 - 40.0) / 2.0).epsilon(1e-14));
  CHECK(b.b1 == doctest::Approx(30.05).epsilon(1e-12));
  CHECK(b.b2 == doctest::Approx((90.0 + 0.1 - 30.0) / 2.0).epsilon(1e-14));
  CHECK_FALSE(b.floored_1);
  CHECK_FALSE(b.floored_2);
}

TEST_CASE("fully spiteful bids concede the rival's net value") {
  const BidPair b = equilibrium_bids(example_inputs(1.0));
  CHECK(b.b1 == doctest::Approx(90.0 - 30.0).epsilon(1e-14));
  CHECK(b.b2 == doctest::Approx(100.0 - 40.0).epsilon(1e-14));
}

TEST_CASE("the closed-form bid interpolates its two ends") {
  std::mt19937_64 rng(0xa0c71u);
  for (int i = 0; i < 100; ++i) {
    const double g = uniform(rng, 0.0, 1.0);
    const AuctionInputs in = random_inputs(rng, g);
    const BidPair b = equilibrium_bids(in);
    const double n1 = (1.0 - g) * (in.r1_A + in.c_A - profit_B(in, 1)) +
                      g * (in.r2_A - profit_B(in, 2));
    const double expected = std::max(n1 / (2.0 - g), in.c_A);
    CHECK(b.b1 == doctest::Approx(expected).scale(1.0).epsilon(1e-12));
  }
}

TEST_CASE("at the half-spite point both bids coincide") {
  std::mt19937_64 rng(0x3e81bu);
  for (int i = 0; i < 100; ++i) {
    const AuctionInputs in = random_inputs(rng, 0.5);
    const BidPair b = equilibrium_bids(in);
    CHECK(std::abs(b.b1 - b.b2) < 1e-12);
    const double common =
        (in.r1_A + in.r2_A + in.c_A - profit_B(in, 1) - profit_B(in, 2)) / 3.0;
    CHECK(b.b1 == doctest::Approx(common).scale(1.0).epsilon(1e-12));
  }
}

TEST_CASE("bids below the reserve are floored and flagged") {
  AuctionInputs in = example_inputs(0.0);
  in.r1_A = 0.05;
  in.r1_B = 11.2;  // losing pays better than winning
  const BidPair b = equilibrium_bids(in);
  CHECK(b.floored_1);
  CHECK(b.b1 == in.c_A);
  CHECK_FALSE(b.floored_2);
}

TEST_CASE("objective reduces to own profit without spite and to sabotage with it") {
  const double b1 = 31.0, b2 = 28.0;
  const AuctionInputs selfish = example_inputs(0.0);
  const SpitefulPayoffs s = spiteful_payoff(selfish, b1, b2);
  CHECK(s.pi1 == doctest::Approx(selfish.r1_A - b1).epsilon(1e-14));
  CHECK(s.pi2 == doctest::Approx(profit_B(selfish, 2)).epsilon(1e-14));

  const AuctionInputs spiteful = example_inputs(1.0);
  const SpitefulPayoffs m = spiteful_payoff(spiteful, b1, b2);
  CHECK(m.pi1 == doctest::Approx(-profit_B(spiteful, 2)).epsilon(1e-14));
  CHECK(m.pi2 == doctest::Approx(-(spiteful.r1_A - b1)).epsilon(1e-14));
}

TEST_CASE("own-bid payoff is flat while losing, linear while winning") {
  const AuctionInputs in = example_inputs(0.4);
  const double rival = 29.0;
  // Losing region: the own bid does not matter.
  const double lo1 = spiteful_payoff(in, 20.0, rival).pi1;
  const double lo2 = spiteful_payoff(in, 25.0, rival).pi1;
  CHECK(lo1 == lo2);
  // Winning region: slope -(1 - gamma).
  const double hi1 = spiteful_payoff(in, 30.0, rival).pi1;
  const double hi2 = spiteful_payoff(in, 33.0, rival).pi1;
  CHECK((hi2 - hi1) / 3.0 == doctest::Approx(-(1.0 - in.gamma)).epsilon(1e-12));
  // Crossing the rival bid switches the branch discontinuously.
  CHECK(hi1 != lo1);
}

TEST_CASE("expected payoff against a uniform rival matches a hand derivation") {
  std::mt19937_64 rng(0x9c55du);
  for (int i = 0; i < 100; ++i) {
    const double g = uniform(rng, 0.0, 1.0);
    const AuctionInputs in = random_inputs(rng, g);
    if (in.r2_A <= in.c_A) continue;
    const double top = in.r2_A;
    const double w = top - in.c_A;
    const double b = uniform(rng, in.c_A, top);
    const double pi1B = profit_B(in, 1);
    const double pi2B = profit_B(in, 2);
    const double expected =
        ((b - in.c_A) * ((1.0 - g) * (in.r1_A - b) - g * pi2B) +
         (1.0 - g) * pi1B * (top - b) - g * (top - b) * (top - b) / 2.0) /
        w;
    CHECK(expected_spiteful_payoff(in, 1, b) ==
          doctest::Approx(expected).scale(1.0).epsilon(1e-10));
  }
}

TEST_CASE("expected payoff clamps bids to the rival support") {
  const AuctionInputs in = example_inputs(0.0);
  CHECK(expected_spiteful_payoff(in, 1, -5.0) ==
        expected_spiteful_payoff(in, 1, in.c_A));
  CHECK(expected_spiteful_payoff(in, 1, 500.0) ==
        expected_spiteful_payoff(in, 1, in.r2_A));
}

TEST_CASE("expected payoff rejects an empty rival support") {
  AuctionInputs in = example_inputs(0.0);
  in.r2_A = 0.05;  // below the reserve
  CHECK_THROWS_AS(expected_spiteful_payoff(in, 1, 1.0), degenerate_parameters_error);
}

TEST_CASE("expected payoff is concave along the bid axis") {
  const AuctionInputs in = example_inputs(0.6);
  const int n = 200;
  const double step = (in.r2_A - in.c_A) / n;
  for (int i = 1; i + 1 < n; ++i) {
    const double b = in.c_A + i * step;
    const double second = expected_spiteful_payoff(in, 1, b - step) -
                          2.0 * expected_spiteful_payoff(in, 1, b) +
                          expected_spiteful_payoff(in, 1, b + step);
    CHECK(second <= 1e-9);
  }
}

TEST_CASE("grid search lands on the closed-form maximizer") {
  const BestResponse r0 = auction_best_response(example_inputs(0.0), 1, 100000);
  CHECK(std::abs(r0.bid - 30.05) <= r0.grid_step);
  const BestResponse r1 = auction_best_response(example_inputs(1.0), 1, 100000);
  CHECK(std::abs(r1.bid - 60.0) <= r1.grid_step);
  CHECK(r0.grid_step == doctest::Approx((90.0 - 0.1) / 99999).epsilon(1e-12));
}

TEST_CASE("closed-form bids agree with brute force over random draws") {
  std::mt19937_64 rng(0x7b3a9u);
  for (int i = 0; i < 50; ++i) {
    for (const double g : {0.0, 0.5, 1.0}) {
      const AuctionInputs in = random_inputs(rng, g);
      const BidPair bids = equilibrium_bids(in);
      for (const int bidder : {1, 2}) {
        const double top = bidder == 1 ? in.r2_A : in.r1_A;
        const double closed =
            std::min(std::max(bidder == 1 ? bids.b1 : bids.b2, in.c_A), top);
        const BestResponse br = auction_best_response(in, bidder, 20000);
        CHECK(std::abs(closed - br.bid) <= br.grid_step + 1e-12);
      }
    }
  }
}

TEST_CASE("the auction pays the winner their block and the loser the fallback") {
  AuctionInputs in = example_inputs(0.2);
  // Lower operator 2's fallback so the net surpluses differ and the bids
  // separate instead of tying.
  in.r2_B = 36.2;
  const AuctionOutcome out = run_auction(in);
  const BidPair b = equilibrium_bids(in);
  REQUIRE_FALSE(out.tie);
  if (out.winner == 1) {
    CHECK(out.realized_profit_1 == doctest::Approx(in.r1_A - b.b1).epsilon(1e-14));
    CHECK(out.realized_profit_2 == doctest::Approx(profit_B(in, 2)).epsilon(1e-14));
  } else {
    CHECK(out.realized_profit_2 == doctest::Approx(in.r2_A - b.b2).epsilon(1e-14));
    CHECK(out.realized_profit_1 == doctest::Approx(profit_B(in, 1)).epsilon(1e-14));
  }
  CHECK(out.tie_rule_applied.empty());
}

TEST_CASE("identical bidders tie and the first operator takes the block") {
  AuctionInputs in;
  in.r1_A = in.r2_A = 50.0;
  in.r1_B = in.r2_B = 20.0;
  in.gamma = 0.35;
  const AuctionOutcome out = run_auction(in);
  CHECK(out.tie);
  CHECK(out.winner == 1);
  CHECK_FALSE(out.tie_rule_applied.empty());
  CHECK(out.realized_profit_1 == doctest::Approx(in.r1_A - out.bids.b1).epsilon(1e-14));
  CHECK(out.realized_profit_2 == doctest::Approx(profit_B(in, 2)).epsilon(1e-14));
}

TEST_CASE("equal bids fall to the bidder with the larger stake") {
  AuctionInputs in = example_inputs(0.5);
  // Stakes: r_A - profit_B = 60 for operator 1, 60 for operator 2 only if
  // equal; here operator 2's stake is larger.
  in.r1_A = 50.0;
  in.r1_B = 21.2;  // stake1 = 50 - 20 = 30
  in.r2_A = 90.0;
  in.r2_B = 31.2;  // stake2 = 90 - 30 = 60
  const double b = 25.0;
  const SpitefulPayoffs s = spiteful_payoff(in, b, b);
  // Operator 2 wins the tie: pi1 weights own losing profit against the
  // rival's winning profit.
  const double g = in.gamma;
  CHECK(s.pi1 == doctest::Approx((1.0 - g) * profit_B(in, 1) - g * (in.r2_A - b))
                     .epsilon(1e-13));
  CHECK(s.pi2 == doctest::Approx((1.0 - g) * (in.r2_A - b) - g * profit_B(in, 1))
                     .epsilon(1e-13));
}
