#pragma once

#include <string>

namespace duogame {

// Upper-level first-price sealed-bid auction between two spiteful bidders.
// Bidder i maximizes a weighted difference of profits,
//   (1 - gamma) * (own profit) - gamma * (rival profit),
// where gamma in [0, 1] is the spite coefficient. The winner takes block A
// and pays its own bid; the loser takes block B at the reserve price c_B and
// additionally pays the base-station investment cost c_BS. The spite weight
// shapes the bids only; realized profits use the unweighted formulas.

struct AuctionInputs {
  double r1_A = 0.0, r2_A = 0.0;  // discounted pricing revenue when holding A
  double r1_B = 0.0, r2_B = 0.0;  // discounted pricing revenue when holding B
  double c_A = 0.1;               // reserve price of block A
  double c_B = 0.2;               // reserve price of block B
  double c_BS = 1.0;              // extra base-station cost borne by the B holder
  double gamma = 0.0;             // spite coefficient in [0, 1]
};

// Throws validity_error naming the offending field.
void validate(const AuctionInputs& in);

// Profit from ending up with block B: r_iB - c_B - c_BS. Computed on demand.
double profit_B(const AuctionInputs& in, int bidder);

struct BidPair {
  double b1 = 0.0, b2 = 0.0;
  // set when the closed-form bid fell below the reserve and was raised to c_A
  bool floored_1 = false, floored_2 = false;
};

// Closed-form equilibrium bids of the spiteful objective.
BidPair equilibrium_bids(const AuctionInputs& in);

struct SpitefulPayoffs {
  double pi1 = 0.0, pi2 = 0.0;
};

// Objective value for an arbitrary bid pair. At equal bids the indicator
// follows the same tie rule as run_auction.
SpitefulPayoffs spiteful_payoff(const AuctionInputs& in, double b1, double b2);

struct AuctionOutcome {
  BidPair bids;
  int winner = 1;                // 1 or 2
  bool tie = false;              // equal bids before the tie rule
  std::string tie_rule_applied;  // empty unless tie
  double realized_profit_1 = 0.0;  // winner: r_A - bid; loser: profit_B
  double realized_profit_2 = 0.0;
};

AuctionOutcome run_auction(const AuctionInputs& in);

}  // namespace duogame
