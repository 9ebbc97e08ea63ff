#include "duogame/auction.hpp"

#include <cmath>
#include <sstream>

#include "duogame/errors.hpp"

namespace duogame {

void validate(const AuctionInputs& in) {
  auto fail = [](const std::string& field, const std::string& what) {
    throw validity_error(field + ": " + what);
  };
  auto finite_nonneg = [&](double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) fail(name, "must be finite and >= 0");
  };
  finite_nonneg(in.r1_A, "r1_A");
  finite_nonneg(in.r2_A, "r2_A");
  finite_nonneg(in.r1_B, "r1_B");
  finite_nonneg(in.r2_B, "r2_B");
  finite_nonneg(in.c_A, "c_A");
  finite_nonneg(in.c_B, "c_B");
  finite_nonneg(in.c_BS, "c_BS");
  if (!(in.gamma >= 0.0 && in.gamma <= 1.0)) fail("gamma", "must lie in [0, 1]");
}

double profit_B(const AuctionInputs& in, int bidder) {
  const double r = (bidder == 1) ? in.r1_B : in.r2_B;
  return r - in.c_B - in.c_BS;
}

namespace {

double raw_bid(const AuctionInputs& in, double own_rA, double own_piB,
               double rival_rA, double rival_piB) {
  const double g = in.gamma;
  return ((1.0 - g) * (own_rA + in.c_A - own_piB) + g * (rival_rA - rival_piB)) /
         (2.0 - g);
}

// At equal bids the block goes to the bidder with the larger stake
// r_A - profit_B (the one who loses more by ending up with B); operator 1
// breaks a residual tie.
int tie_winner(const AuctionInputs& in) {
  const double stake1 = in.r1_A - profit_B(in, 1);
  const double stake2 = in.r2_A - profit_B(in, 2);
  return (stake2 > stake1) ? 2 : 1;
}

std::string tie_description(const AuctionInputs& in, int winner) {
  std::ostringstream msg;
  const double stake1 = in.r1_A - profit_B(in, 1);
  const double stake2 = in.r2_A - profit_B(in, 2);
  if (stake1 == stake2) {
    msg << "equal bids and equal stakes r_A - profit_B; operator 1 wins";
  } else {
    msg << "equal bids; operator " << winner
        << " wins by the larger stake r_A - profit_B (" << stake1 << " vs "
        << stake2 << ")";
  }
  return msg.str();
}

SpitefulPayoffs spiteful_payoffs_with_winner(const AuctionInputs& in, double b1,
                                             double b2, int winner) {
  const double g = in.gamma;
  const double pi1 = profit_B(in, 1);
  const double pi2 = profit_B(in, 2);
  SpitefulPayoffs out;
  if (winner == 1) {
    out.pi1 = (1.0 - g) * (in.r1_A - b1) - g * pi2;
    out.pi2 = (1.0 - g) * pi2 - g * (in.r1_A - b1);
  } else {
    out.pi1 = (1.0 - g) * pi1 - g * (in.r2_A - b2);
    out.pi2 = (1.0 - g) * (in.r2_A - b2) - g * pi1;
  }
  return out;
}

}  // namespace

BidPair equilibrium_bids(const AuctionInputs& in) {
  validate(in);
  const double pi1 = profit_B(in, 1);
  const double pi2 = profit_B(in, 2);
  BidPair out;
  out.b1 = raw_bid(in, in.r1_A, pi1, in.r2_A, pi2);
  out.b2 = raw_bid(in, in.r2_A, pi2, in.r1_A, pi1);
  if (out.b1 < in.c_A) {
    out.b1 = in.c_A;
    out.floored_1 = true;
  }
  if (out.b2 < in.c_A) {
    out.b2 = in.c_A;
    out.floored_2 = true;
  }
  return out;
}

SpitefulPayoffs spiteful_payoff(const AuctionInputs& in, double b1, double b2) {
  validate(in);
  int winner;
  if (b1 > b2) {
    winner = 1;
  } else if (b2 > b1) {
    winner = 2;
  } else {
    winner = tie_winner(in);
  }
  return spiteful_payoffs_with_winner(in, b1, b2, winner);
}

AuctionOutcome run_auction(const AuctionInputs& in) {
  AuctionOutcome out;
  out.bids = equilibrium_bids(in);
  if (out.bids.b1 > out.bids.b2) {
    out.winner = 1;
  } else if (out.bids.b2 > out.bids.b1) {
    out.winner = 2;
  } else {
    out.tie = true;
    out.winner = tie_winner(in);
    out.tie_rule_applied = tie_description(in, out.winner);
  }
  if (out.winner == 1) {
    out.realized_profit_1 = in.r1_A - out.bids.b1;
    out.realized_profit_2 = profit_B(in, 2);
  } else {
    out.realized_profit_1 = profit_B(in, 1);
    out.realized_profit_2 = in.r2_A - out.bids.b2;
  }
  return out;
}

}  // namespace duogame
